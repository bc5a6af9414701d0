"""Sparse multivariate polynomials over a finite field object.

Terms are a dict from exponent tuples to nonzero field elements.  The
variable list is fixed per polynomial; binary operations require equal
variable tuples.  Printing and hashing use graded lexicographic term
order.  Univariate gcd/division, subresultant-based multivariate gcd, and
bivariate resultants (fraction-free Bareiss over a univariate coefficient
ring) live here too.
"""


class PolyError(ValueError):
    pass


class FqPoly:
    __slots__ = ("field", "vars", "terms")

    def __init__(self, field, variables, terms=None):
        self.field = field
        self.vars = tuple(variables)
        clean = {}
        if terms:
            for expo, coef in terms.items():
                if len(expo) != len(self.vars):
                    raise PolyError("exponent arity mismatch")
                if coef != field.zero:
                    clean[tuple(int(x) for x in expo)] = coef
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, field, variables):
        return cls(field, variables, {})

    @classmethod
    def const(cls, field, variables, c):
        return cls(field, variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, field, variables, name):
        i = tuple(variables).index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(field, variables, {tuple(e): field.one})

    @classmethod
    def monomial(cls, field, variables, expo, c=None):
        return cls(field, variables, {tuple(expo): field.one if c is None else c})

    # -- basics --------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, FqPoly) and self.field == other.field
                and self.vars == other.vars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def _check(self, other):
        if not isinstance(other, FqPoly) or other.vars != self.vars \
                or other.field != self.field:
            raise PolyError("operands live in different polynomial rings")

    def __add__(self, other):
        self._check(other)
        f = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = f.add(terms.get(e, f.zero), c)
            if s == f.zero:
                terms.pop(e, None)
            else:
                terms[e] = s
        return FqPoly(f, self.vars, terms)

    def __neg__(self):
        f = self.field
        return FqPoly(f, self.vars, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        f = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = f.mul(c1, c2)
                s = f.add(out.get(e, f.zero), prod)
                if s == f.zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        return FqPoly(f, self.vars, out)

    def scale(self, c):
        f = self.field
        if c == f.zero:
            return FqPoly.zero(f, self.vars)
        return FqPoly(f, self.vars, {e: f.mul(c, v) for e, v in self.terms.items()})

    def pow_int(self, n):
        result = FqPoly.const(self.field, self.vars, self.field.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def degree(self, var=None):
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def coefficient(self, expo):
        return self.terms.get(tuple(expo), self.field.zero)

    def partial(self, var):
        f = self.field
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            coef = f.mul(c, _scalar(f, e[i]))
            if coef == f.zero:
                continue
            ne = list(e)
            ne[i] -= 1
            ne = tuple(ne)
            out[ne] = f.add(out.get(ne, f.zero), coef)
        return FqPoly(f, self.vars, {e: c for e, c in out.items() if c != f.zero})

    def evaluate(self, assignment):
        """Evaluate at a full point {varname: field element}."""
        f = self.field
        total = f.zero
        for e, c in self.terms.items():
            val = c
            for name, exp in zip(self.vars, e):
                if exp:
                    val = f.mul(val, f.pow_elem(assignment[name], exp))
            total = f.add(total, val)
        return total

    def substitute(self, name, repl):
        """Substitute a polynomial for one variable (same ring)."""
        self._check(repl)
        f = self.field
        i = self.vars.index(name)
        out = FqPoly.zero(f, self.vars)
        powers = {0: FqPoly.const(f, self.vars, f.one)}
        maxe = max((e[i] for e in self.terms), default=0)
        for k in range(1, maxe + 1):
            powers[k] = powers[k - 1] * repl
        for e, c in self.terms.items():
            rest = list(e)
            rest[i] = 0
            mono = FqPoly(f, self.vars, {tuple(rest): c})
            out = out + mono * powers[e[i]]
        return out

    def shift(self, offsets):
        """Translate variables: x_i -> x_i + offsets[name] (field constants)."""
        out = self
        f = self.field
        for name, c in offsets.items():
            if c == f.zero:
                continue
            repl = FqPoly.variable(f, self.vars, name) + FqPoly.const(f, self.vars, c)
            out = out.substitute(name, repl)
        return out

    def map_field(self, new_field, conv):
        return FqPoly(new_field, self.vars,
                      {e: conv(c) for e, c in self.terms.items()})

    def restrict_vars(self, variables):
        """Reinterpret over a sub/super tuple of variables."""
        old_index = {v: i for i, v in enumerate(self.vars)}
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for v, i in old_index.items():
                if e[i]:
                    if v not in variables:
                        raise PolyError(f"variable {v} has positive degree")
                    ne[list(variables).index(v)] = e[i]
            out[tuple(ne)] = c
        return FqPoly(self.field, tuple(variables), out)

    # -- univariate views ----------------------------------------------------
    def dense_univariate(self):
        if len(self.vars) != 1:
            raise PolyError("polynomial is not univariate")
        d = self.degree()
        f = self.field
        out = [f.zero] * (d + 1) if d >= 0 else []
        for (e,), c in self.terms.items():
            out[e] = c
        return out

    @classmethod
    def from_dense(cls, field, var, coeffs):
        return cls(field, (var,), {(i,): c for i, c in enumerate(coeffs)
                                   if c != field.zero})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading(self):
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        return self.sorted_terms()[0]

    def monic(self):
        if self.is_zero():
            return self
        _, c = self.leading()
        return self.scale(self.field.inv(c))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"{v}^{k}" if k > 1 else v
                            for v, k in zip(self.vars, e) if k)
            cs = _coef_str(self.field, c)
            if mono and c == self.field.one:
                bits.append(mono)
            elif mono:
                bits.append(f"{cs}*{mono}")
            else:
                bits.append(cs)
        return " + ".join(bits)

    def to_json(self):
        enc = getattr(self.field, "encode", None)
        return [[list(e), enc(c) if enc else str(c)] for e, c in
                sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))]


def _scalar(field, n):
    return field.scalar(n) if hasattr(field, "scalar") else n % field.char


def _coef_str(field, c):
    enc = getattr(field, "encode", None)
    return enc(c) if enc else str(c)


# ---------------------------------------------------------------------------
# dense univariate helpers over a field object


def dense_trim(a, f):
    while a and a[-1] == f.zero:
        a.pop()
    return a


def dense_divmod(a, b, f):
    a = list(a)
    b = dense_trim(list(b), f)
    if not b:
        raise PolyError("polynomial division by zero")
    inv = f.inv(b[-1])
    q = [f.zero] * max(len(a) - len(b) + 1, 0)
    dense_trim(a, f)
    while len(a) >= len(b):
        c = f.mul(a[-1], inv)
        shift = len(a) - len(b)
        q[shift] = c
        for j in range(len(b)):
            a[shift + j] = f.sub(a[shift + j], f.mul(c, b[j]))
        dense_trim(a, f)
    return q, a


def dense_mul(a, b, f):
    if not a or not b:
        return []
    out = [f.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai != f.zero:
            for j, bj in enumerate(b):
                out[i + j] = f.add(out[i + j], f.mul(ai, bj))
    return out


def dense_gcd(a, b, f):
    a, b = dense_trim(list(a), f), dense_trim(list(b), f)
    while b:
        _, r = dense_divmod(a, b, f)
        a, b = b, dense_trim(r, f)
    if a:
        inv = f.inv(a[-1])
        a = [f.mul(inv, x) for x in a]
    return a


# ---------------------------------------------------------------------------
# multivariate gcd via contents and subresultant PRS


def poly_divexact(f_poly, g_poly):
    """Exact division of multivariate polynomials; raises if not divisible."""
    f = f_poly.field
    if g_poly.is_zero():
        raise PolyError("division by zero polynomial")
    rem = f_poly
    out = {}
    ge, gc = g_poly.leading()
    ginv = f.inv(gc)
    guard = 0
    while not rem.is_zero():
        guard += 1
        if guard > 10000:
            raise PolyError("exact division does not terminate")
        re, rc = rem.leading()
        qe = tuple(a - b for a, b in zip(re, ge))
        if any(x < 0 for x in qe):
            raise PolyError("not divisible")
        qc = f.mul(rc, ginv)
        out[qe] = qc
        rem = rem - FqPoly(f, f_poly.vars, {qe: qc}) * g_poly
    return FqPoly(f, f_poly.vars, out)


def _coeffs_in_var(poly, var):
    """Map degree -> coefficient polynomial (with `var` degree zero)."""
    i = poly.vars.index(var)
    out = {}
    for e, c in poly.terms.items():
        k = e[i]
        ne = list(e)
        ne[i] = 0
        sub = out.setdefault(k, {})
        sub[tuple(ne)] = c
    return {k: FqPoly(poly.field, poly.vars, terms) for k, terms in out.items()}


def poly_gcd_multivariate(a, b):
    """Monic-normalized gcd of multivariate polynomials (same ring)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    a._check(b)
    nvars = len(a.vars)
    if nvars == 1:
        f = a.field
        g = dense_gcd(a.dense_univariate(), b.dense_univariate(), f)
        return FqPoly.from_dense(f, a.vars[0], g)
    # effective variables
    used = [i for i in range(nvars)
            if any(e[i] for e in a.terms) or any(e[i] for e in b.terms)]
    if not used:
        return FqPoly.const(a.field, a.vars, a.field.one)
    var = a.vars[used[-1]]
    if a.degree(var) == 0 and b.degree(var) == 0:
        # recurse in the remaining variables by restriction
        rest = tuple(v for v in a.vars if v != var)
        g = poly_gcd_multivariate(a.restrict_vars(rest), b.restrict_vars(rest))
        return g.restrict_vars(a.vars)
    ca = _content_wrt(a, var)
    cb = _content_wrt(b, var)
    cg = poly_gcd_multivariate(ca, cb)
    pa = poly_divexact(a, ca)
    pb = poly_divexact(b, cb)
    prim = _prs_gcd(pa, pb, var)
    return (cg * prim).monic()


def _content_wrt(poly, var):
    coeffs = list(_coeffs_in_var(poly, var).values())
    g = coeffs[0]
    for c in coeffs[1:]:
        g = poly_gcd_multivariate(g, c)
    return g


def _prs_gcd(a, b, var):
    """gcd of primitive polynomials via a pseudo-remainder sequence."""
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while True:
        if b.is_zero():
            return poly_divexact(a, _content_wrt(a, var))
        r = _pseudo_rem(a, b, var)
        if r.is_zero():
            b_prim = poly_divexact(b, _content_wrt(b, var))
            return b_prim
        r = poly_divexact(r, _content_wrt(r, var))
        a, b = b, r


def _pseudo_rem(a, b, var):
    """lc(b)^(da-db+1) * a mod b with respect to var."""
    da, db = a.degree(var), b.degree(var)
    if db < 0:
        raise PolyError("pseudo-division by zero")
    f = a.field
    lcb = _coeffs_in_var(b, var).get(db)
    rem = a
    i = a.vars.index(var)
    while not rem.is_zero():
        dr = rem.degree(var)
        if dr < db:
            break
        lcr = _coeffs_in_var(rem, var).get(dr)
        shift = [0] * len(a.vars)
        shift[i] = dr - db
        mono = FqPoly(f, a.vars, {tuple(shift): f.one})
        rem = rem * lcb - b * mono * lcr
    return rem


# ---------------------------------------------------------------------------
# bivariate resultant by fraction-free elimination over k[other]


def resultant(a, b, var):
    """Res_var(a, b) for bivariate polynomials; result has var-degree 0."""
    a._check(b)
    f = a.field
    da, db = a.degree(var), b.degree(var)
    if da < 0 or db < 0:
        return FqPoly.zero(f, a.vars)
    if da == 0 and db == 0:
        raise PolyError("resultant needs positive degree in the variable")
    ca = _coeffs_in_var(a, var)
    cb = _coeffs_in_var(b, var)
    n = da + db
    zero = FqPoly.zero(f, a.vars)
    rows = []
    for i in range(db):
        row = [zero] * n
        for k, c in ca.items():
            row[i + (da - k)] = c
        rows.append(row)
    for i in range(da):
        row = [zero] * n
        for k, c in cb.items():
            row[i + (db - k)] = c
        rows.append(row)
    # fraction-free Bareiss over the polynomial ring
    sign = 1
    prev = FqPoly.const(f, a.vars, f.one)
    m = rows
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return FqPoly.zero(f, a.vars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = poly_divexact(num, prev) if not num.is_zero() else num
            m[i][k] = zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    if sign < 0:
        det = -det
    return det
