"""Finite fields F_{p^e} with explicit moduli, plus quotient-ring towers.

Base fields encode elements as integers 0..p^e-1 (digit vectors of the
modulus-basis coordinates, base p; for p = 2 plain bitmasks).  Arithmetic
uses exp/log tables over a precomputed generator, so p^e is capped at
2^16.  Towers K[u]/(h) over a base field keep elements as coefficient
tuples; they exist to host algebraic points found during factorization
and are never serialized.

Moduli come from a fixed built-in table and are re-verified irreducible at
construction time.
"""

from dataclasses import dataclass


class FieldError(ValueError):
    pass


# minimal-weight irreducible polynomials, coefficient bitmask/digit lists
# (ascending degree, monic).  Verified at construction.
_MODULI = {
    2: {
        1: [1, 1],
        2: [1, 1, 1],
        3: [1, 1, 0, 1],
        4: [1, 1, 0, 0, 1],
        5: [1, 0, 1, 0, 0, 1],
        6: [1, 1, 0, 0, 0, 0, 1],
        7: [1, 1, 0, 0, 0, 0, 0, 1],
        8: [1, 1, 1, 0, 0, 0, 0, 1, 1],
        9: [1, 1, 0, 0, 0, 0, 0, 0, 0, 1],
        10: [1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1],
        11: [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        12: [1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        13: [1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1],
        14: [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        15: [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        16: [1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    },
    3: {
        1: [1, 1],
        2: [1, 0, 1],
        3: [1, 2, 0, 1],
        4: [2, 1, 0, 0, 1],
    },
    5: {
        1: [1, 1],
        2: [2, 0, 1],
        3: [1, 1, 0, 1],
    },
}


def _fp_poly_mulmod(a, b, mod, p):
    """Product of dense F_p coefficient lists, reduced mod `mod` (monic)."""
    deg = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for i in range(len(res) - 1, deg - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(deg):
                res[i - deg + j] = (res[i - deg + j] - c * mod[j]) % p
    out = res[:deg]
    while len(out) < deg:
        out.append(0)
    return out


def _fp_poly_gcd(a, b, p):
    a, b = a[:], b[:]

    def trim(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        r = a[:]
        while len(r) >= len(b) and trim(r):
            if not r:
                break
            c = (r[-1] * inv) % p
            shift = len(r) - len(b)
            for j in range(len(b)):
                r[shift + j] = (r[shift + j] - c * b[j]) % p
            r = trim(r)
        a, b = b, r
    return a


def _verify_irreducible(mod, p):
    """Rabin test: x^(p^e) = x mod m and gcd(x^(p^(e/l)) - x, m) = 1."""
    e = len(mod) - 1
    xred = _fp_poly_mulmod([1], [0, 1], mod, p)

    def pth_power(a):
        acc = [1]
        for _ in range(p):
            acc = _fp_poly_mulmod(acc, a, mod, p)
        return acc

    def minus_x(a):
        n = max(len(a), len(xred))
        a = list(a) + [0] * (n - len(a))
        b = list(xred) + [0] * (n - len(xred))
        d = [(u - v) % p for u, v in zip(a, b)]
        while d and d[-1] == 0:
            d.pop()
        return d

    powers = {}
    cur = xred[:]
    for k in range(1, e + 1):
        cur = pth_power(cur)
        powers[k] = cur[:]
    if minus_x(powers[e]):
        return False
    for ell in {d for d in range(2, e + 1) if e % d == 0 and _is_prime(d)}:
        diff = minus_x(powers[e // ell])
        g = _fp_poly_gcd([c % p for c in mod], diff, p)
        if len(g) - 1 > 0:
            return False
    return True


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    modulus: tuple

    @staticmethod
    def standard(p, e):
        try:
            mod = _MODULI[p][e]
        except KeyError:
            raise FieldError(f"no built-in modulus for p={p}, e={e}") from None
        return FieldSpec(p, e, tuple(mod))

    def to_json(self):
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}


class BaseField:
    """F_{p^e} with exp/log multiplication tables."""

    def __init__(self, spec):
        p, e = spec.p, spec.e
        if p not in (2, 3, 5):
            raise FieldError("characteristic must be 2, 3 or 5")
        if len(spec.modulus) != e + 1 or spec.modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree e")
        if not _verify_irreducible(list(spec.modulus), p):
            raise FieldError(f"modulus {spec.modulus} is reducible over F_{p}")
        self.spec = spec
        self.char = p
        self.degree = e
        self.order = p ** e
        if self.order > 1 << 16:
            raise FieldError("field too large for table arithmetic")
        self._build_tables()

    # -- encoding ---------------------------------------------------------
    def _digits(self, a):
        p, e = self.char, self.degree
        out = []
        for _ in range(e):
            out.append(a % p)
            a //= p
        return out

    def _undigits(self, ds):
        p = self.char
        val = 0
        for d in reversed(ds):
            val = val * p + (d % p)
        return val

    def _build_tables(self):
        p, e, q = self.char, self.degree, self.order
        mod = list(self.spec.modulus)
        # find a multiplicative generator
        def raw_mul(a, b):
            da, db = self._digits(a), self._digits(b)
            prod = _fp_poly_mulmod(da, db, mod, p)
            return self._undigits(prod)

        fact = _prime_factors(q - 1)
        gen = None
        if q == 2:
            gen = 1
        for cand in range(2, q):
            if gen is not None:
                break
            if all(_pow_raw(cand, (q - 1) // f, raw_mul) != 1 for f in fact) \
                    and _pow_raw(cand, q - 1, raw_mul) == 1:
                gen = cand
        if gen is None:
            raise FieldError("no multiplicative generator found")
        self.generator = gen
        exp = [1] * (q - 1)
        cur = 1
        for i in range(1, q - 1):
            cur = raw_mul(cur, gen)
            exp[i] = cur
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log
        if p == 2:
            self._add_table = None
        else:
            self._add_table = [
                [self._undigits([(x + y) % p for x, y in
                                 zip(self._digits(a), self._digits(b))])
                 for b in range(q)] for a in range(q)]

    # -- arithmetic --------------------------------------------------------
    zero = 0
    one = 1

    def add(self, a, b):
        if self.char == 2:
            return a ^ b
        return self._add_table[a][b]

    def neg(self, a):
        if self.char == 2:
            return a
        p = self.char
        return self._undigits([(-x) % p for x in self._digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def pow_elem(self, a, n):
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise FieldError("division by zero")
            return 0
        return self._exp[(self._log[a] * n) % (self.order - 1)]

    def scalar(self, n):
        """Image of the integer n in the prime field."""
        return n % self.char

    def frobenius(self, a):
        return self.pow_elem(a, self.char)

    def proot(self, a):
        """The unique p-th root (inverse Frobenius)."""
        return self.pow_elem(a, self.char ** (self.degree - 1))

    def rand(self, rng):
        return rng.randrange(self.order)

    def rand_nonzero(self, rng):
        return rng.randrange(1, self.order)

    def elements(self):
        return range(self.order)

    def multiplicative_order_element(self, n):
        """An element of multiplicative order n (n must divide q - 1)."""
        if (self.order - 1) % n:
            raise FieldError(f"no element of order {n}")
        return self._exp[(self.order - 1) // n]

    # -- encoding for reports ----------------------------------------------
    def encode(self, a):
        """Little-endian digit string of the modulus-basis coordinates."""
        return "".join(str(d) for d in self._digits(a))

    def decode(self, s):
        if not all(c.isdigit() and int(c) < self.char for c in s):
            raise FieldError(f"bad element encoding {s!r}")
        if len(s) > self.degree:
            raise FieldError(f"element encoding {s!r} too long")
        return self._undigits([int(c) for c in s] + [0] * (self.degree - len(s)))

    def __repr__(self):
        return f"F_{self.char}^{self.degree}"

    def __eq__(self, other):
        return isinstance(other, BaseField) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _pow_raw(a, n, mul):
    r = 1
    while n:
        if n & 1:
            r = mul(r, a)
        a = mul(a, a)
        n >>= 1
    return r


_FIELD_CACHE = {}


def get_field(p, e):
    """The standard F_{p^e} (cached)."""
    key = (p, e)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = BaseField(FieldSpec.standard(p, e))
    return _FIELD_CACHE[key]


class ExtField:
    """Quotient ring base[u]/(h) for monic irreducible h; hosts closed points.

    Elements are tuples of base-field elements of length deg(h).
    Irreducibility of h is the caller's responsibility (factor output);
    zero divisors surface as division-by-zero errors during inversion.
    """

    def __init__(self, base, modulus):
        if modulus[-1] != base.one:
            raise FieldError("tower modulus must be monic")
        self.base = base
        self.modulus = tuple(modulus)
        self.rel_degree = len(modulus) - 1
        self.char = base.char
        self.order = base.order ** self.rel_degree
        self.zero = (base.zero,) * self.rel_degree
        self.one = tuple([base.one] + [base.zero] * (self.rel_degree - 1))

    def embed(self, a):
        return tuple([a] + [self.base.zero] * (self.rel_degree - 1))

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        bf = self.base
        d = self.rel_degree
        res = [bf.zero] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai != bf.zero:
                for j, bj in enumerate(b):
                    if bj != bf.zero:
                        res[i + j] = bf.add(res[i + j], bf.mul(ai, bj))
        for i in range(2 * d - 2, d - 1, -1):
            c = res[i]
            if c != bf.zero:
                res[i] = bf.zero
                for j in range(d):
                    res[i - d + j] = bf.sub(res[i - d + j], bf.mul(c, self.modulus[j]))
        return tuple(res[:d])

    def inv(self, a):
        if a == self.zero:
            raise FieldError("division by zero")
        bf = self.base
        # extended Euclid in base[u]
        r0 = list(self.modulus)
        r1 = list(a)
        s0, s1 = [bf.zero], [bf.one]

        def trim(x):
            while x and x[-1] == bf.zero:
                x.pop()
            return x

        r0, r1 = trim(r0), trim(r1)
        while r1:
            q, r = _poly_divmod_base(r0, r1, bf)
            r0, r1 = r1, trim(r)
            s0, s1 = s1, trim(_poly_sub_base(s0, _poly_mul_base(q, s1, bf), bf))
        if len(r0) != 1:
            raise FieldError("tower modulus is not irreducible (zero divisor hit)")
        c = bf.inv(r0[0])
        out = [bf.mul(c, x) for x in s0]
        out += [bf.zero] * (self.rel_degree - len(out))
        return tuple(out[:self.rel_degree])

    def pow_elem(self, a, n):
        if n < 0:
            return self.pow_elem(self.inv(a), -n)
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def scalar(self, n):
        return self.embed(self.base.scalar(n))

    def frobenius(self, a):
        return self.pow_elem(a, self.char)

    def proot(self, a):
        total_deg = self.base.degree * self.rel_degree
        return self.pow_elem(a, self.char ** (total_deg - 1))

    def rand(self, rng):
        return tuple(self.base.rand(rng) for _ in range(self.rel_degree))

    def rand_nonzero(self, rng):
        while True:
            a = self.rand(rng)
            if a != self.zero:
                return a

    def __repr__(self):
        return f"{self.base!r}[u]/deg{self.rel_degree}"

    def __eq__(self, other):
        return (isinstance(other, ExtField) and other.base == self.base
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash((self.base, self.modulus))


def _poly_mul_base(a, b, bf):
    if not a or not b:
        return []
    res = [bf.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai != bf.zero:
            for j, bj in enumerate(b):
                res[i + j] = bf.add(res[i + j], bf.mul(ai, bj))
    return res


def _poly_sub_base(a, b, bf):
    n = max(len(a), len(b))
    a = list(a) + [bf.zero] * (n - len(a))
    b = list(b) + [bf.zero] * (n - len(b))
    return [bf.sub(x, y) for x, y in zip(a, b)]


def _poly_divmod_base(a, b, bf):
    a = list(a)
    if not b:
        raise FieldError("polynomial division by zero")
    inv = bf.inv(b[-1])
    q = [bf.zero] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        if a[-1] == bf.zero:
            a.pop()
            continue
        c = bf.mul(a[-1], inv)
        shift = len(a) - len(b)
        q[shift] = c
        for j in range(len(b)):
            a[shift + j] = bf.sub(a[shift + j], bf.mul(c, b[j]))
        while a and a[-1] == bf.zero:
            a.pop()
    return q, a
