"""Exact arithmetic on integral symmetric bilinear forms.

Lattices are free Z-modules with a symmetric pairing given by a Gram
matrix.  Everything here is exact: determinants and signatures via
fraction-free/rational elimination, discriminant groups via Smith normal
form, root enumeration via an exact rational Cholesky search, and even
overlattices via glue data on discriminant groups.

Vectors are row tuples of coordinates in the lattice basis.  Gram entries
are integers, except that denominator 2 is tolerated in intermediate
lattices produced while building code overlattices; the even-lattice
constructor rejects non-integral input.
"""

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .exactmat import (
    det_fraction,
    hnf_basis,
    mat_inverse_fraction,
    snf,
    solve_left_fraction,
    saturation_basis,
    symmetric_diagonalize,
)


class LatticeError(ValueError):
    pass


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class Lattice:
    """A finitely generated symmetric bilinear form over Z (or (1/2)Z)."""

    def __init__(self, gram, labels=None):
        n = len(gram)
        g = tuple(tuple(_frac(x) for x in row) for row in gram)
        for row in g:
            if len(row) != n:
                raise LatticeError("gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise LatticeError("gram matrix must be symmetric")
                if g[i][j].denominator not in (1, 2):
                    raise LatticeError("gram entries must have denominator 1 or 2")
        self.gram = g
        self.rank = n
        self.labels = list(labels) if labels is not None else None

    @property
    def is_integral(self):
        return all(x.denominator == 1 for row in self.gram for x in row)

    @property
    def is_even(self):
        return self.is_integral and all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def pair(self, v, w):
        g = self.gram
        return sum(_frac(v[i]) * sum(g[i][j] * w[j] for j in range(self.rank))
                   for i in range(self.rank))

    def norm(self, v):
        return self.pair(v, v)

    def gram_int(self):
        if not self.is_integral:
            raise LatticeError("lattice is not integral")
        return [[int(x) for x in row] for row in self.gram]

    def __repr__(self):
        return f"Lattice(rank={self.rank})"


def even_lattice(gram, labels=None):
    """Construct a lattice, insisting on an even integral Gram matrix."""
    lat = Lattice(gram, labels)
    if not lat.is_integral:
        raise LatticeError("even lattice requires an integral gram matrix")
    if not lat.is_even:
        raise LatticeError("even lattice requires even diagonal entries")
    return lat


def direct_sum(l1, l2):
    n1, n2 = l1.rank, l2.rank
    gram = [[Fraction(0)] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            gram[i][j] = l1.gram[i][j]
    for i in range(n2):
        for j in range(n2):
            gram[n1 + i][n1 + j] = l2.gram[i][j]
    labels = None
    if l1.labels is not None and l2.labels is not None:
        labels = l1.labels + l2.labels
    return Lattice(gram, labels)


# ---------------------------------------------------------------------------
# standard ADE Gram matrices (negative definite convention)

_E_EDGES = {
    6: [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)],
    7: [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)],
    8: [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)],
}


def ade_gram(kind, n):
    """Negative-definite Gram matrix of A_n, D_n or E_n."""
    if kind == "A":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "D":
        if n < 4:
            raise LatticeError("D_n requires n >= 4")
        edges = [(i, i + 1) for i in range(n - 3)] + [(n - 3, n - 2), (n - 3, n - 1)]
    elif kind == "E":
        edges = _E_EDGES[n]
    else:
        raise LatticeError(f"unknown ADE kind {kind!r}")
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return g


def ade_lattice(kind, n):
    return even_lattice(ade_gram(kind, n))


# ---------------------------------------------------------------------------
# basic invariants


def discriminant(lat):
    """det of the Gram matrix, exact; error on degenerate lattices."""
    d = det_fraction([list(row) for row in lat.gram])
    if d == 0:
        raise LatticeError("degenerate lattice")
    if d.denominator == 1:
        return int(d)
    return d


def signature(lat):
    """(r, s) = numbers of positive and negative squares."""
    diag = symmetric_diagonalize([list(row) for row in lat.gram])
    if any(d == 0 for d in diag):
        raise LatticeError("degenerate lattice")
    r = sum(1 for d in diag if d > 0)
    s = sum(1 for d in diag if d < 0)
    return (r, s)


def is_negative_definite(lat):
    try:
        r, s = signature(lat)
    except LatticeError:
        return False
    return r == 0 and s == lat.rank


@dataclass
class DiscriminantGroup:
    """L^vee / L for an even nondegenerate lattice.

    generators: dual vectors in lattice-basis coordinates, reduced mod Z^n,
    sorted by (order, coordinates); orders: elementary divisors > 1;
    qvalues: self-pairings in Q/2Z represented in [0, 2).
    """

    generators: list
    orders: list
    qvalues: list
    pairings: list = field(default_factory=list)

    @property
    def order(self):
        n = 1
        for d in self.orders:
            n *= d
        return n

    def element(self, coeffs):
        """The dual-vector representative of sum coeffs_i * generators_i."""
        n = len(self.generators[0]) if self.generators else 0
        out = [Fraction(0)] * n
        for c, g in zip(coeffs, self.generators):
            for i in range(n):
                out[i] += c * g[i]
        return out


def _qmod2(x):
    x = _frac(x)
    two = Fraction(2)
    return x - (x / two).__floor__() * two


def discriminant_group(lat):
    if not lat.is_even:
        raise LatticeError("discriminant group requires an even lattice")
    g = lat.gram_int()
    n = lat.rank
    if det_fraction(g) == 0:
        raise LatticeError("degenerate lattice")
    d, _u, v = snf(g)
    vinv = mat_inverse_fraction(v)
    ginv = mat_inverse_fraction(g)
    gens = []
    for i, di in enumerate(d):
        if di in (0, 1):
            continue
        z = [vinv[i][j] for j in range(n)]
        vec = [sum(_frac(z[k]) * ginv[k][j] for k in range(n)) for j in range(n)]
        vec = [x - x.__floor__() for x in vec]  # reduce mod Z^n
        gens.append((di, tuple(vec)))
    gens.sort(key=lambda t: (t[0], t[1]))
    generators = [list(vec) for _, vec in gens]
    orders = [o for o, _ in gens]
    qvalues = [_qmod2(lat.norm(vec)) for vec in generators]
    pairings = [[lat.pair(a, b) for b in generators] for a in generators]
    return DiscriminantGroup(generators, orders, qvalues, pairings)


def is_two_elementary_type2(lat):
    """(2-elementary?, type 2?) by enumerating the discriminant group."""
    dg = discriminant_group(lat)
    elementary = all(o == 2 for o in dg.orders)
    if not elementary:
        return (False, False)
    k = len(dg.orders)
    # Gray-code walk over all 2^k classes, tracking q and pairings exactly.
    qcur = Fraction(0)
    dots = [Fraction(0)] * k
    state = [0] * k
    type2 = True
    for step in range(1, 1 << k):
        t = (step & -step).bit_length() - 1
        sgn = 1 if state[t] == 0 else -1
        qcur = qcur + dg.qvalues[t] + 2 * sgn * dots[t]
        for j in range(k):
            dots[j] += sgn * dg.pairings[t][j]
        state[t] ^= 1
        if _qmod2(qcur).denominator != 1:
            type2 = False
            break
    return (elementary, type2)


# ---------------------------------------------------------------------------
# roots


def _upper_end(c, bound):
    """floor(sqrt(bound) - c) when some integer x has (x+c)^2 <= bound, else None."""
    a, b = c.numerator, c.denominator
    p, q = bound.numerator, bound.denominator
    pb2 = p * b * b

    def valid(x):
        t = x * b + a
        return t * t * q <= pb2

    m = isqrt(pb2 // q)
    x0 = (m - a) // b
    if valid(x0):
        hi = x0
    elif valid(x0 + 1):
        hi = x0 + 1
    else:
        return None
    while valid(hi + 1):
        hi += 1
    return hi


def _interval(c, bound):
    """Integers x with (x + c)^2 <= bound, for Fractions c, bound; (1, 0) if none."""
    bound = _frac(bound)
    c = _frac(c)
    if bound < 0:
        return 1, 0
    hi = _upper_end(c, bound)
    if hi is None:
        return 1, 0
    lo_neg = _upper_end(-c, bound)
    if lo_neg is None:
        return 1, 0
    return -lo_neg, hi


def _cholesky_pos(q):
    """d, u for positive-definite rational q: Q(x) = sum d_i (x_i + sum_j u_ij x_j)^2."""
    n = len(q)
    m = [[_frac(x) for x in row] for row in q]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if m[i][i] <= 0:
            raise LatticeError("form is not positive definite")
        d[i] = m[i][i]
        for j in range(i + 1, n):
            u[i][j] = m[i][j] / m[i][i]
        for r in range(i + 1, n):
            for c in range(r, n):
                m[r][c] = m[r][c] - m[i][r] * m[i][c] / m[i][i]
                m[c][r] = m[r][c]
    return d, u


def short_vectors(lat, norm_bound, target=None):
    """All v != 0 with 0 < -v^2 <= norm_bound (or -v^2 == target), up to sign.

    The lattice must be negative definite.  One representative per +-pair
    is returned, with the first nonzero coordinate positive, sorted
    lexicographically.
    """
    n = lat.rank
    q = [[-x for x in row] for row in lat.gram]
    d, u = _cholesky_pos(q)
    bound = _frac(norm_bound)
    found = []
    x = [0] * n

    def rec(i, rem):
        if i < 0:
            if any(x):
                val = bound - rem
                if target is None or val == target:
                    v = tuple(x)
                    for c in v:
                        if c > 0:
                            found.append(v)
                            break
                        if c < 0:
                            found.append(tuple(-y for y in v))
                            break
            return
        c = sum(u[i][j] * x[j] for j in range(i + 1, n))
        lo, hi = _interval(c, rem / d[i])
        for xi in range(lo, hi + 1):
            x[i] = xi
            rec(i - 1, rem - d[i] * (xi + c) * (xi + c))
        x[i] = 0

    rec(n - 1, bound)
    uniq = sorted(set(found))
    return [list(v) for v in uniq]


def roots(lat):
    """All v with v^2 = -2, one representative per +-pair."""
    r, s = signature(lat)
    if r != 0 or s != lat.rank:
        raise LatticeError("root enumeration requires definite lattice")
    return short_vectors(lat, 2, target=Fraction(2))


def reflect(lat, v, x):
    """Image of x under the reflection in a root v."""
    if lat.norm(v) != -2:
        raise LatticeError("not a root")
    pv = lat.pair(x, v)
    return [_frac(xj) + pv * vj for xj, vj in zip(x, v)]


# ---------------------------------------------------------------------------
# ADE classification of a root set


_ADE_POSITIVE_COUNTS = {}


def _expected_pairs(kind, n):
    if kind == "A":
        return n * (n + 1) // 2
    if kind == "D":
        return n * (n - 1)
    return {6: 36, 7: 63, 8: 120}[n]


def _int_rows(vectors):
    out = []
    for v in vectors:
        row = []
        for x in v:
            f = _frac(x)
            if f.denominator != 1:
                return None
            row.append(int(f))
        out.append(row)
    return out


def _pairing_matrix(lat, rows):
    """rows * G * rows^T over exact integers when possible."""
    g = [[_frac(x) for x in row] for row in lat.gram]
    irows = _int_rows(rows)
    if irows is not None and lat.is_integral:
        gi = [[int(x) for x in row] for row in g]
        half = [[sum(r[t] * gi[t][j] for t in range(lat.rank)) for j in range(lat.rank)]
                for r in irows]
        return [[sum(h[t] * irows[j][t] for t in range(lat.rank)) for j in range(len(irows))]
                for h in half]
    half = [[sum(_frac(r[t]) * g[t][j] for t in range(lat.rank)) for j in range(lat.rank)]
            for r in rows]
    return [[sum(h[t] * _frac(rows[j][t]) for t in range(lat.rank)) for j in range(len(rows))]
            for h in half]


def ade_type(lat, root_list=None):
    """Decompose a root set into connected components and classify each.

    Returns a sorted list of (kind, n) pairs, one per component.
    """
    if root_list is None:
        root_list = roots(lat)
    if not root_list:
        return []
    m = len(root_list)
    pm = _pairing_matrix(lat, root_list)
    adj = [[] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if pm[i][j] != 0:
                adj[i].append(j)
                adj[j].append(i)
    seen = [False] * m
    comps = []
    for s in range(m):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(comp)
    out = []
    for comp in comps:
        pairs = [root_list[i] for i in comp]
        out.append(_classify_component(lat, pairs))
    return sorted(out)


def _classify_component(lat, pairs):
    full = [tuple(v) for v in pairs] + [tuple(-x for x in v) for v in pairs]
    rng = random.Random("kummerlab.ade.functional")
    n = lat.rank
    for _ in range(64):
        phi = [Fraction(rng.randrange(-(1 << 24), 1 << 24)) for _ in range(n)]
        vals = {v: sum(p * c for p, c in zip(phi, v)) for v in full}
        if all(val != 0 for val in vals.values()):
            break
    else:
        raise LatticeError("could not separate roots with a linear functional")
    pos = sorted((v for v in full if vals[v] > 0), key=lambda v: vals[v])
    posset = set(pos)
    # Ascending in phi, a positive root is simple iff subtracting no earlier
    # simple root lands in the positive system.
    simple = []
    for v in pos:
        for s in simple:
            if tuple(a - b for a, b in zip(v, s)) in posset:
                break
        else:
            simple.append(v)
    k = len(simple)
    sp = _pairing_matrix(lat, [list(v) for v in simple])
    deg = [0] * k
    edges = 0
    for i in range(k):
        for j in range(i + 1, k):
            if sp[i][j] != 0:
                if sp[i][j] != 1:
                    raise LatticeError("not a root system of ADE type")
                deg[i] += 1
                deg[j] += 1
                edges += 1
    if edges != k - 1:
        raise LatticeError("not a root system of ADE type")
    kind = None
    if max(deg, default=0) <= 2:
        kind = ("A", k)
    elif deg.count(3) == 1 and max(deg) == 3:
        branch = deg.index(3)
        arms = sorted(_arm_lengths(sp, branch))
        if arms[0] == 1 and arms[1] == 1:
            kind = ("D", k)
        elif arms == [1, 2, k - 4]:
            kind = ("E", k)
    if kind is None or _expected_pairs(*kind) != len(pairs):
        raise LatticeError("not a root system of ADE type")
    return kind


def _arm_lengths(sp, branch):
    k = len(sp)
    nbrs = [j for j in range(k) if j != branch and sp[branch][j] != 0]
    lengths = []
    for start in nbrs:
        length = 1
        prev, cur = branch, start
        while True:
            nxt = [j for j in range(k)
                   if j not in (prev, cur) and sp[cur][j] != 0]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        lengths.append(length)
    return lengths


# ---------------------------------------------------------------------------
# sublattices, saturation, glue


@dataclass
class SaturationResult:
    lattice: Lattice
    basis: list
    index: int


def saturation(gens, lat):
    """Saturation of the sublattice spanned by integer rows `gens` inside lat."""
    for row in gens:
        if len(row) != lat.rank or any(_frac(x).denominator != 1 for x in row):
            raise LatticeError("generators not in L")
    rows = [[int(x) for x in row] for row in gens]
    basis, index = saturation_basis(rows, lat.rank)
    gram = [[lat.pair(a, b) for b in basis] for a in basis]
    return SaturationResult(Lattice(gram), basis, index)


def sublattice_index(sub_rows, lat):
    """Index of the full-rank sublattice spanned by sub_rows in lat (exact)."""
    if len(sub_rows) != lat.rank:
        raise LatticeError("sublattice must have full rank")
    d = det_fraction([[_frac(x) for x in row] for row in sub_rows])
    if d == 0:
        raise LatticeError("sublattice must have full rank")
    if d.denominator != 1:
        raise LatticeError("generators not in L")
    return abs(int(d))


def class_order(lat, vec):
    """Order of vec + L in L^vee/L (vec in basis coordinates)."""
    n = 1
    while True:
        if all((_frac(x) * n).denominator == 1 for x in vec):
            return n
        n += 1
        if n > 1 << 20:
            raise LatticeError("class order too large")


@dataclass
class GlueData:
    """Index-aligned generators of glue subgroups of the two discriminant groups."""

    m1: list
    m2: list

    def __post_init__(self):
        if len(self.m1) != len(self.m2):
            raise LatticeError("glue generator lists must have equal length")


@dataclass
class GlueResult:
    lattice: Lattice
    basis: list        # rows: coordinates in the L1 (+) L2 basis
    index: int
    sub1: list         # basis of L1 inside the glued lattice (glued coords)
    sub2: list


def _subgroup_elements(gens_coeff_orders):
    coeffs = [range(o) for o in gens_coeff_orders]
    out = [[]]
    for r in coeffs:
        out = [prev + [c] for prev in out for c in r]
    return out


def glue(l1, l2, gd):
    """Even overlattice of l1 (+) l2 defined by glue data.

    Verifies the glue-compatibility q1(x) + q2(psi(x)) = 0 in Q/2Z on the
    whole generated subgroup, builds the overlattice, and checks that the
    result is even, has index |M1| over the direct sum, and contains both
    factors saturated.
    """
    n1, n2 = l1.rank, l2.rank
    orders = []
    for v1, v2 in zip(gd.m1, gd.m2):
        o1, o2 = class_order(l1, v1), class_order(l2, v2)
        if o1 != o2:
            raise LatticeError("glue map does not respect group orders")
        orders.append(o1)
    for coeffs in _subgroup_elements(orders):
        x1 = [sum(c * _frac(v[i]) for c, v in zip(coeffs, gd.m1)) for i in range(n1)]
        x2 = [sum(c * _frac(v[i]) for c, v in zip(coeffs, gd.m2)) for i in range(n2)]
        if _qmod2(l1.norm(x1) + l2.norm(x2)) != 0:
            raise LatticeError("glue data violates q1 + q2 = 0")
    rows = []
    for i in range(n1):
        rows.append([Fraction(int(i == j)) for j in range(n1)] + [Fraction(0)] * n2)
    for i in range(n2):
        rows.append([Fraction(0)] * n1 + [Fraction(int(i == j)) for j in range(n2)])
    for v1, v2 in zip(gd.m1, gd.m2):
        rows.append([_frac(x) for x in v1] + [_frac(x) for x in v2])
    den = 1
    for row in rows:
        for x in row:
            den = den * x.denominator // __import__("math").gcd(den, x.denominator)
    scaled = [[int(x * den) for x in row] for row in rows]
    basis_scaled = hnf_basis(scaled)
    if len(basis_scaled) != n1 + n2:
        raise LatticeError("glue generators do not span full rank")
    basis = [[Fraction(x, den) for x in row] for row in basis_scaled]
    amb = direct_sum(l1, l2)
    gram = [[amb.pair(a, b) for b in basis] for a in basis]
    glued = Lattice(gram)
    if not glued.is_integral:
        raise LatticeError("non-integral pairing in glued lattice")
    if not glued.is_even:
        raise LatticeError("glued lattice is not even")
    # index over the direct sum
    m1_order = 1
    for o in orders:
        m1_order *= o
    idx = Fraction(abs(det_fraction([list(r) for r in amb.gram])),
                   abs(det_fraction([list(r) for r in gram])))
    import math as _math
    idx_sqrt = _math.isqrt(idx.numerator) if idx.denominator == 1 else None
    if idx_sqrt is None or idx_sqrt * idx_sqrt != idx.numerator:
        raise LatticeError("glued index is not integral")
    # m1_order may overcount if generators were dependent; compare honestly
    if idx_sqrt != m1_order:
        raise LatticeError(
            f"glue index {idx_sqrt} differs from |M1| = {m1_order}; dependent glue generators")
    sub1, sub2 = [], []
    for i in range(n1):
        vec = [Fraction(int(i == j)) for j in range(n1)] + [Fraction(0)] * n2
        c = solve_left_fraction(basis, vec)
        if c is None or any(x.denominator != 1 for x in c):
            raise LatticeError("factor L1 not contained in glued lattice")
        sub1.append([int(x) for x in c])
    for i in range(n2):
        vec = [Fraction(0)] * n1 + [Fraction(int(i == j)) for j in range(n2)]
        c = solve_left_fraction(basis, vec)
        if c is None or any(x.denominator != 1 for x in c):
            raise LatticeError("factor L2 not contained in glued lattice")
        sub2.append([int(x) for x in c])
    for sub in (sub1, sub2):
        sat = saturation(sub, glued)
        if sat.index != 1:
            raise LatticeError("glued factor is not saturated")
    return GlueResult(glued, basis, idx_sqrt, sub1, sub2)


# ---------------------------------------------------------------------------
# JSON interchange


def lattice_to_json(lat):
    if not lat.is_integral:
        raise LatticeError("only integral lattices are serialized")
    obj = {"gram": lat.gram_int()}
    if lat.labels is not None:
        obj["labels"] = list(lat.labels)
    return obj


def lattice_from_json(obj):
    gram = obj["gram"]
    labels = obj.get("labels")
    return Lattice(gram, labels)


def load_lattice(path):
    with open(path, "r", encoding="utf-8") as fh:
        return lattice_from_json(json.load(fh))
