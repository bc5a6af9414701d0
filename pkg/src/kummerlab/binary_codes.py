"""F_2-linear codes whose nonzero words have weight = 0 mod 4 and != 4.

Such codes classify even overlattices of A_1^m that gain no roots.  The
module builds the named example codes (affine-hyperplane code on 16
points, its hyperplane subcodes, the extended binary Golay code), runs an
exhaustive isomorph-free search for the maximum dimension g(m), turns
admissible codes into even overlattices, and partitions code lists into
permutation-equivalence classes.

Codewords are bitmasks over a ground set of size m <= 24.  The search
works on "cell profiles": a dimension-k code, up to coordinate
permutation, is the multiset of its m column vectors in F_2^k, stored as
a counts vector of length 2^k.  Extending a code by one generator splits
every cell in two, so children of a profile are enumerated by integer
splits and filtered by the weight constraints, vectorized with numpy.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exactmat import hnf_basis, solve_left_fraction
from .lattice_core import Lattice

MAX_GROUND = 24
EXHAUSTIVE_LIMIT = 17
_ALLOWED = (8, 12, 16, 20, 24)


class CodeError(ValueError):
    pass


def f_bound(m):
    """Closed-form upper bound for the dimension of an admissible code."""
    if not 0 <= m <= MAX_GROUND:
        raise CodeError(f"ground size {m} out of range 0..{MAX_GROUND}")
    if m < 16:
        return 4 - (16 - m - 1).bit_length()
    if m == 16:
        return 5
    return m - 12


def _rref(rows):
    """Reduced basis of the F_2-span of bitmask rows, sorted ascending."""
    basis = []  # kept sorted by pivot (leading bit) descending
    for r in rows:
        cur = r
        for b in basis:
            if cur and b.bit_length() <= cur.bit_length() and (cur >> (b.bit_length() - 1)) & 1:
                cur ^= b
        if cur:
            basis.append(cur)
            basis.sort(key=int.bit_length, reverse=True)
    for i in range(len(basis)):
        piv = 1 << (basis[i].bit_length() - 1)
        for j in range(len(basis)):
            if j != i and basis[j] & piv:
                basis[j] ^= basis[i]
    return sorted(basis)


class BinaryCode:
    """An F_2-subspace of 2^S, S of size ground_size, basis in reduced form."""

    def __init__(self, ground_size, basis_rows):
        if not 0 <= ground_size <= MAX_GROUND:
            raise CodeError(f"ground size {ground_size} out of range 0..{MAX_GROUND}")
        mask = (1 << ground_size) - 1
        for r in basis_rows:
            if r & ~mask:
                raise CodeError("basis word exceeds ground set")
        self.ground_size = ground_size
        self.basis = _rref(basis_rows)

    @property
    def dim(self):
        return len(self.basis)

    def words(self):
        out = [0]
        for b in self.basis:
            out += [w ^ b for w in out]
        return out

    def weight_enumerator(self):
        enum = {}
        for w in self.words():
            c = bin(w).count("1")
            enum[c] = enum.get(c, 0) + 1
        return dict(sorted(enum.items()))

    def is_admissible(self):
        return all(c % 4 == 0 and c != 4
                   for c in (bin(w).count("1") for w in self.words() if w))

    def profile(self):
        """Counts of column vectors in F_2^dim, one entry per cell."""
        k = self.dim
        counts = [0] * (1 << k)
        for i in range(self.ground_size):
            z = 0
            for j, b in enumerate(self.basis):
                if (b >> i) & 1:
                    z |= 1 << j
            counts[z] += 1
        return tuple(counts)

    def to_json(self):
        return {"m": self.ground_size,
                "basis": [format(b, f"0{max(self.ground_size, 1)}b")[::-1]
                          for b in self.basis]}

    @classmethod
    def from_json(cls, obj):
        m = obj["m"]
        rows = [int(s[::-1], 2) if s else 0 for s in obj["basis"]]
        return cls(m, rows)

    def __repr__(self):
        return f"BinaryCode(m={self.ground_size}, dim={self.dim})"


# ---------------------------------------------------------------------------
# named example codes


def build_v16():
    """The affine-hyperplane code: {0, S, affine hyperplanes} on S = F_2^4."""
    hyperplanes = []
    for i in range(4):
        h = 0
        for x in range(16):
            if not (x >> i) & 1:
                h |= 1 << x
        hyperplanes.append(h)
    full = (1 << 16) - 1
    code = BinaryCode(16, hyperplanes + [full])
    assert code.dim == 5
    return code


def build_subcode(j):
    """Dimension-j hyperplane subcode realized on 16 - 2^(4-j) points."""
    if not 0 <= j <= 4:
        raise CodeError("subcode index must be 0..4")
    hyperplanes = []
    for i in range(j):
        h = 0
        for x in range(16):
            if not (x >> i) & 1:
                h |= 1 << x
        hyperplanes.append(h)
    # support: complement of the set where all j functionals are 1
    removed = [x for x in range(16) if all((x >> i) & 1 for i in range(j))]
    keep = [x for x in range(16) if x not in removed]
    remap = {x: t for t, x in enumerate(keep)}
    rows = []
    for h in hyperplanes:
        r = 0
        for x in keep:
            if (h >> x) & 1:
                r |= 1 << remap[x]
        rows.append(r)
    code = BinaryCode(len(keep), rows)
    assert code.dim == j
    return code


_GOLAY_GEN_POLY = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]  # x^11+x^10+x^6+x^5+x^4+x^2+1


def golay_witness():
    """The extended binary Golay code [24, 12] with its construction self-check."""
    g = 0
    coeffs = _GOLAY_GEN_POLY  # degree 11 generator polynomial of the [23,12] code
    for i, c in enumerate(coeffs):
        if c:
            g |= 1 << i
    rows = []
    for i in range(12):
        w23 = g << i
        parity = bin(w23).count("1") & 1
        rows.append(w23 | (parity << 23))
    code = BinaryCode(24, rows)
    if code.dim != 12:
        raise CodeError("Golay construction self-check failed: wrong dimension")
    enum = code.weight_enumerator()
    if enum != {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}:
        raise CodeError(f"Golay construction self-check failed: weights {enum}")
    return code


def shortened_golay(m):
    """Admissible code on m points (17 <= m <= 24) by shortening the Golay code."""
    code = golay_witness()
    words = code.words()
    for _ in range(24 - m):
        size = max(w.bit_length() for w in words if w)
        keep = [w for w in words if not (w >> (size - 1)) & 1]
        words = keep
    return BinaryCode(m, words)


# ---------------------------------------------------------------------------
# profiles, equivalence, exhaustive search


def _parity_matrix(k):
    n = 1 << k
    a = np.arange(n, dtype=np.int64)
    popcnt = np.zeros(n, dtype=np.int64)
    for b in range(k):
        popcnt += (a >> b) & 1
    # P[a, z] = parity(popcount(a & z))
    p = np.zeros((n, n), dtype=np.int64)
    for aa in range(n):
        x = aa & a
        cnt = np.zeros(n, dtype=np.int64)
        for b in range(k):
            cnt += (x >> b) & 1
        p[aa] = cnt & 1
    return p


_PARITY_CACHE = {}


def parity_matrix(k):
    if k not in _PARITY_CACHE:
        _PARITY_CACHE[k] = _parity_matrix(k)
    return _PARITY_CACHE[k]


def word_weights(profile):
    k = (len(profile) - 1).bit_length()
    p = parity_matrix(k)
    return p @ np.asarray(profile, dtype=np.int64)


def profile_is_admissible(profile, m):
    allowed = {w for w in _ALLOWED if w <= m}
    wt = word_weights(profile)
    return all(int(w) in allowed for w in wt[1:])


def _cell_keys(profile):
    k = (len(profile) - 1).bit_length()
    wt = word_weights(profile)
    p = parity_matrix(k)
    keys = []
    for z in range(len(profile)):
        through = tuple(sorted(int(wt[a]) for a in range(1 << k) if p[a][z]))
        keys.append((profile[z], through))
    return keys


def profile_invariant(profile):
    wt = word_weights(profile)
    return (len(profile),
            tuple(sorted(int(w) for w in wt[1:])),
            tuple(sorted(_cell_keys(profile)[1:])))


def profiles_isomorphic(pa, pb):
    """Decide GL(k,2)-equivalence of two cell profiles."""
    if len(pa) != len(pb) or sum(pa) != sum(pb):
        return False
    if profile_invariant(pa) != profile_invariant(pb):
        return False
    k = (len(pa) - 1).bit_length()
    if k == 0:
        return pa == pb
    keys_a = _cell_keys(pa)
    keys_b = _cell_keys(pb)
    span_img = {0: 0}

    def dfs(i):
        if i == k:
            return True
        target = keys_b[1 << i]
        prev = list(span_img.items())
        used = set(span_img.values())
        for v in range(1, 1 << k):
            if v in used or keys_a[v] != target:
                continue
            ok = True
            new = {}
            for w, sw in prev:
                z = w | (1 << i)
                sv = sw ^ v
                if pa[sv] != pb[z] or keys_a[sv] != keys_b[z]:
                    ok = False
                    break
                new[z] = sv
            if ok:
                span_img.update(new)
                if dfs(i + 1):
                    return True
                for z in new:
                    del span_img[z]
        return False

    return dfs(0)


def code_from_profile(m, profile):
    k = (len(profile) - 1).bit_length()
    coords = []
    for z, c in enumerate(profile):
        coords.extend([z] * c)
    assert len(coords) == m
    rows = []
    for j in range(k):
        r = 0
        for i, z in enumerate(coords):
            if (z >> j) & 1:
                r |= 1 << i
        rows.append(r)
    return BinaryCode(m, rows)


def _children_profiles(profile, m):
    """Admissible one-generator extensions of a profile, as new profiles."""
    k = (len(profile) - 1).bit_length()
    ncells = len(profile)
    p = parity_matrix(k)
    wt_old = p @ np.asarray(profile, dtype=np.int64)
    allowed = np.array([w for w in _ALLOWED if w <= m], dtype=np.int64)
    varying = [z for z in range(ncells) if profile[z] > 0]
    ranges = [profile[z] + 1 for z in varying]
    total = 1
    for r in ranges:
        total *= r
    out = []
    chunk = 1 << 17
    prod_iter = itertools.product(*[range(r) for r in ranges])
    while True:
        block = list(itertools.islice(prod_iter, chunk))
        if not block:
            break
        s = np.array(block, dtype=np.int64)
        ssum = s.sum(axis=1)
        psub = p[:, varying]
        w_new = wt_old[None, :] + ssum[:, None] - 2 * (s @ psub.T)
        valid = np.isin(w_new, allowed).all(axis=1)
        for row, ok in zip(block, valid):
            if not ok:
                continue
            child = [0] * (ncells << 1)
            svec = dict(zip(varying, row))
            for z in range(ncells):
                sz = svec.get(z, 0)
                child[z] = profile[z] - sz
                child[z + ncells] = sz
            out.append(tuple(child))
    return out


@dataclass
class SearchResult:
    m: int
    dim: int
    witnesses: list
    exhaustive: bool
    class_counts: dict = field(default_factory=dict)
    lower: int = 0
    upper: int = 0
    nodes: int = 0


def max_admissible_dim(m, budget=None, exhaustive=None):
    """Maximum dimension of an admissible code on m points.

    Exhaustive mode (default for m <= 17) explores all codes up to
    coordinate-permutation equivalence level by level and returns the exact
    maximum with all maximum-dimension codes up to equivalence.  Witness
    mode (m > 17, or forced) returns a shortened-Golay witness together
    with the chain bounds g(m) >= g(m+1) - 1 and g(m) <= g(m+1).
    """
    if not 0 <= m <= MAX_GROUND:
        raise CodeError(f"ground size {m} out of range 0..{MAX_GROUND}")
    if exhaustive is None:
        exhaustive = m <= EXHAUSTIVE_LIMIT
    if exhaustive and m > EXHAUSTIVE_LIMIT:
        raise CodeError(f"exhaustive search supported only for m <= {EXHAUSTIVE_LIMIT}")
    if not exhaustive:
        witness = shortened_golay(m) if m >= 17 else build_subcode_best(m)
        return SearchResult(m=m, dim=witness.dim, witnesses=[witness], exhaustive=False,
                            lower=witness.dim, upper=f_bound(m + 1) if m < 24 else 12)
    level = [tuple([m])]
    class_counts = {0: 1}
    nodes = 0
    dim = 0
    while True:
        buckets = {}
        truncated = False
        for prof in level:
            for child in _children_profiles(prof, m):
                nodes += 1
                if budget is not None and nodes > budget:
                    truncated = True
                    break
                inv = profile_invariant(child)
                reps = buckets.setdefault(inv, [])
                if not any(profiles_isomorphic(child, r) for r in reps):
                    reps.append(child)
            if truncated:
                break
        nxt = [r for reps in buckets.values() for r in reps]
        if truncated:
            witnesses = [code_from_profile(m, p) for p in level]
            return SearchResult(m=m, dim=dim, witnesses=witnesses, exhaustive=False,
                                class_counts=class_counts, lower=dim, upper=f_bound(m),
                                nodes=nodes)
        if not nxt:
            break
        dim += 1
        class_counts[dim] = len(nxt)
        level = nxt
    witnesses = [code_from_profile(m, p) for p in sorted(level)]
    return SearchResult(m=m, dim=dim, witnesses=witnesses, exhaustive=True,
                        class_counts=class_counts, lower=dim, upper=dim, nodes=nodes)


def build_subcode_best(m):
    """Best hyperplane-style witness on m < 17 points (used in witness mode)."""
    best = BinaryCode(m, [])
    for j in range(5):
        cand = build_subcode(j)
        if cand.ground_size <= m and cand.dim > best.dim:
            rows = cand.basis
            best = BinaryCode(m, rows)
    return best


def equivalence_classes(codes):
    """Partition codes (same ground size) by coordinate-permutation equivalence."""
    if not codes:
        return []
    m = codes[0].ground_size
    for c in codes:
        if c.ground_size != m:
            raise CodeError("codes must share the ground size")
    profs = [c.profile() for c in codes]
    classes = []
    for idx, prof in enumerate(profs):
        placed = False
        for cls in classes:
            if len(prof) == len(profs[cls[0]]) and profiles_isomorphic(prof, profs[cls[0]]):
                cls.append(idx)
                placed = True
                break
        if not placed:
            classes.append([idx])
    return classes


# ---------------------------------------------------------------------------
# code -> even overlattice of A_1^m


@dataclass
class Overlattice:
    lattice: Lattice
    basis: list      # rows in the A_1^m frame (entries in (1/2)Z)
    index: int
    root_pairs: list


def a1m_frame_roots(code):
    """Roots of the code overlattice in the A_1^m frame, one per +-pair.

    Roots are +-e_i together with (1/2)(sum of +-e over T) for each
    weight-4 codeword T; membership in the overlattice is exactly
    membership of the support in the code.
    """
    m = code.ground_size
    out = []
    for i in range(m):
        v = [Fraction(0)] * m
        v[i] = Fraction(1)
        out.append(v)
    for w in code.words():
        if bin(w).count("1") != 4:
            continue
        support = [i for i in range(m) if (w >> i) & 1]
        first = support[0]
        for signs in itertools.product((1, -1), repeat=3):
            v = [Fraction(0)] * m
            v[first] = Fraction(1, 2)
            for s, i in zip(signs, support[1:]):
                v[i] = Fraction(s, 2)
            out.append(v)
    return out


def mod4_overlattice(code):
    """Overlattice of A_1^m from any code with all weights = 0 mod 4.

    Weight-4 words are allowed; they contribute half-vector roots (this is
    how the D- and E-type overlattices of A_1^16 arise).  Root vectors are
    returned both in the A_1^m frame and in the new basis.
    """
    for w in code.words():
        if w and bin(w).count("1") % 4:
            raise CodeError("overlattice is not even: weight not divisible by 4")
    m = code.ground_size
    rows = []
    for i in range(m):
        rows.append([2 * int(i == j) for j in range(m)])
    for b in code.basis:
        rows.append([1 if (b >> i) & 1 else 0 for i in range(m)])
    basis2 = hnf_basis(rows)
    basis = [[Fraction(x, 2) for x in row] for row in basis2]
    gram = [[-2 * sum(a[i] * b[i] for i in range(m)) for b in basis] for a in basis]
    lat = Lattice(gram)
    if not lat.is_even:
        raise CodeError("overlattice is not even")
    det = 1
    for i, row in enumerate(basis2):
        det *= row[i]
    index = (1 << m) // det if det else 0
    if index != 1 << code.dim:
        raise CodeError("overlattice index mismatch")
    root_vecs = a1m_frame_roots(code)
    pairs = []
    for v in root_vecs:
        c = solve_left_fraction(basis, v)
        if c is None or any(x.denominator != 1 for x in c):
            raise CodeError("root bookkeeping failed")
        pairs.append([int(x) for x in c])
    return Overlattice(lat, basis, index, pairs)


def code_to_overlattice(code):
    """Even overlattice of A_1^m determined by an admissible code."""
    if not code.is_admissible():
        raise CodeError("code is not kummer-admissible: "
                        "overlattice would be odd or would gain roots")
    ov = mod4_overlattice(code)
    if len(ov.root_pairs) != code.ground_size:
        raise CodeError("code is not kummer-admissible: extra roots appear")
    return ov
