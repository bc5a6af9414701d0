"""Brute-force singular points of the families with exact local colengths.

Strategy: eliminate one variable by an exact resultant, factor the
resultant over the base field, and host each Galois orbit of solutions in
a quotient-ring tower.  Transverse points (nonvanishing Jacobian) have
colength 1; at the rest the colength of the Jacobian ideal is computed by
truncated-degree linear algebra in the local ring, with an (N, N+1)
stabilization check and a hard cap.

Rank computations over base fields use numpy int tables (characteristic 2
addition is XOR); towers fall back to generic Gaussian elimination.
"""

from dataclasses import dataclass

import numpy as np

from ..char2_algebra.factor import factor_univariate, poly_roots
from ..char2_algebra.field import BaseField, ExtField
from ..char2_algebra.poly import FqPoly, dense_gcd, dense_trim
from ..char2_algebra.poly import resultant as poly_resultant
from .spec import BRANCH_PROFILES, SurfaceError, classify_by_coefficients

COLENGTH_CAP = 24


@dataclass
class PointRecord:
    field: object          # field hosting the coordinates
    x: object
    y: object              # second coordinate (t for class 2)
    residue_degree: int    # orbit size over the spec's base field
    colength: int          # plane colength of (H_x, H_y) at each point
    embed: object          # map base-field elements into .field

    @property
    def is_rational(self):
        return self.residue_degree == 1


@dataclass
class SingularityReport:
    spec: object
    branch: str
    points: list
    total_colength: int
    isolated: bool

    def to_json(self):
        enc_base = getattr(self.spec.field, "encode", str)
        pts = []
        for r in sorted(self.points, key=lambda r: (r.residue_degree, r.colength)):
            rec = {"degree": r.residue_degree, "colength": r.colength}
            if r.is_rational:
                rec["point"] = [enc_base(r.x), enc_base(r.y)]
            pts.append(rec)
        return {
            "spec": self.spec.to_json(),
            "branch": self.branch,
            "points": pts,
            "affine_colength_total": self.total_colength,
            "double_cover_tyurina_total": 2 * self.total_colength,
            "isolated": self.isolated,
        }


class _NonIsolated(Exception):
    pass


# ---------------------------------------------------------------------------
# rank over GF(2^e) with numpy tables


_NP_CACHE = {}


def _np_tables(field):
    key = field.spec
    if key not in _NP_CACHE:
        q = field.order
        exp = np.array(field._exp + field._exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        for v in range(1, q):
            log[v] = field._log[v]
        _NP_CACHE[key] = (exp, log, q)
    return _NP_CACHE[key]


def gf2e_rank(rows, field):
    """Rank of a matrix over F_{2^e} given as lists of int-coded entries."""
    if not rows:
        return 0
    exp, log, q = _np_tables(field)
    m = np.array(rows, dtype=np.int64)
    nrows, ncols = m.shape
    rank = 0
    for col in range(ncols):
        piv = None
        nz = np.nonzero(m[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        # normalize pivot row
        pv = int(m[rank, col])
        if pv != 1:
            inv_log = (q - 1 - log[pv]) % (q - 1)
            row = m[rank]
            nzr = row != 0
            row[nzr] = exp[log[row[nzr]] + inv_log]
        # eliminate below and above
        colvals = m[:, col].copy()
        colvals[rank] = 0
        tgt = np.nonzero(colvals)[0]
        if tgt.size:
            piv_row = m[rank]
            pnz = piv_row != 0
            logs_piv = log[piv_row[pnz]]
            for i in tgt:
                fval = int(m[i, col])
                add = np.zeros(ncols, dtype=np.int64)
                add[pnz] = exp[logs_piv + log[fval]]
                m[i] ^= add
        rank += 1
        if rank == nrows:
            break
    return rank


def generic_rank(rows, field):
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] != field.zero:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, v) for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != field.zero:
                fval = rows[i][col]
                rows[i] = [field.sub(a, field.mul(fval, b))
                           for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def matrix_rank(rows, field):
    if isinstance(field, BaseField) and field.char == 2:
        return gf2e_rank(rows, field)
    return generic_rank(rows, field)


# ---------------------------------------------------------------------------
# local colength by truncated-degree linear algebra


def _truncated_dim(polys, field, n_cut):
    monos = [(i, j) for d in range(n_cut) for i in range(d + 1)
             for j in [d - i]]
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for poly in polys:
        if poly.is_zero():
            continue
        base_terms = list(poly.terms.items())
        for d in range(n_cut):
            for i in range(d + 1):
                j = d - i
                row = [field.zero] * len(monos)
                nonzero = False
                for (a, b), c in base_terms:
                    e = (a + i, b + j)
                    if a + i + b + j < n_cut:
                        k = index[e]
                        row[k] = field.add(row[k], c)
                        nonzero = True
                if nonzero:
                    rows.append(row)
    rank = matrix_rank(rows, field)
    return len(monos) - rank


def local_colength(polys, field, cap=COLENGTH_CAP):
    """dim of field[[x,y]]/(polys) for an ideal supported at the origin.

    Computes truncations at increasing degree until two consecutive values
    agree; raises _NonIsolated past the cap.
    """
    for poly in polys:
        if poly.coefficient((0, 0)) != field.zero:
            return 0
    prev = None
    for n_cut in range(2, cap + 2):
        cur = _truncated_dim(polys, field, n_cut)
        if prev is not None and cur == prev:
            return cur
        prev = cur
    raise _NonIsolated()


# ---------------------------------------------------------------------------
# specialization helpers


def _specialize(poly, key_name, value, K, embed):
    """Dense coefficients of poly(key=value) in the other variable, over K."""
    other = [v for v in poly.vars if v != key_name][0]
    ki = poly.vars.index(key_name)
    oi = poly.vars.index(other)
    deg = poly.degree(other)
    out = [K.zero] * (deg + 1)
    powers = {0: K.one}
    maxk = max((e[ki] for e in poly.terms), default=0)
    for k in range(1, maxk + 1):
        powers[k] = K.mul(powers[k - 1], value)
    for e, c in poly.terms.items():
        term = K.mul(embed(c), powers[e[ki]])
        out[e[oi]] = K.add(out[e[oi]], term)
    return dense_trim(out, K)


def _map_poly(poly, K, embed):
    return poly.map_field(K, embed)


def _elim_data(spec):
    """(A, B, key variable, eliminated variable) for the partials system."""
    h_poly = spec.H()
    v1, v2 = spec.vars
    a = h_poly.partial(v1)
    b = h_poly.partial(v2)
    if spec.family == "class4":
        return a, b, v1, v2      # eliminate y, key by x
    return a, b, v2, v1          # eliminate x, key by t


def singular_points(spec, cap=COLENGTH_CAP):
    """All singular points of the affine family chart, one record per orbit.

    Raises SurfaceError("non-isolated singular locus") when the partials
    share a factor or a colength exceeds the cap.
    """
    f = spec.field
    a_poly, b_poly, key, elim = _elim_data(spec)
    if a_poly.is_zero() or b_poly.is_zero():
        raise SurfaceError("non-isolated singular locus")
    deg_a = a_poly.degree(elim)
    deg_b = b_poly.degree(elim)
    if deg_a > 0 and deg_b > 0:
        res = poly_resultant(a_poly, b_poly, elim)
    elif deg_a == 0:
        res = a_poly
    else:
        res = b_poly
    if res.is_zero():
        raise SurfaceError("non-isolated singular locus")
    res_uni = res.restrict_vars((key,))
    _unit, factors = factor_univariate(res_uni)
    out = []
    for fac, _mult in factors:
        d1 = fac.degree()
        if d1 == 0:
            continue
        if d1 == 1:
            k_field = f
            embed1 = lambda c: c
            dense = fac.dense_univariate()
            xbar = f.neg(f.mul(dense[0], f.inv(dense[1])))
        else:
            k_field = ExtField(f, fac.dense_univariate())
            embed1 = k_field.embed
            xbar = tuple([f.zero, f.one] + [f.zero] * (d1 - 2))
        a_spec = _specialize(a_poly, key, xbar, k_field, embed1)
        b_spec = _specialize(b_poly, key, xbar, k_field, embed1)
        if not a_spec:
            g = b_spec
        elif not b_spec:
            g = a_spec
        else:
            g = dense_gcd(a_spec, b_spec, k_field)
        if len(g) <= 1:
            continue
        g_poly = FqPoly.from_dense(k_field, elim, g)
        _u, yfactors = factor_univariate(g_poly)
        for yfac, _m in yfactors:
            d2 = yfac.degree()
            if d2 == 1:
                pt_field = k_field
                embed2 = lambda c: c
                dense = yfac.dense_univariate()
                ybar = pt_field.neg(pt_field.mul(dense[0], pt_field.inv(dense[1])))
                xval = xbar
                emb_base = embed1
            else:
                pt_field = ExtField(k_field, yfac.dense_univariate())
                embed2 = pt_field.embed
                ybar = tuple([k_field.zero, k_field.one] + [k_field.zero] * (d2 - 2))
                xval = pt_field.embed(xbar)
                emb_base = lambda c, e1=embed1, pf=pt_field: pf.embed(e1(c))
            if key == spec.vars[0]:
                px, py = xval, ybar
            else:
                px, py = ybar, xval
            colength = _point_colength(spec, pt_field, emb_base, px, py, cap)
            out.append(PointRecord(pt_field, px, py, d1 * d2, colength, emb_base))
    out.sort(key=lambda r: (r.residue_degree, r.colength))
    return out


def _point_colength(spec, pt_field, emb, px, py, cap):
    h_k = _map_poly(spec.H(), pt_field, emb)
    v1, v2 = spec.vars
    a_k = h_k.partial(v1)
    b_k = h_k.partial(v2)
    point = {v1: px, v2: py}
    # transversality shortcut: the Jacobian matrix of (A, B)
    jac = (pt_field.sub(
        pt_field.mul(a_k.partial(v1).evaluate(point), b_k.partial(v2).evaluate(point)),
        pt_field.mul(a_k.partial(v2).evaluate(point), b_k.partial(v1).evaluate(point))))
    if jac != pt_field.zero:
        return 1
    a_t = a_k.shift({v1: px, v2: py})
    b_t = b_k.shift({v1: px, v2: py})
    try:
        return local_colength([a_t, b_t], pt_field, cap)
    except _NonIsolated:
        raise SurfaceError("non-isolated singular locus") from None


def classify_full(spec, cap=COLENGTH_CAP):
    """Coefficient branch cross-validated against brute-force enumeration."""
    branch = classify_by_coefficients(spec)
    points = singular_points(spec, cap)
    n_geom = sum(r.residue_degree for r in points)
    total = sum(r.residue_degree * r.colength for r in points)
    expect_n, expect_c = BRANCH_PROFILES[branch]
    profile_ok = (n_geom == expect_n
                  and all(r.colength == expect_c for r in points)
                  and total == 16)
    if not profile_ok:
        raise SurfaceError(
            f"internal consistency error: branch {branch} expects "
            f"{expect_n} points of colength {expect_c}, enumeration found "
            f"{[(r.residue_degree, r.colength) for r in points]}")
    return SingularityReport(spec, branch, points, total, True)
