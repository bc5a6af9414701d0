import random

import pytest

from kummerlab.char2_algebra import FqPoly, get_field
from kummerlab.surface_family import (
    BRANCHES,
    BRANCH_PROFILES,
    SurfaceError,
    SurfaceSpec,
    classify_by_coefficients,
    classify_derivations,
    classify_full,
    covering_derivation,
    fixed_locus_subgroup_check,
    normalize_spec,
    sample_branch_spec,
    singular_points,
    translate_to_origin,
    z1z2_parametrization_check,
)


def test_classify_by_coefficients_class4():
    f = get_field(2, 4)
    rng = random.Random(1)
    s = SurfaceSpec("class4", f, {"h11": f.rand_nonzero(rng),
                                  "h30": f.rand(rng)})
    assert classify_by_coefficients(s) == "16A1"
    # u = (1, 0, 0, 1): u1 u2 - u0 u3 = 1 != 0 -> off the hypersurface
    s = SurfaceSpec("class4", f, {"h30": f.one, "h03": f.one})
    assert classify_by_coefficients(s) == "4D4"
    s = SurfaceSpec("class4", f, {})  # u = 0 is on every stratum
    assert classify_by_coefficients(s) == "nonRDP"


def test_classify_by_coefficients_class2():
    f = get_field(2, 4)
    cases = [
        ({"h11": 1}, "16A1"),
        ({"h03": 1, "h12": 3}, "4D4"),
        ({"h12": 1, "h05": 1}, "2D8"),
        ({"h12": 1}, "1D16"),
        ({"h05": 1}, "2E8"),
        ({}, "nonRDP"),
    ]
    for coeffs, expect in cases:
        s = SurfaceSpec("class2", f, coeffs)
        assert classify_by_coefficients(s) == expect


def test_classification_needs_normalized():
    f = get_field(2, 4)
    s = SurfaceSpec("class4", f, {"h10": f.one})
    with pytest.raises(SurfaceError):
        classify_by_coefficients(s)


def test_z1z2_parametrization():
    assert z1z2_parametrization_check()


@pytest.mark.parametrize("family", ["class4", "class2"])
@pytest.mark.parametrize("branch", BRANCHES)
def test_branch_profiles(family, branch):
    rng = random.Random(f"profile|{family}|{branch}")
    for e in (4, 5):
        f = get_field(2, e)
        spec = sample_branch_spec(family, branch, f, rng)
        report = classify_full(spec)
        assert report.branch == branch
        n, c = BRANCH_PROFILES[branch]
        assert sum(r.residue_degree for r in report.points) == n
        assert all(r.colength == c for r in report.points)
        assert report.total_colength == 16
        # the double-cover invariant doubles the plane colength
        assert report.to_json()["double_cover_tyurina_total"] == 32


def test_sixteen_a1_points_are_transverse():
    f = get_field(2, 6)
    rng = random.Random(3)
    spec = sample_branch_spec("class4", "16A1", f, rng)
    pts = singular_points(spec)
    assert sum(r.residue_degree for r in pts) == 16
    assert all(r.colength == 1 for r in pts)


def test_nonisolated_detected():
    f = get_field(2, 4)
    # a degenerate H with H_x, H_y sharing the factor x: use the raw
    # machinery through a handmade spec-like object is overkill; instead
    # check that resultant-zero inputs raise through classify on a fake
    # family member is impossible, so drive local_colength directly
    from kummerlab.surface_family.points import local_colength, _NonIsolated
    x = FqPoly.variable(f, ("x", "y"), "x")
    with pytest.raises(_NonIsolated):
        local_colength([x, x * x], f, cap=6)


def test_translate_to_origin_roundtrip():
    f = get_field(2, 4)
    rng = random.Random(5)
    spec = sample_branch_spec("class4", "16A1", f, rng)
    for rec in singular_points(spec):
        spec_k = spec.map_field(rec.field, rec.embed)
        moved, corr = translate_to_origin(spec_k, (rec.x, rec.y))
        lhs = spec_k.H().shift({"x": rec.x, "y": rec.y})
        assert lhs == moved.H() + corr * corr
    # class 2 as well
    spec2 = sample_branch_spec("class2", "4D4", f, rng)
    for rec in singular_points(spec2):
        spec_k = spec2.map_field(rec.field, rec.embed)
        moved, corr = translate_to_origin(spec_k, (rec.x, rec.y))
        lhs = spec_k.H().shift({"x": rec.x, "t": rec.y})
        assert lhs == moved.H() + corr * corr


def test_translate_rejects_smooth_point():
    f = get_field(2, 4)
    rng = random.Random(7)
    spec = sample_branch_spec("class4", "16A1", f, rng)
    h = spec.H()
    hx, hy = h.partial("x"), h.partial("y")
    for a in f.elements():
        for b in f.elements():
            pt = {"x": a, "y": b}
            if hx.evaluate(pt) != f.zero or hy.evaluate(pt) != f.zero:
                with pytest.raises(SurfaceError):
                    translate_to_origin(spec, (a, b))
                return
    raise AssertionError("no smooth point found")


def test_normalize_extended_specs():
    f = get_field(2, 4)
    rng = random.Random(9)
    maps = []
    for family in ("class4", "class2"):
        extras = {"h10": f.rand_nonzero(rng), "h01": f.rand(rng)}
        if family == "class2":
            extras.update({"h21": f.rand_nonzero(rng),
                           "h14": f.rand_nonzero(rng)})
        base = sample_branch_spec(family, "16A1", f, rng)
        spec = SurfaceSpec(family, f, dict(base.coeffs, **extras))
        assert not spec.normalized
        moved, _corr = normalize_spec(spec)
        assert moved.normalized
        maps.append(classify_by_coefficients(moved))
    assert maps == ["16A1", "16A1"]


@pytest.mark.parametrize("family", ["class4", "class2"])
def test_covering_derivation_closure(family):
    f = get_field(2, 5)
    rng = random.Random(11)
    for branch in ("16A1", "4D4", "1D16"):
        spec = sample_branch_spec(family, branch, f, rng)
        d = covering_derivation(spec)
        expect_c = f.one if branch == "16A1" else f.zero
        assert d.c == expect_c
        # D^2 = cD holds on random polynomials, not only on generators
        for _ in range(10):
            poly = FqPoly(f, d.vars, {(rng.randrange(4), rng.randrange(4)):
                                      f.rand(rng) for _ in range(3)})
            assert d.apply(d.apply(poly)) == d.apply(poly).scale(d.c)


def test_fixed_locus_generators_class4():
    # generators are sqrt(H_y), sqrt(H_x) in the half coordinates
    f = get_field(2, 6)
    rng = random.Random(13)
    spec = sample_branch_spec("class4", "16A1", f, rng)
    d = covering_derivation(spec)
    gens, additive, order, witness = fixed_locus_subgroup_check(d)
    assert additive and order == 16 and witness is None
    c1 = f.inv(f.proot(spec.coeff("h11")))
    expect_ds = FqPoly(f, ("s", "t"), {
        (4, 0): f.one, (2, 0): f.proot(spec.coeff("h21")),
        (0, 2): f.proot(spec.coeff("h03")),
        (1, 0): f.proot(spec.coeff("h11"))}).scale(c1)
    assert d.f == expect_ds


def test_fixed_locus_h07_dichotomy():
    f = get_field(2, 6)
    rng = random.Random(15)
    for _ in range(25):
        base = sample_branch_spec("class2", "16A1", f, rng)
        good = covering_derivation(base)
        _g, additive, order, witness = fixed_locus_subgroup_check(good)
        assert additive and order == 16 and witness is None
        bad_spec = SurfaceSpec("class2", f,
                               dict(base.coeffs, h07=f.rand_nonzero(rng)))
        bad = covering_derivation(bad_spec)
        _g, additive, _o, witness = fixed_locus_subgroup_check(bad)
        assert not additive and witness is not None


def test_fixed_points_closed_under_addition():
    # for H = x^4 y + x y^4 + xy the fixed locus is F_4 x F_4 inside F_16;
    # enumerate it and check coordinate-wise sums stay inside
    f = get_field(2, 4)
    spec = SurfaceSpec("class4", f, {"h11": f.one})
    d = covering_derivation(spec)
    pts = [(a, b) for a in f.elements() for b in f.elements()
           if d.f.evaluate({"s": a, "t": b}) == f.zero
           and d.g.evaluate({"s": a, "t": b}) == f.zero]
    assert len(pts) == 16
    ptset = set(pts)
    for (a1, b1) in pts:
        for (a2, b2) in pts:
            assert (f.add(a1, a2), f.add(b1, b2)) in ptset


def test_classify_derivations_examples():
    f = get_field(2, 6)
    rng = random.Random(19)
    # covering derivations pass everything
    for family in ("class4", "class2"):
        spec = sample_branch_spec(family, "2D8", f, rng)
        d = covering_derivation(spec)
        v = classify_derivations(family, d.f, d.g)
        assert v["i"] and v["ii"] and v["iii"] and v["iv"]
        assert v["hamiltonian"] is not None
    # class 2 Hamiltonian pair with h07 != 0: (i)-(iii) hold, (iv) fails
    base = sample_branch_spec("class2", "4D4", f, rng)
    spec = SurfaceSpec("class2", f, dict(base.coeffs, h07=f.rand_nonzero(rng)))
    h = spec.H()
    v = classify_derivations("class2", h.partial("t"), h.partial("x"))
    assert v["i"] and v["ii"] and v["iii"]
    assert not v["iv"]
    # injecting f_22 breaks the stability part of (ii)
    spec = sample_branch_spec("class4", "16A1", f, rng)
    d = covering_derivation(spec)
    bad = d.f + FqPoly(f, d.vars, {(2, 2): f.rand_nonzero(rng)})
    v = classify_derivations("class4", bad, d.g)
    assert not v["ii"]


def test_surface_spec_validation():
    f = get_field(2, 4)
    with pytest.raises(SurfaceError):
        SurfaceSpec("class3", f, {})
    with pytest.raises(SurfaceError):
        SurfaceSpec("class4", f, {"h99": f.one})
