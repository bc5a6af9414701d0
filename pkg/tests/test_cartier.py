import random
from fractions import Fraction

import pytest

from kummerlab.char2_algebra import (
    AmbientSpan,
    CartierError,
    FqPoly,
    cartier_general,
    cartier_p2,
    check_p1_derivative,
    class2_ambient,
    class4_ambient,
    divisorial_gcd_check,
    f_ij_table,
    get_field,
    partials,
    sqrt_poly,
    z_filtration,
    z_filtration_dims,
)

V4 = ("x", "y")
V2 = ("x", "t")


def class4_H(field, h30, h21, h12, h03, h11, extra=None):
    terms = {(4, 1): field.one, (1, 4): field.one, (3, 0): h30,
             (2, 1): h21, (1, 2): h12, (0, 3): h03, (1, 1): h11}
    if extra:
        terms.update(extra)
    return FqPoly(field, V4, {e: c for e, c in terms.items() if c != field.zero})


def class2_H(field, h11, h12, h03, h05, extra=None):
    terms = {(3, 0): field.one, (0, 9): field.one, (1, 1): h11,
             (1, 2): h12, (0, 3): h03, (0, 5): h05}
    if extra:
        terms.update(extra)
    return FqPoly(field, V2, {e: c for e, c in terms.items() if c != field.zero})


def rand_class4(field, rng, extra=None):
    return class4_H(field, *(field.rand(rng) for _ in range(5)), extra=extra)


def rand_class2(field, rng, extra=None):
    return class2_H(field, *(field.rand(rng) for _ in range(4)), extra=extra)


def test_partials_examples():
    f = get_field(2, 2)
    p = FqPoly(f, V4, {(4, 1): f.one})
    px, py = partials(p)
    assert px.is_zero()                      # 4 = 0 in characteristic 2
    assert py == FqPoly(f, V4, {(4, 0): f.one})
    rng = random.Random(3)
    h = rand_class4(f, rng)
    hx, hy = partials(h)
    # term-by-term differentiation of the family polynomial
    expect_hx = FqPoly(f, V4, {(0, 4): f.one, (2, 0): h.coefficient((3, 0)),
                               (0, 2): h.coefficient((1, 2)),
                               (0, 1): h.coefficient((1, 1))})
    expect_hy = FqPoly(f, V4, {(4, 0): f.one, (2, 0): h.coefficient((2, 1)),
                               (0, 2): h.coefficient((0, 3)),
                               (1, 0): h.coefficient((1, 1))})
    assert hx == expect_hx
    assert hy == expect_hy


def test_sqrt_poly():
    f = get_field(2, 3)
    x = FqPoly.variable(f, V4, "x")
    y = FqPoly.variable(f, V4, "y")
    assert sqrt_poly(x * x) == x
    c = 5
    p = (x * (y * y)).scale(f.mul(c, c))
    assert sqrt_poly(p * p) == p
    with pytest.raises(CartierError):
        sqrt_poly(x.pow_int(3))


def test_cartier_eta0_eigenvalue():
    # C(eta_0) = sqrt(h11) eta_0: vanishes exactly when h11 = 0
    f = get_field(2, 4)
    rng = random.Random(5)
    for _ in range(20):
        h11 = f.rand(rng)
        h = class4_H(f, f.rand(rng), f.rand(rng), f.rand(rng), f.rand(rng), h11)
        form = cartier_p2(FqPoly.const(f, V4, f.one), h)
        assert form.b.is_zero()
        assert form.a == FqPoly.const(f, V4, f.proot(h11))
        assert form.is_zero() == (h11 == f.zero)


@pytest.mark.parametrize("make", [rand_class4, rand_class2])
def test_cartier_axioms(make):
    rng = random.Random(7)
    fails = 0
    for e in (2, 3, 4):
        f = get_field(2, e)
        for _ in range(120):
            h = make(f, rng)
            fv = FqPoly(f, h.vars, {(rng.randrange(5), rng.randrange(5)):
                                    f.rand(rng) for _ in range(4)})
            h1, h2 = partials(h)
            f1, f2 = partials(fv)
            df = f1 * h2 + f2 * h1
            if not cartier_p2(df, h).is_zero():
                fails += 1
            form = cartier_p2(fv * df, h)
            if not (form.b.is_zero() and form.a == df):
                fails += 1
    assert fails == 0


def test_cartier_additive_semilinear():
    f = get_field(2, 4)
    rng = random.Random(9)
    for _ in range(100):
        h = rand_class4(f, rng)
        a = FqPoly(f, V4, {(rng.randrange(3), rng.randrange(3)): f.rand(rng)})
        b = FqPoly(f, V4, {(rng.randrange(3), rng.randrange(3)): f.rand(rng)})
        left = cartier_p2(a + b, h)
        ra, rb = cartier_p2(a, h), cartier_p2(b, h)
        assert left.a == ra.a + rb.a and left.b == ra.b + rb.b
        c = f.rand(rng)
        scaled = cartier_p2(a.scale(f.mul(c, c)), h)
        assert scaled.a == ra.a.scale(c) and scaled.b == ra.b.scale(c)


def test_cartier_general_specializes():
    f = get_field(2, 3)
    rng = random.Random(11)
    for _ in range(100):
        h = rand_class4(f, rng)
        g = FqPoly(f, V4, {(rng.randrange(4), rng.randrange(4)): f.rand(rng)
                           for _ in range(3)})
        assert cartier_general(g, h, 2).wcoeffs == cartier_p2(g, h).wcoeffs


def test_cartier_p3():
    f = get_field(3, 2)
    rng = random.Random(13)
    h = FqPoly(f, V4, {(2, 2): f.one})
    # g = 1: the (2,2)-block of g H^1 = x^2 y^2 is 1, carried on the w term
    form = cartier_general(FqPoly.const(f, V4, f.one), h, 3)
    assert form.wcoeffs[1] == FqPoly.const(f, V4, f.one)
    assert form.wcoeffs[0].is_zero() and form.wcoeffs[2].is_zero()
    for _ in range(60):
        h = FqPoly(f, V4, {(2, 2): f.one, (1, 0): f.rand(rng),
                           (0, 1): f.rand(rng), (2, 1): f.rand(rng)})
        fv = FqPoly(f, V4, {(rng.randrange(3), rng.randrange(3)): f.rand(rng)
                            for _ in range(3)})
        f1, f2 = partials(fv)
        h1, h2 = partials(h)
        df = f1 * h2 - f2 * h1
        assert cartier_general(df, h, 3).is_zero()
        form = cartier_general(fv * fv * df, h, 3)
        assert form.wcoeffs[0] == df
        assert form.wcoeffs[1].is_zero() and form.wcoeffs[2].is_zero()


def test_cartier_rejects_pth_power_H():
    f = get_field(2, 2)
    h = FqPoly(f, V4, {(2, 0): f.one, (0, 4): f.one})
    with pytest.raises(CartierError):
        cartier_general(FqPoly.const(f, V4, f.one), h, 2)


def test_p1_derivative():
    rng = random.Random(15)
    f8 = get_field(2, 3)
    t = FqPoly.variable(f8, ("t",), "t")
    # F = t, p = 2: d/dt(F_t F) = 1 = -F_t^2
    assert check_p1_derivative(t, 2)
    for _ in range(100):
        poly = FqPoly(f8, ("t",), {(rng.randrange(7),): f8.rand(rng)
                                   for _ in range(4)})
        assert check_p1_derivative(poly, 2)
    f9 = get_field(3, 2)
    for _ in range(100):
        poly = FqPoly(f9, ("t",), {(rng.randrange(5),): f9.rand(rng)
                                   for _ in range(4)})
        assert check_p1_derivative(poly, 3)
    f5 = get_field(5, 1)
    for _ in range(100):
        poly = FqPoly(f5, ("t",), {(rng.randrange(5),): f5.rand(rng)
                                   for _ in range(3)})
        assert check_p1_derivative(poly, 5)


def test_z_filtration_family_dims():
    rng = random.Random(17)
    for e in (4, 5):
        f = get_field(2, e)
        for _ in range(20):
            dims = z_filtration_dims(rand_class4(f, rng), class4_ambient(), 5)
            assert dims == [7, 6, 5, 5, 5, 5]
            dims = z_filtration_dims(rand_class2(f, rng), class2_ambient(), 5)
            assert dims == [7, 6, 5, 5, 5, 5]


def test_z_filtration_adversarial():
    rng = random.Random(19)
    f = get_field(2, 5)
    for e_extra in ((3, 1), (3, 2), (1, 3), (2, 3)):
        h = rand_class4(f, rng, extra={e_extra: f.rand_nonzero(rng)})
        dims = z_filtration_dims(h, class4_ambient(), 3)
        assert dims[:3] == [7, 6, 5] and dims[3] < 5
    for e_extra in ((1, 3), (1, 5), (1, 6), (0, 7)):
        h = rand_class2(f, rng, extra={e_extra: f.rand_nonzero(rng)})
        dims = z_filtration_dims(h, class2_ambient(), 3)
        assert dims[3] < 5


def test_z_filtration_basis_consistency():
    # level-2 basis of the class-4 family drops exactly the xy monomial
    f = get_field(2, 4)
    rng = random.Random(21)
    h = rand_class4(f, rng)
    levels = z_filtration(h, class4_ambient(), 2)
    dim2, basis2 = levels[2]
    assert dim2 == 5
    monos = class4_ambient().monomials
    xy = monos.index((1, 1))
    assert all(vec[xy] == f.zero for vec in basis2)


def test_z_filtration_rejects_missing_w_line():
    f = get_field(2, 4)
    rng = random.Random(23)
    h = rand_class4(f, rng, extra=None)
    # force a nonzero w-image with an xy-containing span but no w slot
    span = AmbientSpan(((0, 0), (1, 1)), has_w=False)
    with pytest.raises(CartierError):
        z_filtration(h, span, 3)


def test_f_ij_table():
    f = get_field(2, 4)
    rng = random.Random(25)
    i1 = class4_ambient().monomials
    i2 = tuple(m for m in i1 if m != (1, 1))
    h = rand_class4(f, rng, extra={(3, 1): f.rand(rng), (1, 3): f.rand(rng),
                                   (3, 2): f.rand(rng), (2, 3): f.rand(rng)})
    # delta case: g = 1 picks out h_{2i+1, 2j+1}
    table = f_ij_table([(0, 0)], h, i1)
    for (i, j) in i1:
        assert table[(i, j)].get((0, 0), f.zero) == h.coefficient((2 * i + 1,
                                                                   2 * j + 1))
    # the f_11 row lists (h31, h32, h13, h23) against the level-2 monomials
    table = f_ij_table(i2, h, ((1, 1),))
    row = table[(1, 1)]
    assert row.get((0, 2), f.zero) == h.coefficient((3, 1))
    assert row.get((0, 1), f.zero) == h.coefficient((3, 2))
    assert row.get((2, 0), f.zero) == h.coefficient((1, 3))
    assert row.get((1, 0), f.zero) == h.coefficient((2, 3))
    # cross-check against the Cartier image coefficients
    for _ in range(30):
        g = FqPoly(f, V4, {e: f.rand(rng) for e in i2})
        img = cartier_p2(g, h)
        for (i, j) in i2:
            coeff = img.a.coefficient((i, j))
            expect = f.zero
            for e2, hval in f_ij_table(i2, h, ((i, j),))[(i, j)].items():
                expect = f.add(expect, f.mul(hval, g.coefficient(e2)))
            assert f.mul(coeff, coeff) == expect


def test_divisorial_gcd_examples():
    f4 = get_field(2, 2)
    fx = FqPoly(f4, ("t", "x", "y"), {(0, 1, 0): f4.one})
    g, gp, eq = divisorial_gcd_check(fx)
    assert eq and g.degree() == 0
    f3 = FqPoly(f4, ("t", "x", "y"), {(2, 1, 0): f4.one, (2, 0, 1): f4.one})
    g, gp, eq = divisorial_gcd_check(f3)
    assert eq
    assert g == FqPoly(f4, ("t", "x", "y"), {(2, 0, 0): f4.one})
    with pytest.raises(CartierError):
        divisorial_gcd_check(FqPoly(f4, ("x", "y"), {(2, 0): f4.one}))


def test_divisorial_gcd_sweep():
    f4 = get_field(2, 2)
    rng = random.Random(27)
    checked = 0
    while checked < 100:
        terms = {(rng.randrange(5), rng.randrange(5)): f4.rand(rng)
                 for _ in range(6)}
        poly = FqPoly(f4, ("x", "y"), terms)
        if poly.is_zero() or all(e[0] % 2 == 0 and e[1] % 2 == 0
                                 for e in poly.terms):
            continue
        _g, _gp, eq = divisorial_gcd_check(poly)
        assert eq
        checked += 1
