import itertools
import random

import pytest

from kummerlab.binary_codes import (
    BinaryCode,
    CodeError,
    a1m_frame_roots,
    build_subcode,
    build_v16,
    code_to_overlattice,
    equivalence_classes,
    f_bound,
    golay_witness,
    max_admissible_dim,
    mod4_overlattice,
    shortened_golay,
)
from kummerlab.lattice_core import discriminant, roots


def test_f_bound_values():
    assert f_bound(16) == 5
    assert f_bound(0) == 0
    assert f_bound(24) == 12
    expected = [0] * 8 + [1, 1, 1, 1, 2, 2, 3, 4, 5] + list(range(5, 13))
    assert [f_bound(m) for m in range(25)] == expected
    with pytest.raises(CodeError):
        f_bound(25)
    with pytest.raises(CodeError):
        f_bound(-1)


def test_build_v16():
    code = build_v16()
    assert code.dim == 5
    assert code.weight_enumerator() == {0: 1, 8: 30, 16: 1}
    assert code.is_admissible()
    # the 30 weight-8 words are precisely the affine hyperplanes
    words8 = [w for w in code.words() if bin(w).count("1") == 8]
    assert len(words8) == 30
    for w in words8:
        members = [x for x in range(16) if (w >> x) & 1]
        diffs = {members[0] ^ m for m in members}
        # an affine hyperplane is a coset of an index-2 subgroup
        assert len(diffs) == 8
        assert all(a ^ b in diffs for a in diffs for b in diffs)


@pytest.mark.parametrize("j,points,weights", [
    (0, 0, {0: 1}),
    (1, 8, {0: 1, 8: 1}),
    (2, 12, {0: 1, 8: 3}),
    (3, 14, {0: 1, 8: 7}),
    (4, 15, {0: 1, 8: 15}),
])
def test_build_subcode(j, points, weights):
    code = build_subcode(j)
    assert code.ground_size == points == 16 - 2 ** (4 - j)
    assert code.dim == j
    assert code.weight_enumerator() == weights
    assert code.is_admissible()


def test_golay_witness():
    code = golay_witness()
    assert code.dim == 12
    assert code.weight_enumerator() == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}
    assert code.is_admissible()


def test_shortened_golay_chain():
    for m in range(17, 25):
        code = shortened_golay(m)
        assert code.ground_size == m
        assert code.dim == m - 12
        assert code.is_admissible()


def test_intersection_cells_of_v16():
    # in a subcode whose nonzero words all have weight |S|/2, any l
    # independent words cut the ground set into 2^l cells of equal size
    code = build_v16()
    words = [w for w in code.words() if 0 < bin(w).count("1") < 16]
    rng = random.Random(5)
    full = (1 << 16) - 1
    for _ in range(50):
        chosen = []
        span = {0}
        while len(chosen) < 3:
            w = words[rng.randrange(len(words))]
            if w not in span and all(x ^ w != full for x in span):
                span |= {x ^ w for x in span}
                chosen.append(w)
        for signs in itertools.product((0, 1), repeat=3):
            cell = full
            for s, w in zip(signs, chosen):
                cell &= w if s else (~w & full)
            assert bin(cell).count("1") == 16 // 2 ** 3


def test_pairwise_even_intersection():
    for code in (build_v16(), build_subcode(3), golay_witness()):
        words = [w for w in code.words() if w]
        rng = random.Random(6)
        for _ in range(200):
            a = words[rng.randrange(len(words))]
            b = words[rng.randrange(len(words))]
            assert bin(a & b).count("1") % 2 == 0


def test_exhaustive_search_small():
    for m in range(0, 15):
        res = max_admissible_dim(m)
        assert res.exhaustive
        assert res.dim == f_bound(m)
        for w in res.witnesses:
            assert w.is_admissible()
            assert w.dim == res.dim


def test_exhaustive_search_16_unique():
    res = max_admissible_dim(16)
    assert res.exhaustive and res.dim == 5
    assert len(res.witnesses) == 1
    assert len(equivalence_classes(res.witnesses + [build_v16()])) == 1


def test_witness_mode():
    res = max_admissible_dim(20)
    assert not res.exhaustive
    assert res.dim == 8 == f_bound(20)
    with pytest.raises(CodeError):
        max_admissible_dim(20, exhaustive=True)


def test_budget_flags_partial():
    res = max_admissible_dim(16, budget=5)
    assert not res.exhaustive


def test_equivalence_classes():
    v16 = build_v16()
    # a coordinate permutation of the basis gives the same class
    perm = list(range(16))
    random.Random(9).shuffle(perm)
    rows = []
    for b in v16.basis:
        w = 0
        for i in range(16):
            if (b >> i) & 1:
                w |= 1 << perm[i]
        rows.append(w)
    permuted = BinaryCode(16, rows)
    assert len(equivalence_classes([v16, permuted])) == 1
    # different weight enumerator: two classes
    other = BinaryCode(16, [(1 << 8) - 1])  # one weight-8 word code, dim 1
    sub = BinaryCode(16, [v16.basis[0]])
    assert len(equivalence_classes([other, sub])) <= 2
    assert len(equivalence_classes([v16, build_subcode(4).basis and v16])) == 1


def test_code_to_overlattice_zero_and_v16():
    zero = BinaryCode(16, [])
    ov = code_to_overlattice(zero)
    assert discriminant(ov.lattice) == 2 ** 16
    assert ov.index == 1
    ov16 = code_to_overlattice(build_v16())
    assert ov16.index == 2 ** 5
    assert discriminant(ov16.lattice) == 2 ** 6
    assert ov16.lattice.is_even
    assert len(ov16.root_pairs) == 16
    # dual route: generic enumeration agrees with the frame bookkeeping
    assert len(roots(ov16.lattice)) == 16


def test_code_to_overlattice_rejects_weight4():
    with pytest.raises(CodeError):
        code_to_overlattice(BinaryCode(4, [0b1111]))


def test_mod4_overlattice_gains_half_roots():
    code = BinaryCode(4, [0b1111])
    ov = mod4_overlattice(code)
    # 4 frame pairs +-e_i plus 8 half-vector pairs
    assert len(ov.root_pairs) == 12
    assert len(a1m_frame_roots(code)) == 12
    assert ov.lattice.is_even
    assert len(roots(ov.lattice)) == 12


def test_rejects_odd_weight():
    with pytest.raises(CodeError):
        mod4_overlattice(BinaryCode(3, [0b111]))
