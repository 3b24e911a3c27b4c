import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    brute_hom_invariants,
    random_finite_group,
    random_group,
    random_well_defined_hom,
)
from wangseq.fgab import (
    DimensionMismatchError,
    FgGroup,
    GroupHom,
    IllDefinedHomError,
    IntMatrix,
    LocalizationRing,
    determinant,
    direct_sum,
    format_group,
    group_from_presentation,
    hom_invariants,
    hom_well_defined,
    localize,
    localize_hom,
    parse_group_name,
    smith_normal_form,
)

Z = FgGroup.free(1)
Z2 = FgGroup.cyclic(2)
Z3 = FgGroup.cyclic(3)
Z12 = FgGroup.cyclic(12)


def hom(src, tgt, rows):
    return GroupHom(src, tgt, IntMatrix.from_rows(rows, src.n_generators))


# ---------------------------------------------------------------------------
# Smith normal form


def test_snf_identity():
    s = smith_normal_form(IntMatrix.identity(2))
    assert s.D == IntMatrix.identity(2)
    assert s.invariant_factors == (1, 1)


def test_snf_hand_reduced_example():
    # gcd of entries is 2 and |det| = 8, so the diagonal is forced to (2, 4)
    a = IntMatrix.from_rows([[2, 4], [6, 8]])
    s = smith_normal_form(a)
    assert s.diagonal() == [2, 4]
    assert s.U @ a @ s.V == s.D


def test_snf_zero_matrix():
    s = smith_normal_form(IntMatrix.zeros(2, 3))
    assert s.D == IntMatrix.zeros(2, 3)
    assert s.invariant_factors == ()


@pytest.mark.parametrize("rows,cols", [(0, 0), (0, 3), (3, 0), (1, 1)])
def test_snf_degenerate_shapes(rows, cols):
    a = IntMatrix.zeros(rows, cols)
    s = smith_normal_form(a)
    assert s.U @ a @ s.V == s.D
    assert s.U.rows == rows and s.V.rows == cols


matrices = st.integers(0, 6).flatmap(
    lambda r: st.integers(0, 6).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-10**6, 10**6), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        ).map(lambda rows: IntMatrix.from_rows(rows, c))
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_properties(a):
    s = smith_normal_form(a)
    assert s.U @ a @ s.V == s.D
    assert determinant(s.U) in (1, -1)
    assert determinant(s.V) in (1, -1)
    diag = s.diagonal()
    nonzero = [d for d in diag if d]
    assert diag[: len(nonzero)] == nonzero  # zeros trail
    assert all(d > 0 for d in nonzero)
    for x, y in zip(nonzero, nonzero[1:]):
        assert y % x == 0
    for i in range(s.D.rows):
        for j in range(s.D.cols):
            if i != j:
                assert s.D[i, j] == 0


def test_intmatrix_validation():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])


# ---------------------------------------------------------------------------
# Presentations and canonical form


def test_presentation_cyclic():
    assert group_from_presentation(IntMatrix.from_rows([[12]]), 1) == Z12


def test_presentation_free():
    assert group_from_presentation(IntMatrix.zeros(2, 0), 2) == FgGroup.free(2)


def test_presentation_crt_merges():
    # ZZ/2 + ZZ/3 is cyclic of order 6
    g = group_from_presentation(IntMatrix.diagonal([2, 3]), 2)
    assert g == FgGroup.cyclic(6)


def test_presentation_row_count_checked():
    with pytest.raises(DimensionMismatchError):
        group_from_presentation(IntMatrix.from_rows([[12]]), 2)


def test_canonical_form_is_idempotent():
    g = FgGroup(1, (2, 4, 12))
    assert FgGroup(g.rank, g.torsion) == g


def test_invalid_canonical_forms_rejected():
    with pytest.raises(ValueError):
        FgGroup(0, (4, 2))  # chain must ascend
    with pytest.raises(ValueError):
        FgGroup(0, (1,))
    with pytest.raises(ValueError):
        FgGroup(-1, ())
    with pytest.raises(ValueError):
        FgGroup(0, (2, 3))  # 2 does not divide 3


def test_order():
    assert FgGroup(0, (2, 4)).order == 8
    assert FgGroup.trivial().order == 1
    assert FgGroup(1, (2,)).order is None


# ---------------------------------------------------------------------------
# Well-definedness


def test_free_source_is_unconstrained():
    assert hom_well_defined(hom(Z, Z12, [[1]]))


def test_torsion_into_free_must_vanish():
    assert not hom_well_defined(hom(Z2, Z, [[1]]))
    assert hom_well_defined(hom(Z2, Z, [[0]]))


def test_torsion_order_must_divide():
    assert hom_well_defined(hom(Z12, Z3, [[1]]))
    assert not hom_well_defined(hom(Z3, Z12, [[1]]))
    assert hom_well_defined(hom(Z3, Z12, [[4]]))


def test_dimension_mismatch_reported_distinctly():
    with pytest.raises(DimensionMismatchError):
        GroupHom(Z2, Z2, IntMatrix.identity(2))


def test_composition_of_well_defined_is_well_defined():
    rng = random.Random(7)
    for _ in range(50):
        a, b, c = (random_group(rng) for _ in range(3))
        f = random_well_defined_hom(rng, a, b)
        g = random_well_defined_hom(rng, b, c)
        assert hom_well_defined(g.compose(f))


# ---------------------------------------------------------------------------
# Kernel / image / cokernel


def test_multiplication_on_z():
    for s in (2, 3, 5, 12, -7):
        inv = hom_invariants(GroupHom.multiplication_by(s, Z))
        assert inv.kernel == FgGroup.trivial()
        assert inv.image == Z
        assert inv.cokernel == FgGroup.cyclic(abs(s))


def test_surjection_onto_cyclic():
    inv = hom_invariants(hom(Z, Z12, [[1]]))
    assert inv.kernel == Z
    assert inv.image == Z12
    assert inv.cokernel == FgGroup.trivial()


def test_cyclic_to_cyclic_generator_map():
    # checked against enumeration of all 12 elements
    inv = hom_invariants(hom(Z12, Z3, [[1]]))
    assert inv.kernel == FgGroup.cyclic(4)
    assert inv.image == Z3
    assert inv.cokernel == FgGroup.trivial()


def test_rejects_ill_defined():
    with pytest.raises(IllDefinedHomError):
        hom_invariants(hom(Z2, Z, [[1]]))


def test_zero_group_in_every_role():
    zero = FgGroup.trivial()
    inv = hom_invariants(GroupHom.zero(zero, Z12))
    assert inv == (zero, zero, Z12)
    inv = hom_invariants(GroupHom.zero(Z12, zero))
    assert inv == (Z12, zero, zero)
    inv = hom_invariants(GroupHom.zero(zero, zero))
    assert inv == (zero, zero, zero)


def test_counting_identity_for_finite_homs():
    rng = random.Random(11)
    for _ in range(200):
        src = random_finite_group(rng)
        tgt = random_finite_group(rng)
        h = random_well_defined_hom(rng, src, tgt)
        inv = hom_invariants(h)
        assert src.order == inv.kernel.order * inv.image.order
        assert tgt.order == inv.image.order * inv.cokernel.order


def test_invariants_match_element_level_oracle():
    rng = random.Random(13)
    for _ in range(150):
        src = random_finite_group(rng)
        tgt = random_finite_group(rng)
        h = random_well_defined_hom(rng, src, tgt)
        kernel, image, cokernel = brute_hom_invariants(h)
        inv = hom_invariants(h)
        assert inv.kernel == kernel
        assert inv.image == image
        assert inv.cokernel == cokernel


def test_negation_preserves_invariants():
    rng = random.Random(17)
    for _ in range(100):
        src = random_group(rng)
        tgt = random_group(rng)
        h = random_well_defined_hom(rng, src, tgt)
        assert hom_invariants(h) == hom_invariants(-h)


def _random_automorphism(rng, g):
    # rejection-sample an endomorphism that is invertible
    for _ in range(100):
        e = random_well_defined_hom(rng, g, g)
        inv = hom_invariants(e)
        if inv.kernel.is_trivial and inv.cokernel.is_trivial:
            return e
    return GroupHom.identity(g)


def test_automorphisms_do_not_change_invariants():
    rng = random.Random(19)
    for _ in range(40):
        src = random_group(rng, max_rank=1, max_order=60)
        tgt = random_group(rng, max_rank=1, max_order=60)
        h = random_well_defined_hom(rng, src, tgt)
        pre = _random_automorphism(rng, src)
        post = _random_automorphism(rng, tgt)
        expected = hom_invariants(h)
        assert hom_invariants(h.compose(pre)) == expected
        assert hom_invariants(post.compose(h)) == expected


# ---------------------------------------------------------------------------
# Direct sums


def test_direct_sum_examples():
    assert direct_sum(Z, Z2) == FgGroup(1, (2,))
    assert direct_sum(FgGroup.trivial(), FgGroup(1, (2,))) == FgGroup(1, (2,))
    assert direct_sum(FgGroup.cyclic(4), Z2) == FgGroup(0, (2, 4))


def test_direct_sum_recanonicalizes():
    assert direct_sum(Z2, Z3) == FgGroup.cyclic(6)
    assert direct_sum(FgGroup(0, (2, 4)), Z3) == FgGroup(0, (2, 12))


# ---------------------------------------------------------------------------
# Localization


def test_localize_examples():
    assert localize(FgGroup(1, (2,)), LocalizationRing.rationals()) == Z
    assert localize(FgGroup.cyclic(60), LocalizationRing.inverting([2])) == FgGroup.cyclic(15)
    g = FgGroup(2, (2, 4, 12))
    assert localize(g, LocalizationRing.integers()) == g


def test_localize_distributes_over_direct_sum():
    rng = random.Random(23)
    rings = [
        LocalizationRing.integers(),
        LocalizationRing.rationals(),
        LocalizationRing.inverting([2]),
        LocalizationRing.inverting([2, 3]),
        LocalizationRing.inverting([5]),
    ]
    for _ in range(100):
        g, h = random_group(rng), random_group(rng)
        for ring in rings:
            assert localize(direct_sum(g, h), ring) == direct_sum(
                localize(g, ring), localize(h, ring)
            )


def test_localization_ring_validation():
    with pytest.raises(ValueError):
        LocalizationRing.inverting([4])
    with pytest.raises(ValueError):
        LocalizationRing.inverting([2, 2])
    assert LocalizationRing.inverting([3, 2]).primes == (2, 3)


def test_localize_hom_examples():
    h = localize_hom(GroupHom.multiplication_by(6, Z), LocalizationRing.rationals())
    inv = hom_invariants(h)
    assert (h.source, h.target) == (Z, Z)
    assert inv.kernel.is_trivial and inv.cokernel.is_trivial

    h = localize_hom(hom(Z12, Z3, [[1]]), LocalizationRing.inverting([3]))
    assert h.source == FgGroup.cyclic(4)
    assert h.target == FgGroup.trivial()

    zero = localize_hom(GroupHom.zero(Z12, Z2), LocalizationRing.inverting([5]))
    assert zero.matrix.is_zero()


def test_localize_hom_commutes_with_invariants():
    # kernel/image/cokernel of the localized map are the localized ones
    rng = random.Random(29)
    rings = [
        LocalizationRing.rationals(),
        LocalizationRing.inverting([2]),
        LocalizationRing.inverting([3]),
        LocalizationRing.inverting([2, 5]),
    ]
    for _ in range(80):
        src, tgt = random_group(rng), random_group(rng)
        h = random_well_defined_hom(rng, src, tgt)
        inv = hom_invariants(h)
        for ring in rings:
            loc = hom_invariants(localize_hom(h, ring))
            assert loc.kernel == localize(inv.kernel, ring)
            assert loc.image == localize(inv.image, ring)
            assert loc.cokernel == localize(inv.cokernel, ring)


# ---------------------------------------------------------------------------
# Names


@pytest.mark.parametrize(
    "group,name",
    [
        (FgGroup.trivial(), "0"),
        (Z, "ℤ"),
        (FgGroup.free(2), "ℤ^2"),
        (FgGroup(1, (2,)), "ℤ ⊕ ℤ/2"),
        (FgGroup(0, (2, 2)), "(ℤ/2)^2"),
        (FgGroup(0, (2, 4)), "ℤ/4 ⊕ ℤ/2"),
        (FgGroup(0, (2, 2, 2)), "(ℤ/2)^3"),
        (FgGroup(2, (2, 2, 4)), "ℤ^2 ⊕ ℤ/4 ⊕ (ℤ/2)^2"),
    ],
)
def test_format_group(group, name):
    assert format_group(group) == name
    assert parse_group_name(name) == group


def test_primary_decomposition_view():
    from wangseq.fgab import primary_decomposition

    assert primary_decomposition(FgGroup.cyclic(60)) == (3, 4, 5)
    assert primary_decomposition(FgGroup(2, (2, 12))) == (2, 3, 4)
    assert primary_decomposition(FgGroup.free(3)) == ()
    # the view does not replace the canonical form
    assert FgGroup.cyclic(60).torsion == (60,)


def test_parse_ascii_and_ring_symbols():
    assert parse_group_name("Z + Z/2") == FgGroup(1, (2,))
    assert parse_group_name("ℚ^2", free_symbol="ℚ") == FgGroup.free(2)
    assert format_group(Z, free_symbol="ℚ") == "ℚ"
    assert parse_group_name("ℤ[1/2] ⊕ ℤ/3", free_symbol="ℤ[1/2]") == FgGroup(1, (3,))
