"""Acceptance suite: one test (or parametrized family) per criterion.

A per-criterion PASS/FAIL summary is printed at the end of the run (see
conftest).  Randomized criteria use fixed seeds so the suite is
deterministic.
"""

import random
import time

import pytest

from oracles import (
    brute_hom_invariants,
    random_finite_group,
    random_well_defined_hom,
)
from oracles import random_matrix
from wangseq.extension import (
    ExtensionProblem,
    abelian_groups_of_order,
    brute_force_extensions,
    enumerate_extensions,
)
from wangseq.fgab import (
    FgGroup,
    LocalizationRing,
    determinant,
    hom_invariants,
    localize,
    smith_normal_form,
)
from wangseq.tables import build_hopf_m2_problem
from wangseq.wang import (
    WangProblem,
    d3_from_dixmier_douady,
    negate_differentials,
    localize_problem,
    solve_homotopy_range,
    solve_ktheory,
)

Z = FgGroup.free(1)
ZERO = FgGroup.trivial()


@pytest.mark.criterion(1, "homotopy table of the Hopf/M2 bundle")
def test_criterion_1_homotopy_table():
    expected = [
        {FgGroup(1, (2,))},
        {ZERO},
        {Z},
        {ZERO},
        {ZERO},
        {FgGroup.cyclic(60)},
        {FgGroup.cyclic(4), FgGroup(0, (2, 2))},
        {FgGroup(0, (2, 4)), FgGroup(0, (2, 2, 2))},
    ]
    start = time.perf_counter()
    results = solve_homotopy_range(build_hopf_m2_problem())
    candidate_sets = [set(r.candidates) for r in results]
    elapsed = time.perf_counter() - start
    assert [r.degree for r in results] == list(range(1, 9))
    assert candidate_sets == expected
    assert elapsed < 1.0, f"solved in {elapsed:.3f}s, budget is 1s"


@pytest.mark.criterion(2, "rational column of the Hopf/M2 bundle")
def test_criterion_2_rational_column():
    problem = localize_problem(build_hopf_m2_problem(), LocalizationRing.rationals())
    results = solve_homotopy_range(problem)
    ranks = []
    for r in results:
        (candidate,) = r.candidates
        assert candidate.torsion == ()
        ranks.append(candidate.rank)
    assert ranks == [1, 0, 1, 0, 0, 0, 0, 0]


def _rosenberg(delta):
    k0, k1 = Z, ZERO
    d0, d1 = d3_from_dixmier_douady(delta, k0, k1)
    solved = solve_ktheory(WangProblem.ktheory(k=3, k0=k0, k1=k1, d0=d0, d1=d1))
    (k0_answer,) = solved.k0.candidates
    (k1_answer,) = solved.k1.candidates
    return k0_answer, k1_answer


@pytest.mark.criterion(3, "k = 3 trichotomy for the compacts")
@pytest.mark.parametrize("delta", [1, -1])
def test_criterion_3_isomorphism_case(delta):
    assert _rosenberg(delta) == (ZERO, ZERO)


@pytest.mark.criterion(3, "k = 3 trichotomy for the compacts")
@pytest.mark.parametrize("s", [2, 3, 5, 12])
def test_criterion_3_multiplication_case(s):
    assert _rosenberg(s) == (ZERO, FgGroup.cyclic(s))


@pytest.mark.criterion(3, "k = 3 trichotomy for the compacts")
def test_criterion_3_zero_differential_case():
    k0_answer, k1_answer = _rosenberg(0)
    assert k0_answer == Z
    # As usually quoted, the trichotomy's untwisted line ends with K1 = 0.
    # Exactness says otherwise: the sequence splits into
    # 0 -> K_{n+1}(B) -> K_n(A) -> K_n(B) -> 0, so K1(A) = coker(0: Z -> Z)
    # = Z, which is K^1(S^3) of the trivial bundle.  The assertion below
    # keeps the quoted value and therefore fails by design; the solver
    # follows the exact sequence and flags the situation in report notes.
    assert k1_answer == ZERO, (
        f"exactness forces K1(A) = {k1_answer} (= K^1(S^3)); "
        "the quoted K1 = 0 contradicts the long exact sequence"
    )


CHAINS_UP_TO_24 = [
    (),
    (2,),
    (3,),
    (7,),
    (24,),
    (2, 4),
    (2, 2),
    (3, 12),
    (6, 12),
    (12, 24),
    (4, 24),
    (5, 15),
]


@pytest.mark.criterion(4, "even k with K1(B) = 0 degenerates")
def test_criterion_4_even_k_degenerate():
    rng = random.Random(403)
    for _ in range(50):
        k0 = FgGroup(rng.randint(0, 3), rng.choice(CHAINS_UP_TO_24))
        k = rng.choice([2, 4, 6])
        solved = solve_ktheory(WangProblem.ktheory(k=k, k0=k0, k1=ZERO))
        assert solved.k1.candidates == (ZERO,)
        assert (solved.k0.sub, solved.k0.quot) == (k0, k0)
        if not k0.torsion:
            assert solved.k0.candidates == (FgGroup.free(2 * k0.rank),)


@pytest.mark.criterion(5, "extension enumeration matches brute force")
def test_criterion_5_extension_oracle_equivalence():
    start = time.perf_counter()
    pairs = 0
    for order in range(1, 65):
        for sub_order in range(1, order + 1):
            if order % sub_order:
                continue
            quot_order = order // sub_order
            for sub in abelian_groups_of_order(sub_order):
                for quot in abelian_groups_of_order(quot_order):
                    problem = ExtensionProblem(sub=sub, quot=quot)
                    fast = enumerate_extensions(problem).candidates
                    slow = brute_force_extensions(problem).candidates
                    assert fast == slow, (sub, quot)
                    pairs += 1
    elapsed = time.perf_counter() - start
    assert pairs == 541
    assert elapsed < 60.0, f"exhaustive comparison took {elapsed:.1f}s"


@pytest.mark.criterion(6, "Smith normal form property suite")
def test_criterion_6_snf_properties():
    rng = random.Random(1949)
    for _ in range(1000):
        a = random_matrix(rng, max_dim=8, max_entry=10**6)
        s = smith_normal_form(a)
        assert s.U @ a @ s.V == s.D
        assert determinant(s.U) in (1, -1)
        assert determinant(s.V) in (1, -1)
        diag = s.diagonal()
        nonzero = [d for d in diag if d]
        assert diag[: len(nonzero)] == nonzero
        assert all(d > 0 for d in nonzero)
        for x, y in zip(nonzero, nonzero[1:]):
            assert y % x == 0
        for i in range(s.D.rows):
            for j in range(s.D.cols):
                if i != j:
                    assert s.D[i, j] == 0


@pytest.mark.criterion(7, "kernel/image/cokernel vs element enumeration")
def test_criterion_7_hom_invariants_brute_force():
    rng = random.Random(200)
    for _ in range(500):
        src = random_finite_group(rng, 200)
        tgt = random_finite_group(rng, 200)
        h = random_well_defined_hom(rng, src, tgt)
        kernel, image, cokernel = brute_hom_invariants(h)
        inv = hom_invariants(h)
        assert inv.kernel == kernel
        assert inv.image == image
        assert inv.cokernel == cokernel


@pytest.mark.criterion(8, "sign and localization invariance")
def test_criterion_8_sign_invariance():
    problem = build_hopf_m2_problem()
    flipped = negate_differentials(problem)
    for a, b in zip(solve_homotopy_range(problem), solve_homotopy_range(flipped)):
        assert (a.degree, a.sub, a.quot, a.candidates, a.status) == (
            b.degree,
            b.sub,
            b.quot,
            b.candidates,
            b.status,
        )


@pytest.mark.criterion(8, "sign and localization invariance")
@pytest.mark.parametrize(
    "ring",
    [
        LocalizationRing.inverting([2]),
        LocalizationRing.inverting([3]),
        LocalizationRing.rationals(),
    ],
    ids=["Z[1/2]", "Z[1/3]", "Q"],
)
def test_criterion_8_localization_commutes(ring):
    problem = build_hopf_m2_problem()
    integral = solve_homotopy_range(problem)
    localized = solve_homotopy_range(localize_problem(problem, ring))
    for a, b in zip(integral, localized):
        assert localize(a.sub, ring) == b.sub
        assert localize(a.quot, ring) == b.quot
