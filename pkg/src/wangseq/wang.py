"""Solvers for the long exact Wang sequence of a bundle over a sphere.

For a bundle over S^k (k >= 2) with fibre coefficient groups pi_q and a
degree-shift differential d: pi_q -> pi_{q+k-1}, exactness packs the answer
in each degree n into a short exact sequence

    0 -> coker(d at n+1) -> answer(n) -> ker(d at n) -> 0,

so the computable output is the pair (sub, quot) plus the set of possible
middle groups.  The same shape applies 2-periodically in K-theory, where
the differential shifts parity by (k-1) mod 2.

The differential enters with a global minus sign by convention; negating a
homomorphism never changes kernel or cokernel classes, so solver output is
independent of that sign (property-tested).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .extension import ExtensionAnswer, ExtensionProblem, enumerate_extensions, ext_classes
from .fgab import (
    FgGroup,
    GroupHom,
    LocalizationRing,
    hom_invariants,
    hom_well_defined,
    localize,
    localize_hom,
)


class Grading(enum.Enum):
    HOMOTOPY = "homotopy"
    KTHEORY = "ktheory"


class StatusKind(enum.Enum):
    UNIQUE = "UNIQUE"
    SPLIT_FORCED = "SPLIT_FORCED"
    AMBIGUOUS = "AMBIGUOUS"
    INSUFFICIENT_DATA = "INSUFFICIENT_DATA"


class ProblemError(ValueError):
    """Ill-formed Wang problem (bad grading, degree, or differential)."""


@dataclass(frozen=True)
class DegreeResult:
    """Outcome at one degree: the extension data or a data gap.

    ``sub`` is the cokernel of the incoming differential, ``quot`` the
    kernel of the outgoing one; ``candidates`` enumerates the possible
    middle groups.  When the coefficient window cannot support the degree,
    both are None and the status is INSUFFICIENT_DATA.
    """

    degree: int
    sub: FgGroup | None
    quot: FgGroup | None

    @cached_property
    def answer(self) -> ExtensionAnswer | None:
        if self.sub is None or self.quot is None:
            return None
        return enumerate_extensions(ExtensionProblem(sub=self.sub, quot=self.quot))

    @property
    def candidates(self) -> tuple[FgGroup, ...]:
        return () if self.answer is None else self.answer.candidates

    @property
    def status_kind(self) -> StatusKind:
        if self.answer is None:
            return StatusKind.INSUFFICIENT_DATA
        return StatusKind.UNIQUE if len(self.candidates) == 1 else StatusKind.AMBIGUOUS

    @property
    def status(self) -> str:
        kind = self.status_kind
        if kind is StatusKind.AMBIGUOUS:
            return f"AMBIGUOUS({len(self.candidates)})"
        return kind.value


@dataclass(frozen=True)
class KTheoryResult:
    k0: DegreeResult
    k1: DegreeResult


@dataclass(frozen=True)
class EasyThomConclusion:
    """Forced outcome for even k with vanishing odd coefficients."""

    ses: ExtensionProblem
    k1_is_zero: bool = True


@dataclass(frozen=True)
class WangProblem:
    """One bundle: sphere dimension k, graded coefficients, differential.

    Homotopy problems carry coefficient groups on a contiguous degree range
    and a partial differential map (missing degrees mean the zero map, which
    is only usable when both endpoint groups are known).  K-theory problems
    carry a 2-periodic pair and a differential per parity.
    """

    k: int
    grading: Grading
    coefficients: tuple[tuple[int, FgGroup], ...]
    differentials: tuple[tuple[int, GroupHom], ...]
    localization: LocalizationRing = LocalizationRing()

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ProblemError(f"sphere dimension must be at least 2, got {self.k}")
        degrees = [q for q, _ in self.coefficients]
        if self.grading is Grading.HOMOTOPY:
            if not degrees:
                raise ProblemError("homotopy problems need a coefficient range")
            if degrees != list(range(degrees[0], degrees[0] + len(degrees))):
                raise ProblemError("coefficient degrees must be contiguous and sorted")
        else:
            if degrees != [0, 1]:
                raise ProblemError("K-theory problems carry exactly parities 0 and 1")
        for n, hom in self.differentials:
            src = self.coefficient(n)
            tgt = self.coefficient(self._shift(n))
            if src is None or tgt is None:
                raise ProblemError(
                    f"differential at degree {n} needs coefficients at both "
                    f"{n} and {self._shift(n)}"
                )
            if hom.source != src or hom.target != tgt:
                raise ProblemError(
                    f"differential at degree {n} must map {src} -> {tgt}, "
                    f"got {hom.source} -> {hom.target}"
                )
            if hom.ring != self.localization:
                raise ProblemError(
                    f"differential at degree {n} lives over {hom.ring}, "
                    f"problem over {self.localization}"
                )
            if not hom_well_defined(hom):
                raise ProblemError(f"differential at degree {n} is not well-defined")

    # -- constructors ------------------------------------------------------

    @classmethod
    def homotopy(
        cls,
        k: int,
        coefficients: dict[int, FgGroup],
        differentials: dict[int, GroupHom] | None = None,
        localization: LocalizationRing = LocalizationRing(),
    ) -> WangProblem:
        return cls(
            k=k,
            grading=Grading.HOMOTOPY,
            coefficients=tuple(sorted(coefficients.items())),
            differentials=tuple(sorted((differentials or {}).items())),
            localization=localization,
        )

    @classmethod
    def ktheory(
        cls,
        k: int,
        k0: FgGroup,
        k1: FgGroup,
        d0: GroupHom | None = None,
        d1: GroupHom | None = None,
        localization: LocalizationRing = LocalizationRing(),
    ) -> WangProblem:
        diffs = tuple(
            (p, d) for p, d in ((0, d0), (1, d1)) if d is not None
        )
        return cls(
            k=k,
            grading=Grading.KTHEORY,
            coefficients=((0, k0), (1, k1)),
            differentials=diffs,
            localization=localization,
        )

    # -- accessors ---------------------------------------------------------

    def _shift(self, n: int) -> int:
        """Degree of the differential's target starting from degree n."""
        if self.grading is Grading.KTHEORY:
            return (n + self.k - 1) % 2
        return n + self.k - 1

    @property
    def q_min(self) -> int:
        return self.coefficients[0][0]

    @property
    def q_max(self) -> int:
        return self.coefficients[-1][0]

    def coefficient(self, q: int) -> FgGroup | None:
        if self.grading is Grading.KTHEORY:
            q %= 2
        if self.q_min <= q <= self.q_max:
            return self.coefficients[q - self.q_min][1]
        return None

    def differential(self, n: int) -> GroupHom | None:
        """The differential leaving degree n; zero map when both endpoint
        groups are known but no map was supplied; None otherwise."""
        if self.grading is Grading.KTHEORY:
            n %= 2
        for m, hom in self.differentials:
            if m == n:
                return hom
        src = self.coefficient(n)
        tgt = self.coefficient(self._shift(n))
        if src is None or tgt is None:
            return None
        return GroupHom.zero(src, tgt, self.localization)


# ---------------------------------------------------------------------------
# Solving


def _degree_result(problem: WangProblem, n: int) -> DegreeResult:
    # The two differentials exist iff coefficients at n, n+1, n+k-1, n+k do.
    d_out = problem.differential(n)
    d_in = problem.differential(n + 1)
    if d_out is None or d_in is None:
        return DegreeResult(degree=n, sub=None, quot=None)
    quot = hom_invariants(d_out).kernel
    sub = hom_invariants(d_in).cokernel
    return DegreeResult(degree=n, sub=sub, quot=quot)


def solve_homotopy_degree(problem: WangProblem, n: int) -> DegreeResult:
    """Solve one degree n >= 1; needs coefficients at n, n+1, n+k-1, n+k."""
    if problem.grading is not Grading.HOMOTOPY:
        raise ProblemError("solve_homotopy_degree needs a homotopy-graded problem")
    if n < 1:
        raise ProblemError(f"the sequence is only asserted in degrees >= 1, got {n}")
    return _degree_result(problem, n)


def solve_homotopy_range(problem: WangProblem) -> list[DegreeResult]:
    """All fully-determined degrees, max(1, q_min) <= n <= q_max - k."""
    if problem.grading is not Grading.HOMOTOPY:
        raise ProblemError("solve_homotopy_range needs a homotopy-graded problem")
    lo = max(1, problem.q_min)
    hi = problem.q_max - problem.k
    return [solve_homotopy_degree(problem, n) for n in range(lo, hi + 1)]


def solve_ktheory(problem: WangProblem) -> KTheoryResult:
    """Both parities; the answer in parity n extends coker(d at parity n+1)
    by ker(d at parity n)."""
    if problem.grading is not Grading.KTHEORY:
        raise ProblemError("solve_ktheory needs a K-theory-graded problem")
    return KTheoryResult(
        k0=_degree_result(problem, 0), k1=_degree_result(problem, 1)
    )


def d3_from_dixmier_douady(
    delta: int, k0: FgGroup, k1: FgGroup
) -> tuple[GroupHom, GroupHom]:
    """The k = 3 differential: multiplication by -delta on each parity.

    The sign follows the convention for the differential; it never changes
    kernels or cokernels, so solver output only sees |delta|.
    """
    return (
        GroupHom.multiplication_by(-delta, k0),
        GroupHom.multiplication_by(-delta, k1),
    )


def easy_thom_check(problem: WangProblem) -> EasyThomConclusion | None:
    """Even k with vanishing odd coefficients forces a degenerate answer.

    The differential changes parity, so it must vanish; the odd answer is 0
    and the even answer extends K0 by K0.  Returns None when the hypotheses
    fail; asserts agreement with the general solver otherwise.
    """
    if problem.grading is not Grading.KTHEORY:
        raise ProblemError("easy_thom_check needs a K-theory-graded problem")
    if problem.k % 2 or not problem.coefficient(1).is_trivial:
        return None
    k0 = problem.coefficient(0)
    conclusion = EasyThomConclusion(ses=ExtensionProblem(sub=k0, quot=k0))
    solved = solve_ktheory(problem)
    assert solved.k1.sub.is_trivial and solved.k1.quot.is_trivial
    assert solved.k0.sub == k0 and solved.k0.quot == k0
    return conclusion


def localize_problem(problem: WangProblem, ring: LocalizationRing) -> WangProblem:
    """Tensor coefficients and differentials with the subring of QQ.

    Localization is flat, so solving the localized problem agrees with
    localizing the integral sub and quot degreewise (property-tested).
    """
    coeffs = tuple((q, localize(g, ring)) for q, g in problem.coefficients)
    diffs = tuple((n, localize_hom(h, ring)) for n, h in problem.differentials)
    return WangProblem(
        k=problem.k,
        grading=problem.grading,
        coefficients=coeffs,
        differentials=diffs,
        localization=problem.localization.combine(ring),
    )


def negate_differentials(problem: WangProblem) -> WangProblem:
    """Same problem with every differential replaced by its negative."""
    return WangProblem(
        k=problem.k,
        grading=problem.grading,
        coefficients=problem.coefficients,
        differentials=tuple((n, -h) for n, h in problem.differentials),
        localization=problem.localization,
    )


def split_forced(result: DegreeResult) -> bool:
    """True when the middle group is pinned to the direct sum a priori:
    free quotient, or vanishing Ext of the quotient's torsion into the sub."""
    if result.sub is None or result.quot is None:
        return False
    return (
        not result.quot.torsion
        or ext_classes(result.quot.torsion_part(), result.sub).is_trivial
    )
