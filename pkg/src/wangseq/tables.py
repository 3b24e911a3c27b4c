"""Built-in coefficient and pairing data for the quaternionic Hopf example.

The bundle is S^7 x_{S^3} M_2(C) -> S^4: the group S^3 = SU(2) acts on the
2x2 matrices by conjugation, so the fibre coefficients are the homotopy
groups of U(2) and the k = 4 differential is (minus) the Samelson-type
pairing with the clutching class iota, the inclusion S^3 = SU(2) -> U(2).

Everything here is transcribed data, not computation.  Sources for the
groups: pi_1..pi_8 are classical (Hopf class eta and its suspensions,
Toda's nu'), pi_9 and pi_10 are J. C. Moore's, pi_11 and pi_12 are Toda's.
The nonzero pairing values come from I. M. James ([iota, iota] = a_6 and
[iota, a_6] = a_9); the degree 4 and 5 values follow by composing with eta,
and the remaining entries vanish by order arguments or nilpotency.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fgab import FgGroup, GroupHom, IntMatrix, LocalizationRing
from .wang import WangProblem

HOPF_SU2_M2 = "hopf-su2-m2"


@dataclass(frozen=True)
class NamedGenerator:
    """A labelled generator of one coefficient group; order 0 is infinite."""

    degree: int
    label: str
    order: int


# pi_n(U(2)) for n = 1..12 as (rank, torsion) pairs.
_U2_GROUPS: dict[int, FgGroup] = {
    1: FgGroup(1),            # circle factor, class a_1
    2: FgGroup(0),
    3: FgGroup(1),            # inclusion iota of SU(2)
    4: FgGroup(0, (2,)),      # eta
    5: FgGroup(0, (2,)),      # eta^2
    6: FgGroup(0, (12,)),     # a_6; 2-primary part generated by nu' = 3*a_6
    7: FgGroup(0, (2,)),      # nu' eta
    8: FgGroup(0, (2,)),      # nu' eta^2
    9: FgGroup(0, (3,)),      # a_9 (Moore)
    10: FgGroup(0, (15,)),    # a_10 (Moore)
    11: FgGroup(0, (2,)),     # (Toda; no standard name)
    12: FgGroup(0, (2, 2)),   # (Toda; no standard names)
}

U2_GENERATORS: tuple[NamedGenerator, ...] = (
    NamedGenerator(1, "a1", 0),
    NamedGenerator(3, "iota", 0),
    NamedGenerator(4, "eta", 2),
    NamedGenerator(5, "eta^2", 2),
    NamedGenerator(6, "a6", 12),
    NamedGenerator(6, "nu'", 4),
    NamedGenerator(7, "nu'eta", 2),
    NamedGenerator(8, "nu'eta^2", 2),
    NamedGenerator(9, "a9", 3),
    NamedGenerator(10, "a10", 15),
)

# The pairing [iota, -]: pi_n(U(2)) -> pi_{n+3}(U(2)) as matrix entries on
# canonical generators, with the justification per row.
_PAIRING_ROWS: dict[int, tuple[list[list[int]], str]] = {
    1: ([[0]], "[iota, a1] = 0 (a1 comes from the central circle)"),
    2: ([[0] * 0], "pi_2(U(2)) = 0"),
    3: ([[1]], "[iota, iota] = a6 (I. M. James)"),
    4: ([[1]], "[iota, eta] = [iota, iota] o eta = nu' eta (2-primary)"),
    5: ([[1]], "[iota, eta^2] = nu' eta^2 (same composition argument)"),
    6: ([[1]], "[iota, a6] = [iota, [iota, iota]] = a9 (I. M. James)"),
    7: ([[0]], "[iota, nu'eta] = a9 o eta = 0 (orders 3 and 2 are coprime)"),
    8: ([[0]], "[iota, nu'eta^2] = 0 (same order argument)"),
    9: ([[0], [0]], "[iota, a9] = 0 (nilpotency; also forced: no nonzero "
                    "map from a 3-group to a 2-group)"),
}


def u2_homotopy(n: int) -> FgGroup:
    """pi_n(U(2)) for 1 <= n <= 12, transcribed."""
    if n not in _U2_GROUPS:
        raise ValueError(f"pi_n(U(2)) is tabulated for 1 <= n <= 12, got {n}")
    return _U2_GROUPS[n]


def hopf_samelson_d4(n: int) -> GroupHom:
    """The pairing [iota, -]: pi_n(U(2)) -> pi_{n+3}(U(2)) for 1 <= n <= 9."""
    if n not in _PAIRING_ROWS:
        raise ValueError(f"the pairing is tabulated for 1 <= n <= 9, got {n}")
    rows, _ = _PAIRING_ROWS[n]
    source, target = u2_homotopy(n), u2_homotopy(n + 3)
    if source.is_trivial:
        return GroupHom.zero(source, target)
    return GroupHom(source, target, IntMatrix.from_rows(rows, source.n_generators))


def pairing_citation(n: int) -> str:
    return _PAIRING_ROWS[n][1]


def k_coefficients(algebra: str) -> tuple[FgGroup, FgGroup]:
    """(K_0, K_1) for the scalars, a matrix algebra, or the compacts.

    All three are Morita equivalent, so the answer is (ZZ, 0) throughout.
    """
    name = algebra.strip().lower()
    if name in ("complex-numbers", "compacts") or _is_matrix_name(name):
        return (FgGroup(1), FgGroup(0))
    raise ValueError(
        f"unknown algebra {algebra!r}; expected complex-numbers, matrix(n) "
        "or compacts"
    )


def _is_matrix_name(name: str) -> bool:
    if not (name.startswith("matrix(") and name.endswith(")")):
        return False
    size = name[len("matrix(") : -1]
    return size.isdigit() and int(size) >= 1


def build_hopf_m2_problem() -> WangProblem:
    """The full k = 4 problem for sections of S^7 x_{S^3} M_2 -> S^4.

    The clutching map of the quaternionic Hopf bundle is the identity of
    S^3, so the differential is the tabulated pairing with iota, defined
    wherever both endpoint groups are tabulated (degrees 1..9).
    """
    coefficients = {n: u2_homotopy(n) for n in range(1, 13)}
    differentials = {n: hopf_samelson_d4(n) for n in range(1, 10)}
    return WangProblem.homotopy(
        k=4,
        coefficients=coefficients,
        differentials=differentials,
        localization=LocalizationRing.integers(),
    )


def builtin_problem(name: str) -> WangProblem:
    if name in (HOPF_SU2_M2, "hopf-m2"):
        return build_hopf_m2_problem()
    raise ValueError(f"unknown builtin problem {name!r}")


def transcription_fingerprint() -> str:
    """Stable digest of the tabulated data; guards against silent edits."""
    import hashlib

    parts = []
    for n in sorted(_U2_GROUPS):
        g = _U2_GROUPS[n]
        parts.append(f"pi{n}={g.rank},{list(g.torsion)}")
    for n in sorted(_PAIRING_ROWS):
        rows, _ = _PAIRING_ROWS[n]
        parts.append(f"d{n}={rows}")
    for gen in U2_GENERATORS:
        parts.append(f"gen{gen.degree}:{gen.label}:{gen.order}")
    return hashlib.sha256("|".join(parts).encode()).hexdigest()
