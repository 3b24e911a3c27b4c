"""Exact arithmetic for finitely generated abelian groups.

Groups are kept in invariant-factor canonical form (free rank plus a
divisibility chain of torsion orders), so isomorphism testing is plain
equality.  Homomorphisms are integer matrices on canonical generators;
kernels, images and cokernels all reduce to Smith normal form over ZZ,
computed with unbounded integers (intermediate entries can exceed machine
words even on small inputs).

Generator convention, used everywhere including file formats: free
generators first, then torsion generators in increasing order of their
invariant factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple


class DimensionMismatchError(ValueError):
    """A matrix does not have the shape required by its role."""


class IllDefinedHomError(ValueError):
    """A homomorphism matrix does not respect the source relations."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    # Maintain x*a + y*b == g while running the Euclidean algorithm.
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


# ---------------------------------------------------------------------------
# Integer matrices


@dataclass(frozen=True)
class IntMatrix:
    """Rectangular integer matrix, row-major, entries of unbounded size."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if not all(isinstance(e, int) for e in self.entries):
            raise ValueError("matrix entries must be integers")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> IntMatrix:
        row_list = [list(r) for r in rows]
        if cols is None:
            cols = len(row_list[0]) if row_list else 0
        for r in row_list:
            if len(r) != cols:
                raise ValueError("ragged rows")
        flat = tuple(e for r in row_list for e in r)
        return cls(len(row_list), cols, flat)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Iterable[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        d = list(diag)
        rows = len(d) if rows is None else rows
        cols = len(d) if cols is None else cols
        m = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(d):
            m[i][i] = v
        return cls.from_rows(m, cols)

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [
            list(self.entries[i * self.cols : (i + 1) * self.cols])
            for i in range(self.rows)
        ]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> IntMatrix:
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-e for e in self.entries))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            ai = a[i]
            out.append(
                [sum(ai[k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
            )
        return IntMatrix.from_rows(out, other.cols)

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise DimensionMismatchError("hstack needs equal row counts")
        a, b = self.to_rows(), other.to_rows()
        return IntMatrix.from_rows(
            [a[i] + b[i] for i in range(self.rows)], self.cols + other.cols
        )

    def select_columns(self, indices: Iterable[int]) -> IntMatrix:
        idx = list(indices)
        rows = [[self[i, j] for j in idx] for i in range(self.rows)]
        return IntMatrix.from_rows(rows, len(idx))

    def select_rows(self, indices: Iterable[int]) -> IntMatrix:
        idx = list(indices)
        return IntMatrix.from_rows([list(self.to_rows()[i]) for i in idx], self.cols)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise DimensionMismatchError("determinant needs a square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = a.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V == D with U, V unimodular and D diagonal, d_i | d_{i+1}.

    ``invariant_factors`` lists the nonzero diagonal entries (including any
    leading 1s); trailing zeros of D carry the rank defect.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    invariant_factors: tuple[int, ...]

    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _swap_rows(m: list[list[int]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: list[list[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _row_sub(m: list[list[int]], i: int, j: int, q: int) -> None:
    # row_i -= q * row_j
    mi, mj = m[i], m[j]
    for c in range(len(mi)):
        mi[c] -= q * mj[c]


def _col_sub(m: list[list[int]], i: int, j: int, q: int) -> None:
    # col_i -= q * col_j
    for row in m:
        row[i] -= q * row[j]


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Diagonalize ``a`` over ZZ by unimodular row and column operations.

    Pivoting always chooses the surviving entry of least absolute value,
    which keeps coefficient growth tame; all arithmetic is exact.
    Total on every shape, including empty matrices.
    """
    nr, nc = a.rows, a.cols
    d = a.to_rows()
    u = IntMatrix.identity(nr).to_rows()
    v = IntMatrix.identity(nc).to_rows()

    t = 0
    while t < nr and t < nc:
        # Min-abs nonzero pivot in the trailing submatrix.
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                e = d[i][j]
                if e and (best is None or abs(e) < abs(best[0])):
                    best = (e, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            _swap_rows(d, t, bi)
            _swap_rows(u, t, bi)
        if bj != t:
            _swap_cols(d, t, bj)
            _swap_cols(v, t, bj)

        # Clear row and column t.  A nonzero remainder is strictly smaller
        # than the pivot, so re-pivoting terminates.
        dirty = False
        for i in range(t + 1, nr):
            if d[i][t]:
                q = d[i][t] // d[t][t]
                _row_sub(d, i, t, q)
                _row_sub(u, i, t, q)
                if d[i][t]:
                    dirty = True
        for j in range(t + 1, nc):
            if d[t][j]:
                q = d[t][j] // d[t][t]
                _col_sub(d, j, t, q)
                _col_sub(v, j, t, q)
                if d[t][j]:
                    dirty = True
        if dirty:
            continue
        if d[t][t] < 0:
            d[t] = [-e for e in d[t]]
            u[t] = [-e for e in u[t]]
        t += 1

    # Enforce the divisibility chain d_i | d_{i+1}; each fix replaces the
    # pair by (gcd, lcm), so the loop terminates.
    r = t
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            p, q = d[i][i], d[i + 1][i + 1]
            if q % p == 0:
                continue
            changed = True
            # col_i += col_{i+1} puts q below the pivot...
            _col_sub(d, i, i + 1, -1)
            _col_sub(v, i, i + 1, -1)
            # ...then a unimodular row pair replaces (p, q) by (g, pq/g).
            x, y, g = xgcd(p, q)
            di, dj = d[i], d[i + 1]
            ui, uj = u[i], u[i + 1]
            for c in range(nc):
                di[c], dj[c] = x * di[c] + y * dj[c], (-q // g) * di[c] + (p // g) * dj[c]
            for c in range(nr):
                ui[c], uj[c] = x * ui[c] + y * uj[c], (-q // g) * ui[c] + (p // g) * uj[c]
            # Clean the fill-in at (i, i+1); g divides y*q.
            _col_sub(d, i + 1, i, (y * q) // g)
            _col_sub(v, i + 1, i, (y * q) // g)

    dm = IntMatrix.from_rows(d, nc)
    factors = tuple(dm[i, i] for i in range(r))
    return SmithDecomposition(
        U=IntMatrix.from_rows(u, nr), D=dm, V=IntMatrix.from_rows(v, nc),
        invariant_factors=factors,
    )


def column_lattice_kernel(a: IntMatrix) -> IntMatrix:
    """Basis (as columns) of the lattice {x in ZZ^cols : a @ x = 0}."""
    s = smith_normal_form(a)
    return s.V.select_columns(range(s.rank, a.cols))


def column_lattice_basis(gens: IntMatrix) -> IntMatrix:
    """Basis (as columns) of the lattice spanned by the columns of ``gens``."""
    s = smith_normal_form(gens)
    reduced = gens @ s.V  # same column lattice; nonzero columns are independent
    return reduced.select_columns(range(s.rank))


def solve_columns(basis: IntMatrix, targets: IntMatrix) -> IntMatrix:
    """Solve basis @ Y = targets over ZZ, column by column.

    ``basis`` must have full column rank and every target column must lie in
    its column lattice; both are violations of internal invariants here, so
    failures raise rather than return.
    """
    if basis.rows != targets.rows:
        raise DimensionMismatchError("solve_columns needs matching row counts")
    s = smith_normal_form(basis)
    if s.rank != basis.cols:
        raise ValueError("basis columns are not independent")
    lifted = s.U @ targets
    rows = []
    for i in range(basis.cols):
        di = s.D[i, i]
        row = []
        for j in range(targets.cols):
            val = lifted[i, j]
            if val % di:
                raise ValueError("target column outside the lattice")
            row.append(val // di)
        rows.append(row)
    for i in range(basis.cols, basis.rows):
        for j in range(targets.cols):
            if lifted[i, j]:
                raise ValueError("target column outside the lattice")
    coeffs = IntMatrix.from_rows(rows, targets.cols)
    return s.V @ coeffs


# ---------------------------------------------------------------------------
# Groups


@dataclass(frozen=True, order=True)
class FgGroup:
    """Finitely generated abelian group in invariant-factor form.

    ``torsion`` is the ascending divisibility chain (each entry >= 2 and
    dividing the next); equality of (rank, torsion) is isomorphism.
    """

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        prev = None
        for t in self.torsion:
            if not isinstance(t, int) or t < 2:
                raise ValueError("torsion factors must be integers >= 2")
            if prev is not None and t % prev:
                raise ValueError(f"broken divisibility chain: {prev} does not divide {t}")
            prev = t

    @classmethod
    def trivial(cls) -> FgGroup:
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> FgGroup:
        return cls(rank, ())

    @classmethod
    def cyclic(cls, order: int) -> FgGroup:
        # order 0 means the infinite cyclic group, matching ZZ/0 = ZZ.
        if order == 0:
            return cls(1, ())
        if order == 1:
            return cls(0, ())
        return cls(0, (order,))

    @property
    def n_generators(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def generator_orders(self) -> tuple[int, ...]:
        """Order of each canonical generator, 0 standing for infinite."""
        return (0,) * self.rank + self.torsion

    def relation_matrix(self) -> IntMatrix:
        """Columns are the defining relations on the canonical generators."""
        n, t = self.n_generators, len(self.torsion)
        m = [[0] * t for _ in range(n)]
        for i, d in enumerate(self.torsion):
            m[self.rank + i][i] = d
        return IntMatrix.from_rows(m, t)

    def free_part(self) -> FgGroup:
        return FgGroup(self.rank, ())

    def torsion_part(self) -> FgGroup:
        return FgGroup(0, self.torsion)

    def __str__(self) -> str:
        return format_group(self)


def group_from_presentation(relations: IntMatrix, generators: int) -> FgGroup:
    """Cokernel of the relation matrix, canonicalized.

    ``relations`` has one row per generator and one column per relation;
    unit invariant factors are dropped.
    """
    if relations.rows != generators:
        raise DimensionMismatchError(
            f"presentation on {generators} generators needs {generators} rows,"
            f" got {relations.rows}"
        )
    s = smith_normal_form(relations)
    torsion = tuple(d for d in s.invariant_factors if d > 1)
    return FgGroup(generators - s.rank, torsion)


def direct_sum(g: FgGroup, h: FgGroup) -> FgGroup:
    """Canonical form of the direct sum (torsion re-merged via SNF)."""
    torsion = g.torsion + h.torsion
    merged = group_from_presentation(IntMatrix.diagonal(torsion), len(torsion))
    return FgGroup(g.rank + h.rank + merged.rank, merged.torsion)


def factorint(n: int) -> dict[int, int]:
    """Prime factorization by trial division (desk-scale inputs)."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primary_decomposition(g: FgGroup) -> tuple[int, ...]:
    """Prime-power cyclic orders of the torsion part, ascending.

    Display view only; the invariant-factor chain stays the canonical
    representation and the isomorphism test.
    """
    parts = [p**e for d in g.torsion for p, e in factorint(d).items()]
    return tuple(sorted(parts))


# ---------------------------------------------------------------------------
# Localization


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class LocalizationRing:
    """A subring of QQ given by the primes it inverts.

    No primes is ZZ itself; ``invert_all`` is QQ (full rationalization).
    """

    primes: tuple[int, ...] = ()
    invert_all: bool = False

    def __post_init__(self) -> None:
        if self.invert_all and self.primes:
            raise ValueError("invert_all rings take no explicit prime list")
        seen = set()
        for p in self.primes:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            if p in seen:
                raise ValueError(f"duplicate prime {p}")
            seen.add(p)
        object.__setattr__(self, "primes", tuple(sorted(self.primes)))

    @classmethod
    def integers(cls) -> LocalizationRing:
        return cls()

    @classmethod
    def rationals(cls) -> LocalizationRing:
        return cls(invert_all=True)

    @classmethod
    def inverting(cls, primes: Iterable[int]) -> LocalizationRing:
        return cls(primes=tuple(primes))

    @property
    def is_identity(self) -> bool:
        return not self.invert_all and not self.primes

    def combine(self, other: LocalizationRing) -> LocalizationRing:
        if self.invert_all or other.invert_all:
            return LocalizationRing.rationals()
        return LocalizationRing.inverting(set(self.primes) | set(other.primes))

    def strip(self, d: int) -> int:
        """Divide all inverted prime powers out of d (d > 0)."""
        if self.invert_all:
            return 1
        for p in self.primes:
            while d % p == 0:
                d //= p
        return d

    def __str__(self) -> str:
        if self.invert_all:
            return "ℚ"
        if not self.primes:
            return "ℤ"
        inv = ",".join(f"1/{p}" for p in self.primes)
        return f"ℤ[{inv}]"


def localize(g: FgGroup, ring: LocalizationRing) -> FgGroup:
    """Tensor with the subring: rank survives, inverted torsion dies.

    Stripping a common set of primes preserves the divisibility chain, so
    the result is already canonical after dropping factors reduced to 1.
    """
    torsion = tuple(t for t in (ring.strip(d) for d in g.torsion) if t > 1)
    return FgGroup(g.rank, torsion)


# ---------------------------------------------------------------------------
# Homomorphisms


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by an integer matrix on canonical generators.

    Column j is the image of source generator j in target coordinates
    (rows: target free generators first, then target torsion generators).

    ``ring`` is the subring of QQ the hom lives over (defaults to ZZ).
    Induced maps after localization keep integer matrices but carry their
    ring, so that integral units (e.g. 6 over QQ) contribute no torsion to
    kernels or cokernels.
    """

    source: FgGroup
    target: FgGroup
    matrix: IntMatrix
    ring: LocalizationRing = LocalizationRing()

    def __post_init__(self) -> None:
        if self.matrix.rows != self.target.n_generators or (
            self.matrix.cols != self.source.n_generators
        ):
            raise DimensionMismatchError(
                f"hom matrix must be {self.target.n_generators}x"
                f"{self.source.n_generators}, got {self.matrix.rows}x{self.matrix.cols}"
            )

    @classmethod
    def zero(
        cls, source: FgGroup, target: FgGroup, ring: LocalizationRing = LocalizationRing()
    ) -> GroupHom:
        return cls(
            source, target, IntMatrix.zeros(target.n_generators, source.n_generators), ring
        )

    @classmethod
    def identity(cls, g: FgGroup) -> GroupHom:
        return cls(g, g, IntMatrix.identity(g.n_generators))

    @classmethod
    def multiplication_by(cls, s: int, g: FgGroup) -> GroupHom:
        n = g.n_generators
        return cls(g, g, IntMatrix.diagonal([s] * n))

    def __neg__(self) -> GroupHom:
        return GroupHom(self.source, self.target, -self.matrix, self.ring)

    def compose(self, inner: GroupHom) -> GroupHom:
        """self after inner (source of self must be target of inner)."""
        if inner.target != self.source:
            raise DimensionMismatchError("composition needs matching middle group")
        return GroupHom(
            inner.source, self.target, self.matrix @ inner.matrix,
            self.ring.combine(inner.ring),
        )

    def is_zero_map(self) -> bool:
        return hom_well_defined(self) and hom_invariants(self).image.is_trivial


def hom_well_defined(h: GroupHom) -> bool:
    """Check that torsion relations of the source map into target relations."""
    src_orders = h.source.generator_orders()
    tgt_orders = h.target.generator_orders()
    for j, d in enumerate(src_orders):
        if d == 0:
            continue  # free generator, unconstrained
        for i, e in enumerate(tgt_orders):
            val = d * h.matrix[i, j]
            if e == 0:
                if val != 0:
                    return False
            elif val % e:
                return False
    return True


class HomInvariants(NamedTuple):
    kernel: FgGroup
    image: FgGroup
    cokernel: FgGroup


def hom_invariants(h: GroupHom) -> HomInvariants:
    """Kernel, image and cokernel of a well-defined hom, all canonical.

    Everything reduces to Smith normal form: the preimage of the target
    relation lattice gives the kernel and image; the cokernel is presented
    by the hom matrix alongside the target relations.  No rational
    arithmetic is involved.  Over a proper subring of QQ the integral
    answers are localized at the end, which is exact by flatness.
    """
    if not hom_well_defined(h):
        raise IllDefinedHomError(
            "matrix does not send source relations into target relations"
        )
    f = h.matrix
    r_src = h.source.relation_matrix()
    r_tgt = h.target.relation_matrix()
    m = h.source.n_generators
    n = h.target.n_generators

    cokernel = group_from_presentation(f.hstack(r_tgt), n)

    # Lattice L = {x : f x lies in the target relation lattice}; it is the
    # x-projection of the kernel of [f | r_tgt].
    paired = column_lattice_kernel(f.hstack(r_tgt))
    projected = paired.select_rows(range(m))
    basis = column_lattice_basis(projected)

    # image = source / ker = ZZ^m / L
    image = group_from_presentation(basis, m)

    # kernel = L / (source relations), presented in the basis of L.
    if basis.cols == 0:
        kernel = FgGroup.trivial()
    else:
        in_basis = solve_columns(basis, r_src)
        kernel = group_from_presentation(in_basis, basis.cols)
    if not h.ring.is_identity:
        kernel = localize(kernel, h.ring)
        image = localize(image, h.ring)
        cokernel = localize(cokernel, h.ring)
    return HomInvariants(kernel=kernel, image=image, cokernel=cokernel)


def localize_hom(h: GroupHom, ring: LocalizationRing) -> GroupHom:
    """The induced map between localized groups.

    Generators map to generators under localization (for a torsion factor d
    with stripped order d', the class of 1 generates both sides), so the
    matrix just loses the rows and columns of generators that die; surviving
    torsion rows are reduced modulo their new orders.
    """
    new_src = localize(h.source, ring)
    new_tgt = localize(h.target, ring)

    def surviving(g: FgGroup) -> list[int]:
        keep = list(range(g.rank))
        for i, d in enumerate(g.torsion):
            if ring.strip(d) > 1:
                keep.append(g.rank + i)
        return keep

    rows = surviving(h.target)
    cols = surviving(h.source)
    sub = h.matrix.select_rows(rows).select_columns(cols)
    new_orders = new_tgt.generator_orders()
    reduced = [
        [
            sub[i, j] % new_orders[i] if new_orders[i] else sub[i, j]
            for j in range(sub.cols)
        ]
        for i in range(sub.rows)
    ]
    return GroupHom(
        new_src, new_tgt, IntMatrix.from_rows(reduced, sub.cols), h.ring.combine(ring)
    )


# ---------------------------------------------------------------------------
# Names: rendering and parsing of group symbols


_Z = "ℤ"
_OPLUS = "⊕"


def format_group(g: FgGroup, free_symbol: str = _Z) -> str:
    """Canonical display name: free part first, torsion in descending order.

    Examples: ``0``, ``ℤ``, ``ℤ^2``, ``ℤ ⊕ ℤ/2``,
    ``(ℤ/2)^3``, ``ℤ/4 ⊕ ℤ/2``.  ``free_symbol`` names
    the ambient ring (e.g. ℚ after full rationalization); torsion
    factors always render as ℤ/d, which they are as groups.
    """
    parts: list[str] = []
    if g.rank == 1:
        parts.append(free_symbol)
    elif g.rank > 1:
        parts.append(f"{free_symbol}^{g.rank}")
    i = len(g.torsion) - 1
    while i >= 0:
        d = g.torsion[i]
        count = 1
        while i - count >= 0 and g.torsion[i - count] == d:
            count += 1
        parts.append(f"{_Z}/{d}" if count == 1 else f"({_Z}/{d})^{count}")
        i -= count
    return f" {_OPLUS} ".join(parts) if parts else "0"


def parse_group_name(name: str, free_symbol: str = _Z) -> FgGroup:
    """Inverse of :func:`format_group`; also accepts ASCII ``Z`` for ℤ."""
    text = name.strip()
    if text == "0":
        return FgGroup.trivial()
    free_forms = {free_symbol, free_symbol.replace(_Z, "Z"), "Z"}
    rank = 0
    torsion: list[int] = []
    for raw in text.replace(_OPLUS, "+").split("+"):
        part = raw.strip()
        if not part:
            raise ValueError(f"empty summand in {name!r}")
        head, caret, exp = part.rpartition("^")
        if caret and head.strip() and exp.isdigit() and not head.endswith("/"):
            power = int(exp)
            part = head
        else:
            power = 1
        if part.startswith("(") and part.endswith(")"):
            part = part[1:-1]
        if part in free_forms or part.replace(_Z, "Z") in free_forms:
            rank += power
            continue
        normalized = part.replace(_Z, "Z")
        if normalized.startswith("Z/") and normalized[2:].isdigit():
            torsion.extend([int(normalized[2:])] * power)
        else:
            raise ValueError(f"cannot parse summand {part!r}")
    merged = group_from_presentation(IntMatrix.diagonal(torsion), len(torsion))
    return FgGroup(rank + merged.rank, merged.torsion)


def group_sort_key(g: FgGroup) -> tuple:
    return (g.rank, len(g.torsion), g.torsion)
