"""Exact dense integer matrices and classical-group predicates."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    InvalidInput,
    NotSquare,
    NotSymmetric,
    NotUnimodular,
    PreconditionViolated,
)


class IntMatrix:
    """Immutable row-major integer matrix.

    Every operation returns a fresh matrix; nothing is modified in place.
    """

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]]):
        try:
            if isinstance(rows, (str, bytes, dict)):
                raise TypeError
            rows = list(rows)
            if any(isinstance(r, (str, bytes, dict)) for r in rows):
                raise TypeError
            data = tuple(tuple(_as_int(x) for x in row) for row in rows)
        except TypeError:
            raise InvalidInput("a matrix is a list of rows of integers") from None
        if not data or not data[0]:
            raise InvalidInput("a matrix needs at least one row and one column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise InvalidInput("ragged matrix rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "IntMatrix":
        return cls([[0] * c for _ in range(r)])

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["IntMatrix"]]) -> "IntMatrix":
        rows = []
        for band in blocks:
            height = band[0].nrows
            if any(b.nrows != height for b in band):
                raise DimensionMismatch("blocks in a band must share a height")
            for i in range(height):
                rows.append([x for b in band for x in b._rows[i]])
        return cls(rows)

    @classmethod
    def diag(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._rows[i][j]
        return self._rows[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return mat_mul(self, other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-x for x in r] for r in self._rows])

    @property
    def T(self) -> "IntMatrix":
        return mat_transpose(self)

    def mod(self, n: int) -> "IntMatrix":
        return mat_mod(self, n)

    def det(self) -> int:
        return det(self)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "IntMatrix":
        return IntMatrix([r[c0:c1] for r in self._rows[r0:r1]])

    def max_abs(self) -> int:
        return max(abs(x) for r in self._rows for x in r)

    def to_json(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[str(x) for x in r] for r in self._rows],
        }

    @classmethod
    def from_json(cls, data) -> "IntMatrix":
        """Accepts the matrix JSON object or a bare nested list."""
        if isinstance(data, IntMatrix):
            return data
        if isinstance(data, dict):
            try:
                m = cls(data["entries"])
            except KeyError as exc:
                raise InvalidInput("matrix JSON needs an 'entries' field") from exc
            if "rows" in data and int(data["rows"]) != m.nrows:
                raise InvalidInput("matrix 'rows' does not match its entries")
            if "cols" in data and int(data["cols"]) != m.ncols:
                raise InvalidInput("matrix 'cols' does not match its entries")
            return m
        if isinstance(data, list):
            return cls(data)
        raise InvalidInput(f"cannot read a matrix from {type(data).__name__}")


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise InvalidInput("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip())
        except ValueError as exc:
            raise InvalidInput(f"not a decimal integer: {x!r}") from exc
    raise InvalidInput(f"not an integer: {x!r}")


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    bt = list(zip(*b.rows()))
    return IntMatrix([[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a.rows()])


def mat_transpose(m: IntMatrix) -> IntMatrix:
    return IntMatrix(list(zip(*m.rows())))


def mat_mod(m: IntMatrix, n: int) -> IntMatrix:
    """Entrywise least nonnegative residues; ``n == 0`` leaves ``m`` unchanged."""
    if n < 0:
        raise PreconditionViolated("modulus must be nonnegative")
    if n == 0:
        return m
    return IntMatrix([[x % n for x in r] for r in m.rows()])


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise NotSquare(f"determinant of a {m.shape} matrix")
    a = m.tolist()
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def adjugate(m: IntMatrix) -> IntMatrix:
    if not m.is_square:
        raise NotSquare(f"adjugate of a {m.shape} matrix")
    n = m.nrows
    if n == 1:
        return IntMatrix([[1]])
    rows = m.tolist()
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            cof[i][j] = (-1) ** (i + j) * det(IntMatrix(minor))
    return IntMatrix(cof).T


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    d = det(m)
    if d not in (1, -1):
        raise NotUnimodular(f"determinant {d} is not a unit")
    if m.nrows <= 6:
        adj = adjugate(m)
        return adj if d == 1 else -adj
    return _inverse_by_elimination(m)


def _inverse_by_elimination(m: IntMatrix) -> IntMatrix:
    n = m.nrows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(m.rows())]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    out = [[x for x in r[n:]] for r in a]
    if any(x.denominator != 1 for r in out for x in r):
        raise NotUnimodular("inverse is not integral")
    return IntMatrix([[int(x) for x in r] for r in out])


# -- symplectic and special linear groups -----------------------------------


@dataclass(frozen=True)
class SymplecticForm:
    """The standard form ``J = [[0, I], [-I, 0]]`` of half-dimension ``k``."""

    k: int

    def matrix(self) -> IntMatrix:
        return symplectic_form(self.k)


def symplectic_form(k: int) -> IntMatrix:
    n = 2 * k
    rows = [[0] * n for _ in range(n)]
    for i in range(k):
        rows[i][k + i] = 1
        rows[k + i][i] = -1
    return IntMatrix(rows)


def _congruent(a: IntMatrix, b: IntMatrix, n: int) -> bool:
    if n == 0:
        return a == b
    return all((x - y) % n == 0 for ra, rb in zip(a.rows(), b.rows()) for x, y in zip(ra, rb))


def is_symplectic(m: IntMatrix, n: int = 0) -> bool:
    """``m^T J m = J`` entrywise mod ``n``; ``n == 0`` means exactly."""
    if not m.is_square or m.nrows % 2:
        raise DimensionMismatch(f"a symplectic matrix is 2k x 2k, got {m.shape}")
    j = symplectic_form(m.nrows // 2)
    return _congruent(m.T @ j @ m, j, n)


def is_sl_mod(m: IntMatrix, n: int = 0) -> bool:
    """``det(m) = 1`` mod ``n``; ``n == 0`` means exactly 1."""
    d = det(m)
    if n == 0:
        return d == 1
    return (d - 1) % n == 0


def congruent_mod(a: IntMatrix, b: IntMatrix, n: int) -> bool:
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    return _congruent(a, b, n)


def is_symmetric(m: IntMatrix) -> bool:
    return m.is_square and m == m.T


def embed_sl_pair_block(u: IntMatrix) -> IntMatrix:
    """``[[U, 0], [0, (U^T)^{-1}]]`` for ``U`` in SL_k(Z)."""
    if not u.is_square:
        raise NotSquare("U must be square")
    if det(u) != 1:
        raise NotUnimodular("U must have determinant exactly 1")
    k = u.nrows
    z = IntMatrix.zeros(k, k)
    return IntMatrix.from_blocks([[u, z], [z, inverse_unimodular(u.T)]])


def embed_gl_pair_block(u: IntMatrix) -> IntMatrix:
    """Same block shape for any ``U`` with determinant +-1 (still symplectic)."""
    k = u.nrows
    z = IntMatrix.zeros(k, k)
    return IntMatrix.from_blocks([[u, z], [z, inverse_unimodular(u.T)]])


def embed_symmetric_shear(s: IntMatrix, upper: bool = True) -> IntMatrix:
    """``[[I, S], [0, I]]`` (upper) or ``[[I, 0], [S, I]]`` for symmetric ``S``."""
    if not is_symmetric(s):
        raise NotSymmetric("shear block must be symmetric")
    k = s.nrows
    i, z = IntMatrix.identity(k), IntMatrix.zeros(k, k)
    if upper:
        return IntMatrix.from_blocks([[i, s], [z, i]])
    return IntMatrix.from_blocks([[i, z], [s, i]])


def permutation_matrix(perm: Sequence[int]) -> IntMatrix:
    """``P`` with ``P e_j = e_{perm[j]}`` for a 0-based permutation."""
    k = len(perm)
    if sorted(perm) != list(range(k)):
        raise PreconditionViolated(f"{list(perm)} is not a permutation of 0..{k - 1}")
    rows = [[0] * k for _ in range(k)]
    for j, i in enumerate(perm):
        rows[i][j] = 1
    return IntMatrix(rows)


def embed_sp_permutation(perm: Sequence[int], flavor: str = "diag") -> IntMatrix:
    """``[[P, 0], [0, P]]`` (diag) or ``[[0, P], [-P, 0]]`` (off_diag)."""
    p = permutation_matrix(perm)
    k = p.nrows
    z = IntMatrix.zeros(k, k)
    if flavor == "diag":
        return IntMatrix.from_blocks([[p, z], [z, p]])
    if flavor == "off_diag":
        return IntMatrix.from_blocks([[z, p], [-p, z]])
    raise PreconditionViolated(f"unknown flavor {flavor!r}")


def symplectic_inverse(m: IntMatrix) -> IntMatrix:
    """Inverse of an exactly symplectic matrix: ``-J m^T J``."""
    j = symplectic_form(m.nrows // 2)
    return -(j @ m.T @ j)


# -- elementary operations ----------------------------------------------------

_KINDS = ("add_multiple_of_column", "add_multiple_of_row", "swap_with_sign", "scale_pair")


@dataclass(frozen=True)
class ElementaryOp:
    """A determinant-one elementary transformation.

    ``add_multiple_of_column(i, j, c)``: column ``j += c * column i`` (right
    multiplication by ``I + c E_ij``).
    ``add_multiple_of_row(i, j, c)``: row ``j += c * row i`` (left
    multiplication by ``I + c E_ji``).
    ``swap_with_sign(i, j)``: right multiplication by the rotation taking
    column ``i`` to column ``j`` and ``-column j`` to column ``i``.
    ``scale_pair(i, j, c)``: ``c`` in ``{1, -1}`` placed at ``(i, i)`` and
    ``(j, j)``.
    """

    kind: str
    i: int
    j: int
    coefficient: int = 1

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise PreconditionViolated(f"unknown elementary op {self.kind!r}")
        if self.i == self.j:
            raise PreconditionViolated("elementary op indices must differ")
        if self.kind == "scale_pair" and self.coefficient not in (1, -1):
            raise PreconditionViolated("scale_pair needs a coefficient of +-1")

    @property
    def is_row_op(self) -> bool:
        return self.kind == "add_multiple_of_row"

    def matrix(self, size: int) -> IntMatrix:
        rows = [[int(a == b) for b in range(size)] for a in range(size)]
        i, j, c = self.i, self.j, self.coefficient
        if self.kind == "add_multiple_of_column":
            rows[i][j] += c
        elif self.kind == "add_multiple_of_row":
            rows[j][i] += c
        elif self.kind == "swap_with_sign":
            rows[i][i] = rows[j][j] = 0
            rows[i][j] = 1
            rows[j][i] = -1
        else:
            rows[i][i] = rows[j][j] = c
        return IntMatrix(rows)

    def inverse(self) -> "ElementaryOp":
        if self.kind in ("add_multiple_of_column", "add_multiple_of_row"):
            return ElementaryOp(self.kind, self.i, self.j, -self.coefficient)
        if self.kind == "swap_with_sign":
            return ElementaryOp(self.kind, self.j, self.i)
        return self

    def apply(self, m: IntMatrix) -> IntMatrix:
        """Left-multiply for row ops, right-multiply otherwise."""
        if self.is_row_op:
            return self.matrix(m.nrows) @ m
        return m @ self.matrix(m.ncols)

    def apply_to_row(self, v: Sequence[int]) -> list[int]:
        """Right action on a row vector (column ops only)."""
        if self.is_row_op:
            raise PreconditionViolated("row operations do not act on the right")
        v = list(v)
        i, j, c = self.i, self.j, self.coefficient
        if self.kind == "add_multiple_of_column":
            v[j] += c * v[i]
        elif self.kind == "swap_with_sign":
            v[i], v[j] = -v[j], v[i]
        else:
            v[i] *= c
            v[j] *= c
        return v
