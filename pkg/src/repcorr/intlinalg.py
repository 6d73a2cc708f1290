"""Exact integer matrix kernel: Smith normal form, cokernel/kernel data.

Everything here runs on arbitrary-precision Python integers. Intermediate
entries in a Smith reduction can blow up well past machine words, so there is
deliberately no fixed-width fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import SpecError, VerificationError

__all__ = [
    "IntMatrix",
    "KGroups",
    "smith_normal_form",
    "coker_ker",
    "parse_matrix",
    "format_matrix",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major. Zero rows or columns are legal."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows: list[list[int]] | tuple) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise SpecError("ragged matrix rows")
        return IntMatrix(len(data), ncols, data)

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(
            n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        )

    def __getitem__(self, pos: tuple[int, int]) -> int:
        i, j = pos
        return self.entries[i][j]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise SpecError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                row.append(sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)))
            out.append(tuple(row))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return self.matmul(other)

    def delete_columns(self, drop: set[int]) -> "IntMatrix":
        keep = [j for j in range(self.cols) if j not in drop]
        return IntMatrix(
            self.rows,
            len(keep),
            tuple(tuple(row[j] for j in keep) for row in self.entries),
        )

    def det(self) -> int:
        """Exact determinant via fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise SpecError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(row) for row in self.entries]
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


@dataclass(frozen=True)
class KGroups:
    """Finitely generated abelian group data for a coker/ker pair.

    k0 = Z^k0_free_rank + sum of Z/d for d in k0_torsion (divisibility order),
    k1 = Z^k1_rank.
    """

    k0_free_rank: int
    k0_torsion: tuple[int, ...]
    k1_rank: int

    def k0_pretty(self) -> str:
        return _pretty_group(self.k0_free_rank, self.k0_torsion)

    def k1_pretty(self) -> str:
        return _pretty_group(self.k1_rank, ())


def _pretty_group(free: int, torsion: tuple[int, ...]) -> str:
    parts = []
    if free == 1:
        parts.append("Z")
    elif free > 1:
        parts.append(f"Z^{free}")
    parts.extend(f"Z/{d}" for d in torsion)
    return " + ".join(parts) if parts else "0"


def parse_matrix(text: str) -> IntMatrix:
    """Parse the textual matrix form: rows separated by ';', entries by spaces."""
    rows = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            rows.append([int(tok) for tok in chunk.split()])
        except ValueError as exc:
            raise SpecError(f"bad matrix entry in {chunk!r}") from exc
    if not rows:
        raise SpecError("empty matrix text")
    return IntMatrix.from_rows(rows)


def format_matrix(a: IntMatrix) -> str:
    return "; ".join(" ".join(str(x) for x in row) for row in a.entries)


def _find_pivot(m: list[list[int]], start: int) -> tuple[int, int] | None:
    # Smallest nonzero absolute value; ties broken by lowest row, then column.
    best = None
    best_val = None
    for i in range(start, len(m)):
        for j in range(start, len(m[0]) if m else 0):
            v = abs(m[i][j])
            if v != 0 and (best_val is None or v < best_val):
                best, best_val = (i, j), v
    return best


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (u, s, v) with u*a*v = s, u and v unimodular, s diagonal with
    each diagonal entry nonnegative and dividing the next.

    The reduction is fully deterministic: the pivot is always the entry of
    smallest nonzero absolute value (lowest row, then column, on ties).
    """
    nr, nc = a.rows, a.cols
    s = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_op(i: int, k: int, q: int) -> None:
        # row i -= q * row k, mirrored into u
        for j in range(nc):
            s[i][j] -= q * s[k][j]
        for j in range(nr):
            u[i][j] -= q * u[k][j]

    def col_op(j: int, k: int, q: int) -> None:
        # col j -= q * col k, mirrored into v
        for i in range(nr):
            s[i][j] -= q * s[i][k]
        for i in range(nc):
            v[i][j] -= q * v[i][k]

    def swap_rows(i: int, k: int) -> None:
        s[i], s[k] = s[k], s[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        for row in s:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    t = 0
    limit = min(nr, nc)
    while t < limit:
        pos = _find_pivot(s, t)
        if pos is None:
            break
        while True:
            i, j = pos
            if (i, j) != (t, t):
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
            if s[t][t] < 0:
                for j2 in range(nc):
                    s[t][j2] = -s[t][j2]
                for j2 in range(nr):
                    u[t][j2] = -u[t][j2]
            p = s[t][t]
            dirty = False
            for i2 in range(t + 1, nr):
                if s[i2][t] != 0:
                    row_op(i2, t, s[i2][t] // p)
                    if s[i2][t] != 0:
                        dirty = True
            for j2 in range(t + 1, nc):
                if s[t][j2] != 0:
                    col_op(j2, t, s[t][j2] // p)
                    if s[t][j2] != 0:
                        dirty = True
            if not dirty:
                # Pivot must divide everything below and to the right.
                offender = None
                for i2 in range(t + 1, nr):
                    for j2 in range(t + 1, nc):
                        if s[i2][j2] % p != 0:
                            offender = i2
                            break
                    if offender is not None:
                        break
                if offender is None:
                    break
                row_op(t, offender, -1)  # pull the offending row up, re-clear
            pos = _find_pivot(s, t)
        t += 1

    um = IntMatrix.from_rows(u)
    sm = IntMatrix.from_rows(s) if nr else IntMatrix.zeros(0, nc)
    vm = IntMatrix.from_rows(v) if nc else IntMatrix.zeros(nc, nc)
    if nr == 0:
        sm = IntMatrix.zeros(0, nc)
    _check_snf(a, um, sm, vm)
    return um, sm, vm


def _check_snf(a: IntMatrix, u: IntMatrix, s: IntMatrix, v: IntMatrix) -> None:
    if u.matmul(a).matmul(v).entries != s.entries:
        raise VerificationError("SNF check failed: u*a*v != s")
    if a.rows and u.det() not in (1, -1):
        raise VerificationError("SNF check failed: u not unimodular")
    if a.cols and v.det() not in (1, -1):
        raise VerificationError("SNF check failed: v not unimodular")
    diag = [s.entries[i][i] for i in range(min(s.rows, s.cols))]
    for i in range(s.rows):
        for j in range(s.cols):
            if i != j and s.entries[i][j] != 0:
                raise VerificationError("SNF check failed: s not diagonal")
    for d1, d2 in zip(diag, diag[1:]):
        if d1 < 0 or d2 < 0 or (d1 == 0 and d2 != 0) or (d1 != 0 and d2 % d1 != 0):
            raise VerificationError("SNF check failed: divisibility chain broken")


def coker_ker(a: IntMatrix) -> KGroups:
    """K-groups of the integer map a: Z^cols -> Z^rows.

    coker = Z^rows / im(a) described by free rank plus invariant factors > 1,
    ker rank = cols - rank(a).
    """
    _, s, _ = smith_normal_form(a)
    diag = [s.entries[i][i] for i in range(min(s.rows, s.cols))]
    rank = sum(1 for d in diag if d != 0)
    torsion = tuple(d for d in diag if d > 1)
    return KGroups(
        k0_free_rank=a.rows - rank,
        k0_torsion=torsion,
        k1_rank=a.cols - rank,
    )
