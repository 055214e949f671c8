"""Dense matrices of arbitrary-precision integers."""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = ["IntMatrix", "berkowitz_charpoly"]


class IntMatrix:
    """Immutable row-major integer matrix.

    Entries are Python ints, so nothing ever overflows.  Algorithms that
    need to mutate work on ``tolist()`` copies.
    """

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Iterable[Iterable[int]], cols: int | None = None):
        e = tuple(tuple(int(x) for x in row) for row in entries)
        if cols is None:
            cols = len(e[0]) if e else 0
        if any(len(row) != cols for row in e):
            raise ValueError("ragged matrix")
        self.rows = len(e)
        self.cols = cols
        self._e = e

    # construction helpers

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        if not columns:
            return cls.zeros(rows or 0, 0)
        n = len(columns[0])
        return cls([[c[i] for c in columns] for i in range(n)], len(columns))

    @classmethod
    def block_diag(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b._e):
                out[r0 + i][c0:c0 + b.cols] = row
            r0 += b.rows
            c0 += b.cols
        return cls(out, cols)

    @classmethod
    def hstack(cls, mats: Sequence["IntMatrix"]) -> "IntMatrix":
        mats = [m for m in mats]
        if not mats:
            raise ValueError("nothing to stack")
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise ValueError("row mismatch in hstack")
        cols = sum(m.cols for m in mats)
        return cls([sum((m._e[i] for m in mats), ()) for i in range(rows)], cols)

    @classmethod
    def vstack(cls, mats: Sequence["IntMatrix"]) -> "IntMatrix":
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("column mismatch in vstack")
        return cls([row for m in mats for row in m._e], cols)

    # access

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._e[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._e)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._e]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(zip(*self._e), self.rows) if self.rows else IntMatrix.zeros(self.cols, 0)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[self._e[i][j] for j in cols] for i in rows], len(cols))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._e for x in row)

    # arithmetic

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.shape == other.shape
            and self._e == other._e
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._e))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)], self.cols
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)], self.cols
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self._e], self.cols)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * a for a in r] for r in self._e], self.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ot = list(zip(*other._e)) if other.rows else [()] * other.cols
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in ot] for r in self._e], other.cols
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self._e)

    def __pow__(self, k: int) -> "IntMatrix":
        if not self.is_square() or k < 0:
            raise ValueError("only non-negative powers of square matrices")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def mod(self, m: int) -> "IntMatrix":
        return IntMatrix([[a % m for a in r] for r in self._e], self.cols)

    # invariants

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.tolist()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            akk = a[k][k]
            for i in range(k + 1, n):
                aik = a[i][k]
                row_i, row_k = a[i], a[k]
                for j in range(k + 1, n):
                    row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            prev = akk
        return sign * a[n - 1][n - 1]

    def rank(self) -> int:
        """Rank over Q (fraction-free elimination)."""
        a = self.tolist()
        rank = 0
        rows, cols = self.rows, self.cols
        for c in range(cols):
            piv = next((i for i in range(rank, rows) if a[i][c]), None)
            if piv is None:
                continue
            a[rank], a[piv] = a[piv], a[rank]
            p = a[rank]
            for i in range(rank + 1, rows):
                if a[i][c]:
                    f = a[i][c]
                    a[i] = [x * p[c] - f * y for x, y in zip(a[i], p)]
            rank += 1
            if rank == rows:
                break
        return rank

    def charpoly(self) -> list[int]:
        """Characteristic polynomial ``det(x*I - A)``, ascending coefficients."""
        return berkowitz_charpoly(self.tolist())

    # serialisation

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(x) for x in r] for r in self._e],
        }

    @classmethod
    def from_json(cls, data) -> "IntMatrix":
        try:
            rows, cols, entries = int(data["rows"]), int(data["cols"]), data["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed matrix JSON: {exc}") from None
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("matrix JSON dimensions do not match entries")
        parsed = []
        for r in entries:
            row = []
            for x in r:
                if isinstance(x, bool) or not isinstance(x, (str, int)):
                    raise ValueError(f"matrix entry {x!r} is not an integer")
                row.append(int(x))
            parsed.append(row)
        return cls(parsed, cols)

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"


def berkowitz_charpoly(a: list[list[int]], modulus: int | None = None) -> list[int]:
    """Division-free characteristic polynomial, ascending coefficients.

    Works over any commutative ring; with ``modulus`` the arithmetic is done
    in ``Z/modulus``.
    """
    n = len(a)
    if n == 0:
        return [1]

    def red(x):
        return x % modulus if modulus else x

    # Berkowitz: build the Toeplitz product bottom-up.
    # poly is stored descending: [1, c1, ..., ck] for det(xI - A_k) of the
    # trailing principal k x k block.
    poly = [1, red(-a[n - 1][n - 1])]
    for k in range(n - 2, -1, -1):
        m = n - k - 1  # size of the block below/right of a[k][k]
        r = a[k][k + 1:]  # row, length m
        c = [a[i][k] for i in range(k + 1, n)]  # column, length m
        sub = [row[k + 1:] for row in a[k + 1:]]
        # q_0 = 1, q_1 = -a_kk, q_{j+2} = -r A^j c
        q = [1, red(-a[k][k])]
        vec = c
        for _ in range(m):
            q.append(red(-sum(x * y for x, y in zip(r, vec))))
            vec = [red(sum(x * y for x, y in zip(row, vec))) for row in sub]
        # new poly = Toeplitz(q) * poly  (lower triangular, (m+2) x (m+1))
        new = []
        for i in range(m + 2):
            s = 0
            for j in range(max(0, i - len(q) + 1), min(i, m) + 1):
                s += q[i - j] * poly[j]
            new.append(red(s))
        poly = new
    return poly[::-1]
