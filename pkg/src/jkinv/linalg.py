"""Exact dense linear algebra over Q and over Q[λ].

Rank uses fraction-free (Bareiss) elimination on integer-scaled rows; the
polynomial-entry variant runs the same elimination over Z[λ].  Kernel bases
are read off the reduced row echelon form, which makes them canonical: the
basis vector for free column ``f`` has a 1 in position ``f``, zeros in the
other free positions, and the negated echelon entries in the pivot positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .exactmath import UniPoly, format_rational, to_rational

Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix of Fractions or of UniPoly entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries")

    @classmethod
    def from_rows(cls, data: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        data = [list(r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        for i, r in enumerate(data):
            if len(r) != cols:
                raise ValueError(f"row {i} has {len(r)} entries, expected {cols}")
        flat = tuple(x if isinstance(x, UniPoly) else to_rational(x) for r in data for x in r)
        return cls(len(data), cols, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], rows: int) -> "Matrix":
        return cls.from_rows([[c[i] for c in cols] for i in range(rows)], cols=len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def tolist(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def scale(self, c) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(x * c for x in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self.tolist(), other.tolist()
        zero = _zero_like(self.entries + other.entries)
        out = []
        for i in range(self.rows):
            ai = a[i]
            for j in range(other.cols):
                s = zero
                for k in range(self.cols):
                    if ai[k] and b[k][j]:
                        s = s + ai[k] * b[k][j]
                out.append(s)
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        nz = [(j, x) for j, x in enumerate(v) if x]
        e, c = self.entries, self.cols
        out = []
        for i in range(self.rows):
            base = i * c
            s = _ZERO
            for j, x in nz:
                y = e[base + j]
                if y:
                    s += y * x
            out.append(s)
        return tuple(out)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, data, *, rows: int | None = None, cols: int | None = None) -> "Matrix":
        if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
            raise ValueError("a matrix must be a JSON array of arrays")
        if cols is None:
            cols = len(data[0]) if data else 0
        m = cls.from_rows(data, cols=cols)
        if rows is not None and m.rows != rows:
            raise ValueError(f"expected {rows} rows, got {m.rows}")
        return m


def _zero_like(entries):
    for x in entries:
        if isinstance(x, UniPoly):
            return UniPoly()
    return Fraction(0)


def block_diag(blocks: Iterable[Matrix]) -> Matrix:
    blocks = list(blocks)
    m = sum(b.rows for b in blocks)
    n = sum(b.cols for b in blocks)
    out = [[Fraction(0)] * n for _ in range(m)]
    r = c = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r + i][c + j] = b[i, j]
        r += b.rows
        c += b.cols
    return Matrix(m, n, tuple(x for row in out for x in row))


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise ValueError("column counts differ")
    return Matrix(sum(b.rows for b in blocks), cols, tuple(x for b in blocks for x in b.entries))


def pencil_matrix(A: Matrix, B: Matrix) -> Matrix:
    """The polynomial matrix ``A + λB``."""
    if A.shape != B.shape:
        raise ValueError(f"pencil shapes differ: {A.shape} vs {B.shape}")
    return Matrix(A.rows, A.cols, tuple(UniPoly._raw([a, b]) for a, b in zip(A.entries, B.entries)))


# ---------------------------------------------------------------------------
# rational matrices
# ---------------------------------------------------------------------------


def _integer_rows(M: Matrix) -> list[list[int]]:
    out = []
    for i in range(M.rows):
        row = M.row(i)
        den = reduce(lcm, (x.denominator for x in row), 1)
        out.append([x.numerator * (den // x.denominator) for x in row])
    return out


def _bareiss(a: list[list[int]]) -> list[int]:
    """Fraction-free row echelon in place; returns the pivot columns."""
    m = len(a)
    n = len(a[0]) if m else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pr = a[r]
        pv = pr[c]
        tail = pr[c:]
        for i in range(r + 1, m):
            ri = a[i]
            f = ri[c]
            if f:
                a[i] = ri[:c] + [(pv * x - f * y) // prev for x, y in zip(ri[c:], tail)]
            elif prev != pv:
                a[i] = ri[:c] + [(pv * x) // prev for x in ri[c:]]
        prev = pv
        pivots.append(c)
        r += 1
    return pivots


def rank(M: Matrix) -> int:
    """Exact rank of a rational matrix."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(_bareiss(_integer_rows(M)))


def rref(M: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    if M.rows == 0 or M.cols == 0:
        return [], []
    a = _integer_rows(M)
    pivots = _bareiss(a)
    a = a[:len(pivots)]
    # integer back-elimination, keeping each row primitive
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        ri = a[i]
        pv = ri[c]
        for k in range(i):
            rk = a[k]
            f = rk[c]
            if f:
                g = gcd(pv, f)
                u, w = pv // g, f // g
                row = [u * x - w * y for x, y in zip(rk, ri)]
                a[k] = _primitive_row(row)
    rows = []
    for i, c in enumerate(pivots):
        pv = a[i][c]
        rows.append([Fraction(x, pv) if x else _ZERO for x in a[i]])
    return rows, pivots


def _primitive_row(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    return [x // g for x in row] if g > 1 else row


def kernel_basis(M: Matrix) -> list[Vector]:
    """Canonical basis of the right kernel, one vector per free column."""
    rows, pivots = rref(M)
    return _kernel_from_rref(rows, pivots, M.cols)


def _kernel_from_rref(rows, pivots, n: int) -> list[Vector]:
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in zip(rows, pivots):
            v[c] = -r[f]
        basis.append(tuple(v))
    return basis


def left_kernel_basis(M: Matrix) -> list[Vector]:
    return kernel_basis(M.T)


def solve(M: Matrix, b: Sequence) -> Vector | None:
    """A particular solution of ``M v = b`` (free variables zero), or None."""
    aug = Matrix.from_rows([list(M.row(i)) + [b[i]] for i in range(M.rows)], cols=M.cols + 1)
    rows, pivots = rref(aug)
    if pivots and pivots[-1] == M.cols:
        return None
    v = [Fraction(0)] * M.cols
    for r, c in zip(rows, pivots):
        v[c] = r[-1]
    return tuple(v)


def span_basis(vectors: Sequence[Sequence], dim: int) -> list[Vector]:
    """Canonical basis (nonzero rref rows) of the span of ``vectors``."""
    if not vectors:
        return []
    rows, _ = rref(Matrix.from_rows([list(v) for v in vectors], cols=dim))
    return [tuple(r) for r in rows]


def same_span(U: Sequence[Sequence], W: Sequence[Sequence], dim: int) -> bool:
    return span_basis(U, dim) == span_basis(W, dim)


def determinant(M: Matrix) -> Fraction:
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    if M.rows == 0:
        return Fraction(1)
    a = [list(M.row(i)) for i in range(M.rows)]
    n = M.rows
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        pv = a[c][c]
        det *= pv
        for i in range(c + 1, n):
            f = a[i][c] / pv
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


# ---------------------------------------------------------------------------
# polynomial matrices
# ---------------------------------------------------------------------------


def _zpoly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _zpoly_sub(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a = a + [0] * (len(b) - len(a))
    out = list(a)
    for i, y in enumerate(b):
        out[i] -= y
    while out and not out[-1]:
        out.pop()
    return out


def _zpoly_exact_div(a: list[int], b: list[int]) -> list[int]:
    if not a:
        return []
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    quo = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db]
        if c:
            q, r = divmod(c, lead)
            if r:
                raise ArithmeticError("inexact division in Z[λ]")
            quo[k] = q
            for j in range(db + 1):
                rem[k + j] -= q * b[j]
    if any(rem):
        raise ArithmeticError("inexact division in Z[λ]")
    while quo and not quo[-1]:
        quo.pop()
    return quo


def _integer_poly_rows(P: Matrix) -> list[list[list[int]]]:
    out = []
    for i in range(P.rows):
        row = P.row(i)
        den = reduce(lcm, (c.denominator for p in row for c in p.coeffs), 1)
        out.append([[c.numerator * (den // c.denominator) for c in p.coeffs] for p in row])
    return out


def rank_over_function_field(P: Matrix) -> int:
    """Rank of a UniPoly matrix over Q(λ), by fraction-free elimination in Z[λ]."""
    return poly_bareiss(P)[0]


def smith_normal_form(P: Matrix) -> list[UniPoly]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` (monic) of a UniPoly matrix.

    Elimination by division with remainder; the pivot is always a nonzero
    entry of minimal degree (first in row-major order on ties).
    """
    m, n = P.rows, P.cols
    a = [list(P.row(i)) for i in range(m)]
    factors: list[UniPoly] = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                e = a[i][j]
                if e and (best is None or e.degree < best[0]):
                    best = (e.degree, i, j)
                    if e.degree == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, i0, j0 = best
        _swap_to(a, t, i0, j0)
        while True:
            if _clear_column(a, t) or _clear_row(a, t):
                continue
            piv = a[t][t]
            if piv.degree == 0:
                break
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] and not piv.divides(a[i][j])),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        factors.append(a[t][t].monic())
        t += 1
    return factors


def _swap_to(a, t, i, j):
    a[t], a[i] = a[i], a[t]
    if j != t:
        for row in a:
            row[t], row[j] = row[j], row[t]


def _clear_column(a, t) -> bool:
    """Reduce column t below the pivot; True if a smaller pivot was swapped in."""
    piv = a[t][t]
    prow = a[t]
    n = len(prow)
    for i in range(t + 1, len(a)):
        e = a[i][t]
        if not e:
            continue
        q, _ = divmod(e, piv)
        ri = a[i]
        a[i] = ri[:t] + [ri[j] - q * prow[j] if prow[j] else ri[j] for j in range(t, n)]
    cand = [(a[i][t].degree, i) for i in range(t + 1, len(a)) if a[i][t]]
    if cand:
        _, i = min(cand)
        a[t], a[i] = a[i], a[t]
        return True
    return False


def _clear_row(a, t) -> bool:
    piv = a[t][t]
    n = len(a[t])
    for j in range(t + 1, n):
        e = a[t][j]
        if not e:
            continue
        q, _ = divmod(e, piv)
        for i in range(t, len(a)):
            if a[i][t]:
                a[i][j] = a[i][j] - q * a[i][t]
    cand = [(a[t][j].degree, j) for j in range(t + 1, n) if a[t][j]]
    if cand:
        _, j = min(cand)
        for row in a:
            row[t], row[j] = row[j], row[t]
        return True
    return False


def poly_bareiss(P: Matrix) -> tuple[int, UniPoly]:
    """Rank over Q(λ) and one nonzero maximal minor (the last Bareiss pivot).

    The minor is returned up to a nonzero rational factor; it is ``1`` when the
    rank is 0.
    """
    if P.rows == 0 or P.cols == 0:
        return 0, UniPoly.constant(1)
    a = _integer_poly_rows(P)
    m, n = P.rows, P.cols
    prev = [1]
    r = 0
    for c in range(n):
        if r == m:
            break
        cand = [i for i in range(r, m) if a[i][c]]
        if not cand:
            continue
        p = min(cand, key=lambda i: len(a[i][c]))
        a[r], a[p] = a[p], a[r]
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, m):
            ri = a[i]
            f = ri[c]
            new = ri[:c]
            for j in range(c, n):
                t = _zpoly_mul(pv, ri[j])
                if f and pr[j]:
                    t = _zpoly_sub(t, _zpoly_mul(f, pr[j]))
                new.append(_zpoly_exact_div(t, prev))
            a[i] = new
        prev = pv
        r += 1
    return r, UniPoly(prev)


def kron(A: Matrix, C: Matrix) -> Matrix:
    """Kronecker product with ``A``'s index outer."""
    rows = []
    for a in range(A.rows):
        for s in range(C.rows):
            rows.append([A[a, b] * C[s, t] for b in range(A.cols) for t in range(C.cols)])
    return Matrix.from_rows(rows, cols=A.cols * C.cols)


class LinearSolver:
    """Factorizes ``M`` once; answers ``M v = b`` and exposes ``Ker M``, ``Ker Mᵀ``."""

    def __init__(self, M: Matrix):
        self.M = M
        m, n = M.rows, M.cols
        aug = Matrix.from_rows(
            [list(M.row(i)) + [Fraction(int(i == k)) for k in range(m)] for i in range(m)], cols=n + m
        )
        rows, pivots = rref(aug)
        self._rows = [r for r, c in zip(rows, pivots) if c < n]
        self._pivots = [c for c in pivots if c < n]
        # rows whose pivot lies in the identity block are exactly Ker Mᵀ
        self.left_kernel = [tuple(r[n:]) for r, c in zip(rows, pivots) if c >= n]
        self.kernel = _kernel_from_rref(self._rows, self._pivots, n)
        self.rank = len(self._pivots)

    def solve(self, b: Sequence) -> Vector | None:
        m, n = self.M.rows, self.M.cols
        for y in self.left_kernel:
            if sum((yi * bi for yi, bi in zip(y, b) if yi and bi), Fraction(0)):
                return None
        v = [Fraction(0)] * n
        for r, c in zip(self._rows, self._pivots):
            v[c] = sum((r[n + k] * b[k] for k in range(m) if r[n + k] and b[k]), Fraction(0))
        return tuple(v)
