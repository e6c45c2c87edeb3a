"""Algebraic type of a pencil ``A + λB`` of linear maps ``U -> V``.

The pencil invariants are computed without reducing to canonical form:

* rank ``r`` by fraction-free elimination over Z[λ];
* minimal column indices from the kernel dimensions ``d_k`` of the stacked
  coefficient matrices ``S_k`` (polynomial solutions of degree ``<= k``);
  minimal row indices from the transposed pencil;
* elementary divisors per Q-irreducible factor ``π`` from the dimensions of
  truncated solution spaces of the pencil lifted to ``Q[λ]/π^k``.

Eigenvalue convention: an eigenvalue is a ``λ₀`` with ``rk(A - λ₀B) < r``;
``μ`` stands for the infinite eigenvalue (``rk B < r``).  Jordan factors are
binary forms in ``(λ, μ)`` whose roots ``(λ₀ : 1)`` are these eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .exactmath import BinaryForm, UniPoly, factor_uni, uni_gcd
from .linalg import (
    LinearSolver,
    Matrix,
    block_diag,
    kernel_basis,
    kron,
    pencil_matrix,
    poly_bareiss,
    rank,
    smith_normal_form,
    span_basis,
)


class PencilError(ValueError):
    pass


class InternalConsistencyError(AssertionError):
    """An invariant identity failed: an implementation bug, never bad input."""


@dataclass(frozen=True)
class Pencil:
    A: Matrix
    B: Matrix

    def __post_init__(self):
        if self.A.shape != self.B.shape:
            raise PencilError(f"A is {self.A.rows}x{self.A.cols} but B is {self.B.rows}x{self.B.cols}")

    @classmethod
    def from_rows(cls, A, B, shape: tuple[int, int] | None = None) -> "Pencil":
        cols = shape[1] if shape else None
        return cls(Matrix.from_rows(A, cols=cols), Matrix.from_rows(B, cols=cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape

    @property
    def m(self) -> int:
        return self.A.rows

    @property
    def n(self) -> int:
        return self.A.cols

    def matrix(self) -> Matrix:
        return pencil_matrix(self.A, self.B)

    def member(self, lam) -> Matrix:
        """``A + lam*B``."""
        return self.A + self.B.scale(Fraction(lam))

    def transpose(self) -> "Pencil":
        return Pencil(self.A.T, self.B.T)

    def reversed(self) -> "Pencil":
        return Pencil(self.B, self.A)

    def recombine(self, alpha, beta, gamma, delta) -> "Pencil":
        """``(αA + βB) + λ(γA + δB)``."""
        return Pencil(
            self.A.scale(Fraction(alpha)) + self.B.scale(Fraction(beta)),
            self.A.scale(Fraction(gamma)) + self.B.scale(Fraction(delta)),
        )

    def transform(self, P: Matrix, Q: Matrix) -> "Pencil":
        return Pencil(P @ self.A @ Q, P @ self.B @ Q)

    def is_zero(self) -> bool:
        return self.A.is_zero() and self.B.is_zero()

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "B": self.B.to_json()}


@dataclass(frozen=True)
class JordanEntry:
    factor: BinaryForm
    sizes: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.factor.degree

    @property
    def is_infinite(self) -> bool:
        return self.factor.mu_power() > 0

    def eigenvalue(self):
        """The rational eigenvalue of a linear finite factor, else ``None``."""
        return self.factor.rational_root()

    def to_json(self) -> dict:
        out = {"factor": self.factor.format("lambda", "mu"), "degree": self.degree, "sizes": list(self.sizes)}
        if self.is_infinite:
            out["eigenvalue"] = "infinity"
        elif (ev := self.eigenvalue()) is not None:
            out["eigenvalue"] = str(ev)
        else:
            out["numeric_roots"] = self.factor.numeric_roots()
        return out


@dataclass(frozen=True)
class ElementaryDivisorStructure:
    entries: tuple[JordanEntry, ...] = ()

    def __post_init__(self):
        for e in self.entries:
            if not e.sizes or any(s <= 0 for s in e.sizes):
                raise InternalConsistencyError(f"bad block sizes {e.sizes}")
            if list(e.sizes) != sorted(e.sizes, reverse=True):
                raise InternalConsistencyError("block sizes must be in decreasing order")
        fs = [e.factor for e in self.entries]
        for i in range(len(fs)):
            for j in range(i + 1, len(fs)):
                g = uni_gcd(fs[i].dehomogenize(), fs[j].dehomogenize())
                both_inf = fs[i].mu_power() and fs[j].mu_power()
                if g.degree > 0 or both_inf:
                    raise InternalConsistencyError("Jordan factors are not pairwise coprime")

    @property
    def total_degree(self) -> int:
        return sum(e.degree * sum(e.sizes) for e in self.entries)

    def is_empty(self) -> bool:
        return not self.entries

    def size_profile(self) -> tuple[tuple[int, ...], ...]:
        """Block sizes per eigenvalue (conjugate roots counted separately), sorted.

        This forgets the eigenvalue labels and keeps the discrete type.
        """
        out = []
        for e in self.entries:
            out.extend([e.sizes] * e.degree)
        return tuple(sorted(out, reverse=True))

    def by_eigenvalue(self) -> dict:
        """``{λ₀ or 'inf': sizes}`` for linear factors only."""
        out = {}
        for e in self.entries:
            if e.is_infinite:
                out["inf"] = e.sizes
            elif (ev := e.eigenvalue()) is not None:
                out[ev] = e.sizes
        return out

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]


@dataclass(frozen=True)
class PencilInvariants:
    shape: tuple[int, int]
    rank: int
    eps: tuple[int, ...]
    eta: tuple[int, ...]
    jordan: ElementaryDivisorStructure = field(default_factory=ElementaryDivisorStructure)

    @property
    def k_hor(self) -> int:
        return sum(e + 1 for e in self.eps)

    @property
    def k_vert(self) -> int:
        return sum(e + 1 for e in self.eta)

    @property
    def deg_D(self) -> int:
        return self.jordan.total_degree

    def size_identity_holds(self) -> bool:
        m, n = self.shape
        return self.k_vert + self.k_hor == m + n - self.rank - self.deg_D

    def check(self) -> None:
        m, n = self.shape
        if len(self.eps) != n - self.rank:
            raise InternalConsistencyError(f"{len(self.eps)} column indices but dim U - r = {n - self.rank}")
        if len(self.eta) != m - self.rank:
            raise InternalConsistencyError(f"{len(self.eta)} row indices but dim V - r = {m - self.rank}")
        if not self.size_identity_holds():
            raise InternalConsistencyError(
                f"k_vert + k_hor = {self.k_vert + self.k_hor} but dim V + dim U - r - deg D = "
                f"{m + n - self.rank - self.deg_D}"
            )

    def type_key(self) -> tuple:
        """Label-free algebraic type."""
        return (self.rank, self.eps, self.eta, self.jordan.size_profile())

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "rank": self.rank,
            "eps": list(self.eps),
            "eta": list(self.eta),
            "jordan": self.jordan.to_json(),
            "k_hor": self.k_hor,
            "k_vert": self.k_vert,
            "deg_D": self.deg_D,
        }


# ---------------------------------------------------------------------------
# canonical blocks
# ---------------------------------------------------------------------------


def jordan_block(eigenvalue, size: int) -> Pencil:
    """``A`` carries ``λ₀`` on the diagonal and ones above it, ``B = I``."""
    ev = Fraction(eigenvalue)
    A = [[ev if i == j else Fraction(int(j == i + 1)) for j in range(size)] for i in range(size)]
    return Pencil(Matrix.from_rows(A, cols=size), Matrix.identity(size))


def infinite_block(size: int) -> Pencil:
    B = [[Fraction(int(j == i + 1)) for j in range(size)] for i in range(size)]
    return Pencil(Matrix.identity(size), Matrix.from_rows(B, cols=size))


def horizontal_block(eps: int) -> Pencil:
    """``eps x (eps+1)`` block; ``eps = 0`` is a 0x1 zero column."""
    A = [[Fraction(int(j == i)) for j in range(eps + 1)] for i in range(eps)]
    B = [[Fraction(int(j == i + 1)) for j in range(eps + 1)] for i in range(eps)]
    return Pencil(Matrix.from_rows(A, cols=eps + 1), Matrix.from_rows(B, cols=eps + 1))


def vertical_block(eta: int) -> Pencil:
    """``(eta+1) x eta`` block; ``eta = 0`` is a 1x0 zero row."""
    A = [[Fraction(int(i == j)) for j in range(eta)] for i in range(eta + 1)]
    B = [[Fraction(int(i == j + 1)) for j in range(eta)] for i in range(eta + 1)]
    return Pencil(Matrix.from_rows(A, cols=eta), Matrix.from_rows(B, cols=eta))


def direct_sum(pencils: Sequence[Pencil]) -> Pencil:
    return Pencil(block_diag(p.A for p in pencils), block_diag(p.B for p in pencils))


def stacked_matrix(P: Pencil, k: int) -> Matrix:
    """``S_k``: rows ``A v_0 = 0``, ``B v_{j-1} + A v_j = 0`` (1 <= j <= k), ``B v_k = 0``."""
    m, n = P.shape
    rows = []
    for blk in range(k + 2):
        for i in range(m):
            row = [Fraction(0)] * ((k + 1) * n)
            if blk <= k:
                row[blk * n:(blk + 1) * n] = P.A.row(i)
            if blk >= 1:
                row[(blk - 1) * n:blk * n] = P.B.row(i)
            rows.append(row)
    return Matrix.from_rows(rows, cols=(k + 1) * n)


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------


def pencil_rank(P: Pencil) -> int:
    return poly_bareiss(P.matrix())[0]


def regular_member(P: Pencil, r: int | None = None) -> int:
    """Smallest integer ``λ₀ >= 0`` with ``rk(A + λ₀B) = r``."""
    r = pencil_rank(P) if r is None else r
    lam = 0
    while rank(P.member(lam)) != r:
        lam += 1
    return lam


def truncated_solutions(M0: Matrix, M1: Matrix) -> Iterator[list[tuple]]:
    """Last vectors of a basis of the truncated solution spaces ``K_0, K_1, ...``.

    ``K_j`` holds the tuples ``(v_0, .., v_j)`` with ``M0 v_0 = 0`` and
    ``M1 v_{i-1} + M0 v_i = 0``; the j-th yield lists ``v_j`` for a basis of
    ``K_j``, so its length is ``dim K_j``.
    """
    solver = LinearSolver(M0)
    base = list(solver.kernel)
    T = list(base)
    yield T
    while True:
        W = [M1.apply(t) for t in T]
        if solver.left_kernel and T:
            C = Matrix.from_rows(
                [[sum((y * w for y, w in zip(yv, wv) if y and w), Fraction(0)) for wv in W] for yv in solver.left_kernel],
                cols=len(T),
            )
            Z = kernel_basis(C)
        else:
            Z = [tuple(Fraction(int(i == j)) for j in range(len(T))) for i in range(len(T))]
        nxt = []
        for z in Z:
            b = [Fraction(0)] * M0.rows
            for zi, w in zip(z, W):
                if zi:
                    for i, wi in enumerate(w):
                        if wi:
                            b[i] -= zi * wi
            v = solver.solve(b)
            if v is None:
                raise InternalConsistencyError("chain extension is not solvable")
            nxt.append(v)
        T = nxt + base
        yield T


def _columns_rank(M: Matrix, vectors: list[tuple]) -> int:
    if not vectors:
        return 0
    images = [M.apply(v) for v in vectors]
    return rank(Matrix.from_rows(images, cols=M.rows))


def kernel_dims(P: Pencil, kmax: int) -> list[int]:
    """``d_k = dim Ker S_k`` for ``k = 0..kmax`` via the truncated-solution recursion."""
    r = pencil_rank(P)
    lam0 = regular_member(P, r)
    # S_k for A+λ₀B and B have the same kernel dimension: v(λ) -> v(λ+λ₀)
    out = []
    for k, T in enumerate(truncated_solutions(P.member(lam0), P.B)):
        out.append(len(T) - _columns_rank(P.B, T))
        if k == kmax:
            return out
    return out


def minimal_column_indices(P: Pencil, r: int | None = None) -> tuple[int, ...]:
    m, n = P.shape
    r = pencil_rank(P) if r is None else r
    p = n - r
    if p == 0:
        return ()
    lam0 = regular_member(P, r)
    eps: list[int] = []
    d_prev = 0
    for k, T in enumerate(truncated_solutions(P.member(lam0), P.B)):
        d_k = len(T) - _columns_rank(P.B, T)
        at_most_k = d_k - d_prev
        eps.extend([k] * (at_most_k - len(eps)))
        d_prev = d_k
        if len(eps) >= p:
            break
        if k > r + 1:
            raise InternalConsistencyError("minimal index search did not terminate")
    if len(eps) != p:
        raise InternalConsistencyError(f"found {len(eps)} column indices, expected {p}")
    return tuple(eps)


def minimal_row_indices(P: Pencil, r: int | None = None) -> tuple[int, ...]:
    return minimal_column_indices(P.transpose(), r)


def companion(pi: UniPoly) -> Matrix:
    """Multiplication by ``λ`` on ``Q[λ]/π`` in the basis ``1, λ, .., λ^(d-1)``."""
    pi = pi.monic()
    d = pi.degree
    C = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d - 1):
        C[i + 1][i] = Fraction(1)
    for i in range(d):
        C[i][d - 1] = -pi.coeffs[i]
    return Matrix.from_rows(C, cols=d)


def local_block_sizes(P: Pencil, pi: UniPoly, p: int) -> tuple[int, ...]:
    """Jordan block sizes of ``A + λB`` at the irreducible factor ``π`` (decreasing).

    With ``M(λ) = A + λB`` lifted to ``(Q[λ]/π^k)``, the truncated solution
    spaces satisfy ``dim K_j - dim K_(j-1) = d * (p + N_(j+1))`` where
    ``N_s`` counts blocks of size at least ``s`` and ``d = deg π``.
    """
    d = pi.degree
    if d == 1:
        return _block_sizes_from_chains(P.member(-pi.monic().coeffs[0]), P.B, 1, p, min(P.m, P.n) + 2)
    C = companion(pi)
    E = Matrix.from_rows([[Fraction(int(s == 0 and t == d - 1)) for t in range(d)] for s in range(d)], cols=d)
    M0 = kron(P.A, Matrix.identity(d)) + kron(P.B, C)
    M1 = kron(P.B, E)
    return _block_sizes_from_chains(M0, M1, d, p, min(P.m, P.n) + 2)


def _block_sizes_from_chains(M0: Matrix, M1: Matrix, d: int, p: int, limit: int) -> tuple[int, ...]:
    counts: list[int] = []
    prev = 0
    for j, T in enumerate(truncated_solutions(M0, M1)):
        step = len(T) - prev
        if step % d:
            raise InternalConsistencyError("solution space growth not divisible by the factor degree")
        n_at_least = step // d - p
        if n_at_least < 0 or (counts and n_at_least > counts[-1]):
            raise InternalConsistencyError("block counts are not monotone")
        if n_at_least == 0:
            break
        counts.append(n_at_least)
        prev = len(T)
        if j > limit:
            raise InternalConsistencyError("block size search did not terminate")
    sizes: list[int] = []
    for s in range(len(counts), 0, -1):
        exact = counts[s - 1] - (counts[s] if s < len(counts) else 0)
        sizes.extend([s] * exact)
    return tuple(sizes)


def _eigen_factor(pi: UniPoly) -> BinaryForm:
    # a root c of det(A + λB) is the eigenvalue -c of A - λB
    return BinaryForm.homogenize(pi.reflect().monic()).normalized()


def _sorted_entries(entries: list[JordanEntry]) -> tuple[JordanEntry, ...]:
    return tuple(sorted(entries, key=lambda e: (e.is_infinite, e.degree, e.factor.coeffs)))


def elementary_divisors(P: Pencil, r: int | None = None, method: str = "local") -> ElementaryDivisorStructure:
    """Jordan structure of the pencil per Q-irreducible eigenvalue factor.

    ``method="local"`` (default) uses truncated solution spaces at each
    candidate factor; ``method="smith"`` factors the invariant factors of the
    Smith normal forms of ``A + λB`` and of the reversed pencil ``B + μA``.
    """
    if method == "smith":
        return _elementary_divisors_smith(P)
    if method != "local":
        raise ValueError(f"unknown method {method!r}")
    r_, minor = poly_bareiss(P.matrix())
    r = r_ if r is None else r
    p = P.n - r
    entries: list[JordanEntry] = []
    if r and minor.degree >= 1:
        for pi, _ in factor_uni(minor):
            sizes = local_block_sizes(P, pi, p)
            if sizes:
                entries.append(JordanEntry(_eigen_factor(pi), sizes))
    if r and rank(P.B) < r:
        sizes = local_block_sizes(P.reversed(), UniPoly.x(), p)
        if not sizes:
            raise InternalConsistencyError("rank B < r but no infinite Jordan block found")
        entries.append(JordanEntry(BinaryForm.mu(), sizes))
    return ElementaryDivisorStructure(_sorted_entries(entries))


def _valuation_profile(invariant_factors: list[UniPoly]) -> dict[UniPoly, tuple[int, ...]]:
    if not invariant_factors or invariant_factors[-1].degree < 1:
        return {}
    out = {}
    for pi, _ in factor_uni(invariant_factors[-1]):
        sizes = [f.valuation(pi) for f in invariant_factors]
        out[pi] = tuple(sorted((s for s in sizes if s), reverse=True))
    return out


def _elementary_divisors_smith(P: Pencil) -> ElementaryDivisorStructure:
    entries = [
        JordanEntry(_eigen_factor(pi), sizes)
        for pi, sizes in _valuation_profile(smith_normal_form(P.matrix())).items()
    ]
    rev = _valuation_profile(smith_normal_form(P.reversed().matrix()))
    mu = UniPoly.x()
    if mu in rev:
        entries.append(JordanEntry(BinaryForm.mu(), rev[mu]))
    return ElementaryDivisorStructure(_sorted_entries(entries))


def pencil_invariants(P: Pencil, method: str = "local") -> PencilInvariants:
    r = pencil_rank(P)
    inv = PencilInvariants(
        shape=P.shape,
        rank=r,
        eps=minimal_column_indices(P, r),
        eta=minimal_row_indices(P, r),
        jordan=elementary_divisors(P, r, method=method),
    )
    inv.check()
    return inv


def regular_parameters(P: Pencil, count: int, r: int | None = None) -> list[int]:
    """The first ``count`` integers ``λ >= 0`` with ``rk(A + λB) = r``."""
    r = pencil_rank(P) if r is None else r
    out = []
    lam = 0
    while len(out) < count:
        if rank(P.member(lam)) == r:
            out.append(lam)
        lam += 1
    return out


def l_hor(P: Pencil, r: int | None = None) -> list[tuple]:
    """Canonical basis of the sum of ``Ker(A + λ_s B)`` over regular ``λ_s``."""
    lams = regular_parameters(P, min(P.m, P.n) + 1, r)
    vectors = [v for lam in lams for v in kernel_basis(P.member(lam))]
    return span_basis(vectors, P.n)


def l_vert(P: Pencil, r: int | None = None) -> list[tuple]:
    """Same as :func:`l_hor` for the dual pencil; a subspace of ``V*``."""
    return l_hor(P.transpose(), r)


def minimal_polynomial_basis(P: Pencil) -> list[list[tuple]]:
    """A minimal polynomial basis of ``Ker(A + λB)``, read from explicit ``S_k`` kernels.

    Each element is the coefficient list ``[v_0, .., v_k]``; the degrees are
    the minimal column indices.  Cost grows quickly: meant for small pencils.
    """
    m, n = P.shape
    p = n - pencil_rank(P)
    chosen: list[list[tuple]] = []
    k = 0
    while len(chosen) < p:
        length = (k + 1) * n
        span = []
        for v in chosen:
            e = len(v) - 1
            flat = [x for blk in v for x in blk]
            for s in range(k - e + 1):
                span.append([Fraction(0)] * (s * n) + flat + [Fraction(0)] * ((k - e - s) * n))
        current = len(span_basis(span, length)) if span else 0
        for w in kernel_basis(stacked_matrix(P, k)):
            trial = span + [list(w)]
            if len(span_basis(trial, length)) > current:
                span = trial
                current += 1
                chosen.append([tuple(w[j * n:(j + 1) * n]) for j in range(k + 1)])
        k += 1
        if k > n + 1:
            raise InternalConsistencyError("minimal basis search did not terminate")
    return chosen


def mobius_eigenvalue(ev, alpha, beta, gamma, delta):
    """Image of an eigenvalue (a Fraction or ``"inf"``) when ``(A, B) -> (αA + βB, γA + δB)``."""
    alpha, beta, gamma, delta = (Fraction(v) for v in (alpha, beta, gamma, delta))
    if ev == "inf":
        return "inf" if gamma == 0 else alpha / gamma
    den = gamma * ev + delta
    return "inf" if den == 0 else (alpha * ev + beta) / den


def mobius_jordan(J: ElementaryDivisorStructure, alpha, beta, gamma, delta) -> ElementaryDivisorStructure:
    """Jordan structure expected after ``(A, B) -> (αA + βB, γA + δB)``; sizes travel with their factor."""
    alpha, beta, gamma, delta = (Fraction(v) for v in (alpha, beta, gamma, delta))
    if alpha * delta - beta * gamma == 0:
        raise ValueError("the recombination must be invertible")
    entries = [
        JordanEntry(e.factor.substitute(delta, -beta, -gamma, alpha).normalized(), e.sizes) for e in J.entries
    ]
    return ElementaryDivisorStructure(_sorted_entries(entries))
