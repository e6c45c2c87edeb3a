"""Lie algebras given by structure constants, and their representations.

A Lie algebra of dimension ``n`` has basis ``e_0..e_{n-1}`` and brackets
``[e_i, e_j] = Σ_k c_ij^k e_k``; only ``i < j`` is stored.  A representation
is a list of ``m x m`` matrices ``ρ(e_i)`` acting on ``V``.

For a point ``x ∈ V`` the operator ``R_x: g -> V``, ``ξ ↦ ρ(ξ)x`` has the
columns ``ρ(e_j)x``.  Its rank is the orbit dimension and its kernel the
stabilizer.  Indices are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactmath import MultiPoly, to_rational
from .linalg import Matrix, kernel_basis, rank
from . import sampling

ZERO = Fraction(0)


class InvalidAlgebra(ValueError):
    def __init__(self, violation: "Violation"):
        super().__init__(violation.message)
        self.violation = violation


@dataclass(frozen=True)
class Violation:
    kind: str
    indices: tuple[int, ...]
    residual: tuple
    message: str

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "indices": list(self.indices),
            "residual": [str(x) if not isinstance(x, tuple) else [str(y) for y in x] for x in self.residual],
            "message": self.message,
        }


class LieAlgebra:
    """Structure constants with ``i < j`` storage; Jacobi checked unless ``check=False``."""

    def __init__(self, dim: int, brackets: Iterable[tuple[int, int, int, object]] = (), name: str = "",
                 check: bool = True):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.dim = dim
        self.name = name
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for entry in brackets:
            i, j, k, c = entry
            for idx in (i, j, k):
                if not isinstance(idx, int) or not 0 <= idx < dim:
                    raise ValueError(f"bracket index {idx!r} out of range for dimension {dim}")
            c = to_rational(c)
            if i == j:
                if c:
                    raise ValueError(f"[e_{i}, e_{i}] must vanish")
                continue
            if i > j:
                i, j, c = j, i, -c
            slot = table.setdefault((i, j), {})
            slot[k] = slot.get(k, ZERO) + c
        self._table = {ij: {k: c for k, c in cs.items() if c} for ij, cs in table.items()}
        self._table = {ij: cs for ij, cs in self._table.items() if cs}
        if check and (v := validate(self)) is not None:
            raise InvalidAlgebra(v)

    def c(self, i: int, j: int, k: int) -> Fraction:
        if i == j:
            return ZERO
        if i < j:
            return self._table.get((i, j), {}).get(k, ZERO)
        return -self._table.get((j, i), {}).get(k, ZERO)

    def bracket_basis(self, i: int, j: int) -> tuple[Fraction, ...]:
        return tuple(self.c(i, j, k) for k in range(self.dim))

    def bracket(self, u: Sequence, v: Sequence) -> tuple[Fraction, ...]:
        out = [ZERO] * self.dim
        for (i, j), cs in self._table.items():
            w = u[i] * v[j] - u[j] * v[i]
            if w:
                for k, c in cs.items():
                    out[k] += w * c
        return tuple(out)

    def structure(self) -> list[tuple[int, int, int, Fraction]]:
        return [(i, j, k, c) for (i, j), cs in sorted(self._table.items()) for k, c in sorted(cs.items())]

    def is_abelian(self) -> bool:
        return not self._table

    def to_json(self) -> dict:
        return {"dim": self.dim, "brackets": [{"i": i, "j": j, "k": k, "c": str(c)} for i, j, k, c in self.structure()]}

    @classmethod
    def from_json(cls, data: dict, name: str = "", check: bool = True) -> "LieAlgebra":
        if not isinstance(data, dict) or "dim" not in data:
            raise ValueError("algebra file needs a 'dim' field")
        dim = data["dim"]
        if not isinstance(dim, int) or isinstance(dim, bool):
            raise ValueError("'dim' must be an integer")
        entries = []
        for pos, b in enumerate(data.get("brackets", [])):
            try:
                entries.append((b["i"], b["j"], b["k"], b["c"]))
            except (KeyError, TypeError):
                raise ValueError(f"brackets[{pos}] needs fields i, j, k, c") from None
        return cls(dim, entries, name=name, check=check)

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, brackets={len(self.structure())})"


def _unit(n: int, i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(k == i)) for k in range(n))


def validate(algebra: LieAlgebra) -> Violation | None:
    """First Jacobi violation over triples ``i < j < k``, or None."""
    n = algebra.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                ei, ej, ek = _unit(n, i), _unit(n, j), _unit(n, k)
                terms = (
                    algebra.bracket(algebra.bracket(ei, ej), ek),
                    algebra.bracket(algebra.bracket(ej, ek), ei),
                    algebra.bracket(algebra.bracket(ek, ei), ej),
                )
                res = tuple(sum(t) for t in zip(*terms))
                if any(res):
                    return Violation(
                        "jacobi", (i, j, k), res,
                        f"Jacobi identity fails on (e_{i}, e_{j}, e_{k}); residual {[str(x) for x in res]}",
                    )
    return None


class Representation:
    """Matrices ``ρ(e_i)`` on ``V``; the homomorphism property is checked unless ``check=False``."""

    def __init__(self, algebra: LieAlgebra, matrices: Sequence[Matrix], name: str = "", check: bool = True,
                 dimV: int | None = None):
        matrices = list(matrices)
        if len(matrices) != algebra.dim:
            raise ValueError(f"need {algebra.dim} matrices, got {len(matrices)}")
        m = dimV if dimV is not None else (matrices[0].rows if matrices else 0)
        for i, M in enumerate(matrices):
            if M.shape != (m, m):
                raise ValueError(f"matrix {i} has shape {M.shape}, expected {(m, m)}")
        self.algebra = algebra
        self.matrices = matrices
        self.dimV = m
        self.name = name
        if check and (v := validate_rep(self)) is not None:
            raise InvalidAlgebra(v)

    @property
    def n(self) -> int:
        return self.algebra.dim

    @property
    def m(self) -> int:
        return self.dimV

    def act(self, xi: Sequence, x: Sequence) -> tuple[Fraction, ...]:
        out = [ZERO] * self.dimV
        for c, M in zip(xi, self.matrices):
            if c:
                for k, y in enumerate(M.apply(x)):
                    out[k] += c * y
        return tuple(out)

    def to_json(self) -> dict:
        return {"dimV": self.dimV, "matrices": [M.to_json() for M in self.matrices]}

    @classmethod
    def from_json(cls, algebra: LieAlgebra, data: dict, name: str = "", check: bool = True) -> "Representation":
        if not isinstance(data, dict):
            raise ValueError("representation file must be a JSON object")
        if "derived" in data:
            kind = data["derived"]
            if kind == "adjoint":
                return adjoint(algebra)
            if kind == "coadjoint":
                return coadjoint(algebra)
            raise ValueError(f"unknown derived representation {kind!r}")
        if "dimV" not in data or "matrices" not in data:
            raise ValueError("representation file needs 'dimV' and 'matrices'")
        m = data["dimV"]
        mats = []
        for pos, M in enumerate(data["matrices"]):
            try:
                mats.append(Matrix.from_json(M, rows=m, cols=m))
            except ValueError as exc:
                raise ValueError(f"matrices[{pos}]: {exc}") from None
        return cls(algebra, mats, name=name, check=check, dimV=m)


def _commutator(X: Matrix, Y: Matrix) -> Matrix:
    return X @ Y - Y @ X


def validate_rep(rep: Representation) -> Violation | None:
    """First pair ``i < j`` with ``ρ([e_i,e_j]) ≠ [ρ(e_i), ρ(e_j)]``, or None."""
    alg, m = rep.algebra, rep.dimV
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            lhs = Matrix.zeros(m, m)
            for k, c in enumerate(alg.bracket_basis(i, j)):
                if c:
                    lhs = lhs + rep.matrices[k].scale(c)
            res = lhs - _commutator(rep.matrices[i], rep.matrices[j])
            if not res.is_zero():
                rows = tuple(tuple(r) for r in res.tolist())
                return Violation(
                    "homomorphism", (i, j), rows,
                    f"rho([e_{i}, e_{j}]) differs from [rho(e_{i}), rho(e_{j})]",
                )
    return None


def adjoint(algebra: LieAlgebra) -> Representation:
    """``ad(e_i)`` with ``(k, j)`` entry ``c_ij^k``."""
    n = algebra.dim
    mats = [Matrix.from_rows([[algebra.c(i, j, k) for j in range(n)] for k in range(n)], cols=n) for i in range(n)]
    return Representation(algebra, mats, name=f"{algebra.name} adjoint".strip())


def coadjoint(algebra: LieAlgebra) -> Representation:
    """``ad*(e_i) = -ad(e_i)ᵀ`` in the dual basis."""
    n = algebra.dim
    mats = [Matrix.from_rows([[-algebra.c(i, k, j) for j in range(n)] for k in range(n)], cols=n) for i in range(n)]
    return Representation(algebra, mats, name=f"{algebra.name} coadjoint".strip())


def zero_representation(algebra: LieAlgebra, m: int) -> Representation:
    return Representation(algebra, [Matrix.zeros(m, m) for _ in range(algebra.dim)], name="zero", dimV=m)


def r_operator(rep: Representation, x: Sequence) -> Matrix:
    """``R_x``: the ``m x n`` matrix with column ``j`` equal to ``ρ(e_j) x``."""
    if len(x) != rep.dimV:
        raise ValueError(f"point has {len(x)} coordinates, representation space has {rep.dimV}")
    x = tuple(to_rational(v) for v in x)
    cols = [M.apply(x) for M in rep.matrices]
    return Matrix.from_columns(cols, rows=rep.dimV) if cols else Matrix.zeros(rep.dimV, 0)


def symbolic_r_operator(rep: Representation) -> list[list[MultiPoly]]:
    """``R_x`` with entries linear forms in ``x_0..x_{m-1}``."""
    m = rep.dimV
    return [[MultiPoly.linear_form(M.row(k)) if m else MultiPoly.zero(0) for M in rep.matrices] for k in range(m)]


def stabilizer(rep: Representation, x: Sequence) -> list[tuple[Fraction, ...]]:
    return kernel_basis(r_operator(rep, x))


@dataclass(frozen=True)
class RegularData:
    rank: int
    dim_st: int
    codim_orbit: int
    witness: tuple[Fraction, ...]
    samples: int
    bound: int
    escalated: bool = False
    consistent: bool = True
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "dim_orbit_reg": self.rank,
            "dim_st_reg": self.dim_st,
            "codim_orbit_reg": self.codim_orbit,
            "witness": [str(v) for v in self.witness],
            "samples": self.samples,
            "bound": self.bound,
            "escalated": self.escalated,
        }


def _max_rank_batch(rep: Representation, seed: int, batch: int, trials: int, bound: int):
    best, witness = -1, None
    for x in sampling.random_vectors(seed, sampling.REGULAR, batch, trials, rep.dimV, bound):
        r = rank(r_operator(rep, x))
        if r > best:
            best, witness = r, x
    return best, witness


def regular_dims(rep: Representation, trials: int = 8, seed: int = 1, bound: int = 1000) -> RegularData:
    """Generic orbit dimension as the maximal rank of ``R_x`` over seeded samples.

    Two independent batches are drawn; if their maxima differ, one escalation
    with ``4*trials`` samples and bound ``bound**2`` is run.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    n, m = rep.n, rep.dimV
    r1, w1 = _max_rank_batch(rep, seed, 0, trials, bound)
    r2, w2 = _max_rank_batch(rep, seed, 1, trials, bound)
    escalated, consistent = False, True
    used_bound, samples = bound, 2 * trials
    best, witness = (r1, w1) if r1 >= r2 else (r2, w2)
    if r1 != r2:
        escalated = True
        big = max(bound * bound, 2)
        r3, w3 = _max_rank_batch(rep, seed, 2, 4 * trials, big)
        samples += 4 * trials
        used_bound = big
        if r3 > best:
            best, witness = r3, w3
        consistent = r3 == best
    return RegularData(best, n - best, m - best, witness, samples, used_bound, escalated, consistent)
