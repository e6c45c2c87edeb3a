"""Jordan-Kronecker invariant of a representation and the fundamental semi-invariant.

The invariant is the algebraic type of the pencil ``R_x + λR_a`` for a generic
pair ``(x, a)``.  Genericity is certified by seeded sampling: every trial pair
is analyzed exactly, pairs below the maximal pencil rank are dropped, and the
most frequent type among the rest is reported (ties go to the smaller
``deg_D``, since degenerate pairs can only add Jordan blocks).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from . import sampling
from .exactmath import MultiPoly, multi_gcd, to_rational
from .liealg import LieAlgebra, RegularData, Representation, coadjoint, r_operator, regular_dims, symbolic_r_operator
from .pencil import Pencil, PencilInvariants, l_hor, l_vert, pencil_invariants, pencil_rank

DEFAULT_CEILING = 20000


class SymbolicPathUnavailable(RuntimeError):
    """Too many minors for the symbolic route; use :func:`semiinvariant_degree_via_pencil`."""


class DegenerateSpan(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    x: tuple[Fraction, ...]
    a: tuple[Fraction, ...]
    seed: int
    trials: int
    bound: int
    agreement: int
    agreed: bool
    escalated: bool

    def to_json(self) -> dict:
        return {
            "x": [str(v) for v in self.x],
            "a": [str(v) for v in self.a],
            "seed": self.seed,
            "trials": self.trials,
            "bound": self.bound,
            "agreement": self.agreement,
            "agreed": self.agreed,
            "escalated": self.escalated,
        }


@dataclass(frozen=True)
class JKReport:
    invariants: PencilInvariants
    regular: RegularData
    witness: Witness
    dim_g: int
    dim_V: int
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def eps(self) -> tuple[int, ...]:
        return self.invariants.eps

    @property
    def eta(self) -> tuple[int, ...]:
        return self.invariants.eta

    @property
    def jordan(self):
        return self.invariants.jordan

    @property
    def p(self) -> int:
        return len(self.invariants.eps)

    @property
    def q(self) -> int:
        return len(self.invariants.eta)

    @property
    def k_hor(self) -> int:
        return self.invariants.k_hor

    @property
    def k_vert(self) -> int:
        return self.invariants.k_vert

    @property
    def deg_D(self) -> int:
        return self.invariants.deg_D

    @property
    def dim_st_reg(self) -> int:
        return self.regular.dim_st

    @property
    def codim_orbit_reg(self) -> int:
        return self.regular.codim_orbit

    def stabilizer_identity_holds(self) -> bool:
        return self.k_vert + self.k_hor == self.dim_V + self.dim_st_reg - self.deg_D

    def stabilizer_counts_hold(self) -> bool:
        return self.p == self.dim_st_reg and self.q == self.codim_orbit_reg

    def type_json(self) -> dict:
        """The label-free type: identical for any generic witness."""
        inv = self.invariants
        return {
            "rank": inv.rank,
            "eps": list(inv.eps),
            "eta": list(inv.eta),
            "jordan_profile": [list(s) for s in inv.jordan.size_profile()],
            "k_hor": inv.k_hor,
            "k_vert": inv.k_vert,
            "deg_D": inv.deg_D,
            "p": self.p,
            "q": self.q,
        }

    def to_json(self) -> dict:
        inv = self.invariants
        jordan = []
        for e in inv.jordan.entries:
            item = {"factor": e.factor.format("lambda", "mu"), "sizes": list(e.sizes)}
            if not e.is_infinite and e.eigenvalue() is None:
                item["numeric_roots"] = e.factor.numeric_roots()
            jordan.append(item)
        return {
            "rank": inv.rank,
            "eps": list(inv.eps),
            "eta": list(inv.eta),
            "jordan": jordan,
            "k_hor": inv.k_hor,
            "k_vert": inv.k_vert,
            "deg_D": inv.deg_D,
            "p": self.p,
            "q": self.q,
            "dim_st_reg": self.dim_st_reg,
            "codim_orbit_reg": self.codim_orbit_reg,
            "identities": {
                "size_identity": inv.size_identity_holds(),
                "eq5": self.stabilizer_identity_holds(),
                "p_q_match_regular_stabilizer": self.stabilizer_counts_hold(),
            },
            "witness": self.witness.to_json(),
            "notes": list(self.notes),
        }


def pair_invariants(rep: Representation, x: Sequence, a: Sequence) -> PencilInvariants:
    """Invariants of the pencil ``R_x + λR_a``."""
    return pencil_invariants(Pencil(r_operator(rep, x), r_operator(rep, a)))


def _trial_round(rep: Representation, seed: int, round_: int, trials: int, bound: int):
    out = []
    for i in range(trials):
        x, a = sampling.random_vectors(seed, sampling.PAIRS, (round_, i), 2, rep.dimV, bound)
        out.append((pair_invariants(rep, x, a), x, a))
    return out


def _select(results):
    top = max(inv.rank for inv, _, _ in results)
    kept = [t for t in results if t[0].rank == top]
    counts = Counter(inv.type_key() for inv, _, _ in kept)
    degs = {inv.type_key(): inv.deg_D for inv, _, _ in kept}
    best = min(counts, key=lambda k: (-counts[k], degs[k], k))
    inv, x, a = next(t for t in kept if t[0].type_key() == best)
    return inv, x, a, counts[best]


def jk_invariants(rep: Representation, trials: int = 8, seed: int = 1, bound: int = 1000,
                  regular: RegularData | None = None) -> JKReport:
    """Jordan-Kronecker invariant of ``rep`` from ``trials`` seeded pairs.

    If fewer than ``trials`` pairs share the reported type, one escalation with
    ``4*trials`` pairs and bound ``bound**2`` is run; persistent disagreement
    leaves ``witness.agreed`` false.
    """
    if trials < 3:
        raise ValueError("jk_invariants needs at least 3 trials")
    if regular is None:
        regular = regular_dims(rep, trials, seed, bound)
    inv, x, a, agreement = _select(_trial_round(rep, seed, 0, trials, bound))
    used_trials, used_bound, escalated = trials, bound, False
    notes = []
    if agreement < trials:
        escalated = True
        used_trials, used_bound = 4 * trials, max(bound * bound, 2)
        inv, x, a, agreement = _select(_trial_round(rep, seed, 1, used_trials, used_bound))
    agreed = agreement == used_trials
    if inv.rank != regular.rank:
        agreed = False
        notes.append(f"pencil rank {inv.rank} differs from sampled regular rank {regular.rank}")
    if not regular.consistent:
        agreed = False
        notes.append("regular rank samples disagree after escalation")
    if inv.rank == 0:
        notes.append("R_x vanishes identically; the semi-invariant is taken to be 1")
    witness = Witness(tuple(x), tuple(a), seed, used_trials, used_bound, agreement, agreed, escalated)
    report = JKReport(inv, regular, witness, rep.n, rep.dimV, tuple(notes))
    if agreed and not (report.stabilizer_identity_holds() and report.stabilizer_counts_hold()):
        raise AssertionError("generic pencil contradicts the regular stabilizer dimension")
    return report


# ---------------------------------------------------------------------------
# symbolic route
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SemiInvariant:
    poly: MultiPoly
    rank: int
    minors: tuple[MultiPoly, ...]

    @property
    def degree(self) -> int:
        return self.poly.total_degree

    def cofactors(self) -> list[MultiPoly]:
        """``h_i = p_i / p_ρ`` for the nonzero maximal minors ``p_i``."""
        return [m.exact_div(self.poly) for m in self.minors]

    def to_json(self) -> dict:
        return {"poly": self.poly.to_json(), "text": self.poly.format(), "degree": self.degree, "rank": self.rank,
                "nonzero_minors": len(self.minors)}


class _MinorTable:
    """All minors of a fixed matrix of polynomials, by Laplace expansion along the first row, memoized."""

    def __init__(self, entries: list[list[MultiPoly]], nvars: int):
        self.e = entries
        self.nvars = nvars
        self.memo: dict[tuple[tuple[int, ...], tuple[int, ...]], MultiPoly] = {}

    def minor(self, rows: tuple[int, ...], cols: tuple[int, ...]) -> MultiPoly:
        if not rows:
            return MultiPoly.constant(self.nvars, 1)
        key = (rows, cols)
        got = self.memo.get(key)
        if got is not None:
            return got
        r0, rest = rows[0], rows[1:]
        total = MultiPoly.zero(self.nvars)
        for pos, c in enumerate(cols):
            entry = self.e[r0][c]
            if entry.is_zero():
                continue
            sub = self.minor(rest, cols[:pos] + cols[pos + 1:])
            if sub.is_zero():
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        self.memo[key] = total
        return total


def symbolic_minors(rep: Representation, size: int, ceiling: int = DEFAULT_CEILING) -> list[MultiPoly]:
    m, n = rep.dimV, rep.n
    count = comb(m, size) * comb(n, size)
    if count > ceiling:
        raise SymbolicPathUnavailable(
            f"{count} minors of size {size} exceed the ceiling {ceiling}; use the pencil degree route instead"
        )
    table = _MinorTable(symbolic_r_operator(rep), m)
    out = []
    for rows in combinations(range(m), size):
        for cols in combinations(range(n), size):
            d = table.minor(rows, cols)
            if not d.is_zero():
                out.append(d)
    return out


def generic_rank_symbolic(rep: Representation, ceiling: int = DEFAULT_CEILING, seed: int = 1) -> int:
    """Rank of ``R_x`` over ``Q(x)``: a sampled lower bound, certified by vanishing of all larger minors."""
    r = regular_dims(rep, 8, seed, 1000).rank
    while r < min(rep.dimV, rep.n) and symbolic_minors(rep, r + 1, ceiling):
        r += 1
    return r


def fundamental_semiinvariant(rep: Representation, ceiling: int = DEFAULT_CEILING) -> SemiInvariant:
    """Primitive gcd of the nonzero maximal minors of the symbolic ``R_x`` (1 when ``R_x ≡ 0``)."""
    r = generic_rank_symbolic(rep, ceiling)
    m = rep.dimV
    if r == 0:
        one = MultiPoly.constant(m, 1)
        return SemiInvariant(one, 0, (one,))
    minors = symbolic_minors(rep, r, ceiling)
    if not minors:
        raise AssertionError("no nonzero maximal minor at the certified rank")
    g = multi_gcd(minors)
    if g.is_constant():
        g = MultiPoly.constant(m, 1)
    return SemiInvariant(g, r, tuple(minors))


def semiinvariant_degree_via_pencil(rep: Representation, trials: int = 8, seed: int = 1, bound: int = 1000) -> int:
    return jk_invariants(rep, trials, seed, bound).deg_D


@dataclass(frozen=True)
class Sing1Result:
    inside: bool
    values: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {"inside": self.inside, "cofactor_values": [str(v) for v in self.values]}


def sing1_membership(rep: Representation, a: Sequence, ceiling: int = DEFAULT_CEILING,
                     semi: SemiInvariant | None = None) -> Sing1Result:
    """Whether ``a`` is a common zero of all cofactors ``h_i = p_i / p_ρ``."""
    semi = semi or fundamental_semiinvariant(rep, ceiling)
    point = [to_rational(v) for v in a]
    values = tuple(h(point) for h in semi.cofactors())
    return Sing1Result(not any(values), values)


@dataclass(frozen=True)
class SymmetryResult:
    ok: bool
    violations: tuple[str, ...]
    report: JKReport

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": list(self.violations)}


def coadjoint_symmetry_check(algebra: LieAlgebra, trials: int = 8, seed: int = 1, bound: int = 1000,
                             report: JKReport | None = None) -> SymmetryResult:
    """Skew-symmetry consequences for the coadjoint pencil.

    Column and row indices coincide, each Jordan size occurs an even number of
    times per eigenvalue, and ``2 k_vert = dim g + ind g - deg_D``.
    """
    rep = coadjoint(algebra)
    report = report or jk_invariants(rep, trials, seed, bound)
    bad = []
    if report.eps != report.eta:
        bad.append(f"column indices {list(report.eps)} differ from row indices {list(report.eta)}")
    for e in report.jordan.entries:
        odd = [s for s, c in Counter(e.sizes).items() if c % 2]
        if odd:
            bad.append(f"factor {e.factor} has unpaired block sizes {odd}")
    index = report.dim_st_reg
    if 2 * report.k_vert != algebra.dim + index - report.deg_D:
        bad.append(f"2*k_vert = {2 * report.k_vert} but dim g + ind g - deg_D = {algebra.dim + index - report.deg_D}")
    return SymmetryResult(not bad, tuple(bad), report)


def l_spaces(rep: Representation, x: Sequence, a: Sequence, regular_rank: int | None = None):
    """``(L_hor(x,a) ⊂ g, L_vert(x,a) ⊂ V*)`` as canonical bases."""
    P = Pencil(r_operator(rep, x), r_operator(rep, a))
    r = pencil_rank(P)
    target = regular_dims(rep).rank if regular_rank is None else regular_rank
    if r != target:
        raise DegenerateSpan(f"the line through x and a lies in the singular set (pencil rank {r} < {target})")
    return l_hor(P, r), l_vert(P, r)
