"""Invariant polynomials, their argument shifts, and truncated formal invariants.

For an invariant ``f`` of degree ``d`` and a point ``a`` the shift expansion is
``f(a + λx) = Σ_j λ^j g_j(x)`` with ``g_j`` homogeneous of degree ``j``.  The
covectors ``ω_j = dg_(j+1)`` then form a chain

    R_a* ω_0 = 0,    R_a* ω_j + R_x* ω_(j-1) = 0,

and a formal invariant at a regular ``a`` is any chain of closed polynomial
covectors with this property.  ``g_(j+1) = <ω_j, x> / (j+1)`` recovers the
components by Euler's formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from . import sampling
from .exactmath import MultiPoly, binomial_shift, to_rational
from .jk import JKReport, SemiInvariant, jk_invariants, sing1_membership
from .liealg import Representation, r_operator, regular_dims, symbolic_r_operator
from .linalg import Matrix, kernel_basis, rank, same_span, solve, span_basis
from .pencil import Pencil, l_vert, pencil_rank

Covector = list[MultiPoly]


class NotRegular(ValueError):
    pass


# ---------------------------------------------------------------------------
# covector fields
# ---------------------------------------------------------------------------


def dual_action(rep: Representation, omega: Sequence[MultiPoly]) -> list[MultiPoly]:
    """``R_x* ω`` with ``x`` symbolic: component ``k`` is ``Σ_i (ρ(e_k)x)_i ω_i``."""
    R = symbolic_r_operator(rep)
    out = []
    for k in range(rep.n):
        acc = MultiPoly.zero(rep.dimV)
        for i in range(rep.dimV):
            if not R[i][k].is_zero() and not omega[i].is_zero():
                acc = acc + R[i][k] * omega[i]
        out.append(acc)
    return out


def dual_action_at(rep: Representation, a: Sequence, omega: Sequence[MultiPoly]) -> list[MultiPoly]:
    """``R_a* ω`` for a fixed point ``a``."""
    Ra = r_operator(rep, a)
    out = []
    for k in range(rep.n):
        acc = MultiPoly.zero(rep.dimV)
        for i in range(rep.dimV):
            if Ra[i, k] and not omega[i].is_zero():
                acc = acc + omega[i] * Ra[i, k]
        out.append(acc)
    return out


def is_closed(omega: Sequence[MultiPoly]) -> bool:
    m = len(omega)
    return all(omega[i].diff(j) == omega[j].diff(i) for i in range(m) for j in range(i + 1, m))


def gradient_at(f: MultiPoly, x: Sequence) -> tuple[Fraction, ...]:
    return tuple(g(x) for g in f.gradient())


def differential_span(polys: Sequence[MultiPoly], x: Sequence, dim: int) -> list[tuple]:
    return span_basis([gradient_at(g, x) for g in polys], dim) if polys else []


# ---------------------------------------------------------------------------
# invariants and shifts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantCheck:
    poly: MultiPoly
    verified: bool
    residual_index: int | None = None
    residual: MultiPoly | None = None

    @property
    def degree(self) -> int:
        return self.poly.total_degree

    def to_json(self) -> dict:
        out = {"poly": self.poly.format(), "degree": self.degree, "verified": self.verified}
        if not self.verified:
            out["residual"] = {"component": self.residual_index, "poly": self.residual.format()}
        return out


def verify_invariant(rep: Representation, f: MultiPoly) -> InvariantCheck:
    """Check ``R_x* df(x) = 0`` identically; on failure report the first nonzero component."""
    if f.nvars != rep.dimV:
        raise ValueError(f"polynomial has {f.nvars} variables, representation space has {rep.dimV}")
    if f.is_zero():
        raise ValueError("the zero polynomial is not accepted as an invariant")
    for k, res in enumerate(dual_action(rep, f.gradient())):
        if not res.is_zero():
            return InvariantCheck(f, False, k, res)
    return InvariantCheck(f, True)


@dataclass(frozen=True)
class ShiftFamily:
    f: MultiPoly
    a: tuple[Fraction, ...]
    components: tuple[MultiPoly, ...]  # g_0 .. g_deg

    def evaluate(self, lam, x) -> Fraction:
        lam = to_rational(lam)
        return sum((lam ** j * g(x) for j, g in enumerate(self.components)), Fraction(0))

    def nonconstant(self) -> list[MultiPoly]:
        return [g for g in self.components[1:] if not g.is_zero()]

    def chain(self) -> list[Covector]:
        """``ω_j = dg_(j+1)`` for ``j = 0 .. deg-1``."""
        return [g.gradient() for g in self.components[1:]]

    def to_json(self) -> dict:
        return {"f": self.f.format(), "a": [str(v) for v in self.a],
                "components": [g.format() for g in self.components]}


def shift_expand(f: MultiPoly | InvariantCheck, a: Sequence) -> ShiftFamily:
    """Homogeneous components of ``f(a + λx)``; zero components keep their slot."""
    if isinstance(f, InvariantCheck):
        if not f.verified:
            raise ValueError("shift_expand needs a verified invariant")
        f = f.poly
    a = tuple(to_rational(v) for v in a)
    if len(a) != f.nvars:
        raise ValueError("shift origin has the wrong dimension")
    comps: dict[int, dict] = {}
    for exp, c in f.items():
        for j, terms in binomial_shift(exp, a).items():
            slot = comps.setdefault(j, {})
            for e, v in terms.items():
                slot[e] = slot.get(e, Fraction(0)) + c * v
    deg = max(f.total_degree, 0)
    out = tuple(MultiPoly(f.nvars, comps.get(j, {})) for j in range(deg + 1))
    return ShiftFamily(f, a, out)


def chain_residuals(rep: Representation, a: Sequence, chain: Sequence[Covector]) -> list[tuple[int, int]]:
    """``(order, component)`` pairs where the chain equations fail; empty when valid."""
    bad = []
    prev = None
    for j, omega in enumerate(chain):
        lhs = dual_action_at(rep, a, omega)
        if prev is not None:
            lhs = [u + v for u, v in zip(lhs, dual_action(rep, prev))]
        bad.extend((j, k) for k, p in enumerate(lhs) if not p.is_zero())
        prev = omega
    return bad


# ---------------------------------------------------------------------------
# sampling helpers
# ---------------------------------------------------------------------------


def regular_points(rep: Representation, count: int, seed: int, bound: int, purpose: int, r: int,
                   max_draws: int | None = None) -> list[tuple[Fraction, ...]]:
    """``count`` seeded points with ``rk R_x = r``."""
    gen = sampling.stream(seed, purpose)
    out = []
    draws = 0
    limit = max_draws or 50 * count + 50
    while len(out) < count:
        draws += 1
        if draws > limit:
            raise RuntimeError(f"only {len(out)} regular points in {limit} draws")
        x = sampling.random_vector(gen, rep.dimV, bound)
        if rank(r_operator(rep, x)) == r:
            out.append(x)
    return out


def _checked(rep: Representation, invariants: Sequence[MultiPoly]) -> list[MultiPoly]:
    out = []
    for f in invariants:
        chk = verify_invariant(rep, f)
        if not chk.verified:
            raise ValueError(f"{f.format()} is not an invariant: component {chk.residual_index} "
                             f"of R_x* df is {chk.residual.format()}")
        out.append(f)
    return out


def jacobian_rank(polys: Sequence[MultiPoly], x: Sequence) -> int:
    if not polys:
        return 0
    return rank(Matrix.from_rows([gradient_at(g, x) for g in polys], cols=polys[0].nvars))


# ---------------------------------------------------------------------------
# trdeg Y_a and span equality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpanSample:
    x: tuple[Fraction, ...]
    hypothesis: bool
    equal: bool | None
    dim_shifts: int
    dim_l_vert: int


@dataclass(frozen=True)
class TrdegResult:
    trdeg: int
    k_vert: int
    a: tuple[Fraction, ...]
    samples: tuple[SpanSample, ...]
    warnings: tuple[str, ...] = field(default_factory=tuple)

    @property
    def bound_holds(self) -> bool:
        return self.trdeg <= self.k_vert

    @property
    def equality(self) -> bool:
        return self.trdeg == self.k_vert

    @property
    def span_checks(self) -> int:
        return sum(s.hypothesis for s in self.samples)

    @property
    def span_skipped(self) -> int:
        return sum(not s.hypothesis for s in self.samples)

    @property
    def spans_equal(self) -> bool:
        return all(s.equal for s in self.samples if s.hypothesis)

    def to_json(self) -> dict:
        return {
            "a": [str(v) for v in self.a],
            "trdeg": self.trdeg,
            "k_vert": self.k_vert,
            "inequality_holds": self.bound_holds,
            "equality": self.equality,
            "span_equal_checked": self.span_checks,
            "span_equal_skipped": self.span_skipped,
            "spans_equal": self.spans_equal,
            "warnings": list(self.warnings),
        }


def trdeg_Ya(rep: Representation, invariants: Sequence[MultiPoly], a: Sequence, trials: int = 8, seed: int = 1,
             bound: int = 1000, report: JKReport | None = None) -> TrdegResult:
    """Transcendence degree of the algebra generated by all shifts ``f(x + λa)``.

    Computed as the maximal Jacobian rank of the shift components over seeded
    regular points ``x``.  At each point whose invariant differentials span
    ``Ker R_x*``, the span of the component differentials is also compared with
    ``L_vert(x, a)``.
    """
    invariants = _checked(rep, invariants)
    report = report or jk_invariants(rep, max(trials, 3), seed, bound)
    a = tuple(to_rational(v) for v in a)
    r, q = report.invariants.rank, report.codim_orbit_reg
    warnings = []
    if len(invariants) != q:
        warnings.append(f"{len(invariants)} invariants supplied but codim O_reg = {q}; equality claims need {q}")
    comps = [g for f in invariants for g in shift_expand(f, a).nonconstant()]
    m = rep.dimV
    best = 0
    samples = []
    for x in regular_points(rep, trials, seed, bound, sampling.SHIFT_POINTS, r):
        span = differential_span(comps, x, m)
        best = max(best, len(span))
        hyp = jacobian_rank(invariants, x) == q == len(invariants)
        if hyp:
            P = Pencil(r_operator(rep, x), r_operator(rep, a))
            lv = l_vert(P, pencil_rank(P))
            samples.append(SpanSample(x, True, same_span(span, lv, m), len(span), len(lv)))
        else:
            samples.append(SpanSample(x, False, None, len(span), -1))
    return TrdegResult(best, report.k_vert, a, tuple(samples), tuple(warnings))


# ---------------------------------------------------------------------------
# degree bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    name: str
    holds: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


def _independent(rep: Representation, invariants: Sequence[MultiPoly], seed: int, bound: int) -> bool:
    if not invariants:
        return True
    gen = sampling.stream(seed, sampling.SHIFT_POINTS, 99)
    for _ in range(8):
        if jacobian_rank(invariants, sampling.random_vector(gen, rep.dimV, bound)) == len(invariants):
            return True
    return False


def vorontsov_check(rep: Representation, invariants: Sequence[MultiPoly], report: JKReport | None = None,
                    seed: int = 1, bound: int = 1000) -> list[Verdict]:
    """Pair sorted invariant degrees with sorted row indices: ``deg f_α >= η_α + 1``.

    If the degrees sum to ``k_vert`` the row indices must equal ``deg f_α - 1``.
    """
    invariants = _checked(rep, invariants)
    if not _independent(rep, invariants, seed, bound):
        raise ValueError("invariants are algebraically dependent (Jacobian rank deficient at sampled points)")
    report = report or jk_invariants(rep, 8, seed, bound)
    eta = sorted(report.eta)
    degs = sorted(f.total_degree for f in invariants)
    if len(degs) > len(eta):
        raise ValueError(f"{len(degs)} independent invariants cannot exceed codim O_reg = {len(eta)}")
    out = [Verdict(f"deg f_{i} >= eta_{i} + 1", d >= e + 1, f"{d} >= {e} + 1") for i, (d, e) in enumerate(zip(degs, eta))]
    if len(degs) == len(eta) and sum(degs) == report.k_vert:
        exact = all(e == d - 1 for d, e in zip(degs, eta))
        out.append(Verdict("eta = deg f - 1 when degrees sum to k_vert", exact,
                           f"degrees {degs}, row indices {eta}"))
    return out


def degree_sum_bounds(rep: Representation, invariants: Sequence[MultiPoly], report: JKReport | None = None,
                      semi: SemiInvariant | None = None, seed: int = 1, bound: int = 1000) -> list[Verdict]:
    """Lower bounds on ``Σ deg f_α`` for ``q`` independent invariants."""
    invariants = _checked(rep, invariants)
    report = report or jk_invariants(rep, 8, seed, bound)
    if len(invariants) != report.q:
        raise ValueError(f"degree sum bounds need exactly q = {report.q} invariants, got {len(invariants)}")
    if not _independent(rep, invariants, seed, bound):
        raise ValueError("invariants are algebraically dependent")
    total = sum(f.total_degree for f in invariants)
    out = [Verdict("sum deg >= k_vert", total >= report.k_vert, f"{total} >= {report.k_vert}")]
    if report.dim_st_reg == 0:
        deg_p = semi.degree if semi is not None else report.deg_D
        out.append(Verdict("sum deg >= dim V - deg p", total >= rep.dimV - deg_p, f"{total} >= {rep.dimV} - {deg_p}"))
        if deg_p == 0:
            out.append(Verdict("sum deg >= dim V", total >= rep.dimV, f"{total} >= {rep.dimV}"))
    return out


@dataclass(frozen=True)
class IndependenceResult:
    applicable: bool
    independent: bool
    rank: int
    q: int

    def to_json(self) -> dict:
        return {"applicable": self.applicable, "independent": self.independent, "rank": self.rank, "q": self.q}


def differentials_independence(rep: Representation, invariants: Sequence[MultiPoly], x: Sequence,
                               report: JKReport | None = None) -> IndependenceResult:
    """Rank of ``df_1(x) .. df_q(x)``; the degree-sum equality is checked first."""
    invariants = _checked(rep, invariants)
    report = report or jk_invariants(rep)
    x = tuple(to_rational(v) for v in x)
    applicable = len(invariants) == report.q and sum(f.total_degree for f in invariants) == report.k_vert
    rk = jacobian_rank(invariants, x)
    return IndependenceResult(applicable, rk == report.q, rk, report.q)


# ---------------------------------------------------------------------------
# formal invariants
# ---------------------------------------------------------------------------


def _monomials(m: int, d: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(m), d):
        e = [0] * m
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


@dataclass(frozen=True)
class FormalInvariantChain:
    a: tuple[Fraction, ...]
    omegas: tuple[tuple[MultiPoly, ...], ...]  # ω_0 .. ω_N
    obstruction_order: int

    def components(self) -> list[MultiPoly]:
        """``g_(j+1) = <ω_j, x> / (j+1)``."""
        out = []
        for j, omega in enumerate(self.omegas):
            m = len(omega)
            g = MultiPoly.zero(m)
            for i, w in enumerate(omega):
                g = g + w * MultiPoly.variable(m, i)
            out.append(g * Fraction(1, j + 1))
        return out

    def to_json(self) -> dict:
        return {
            "a": [str(v) for v in self.a],
            "components": [g.format() for g in self.components()],
            "omegas": [[w.format() for w in om] for om in self.omegas],
            "obstruction_order": self.obstruction_order,
        }


def _solve_order(rep: Representation, Ra: Matrix, rhs: list[MultiPoly], j: int) -> tuple[MultiPoly, ...] | None:
    """A closed degree-``j`` covector ``ω`` with ``R_a* ω = rhs``, canonical (free unknowns zero)."""
    m, n = rep.dimV, rep.n
    monos = _monomials(m, j)
    idx = {(i, e): t for t, (i, e) in enumerate((i, e) for i in range(m) for e in monos)}
    rows, b = [], []
    for k in range(n):
        coeffs = rhs[k].terms
        for e in monos:
            row = [Fraction(0)] * len(idx)
            for i in range(m):
                if Ra[i, k]:
                    row[idx[(i, e)]] = Ra[i, k]
            rows.append(row)
            b.append(coeffs.get(e, Fraction(0)))
    # closedness: d ω_i / dx_l = d ω_l / dx_i
    for i in range(m):
        for l in range(i + 1, m):
            for nu in _monomials(m, j - 1) if j >= 1 else []:
                row = [Fraction(0)] * len(idx)
                up_l = tuple(v + (t == l) for t, v in enumerate(nu))
                up_i = tuple(v + (t == i) for t, v in enumerate(nu))
                row[idx[(i, up_l)]] += up_l[l]
                row[idx[(l, up_i)]] -= up_i[i]
                rows.append(row)
                b.append(Fraction(0))
    if not rows:
        sol = tuple(Fraction(0) for _ in idx)
    else:
        sol = solve(Matrix.from_rows(rows, cols=len(idx)), b)
        if sol is None:
            return None
    return tuple(MultiPoly(m, {e: sol[idx[(i, e)]] for e in monos}) for i in range(m))


def formal_invariant_truncated(rep: Representation, a: Sequence, order: int, regular_rank: int | None = None
                               ) -> list[FormalInvariantChain]:
    """One chain ``ω_0 .. ω_N`` per canonical basis covector of ``Ker R_a*``.

    Each order solves ``R_a* ω_j = -R_x* ω_(j-1)`` over closed homogeneous
    covectors of degree ``j``; a chain stops early at the first order without
    a solution and records it as ``obstruction_order``.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    a = tuple(to_rational(v) for v in a)
    Ra = r_operator(rep, a)
    r = regular_dims(rep).rank if regular_rank is None else regular_rank
    if rank(Ra) != r:
        raise NotRegular(f"rank R_a = {rank(Ra)} but the regular rank is {r}")
    m = rep.dimV
    chains = []
    for w0 in kernel_basis(Ra.T):
        omegas = [tuple(MultiPoly.constant(m, c) for c in w0)]
        obstruction = order + 1
        for j in range(1, order + 1):
            rhs = [-p for p in dual_action(rep, omegas[-1])]
            nxt = _solve_order(rep, Ra, rhs, j)
            if nxt is None:
                obstruction = j
                break
            omegas.append(nxt)
        chains.append(FormalInvariantChain(a, tuple(omegas), obstruction))
    return chains


def sing1_safe_origins(rep: Representation, count: int, seed: int, bound: int, r: int,
                       semi: SemiInvariant | None = None) -> list[tuple[Fraction, ...]]:
    """Seeded regular points outside ``Sing_1`` (membership decided symbolically when ``semi`` is given)."""
    out = []
    for a in regular_points(rep, 4 * count, seed, bound, sampling.SHIFT_ORIGINS, r):
        if semi is not None and sing1_membership(rep, a, semi=semi).inside:
            continue
        out.append(a)
        if len(out) == count:
            break
    return out
