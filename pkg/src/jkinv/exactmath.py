"""Exact scalars and polynomials over the rationals.

Scalars are :class:`fractions.Fraction`.  Three polynomial types are provided:

* :class:`UniPoly` -- dense univariate polynomial in ``λ``
* :class:`BinaryForm` -- homogeneous form in ``(λ, μ)``
* :class:`MultiPoly` -- sparse multivariate polynomial in ``x_1..x_n``

All values are immutable.  Monomials of a :class:`MultiPoly` are ordered by
graded lexicographic order (total degree first, then lexicographic with
``x_1 > x_2 > ...``); "leading" always refers to that order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import comb, gcd, lcm
from typing import Iterable, Mapping, Sequence

import sympy

__all__ = [
    "Fraction",
    "UniPoly",
    "BinaryForm",
    "MultiPoly",
    "to_rational",
    "format_rational",
    "uni_gcd",
    "binary_factor",
    "factor_uni",
    "multi_gcd",
]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value) -> Fraction:
    """Parse an exact rational from an int, Fraction or string like ``"-3/4"``.

    Floats are refused: they are not exact input.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(f"expected int or rational string, got {type(value).__name__}: {value!r}")


def format_rational(q: Fraction) -> str:
    """``"p/q"``, with ``q`` omitted when it is 1."""
    return str(Fraction(q))


# ---------------------------------------------------------------------------
# univariate
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense polynomial in one variable; ``coeffs[i]`` multiplies ``λ**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [to_rational(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def _raw(cls, coeffs: list) -> "UniPoly":
        # trusted constructor: entries already Fractions
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def linear(cls, c0, c1) -> "UniPoly":
        """``c0 + c1*λ``."""
        return cls((c0, c1))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("UniPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({[format_rational(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "λ") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c:
                parts.append(_term(c, _mono_str({var: i})))
        return _join_terms(parts)

    @staticmethod
    def _coerce(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.constant(other)

    def __add__(self, other):
        if not isinstance(other, (UniPoly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, (UniPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return UniPoly()
            return UniPoly._raw([c * other for c in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = UniPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "UniPoly"):
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        if len(rem) - 1 < db:
            return UniPoly(), self
        quo = [ZERO] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if c:
                q = c / lead
                quo[k] = q
                for j in range(db + 1):
                    rem[k + j] -= q * bc[j]
        return UniPoly._raw(quo), UniPoly._raw(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "UniPoly") -> bool:
        """True when ``self`` divides ``other`` exactly."""
        if self.is_zero():
            return other.is_zero()
        return divmod(other, self)[1].is_zero()

    def __call__(self, value):
        acc = ZERO if not isinstance(value, UniPoly) else UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return UniPoly._raw([c / lead for c in self.coeffs])

    def derivative(self) -> "UniPoly":
        return UniPoly._raw([c * i for i, c in enumerate(self.coeffs)][1:])

    def reflect(self) -> "UniPoly":
        """``p(-λ)``."""
        return UniPoly._raw([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def valuation(self, factor: "UniPoly") -> int:
        """Largest ``k`` with ``factor**k`` dividing ``self`` (self nonzero)."""
        if self.is_zero():
            raise ValueError("valuation of the zero polynomial")
        if factor.degree < 1:
            raise ValueError("valuation needs a non-constant factor")
        k, p = 0, self
        while True:
            q, r = divmod(p, factor)
            if not r.is_zero():
                return k
            k, p = k + 1, q


def uni_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm; ``gcd(0, 0) = 0``."""
    a, b = p, q
    while b:
        a, b = b, a % b
        if b:
            b = b.monic()
    return a.monic()


# ---------------------------------------------------------------------------
# binary forms
# ---------------------------------------------------------------------------


class BinaryForm:
    """Homogeneous form of fixed degree in ``(λ, μ)``.

    ``coeffs[i]`` multiplies ``λ**i * μ**(degree - i)``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        if not len(coeffs):
            raise ValueError("a binary form needs at least one coefficient")
        self.coeffs: tuple[Fraction, ...] = tuple(to_rational(c) for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def homogenize(cls, p: UniPoly, degree: int | None = None) -> "BinaryForm":
        d = p.degree if degree is None else degree
        if d < p.degree or d < 0:
            raise ValueError("homogenizing degree below polynomial degree")
        return cls(list(p.coeffs) + [ZERO] * (d + 1 - len(p.coeffs)))

    @classmethod
    def mu(cls) -> "BinaryForm":
        return cls((1, 0))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def dehomogenize(self) -> UniPoly:
        """``F(λ, 1)``."""
        return UniPoly(self.coeffs)

    def mu_power(self) -> int:
        """Multiplicity of ``μ`` as a factor (the point at infinity)."""
        if self.is_zero():
            raise ValueError("zero form")
        top = max(i for i, c in enumerate(self.coeffs) if c)
        return self.degree - top

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        out = [ZERO] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BinaryForm(out)

    def __pow__(self, k: int) -> "BinaryForm":
        out = BinaryForm((1,))
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("BinaryForm", self.coeffs))

    def __repr__(self) -> str:
        return f"BinaryForm({self.format()!r})"

    def __str__(self) -> str:
        return self.format()

    def format(self, lam: str = "λ", mu: str = "μ") -> str:
        if self.is_zero():
            return "0"
        d = self.degree
        parts = [
            _term(c, _mono_str({lam: i, mu: d - i}))
            for i in range(d, -1, -1)
            if (c := self.coeffs[i])
        ]
        return _join_terms(parts)

    def proportional(self, other: "BinaryForm") -> bool:
        if self.degree != other.degree:
            return False
        a, b = self.normalized(), other.normalized()
        return a.coeffs == b.coeffs

    def normalized(self) -> "BinaryForm":
        """Scale so the coefficient of the highest λ-power present is 1."""
        if self.is_zero():
            return self
        top = max(i for i, c in enumerate(self.coeffs) if c)
        lead = self.coeffs[top]
        return BinaryForm([c / lead for c in self.coeffs])

    def substitute(self, a, b, c, d) -> "BinaryForm":
        """``F(a λ + b μ, c λ + d μ)``."""
        lam = BinaryForm((b, a))
        mu = BinaryForm((d, c))
        n = self.degree
        out = BinaryForm([0] * (n + 1))
        for i, coef in enumerate(self.coeffs):
            if coef:
                term = (lam ** i) * (mu ** (n - i))
                out = BinaryForm([x + coef * y for x, y in zip(out.coeffs, term.coeffs)])
        return out

    def __call__(self, lam, mu):
        return sum((c * lam ** i * mu ** (self.degree - i) for i, c in enumerate(self.coeffs)), ZERO)

    def rational_root(self):
        """For a linear form, its root as ``(λ, μ)`` normalized; else ``None``."""
        if self.degree != 1:
            return None
        c0, c1 = self.coeffs  # c0*μ + c1*λ
        if c1 == 0:
            return None  # μ itself: infinity
        return -c0 / c1

    def numeric_roots(self) -> list[str]:
        """Display-only approximations of the finite roots ``λ/μ``."""
        import numpy as np

        p = self.dehomogenize()
        if p.degree < 1:
            return []
        roots = np.roots([float(c) for c in reversed(p.coeffs)])
        out = []
        for z in sorted(roots, key=lambda z: (round(z.real, 12), round(z.imag, 12))):
            if abs(z.imag) < 1e-12:
                out.append(f"{z.real:.12g}")
            else:
                out.append(f"{z.real:.12g}{z.imag:+.12g}j")
        return out


def factor_uni(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic Q-irreducible factors of a non-constant polynomial, with multiplicity."""
    lam = sympy.Symbol("lam")
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], lam, domain="QQ")
    _, factors = sp.factor_list()
    out = []
    for f, e in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append((UniPoly(coeffs).monic(), int(e)))
    return out


def _factor_sort_key(f: BinaryForm):
    # finite factors by degree then coefficients; μ (infinity) last
    inf = f.mu_power() > 0
    return (inf, f.degree, f.coeffs)


def binary_factor(F: BinaryForm) -> list[tuple[BinaryForm, int]]:
    """Factor a nonzero binary form into Q-irreducible forms with multiplicity.

    Factors are normalized with :meth:`BinaryForm.normalized`; ``μ`` stands for
    the point ``(1:0)``.  The product of ``f**k`` agrees with ``F`` up to a
    nonzero rational constant.
    """
    if F.is_zero():
        raise ValueError("cannot factor the zero form")
    k = F.mu_power()
    f = F.dehomogenize()
    out: list[tuple[BinaryForm, int]] = []
    if f.degree >= 1:
        for g, e in factor_uni(f):
            out.append((BinaryForm.homogenize(g).normalized(), e))
    if k:
        out.append((BinaryForm.mu(), k))
    out.sort(key=lambda t: _factor_sort_key(t[0]))
    return out


# ---------------------------------------------------------------------------
# multivariate
# ---------------------------------------------------------------------------


def grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class MultiPoly:
    """Sparse polynomial in a fixed number of variables.

    ``terms`` maps exponent tuples to nonzero rationals.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            c = to_rational(c)
            if c:
                clean[exp] = clean.get(exp, ZERO) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MultiPoly":
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = {e: c for e, c in terms.items() if c}
        return p

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): ONE})

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> "MultiPoly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = c
        return cls(n, terms)

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_constant(self) -> bool:
        return self.total_degree <= 0

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=grlex_key)
        return exp, self._terms[exp]

    def _check(self, other: "MultiPoly"):
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other):
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, ZERO) + c
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (MultiPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly._raw(self.nvars, {e: c * other for e, c in self._terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return MultiPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = MultiPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        total = ZERO
        for e, c in self._terms.items():
            t = c
            for v, k in zip(point, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def diff(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MultiPoly._raw(self.nvars, out)

    def gradient(self) -> list["MultiPoly"]:
        return [self.diff(i) for i in range(self.nvars)]

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == d})

    def compose(self, subs: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``x_i -> subs[i]`` (all in a common variable count)."""
        if len(subs) != self.nvars:
            raise ValueError("need one substitution per variable")
        n = subs[0].nvars if subs else 0
        out = MultiPoly.zero(n)
        for e, c in self._terms.items():
            t = MultiPoly.constant(n, c)
            for s, k in zip(subs, e):
                if k:
                    t = t * s ** k
            out = out + t
        return out

    def divmod(self, divisor: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        """Multivariate division by one divisor in graded-lex order."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        dexp, dc = divisor.leading()
        dterms = list(divisor._terms.items())
        p = dict(self._terms)
        quo: dict = {}
        rem: dict = {}
        while p:
            exp = max(p, key=grlex_key)
            c = p[exp]
            if all(a >= b for a, b in zip(exp, dexp)):
                shift = tuple(a - b for a, b in zip(exp, dexp))
                q = c / dc
                quo[shift] = quo.get(shift, ZERO) + q
                for e, dcoef in dterms:
                    t = tuple(a + b for a, b in zip(e, shift))
                    v = p.get(t, ZERO) - q * dcoef
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
            else:
                rem[exp] = c
                del p[exp]
        return MultiPoly._raw(self.nvars, quo), MultiPoly._raw(self.nvars, rem)

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def divides(self, other: "MultiPoly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def primitive(self) -> "MultiPoly":
        """Integer coefficients with gcd 1 and a positive leading coefficient."""
        if not self._terms:
            return self
        den = reduce(lcm, (c.denominator for c in self._terms.values()), 1)
        nums = [int(c * den) for c in self._terms.values()]
        g = reduce(gcd, nums, 0)
        scale = Fraction(den, g)
        if self.leading()[1] < 0:
            scale = -scale
        return self * scale

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.format()!r})"

    def __str__(self) -> str:
        return self.format()

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        return _join_terms([_term(c, _mono_str(dict(zip(names, e)))) for e, c in self.items()])

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": format_rational(c)} for e, c in self.items()]

    @classmethod
    def from_json(cls, data: Sequence[Mapping], nvars: int | None = None) -> "MultiPoly":
        if nvars is None:
            if not data:
                raise ValueError("cannot infer variable count of an empty polynomial")
            nvars = len(data[0]["exponents"])
        terms: dict = {}
        for t in data:
            exp = tuple(t["exponents"])
            if len(exp) != nvars:
                raise ValueError(f"exponent vector {list(exp)} does not have length {nvars}")
            c = to_rational(t["coeff"])
            terms[exp] = terms.get(exp, ZERO) + c
        return cls(nvars, terms)


def _to_sympy(p: MultiPoly, gens):
    return sympy.Poly.from_dict(
        {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()}, gens, domain="QQ"
    )


def _from_sympy(sp, nvars: int) -> MultiPoly:
    return MultiPoly(nvars, {e: Fraction(int(c.p), int(c.q)) for e, c in sp.as_dict().items()})


def multi_gcd(ps: Sequence[MultiPoly]) -> MultiPoly:
    """Primitive gcd (positive graded-lex leading coefficient) of the inputs."""
    ps = [p for p in ps if not p.is_zero()]
    if not ps:
        raise ValueError("gcd of only zero polynomials is undefined")
    n = ps[0].nvars
    if n == 0:
        return MultiPoly.constant(0, 1)
    gens = sympy.symbols(f"x1:{n + 1}")
    g = _to_sympy(ps[0], gens)
    for p in ps[1:]:
        if g.is_ground:
            break
        g = g.gcd(_to_sympy(p, gens))
    if g.is_ground:
        return MultiPoly.constant(n, 1)
    return _from_sympy(g, n).primitive()


# ---------------------------------------------------------------------------
# formatting helpers
# ---------------------------------------------------------------------------


def _mono_str(powers: Mapping[str, int]) -> str:
    parts = []
    for name, k in powers.items():
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _term(c: Fraction, mono: str) -> str:
    if not mono:
        return format_rational(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{format_rational(c)}*{mono}"


def _join_terms(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def binomial_shift(exp: Sequence[int], a: Sequence[Fraction]) -> dict[int, dict[tuple[int, ...], Fraction]]:
    """Expand ``prod (a_i + λ x_i)**e_i`` grouped by the power of ``λ``."""
    acc: dict[int, dict[tuple[int, ...], Fraction]] = {0: {(): ONE}}
    for ai, e in zip(a, exp):
        nxt: dict[int, dict[tuple[int, ...], Fraction]] = {}
        for lam, mons in acc.items():
            for k in range(e + 1):
                coef = comb(e, k) * Fraction(ai) ** (e - k)
                if not coef:
                    continue
                bucket = nxt.setdefault(lam + k, {})
                for m, c in mons.items():
                    key = m + (k,)
                    bucket[key] = bucket.get(key, ZERO) + c * coef
        acc = nxt
    return acc
