"""Built-in example algebras and representations with their known invariants."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .exactmath import MultiPoly
from .liealg import LieAlgebra, Representation, coadjoint
from .linalg import Matrix


@dataclass(frozen=True)
class Expected:
    rank: int
    eps: tuple[int, ...]
    eta: tuple[int, ...]
    jordan: tuple[tuple[int, ...], ...]  # size profile, one entry per eigenvalue
    k_hor: int
    k_vert: int
    deg_D: int
    semiinvariant: MultiPoly

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "eps": list(self.eps),
            "eta": list(self.eta),
            "jordan_profile": [list(s) for s in self.jordan],
            "k_hor": self.k_hor,
            "k_vert": self.k_vert,
            "deg_D": self.deg_D,
            "semiinvariant": self.semiinvariant.to_json(),
        }


@dataclass(frozen=True)
class ZooEntry:
    name: str
    description: str
    build: Callable[[], Representation]
    expected: Expected
    invariants: tuple[MultiPoly, ...] = field(default_factory=tuple)

    @property
    def is_coadjoint(self) -> bool:
        return self.name != "sl2-std"

    def representation(self) -> Representation:
        return self.build()

    def algebra(self) -> LieAlgebra:
        return self.build().algebra

    def to_json(self) -> dict:
        rep = self.build()
        return {
            "name": self.name,
            "description": self.description,
            "algebra": rep.algebra.to_json(),
            "representation": rep.to_json(),
            "expected": self.expected.to_json(),
            "invariants": [f.to_json() for f in self.invariants],
        }


def _x(n: int, i: int) -> MultiPoly:
    return MultiPoly.variable(n, i)


def abelian2() -> LieAlgebra:
    return LieAlgebra(2, [], name="abelian2")


def aff1() -> LieAlgebra:
    return LieAlgebra(2, [(0, 1, 1, 1)], name="aff1")


def h3() -> LieAlgebra:
    return LieAlgebra(3, [(0, 1, 2, 1)], name="h3")


def sl2() -> LieAlgebra:
    # basis (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
    return LieAlgebra(3, [(0, 1, 0, -2), (0, 2, 1, 1), (1, 2, 2, -2)], name="sl2")


def so3() -> LieAlgebra:
    return LieAlgebra(3, [(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 1, -1)], name="so3")


def sl2_standard() -> Representation:
    e = Matrix.from_rows([[0, 1], [0, 0]])
    h = Matrix.from_rows([[1, 0], [0, -1]])
    f = Matrix.from_rows([[0, 0], [1, 0]])
    return Representation(sl2(), [e, h, f], name="sl2 standard")


ONE2 = MultiPoly.constant(2, 1)
ONE3 = MultiPoly.constant(3, 1)
SL2_CASIMIR = _x(3, 1) ** 2 + _x(3, 0) * _x(3, 2) * 4
SO3_CASIMIR = _x(3, 0) ** 2 + _x(3, 1) ** 2 + _x(3, 2) ** 2

ZOO: dict[str, ZooEntry] = {
    e.name: e
    for e in [
        ZooEntry(
            "abelian2", "abelian algebra C^2, coadjoint (the zero representation)",
            lambda: coadjoint(abelian2()),
            Expected(0, (0, 0), (0, 0), (), 2, 2, 0, ONE2),
            (_x(2, 0), _x(2, 1)),
        ),
        ZooEntry(
            "aff1", "affine line algebra [e0,e1] = e1, coadjoint",
            lambda: coadjoint(aff1()),
            Expected(2, (), (), ((1, 1),), 0, 0, 2, _x(2, 1) ** 2),
        ),
        ZooEntry(
            "h3", "Heisenberg algebra [e0,e1] = e2, coadjoint",
            lambda: coadjoint(h3()),
            Expected(2, (0,), (0,), ((1, 1),), 1, 1, 2, _x(3, 2) ** 2),
            (_x(3, 2),),
        ),
        ZooEntry(
            "sl2", "sl(2) in the basis (e, h, f), coadjoint",
            lambda: coadjoint(sl2()),
            Expected(2, (1,), (1,), (), 2, 2, 0, ONE3),
            (SL2_CASIMIR,),
        ),
        ZooEntry(
            "so3", "so(3) with [e0,e1] = e2 and cyclic, coadjoint",
            lambda: coadjoint(so3()),
            Expected(2, (1,), (1,), (), 2, 2, 0, ONE3),
            (SO3_CASIMIR,),
        ),
        ZooEntry(
            "sl2-std", "sl(2) acting on C^2 by its standard representation",
            sl2_standard,
            Expected(2, (2,), (), (), 3, 0, 0, ONE2),
        ),
    ]
}


def get(name: str) -> ZooEntry:
    try:
        return ZOO[name]
    except KeyError:
        raise KeyError(f"unknown zoo entry {name!r}; choose from {', '.join(ZOO)}") from None
