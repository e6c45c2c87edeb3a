import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from jkinv import zoo
from jkinv.linalg import Matrix
from jkinv.liealg import (InvalidAlgebra, LieAlgebra, Representation, adjoint, coadjoint, r_operator, regular_dims,
                          stabilizer, symbolic_r_operator, validate, validate_rep, zero_representation)

SL2 = [(0, 1, 0, -2), (0, 2, 1, 1), (1, 2, 2, -2)]


def test_abelian_algebra_is_valid():
    alg = LieAlgebra(3)
    assert validate(alg) is None
    assert alg.is_abelian()


def test_sl2_is_valid():
    assert validate(LieAlgebra(3, SL2)) is None


def test_rescaled_sl2_bracket_still_satisfies_jacobi():
    # [e,f] = 2h is a rescaling of sl2, so no violation is reported; the brute-force residual agrees
    brackets = [(0, 1, 0, -2), (0, 2, 1, 2), (1, 2, 2, -2)]
    assert validate(LieAlgebra(3, brackets, check=False)) is None
    assert not any(any(r) for r in oracles.jacobi_residuals(3, brackets).values())


def test_corrupted_bracket_reports_jacobi_violation():
    brackets = [(0, 1, 0, -2), (0, 2, 1, 1), (1, 2, 2, 1)]
    v = validate(LieAlgebra(3, brackets, check=False))
    assert v is not None and v.kind == "jacobi"
    assert v.residual == oracles.jacobi_residuals(3, brackets)[v.indices]
    assert any(v.residual)
    with pytest.raises(InvalidAlgebra) as info:
        LieAlgebra(3, brackets)
    assert info.value.violation.indices == (0, 1, 2)


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2)),
                max_size=5))
def test_jacobi_validation_matches_brute_force(entries):
    entries = [e for e in entries if e[0] != e[1]]
    alg = LieAlgebra(4, entries, check=False)
    normalized = [(i, j, k, c) for i, j, k, c in alg.structure()]
    residuals = oracles.jacobi_residuals(4, normalized)
    assert (validate(alg) is None) == (not any(any(r) for r in residuals.values()))


def test_antisymmetry_normalization():
    alg = LieAlgebra(2, [(1, 0, 1, -1)])
    assert alg.c(0, 1, 1) == 1 and alg.c(1, 0, 1) == -1
    with pytest.raises(ValueError):
        LieAlgebra(2, [(0, 0, 1, 1)])
    with pytest.raises(ValueError):
        LieAlgebra(2, [(0, 2, 1, 1)])


def test_json_round_trip():
    alg = LieAlgebra(3, SL2)
    assert LieAlgebra.from_json(alg.to_json()).structure() == alg.structure()


def test_abelian_adjoint_is_zero():
    rep = adjoint(LieAlgebra(2))
    assert all(M.is_zero() for M in rep.matrices)


@pytest.mark.parametrize("name", list(zoo.ZOO))
def test_adjoint_and_coadjoint_are_representations(name):
    alg = zoo.get(name).algebra()
    assert validate_rep(adjoint(alg)) is None
    assert validate_rep(coadjoint(alg)) is None


def test_broken_representation_rejected():
    alg = LieAlgebra(3, SL2)
    e = Matrix.from_rows([[0, 1], [0, 0]])
    h = Matrix.from_rows([[1, 0], [0, 1]])
    f = Matrix.from_rows([[0, 0], [1, 0]])
    with pytest.raises(InvalidAlgebra):
        Representation(alg, [e, h, f])
    assert validate_rep(Representation(alg, [e, h, f], check=False)).kind != "jacobi"


@pytest.mark.parametrize("name", [n for n, e in zoo.ZOO.items() if e.is_coadjoint])
def test_coadjoint_r_operator_is_skew(name):
    rep = zoo.get(name).representation()
    rng = random.Random(1)
    x = [Fraction(rng.randint(-9, 9)) for _ in range(rep.dimV)]
    R = r_operator(rep, x).tolist()
    assert all(R[i][j] == -R[j][i] for i in range(len(R)) for j in range(len(R)))
    # entries are ±<x, [e_i, e_j]>
    alg = rep.algebra
    for i in range(alg.dim):
        for j in range(alg.dim):
            pairing = sum(c * xv for c, xv in zip(alg.bracket_basis(i, j), x))
            assert abs(R[i][j]) == abs(pairing)


def test_r_operator_examples():
    rep = zoo.sl2_standard()
    assert r_operator(rep, [0, 0]).is_zero()
    assert oracles.rank(r_operator(rep, [1, 0]).tolist()) == 2
    sym = symbolic_r_operator(rep)
    assert len(sym) == 2 and len(sym[0]) == 3


def test_stabilizer_examples():
    alg = LieAlgebra(3, SL2)
    assert len(stabilizer(zero_representation(alg, 2), [1, 1])) == 3
    assert len(stabilizer(coadjoint(alg), [1, 1, 1])) == 1
    st_ = stabilizer(zoo.sl2_standard(), [1, 0])
    assert st_ == [(Fraction(1), Fraction(0), Fraction(0))]


@pytest.mark.parametrize("name,expected", [("sl2", (2, 1, 1)), ("h3", (2, 1, 1)), ("abelian2", (0, 2, 2)),
                                           ("sl2-std", (2, 1, 0)), ("aff1", (2, 0, 0))])
def test_regular_dims(name, expected):
    rep = zoo.get(name).representation()
    data = regular_dims(rep)
    assert (data.rank, data.dim_st, data.codim_orbit) == expected
    assert data.consistent and not data.escalated
    # the witness attains the rank, checked by plain elimination
    assert oracles.rank(r_operator(rep, data.witness).tolist()) == data.rank


def test_zero_representation_of_zero_dimensional_space():
    rep = zero_representation(LieAlgebra(2), 0)
    assert rep.dimV == 0
    assert (regular_dims(rep).dim_st, regular_dims(rep).codim_orbit) == (2, 0)


def test_representation_from_json_derived():
    alg = LieAlgebra(3, SL2)
    rep = Representation.from_json(alg, {"derived": "coadjoint"})
    assert rep.matrices == coadjoint(alg).matrices
    with pytest.raises(ValueError):
        Representation.from_json(alg, {"derived": "spin"})
