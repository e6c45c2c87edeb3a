import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from jkinv.exactmath import BinaryForm
from jkinv.linalg import Matrix, rank
from jkinv.pencil import (ElementaryDivisorStructure, InternalConsistencyError, JordanEntry, Pencil, direct_sum,
                          elementary_divisors, horizontal_block, infinite_block, jordan_block, kernel_dims, l_hor,
                          l_vert, minimal_column_indices, minimal_polynomial_basis, minimal_row_indices,
                          mobius_eigenvalue, mobius_jordan, pencil_invariants, pencil_rank, stacked_matrix,
                          vertical_block)

H1 = Pencil.from_rows([[1, 0]], [[0, 1]])
ZERO23 = Pencil(Matrix.zeros(2, 3), Matrix.zeros(2, 3))
JORDAN2 = Pencil.from_rows([[2, 1], [0, 2]], [[1, 0], [0, 1]])


def random_invertible(rng, k):
    while True:
        M = Matrix.from_rows([[rng.randint(-5, 5) for _ in range(k)] for _ in range(k)], cols=k)
        if rank(M) == k:
            return M


def test_rank_examples():
    assert pencil_rank(H1) == 1
    assert pencil_rank(ZERO23) == 0
    assert pencil_rank(JORDAN2) == 2


def test_horizontal_block_column_indices_and_stacked_kernels():
    assert minimal_column_indices(H1) == (1,)
    S0, S1 = stacked_matrix(H1, 0), stacked_matrix(H1, 1)
    assert S0.shape == (2, 2) and rank(S0) == 2
    assert S1.shape == (3, 4) and rank(S1) == 3
    assert kernel_dims(H1, 1) == [0, 1]


def test_zero_pencil_indices():
    assert minimal_column_indices(ZERO23) == (0, 0, 0)
    assert minimal_row_indices(ZERO23) == (0, 0)


def test_regular_pencil_has_no_minimal_indices():
    assert minimal_column_indices(JORDAN2) == ()
    assert minimal_row_indices(JORDAN2) == ()


def test_vertical_block_row_indices():
    V1 = Pencil.from_rows([[1], [0]], [[0], [1]])
    assert minimal_row_indices(V1) == (1,)
    assert minimal_row_indices(H1) == ()


def test_jordan_block_eigenvalue_convention():
    J = elementary_divisors(JORDAN2)
    assert len(J.entries) == 1
    e = J.entries[0]
    # det(A + λB) = (λ + 2)²; the eigenvalue is λ₀ = 2 with rk(A - 2B) < 2
    assert e.factor == BinaryForm([-2, 1])
    assert e.eigenvalue() == 2
    assert e.sizes == (2,)
    assert rank(JORDAN2.A - JORDAN2.B.scale(2)) < 2


def test_infinite_block():
    P = Pencil.from_rows([[1, 0], [0, 1]], [[0, 1], [0, 0]])
    J = elementary_divisors(P)
    assert J.by_eigenvalue() == {"inf": (2,)}
    assert J.entries[0].is_infinite


def test_horizontal_block_has_no_jordan_part():
    assert elementary_divisors(H1).is_empty()


def test_invariants_of_examples():
    inv = pencil_invariants(H1)
    assert (inv.rank, inv.eps, inv.eta, inv.k_hor, inv.k_vert, inv.deg_D) == (1, (1,), (), 2, 0, 0)
    assert inv.size_identity_holds()
    inv = pencil_invariants(ZERO23)
    assert (inv.rank, inv.eps, inv.eta, inv.k_hor, inv.k_vert) == (0, (0, 0, 0), (0, 0), 3, 2)
    S = direct_sum([JORDAN2, H1])
    inv = pencil_invariants(S)
    assert S.shape == (3, 4)
    assert (inv.rank, inv.eps, inv.eta, inv.k_hor, inv.k_vert, inv.deg_D) == (3, (1,), (), 2, 0, 2)
    assert inv.jordan.by_eigenvalue() == {Fraction(2): (2,)}


def test_l_spaces_of_examples():
    assert len(l_hor(H1)) == 2
    assert l_hor(JORDAN2) == [] and l_vert(JORDAN2) == []
    assert len(l_hor(ZERO23)) == 3 and len(l_vert(ZERO23)) == 2


def random_pencil(rng, m, n):
    """Sum of two low-rank products, so that singular parts are common."""
    def part():
        r = rng.randint(0, min(m, n))
        U = [[rng.randint(-2, 2) for _ in range(r)] for _ in range(m)]
        V = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(r)]
        return Matrix.from_rows([[sum(U[i][k] * V[k][j] for k in range(r)) for j in range(n)] for i in range(m)],
                                cols=n)
    return Pencil(part(), part())


@settings(max_examples=40)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 10 ** 6))
def test_kernel_dims_against_explicit_stacked_systems(m, n, seed):
    P = random_pencil(random.Random(seed), m, n)
    assert kernel_dims(P, 3) == oracles.stacked_kernel_dims(P.A.tolist(), P.B.tolist(), 3)


@settings(max_examples=40)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 10 ** 6))
def test_minimal_indices_against_oracle(m, n, seed):
    P = random_pencil(random.Random(seed), m, n)
    A, B = P.A.tolist(), P.B.tolist()
    r = oracles.pencil_rank(A, B)
    assert pencil_rank(P) == r
    assert minimal_column_indices(P) == oracles.column_indices(A, B, r)
    assert minimal_row_indices(P) == oracles.row_indices(A, B, r)


@settings(max_examples=25)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_jordan_local_against_smith_and_minor_oracle(m, n, seed):
    P = random_pencil(random.Random(seed), m, n)
    local, smith = elementary_divisors(P), elementary_divisors(P, method="smith")
    assert local == smith
    ref = oracles.jordan_by_eigenvalue(P.A.tolist(), P.B.tolist())
    if ref is not None:
        assert local.by_eigenvalue() == ref
        assert all(e.degree == 1 for e in local.entries)


def test_jordan_with_irrational_factor():
    # companion of λ² - 2 gives an irreducible quadratic factor with two blocks of size 1 per root
    C = Matrix.from_rows([[0, 2], [1, 0]])
    P = direct_sum([Pencil(C, Matrix.identity(2)), Pencil(C, Matrix.identity(2)), horizontal_block(1)])
    rng = random.Random(2)
    Q = P.transform(random_invertible(rng, P.m), random_invertible(rng, P.n))
    for method in ("local", "smith"):
        J = elementary_divisors(Q, method=method)
        assert [(e.degree, e.sizes) for e in J.entries] == [(2, (1, 1))]
    assert J.size_profile() == ((1, 1), (1, 1))
    assert J.to_json()[0]["numeric_roots"]


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_planted_blocks_recovered_against_rank_oracle(seed):
    rng = random.Random(seed)
    blocks, ev_set = [], set()
    for _ in range(rng.randint(1, 4)):
        kind = rng.choice("JIHV")
        if kind == "J":
            ev = rng.randint(-2, 2)
            ev_set.add(ev)
            blocks.append(jordan_block(ev, rng.randint(1, 3)))
        elif kind == "I":
            blocks.append(infinite_block(rng.randint(1, 3)))
        elif kind == "H":
            blocks.append(horizontal_block(rng.randint(0, 2)))
        else:
            blocks.append(vertical_block(rng.randint(0, 2)))
    P = direct_sum(blocks)
    if not P.m or not P.n:
        return
    Q = P.transform(random_invertible(rng, P.m), random_invertible(rng, P.n))
    A, B = Q.A.tolist(), Q.B.tolist()
    inv = pencil_invariants(Q)
    assert inv.jordan.by_eigenvalue() == oracles.rank_jordan(A, B, sorted(ev_set))
    assert inv.eps == oracles.column_indices(A, B)
    assert inv.eta == oracles.row_indices(A, B)


@settings(max_examples=20)
@given(st.integers(1, 4), st.integers(1, 5), st.integers(0, 10 ** 6))
def test_minimal_basis_degrees_are_column_indices(m, n, seed):
    P = random_pencil(random.Random(seed), m, n)
    basis = minimal_polynomial_basis(P)
    assert tuple(sorted(len(v) - 1 for v in basis)) == minimal_column_indices(P)
    # each element is a polynomial kernel vector of A + λB
    for v in basis:
        for power in range(len(v) + 1):
            acc = [Fraction(0)] * P.m
            if power < len(v):
                acc = [a + b for a, b in zip(acc, P.A.apply(v[power]))]
            if power >= 1:
                acc = [a + b for a, b in zip(acc, P.B.apply(v[power - 1]))]
            assert not any(acc)


@settings(max_examples=20)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_l_space_dimensions(m, n, seed):
    P = random_pencil(random.Random(seed), m, n)
    inv = pencil_invariants(P)
    assert len(l_hor(P)) == inv.k_hor
    assert len(l_vert(P)) == inv.k_vert


@settings(max_examples=40)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 10 ** 6),
       st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)))
def test_recombination_moves_eigenvalues(m, n, seed, coeffs):
    al, be, ga, de = coeffs
    if al * de - be * ga == 0:
        return
    rng = random.Random(seed)
    blocks = [jordan_block(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(rng.randint(0, 2))]
    blocks += [random_pencil(rng, m, n)]
    P = direct_sum(blocks)
    before, after = pencil_invariants(P), pencil_invariants(P.recombine(al, be, ga, de))
    assert before.type_key() == after.type_key()
    assert after.jordan == mobius_jordan(before.jordan, al, be, ga, de)
    moved = {mobius_eigenvalue(ev, al, be, ga, de): s for ev, s in before.jordan.by_eigenvalue().items()}
    assert moved == after.jordan.by_eigenvalue()


def test_mobius_eigenvalue_examples():
    assert mobius_eigenvalue(Fraction(2), 1, 0, 0, 1) == 2
    assert mobius_eigenvalue(Fraction(2), 0, 1, 1, 0) == Fraction(1, 2)
    assert mobius_eigenvalue(Fraction(0), 0, 1, 1, 0) == "inf"
    assert mobius_eigenvalue("inf", 0, 1, 1, 0) == 0
    with pytest.raises(ValueError):
        mobius_jordan(ElementaryDivisorStructure(), 1, 1, 1, 1)


def test_structure_rejects_non_coprime_factors():
    f = BinaryForm([-1, 1])
    with pytest.raises(InternalConsistencyError):
        ElementaryDivisorStructure((JordanEntry(f, (1,)), JordanEntry(f, (2,))))
    with pytest.raises(InternalConsistencyError):
        ElementaryDivisorStructure((JordanEntry(f, (1, 2)),))


def test_transpose_swaps_indices():
    P = direct_sum([horizontal_block(2), vertical_block(1), jordan_block(1, 2)])
    inv, tinv = pencil_invariants(P), pencil_invariants(P.transpose())
    assert (inv.eps, inv.eta) == (tinv.eta, tinv.eps)
    assert inv.jordan == tinv.jordan


def test_pencil_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        Pencil(Matrix.zeros(2, 3), Matrix.zeros(3, 2))


def test_json_shape():
    doc = pencil_invariants(direct_sum([JORDAN2, infinite_block(1)])).to_json()
    assert doc["jordan"][0]["eigenvalue"] == "2"
    assert doc["jordan"][-1]["eigenvalue"] == "infinity"
    assert doc["deg_D"] == 3
