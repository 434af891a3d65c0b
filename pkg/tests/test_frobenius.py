import random
from fractions import Fraction

import pytest

from hilbk3 import linalg
from hilbk3.bb_lattice import delta_class, k3_lattice, q_norm
from hilbk3.cohomology import SurfaceBetti, hilbert_poincare
from hilbk3.frobenius import (
    ConstructionError,
    FrobeniusAlgebra,
    algebra_dimension_pattern,
    apply_laplacian,
    build_algebra,
    find_isotropic,
    harmonic_basis,
    laplacian_matrix,
    monomial_basis,
    quadric_element,
    random_isotropic,
    random_so_element,
    restriction_functional,
    sym_power_matrix,
)

U = ((0, 1), (1, 0))
U2 = ((0, 1, 0), (1, 0, 0), (0, 0, 2))
U4 = ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))


def test_monomial_basis_counts():
    from math import comb
    for dim in (1, 2, 3, 4):
        for deg in range(5):
            basis = monomial_basis(dim, deg)
            assert len(basis) == comb(dim + deg - 1, deg)
            assert all(sum(m) == deg for m in basis)
            assert len(set(basis)) == len(basis)


def test_laplacian_on_isotropic_power():
    # x^d is harmonic when x is isotropic: Delta picks up B(x, x) = 0
    for d in range(2, 5):
        basis = monomial_basis(2, d)
        vec = [Fraction(1) if m == (d, 0) else Fraction(0) for m in basis]
        assert all(x == 0 for x in apply_laplacian(U, 2, d, vec))


def test_quadric_is_laplacian_eigenvector():
    for gram in (U, U2, U4):
        dim = len(gram)
        q = quadric_element(gram, dim)
        image = apply_laplacian(gram, dim, 2, q)
        assert image == [Fraction(dim)]


def test_harmonic_dimensions():
    from math import comb
    for gram in (U, U2):
        dim = len(gram)
        for d in range(2, 5):
            expect = comb(dim + d - 1, d) - comb(dim + d - 3, d - 2)
            assert len(harmonic_basis(gram, dim, d)) == expect
    # low degrees: everything is harmonic
    assert len(harmonic_basis(U, 2, 0)) == 1
    assert len(harmonic_basis(U, 2, 1)) == 2


def test_dimension_pattern():
    assert algebra_dimension_pattern(2, 2) == (1, 2, 3, 2, 1)
    assert algebra_dimension_pattern(4, 3) == (1, 4, 10, 20, 10, 4, 1)
    assert algebra_dimension_pattern(23, 2) == (1, 23, 276, 23, 1)
    for dim_v in range(1, 8):
        for n in range(1, 5):
            pattern = algebra_dimension_pattern(dim_v, n)
            assert pattern[0] == 1 and pattern[-1] == 1
            assert pattern == pattern[::-1]


def test_pattern_matches_hilbert_even_betti():
    even = hilbert_poincare(SurfaceBetti.k3(), 2).betti[::2]
    assert algebra_dimension_pattern(23, 2) == even


def test_algebra_dimensions_and_checks():
    for gram, n in ((U, 1), (U, 2), (U2, 2), (U4, 2), (U4, 3)):
        alg = build_algebra(gram, n)
        dims = tuple(alg.dim(i) for i in range(2 * n + 1))
        assert dims == algebra_dimension_pattern(len(gram), n)
        assert alg.check_pairing_nondegenerate()
        assert alg.check_associative()


def test_algebra_validation():
    with pytest.raises(ValueError):
        FrobeniusAlgebra(((1, 2), (3, 4)), 2)  # not symmetric
    with pytest.raises(ValueError):
        FrobeniusAlgebra(((1, 1), (1, 1)), 2)  # degenerate
    with pytest.raises(ValueError):
        FrobeniusAlgebra(U, 0)
    with pytest.raises(ValueError):
        FrobeniusAlgebra(U, 5)  # over the table cap
    assert issubclass(ConstructionError, RuntimeError)


def test_unit_and_commutativity():
    alg = build_algebra(U2, 2)
    rng = random.Random(3)
    one = [Fraction(1)]
    for i in range(5):
        for vec in alg._unit_vectors(i):
            assert alg.multiply(0, one, i, vec) == vec
    for i in range(3):
        for j in range(3 - i):
            a = [Fraction(rng.randint(-3, 3)) for _ in range(alg.dim(i))]
            b = [Fraction(rng.randint(-3, 3)) for _ in range(alg.dim(j))]
            assert alg.multiply(i, a, j, b) == alg.multiply(j, b, i, a)


def test_multiplication_truncates_past_top():
    alg = build_algebra(U, 1)
    top = alg._unit_vectors(2)[0]
    assert alg.multiply(2, top, 2, top) == []


def test_counit_picks_top_coordinate():
    alg = build_algebra(U, 2)
    assert alg.dim(4) == 1
    assert alg.counit([Fraction(5, 3)]) == Fraction(5, 3)
    with pytest.raises(ValueError):
        alg.counit([Fraction(1), Fraction(2)])


def test_power_of_linear_isotropic_vanishing():
    for gram, n in ((U, 2), (U2, 2), (U4, 3)):
        alg = build_algebra(gram, n)
        rng = random.Random(11)
        for _ in range(5):
            alpha = random_isotropic(gram, rng)
            # powers survive exactly through degree n
            assert any(x != 0 for x in alg.power_of_linear(alpha, n))
            assert all(x == 0 for x in alg.power_of_linear(alpha, n + 1))


def test_power_of_linear_anisotropic_top():
    alg = build_algebra(U2, 2)
    alpha = [0, 0, 1]  # q(alpha) = 2
    top = alg.power_of_linear(alpha, 4)
    assert len(top) == 1 and top[0] != 0


def test_sym_power_matrix_functorial():
    rng = random.Random(13)
    g = [[Fraction(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)]
    h = [[Fraction(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)]
    for d in (2, 3):
        lhs = sym_power_matrix(linalg.mat_mul(g, h), 3, d)
        rhs = linalg.mat_mul(sym_power_matrix(g, 3, d), sym_power_matrix(h, 3, d))
        assert lhs == rhs
    assert sym_power_matrix(linalg.identity(3), 3, 2) == linalg.identity(6)


def test_so_elements_preserve_form_and_products():
    gram = U2
    alg = build_algebra(gram, 2)
    rng = random.Random(17)
    g = random_so_element(gram, rng)
    gm = [list(map(Fraction, row)) for row in gram]
    assert linalg.mat_mul(linalg.transpose(g), linalg.mat_mul(gm, g)) == gm
    assert linalg.det(g) == 1

    def transform(i, coords):
        lifted = alg._lift(i, coords)
        moved = linalg.mat_vec(sym_power_matrix(g, 3, i), lifted)
        return alg.reduce(i, moved)

    for i in range(3):
        for j in range(3 - i):
            a = [Fraction(rng.randint(-2, 2)) for _ in range(alg.dim(i))]
            b = [Fraction(rng.randint(-2, 2)) for _ in range(alg.dim(j))]
            lhs = transform(i + j, alg.multiply(i, a, j, b))
            rhs = alg.multiply(i, transform(i, a), j, transform(j, b))
            assert lhs == rhs


def test_restriction_functional_structure():
    lat = k3_lattice(3, U4)
    f = restriction_functional(lat)
    assert f.covariant
    rows = f.rows()
    full = lat.full_gram()
    d = lat.dim_v
    for i in range(d):
        for j in range(d):
            assert rows[i][j] == full[i][j]
        assert rows[i][d] == 0 and rows[d][i] == 0
    # the delta square cancels: -2(n-1) + 2(n-1) = 0
    assert rows[d][d] == 0
    delta = delta_class(lat)
    assert q_norm(lat, delta) == -4


def test_find_isotropic():
    assert find_isotropic(((1, 0), (0, 1))) is None
    v = find_isotropic(U)
    assert v is not None and any(x != 0 for x in v)
    assert sum(v[i] * U[i][j] * v[j] for i in range(2) for j in range(2)) == 0
    with pytest.raises(ValueError):
        random_isotropic(((1, 0), (0, 1)), random.Random(0))


def test_random_isotropic_is_isotropic_and_nonzero():
    rng = random.Random(19)
    for gram in (U, U2, U4):
        dim = len(gram)
        for _ in range(10):
            v = random_isotropic(gram, rng)
            assert any(x != 0 for x in v)
            q = sum(v[i] * gram[i][j] * v[j] for i in range(dim) for j in range(dim))
            assert q == 0
