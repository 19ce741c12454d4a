"""
Tests for Matrices app - transvections, path matrices, primitivity, rome method, closed forms
"""
import json
from io import StringIO
from math import gcd

import numpy as np
import pytest
from django.core.management import call_command

from apps.core.exceptions import (
    InvalidTransvectionError,
    MembershipError,
    NotARomeError,
    NotCandidatePathError,
)
from apps.matrices.closed_forms import (
    A_odd,
    V_nk,
    V_nKL2_even,
    V_nKL2_odd,
    V_nKl_even,
    V_nKl_odd,
)
from apps.matrices.rome import is_rome, rome_charpoly
from apps.matrices.transition import (
    RauzyPath,
    TransitionMatrix,
    charpoly_exact,
    elementary_matrix,
    is_primitive,
    path_matrix,
    tilde_matrix,
)
from apps.permutations.words import k_max, l_max
from apps.polynomials.families import (
    family_P_nk,
    family_P_nKl_even,
    family_P_nKl_odd,
)
from apps.polynomials.polynomial import IntPolynomial
from apps.polynomials.roots import Comparison, compare_roots, perron_root

X_PLUS_1 = IntPolynomial((1, 1))


def coprime_pairs(n_max):
    for n in range(4, n_max + 1):
        for k in range(1, k_max(n) + 1):
            if gcd(n - 1, k) == 1:
                yield n, k


# ============= TransitionMatrix Tests =============

@pytest.mark.unit
class TestTransitionMatrix:
    """Test the matrix value type"""

    def test_parse_and_render(self):
        """Test the row-major text form"""
        matrix = TransitionMatrix.parse("1 2\n0 1\n")
        assert matrix.rows == ((1, 2), (0, 1))
        assert str(matrix) == "1 2\n0 1"
        assert matrix.entry(1, 2) == 2

    def test_products_and_powers(self):
        """Test exact products through DomainMatrix"""
        matrix = TransitionMatrix(((1, 1), (1, 0)))
        assert (matrix ** 5).rows == ((8, 5), (5, 3))
        assert (matrix @ matrix).rows == ((2, 1), (1, 1))
        assert matrix.det() == -1

    def test_identity_charpoly(self):
        """Test charpoly of the identity is (X - 1)^3"""
        assert charpoly_exact(TransitionMatrix.identity(3)) == IntPolynomial((-1, 1)) ** 3

    def test_min_column_sum(self):
        """Test delta"""
        assert TransitionMatrix.identity(5).min_column_sum() == 1
        assert TransitionMatrix(((2, 0), (1, 3))).min_column_sum() == 3

    def test_digest_is_stable(self):
        """Test equal matrices share a digest"""
        a = TransitionMatrix(((1, 2), (3, 4)))
        b = TransitionMatrix.parse("1 2\n3 4")
        assert a.digest == b.digest
        assert a.digest != TransitionMatrix.identity(2).digest


@pytest.mark.unit
class TestElementaryMatrix:
    """Test transvections"""

    def test_single_entry(self):
        """Test I + E_{4,1}"""
        matrix = elementary_matrix(4, 1, 4)
        expected = np.eye(4, dtype=int)
        expected[3, 0] = 1
        assert np.array_equal(np.array(matrix.rows), expected)
        assert matrix.det() == 1

    def test_winner_equals_loser(self):
        """Test the degenerate transvection is refused"""
        with pytest.raises(InvalidTransvectionError):
            elementary_matrix(2, 2, 4)

    def test_gamma_4_1_product(self):
        """Test the product of the three transvections of gamma_{4,1}"""
        path = RauzyPath.gamma(4, 1)
        product = TransitionMatrix.identity(4)
        for step in path.steps:
            product = product @ elementary_matrix(step.winner, step.loser, 4)
        assert product == tilde_matrix(path)
        assert np.all(np.array(product.rows) >= np.eye(4, dtype=int))

    def test_transvected_is_right_product(self):
        """Test the in-place column update used by the search"""
        path = RauzyPath.gamma(6, 2)
        product = TransitionMatrix.identity(6)
        for step in path.steps:
            product = product.transvected(step.winner, step.loser)
        assert product == tilde_matrix(path)


# ============= RauzyPath Tests =============

@pytest.mark.unit
class TestRauzyPath:
    """Test labeled paths"""

    def test_gamma_4_1(self):
        """Test the genus 2 systole path"""
        path = RauzyPath.gamma(4, 1)
        assert str(path.start) == "1 2 3 4 / 4 1 3 2"
        assert path.word == "b^2 t"
        assert str(path.end) == "1 2 3 4 / 4 2 1 3"
        assert path.winners == (2, 2, 4)
        assert path.losers == (4, 3, 2)
        assert path.case() == 'symmetric'
        assert path.is_pure()

    def test_gamma_6_2_4_is_gamma_6_2_with_end_loop(self):
        """Test loop insertion reproduces gamma_{6,2,4}"""
        assert RauzyPath.gamma(6, 2).insert_loop(4, 'b^2') == RauzyPath.gamma(6, 2, 4)

    def test_insert_open_word_refused(self):
        """Test a non closed word cannot be inserted"""
        with pytest.raises(MembershipError):
            RauzyPath.gamma(4, 1).insert_loop(0, 't')

    def test_central_visit_is_impure(self):
        """Test a path through the central permutation"""
        path = RauzyPath.from_central(4, 0, 't')
        assert not path.is_pure()


# ============= Path Matrix Tests =============

@pytest.mark.unit
class TestPathMatrix:
    """Test V = V~ P"""

    def test_gamma_4_1(self):
        """Test the matrix and charpoly of gamma_{4,1}"""
        matrix = path_matrix(RauzyPath.gamma(4, 1))
        assert matrix.rows == ((0, 1, 0, 0), (1, 0, 2, 1), (1, 0, 0, 0), (0, 0, 1, 1))
        assert matrix.charpoly() == IntPolynomial.from_descending((1, -1, -1, -1, 1))
        assert X_PLUS_1 * matrix.charpoly() == family_P_nk(4, 1)

    def test_gamma_6_2(self):
        """Test (X + 1) charpoly of gamma_{6,2}"""
        matrix = path_matrix(RauzyPath.gamma(6, 2))
        assert X_PLUS_1 * matrix.charpoly() == IntPolynomial.from_descending((1, 0, -2, 0, 0, -2, 0, 1))

    def test_gamma_6_2_4(self):
        """Test the path realising X^7 - 3X^5 - 3X^2 + 1"""
        matrix = path_matrix(RauzyPath.gamma(6, 2, 4))
        assert X_PLUS_1 * matrix.charpoly() == IntPolynomial.from_descending((1, 0, -3, 0, 0, -3, 0, 1))

    def test_empty_path_is_identity(self):
        """Test an empty closed path"""
        start = RauzyPath.central_start(5, 2)
        assert path_matrix(RauzyPath(start, ())) == TransitionMatrix.identity(5)

    def test_closed_case(self):
        """Test a closed loop at the start"""
        path = RauzyPath.from_central(4, 1, 'b^2')
        assert path.case() == 'closed'
        assert path_matrix(path) == tilde_matrix(path)

    def test_not_a_candidate(self):
        """Test a path ending elsewhere"""
        with pytest.raises(NotCandidatePathError):
            path_matrix(RauzyPath.from_central(4, 1, 'b'))
        with pytest.raises(NotCandidatePathError):
            path_matrix(RauzyPath.gamma(4, 1), case='closed')

    def test_determinant_and_reciprocity(self):
        """Test det = +/-1 and reciprocal charpolys"""
        for n, k in coprime_pairs(10):
            matrix = path_matrix(RauzyPath.gamma(n, k))
            assert matrix.det() in (1, -1), (n, k)
            assert matrix.charpoly().is_reciprocal(), (n, k)

    def test_subpath_monotonicity(self):
        """Test inserting a loop grows the matrix entrywise and the root strictly"""
        short = path_matrix(RauzyPath.gamma(6, 2))
        long = path_matrix(RauzyPath.gamma(6, 2).insert_loop(4, 'b^2'))
        assert np.all(np.array(long.rows) >= np.array(short.rows))
        assert long.is_primitive()
        assert compare_roots(perron_root(long.charpoly()), perron_root(short.charpoly())) == Comparison.GREATER

    def test_matches_numpy_spectral_radius(self):
        """Test the certified root against floating point"""
        matrix = path_matrix(RauzyPath.gamma(8, 3))
        radius = max(abs(np.linalg.eigvals(np.array(matrix.rows, dtype=float))))
        assert abs(float(perron_root(matrix.charpoly())) - radius) < 1e-9


# ============= Primitivity Tests =============

@pytest.mark.unit
class TestPrimitivity:
    """Test the support-squaring primitivity check"""

    def test_examples(self):
        """Test documented instances"""
        assert is_primitive(path_matrix(RauzyPath.gamma(4, 1)))
        assert not is_primitive(path_matrix(RauzyPath.gamma(7, 2)))
        assert is_primitive(path_matrix(RauzyPath.gamma(7, 2, 3)))

    def test_permutation_matrix(self):
        """Test a permutation matrix is never primitive"""
        assert not is_primitive(TransitionMatrix(((0, 1), (1, 0))))
        assert is_primitive(TransitionMatrix(((1, 1), (1, 0))))

    def test_gamma_nK_pattern(self):
        """Test V(gamma_{n,K_n}) is primitive unless n = 3 mod 4"""
        for n in range(4, 20):
            primitive = is_primitive(path_matrix(RauzyPath.gamma(n, k_max(n))))
            assert primitive == (n % 4 != 3), n

    def test_gamma_nKl_pattern(self):
        """Test V(gamma_{n,K_n,l}) is primitive iff l is odd for n = 3 mod 4"""
        for n in (7, 11, 15, 19):
            for l in range(1, l_max(n) + 1):
                primitive = is_primitive(path_matrix(RauzyPath.gamma(n, k_max(n), l)))
                assert primitive == (l % 2 == 1), (n, l)


# ============= Family Equivalence Tests =============

@pytest.mark.unit
class TestFamilyEquivalence:
    """Test (X + 1) charpoly of the extremal paths against the closed forms"""

    def test_gamma_nk(self):
        """Test P_{n,k} for 4 <= n <= 14"""
        for n, k in coprime_pairs(14):
            charpoly = path_matrix(RauzyPath.gamma(n, k)).charpoly()
            assert X_PLUS_1 * charpoly == family_P_nk(n, k), (n, k)

    def test_gamma_nKl_even(self):
        """Test the even l-family for n <= 14"""
        for n in range(4, 15, 2):
            for l in range(1, l_max(n) + 1):
                charpoly = path_matrix(RauzyPath.gamma(n, k_max(n), l)).charpoly()
                assert X_PLUS_1 * charpoly == family_P_nKl_even(n, l), (n, l)

    def test_gamma_nKl_odd(self):
        """Test the odd l-family for n in {7, 11}"""
        for n in (7, 11):
            for l in range(1, l_max(n) + 1, 2):
                charpoly = path_matrix(RauzyPath.gamma(n, k_max(n), l)).charpoly()
                assert X_PLUS_1 * charpoly == family_P_nKl_odd(n, l), (n, l)


# ============= Closed Form Tests =============

@pytest.mark.unit
class TestClosedForms:
    """Test the closed-form matrices against path-built ones"""

    def test_V_nk_examples(self):
        """Test the displayed small cases"""
        assert V_nk(6, 2).rows[0] == (0, 2, 1, 0, 1, 1)
        assert V_nk(6, 2).rows[5] == (0, 1, 0, 0, 0, 1)
        assert V_nk(5, 1).charpoly() == path_matrix(RauzyPath.gamma(5, 1)).charpoly()

    def test_V_nk(self):
        """Test A_n - B_{n,k} up to n = 14"""
        for n, k in coprime_pairs(14):
            assert V_nk(n, k).charpoly() == path_matrix(RauzyPath.gamma(n, k)).charpoly(), (n, k)

    def test_V_nKl_even(self):
        """Test V_{n,K_n} + C_{n,l} up to n = 14"""
        for n in range(4, 15, 2):
            for l in range(1, l_max(n) + 1):
                expected = path_matrix(RauzyPath.gamma(n, k_max(n), l)).charpoly()
                assert V_nKl_even(n, l).charpoly() == expected, (n, l)

    def test_V_nKL2_even(self):
        """Test V_{n,K_n} + B_n up to n = 14"""
        for n in range(6, 15, 2):
            expected = path_matrix(RauzyPath.gamma(n, k_max(n), l_max(n) + 2)).charpoly()
            assert V_nKL2_even(n).charpoly() == expected, n

    def test_odd_block(self):
        """Test A_n and its odd-l modifications for n in {7, 11}"""
        for n in (7, 11):
            K = k_max(n)
            assert A_odd(n).charpoly() == path_matrix(RauzyPath.gamma(n, K)).charpoly(), n
            for l in range(1, l_max(n) + 1, 2):
                expected = path_matrix(RauzyPath.gamma(n, K, l)).charpoly()
                assert V_nKl_odd(n, l).charpoly() == expected, (n, l)

    def test_odd_L2_block(self):
        """Test the block matrix at l = L_n + 2"""
        assert V_nKL2_odd(7) == path_matrix(RauzyPath.gamma(7, 2, 5))
        assert V_nKL2_odd(7).rows[2] == (2, 2, 0, 0, 2, 3, 2)
        expected = path_matrix(RauzyPath.gamma(11, 4, 7)).charpoly()
        assert V_nKL2_odd(11).charpoly() == expected

    def test_delta_bounds(self):
        """Test the column-sum bounds behind theta > 2 and theta > 6^(1/4)"""
        for n in (7, 11, 15, 19):
            matrix = path_matrix(RauzyPath.gamma(n, k_max(n), l_max(n) + 2))
            assert (matrix ** 2).min_column_sum() >= 4, n
        for n in range(6, 13, 2):
            matrix = path_matrix(RauzyPath.gamma(n, k_max(n), l_max(n) + 2))
            assert (matrix ** 4).min_column_sum() == 6, n


# ============= Rome Tests =============

@pytest.mark.unit
class TestRomeMethod:
    """Test characteristic polynomials through a rome"""

    def test_full_vertex_set(self):
        """Test the trivial rome"""
        matrix = path_matrix(RauzyPath.gamma(6, 2, 1))
        assert rome_charpoly(matrix, range(1, 7)) == matrix.charpoly()

    def test_V_nk(self):
        """Test R = {1, n} on V_{n,k}"""
        for n, k in coprime_pairs(12):
            matrix = V_nk(n, k)
            assert is_rome(matrix, [1, n])
            assert rome_charpoly(matrix, [1, n]) == matrix.charpoly(), (n, k)

    def test_odd_family(self):
        """Test R = {n, n-1, m} on V_{n,K_n,l}"""
        for n in (7, 11):
            m = k_max(n) + 1
            for l in range(1, l_max(n) + 1, 2):
                matrix = V_nKl_odd(n, l)
                assert rome_charpoly(matrix, [n, n - 1, m]) == matrix.charpoly(), (n, l)

    def test_not_a_rome(self):
        """Test a set missing the self loop at n"""
        with pytest.raises(NotARomeError):
            rome_charpoly(V_nk(6, 2), [1])


# ============= Command Tests =============

class TestCharpolyCommand:
    """Test the charpoly management command"""

    def test_json(self):
        """Test JSON output for gamma_{4,1}"""
        out = StringIO()
        call_command('charpoly', '--n', '4', '--start-k', '1', '--word', 'b^2 t',
                     '--rome', '1,4', '--format', 'json', stdout=out)
        result = json.loads(out.getvalue())
        assert result['coefficients'] == [1, -1, -1, -1, 1]
        assert result['primitive'] is True
        assert result['case'] == 'symmetric'
        assert result['root'].startswith('1.722083805')

    def test_text(self):
        """Test human output"""
        out = StringIO()
        call_command('charpoly', '--n', '6', '--start-k', '2', '--word', 'b^3 t', '--no-header', stdout=out)
        assert 'charpoly: X^6 - X^5 - X^4 + X^3 - X^2 - X + 1' in out.getvalue()
