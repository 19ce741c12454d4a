"""
Tests for Polynomials app - IntPolynomial, root enclosures, Z[theta], closed forms
"""
from fractions import Fraction
from io import StringIO

import pytest
from django.core.management import CommandError, call_command
from django.urls import reverse
from rest_framework import status

from apps.core.exceptions import (
    MustReduceError,
    NoDominantRootError,
    OutOfRangeError,
    ReducibleCaseError,
)
from apps.permutations.words import k_max, l_max
from apps.polynomials.families import (
    family_P_nk,
    family_P_nKl_even,
    family_P_nKl_odd,
    family_polynomial,
    family_root,
    reduce_pair,
    second_polynomial,
    systole_polynomial,
)
from apps.polynomials.polynomial import IntPolynomial
from apps.polynomials.roots import (
    Comparison,
    RootEnclosure,
    compare_roots,
    compare_to_rational,
    dedup_roots,
    perron_root,
)
from apps.polynomials.theta import ThetaField

TOLERANCE = Fraction(1, 10 ** 11)


def poly(*descending):
    return IntPolynomial.from_descending(descending)


def close_to(enclosure, decimal):
    return abs(enclosure.midpoint - Fraction(decimal)) < TOLERANCE


# ============= IntPolynomial Tests =============

@pytest.mark.unit
class TestIntPolynomial:
    """Test exact integer polynomial arithmetic"""

    def test_parse_ascending(self):
        """Test the ascending coefficient text form"""
        p = IntPolynomial.parse("1 0 -2 -2 0 1")
        assert p.degree == 5
        assert p.descending() == (1, 0, -2, -2, 0, 1)
        assert p.ascending_str() == "1 0 -2 -2 0 1"

    def test_human_rendering(self):
        """Test descending human format"""
        assert str(poly(1, 0, -2, -2, 0, 1)) == "X^5 - 2X^3 - 2X^2 + 1"
        assert str(poly(-1, 0, 3)) == "-X^2 + 3"
        assert str(IntPolynomial()) == "0"

    def test_trailing_zeros_are_stripped(self):
        """Test normalisation of the zero polynomial and leading zeros"""
        assert IntPolynomial((1, 2, 0, 0)) == IntPolynomial((1, 2))
        assert IntPolynomial((0, 0)).is_zero
        assert IntPolynomial().degree == -1

    def test_arithmetic(self):
        """Test ring operations against hand expansion"""
        x_plus_1 = poly(1, 1)
        x_minus_1 = poly(1, -1)
        assert x_plus_1 * x_minus_1 == poly(1, 0, -1)
        assert x_plus_1 + x_minus_1 == poly(2, 0)
        assert x_plus_1 - 1 == poly(1, 0)
        assert x_plus_1 ** 3 == poly(1, 3, 3, 1)
        assert x_plus_1.shift(2) == poly(1, 1, 0, 0)

    def test_exact_division(self):
        """Test remainder-free division"""
        assert poly(1, 0, -1).exact_div(poly(1, -1)) == poly(1, 1)

    def test_inexact_division_raises(self):
        """Test a nonzero remainder is reported"""
        from apps.core.exceptions import InternalInconsistencyError
        with pytest.raises(InternalInconsistencyError):
            poly(1, 0, 1).exact_div(poly(1, -1))

    def test_sqf_part_drops_repeated_factors(self):
        """Test square-free reduction"""
        p = poly(1, 1) ** 2 * poly(1, 0, -2)
        assert p.sqf_part() == poly(1, 1) * poly(1, 0, -2)

    def test_reciprocal(self):
        """Test reciprocal and anti-reciprocal detection"""
        assert poly(1, 0, -2, -2, 0, 1).is_reciprocal()
        assert poly(1, 0, -2, 2, 0, -1).is_reciprocal()
        assert not poly(1, 0, -2).is_reciprocal()

    def test_count_roots(self):
        """Test real root counting on closed intervals"""
        p = poly(1, 0, -2)
        assert p.count_roots() == 2
        assert p.count_roots(0, None) == 1
        assert p.count_roots(Fraction(3, 2), 2) == 0


# ============= Root Enclosure Tests =============

@pytest.mark.unit
class TestPerronRoot:
    """Test certified largest-root enclosures"""

    def test_genus_two_systole(self):
        """Test the root of X^5 - 2X^3 - 2X^2 + 1"""
        root = perron_root(poly(1, 0, -2, -2, 0, 1), Fraction(1, 10 ** 14))
        assert close_to(root, '1.72208380573904')
        assert root.defining.evaluate(root.lo) * root.defining.evaluate(root.hi) < 0

    def test_genus_three_systole(self):
        """Test the root of X^7 - 2X^5 - 2X^2 + 1"""
        root = perron_root(poly(1, 0, -2, 0, 0, -2, 0, 1), Fraction(1, 10 ** 14))
        assert close_to(root, '1.55603019132268')

    def test_linear_root_is_exact(self):
        """Test X - 2 gives exactly 2"""
        root = perron_root(poly(1, -2))
        assert root.is_exact
        assert root.lo == 2

    def test_square_free_part_is_used(self):
        """Test (X + 1) and repeated factors do not break isolation"""
        base = poly(1, 0, -2, -2, 0, 1)
        root = perron_root(base * poly(1, 1) ** 2)
        assert root.defining == base * poly(1, 1)
        assert compare_roots(root, perron_root(base)) == Comparison.EQUAL

    def test_no_dominant_root(self):
        """Test polynomials without a real root above 1"""
        with pytest.raises(NoDominantRootError):
            perron_root(poly(1, 0, 1))
        with pytest.raises(NoDominantRootError):
            perron_root(poly(1, -1))

    def test_refine_narrows(self):
        """Test refinement keeps the same root"""
        root = perron_root(poly(1, 0, -2))
        fine = root.refine(Fraction(1, 10 ** 40))
        assert fine.width <= Fraction(1, 10 ** 40)
        assert root.lo <= fine.lo and fine.hi <= root.hi

    def test_decimal_rendering(self):
        """Test decimal output of sqrt(2)"""
        assert perron_root(poly(1, 0, -2)).decimal(10) == '1.4142135624'
        assert RootEnclosure.rational(2).decimal(3) == '2.000'

    def test_decimal_rounds_half_even(self):
        """Test rounding, as in 1.85118903363607 for a root 1.851189033636066..."""
        root = perron_root(IntPolynomial((1, 0, -3, 0, 0, -3, 0, 1)))
        assert root.decimal() == '1.85118903363607'
        below = RootEnclosure.rational(2 - Fraction(5, 10 ** 16))
        assert below.decimal() == '2.00000000000000'
        assert below.hi < 2
        near = RootEnclosure.rational(2 - Fraction(6, 10 ** 15))
        assert near.decimal() == '1.99999999999999'


@pytest.mark.unit
class TestCompareRoots:
    """Test exact root comparison"""

    def test_systoles_decrease(self):
        """Test theta of genus 2 exceeds theta of genus 3"""
        a = perron_root(systole_polynomial(4))
        b = perron_root(systole_polynomial(6))
        assert compare_roots(a, b) == Comparison.GREATER
        assert compare_roots(b, a) == Comparison.LESS

    def test_identical_polynomials(self):
        """Test equality of identical roots"""
        p = systole_polynomial(8)
        assert compare_roots(perron_root(p), perron_root(p)) == Comparison.EQUAL

    def test_equal_roots_of_different_polynomials(self):
        """Test equality decided through the gcd"""
        p = systole_polynomial(6)
        a = perron_root(p)
        b = perron_root(p * poly(1, 3))
        assert compare_roots(a, b) == Comparison.EQUAL

    def test_reduced_pair_has_same_root(self):
        """Test theta_{9,2} = theta_{5,1}"""
        assert compare_roots(family_root(9, 2), perron_root(family_P_nk(5, 1))) == Comparison.EQUAL

    def test_close_roots_are_separated(self):
        """Test refinement separates nearby algebraic numbers"""
        sqrt2 = perron_root(poly(1, 0, -2))
        near = perron_root(poly(10 ** 12, 0, -(2 * 10 ** 12 + 1)))
        assert compare_roots(sqrt2, near) == Comparison.LESS

    def test_compare_to_rational(self):
        """Test comparison with rationals, including exact hits"""
        sqrt2 = perron_root(poly(1, 0, -2))
        assert compare_to_rational(sqrt2, 1) == Comparison.GREATER
        assert compare_to_rational(sqrt2, Fraction(3, 2)) == Comparison.LESS
        assert compare_to_rational(perron_root(poly(1, -2)), 2) == Comparison.EQUAL

    def test_sqrt3_against_fourth_root_of_six(self):
        """Test algebraic against algebraic"""
        sqrt3 = perron_root(poly(1, 0, -3))
        root6 = perron_root(poly(1, 0, 0, 0, -6))
        assert compare_roots(sqrt3, root6) == Comparison.GREATER

    def test_dedup(self):
        """Test dedup keeps one representative per distinct root, sorted"""
        p, q = systole_polynomial(4), systole_polynomial(6)
        items = [perron_root(p), perron_root(q), perron_root(p * poly(1, 1)), perron_root(q)]
        unique = dedup_roots(items)
        assert len(unique) == 2
        assert compare_roots(unique[0], unique[1]) == Comparison.LESS
        assert unique[1].defining == p


# ============= Z[theta] Tests =============

@pytest.mark.unit
class TestThetaField:
    """Test exact arithmetic in Z[theta]"""

    @pytest.fixture
    def golden(self):
        """Z[phi] with phi the golden ratio"""
        return ThetaField(poly(1, -1, -1))

    def test_relation(self, golden):
        """Test theta^2 = theta + 1"""
        theta = golden.theta
        assert theta * theta == theta + 1

    def test_inverse(self, golden):
        """Test theta^-1 * theta = 1 and theta^-1 = theta - 1"""
        assert golden.theta_inverse * golden.theta == golden.one
        assert golden.theta_inverse == golden.theta - 1

    def test_signs(self, golden):
        """Test exact sign decisions"""
        theta = golden.theta
        assert (theta - 2).sign() == -1
        assert (theta - 1).sign() == 1
        assert theta > 1
        assert theta * 5 < 9
        assert theta * 8 > 12

    def test_reducible_modulus(self):
        """Test signs when the defining polynomial carries extra factors"""
        field = ThetaField(poly(1, -1, -1) * poly(1, 1))
        assert field.element(poly(1, 1)).sign() == 1
        assert field.element(poly(1, -1, -1)).is_zero()

    def test_non_unit_rejected(self):
        """Test theta must be an algebraic unit"""
        from apps.core.exceptions import InternalInconsistencyError
        with pytest.raises(InternalInconsistencyError):
            ThetaField(poly(1, 0, -2))


# ============= Closed Form Tests =============

@pytest.mark.unit
class TestFamilyPnk:
    """Test P_{n,k}"""

    def test_examples(self):
        """Test the documented instances"""
        assert family_P_nk(6, 2) == poly(1, 0, -2, 0, 0, -2, 0, 1)
        assert family_P_nk(12, 4) == IntPolynomial.from_terms(
            {13: 1, 11: -2, 8: -2, 5: -2, 2: -2, 0: 1}
        )
        assert family_P_nk(5, 1) == poly(1, 0, -2, -2, -2, 0, 1)

    def test_reciprocal(self):
        """Test every P_{n,k} is reciprocal"""
        for n in range(4, 21):
            for k in range(1, k_max(n) + 1):
                if reduce_pair(n, k) == (n, k):
                    assert family_P_nk(n, k).is_reciprocal(), (n, k)

    def test_must_reduce(self):
        """Test gcd(n-1, k) > 1 reports the reduced pair"""
        with pytest.raises(MustReduceError) as excinfo:
            family_P_nk(9, 2)
        assert (excinfo.value.n_prime, excinfo.value.k_prime) == (5, 1)
        with pytest.raises(MustReduceError) as excinfo:
            family_P_nk(7, 2)
        assert (excinfo.value.n_prime, excinfo.value.k_prime) == (4, 1)

    def test_out_of_range(self):
        """Test k beyond K_n"""
        with pytest.raises(OutOfRangeError):
            family_P_nk(6, 3)


@pytest.mark.unit
class TestFamilyEven:
    """Test P_{n,K_n,l} for even n"""

    def test_examples(self):
        """Test n = 6"""
        assert family_P_nKl_even(6, 2) == poly(1, 0, -2, -1, -1, -2, 0, 1)
        assert family_P_nKl_even(6, 1) == poly(1, -1, -2, -2, -2, -2, -1, 1)

    def test_last_member_closed_form(self):
        """Test l = L_n gives X^{n+1} - 2X^{n-1} - X^{n-3} - X^4 - 2X^2 + 1"""
        for n in range(4, 21, 2):
            expected = IntPolynomial.from_terms({n + 1: 1, n - 1: -2, 0: 1}) - IntPolynomial.from_terms(
                {n - 3: 1}) - IntPolynomial.from_terms({4: 1, 2: 2})
            assert family_P_nKl_even(n, l_max(n)) == expected, n

    def test_odd_n_rejected(self):
        """Test the even family refuses odd n"""
        with pytest.raises(OutOfRangeError):
            family_P_nKl_even(7, 1)


@pytest.mark.unit
class TestFamilyOdd:
    """Test P_{n,K_n,l} for n = 3 mod 4"""

    def test_example(self):
        """Test (7, 3)"""
        assert family_P_nKl_odd(7, 3) == poly(1, 0, -2, -4, 0, 4, 2, 0, -1)

    def test_first_member_division(self):
        """Test (7, 1) against the undivided numerator"""
        s7 = IntPolynomial((1, 0, -3, -2, 0, 8, 0, -2, -3, 0, 1))
        extra = IntPolynomial.from_terms({6: 2, 1: -2, 4: 2, 9: -2})
        assert family_P_nKl_odd(7, 1) * poly(1, 0, -1) == s7 + extra

    def test_last_member_is_systole(self):
        """Test l = L_n reproduces the systole polynomial"""
        for n in (7, 11, 15, 19):
            assert family_P_nKl_odd(n, l_max(n)) == systole_polynomial(n), n

    def test_even_l_is_reducible(self):
        """Test even l reports the smaller even case"""
        with pytest.raises(ReducibleCaseError) as excinfo:
            family_P_nKl_odd(7, 2)
        assert (excinfo.value.n_prime, excinfo.value.l_prime) == (4, 1)

    def test_reducible_root_follows_reduction(self):
        """Test theta_{11,K,2} = theta_{6,K,1}"""
        assert compare_roots(family_root(11, None, 2), perron_root(family_P_nKl_even(6, 1))) == Comparison.EQUAL


@pytest.mark.unit
class TestSystoleAndSecond:
    """Test the systole and second minimum closed forms"""

    def test_systole_examples(self):
        """Test one instance per residue class"""
        assert systole_polynomial(4) == poly(1, 0, -2, -2, 0, 1)
        assert systole_polynomial(7) == poly(1, 0, -2, -4, 0, 4, 2, 0, -1)
        assert systole_polynomial(5) == poly(1, 0, -2, -2, -2, 0, 1)

    def test_systole_matches_family(self):
        """Test even and 1 mod 4 systoles are P_{n,K_n}"""
        for n in range(4, 21):
            if n % 4 != 3:
                assert systole_polynomial(n) == family_P_nk(n, k_max(n)), n

    def test_second_example(self):
        """Test n = 18"""
        expected = IntPolynomial.from_terms({19: 1, 17: -2, 12: -2, 7: -2, 2: -2, 0: 1})
        assert second_polynomial(18) == expected
        assert family_P_nk(18, k_max(18) - 1) == expected

    def test_second_range(self):
        """Test the proven range is enforced"""
        for n in (16, 17, 22, 12):
            with pytest.raises(OutOfRangeError):
                second_polynomial(n)

    def test_dispatcher(self):
        """Test family_polynomial routes by parity"""
        assert family_polynomial(6) == family_P_nk(6, 2)
        assert family_polynomial(6, l=1) == family_P_nKl_even(6, 1)
        assert family_polynomial(7, l=3) == family_P_nKl_odd(7, 3)
        with pytest.raises(OutOfRangeError):
            family_polynomial(9, l=1)


# ============= API and Command Tests =============

@pytest.mark.django_db
@pytest.mark.api
class TestFamilyAPI:
    """Test /api/polynomials/family/"""

    def test_family(self, authenticated_client):
        """Test a coprime pair"""
        response = authenticated_client.get(reverse('polynomial-family'), {'n': 6, 'k': 2})
        assert response.status_code == status.HTTP_200_OK
        assert response.data['coefficients'] == [1, 0, -2, 0, 0, -2, 0, 1]
        assert response.data['root']['root'].startswith('1.556030191')

    def test_reduced_pair(self, authenticated_client):
        """Test a pair that must be reduced"""
        response = authenticated_client.get(reverse('polynomial-family'), {'n': 9, 'k': 2})
        assert response.status_code == status.HTTP_200_OK
        assert response.data['reduced_to'] == {'n_prime': 5, 'k_prime': 1}

    def test_invalid_parameters(self, authenticated_client):
        """Test validation errors"""
        response = authenticated_client.get(reverse('polynomial-family'), {'k': 2})
        assert response.status_code == status.HTTP_400_BAD_REQUEST
        response = authenticated_client.get(reverse('polynomial-family'), {'n': 9, 'l': 1})
        assert response.status_code == status.HTTP_400_BAD_REQUEST

    def test_root_error_is_bad_request(self, authenticated_client, monkeypatch):
        """Test a failing root computation answers 400"""
        def fail(*args, **kwargs):
            raise NoDominantRootError("no dominant root")

        monkeypatch.setattr('apps.polynomials.views.family_root', fail)
        response = authenticated_client.get(reverse('polynomial-family'), {'n': 9, 'k': 2})
        assert response.status_code == status.HTTP_400_BAD_REQUEST
        assert 'no dominant root' in response.data['error']

    def test_requires_authentication(self, api_client):
        """Test anonymous access is refused"""
        response = api_client.get(reverse('polynomial-family'), {'n': 6})
        assert response.status_code in (status.HTTP_401_UNAUTHORIZED, status.HTTP_403_FORBIDDEN)


class TestFamiliesCommand:
    """Test the families management command"""

    def test_text_output(self):
        """Test human output"""
        out = StringIO()
        call_command('families', '--n', '6', '--k', '2', '--no-header', stdout=out)
        assert 'X^7 - 2X^5 - 2X^2 + 1' in out.getvalue()

    def test_all_l(self):
        """Test listing a whole l-family as JSON"""
        import json
        out = StringIO()
        call_command('families', '--n', '7', '--l', '0', '--all', '--format', 'json', stdout=out)
        rows = json.loads(out.getvalue())
        assert [row['l'] for row in rows] == [1, 2, 3]
        assert rows[1]['reduced_to'] == {'n_prime': 4, 'l_prime': 1}

    def test_error_exit_code(self):
        """Test domain errors map to their exit code"""
        with pytest.raises(CommandError) as excinfo:
            call_command('families', '--n', '6', '--k', '5', stdout=StringIO())
        assert excinfo.value.returncode == OutOfRangeError.exit_code
