"""
Tests for Spectrum app - branch-and-bound search, census, inequality suites, storage and API
"""
import json
import time
from fractions import Fraction
from io import StringIO

import pytest
from django.core.management import CommandError, call_command
from django.urls import reverse
from rest_framework import status

from apps.core.exceptions import (
    EXIT_INCOMPLETE,
    InvalidSizeError,
    OutOfRangeError,
)
from apps.matrices.transition import RauzyPath, path_matrix
from apps.permutations.diagram import build_diagram
from apps.permutations.permutation import MoveKind
from apps.permutations.words import format_word, gamma_word, k_max
from apps.polynomials.families import family_root, second_polynomial, systole_polynomial
from apps.polynomials.polynomial import IntPolynomial
from apps.polynomials.roots import Comparison, compare_roots, perron_root
from apps.spectrum.census import (
    check_symmetric_construction,
    genus,
    second_length,
    spectrum,
    stratum,
    systole,
    theoremC_table,
)
from apps.spectrum.inequalities import Suite, _Verifier, verify_inequalities
from apps.spectrum.models import SpectrumEntry, SpectrumRun
from apps.spectrum.search import SearchConfig, enumerate_admissible, search_start

N6_ROOTS = ('1.55603019132268', '1.78164359860800', '1.85118903363607', '1.94685626827188')


def roots_of(census):
    return [entry.enclosure.decimal() for entry in census]


def brute_force_roots(n, depth, bound=Fraction(2)):
    """
    Every pure path from central.t^k (first move b) of length <= depth ending
    at s(start) with primitive matrix and root < bound, without pruning
    """
    diagram = build_diagram(n)
    found = []
    for k in range(1, k_max(n) + 1):
        source = diagram.central_loop()[k]
        target = diagram.symmetric_index(source)
        stack = [(diagram.move(source, MoveKind.RIGHT_B).target, (MoveKind.RIGHT_B,))]
        while stack:
            vertex, moves = stack.pop()
            if vertex == diagram.central_index:
                continue
            if vertex == target:
                matrix = path_matrix(RauzyPath(diagram.vertices[source], moves), 'symmetric')
                polynomial = matrix.charpoly()
                if matrix.is_primitive() and polynomial.count_roots(bound, None) == 0:
                    found.append(perron_root(polynomial))
            if len(moves) < depth:
                for kind in (MoveKind.RIGHT_T, MoveKind.RIGHT_B):
                    stack.append((diagram.move(vertex, kind).target, moves + (kind,)))
    return found


# ============= Search Configuration Tests =============

@pytest.mark.unit
class TestSearchConfig:
    """Test search parameters"""

    def test_defaults(self):
        """Test bound 2 and depth 6(n-1)"""
        config = SearchConfig(n=6)
        assert config.bound == 2
        assert config.depth == 30
        assert not config.symmetric_only

    def test_minimum_depth(self):
        """Test the cap must allow gamma_{n,K_n,L_n}"""
        config = SearchConfig(n=6)
        assert config.minimum_depth == len(gamma_word(6, 2, 2))
        with pytest.raises(OutOfRangeError):
            SearchConfig(n=6, max_depth=config.minimum_depth - 1)

    def test_invalid(self):
        """Test size and bound validation"""
        with pytest.raises(InvalidSizeError):
            SearchConfig(n=3)
        with pytest.raises(OutOfRangeError):
            SearchConfig(n=4, bound=1)
        with pytest.raises(OutOfRangeError):
            SearchConfig(n=4, threads=0)

    def test_above_two_is_symmetric_only(self):
        """Test bounds above 2 are flagged"""
        assert SearchConfig(n=4, bound=Fraction(5, 2)).symmetric_only


# ============= Enumeration Tests =============

@pytest.mark.unit
class TestEnumerateAdmissible:
    """Test the branch-and-bound enumeration"""

    def test_n4(self):
        """Test every emitted path of D_4 is pure, symmetric and primitive"""
        result = enumerate_admissible(SearchConfig(n=4))
        assert result.complete
        assert result.candidates
        for candidate in result.candidates:
            path = candidate.path()
            assert path.moves[0] == MoveKind.RIGHT_B
            assert path.is_pure()
            assert path.is_symmetric
            assert path_matrix(path, 'symmetric') == candidate.matrix
            assert candidate.matrix.is_primitive()
            assert candidate.polynomial.count_roots(2, None) == 0

    def test_n6_contains_systole_path(self):
        """Test gamma_{6,2} is emitted"""
        result = enumerate_admissible(SearchConfig(n=6))
        words = {(c.k, c.word) for c in result.candidates}
        assert (2, format_word(gamma_word(6, 2))) in words

    def test_sorted_and_reciprocal(self):
        """Test candidate order and reciprocal charpolys"""
        result = enumerate_admissible(SearchConfig(n=6))
        keys = [c.sort_key() for c in result.candidates]
        assert keys == sorted(keys)
        assert all(c.polynomial.is_reciprocal() for c in result.candidates)

    def test_minimal_path_bounds_below(self):
        """Test theta(gamma) >= theta_{n,k} for every emitted path"""
        for candidate in enumerate_admissible(SearchConfig(n=6)).candidates:
            order = compare_roots(perron_root(candidate.polynomial), family_root(6, candidate.k))
            assert order != Comparison.LESS, candidate.word

    def test_pruning_loses_nothing(self):
        """Test the pruned search finds every root of an unpruned enumeration"""
        census = spectrum(SearchConfig(n=4))
        for root in brute_force_roots(4, depth=11):
            assert any(compare_roots(root, entry.enclosure) == Comparison.EQUAL for entry in census)

    def test_prunes(self):
        """Test the bounds cut the tree"""
        stats = search_start(SearchConfig(n=6), 1).stats
        assert stats.nodes > 0
        assert stats.pruned > 0

    def test_depth_cap_marks_incomplete(self):
        """Test a live branch at the cap is reported, not dropped silently"""
        config = SearchConfig(n=6, max_depth=SearchConfig(n=6).minimum_depth)
        result = enumerate_admissible(config)
        assert not result.complete
        assert result.stats.depth_capped > 0
        assert any('live branches' in warning for warning in result.warnings)

    def test_time_budget_marks_incomplete(self):
        """Test an exhausted budget is reported"""
        result = enumerate_admissible(SearchConfig(n=6, time_budget=1e-9))
        assert result.stats.timed_out
        assert not result.complete

    @pytest.mark.slow
    def test_parallel_is_deterministic(self):
        """Test two workers give the same candidates as one"""
        single = enumerate_admissible(SearchConfig(n=8, threads=1))
        pooled = enumerate_admissible(SearchConfig(n=8, threads=2))
        assert [c.sort_key() for c in single.candidates] == [c.sort_key() for c in pooled.candidates]
        assert [c.coefficients for c in single.candidates] == [c.coefficients for c in pooled.candidates]


# ============= Census Tests =============

@pytest.mark.unit
class TestCensus:
    """Test distinct dilatations"""

    def test_labels(self):
        """Test stratum and genus"""
        assert (genus(4), stratum(4)) == (2, 'H(2)')
        assert (genus(6), stratum(6)) == (3, 'H(4)')
        assert (genus(5), stratum(5)) == (2, 'H(1,1)')
        assert (genus(7), stratum(7)) == (3, 'H(2,2)')

    def test_n4(self):
        """Test genus 2 has one length"""
        census = spectrum(SearchConfig(n=4))
        assert roots_of(census) == ['1.72208380573904']

    def test_n6(self):
        """Test genus 3 has four lengths"""
        census = spectrum(SearchConfig(n=6))
        assert roots_of(census) == list(N6_ROOTS)
        assert [entry.rank for entry in census] == [1, 2, 3, 4]

    def test_entries_are_distinct(self):
        """Test pairwise different roots in increasing order"""
        entries = spectrum(SearchConfig(n=6)).entries
        for a, b in zip(entries, entries[1:]):
            assert compare_roots(a.enclosure, b.enclosure) == Comparison.LESS

    def test_representative_reproduces_root(self):
        """Test each representative path has the entry's polynomial"""
        for entry in spectrum(SearchConfig(n=6)):
            assert path_matrix(entry.path(), 'symmetric').charpoly() == entry.polynomial
            assert compare_roots(perron_root(entry.polynomial), entry.enclosure) == Comparison.EQUAL

    def test_low_bound_is_empty(self):
        """Test nothing lies below 3/2 in genus 2"""
        census = spectrum(SearchConfig(n=4, bound=Fraction(3, 2)))
        assert len(census) == 0
        assert census.complete

    def test_as_dict(self):
        """Test the documented output fields"""
        row = spectrum(SearchConfig(n=4)).as_dict()[0]
        assert row['n'] == 4
        assert row['stratum'] == 'H(2)'
        assert row['root'] == '1.72208380573904'
        assert Fraction(row['root_lo']) < Fraction(row['root_hi'])
        assert IntPolynomial(tuple(row['coefficients'])).count_roots(
            Fraction(row['root_lo']), Fraction(row['root_hi'])) >= 1
        assert set(row['representative']) == {'k', 'word'}

    def test_symmetric_construction(self):
        """Test every emitted path carries a weak suspension datum"""
        for n in (4, 5, 6):
            assert check_symmetric_construction(spectrum(SearchConfig(n=n))) > 0

    @pytest.mark.slow
    def test_symmetric_construction_n8(self):
        """Test weak suspension data up to n = 8"""
        for n in (7, 8):
            assert check_symmetric_construction(spectrum(SearchConfig(n=n))) > 0


@pytest.mark.unit
class TestSystole:
    """Test the least dilatation"""

    def test_n4(self):
        """Test genus 2"""
        result = systole(4)
        assert result.entry.enclosure.decimal() == '1.72208380573904'
        assert result.polynomial == systole_polynomial(4)
        assert result.realizing_paths >= 1
        assert result.complete

    @pytest.mark.parametrize('n', [5, 6, 7])
    def test_closed_forms(self, n):
        """Test the census minimum matches each residue class"""
        result = systole(n)
        assert compare_roots(result.entry.enclosure, perron_root(systole_polynomial(n))) == Comparison.EQUAL

    def test_n7_polynomial(self):
        """Test n = 3 mod 4 uses X^8 - 2X^6 - 4X^5 + 4X^3 + 2X^2 - 1"""
        assert systole_polynomial(7) == IntPolynomial((-1, 0, 2, 4, 0, -4, -2, 0, 1))

    @pytest.mark.slow
    def test_up_to_20(self):
        """Test every size from 4 to 20 within five minutes"""
        started = time.monotonic()
        for n in range(4, 21):
            result = systole(n)
            assert result.complete, n
            assert compare_roots(result.entry.enclosure, perron_root(systole_polynomial(n))) == Comparison.EQUAL
        assert time.monotonic() - started < 300


@pytest.mark.unit
class TestSecondLength:
    """Test the second minimum"""

    def test_out_of_range(self):
        """Test sizes outside n >= 18 even, n != 4 mod 6"""
        for n in (10, 19, 22):
            with pytest.raises(OutOfRangeError):
                second_length(n)

    @pytest.mark.slow
    def test_n18(self):
        """Test the root of X^19 - 2X^17 - 2X^12 - 2X^7 - 2X^2 + 1"""
        result = second_length(18)
        expected = IntPolynomial.from_terms({19: 1, 17: -2, 12: -2, 7: -2, 2: -2, 0: 1})
        assert second_polynomial(18) == expected
        assert compare_roots(result.entry.enclosure, perron_root(expected)) == Comparison.EQUAL


@pytest.mark.unit
class TestTable:
    """Test counts per genus"""

    def test_genus_2_and_3(self):
        """Test counts 1 and 4"""
        rows = theoremC_table(2, 3)
        assert [row.count for row in rows] == [1, 4]
        assert all(row.complete for row in rows)
        assert rows[1].as_dict()['systole'] == N6_ROOTS[0]

    def test_invalid_range(self):
        """Test genus bounds"""
        with pytest.raises(OutOfRangeError):
            theoremC_table(1, 3)

    @pytest.mark.slow
    def test_genus_4_to_6(self):
        """Test counts 11, 22 and 79"""
        rows = theoremC_table(4, 6)
        assert [row.count for row in rows] == [11, 22, 79]
        assert all(row.complete for row in rows)


# ============= Inequality Suite Tests =============

@pytest.mark.unit
class TestInequalities:
    """Test the instance-by-instance verification"""

    def test_lemmas_up_to_12(self):
        """Test every root inequality up to n = 12"""
        report = verify_inequalities(12, suites=[Suite.LEMMAS])
        assert report.passed, [str(check) for check in report.failures()]

    def test_documented_instances(self):
        """Test theta_{10,2} < theta_{10,1} and theta_{7,2,5} > 2"""
        report = verify_inequalities(12, suites=[Suite.LEMMAS])
        instances = {check.instance: check.passed for check in report.checks}
        assert instances['theta_{10,1} > theta_{10,2}']
        assert instances['theta_{7,K,L+2} > 2']
        assert instances['delta(V(gamma_{7,K,5})^2) >= 4']

    def test_even_delta_is_exact(self):
        """Test delta(V^4) equals 6 for even n, not merely bounds it"""
        report = verify_inequalities(10, suites=[Suite.LEMMAS])
        details = {check.instance: (check.passed, check.detail) for check in report.checks}
        for n, l in ((6, 4), (8, 5), (10, 6)):
            assert details[f"delta(V(gamma_{{{n},K,{l}}})^4) = 6"] == (True, 'delta = 6')

    def test_exact_delta_rejects_larger_values(self):
        """Test the equality mode fails where the bound mode passes"""
        verifier = _Verifier(10, Fraction(1, 10 ** 30), 1024)
        assert verifier._delta('comparing-matrix', 6, 4, 4, 5) is None
        assert verifier.report.checks[-1].passed
        verifier._delta('comparing-matrix', 6, 4, 4, 5, exact=True)
        assert not verifier.report.checks[-1].passed
        assert verifier.report.checks[-1].instance == 'delta(V(gamma_{6,K,4})^4) = 5'

    def test_statements_present(self):
        """Test each statement family produces instances"""
        report = verify_inequalities(12, suites=[Suite.LEMMAS])
        for statement in ('decreasing', 'compare-n', 'comparing-matrix', 'l-odd',
                          'even-nK2', '3mod4', '1mod4'):
            assert report.of(statement), statement
        assert not report.of('second')

    def test_families_and_rome(self):
        """Test closed forms, primitivity and rome charpolys up to n = 11"""
        report = verify_inequalities(11, suites=[Suite.FAMILIES, Suite.ROME])
        assert report.passed, [str(check) for check in report.failures()]
        assert report.of('rome-odd')

    def test_n_max_too_small(self):
        """Test the suite needs n_max >= 7"""
        with pytest.raises(OutOfRangeError):
            verify_inequalities(6)

    @pytest.mark.integration
    def test_zrl(self):
        """Test a few ZRL normalizations and fixed points"""
        report = verify_inequalities(7, suites=[Suite.ZRL], samples=3, seed=7)
        assert report.passed, [str(check) for check in report.failures()]
        assert report.of('fixed-point')

    @pytest.mark.slow
    def test_everything_up_to_30(self):
        """Test the whole suite up to n = 30"""
        report = verify_inequalities(30, suites=[Suite.LEMMAS, Suite.FAMILIES, Suite.ROME])
        assert report.passed, [str(check) for check in report.failures()]
        assert report.of('second')


# ============= Model Tests =============

@pytest.mark.django_db
class TestSpectrumModels:
    """Test stored runs"""

    def test_from_result(self):
        """Test a census is stored with its entries"""
        run = SpectrumRun.from_result(spectrum(SearchConfig(n=6)))
        assert run.stratum == 'H(4)'
        assert run.genus == 3
        assert run.complete
        assert [entry.root for entry in run.entries.all()] == list(N6_ROOTS)
        assert str(run) == 'n=6 H(4) < 2: 4 lengths'

    def test_entry_str(self, spectrum_run):
        """Test entry rendering"""
        entry = spectrum_run.entries.first()
        assert str(entry).startswith('#1 1.55603019132268')


# ============= API Tests =============

@pytest.mark.api
@pytest.mark.django_db
class TestSpectrumAPI:
    """Test the spectrum endpoints"""

    def test_requires_authentication(self, api_client):
        """Test anonymous access is refused"""
        response = api_client.get('/api/spectrum/runs/')
        assert response.status_code == status.HTTP_403_FORBIDDEN

    def test_list_runs(self, authenticated_client, spectrum_run):
        """Test runs with nested entries"""
        response = authenticated_client.get('/api/spectrum/runs/')
        assert response.status_code == status.HTTP_200_OK
        assert response.data['results'][0]['count'] == 2
        assert response.data['results'][0]['entries'][0]['representative'] == {'k': 2, 'word': 'b^3 t'}

    def test_filter_entries_by_n(self, authenticated_client, spectrum_run):
        """Test ?n= on entries"""
        response = authenticated_client.get('/api/spectrum/entries/', {'n': 6})
        assert response.data['count'] == 2
        assert response.data['results'][0]['stratum'] == 'H(4)'
        response = authenticated_client.get('/api/spectrum/entries/', {'n': 8})
        assert response.data['results'] == []

    def test_systole(self, authenticated_client):
        """Test the on-demand systole"""
        response = authenticated_client.get(reverse('spectrum-systole'), {'n': 4})
        assert response.status_code == status.HTTP_200_OK
        assert response.data['entry']['root'] == '1.72208380573904'
        assert response.data['complete'] is True

    def test_systole_invalid(self, authenticated_client):
        """Test bad parameters"""
        response = authenticated_client.get(reverse('spectrum-systole'), {'n': 'x'})
        assert response.status_code == status.HTTP_400_BAD_REQUEST
        response = authenticated_client.get(reverse('spectrum-systole'), {'n': 3})
        assert response.status_code == status.HTTP_400_BAD_REQUEST
        assert 'error' in response.data


# ============= Command Tests =============

@pytest.mark.integration
class TestSpectrumCommands:
    """Test the census subcommands"""

    def test_systole_text(self):
        """Test the human rendering of genus 2"""
        out = StringIO()
        call_command('systole', '--n', '4', '--no-header', stdout=out)
        text = out.getvalue()
        assert 'X^5 - 2X^3 - 2X^2 + 1' in text
        assert '1.72208380573904' in text

    def test_systole_json(self):
        """Test ascending coefficients in machine output"""
        out = StringIO()
        call_command('systole', '--n', '4', '--format', 'json', stdout=out)
        payload = json.loads(out.getvalue())
        assert payload['coefficients'] == [1, 0, -2, -2, 0, 1]
        assert payload['entry']['root'] == '1.72208380573904'

    def test_spectrum_json(self):
        """Test the schema fields"""
        out = StringIO()
        call_command('spectrum', '--n', '6', '--format', 'json', stdout=out)
        rows = json.loads(out.getvalue())
        assert [row['root'] for row in rows] == list(N6_ROOTS)
        assert {'n', 'genus', 'stratum', 'coefficients', 'root', 'root_lo', 'root_hi',
                'representative', 'log_root'} <= set(rows[0])

    def test_spectrum_csv_empty(self):
        """Test an empty census renders only the header"""
        out = StringIO()
        call_command('spectrum', '--n', '4', '--bound', '3/2', '--format', 'csv', '--no-header',
                     stdout=out, stderr=StringIO())
        assert out.getvalue().strip().splitlines() == [
            'n,genus,stratum,rank,coefficients,root,root_lo,root_hi,log_root,k,word,digest'
        ]

    def test_identical_runs_are_identical(self):
        """Test byte-identical output without the header"""
        outputs = []
        for _ in range(2):
            out = StringIO()
            call_command('spectrum', '--n', '6', '--no-header', stdout=out, stderr=StringIO())
            outputs.append(out.getvalue())
        assert outputs[0] == outputs[1]

    @pytest.mark.django_db
    def test_spectrum_save(self):
        """Test --save stores the run"""
        call_command('spectrum', '--n', '4', '--save', '--format', 'json',
                     stdout=StringIO(), stderr=StringIO())
        run = SpectrumRun.objects.get(n=4)
        assert SpectrumEntry.objects.filter(run=run).count() == 1

    def test_incomplete_exit_code(self):
        """Test a capped search exits with the incomplete code after printing"""
        out = StringIO()
        depth = str(SearchConfig(n=6).minimum_depth)
        with pytest.raises(CommandError) as excinfo:
            call_command('spectrum', '--n', '6', '--max-depth', depth, '--format', 'json',
                         stdout=out, stderr=StringIO())
        assert excinfo.value.returncode == EXIT_INCOMPLETE
        assert json.loads(out.getvalue())

    def test_table(self):
        """Test counts for genus 2 and 3"""
        out = StringIO()
        call_command('table', '--g-min', '2', '--g-max', '3', '--format', 'json', stdout=out)
        assert [row['count'] for row in json.loads(out.getvalue())] == [1, 4]

    def test_second_out_of_range(self):
        """Test the range error maps to its exit code"""
        with pytest.raises(CommandError) as excinfo:
            call_command('second', '--n', '10', stdout=StringIO())
        assert excinfo.value.returncode == OutOfRangeError.exit_code

    def test_verify(self):
        """Test a passing suite prints its counts"""
        out = StringIO()
        call_command('verify', '--suite', 'lemmas', '--n-max', '9', '--no-header', stdout=out)
        assert 'PASS  lemmas/compare-n' in out.getvalue()
        assert 'FAIL' not in out.getvalue()

    def test_verify_n_max_too_small(self):
        """Test verification below n = 7 is refused"""
        with pytest.raises(CommandError) as excinfo:
            call_command('verify', '--n-max', '6', stdout=StringIO())
        assert excinfo.value.returncode == OutOfRangeError.exit_code
