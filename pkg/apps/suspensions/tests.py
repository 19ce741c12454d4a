"""
Tests for Suspensions app - height intervals, exact eigenvectors, dynamic induction, ZRL
"""
import json
from fractions import Fraction
from io import StringIO

import numpy as np
import pytest
from django.core.management import CommandError, call_command

from apps.core.exceptions import (
    AmbiguousComparisonError,
    BudgetExceededError,
    NotPrimitiveError,
    NotPureError,
)
from apps.matrices.transition import RauzyPath, TransitionMatrix, path_matrix
from apps.permutations.diagram import build_diagram
from apps.permutations.permutation import LabeledPermutation, MoveKind
from apps.polynomials.roots import Comparison, compare_roots, perron_root
from apps.suspensions.eigen import eigen_data, path_eigen_data
from apps.suspensions.iet import (
    IetState,
    Side,
    induce_until_loses,
    rauzy_step_dynamic,
    replay,
)
from apps.suspensions.suspension import (
    WeakSuspensionDatum,
    height_interval,
    satisfies_clauses,
)
from apps.suspensions.zrl import (
    _merge,
    is_normalized,
    random_admissible_path,
    transitions,
    zrl_coding_successors,
    zrl_normalize,
    zrl_step,
)

GAMMA_4_1_ROOT = 1.72208380573904
GAMMA_6_2_ROOT = 1.55603019132268


def times(matrix, vector, zero):
    result = []
    for row in matrix.rows:
        total = zero
        for entry, value in zip(row, vector):
            total = total + value * entry
        result.append(total)
    return result


# ============= Height Interval Tests =============

@pytest.mark.unit
class TestHeightInterval:
    """Test the admissible heights of weak suspension data"""

    def test_genuine_suspension_contains_zero(self):
        """Test a datum with positive top sums and negative bottom sums"""
        central = LabeledPermutation.central(4)
        tau = (1, 2, -1, -2)
        interval = height_interval(central, tau)
        assert (interval.lo, interval.hi) == (-1, 1)
        assert interval.top_corner is True
        assert interval.bottom_corner is True
        assert interval.contains(0)
        assert WeakSuspensionDatum.build(central, (1, 1, 1, 1), tau).is_suspension()

    def test_zero_tau_is_empty(self):
        """Test strict inequalities fail on the zero vector"""
        interval = height_interval(LabeledPermutation.central(5), (0,) * 5)
        assert interval.is_empty
        assert not interval

    def test_failing_corner_clause(self):
        """Test a corner clause empties an otherwise open interval"""
        central = LabeledPermutation.central(3)
        tau = (1, -3, -4)
        interval = height_interval(central, tau)
        assert (interval.lo, interval.hi) == (2, 4)
        assert interval.bottom_corner is False
        assert interval.is_empty
        assert not satisfies_clauses(central, tau, 3)

    def test_interval_matches_clauses(self):
        """Test the interval is exactly the set of heights satisfying i-iv"""
        permutation = LabeledPermutation.parse('1 2 3 4 5 / 5 2 4 3 1')
        tau = (Fraction(3, 2), 1, Fraction(-1, 3), -2, -1)
        interval = height_interval(permutation, tau)
        for step in range(-24, 25):
            h = Fraction(step, 8)
            assert interval.contains(h) == satisfies_clauses(permutation, tau, h)

    def test_wrong_length(self):
        """Test a tau of the wrong size is rejected"""
        with pytest.raises(ValueError):
            height_interval(LabeledPermutation.central(4), (1, 2, 3))


# ============= Eigen Data Tests =============

@pytest.mark.unit
class TestEigenData:
    """Test exact eigenvectors and the sign normalization of tau"""

    def test_genus_two_systole(self):
        """Test theta, lambda and tau of gamma_{4,1}"""
        path = RauzyPath.gamma(4, 1)
        matrix = path_matrix(path)
        eigen = path_eigen_data(path)
        assert float(eigen.theta) == pytest.approx(GAMMA_4_1_ROOT, abs=1e-11)

        field = eigen.field
        v_lambda = times(matrix, eigen.lengths, field.zero)
        assert all(value == field.theta * length for value, length in zip(v_lambda, eigen.lengths))
        v_tau = times(matrix, eigen.tau, field.zero)
        assert all(field.theta * value == entry for value, entry in zip(v_tau, eigen.tau))

        assert all(length > 0 for length in eigen.lengths)
        assert not eigen.interval.is_empty
        assert eigen.datum(path.start).is_valid

    def test_lengths_match_floating_point(self):
        """Test normalized lengths against a numpy eigenvector"""
        path = RauzyPath.gamma(6, 2)
        matrix = path_matrix(path)
        eigen = path_eigen_data(path)
        values, vectors = np.linalg.eig(np.array(matrix.rows, dtype=float))
        top = int(np.argmax(values.real))
        expected = np.abs(vectors[:, top].real)
        expected = expected / expected.sum()
        assert eigen.normalized_lengths() == pytest.approx(list(expected), abs=1e-9)
        assert float(eigen.theta) == pytest.approx(GAMMA_6_2_ROOT, abs=1e-11)
        assert sum(eigen.normalized_lengths()) == pytest.approx(1.0)

    def test_tau_sign_is_normalized(self):
        """Test the flipped tau fails where the chosen one succeeds"""
        path = RauzyPath.gamma(6, 2)
        eigen = path_eigen_data(path)
        flipped = tuple(-value for value in eigen.tau)
        assert not eigen.interval.is_empty
        assert height_interval(path.start, flipped).is_empty

    def test_permutation_matrix_is_rejected(self):
        """Test the primitivity precondition"""
        with pytest.raises(NotPrimitiveError):
            eigen_data(TransitionMatrix.identity(4))

    def test_as_dict(self):
        """Test the display form"""
        payload = path_eigen_data(RauzyPath.gamma(4, 1)).as_dict()
        assert len(payload['lengths']) == 4
        assert payload['interval']['empty'] is False
        assert payload['theta']['root'].startswith('1.7220838057')


# ============= Dynamic Induction Tests =============

@pytest.mark.unit
class TestDynamicInduction:
    """Test Rauzy induction driven by lengths"""

    def test_type_t_when_top_is_longer(self):
        """Test the longer last letter wins"""
        state = IetState(LabeledPermutation.central(4), (1, 1, 1, 2))
        step = rauzy_step_dynamic(state)
        assert step.kind == MoveKind.RIGHT_T
        assert (step.winner, step.loser) == (4, 1)
        assert step.state.lengths == (1, 1, 1, 1)
        assert step.state.permutation == state.permutation.step('t').permutation

    def test_tie_is_ambiguous(self):
        """Test equal last lengths cannot be decided"""
        state = IetState(LabeledPermutation.central(4), (1, 1, 1, 1))
        with pytest.raises(AmbiguousComparisonError) as excinfo:
            rauzy_step_dynamic(state)
        assert excinfo.value.branches == ('t', 'b')

    def test_perron_lengths_replay_the_path(self):
        """Test the eigen-datum of gamma_{4,1} follows b b t and rescales by theta"""
        path = RauzyPath.gamma(4, 1)
        eigen = path_eigen_data(path)
        end, steps = replay(IetState(path.start, eigen.lengths), path.moves)
        assert [step.kind for step in steps] == list(path.moves)
        assert end.permutation == path.end
        mapping = path.end.symmetric().relabeling_to(path.start)
        theta = eigen.field.theta
        for label in range(1, 5):
            assert theta * end.length(label) == eigen.lengths[mapping[label] - 1]

    def test_left_step_is_conjugated_right_step(self, rng):
        """Test left induction equals s o right o s on random states"""
        diagram = build_diagram(5)
        for _ in range(50):
            permutation = rng.choice(diagram.vertices)
            lengths = tuple(Fraction(value, 7) for value in rng.sample(range(1, 1000), 5))
            state = IetState(permutation, lengths)
            left = rauzy_step_dynamic(state, Side.LEFT)
            right = rauzy_step_dynamic(state.symmetric(), Side.RIGHT)
            assert left.kind == MoveKind(right.kind.value.upper())
            assert (left.winner, left.loser) == (right.winner, right.loser)
            assert left.state.permutation == right.state.permutation.symmetric()
            assert left.state.lengths == right.state.lengths

    def test_induce_until_loses(self):
        """Test the run stops at the first loss of the letter"""
        state = IetState(LabeledPermutation.central(4), (1, 1, 1, Fraction(7, 2)))
        final, steps = induce_until_loses(state, 4, Side.RIGHT)
        assert steps[-1].loser == 4
        assert all(step.winner == 4 for step in steps[:-1])

    def test_induce_budget(self):
        """Test the step budget"""
        state = IetState(LabeledPermutation.central(4), (1, 1, 1, 100))
        with pytest.raises(BudgetExceededError):
            induce_until_loses(state, 4, Side.RIGHT, budget=3)


# ============= ZRL Tests =============

@pytest.mark.unit
class TestZrlStep:
    """Test one step of the right-left acceleration"""

    def test_central_loop_start_is_fixed(self):
        """Test gamma_{4,1} is carried to a relabeled copy of itself"""
        path = RauzyPath.gamma(4, 1)
        step, field = zrl_step(path)
        assert step.right_word == 'b^2 t'
        assert step.left_word == 'B^2 T'
        assert step.path.start.reduced() == path.start.reduced()
        assert step.path.word == 'b^2 t'
        assert step.swapped is False
        assert step.coordinates.parts == (1, 2)
        assert step.trace_line().startswith('1\tb^2 t\tB^2 T\t1 2\t-\t')

    def test_dilatation_is_preserved(self):
        """Test theta of the induced path"""
        path = RauzyPath.gamma(6, 2)
        step, _ = zrl_step(path)
        before = path_matrix(path).charpoly()
        after = path_matrix(step.path, 'symmetric').charpoly()
        assert compare_roots(perron_root(before), perron_root(after)) == Comparison.EQUAL

    def test_impure_path(self):
        """Test a path through the central permutation is refused"""
        path = RauzyPath.from_central(4, 1, 't^3')
        with pytest.raises(NotPureError):
            zrl_step(path)


@pytest.mark.unit
class TestZrlNormalize:
    """Test iteration to a central loop start"""

    def test_normalized_path_needs_no_step(self):
        """Test gamma_{4,1} is already normalized"""
        path = RauzyPath.gamma(4, 1)
        assert is_normalized(path)
        orbit = zrl_normalize(path)
        assert orbit.iterations == 0
        assert orbit.path == path

    def test_every_letter_takes_part(self):
        """Test a long orbit involves every letter as winner or loser"""
        orbit = zrl_normalize(RauzyPath.gamma(4, 1), min_iterations=4)
        assert orbit.iterations == 4
        assert orbit.letters_involved() == {1, 2, 3, 4}
        assert all(step.path.word == 'b^2 t' for step in orbit.steps)

    def test_budget(self):
        """Test the iteration budget"""
        with pytest.raises(BudgetExceededError):
            zrl_normalize(RauzyPath.gamma(4, 1), max_iterations=2, min_iterations=3)

    def test_random_paths(self, rng):
        """Test normalization of random pure paths in D_6"""
        for _ in range(3):
            path = random_admissible_path(6, rng)
            assert path is not None
            orbit = zrl_normalize(path, max_iterations=500)
            assert is_normalized(orbit.path)
            assert compare_roots(
                perron_root(path_matrix(path, 'symmetric').charpoly()),
                perron_root(path_matrix(orbit.path, 'symmetric').charpoly()),
            ) == Comparison.EQUAL


@pytest.mark.slow
class TestZrlFuzz:
    """Test ZRL on many random paths"""

    @pytest.mark.parametrize('n', [6, 7])
    def test_orbits(self, rng, n):
        """Test termination, theta, coding transitions and parity"""
        for _ in range(50):
            path = random_admissible_path(n, rng)
            assert path is not None
            orbit = zrl_normalize(path, max_iterations=2000)
            assert is_normalized(orbit.path)
            assert compare_roots(
                perron_root(path_matrix(path, 'symmetric').charpoly()),
                perron_root(path_matrix(orbit.path, 'symmetric').charpoly()),
            ) == Comparison.EQUAL
            for before, after in transitions(orbit):
                assert len(before) % 2 == len(after) % 2
                if len(before) >= 4:
                    assert after in zrl_coding_successors(before)


# ============= Coding Successor Tests =============

@pytest.mark.unit
class TestCodingSuccessors:
    """Test the coding rules of one ZRL step"""

    def test_merge(self):
        """Test zero runs disappear"""
        assert _merge((0, 3, 3, 0)) == (3, 3)
        assert _merge((2, 0, 1)) == (3,)
        assert _merge((1, 2, 3)) == (1, 2, 3)

    def test_unit_ends_collapse(self):
        """Test (1, x, .., x', 1) reaches (x+1, .., x'+1)"""
        assert (3, 3) in zrl_coding_successors((1, 2, 2, 1))
        assert (3, 1, 1, 3) in zrl_coding_successors((1, 2, 1, 1, 2, 1))

    def test_right_rule(self):
        """Test (.., n_{k-1}+1, n_k-1) with the first left rule"""
        assert (1, 2, 2, 2) in zrl_coding_successors((2, 1, 1, 3))

    def test_all_successors_sum_to_n_minus_one(self):
        """Test the rules preserve the total"""
        for parts in zrl_coding_successors((3, 1, 2, 4)):
            assert sum(parts) == 10
            assert all(part > 0 for part in parts)

    def test_central_loop_has_no_successors(self):
        """Test codings with two parts"""
        assert zrl_coding_successors((2, 3)) == set()


# ============= ZRL Command Tests =============

class TestZrlCommand:
    """Test the zrl management command"""

    def test_json(self):
        """Test a normalized path as JSON"""
        out = StringIO()
        call_command('zrl', '--n', '4', '--start-k', '1', '--word', 'b^2 t',
                     '--format', 'json', stdout=out)
        payload = json.loads(out.getvalue())
        assert payload['iterations'] == 0
        assert payload['normalized']['word'] == 'b^2 t'
        assert payload['coefficients'] == [1, -1, -1, -1, 1]

    def test_trace_and_eigen(self):
        """Test the trace lines and eigen report"""
        out = StringIO()
        call_command('zrl', '--n', '4', '--start-k', '1', '--word', 'b^2 t',
                     '--trace', '--eigen', '--no-header', stdout=out)
        text = out.getvalue()
        assert 'normalized after 0 steps' in text
        assert 'theta: 1.7220838057' in text

    def test_start_size_mismatch(self):
        """Test an explicit start of the wrong size"""
        with pytest.raises(CommandError):
            call_command('zrl', '--n', '5', '--start', '1 2 3 4 / 4 1 3 2',
                         '--word', 'b^2 t', stdout=StringIO())

    def test_impure_path_exit_code(self):
        """Test the not-pure error exit code"""
        with pytest.raises(CommandError) as excinfo:
            call_command('zrl', '--n', '4', '--start-k', '1', '--word', 't^3', stdout=StringIO())
        assert excinfo.value.returncode == NotPureError.exit_code
