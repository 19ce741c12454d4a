"""
Tests for Permutations app - labeled permutations, Rauzy moves, words and diagrams
"""
import json
from io import StringIO

import networkx as nx
import pytest
from django.core.management import call_command

from apps.core.exceptions import (
    InvalidPermutationError,
    InvalidSizeError,
    InvalidWordError,
    MembershipError,
    OutOfRangeError,
    UndefinedMoveError,
)
from apps.permutations.diagram import (
    PathCoordinates,
    build_diagram,
    coordinates,
    permutation_from_coordinates,
)
from apps.permutations.permutation import LabeledPermutation, MoveKind, rauzy_move, symmetric
from apps.permutations.words import format_word, gamma_word, k_max, l_max, parse_word, runs

t, b = MoveKind.RIGHT_T, MoveKind.RIGHT_B


def perm(text):
    return LabeledPermutation.parse(text)


# ============= LabeledPermutation Tests =============

@pytest.mark.unit
class TestLabeledPermutation:
    """Test the two-row value type"""

    def test_central(self):
        """Test the fully reversing permutation"""
        central = LabeledPermutation.central(4)
        assert central.top == (1, 2, 3, 4)
        assert central.bottom == (4, 3, 2, 1)
        assert str(central) == '1 2 3 4 / 4 3 2 1'

    def test_parse(self):
        """Test slash and two-line forms"""
        assert perm('1 2 3 / 3 2 1') == LabeledPermutation.central(3)
        assert perm('1 2 3\n3 2 1') == LabeledPermutation.central(3)

    def test_invalid(self):
        """Test malformed rows"""
        with pytest.raises(InvalidPermutationError):
            perm('1 2 3 / 3 2 2')
        with pytest.raises(InvalidPermutationError):
            perm('1 2 3 / 2 1')
        with pytest.raises(InvalidPermutationError):
            perm('1 2 x / 2 1 3')
        with pytest.raises(InvalidSizeError):
            LabeledPermutation((1,), (1,))

    def test_reduced_ignores_labels(self):
        """Test relabeled permutations share their reduced form"""
        p = perm('1 4 2 3 / 4 3 2 1')
        q = p.relabeled({1: 2, 2: 3, 3: 4, 4: 1})
        assert p != q
        assert p.reduced() == q.reduced()
        assert q.relabeled(q.relabeling_to(p)) == p

    def test_relabeling_needs_same_shape(self):
        """Test different reduced permutations cannot be relabeled"""
        with pytest.raises(InvalidPermutationError):
            perm('1 2 3 / 3 2 1').relabeling_to(perm('1 2 3 / 3 1 2'))

    def test_symmetric(self):
        """Test the involution"""
        central = LabeledPermutation.central(5)
        assert symmetric(central) == central
        p = perm('1 2 3 4 / 4 1 3 2')
        assert p.symmetric() == perm('2 3 1 4 / 4 3 2 1')
        assert p.symmetric().symmetric() == p

    def test_swapped(self):
        """Test row exchange"""
        assert perm('1 2 3 / 3 1 2').swapped() == perm('3 1 2 / 1 2 3')


# ============= Rauzy Move Tests =============

@pytest.mark.unit
class TestRauzyMoves:
    """Test right and left moves"""

    def test_right_t(self):
        """Test the top row wins"""
        step = LabeledPermutation.central(4).right_step(t)
        assert step.permutation == perm('1 2 3 4 / 4 1 3 2')
        assert (step.winner, step.loser) == (4, 1)

    def test_right_b(self):
        """Test the bottom row wins"""
        step = LabeledPermutation.central(4).right_step(b)
        assert step.permutation == perm('1 4 2 3 / 4 3 2 1')
        assert (step.winner, step.loser) == (1, 4)

    def test_central_t_loop(self):
        """Test t^(n-1) returns to the central permutation"""
        p = LabeledPermutation.central(6)
        for _ in range(5):
            p = p.right_step(t).permutation
        assert p == LabeledPermutation.central(6)

    def test_undefined(self):
        """Test rows ending with the same letter"""
        with pytest.raises(UndefinedMoveError):
            perm('2 1 / 2 1').right_step(t)

    def test_left_is_conjugated(self):
        """Test left moves through the symmetric involution"""
        step = rauzy_move(LabeledPermutation.central(4), 'T')
        assert step.permutation == perm('2 3 1 4 / 4 3 2 1')
        assert (step.winner, step.loser) == (4, 1)

    def test_move_kind(self):
        """Test move helpers"""
        assert MoveKind.LEFT_B.is_left
        assert not t.is_left
        assert MoveKind.LEFT_T.right_part == t
        assert t.opposite == b
        assert MoveKind.LEFT_B.opposite == MoveKind.LEFT_T


# ============= Word Tests =============

@pytest.mark.unit
class TestWords:
    """Test move words and extremal paths"""

    def test_parse(self):
        """Test spelled and run-length words"""
        assert parse_word('b^2 t') == (b, b, t)
        assert parse_word('bbt') == (b, b, t)
        assert parse_word('') == ()
        assert parse_word('tB') == (t, MoveKind.LEFT_B)

    def test_format(self):
        """Test run-length rendering"""
        assert format_word((b, b, t)) == 'b^2 t'
        assert format_word((b, b, t), run_length=False) == 'bbt'
        assert format_word(()) == ''
        assert runs((b, b, t)) == [(b, 2), (t, 1)]

    def test_invalid(self):
        """Test foreign letters"""
        with pytest.raises(InvalidWordError):
            parse_word('b^2 x')

    @pytest.mark.parametrize('n,K,L', [(4, 1, 1), (5, 1, 2), (6, 2, 2), (7, 2, 3), (10, 4, 4)])
    def test_constants(self, n, K, L):
        """Test K_n and L_n"""
        assert (k_max(n), l_max(n)) == (K, L)

    def test_gamma(self):
        """Test the named paths"""
        assert format_word(gamma_word(4, 1)) == 'b^2 t'
        assert format_word(gamma_word(6, 2)) == 'b^3 t'
        assert format_word(gamma_word(6, 2, 2)) == 'b^2 t b t'
        assert format_word(gamma_word(6, 2, 3)) == 'b^6 t'

    def test_gamma_out_of_range(self):
        """Test k and l limits"""
        with pytest.raises(OutOfRangeError):
            gamma_word(6, 3)
        with pytest.raises(OutOfRangeError):
            gamma_word(6, 2, 5)


# ============= Diagram Tests =============

@pytest.mark.unit
class TestRauzyDiagram:
    """Test the hyperelliptic Rauzy diagram"""

    def test_d4(self, diagram4):
        """Test the seven vertices of D_4"""
        assert len(diagram4) == 7
        assert perm('1 3 4 2 / 4 3 2 1') in diagram4
        assert LabeledPermutation.central(5) not in diagram4

    @pytest.mark.parametrize('n', [4, 5, 6, 7, 8])
    def test_vertex_count(self, n):
        """Test 2^(n-1) - 1 vertices"""
        stats = build_diagram(n).stats()
        assert stats['vertices'] == stats['expected_vertices'] == 2 ** (n - 1) - 1
        assert stats['edges'] == 2 * stats['vertices']
        assert stats['strongly_connected']

    def test_self_loops(self, diagram4):
        """Test t^2 carries a b loop and tb a t loop"""
        tt = diagram4.vertex_index(perm('1 2 3 4 / 4 2 1 3'))
        tb = diagram4.vertex_index(perm('1 2 4 3 / 4 1 3 2'))
        assert diagram4.move(tt, b).target == tt
        assert diagram4.move(tb, t).target == tb

    def test_central_loop(self, diagram6):
        """Test the t cycle through the central permutation"""
        loop = diagram6.central_loop()
        assert len(set(loop)) == 5
        assert diagram6.move(loop[-1], t).target == diagram6.central_index
        assert diagram6.stats()['central_loop'] == 5

    def test_membership_up_to_labels(self, diagram4):
        """Test relabeled vertices are found unless labels are required"""
        relabeled = diagram4.vertices[3].relabeled({1: 4, 2: 3, 3: 2, 4: 1})
        assert diagram4.vertex_index(relabeled) == 3
        with pytest.raises(MembershipError):
            diagram4.vertex_index(relabeled, labeled=True)
        with pytest.raises(MembershipError):
            diagram4.vertex_index(LabeledPermutation.central(5))

    def test_symmetric_index(self, diagram6):
        """Test the involution maps the diagram to itself"""
        assert diagram6.symmetric_index(diagram6.central_index) == diagram6.central_index
        for i in range(len(diagram6)):
            assert diagram6.symmetric_index(diagram6.symmetric_index(i)) == i

    def test_completion(self, diagram6):
        """Test shortest words avoid the central permutation"""
        for k in (1, 2):
            source = diagram6.central_loop()[k]
            target = diagram6.symmetric_index(source)
            word = diagram6.completion(source, target)
            edges = diagram6.walk(source, word)
            assert edges[-1].target == target
            assert all(edge.target != diagram6.central_index for edge in edges)
        assert diagram6.completion(5, 5) == ()

    def test_completion_of_gamma(self, diagram6):
        """Test gamma_{6,2} is no shorter than the completion after its first move"""
        source = diagram6.central_loop()[2]
        first = diagram6.move(source, b).target
        word = diagram6.completion(first, diagram6.symmetric_index(source))
        assert len(word) <= len(gamma_word(6, 2)) - 1

    def test_central_free_graph(self, diagram6):
        """Test completions share one materialised central-free digraph"""
        graph = diagram6.central_free
        assert isinstance(graph, nx.DiGraph)
        assert diagram6.central_index not in graph
        assert graph.number_of_nodes() == len(diagram6) - 1
        loop = diagram6.central_loop()
        for k in (1, 2):
            diagram6.completion(loop[k], diagram6.symmetric_index(loop[k]))
        assert diagram6.central_free is graph
        assert diagram6.without_central() is graph

    def test_cache_keeps_few_diagrams(self):
        """Test a range of sizes does not keep every diagram alive"""
        for n in range(4, 9):
            build_diagram(n)
        assert build_diagram.cache_info().maxsize == 2
        assert build_diagram.cache_info().currsize <= 2

    def test_invalid_size(self):
        """Test n < 2"""
        with pytest.raises(InvalidSizeError):
            build_diagram(1)


@pytest.mark.unit
class TestCoordinates:
    """Test path coordinates"""

    def test_central(self, diagram4):
        """Test the central permutation has a single part"""
        assert diagram4.coordinates(LabeledPermutation.central(4)).parts == (3,)

    def test_d4(self, diagram4):
        """Test run lengths padded to n - 1"""
        tt = diagram4.coordinates(perm('1 2 3 4 / 4 2 1 3'))
        assert (tt.parts, tt.first) == ((2, 1), t)
        bt = coordinates(perm('1 4 2 3 / 4 3 1 2'), diagram4)
        assert (bt.parts, bt.first) == ((1, 1, 1), b)
        assert str(bt) == '(1, 1, 1)'
        assert bt.reversed() == (1, 1, 1)

    def test_round_trip(self, diagram6):
        """Test every vertex is recovered from its coordinates"""
        for vertex in diagram6.vertices:
            coords = diagram6.coordinates(vertex)
            assert sum(coords.parts) == 5
            assert diagram6.permutation_from_coordinates(coords) == vertex

    def test_from_parts(self):
        """Test the module level helper"""
        assert permutation_from_coordinates((1, 1, 1), b) == perm('1 4 2 3 / 4 3 1 2')

    def test_invalid(self, diagram4):
        """Test sums and signs"""
        with pytest.raises(MembershipError):
            diagram4.permutation_from_coordinates((1, 1))
        with pytest.raises(MembershipError):
            PathCoordinates((2, 0, 1))


# ============= Command Tests =============

@pytest.mark.integration
class TestDiagramCommand:
    """Test the diagram subcommand"""

    def test_stats_json(self):
        """Test the size report"""
        out = StringIO()
        call_command('diagram', '--n', '5', '--stats', '--format', 'json', stdout=out)
        payload = json.loads(out.getvalue())
        assert payload['vertices'] == 15
        assert payload['strongly_connected'] is True

    def test_vertices_text(self):
        """Test the vertex listing"""
        out = StringIO()
        call_command('diagram', '--n', '4', '--vertices', '--no-header', stdout=out)
        lines = out.getvalue().strip().splitlines()
        assert len(lines) == 7
        assert lines[0].split()[0] == '0'
        assert '1 2 3 4 / 4 3 2 1' in lines[0]

    def test_vertices_csv(self):
        """Test the csv listing"""
        out = StringIO()
        call_command('diagram', '--n', '4', '--vertices', '--format', 'csv', '--no-header', stdout=out)
        rows = out.getvalue().strip().splitlines()
        assert rows[0] == 'index,permutation,word,coordinates,first'
        assert len(rows) == 8
