import pytest

from corrkit.groups.free import FreeGroup
from corrkit.groups.subgroup import FiniteIndexSubgroupSpec, SubgroupVertexGroup


@pytest.fixture
def index_two() -> FiniteIndexSubgroupSpec:
    return FiniteIndexSubgroupSpec.from_mapping(2, {"a": [2, 1], "b": [1, 2]})


@pytest.fixture
def index_three() -> FiniteIndexSubgroupSpec:
    # a acts as the 3-cycle (1 2 3), b as the transposition (1 2)
    return FiniteIndexSubgroupSpec.from_mapping(2, {"a": [2, 3, 1], "b": [2, 1, 3]})


class TestFiniteIndexSubgroupSpec:
    def test_index_two(self, index_two: FiniteIndexSubgroupSpec):
        f2 = index_two.ambient
        assert index_two.index == 2
        assert index_two.transversal() == ((), (1,))
        assert index_two.coset_representatives() == ((), (-1,))
        assert [f2.format(g) for g in index_two.schreier_generators()] == ["b", "aa", "abA"]
        assert index_two.rank == 3

    @pytest.mark.parametrize(
        ["word", "member"],
        [
            pytest.param("1", True, id="identity"),
            pytest.param("b", True, id="b"),
            pytest.param("a", False, id="a"),
            pytest.param("A", False, id="a-inverse"),
            pytest.param("aa", True, id="a-squared"),
            pytest.param("aBA", True, id="conjugate"),
            pytest.param("ab", False, id="ab"),
        ],
    )
    def test_contains(self, index_two: FiniteIndexSubgroupSpec, word: str, member: bool):
        assert index_two.contains(index_two.ambient.parse(word)) == member

    def test_action_reads_left_to_right(self, index_three: FiniteIndexSubgroupSpec):
        f2 = index_three.ambient
        # 1 -a-> 2 -b-> 1, whereas 1 -b-> 2 -a-> 3
        assert index_three.act(1, f2.parse("ab")) == 1
        assert index_three.act(1, f2.parse("ba")) == 3
        assert index_three.act(2, f2.parse("A")) == 1

    def test_permutation(self, index_three: FiniteIndexSubgroupSpec):
        f2 = index_three.ambient
        assert index_three.permutation(f2.parse("a")) == (2, 3, 1)
        assert index_three.permutation(f2.parse("aaa")) == (1, 2, 3)

    def test_transversal_is_shortlex_least(self, index_three: FiniteIndexSubgroupSpec):
        f2 = index_three.ambient
        assert [f2.format(t) for t in index_three.transversal()] == ["1", "a", "A"]
        for point, t in enumerate(index_three.transversal(), start=1):
            assert index_three.act(1, t) == point

    @pytest.mark.parametrize(
        ["rank", "quotient"],
        [
            pytest.param(2, {"a": [2, 1], "b": [1, 2]}, id="index-2"),
            pytest.param(2, {"a": [2, 3, 1], "b": [2, 1, 3]}, id="index-3"),
            pytest.param(3, {"a": [2, 1], "b": [2, 1], "c": [1, 2]}, id="rank-3"),
            pytest.param(2, {"a": [2, 3, 4, 1], "b": [1, 2, 3, 4]}, id="cyclic-4"),
        ],
    )
    def test_nielsen_schreier_rank(self, rank: int, quotient):
        sub = FiniteIndexSubgroupSpec.from_mapping(rank, quotient)
        assert sub.rank == 1 + sub.index * (rank - 1)
        for g in sub.schreier_generators():
            assert sub.contains(g)

    def test_not_transitive(self):
        with pytest.raises(ValueError, match="transitively"):
            FiniteIndexSubgroupSpec.from_mapping(2, {"a": [2, 1, 3], "b": [2, 1, 3]})

    def test_not_a_permutation(self):
        with pytest.raises(ValueError, match="not a permutation"):
            FiniteIndexSubgroupSpec.from_mapping(2, {"a": [1, 1], "b": [1, 2]})

    def test_missing_generator(self):
        with pytest.raises(ValueError, match="no image for generator 'b'"):
            FiniteIndexSubgroupSpec.from_mapping(2, {"a": [2, 1]})

    def test_unknown_generator(self):
        with pytest.raises(ValueError, match="unknown generators: c"):
            FiniteIndexSubgroupSpec.from_mapping(2, {"a": [2, 1], "b": [1, 2], "c": [1, 2]})

    def test_wrong_count(self):
        with pytest.raises(ValueError, match="expected 2 permutations"):
            FiniteIndexSubgroupSpec(FreeGroup(2), ((2, 1),))

    def test_dict(self, index_two: FiniteIndexSubgroupSpec):
        assert index_two.dict() == {
            "ambient": "F2",
            "index": 2,
            "quotient": {"a": "(1 2)", "b": "id"},
            "rank": 3,
            "schreier_generators": ["b", "aa", "abA"],
        }


class TestSubgroupVertexGroup:
    def test_label_is_rank(self, index_two: FiniteIndexSubgroupSpec):
        assert SubgroupVertexGroup(index_two).label == "F3"

    def test_parse_checks_membership(self, index_two: FiniteIndexSubgroupSpec):
        h = SubgroupVertexGroup(index_two)
        assert h.parse("aa") == (1, 1)
        with pytest.raises(ValueError, match="does not lie in the subgroup"):
            h.parse("a")

    def test_generators(self, index_two: FiniteIndexSubgroupSpec):
        h = SubgroupVertexGroup(index_two)
        assert h.standard_generators() == [(2,), (1, 1), (1, 2, -1)]
        assert len(h.generators()) == 6
        assert all(h.contains(g) for g in h.generators())
