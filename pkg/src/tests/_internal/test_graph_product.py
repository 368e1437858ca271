import numpy as np
import pytest

from corrkit._internal.constraints import BudgetExceededError, EnumerationBudget
from corrkit._internal.graph_product import (
    GammaPrimeConstruction,
    GraphProduct,
    GraphProductError,
    Syllable,
    construct_gamma_prime,
    coset_action,
    counterexample_construction,
    fg_subgroup_membership,
    gp_multiply,
    gp_normal_form,
    iter_ball,
    phi_apply,
    sheet_vertex,
    verify_phi_homomorphism,
    verify_phi_injective_on_ball,
    verify_projection,
)
from corrkit._internal.graphs import SimpleGraph, complete_graph, cycle_graph, is_rigid
from corrkit.groups.free import FreeGroup
from corrkit.groups.subgroup import FiniteIndexSubgroupSpec, SubgroupVertexGroup


@pytest.fixture
def two_adjacent() -> GraphProduct:
    return GraphProduct.build(SimpleGraph.from_edges(["s", "t"], [("s", "t")]), default="F2")


@pytest.fixture
def two_free() -> GraphProduct:
    return GraphProduct.build(SimpleGraph.from_edges(["s", "t"]), default="F2")


@pytest.fixture
def index_two() -> FiniteIndexSubgroupSpec:
    return FiniteIndexSubgroupSpec.from_mapping(2, {"a": [2, 1], "b": [1, 2]})


@pytest.fixture
def pentagon(index_two: FiniteIndexSubgroupSpec) -> GammaPrimeConstruction:
    g = cycle_graph(5)
    return construct_gamma_prime(g, {s: "F2" for s in g.vertices}, "1", index_two)


class TestGraphProduct:
    def test_build_labels(self):
        product = GraphProduct.build(
            SimpleGraph.from_edges(["u", "v", "w"]), {"u": "F2", "v": "Z"}, default="Z/3"
        )
        assert product.labels() == {"u": "F2", "v": "Z", "w": "Z/3"}

    def test_missing_group(self):
        with pytest.raises(GraphProductError, match="without a vertex group: t"):
            GraphProduct.build(SimpleGraph.from_edges(["s", "t"]), {"s": "F2"})

    def test_unknown_vertex(self):
        with pytest.raises(GraphProductError, match="unknown vertices: u"):
            GraphProduct.build(SimpleGraph.from_edges(["s"]), {"s": "F2", "u": "F2"})

    def test_bad_label(self):
        with pytest.raises(GraphProductError, match="Unknown vertex group label"):
            GraphProduct.build(SimpleGraph.from_edges(["s"]), {"s": "Q"})


class TestNormalForm:
    def test_commuting_syllables_sorted(self, two_adjacent: GraphProduct):
        assert two_adjacent.parse("t:a s:b").to_list() == [["s", "b"], ["t", "a"]]

    def test_non_commuting_kept(self, two_free: GraphProduct):
        assert two_free.parse("s:a t:b s:A").to_list() == [["s", "a"], ["t", "b"], ["s", "A"]]

    def test_merge(self, two_free: GraphProduct):
        assert two_free.parse("s:a s:b").to_list() == [["s", "ab"]]

    def test_cancel_across_commuting(self, two_adjacent: GraphProduct):
        assert two_adjacent.parse("s:a t:b s:A").to_list() == [["t", "b"]]

    def test_nested_cancellation(self, two_free: GraphProduct):
        assert two_free.parse("s:a t:b t:B s:A").is_identity()

    def test_integers_and_cyclic(self):
        g = SimpleGraph.from_edges(["u", "v"])
        assert gp_normal_form(g, {"u": "Z", "v": "Z/3"}, [("u", "2"), ("u", "-2")]).is_identity()
        element = gp_normal_form(g, {"u": "Z", "v": "Z/3"}, [("v", "1"), ("v", "1"), ("u", "1")])
        assert element.to_list() == [["v", "2"], ["u", "1"]]
        assert gp_normal_form(g, {"u": "Z", "v": "Z/3"}, [("v", 1), ("v", 2)]).is_identity()

    def test_identity_syllable_rejected(self, two_free: GraphProduct):
        with pytest.raises(GraphProductError, match="carries the identity"):
            two_free.parse("s:1")

    def test_unknown_vertex(self, two_free: GraphProduct):
        with pytest.raises(GraphProductError, match="vertex not in graph"):
            two_free.parse("u:a")

    def test_bad_element(self, two_free: GraphProduct):
        with pytest.raises(GraphProductError, match="syllable at 's'"):
            two_free.parse("s:c")

    def test_malformed(self, two_free: GraphProduct):
        with pytest.raises(GraphProductError, match="Malformed syllable"):
            two_free.parse("s")

    def test_str(self, two_free: GraphProduct):
        assert str(two_free.parse("s:a t:B")) == "s:a t:B"
        assert str(two_free.identity()) == "1"


MIXED_LABELS = {"u": "F2", "v": "Z/3", "w": "F2"}
SYLLABLE_TEXTS = {"F2": ["a", "A", "b", "B", "ab"], "Z/3": ["1", "2"]}


def rewrite_oracle(product: GraphProduct, word: tuple[Syllable, ...]) -> tuple[Syllable, ...]:
    """
    Shortest, then vertex-lexicographically least, word reachable by swapping adjacent
    commuting syllables and merging adjacent syllables on one vertex.
    """
    seen = {word}
    frontier = [word]
    while frontier:
        w = frontier.pop()
        for i in range(len(w) - 1):
            x, y = w[i], w[i + 1]
            if x.vertex == y.vertex:
                group = product.group(x.vertex)
                element = group.multiply(x.element, y.element)
                merged = () if group.is_identity(element) else (Syllable(x.vertex, element),)
                moved = w[:i] + merged + w[i + 2 :]
            elif product.graph.adjacent(x.vertex, y.vertex):
                moved = w[:i] + (y, x) + w[i + 2 :]
            else:
                continue
            if moved not in seen:
                seen.add(moved)
                frontier.append(moved)
    return min(seen, key=lambda w: (len(w), [s.vertex for s in w]))


def sample_words(product: GraphProduct, count: int, seed: int) -> list[tuple[Syllable, ...]]:
    rng = np.random.default_rng(seed)
    pool = [
        product.syllable(vertex, text)
        for vertex, label in product.labels().items()
        for text in SYLLABLE_TEXTS[label]
    ]
    return [
        tuple(pool[i] for i in rng.integers(0, len(pool), size=int(rng.integers(0, 7))))
        for _ in range(count)
    ]


class TestRewriteOracle:
    @pytest.fixture(
        params=[
            pytest.param([], id="no-edges"),
            pytest.param([("u", "v")], id="one-edge"),
            pytest.param([("u", "v"), ("v", "w")], id="path"),
            pytest.param([("u", "v"), ("v", "w"), ("u", "w")], id="triangle"),
        ]
    )
    def product(self, request) -> GraphProduct:
        graph = SimpleGraph.from_edges(["u", "v", "w"], request.param)
        return GraphProduct.build(graph, MIXED_LABELS)

    def test_matches_rewriting(self, product: GraphProduct):
        for word in sample_words(product, 200, seed=0):
            assert product.normal_form(word).syllables == rewrite_oracle(product, word), word

    def test_idempotent(self, product: GraphProduct):
        for word in sample_words(product, 50, seed=1):
            g = product.normal_form(word)
            assert product.normal_form(g.syllables) == g

    def test_length_subadditive(self, product: GraphProduct):
        words = sample_words(product, 40, seed=2)
        for first, second in zip(words, words[1:]):
            g, h = product.normal_form(first), product.normal_form(second)
            assert len(g * h) <= len(g) + len(h)


class TestGroupOperations:
    def test_multiply_inverse(self, two_free: GraphProduct):
        x = two_free.parse("s:a t:b")
        assert (x * x.inverse()).is_identity()
        assert gp_multiply(x, two_free.parse("t:B s:b")).to_list() == [["s", "ab"]]

    def test_associative(self, two_adjacent: GraphProduct):
        x, y, z = (two_adjacent.parse(w) for w in ("s:a t:b", "s:A", "t:B s:b"))
        assert (x * y) * z == x * (y * z)

    def test_syllable_length(self, two_adjacent: GraphProduct):
        assert two_adjacent.syllable_length(two_adjacent.parse("s:ab t:a s:b")) == 2

    def test_other_product(self, two_free: GraphProduct, two_adjacent: GraphProduct):
        with pytest.raises(GraphProductError, match="different graph product"):
            two_free.multiply(two_free.identity(), two_adjacent.identity())

    def test_generators(self, two_free: GraphProduct):
        assert [str(g) for g in two_free.generators()] == [
            "s:a",
            "s:A",
            "s:b",
            "s:B",
            "t:a",
            "t:A",
            "t:b",
            "t:B",
        ]


class TestBall:
    @pytest.mark.parametrize(
        ["radius", "size"],
        [
            pytest.param(0, 1, id="r0"),
            pytest.param(1, 5, id="r1"),
            pytest.param(2, 17, id="r2"),
            pytest.param(3, 53, id="r3"),
        ],
    )
    def test_free_group(self, radius: int, size: int):
        product = GraphProduct.build(SimpleGraph.from_edges(["s"]), default="F2")
        assert len(list(iter_ball(product, radius))) == size

    def test_abelian(self):
        product = GraphProduct.build(SimpleGraph.from_edges(["s", "t"], [("s", "t")]), default="Z")
        assert len(list(iter_ball(product, 2))) == 13

    def test_breadth_first(self, two_free: GraphProduct):
        ball = list(iter_ball(two_free, 2))
        assert ball[0].is_identity()
        # no commuting vertices, so the word length is the total length of the syllables
        lengths = [sum(len(s.element) for s in x.syllables) for x in ball]
        assert lengths == sorted(lengths)

    def test_budget(self, two_free: GraphProduct):
        seen = []
        with pytest.raises(BudgetExceededError):
            for x in iter_ball(two_free, 3, EnumerationBudget(max_elements=5)):
                seen.append(x)
        assert len(seen) == 5

    def test_negative_radius(self, two_free: GraphProduct):
        with pytest.raises(GraphProductError):
            list(iter_ball(two_free, -1))


class TestGammaPrime:
    def test_graph(self, pentagon: GammaPrimeConstruction):
        assert pentagon.graph.vertices == (
            "(1,3)",
            "(1,4)",
            "(2,3)",
            "(2,4)",
            "1",
            "2",
            "5",
        )
        assert pentagon.graph.sorted_edges() == [
            ("(1,3)", "(1,4)"),
            ("(1,3)", "2"),
            ("(1,4)", "5"),
            ("(2,3)", "(2,4)"),
            ("(2,3)", "2"),
            ("(2,4)", "5"),
            ("1", "2"),
            ("1", "5"),
        ]
        assert is_rigid(pentagon.graph).rigid

    def test_groups(self, pentagon: GammaPrimeConstruction):
        assert pentagon.product.group("1") == SubgroupVertexGroup(pentagon.subgroup)
        assert pentagon.product.labels() == {
            "(1,3)": "F2",
            "(1,4)": "F2",
            "(2,3)": "F2",
            "(2,4)": "F2",
            "1": "F3",
            "2": "F2",
            "5": "F2",
        }

    def test_projection_and_sheets(self, pentagon: GammaPrimeConstruction):
        assert pentagon.project("(2,3)") == "3"
        assert pentagon.project("5") == "5"
        assert pentagon.sheet("(2,3)") == 2
        assert pentagon.sheet("1") is None
        assert verify_projection(pentagon) == ()
        with pytest.raises(GraphProductError, match="not in Γ′"):
            pentagon.project("3")

    def test_dict(self, pentagon: GammaPrimeConstruction):
        summary = pentagon.dict()
        assert summary["vertex_count"] == summary["expected_vertex_count"] == 7
        assert summary["rigid"] and summary["source_rigid"]
        assert summary["coset_representatives"] == ["1", "A"]
        assert summary["subgroup"]["rank"] == 3

    def test_sheet_vertex(self):
        assert sheet_vertex(2, "s") == "(2,s)"

    def test_phi_first_sheet(self, pentagon: GammaPrimeConstruction):
        x = pentagon.product.parse("(1,3):a 1:aa")
        assert phi_apply(pentagon, x).to_list() == [["3", "a"], ["1", "aa"]]

    def test_phi_conjugates_second_sheet(self, pentagon: GammaPrimeConstruction):
        x = pentagon.product.parse("(2,3):b")
        assert phi_apply(pentagon, x).to_list() == [["1", "a"], ["3", "b"], ["1", "A"]]

    def test_phi_star_fixed(self, pentagon: GammaPrimeConstruction):
        x = pentagon.product.parse("2:ab 5:B 1:abA")
        assert phi_apply(pentagon, x) == pentagon.source.normal_form(
            [Syllable("2", (1, 2)), Syllable("5", (-2,)), Syllable("1", (1, 2, -1))]
        )

    def test_phi_wrong_product(self, pentagon: GammaPrimeConstruction):
        with pytest.raises(GraphProductError, match="graph product over Γ′"):
            phi_apply(pentagon, pentagon.source.identity())

    def test_phi_homomorphism(self, pentagon: GammaPrimeConstruction):
        assert verify_phi_homomorphism(pentagon, radius=2, samples=100, seed=3) == 0

    def test_phi_injective(self, pentagon: GammaPrimeConstruction):
        report = verify_phi_injective_on_ball(pentagon, 2)
        assert report.passed
        assert report.complete
        assert report.checked > 100

    def test_phi_injective_truncated(self, pentagon: GammaPrimeConstruction):
        report = verify_phi_injective_on_ball(pentagon, 3, EnumerationBudget(max_elements=50))
        assert not report.complete
        assert report.checked == 50
        assert report.passed

    def test_coset_action(self, pentagon: GammaPrimeConstruction):
        report = coset_action(pentagon)
        assert report.action["1:a"] == (2, 1)
        assert report.action["1:b"] == (1, 2)
        assert report.action["3:a"] == (1, 2)
        assert report.transitive
        assert report.basepoint_stabilized
        assert report.passed

    def test_unknown_s1(self, index_two: FiniteIndexSubgroupSpec):
        g = cycle_graph(5)
        with pytest.raises(GraphProductError, match="not a vertex"):
            construct_gamma_prime(g, {s: "F2" for s in g.vertices}, "9", index_two)

    def test_label_mismatch(self, index_two: FiniteIndexSubgroupSpec):
        g = cycle_graph(5)
        labels = {s: "F2" for s in g.vertices}
        labels["1"] = "F3"
        with pytest.raises(GraphProductError, match="label mismatch"):
            construct_gamma_prime(g, labels, "1", index_two)

    def test_name_clash(self, index_two: FiniteIndexSubgroupSpec):
        g = SimpleGraph.from_edges(["1", "2", "3", "(1,3)"], [("1", "2"), ("2", "3")])
        with pytest.raises(GraphProductError, match="clash"):
            construct_gamma_prime(g, {s: "F2" for s in g.vertices}, "1", index_two)


class TestMembership:
    def test_words(self, index_two: FiniteIndexSubgroupSpec):
        assert fg_subgroup_membership(index_two, "aa")
        assert fg_subgroup_membership(index_two, (2,))
        assert not fg_subgroup_membership(index_two, "a")

    def test_bad_letter(self, index_two: FiniteIndexSubgroupSpec):
        with pytest.raises(GraphProductError):
            fg_subgroup_membership(index_two, "z")


class TestCounterexample:
    def test_pentagon(self):
        c = counterexample_construction(cycle_graph(5))
        assert c.s1 == "1"
        assert c.subgroup.ambient == FreeGroup(2)
        assert c.subgroup.rank == 3
        assert len(c.graph) == 7
        assert is_rigid(c.graph).rigid

    def test_explicit_s1(self):
        assert counterexample_construction(cycle_graph(6), s1="4").s1 == "4"

    def test_complete_graph(self):
        with pytest.raises(GraphProductError, match="complete graph"):
            counterexample_construction(complete_graph(["a", "b", "c"]))

    def test_cone_vertex(self):
        g = SimpleGraph.from_edges(["c", "x", "y"], [("c", "x"), ("c", "y")])
        with pytest.raises(GraphProductError, match="star of 'c'"):
            counterexample_construction(g, s1="c")
        assert counterexample_construction(g).s1 == "x"
