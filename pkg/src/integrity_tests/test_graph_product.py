import numpy as np
import pytest

import corrkit._internal.coxeter as coxeter
from corrkit._internal.graph_product import (
    GammaPrimeConstruction,
    GraphProduct,
    Syllable,
    construct_gamma_prime,
    coset_action,
    counterexample_construction,
    phi_apply,
    verify_phi_homomorphism,
    verify_phi_injective_on_ball,
    verify_projection,
)
from corrkit._internal.graphs import SimpleGraph, is_rigid, star
from corrkit.groups.subgroup import FiniteIndexSubgroupSpec

QUOTIENTS = {
    2: {"a": [2, 1], "b": [1, 2]},
    3: {"a": [2, 3, 1], "b": [1, 3, 2]},
}


def random_syllables(product: GraphProduct, length: int, rng) -> list[Syllable]:
    generators = product.generators()
    return [
        generators[i].syllables[0] for i in rng.integers(0, len(generators), size=length)
    ]


def shuffle_commuting(product: GraphProduct, syllables: list[Syllable], rng) -> list[Syllable]:
    word = list(syllables)
    for _ in range(3 * len(word)):
        if len(word) < 2:
            break
        i = int(rng.integers(0, len(word) - 1))
        if product.graph.adjacent(word[i].vertex, word[i + 1].vertex):
            word[i], word[i + 1] = word[i + 1], word[i]
    return word


class TestNormalForm:
    def test_involutions_match_coxeter(self, small_graph: SimpleGraph):
        product = GraphProduct.build(small_graph, default="Z/2")
        rng = np.random.default_rng(0)
        for _ in range(100):
            letters = [
                small_graph.vertices[i]
                for i in rng.integers(0, len(small_graph), size=int(rng.integers(0, 8)))
            ]
            element = product.normal_form([(s, "1") for s in letters])
            expected = coxeter.normal_form(coxeter.CoxeterWord(small_graph, letters))
            assert [s.vertex for s in element.syllables] == list(expected.letters), letters

    @pytest.mark.parametrize("label", ["F2", "Z", "Z/3"])
    def test_commuting_shuffles(self, small_graph: SimpleGraph, label: str):
        product = GraphProduct.build(small_graph, default=label)
        rng = np.random.default_rng(1)
        for _ in range(50):
            word = random_syllables(product, int(rng.integers(0, 10)), rng)
            shuffled = shuffle_commuting(product, word, rng)
            assert product.normal_form(word) == product.normal_form(shuffled)

    @pytest.mark.parametrize("label", ["F2", "Z/3"])
    def test_group_axioms(self, small_graph: SimpleGraph, label: str):
        product = GraphProduct.build(small_graph, default=label)
        rng = np.random.default_rng(2)
        for _ in range(30):
            x, y, z = (
                product.normal_form(random_syllables(product, int(rng.integers(0, 6)), rng))
                for _ in range(3)
            )
            assert (x * y) * z == x * (y * z)
            assert (x * x.inverse()).is_identity()

    def test_syllables_reduced(self, small_graph: SimpleGraph):
        product = GraphProduct.build(small_graph, default="F2")
        rng = np.random.default_rng(3)
        for _ in range(50):
            element = product.normal_form(random_syllables(product, 8, rng))
            syllables = element.syllables
            for i, s in enumerate(syllables):
                for later in syllables[i + 1 :]:
                    if later.vertex == s.vertex:
                        pytest.fail(f"mergeable syllables at {s.vertex!r} in {element}")
                    if not product.graph.adjacent(s.vertex, later.vertex):
                        break


def build(graph: SimpleGraph, k: int, s1: str = "1") -> GammaPrimeConstruction:
    sub = FiniteIndexSubgroupSpec.from_mapping(2, QUOTIENTS[k])
    return construct_gamma_prime(graph, {s: "F2" for s in graph.vertices}, s1, sub)


class TestGammaPrime:
    @pytest.fixture(params=[2, 3], ids=lambda k: f"k{k}")
    def construction(self, cycle: SimpleGraph, request) -> GammaPrimeConstruction:
        return build(cycle, request.param)

    def test_vertex_count(self, construction: GammaPrimeConstruction):
        source = construction.source.graph
        outside = len(source) - len(star(source, construction.s1))
        assert len(construction.graph) == len(star(source, construction.s1)) + (
            construction.index * outside
        )

    def test_rigidity_preserved(self, construction: GammaPrimeConstruction):
        assert is_rigid(construction.source.graph)
        assert is_rigid(construction.graph)

    def test_subgroup_rank(self, construction: GammaPrimeConstruction):
        assert construction.subgroup.rank == 1 + construction.index
        assert construction.product.labels()["1"] == f"F{1 + construction.index}"

    def test_projection(self, construction: GammaPrimeConstruction):
        assert verify_projection(construction) == ()

    def test_injective(self, construction: GammaPrimeConstruction, ball_radius: int):
        report = verify_phi_injective_on_ball(construction, ball_radius)
        assert report.complete
        assert report.passed, report.violations[:3]

    def test_homomorphism(self, construction: GammaPrimeConstruction):
        assert verify_phi_homomorphism(construction, radius=2, samples=300, seed=7) == 0

    def test_coset_action(self, construction: GammaPrimeConstruction):
        report = coset_action(construction)
        assert report.index == construction.index
        assert report.passed

    def test_image_in_star_fixed(self, construction: GammaPrimeConstruction):
        for g in construction.product.generators():
            (syllable,) = g.syllables
            if construction.sheet(syllable.vertex) is None and syllable.vertex != "1":
                assert phi_apply(construction, g).syllables == g.syllables


def test_petersen(petersen: SimpleGraph):
    construction = counterexample_construction(petersen, "0")
    assert len(construction.graph) == 4 + 2 * 6
    assert is_rigid(construction.graph)
    assert verify_projection(construction) == ()
    # the radius 3 ball of G′ exceeds the default element budget
    assert verify_phi_injective_on_ball(construction, 2).passed
    assert verify_phi_homomorphism(construction, radius=2, samples=100) == 0
    assert coset_action(construction).passed
