import random

import pytest

from freefactor import (
    Classification,
    FreeFactorVertex,
    PreconditionError,
    RankError,
    Word,
    af_adjacent,
    apply_automorphism,
    b_index,
    classify,
    contains,
    enumerate_whitehead_automorphisms,
    factor_invariant,
    fold,
    is_basis_pair,
    random_free_factor,
    random_word,
)
from freefactor.experiments import _random_deep_factor, boundary_word

from conftest import W


class TestFold:
    def test_single_generator_loop(self):
        g = fold([W("x")])
        assert (g.num_vertices, g.num_edges) == (1, 1)
        assert g.subgroup_rank() == 1

    def test_whole_group_rose(self):
        g = fold([W("x"), W("y")])
        assert g.is_whole_group()

    def test_index_two_subgroup(self):
        g = fold([W("xx"), W("y"), W("xyX")])
        # index-2 subgroup: rank 1 + 2*(2-1) = 3 by the index formula
        assert g.subgroup_rank() == 3
        assert (g.num_vertices, g.num_edges) == (2, 4)
        assert g.contains(W("xx"))
        assert not g.contains(W("x"))

    def test_lollipop(self):
        g = fold([W("yxY")])
        assert (g.num_vertices, g.num_edges) == (2, 2)
        assert g.contains(W("yxY"))
        assert g.contains(W("yxxxY"))
        assert not g.contains(W("x"))

    def test_idempotent_on_own_basis(self):
        for gens in ([W("xx"), W("y"), W("xyX")], [W("xyXY")], [W("x"), W("yxY")]):
            g = fold(gens)
            again = fold(g.subgroup_basis(), rank=2)
            assert g == again  # canonical renumbering makes equality meaningful

    def test_dot_export(self):
        text = fold([W("x")]).to_dot()
        assert "digraph" in text and "label=\"x\"" in text


class TestContains:
    def test_powers(self):
        g = fold([W("x")])
        assert contains(g, W("x") ** 5)
        assert not contains(g, W("y"))

    def test_traced_word(self):
        g = fold([W("xx"), W("y")])
        assert contains(g, W("xxy"))

    def test_brute_force_agreement(self):
        gens = [W("xx"), W("xyX")]
        g = fold(gens)
        # enumerate all products of length <= 6 in the generators
        elements = {()}
        words = {(): Word.identity(2)}
        frontier = [()]
        for _ in range(6):
            new = []
            for idx in frontier:
                for s in (1, -1, 2, -2):
                    if idx and s == -idx[-1]:
                        continue
                    nxt = idx + (s,)
                    base = words[idx]
                    gen = gens[abs(s) - 1]
                    words[nxt] = base * (gen if s > 0 else gen.inverse())
                    new.append(nxt)
                    elements.add(nxt)
            frontier = new
        in_subgroup = {words[idx].letters for idx in elements}
        rng = random.Random(2)
        for _ in range(200):
            w = random_word(rng.randint(0, 8), 2, rng)
            if w.letters in in_subgroup:
                assert contains(g, w)
        # and everything enumerated is accepted
        for idx in elements:
            assert contains(g, words[idx])

    def test_fuzzed_membership(self):
        # random short 2-generator subgroups: every product of the
        # generators reads a basepoint loop, and graphs rebuilt from their
        # own basis agree on membership
        rng = random.Random(41)
        for _ in range(25):
            gens = [random_word(rng.randint(1, 5), 2, rng) for _ in range(2)]
            gens = [g for g in gens if not g.is_identity()]
            if not gens:
                continue
            g = fold(gens, rank=2)
            regen = fold(g.subgroup_basis(), rank=2)
            for _ in range(40):
                idx = [rng.choice([1, -1, 2, -2][: 2 * len(gens)]) for _ in range(rng.randint(1, 5))]
                w = Word.identity(2)
                for s in idx:
                    base = gens[abs(s) - 1]
                    w = w * (base if s > 0 else base.inverse())
                assert contains(g, w)
                assert contains(regen, w)
            for _ in range(40):
                w = random_word(rng.randint(0, 10), 2, rng)
                assert contains(g, w) == contains(regen, w)


class TestBasisPair:
    def test_standard(self):
        assert is_basis_pair(W("x"), W("y"))

    def test_nielsen_image(self):
        assert is_basis_pair(W("x"), W("yx"))

    def test_non_basis(self):
        assert not is_basis_pair(W("x"), W("yxxY"))

    def test_rank_guard(self):
        with pytest.raises(RankError):
            is_basis_pair(W("x", 3), W("y", 3))

    def test_random_chain_images_stay_bases(self):
        rng = random.Random(5)
        table = enumerate_whitehead_automorphisms(2)
        for _ in range(30):
            chain = [rng.choice(table) for _ in range(rng.randint(0, 5))]
            u = apply_automorphism(chain, W("x"))
            v = apply_automorphism(chain, W("y"))
            assert is_basis_pair(u, v)


class TestAdjacency:
    def test_nested_standard(self):
        a = FreeFactorVertex((W("x", 3),), 3)
        b = FreeFactorVertex((W("x", 3), W("y", 3)), 3)
        assert af_adjacent(a, b)
        assert af_adjacent(b, a)

    def test_disjoint_not_adjacent(self):
        a = FreeFactorVertex((W("x", 3),), 3)
        b = FreeFactorVertex((W("y", 3),), 3)
        assert not af_adjacent(a, b)

    def test_equal_not_adjacent(self):
        a = FreeFactorVertex((W("x", 3),), 3)
        assert not af_adjacent(a, a)

    def test_equivariance(self):
        rng = random.Random(7)
        table = enumerate_whitehead_automorphisms(3)
        for _ in range(20):
            chain = [rng.choice(table) for _ in range(rng.randint(1, 3))]
            gens = [apply_automorphism(chain, W(t, 3)) for t in ("x", "y")]
            a = FreeFactorVertex((gens[0],), 3)
            b = FreeFactorVertex(tuple(gens), 3)
            assert af_adjacent(a, b)

    def test_rank2_uses_basis_pairs(self):
        a = FreeFactorVertex((W("x"),), 2)
        b = FreeFactorVertex((W("yx"),), 2)
        c = FreeFactorVertex((W("yxxY"),), 2)
        assert af_adjacent(a, b)
        assert not af_adjacent(a, c)


class TestRandomFreeFactor:
    def test_determinism(self):
        a = random_free_factor(3, 2, 4, seed=9)
        b = random_free_factor(3, 2, 4, seed=9)
        assert a.generators == b.generators

    def test_witness_replays(self):
        factor = random_free_factor(3, 2, 3, seed=11)
        rebuilt = tuple(
            apply_automorphism(factor.witness.chain, Word((s,), 3))
            for s in factor.witness.standard_subset
        )
        assert rebuilt == factor.generators

    def test_generators_are_simple(self):
        for seed in range(5):
            factor = random_free_factor(2, 1, 3, seed=seed)
            for g in factor.generators:
                assert classify(g) != Classification.FILLING

    def test_rank_bounds(self):
        with pytest.raises(RankError):
            random_free_factor(3, 3, 1, seed=0)
        with pytest.raises(RankError):
            random_free_factor(3, 0, 1, seed=0)


class TestFactorInvariant:
    def test_standard_generator(self, b2):
        est = factor_invariant(FreeFactorVertex((W("x"),), 2), b2)
        assert est.value == 0
        assert not est.tight  # a single observed value cannot be certified

    def test_shifted_factor(self, b2):
        gen = (b2**2) * W("x") * (b2**-2)
        est = factor_invariant(FreeFactorVertex((gen,), 2), b2)
        assert est.value == 2

    def test_b_inside_rejected(self, b2):
        with pytest.raises(PreconditionError):
            factor_invariant(FreeFactorVertex((b2,), 2), b2)

    def test_whole_group_rejected(self, b2):
        with pytest.raises(PreconditionError):
            factor_invariant(FreeFactorVertex((W("x"), W("y")), 2), b2)

    def test_bad_b_rejected(self):
        with pytest.raises(PreconditionError):
            factor_invariant(FreeFactorVertex((W("y"),), 2), W("xx"))

    def test_budget_respected(self, b3):
        factor = FreeFactorVertex((W("x", 3), W("y", 3)), 3)
        est = factor_invariant(factor, b3, sample_budget=30)
        assert est.samples <= 30


class TestExponentSpread:
    @pytest.mark.parametrize("rank", [2, 3])
    def test_two_elements_within_one(self, rank):
        # exponents of any two elements of one proper factor differ by <= 1
        b = boundary_word(rank)
        rng = random.Random(rank * 13)
        for _ in range(150):
            factor = _random_deep_factor(rng, rank, b)
            a1 = factor.random_element(rng)
            a2 = factor.random_element(rng)
            assert abs(b_index(a1, b) - b_index(a2, b)) <= 1

    def test_equivariance_when_positive(self, b2):
        # conjugating the factor by b^k shifts a positive invariant by k
        for k in (1, 2, 3):
            gen = (b2**2) * W("x") * (b2**-2)
            base = factor_invariant(FreeFactorVertex((gen,), 2), b2)
            shifted_gen = (b2**k) * gen * (b2**-k)
            shifted = factor_invariant(FreeFactorVertex((shifted_gen,), 2), b2)
            assert shifted.value - base.value == k
