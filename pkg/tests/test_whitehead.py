import random

import pytest

from freefactor import (
    Classification,
    IdentityWordError,
    Word,
    WhiteheadGraph,
    apply_automorphism,
    classify,
    cyclic_reduce,
    enumerate_permutation_automorphisms,
    enumerate_whitehead_automorphisms,
    find_cut_vertex,
    fold,
    is_primitive,
    minimize_cyclic_length,
    minimizing_basis,
    random_word,
    whitehead_graph,
)
from freefactor.experiments import build_boundary_pA

from conftest import W


class TestWhiteheadGraph:
    def test_commutator_is_four_cycle(self, b2):
        g = whitehead_graph(b2)
        # cycle x - y^-1 - x^-1 - y - x
        assert sorted(g.edges) == sorted(((1, -2), (-1, -2), (-1, 2), (1, 2)))
        assert g.edge_count() == 4
        assert all(g.degree(v) == 2 for v in g.vertices)

    def test_square_doubles_edge(self):
        g = whitehead_graph(W("xx"))
        assert g.edges == ((1, -1), (1, -1))
        assert g.degree(2) == 0 and g.degree(-2) == 0

    def test_xy_disconnected(self):
        g = whitehead_graph(W("xy"))
        assert sorted(g.edges) == sorted(((1, -2), (-1, 2)))

    def test_identity_rejected(self):
        with pytest.raises(IdentityWordError):
            whitehead_graph(W("xX"))

    def test_edge_count_is_cyclic_length(self):
        rng = random.Random(3)
        for _ in range(40):
            w = random_word(rng.randint(1, 20), 3, rng)
            if cyclic_reduce(w).core.is_identity():
                continue
            g = whitehead_graph(w)
            assert g.edge_count() == len(cyclic_reduce(w).core)

    def test_degree_counts_letter_occurrences(self):
        rng = random.Random(4)
        for _ in range(40):
            w = random_word(rng.randint(1, 20), 2, rng)
            core = cyclic_reduce(w).core
            if core.is_identity():
                continue
            g = whitehead_graph(w)
            for v in g.vertices:
                occurrences = sum(1 for l in core.letters if l in (v, -v))
                assert g.degree(v) == occurrences


class TestCutVertex:
    def test_cycle_has_none(self, b2):
        assert find_cut_vertex(whitehead_graph(b2)) is None

    def test_disconnected_has_one(self):
        # any disconnected graph on >= 3 vertices has a cut vertex
        assert find_cut_vertex(whitehead_graph(W("xy"))) == 1

    def test_square_graph(self):
        assert find_cut_vertex(whitehead_graph(W("xx"))) == 1

    def test_path_graph_interior(self):
        g = WhiteheadGraph(2, ((1, 2), (2, -1), (-1, -2)))  # path x-y-X-Y
        v = find_cut_vertex(g)
        assert v in (2, -1)  # an interior vertex


class TestEnumeration:
    @pytest.mark.parametrize("rank", [2, 3, 4])
    def test_closed_form_count(self, rank):
        table = enumerate_whitehead_automorphisms(rank)
        assert len(table) == 2 * rank * (2 ** (2 * rank - 2) - 1)
        assert not any(phi.is_identity_map() for phi in table)

    def test_rank2_image_menu(self):
        # every multiplier move sends each generator to one of
        # {v, av, va^-1, ava^-1}
        for phi in enumerate_whitehead_automorphisms(2):
            a = phi.multiplier
            for v in (1, 2, -1, -2):
                img = phi.letter_image(v)
                assert img in ((v,), (a, v), (v, -a), (a, v, -a))

    def test_image_length_bounded(self):
        for phi in enumerate_whitehead_automorphisms(3):
            for i in (1, 2, 3):
                assert len(phi.letter_image(i)) <= 3

    def test_inverse_composes_to_identity(self):
        for phi in enumerate_whitehead_automorphisms(2):
            inv = phi.inverse()
            for i in (1, 2):
                w = Word((i,), 2)
                assert apply_automorphism((phi, inv), w) == w
                assert apply_automorphism((inv, phi), w) == w

    def test_permutation_enumeration(self):
        perms = enumerate_permutation_automorphisms(2)
        assert len(perms) == 8  # 2! * 2^2
        for phi in perms:
            assert phi.inverse().inverse() == phi


class TestMinimize:
    def test_primitive_pair(self):
        cert = minimize_cyclic_length(W("xy"))
        assert len(cert.minimized) == 1
        assert cert.length_trace == (2, 1)

    def test_commutator_already_minimal(self, b2):
        cert = minimize_cyclic_length(b2)
        assert cert.minimized == b2
        assert cert.chain == ()
        assert cert.length_trace == (4,)

    def test_conjugate_of_generator(self):
        cert = minimize_cyclic_length(W("yxY"))
        assert len(cert.minimized) == 1

    def test_certificate_replays(self):
        rng = random.Random(9)
        table = enumerate_whitehead_automorphisms(2)
        for _ in range(15):
            w = random_word(rng.randint(1, 10), 2, rng)
            chain = [rng.choice(table) for _ in range(rng.randint(0, 3))]
            w = apply_automorphism(chain, w)
            if w.is_identity():
                continue
            cert = minimize_cyclic_length(w)
            replay = cyclic_reduce(apply_automorphism(cert.chain, w)).core
            assert replay == cert.minimized
            trace = cert.length_trace
            assert all(trace[i] > trace[i + 1] for i in range(len(trace) - 1))
            assert trace[-1] == len(cert.minimized)

    def test_identity_rejected(self):
        with pytest.raises(IdentityWordError):
            minimize_cyclic_length(Word.identity(2))

    def test_orbit_invariance(self):
        # minimize(w) and minimize(phi(w)) reach the same length
        rng = random.Random(11)
        table = enumerate_whitehead_automorphisms(2)
        for _ in range(20):
            w = random_word(rng.randint(1, 8), 2, rng)
            if w.is_identity():
                continue
            n0 = len(minimize_cyclic_length(w).minimized)
            chain = [rng.choice(table) for _ in range(rng.randint(1, 4))]
            image = apply_automorphism(chain, w)
            if image.is_identity():
                continue
            assert len(minimize_cyclic_length(image).minimized) == n0


class TestClassify:
    def test_commutator_fills(self, b2):
        assert classify(b2) == Classification.FILLING

    def test_square_is_simple(self):
        assert classify(W("xx")) == Classification.SIMPLE_NON_PRIMITIVE

    def test_squares_word_fills_rank3(self, b3):
        cert = minimize_cyclic_length(b3)
        assert len(cert.minimized) == 6
        assert classify(b3) == Classification.FILLING

    def test_primitive_examples(self):
        assert is_primitive(W("x"))
        assert not is_primitive(W("xx"))
        psi = build_boundary_pA()
        assert is_primitive(psi.apply(W("x"), 5))

    def test_simple_words_keep_cut_vertices_under_automorphisms(self):
        # every automorphic image of a non-filling word shows a cut vertex
        rng = random.Random(23)
        table = enumerate_whitehead_automorphisms(2)
        for base in (W("x"), W("xx"), W("xyX"), W("yyy")):
            for _ in range(10):
                chain = [rng.choice(table) for _ in range(rng.randint(0, 4))]
                image = apply_automorphism(chain, base)
                assert find_cut_vertex(whitehead_graph(image)) is not None

    def test_minimizing_basis(self, b2):
        chain, word = minimizing_basis(b2)
        assert chain == () and word == b2
        g = W("yx")
        chain, word = minimizing_basis(g * b2 * g.inverse())
        assert len(word) == 4
        chain, word = minimizing_basis(W("xy"))
        assert len(word) == 1


def oracle_is_simple(w: Word, max_growth: int = 0):
    """Breadth-first orbit search oracle for simplicity at rank 2.

    Explores cyclic conjugacy representatives under all Whitehead moves
    without ever exceeding the starting cyclic length: strictly shortening
    moves reach the orbit minimum, and level moves connect all minima.  A
    word is simple iff some minimal form is a power of one letter, which is
    double-checked by membership in the corresponding cyclic subgroup.
    """

    def canon(word):
        core = cyclic_reduce(word).core.letters
        if not core:
            return ()
        rotations = [core[i:] + core[:i] for i in range(len(core))]
        return min(rotations)

    start = canon(w)
    if not start:
        raise IdentityWordError("oracle needs a nontrivial word")
    bound = len(start) + max_growth
    moves = list(enumerate_whitehead_automorphisms(2)) + list(
        enumerate_permutation_automorphisms(2)
    )
    seen = {start}
    frontier = [start]
    witness = None
    while frontier:
        nxt = []
        for state in frontier:
            word = Word(state, 2)
            for phi in moves:
                image = canon(phi(word))
                if not image or len(image) > bound or image in seen:
                    continue
                seen.add(image)
                nxt.append(image)
        frontier = nxt
    orbit_min = min(len(state) for state in seen)
    for state in seen:
        letters = {abs(l) for l in state}
        if len(letters) == 1:
            witness = state
            break
    if witness is None:
        return False, None, orbit_min
    generator = Word((witness[0],), 2)
    assert fold([generator]).contains(Word(witness, 2))
    return True, len(witness), orbit_min


class TestClassifyAgainstOrbitOracle:
    def test_exhaustive_short_words(self):
        # all reduced words of length <= 4 at rank 2
        words = [()]
        for _ in range(4):
            words = [
                w + (l,)
                for w in words
                for l in (1, -1, 2, -2)
                if not w or l != -w[-1]
            ]
            for letters in words:
                w = Word(letters, 2)
                if cyclic_reduce(w).core.is_identity():
                    continue
                simple, power, orbit_min = oracle_is_simple(w)
                verdict = classify(w)
                assert simple == (verdict != Classification.FILLING), w
                if simple and power == 1:
                    assert verdict == Classification.PRIMITIVE
                # greedy descent reaches the true orbit minimum
                assert len(minimize_cyclic_length(w).minimized) == orbit_min, w

    def test_sampled_longer_words(self):
        rng = random.Random(31)
        for _ in range(40):
            w = random_word(rng.randint(5, 6), 2, rng)
            if cyclic_reduce(w).core.is_identity():
                continue
            simple, power, orbit_min = oracle_is_simple(w)
            verdict = classify(w)
            assert simple == (verdict != Classification.FILLING), w
            if simple:
                assert (power == 1) == (verdict == Classification.PRIMITIVE)
            assert len(minimize_cyclic_length(w).minimized) == orbit_min, w
