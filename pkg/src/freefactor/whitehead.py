"""Whitehead graphs, Whitehead automorphisms, and cyclic-length minimization.

The cyclic Whitehead graph of a word lives on the 2N letter-vertices
``S u S^-1`` and has one edge per length-2 cyclic subword of the cyclic
reduction (so it is a multigraph whose edge count equals the cyclic
length).  A cut vertex is one whose removal disconnects the induced
subgraph on the remaining vertices; isolated vertices count as components,
so any disconnected graph on >= 3 vertices has a cut vertex.

Greedy descent over multiplier automorphisms reaches the minimal cyclic
length in the automorphism orbit: while a word is not minimal, some single
multiplier move strictly shortens it.

Everything here is pure over immutable inputs; the per-rank enumeration
tables are built once behind a cache and only ever read afterwards.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import DomainError, IdentityWordError, RankError
from .words import Word, apply_automorphism, cyclic_reduce


def vertex_order(rank: int) -> tuple[int, ...]:
    """Fixed letter order x < x^-1 < y < y^-1 < ... used for tie-breaks."""
    out = []
    for i in range(1, rank + 1):
        out.append(i)
        out.append(-i)
    return tuple(out)


def _vkey(v: int) -> tuple[int, int]:
    return (abs(v), 0 if v > 0 else 1)


def _canon_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if _vkey(u) <= _vkey(v) else (v, u)


@dataclass(frozen=True)
class WhiteheadGraph:
    """Multigraph on the 2*rank letter-vertices; edges carry multiplicity."""

    rank: int
    edges: tuple[tuple[int, int], ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return vertex_order(self.rank)

    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum((e[0] == v) + (e[1] == v) for e in self.edges)

    def simple_adjacency(self) -> dict[int, set[int]]:
        """Adjacency with multiplicity ignored (used for connectivity)."""
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        return adj


def whitehead_graph(w: Word) -> WhiteheadGraph:
    """One edge {u, v^-1} per cyclic length-2 subword uv of the cyclic core."""
    core = cyclic_reduce(w).core
    if core.is_identity():
        raise IdentityWordError("the word reduces to the identity")
    ls = core.letters
    pairs = [
        _canon_edge(ls[i], -ls[(i + 1) % len(ls)]) for i in range(len(ls))
    ]
    pairs.sort(key=lambda e: (_vkey(e[0]), _vkey(e[1])))
    return WhiteheadGraph(w.rank, tuple(pairs))


def find_cut_vertex(g: WhiteheadGraph) -> int | None:
    """Lowest vertex (in the fixed letter order) whose removal disconnects.

    Returns None when no vertex removal disconnects the induced subgraph.
    """
    adj = g.simple_adjacency()
    verts = g.vertices
    for v in verts:
        rest = [u for u in verts if u != v]
        seen = {rest[0]}
        stack = [rest[0]]
        while stack:
            cur = stack.pop()
            for nb in adj[cur]:
                if nb != v and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) < len(rest):
            return v
    return None


@dataclass(frozen=True)
class WhAutomorphism:
    """A Whitehead automorphism.

    ``multiplier`` kind: determined by a letter ``a`` and a set ``Z`` with
    a in Z, a^-1 not in Z.  Letters v != a^{+-1} map to
    ``a^[v^-1 in Z] * v * a^-[v in Z]``; a and a^-1 are fixed.  Every image
    of a basis letter therefore has length <= 3.

    ``permutation`` kind: a signed permutation of the generators, given by
    the images of generators 1..rank.
    """

    kind: str
    rank: int
    multiplier: int | None = None
    zset: frozenset[int] | None = None
    images: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind == "multiplier":
            a, z = self.multiplier, self.zset
            if a is None or z is None:
                raise DomainError("multiplier move needs a letter and a set")
            if not (0 < abs(a) <= self.rank):
                raise RankError(f"multiplier {a} outside rank {self.rank}")
            if a not in z or -a in z:
                raise DomainError("need a in Z and a^-1 not in Z")
            if any(v == 0 or abs(v) > self.rank for v in z):
                raise RankError("Z contains a letter outside the alphabet")
        elif self.kind == "permutation":
            imgs = self.images
            if imgs is None or len(imgs) != self.rank:
                raise DomainError("need one image per generator")
            if sorted(abs(i) for i in imgs) != list(range(1, self.rank + 1)):
                raise DomainError("images are not a signed permutation")
        else:
            raise DomainError(f"unknown automorphism kind {self.kind!r}")

    @classmethod
    def multiplier_move(cls, a: int, zset, rank: int) -> "WhAutomorphism":
        return cls("multiplier", rank, multiplier=a, zset=frozenset(zset))

    @classmethod
    def permutation_move(cls, images, rank: int) -> "WhAutomorphism":
        return cls("permutation", rank, images=tuple(images))

    @classmethod
    def identity(cls, rank: int) -> "WhAutomorphism":
        return cls.permutation_move(range(1, rank + 1), rank)

    def letter_image(self, letter: int) -> tuple[int, ...]:
        if self.kind == "multiplier":
            a = self.multiplier
            if letter == a or letter == -a:
                return (letter,)
            image = []
            if -letter in self.zset:
                image.append(a)
            image.append(letter)
            if letter in self.zset:
                image.append(-a)
            return tuple(image)
        img = self.images[abs(letter) - 1]
        return (img,) if letter > 0 else (-img,)

    def __call__(self, w: Word) -> Word:
        return apply_automorphism((self,), w)

    def inverse(self) -> "WhAutomorphism":
        if self.kind == "permutation":
            inv = [0] * self.rank
            for i, img in enumerate(self.images):
                inv[abs(img) - 1] = (i + 1) if img > 0 else -(i + 1)
            return WhAutomorphism.permutation_move(inv, self.rank)
        a = self.multiplier
        z = frozenset(self.zset - {a}) | {-a}
        return WhAutomorphism.multiplier_move(-a, z, self.rank)

    def generator_images(self) -> dict[str, str]:
        """Images of the generators, in compact text (for certificates)."""
        from .words import format_word

        out = {}
        for i in range(1, self.rank + 1):
            gen = Word((i,), self.rank)
            out[format_word(gen)] = format_word(self(gen))
        return out

    def is_identity_map(self) -> bool:
        return all(self.letter_image(i) == (i,) for i in range(1, self.rank + 1))


@lru_cache(maxsize=None)
def enumerate_whitehead_automorphisms(rank: int) -> tuple[WhAutomorphism, ...]:
    """All multiplier moves in a fixed order, identity excluded.

    For each of the 2*rank multipliers there are 2^(2*rank-2) admissible
    sets Z, one of which ({a} alone) is the identity, so the count is
    2*rank * (2^(2*rank-2) - 1).
    """
    if rank < 2:
        raise RankError(f"rank must be at least 2, got {rank}")
    table = []
    verts = vertex_order(rank)
    for a in verts:
        others = [v for v in verts if abs(v) != abs(a)]
        for mask in range(1, 1 << len(others)):
            z = {a} | {others[i] for i in range(len(others)) if mask >> i & 1}
            table.append(WhAutomorphism.multiplier_move(a, z, rank))
    return tuple(table)


@lru_cache(maxsize=None)
def enumerate_permutation_automorphisms(rank: int) -> tuple[WhAutomorphism, ...]:
    """All signed permutations of the generators (identity included)."""
    out = []
    for perm in itertools.permutations(range(1, rank + 1)):
        for signs in itertools.product((1, -1), repeat=rank):
            out.append(
                WhAutomorphism.permutation_move(
                    tuple(s * p for s, p in zip(signs, perm)), rank
                )
            )
    return tuple(out)


@dataclass(frozen=True)
class MinimizationCertificate:
    """Record of a greedy descent to minimal cyclic length.

    Applying ``chain`` to ``input`` and cyclically reducing yields
    ``minimized``; ``length_trace`` is strictly decreasing and ends at the
    minimal value.
    """

    input: Word
    minimized: Word
    chain: tuple[WhAutomorphism, ...]
    length_trace: tuple[int, ...]

    def to_json_dict(self) -> dict:
        from .words import format_word

        return {
            "input": format_word(self.input),
            "minimized": format_word(self.minimized),
            "chain": [phi.generator_images() for phi in self.chain],
            "length_trace": list(self.length_trace),
        }


def minimize_cyclic_length(w: Word) -> MinimizationCertificate:
    """Greedy descent: apply the best strictly-shortening multiplier move.

    Ties go to the first move in the fixed enumeration order, making the
    certificate reproducible.  Signed permutations never change length and
    are not searched.
    """
    if w.is_identity():
        raise IdentityWordError("cannot minimize the identity")
    table = enumerate_whitehead_automorphisms(w.rank)
    current = cyclic_reduce(w).core
    trace = [len(current)]
    chain: list[WhAutomorphism] = []
    while True:
        best = None
        best_len = len(current)
        for phi in table:
            image_len = len(cyclic_reduce(phi(current)).core)
            if image_len < best_len:
                best, best_len = phi, image_len
        if best is None:
            break
        chain.append(best)
        current = cyclic_reduce(best(current)).core
        trace.append(len(current))
    minimized = cyclic_reduce(apply_automorphism(chain, w)).core
    return MinimizationCertificate(w, minimized, tuple(chain), tuple(trace))


class Classification(str, Enum):
    PRIMITIVE = "primitive"
    SIMPLE_NON_PRIMITIVE = "simple-non-primitive"
    FILLING = "filling"


def classify(w: Word) -> Classification:
    """Primitive / simple-but-not-primitive / filling trichotomy.

    Minimize first.  Length 1 means primitive.  Otherwise a cut vertex in
    the Whitehead graph of the minimal word certifies containment in a
    proper free factor, and its absence certifies filling.
    """
    cert = minimize_cyclic_length(w)
    if len(cert.minimized) == 1:
        return Classification.PRIMITIVE
    if find_cut_vertex(whitehead_graph(cert.minimized)) is not None:
        return Classification.SIMPLE_NON_PRIMITIVE
    return Classification.FILLING


def is_primitive(w: Word) -> bool:
    if w.is_identity():
        raise IdentityWordError("the identity is not primitive")
    return len(minimize_cyclic_length(w).minimized) == 1


def minimizing_basis(w: Word) -> tuple[tuple[WhAutomorphism, ...], Word]:
    """The descent chain together with the minimal cyclically reduced word.

    Read as a change of basis, the chain rewrites ``w`` in a basis that
    minimizes its length.
    """
    cert = minimize_cyclic_length(w)
    return cert.chain, cert.minimized
