"""Cayley-tree geometry: axes, orthogonal projections, and geometric indices.

Tree vertices are reduced words; no explicit tree is materialized.  The
axis of a cyclically reduced b passes through the identity vertex and
consists of the prefixes of the periodic rays b^inf and b^-inf, so all
geometry reduces to longest-common-prefix computations.  Points of the
axis are addressed by a signed integer position measured in letters from
the identity (positive in the b direction).

The geometric index of a under b reads off the minimal interval
[b^i, b^j] containing the projection of the axis of a onto the axis of b:
the index is i if i > 0, j if j < 0, and 0 otherwise.  It always agrees
with the combinatorial exponent of words.b_reduced_decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    AxesEqualError,
    DomainError,
    IdentityWordError,
    NotCyclicallyReducedError,
    RankError,
    UnboundedOverlapError,
)
from .words import Word, cyclic_reduce


def _require_axis_word(b: Word) -> None:
    if b.is_identity():
        raise NotCyclicallyReducedError("b must be nonempty")
    if not b.is_cyclically_reduced():
        raise NotCyclicallyReducedError(f"b = {b} is not cyclically reduced")


@dataclass(frozen=True)
class AxisInterval:
    """An interval of the axis of ``on_axis_of`` with sub-edge resolution.

    The endpoints sit at letter positions ``lo*|b| + offset_lo`` and
    ``hi*|b| + offset_hi`` with offsets in [0, |b|), so the point case is
    lo == hi with equal offsets.
    """

    on_axis_of: Word
    lo: int
    offset_lo: int
    hi: int
    offset_hi: int

    @classmethod
    def from_positions(cls, b: Word, t_lo: int, t_hi: int) -> "AxisInterval":
        if t_lo > t_hi:
            raise DomainError("interval endpoints out of order")
        m = len(b)
        return cls(b, t_lo // m, t_lo % m, t_hi // m, t_hi % m)

    @property
    def lo_position(self) -> int:
        return self.lo * len(self.on_axis_of) + self.offset_lo

    @property
    def hi_position(self) -> int:
        return self.hi * len(self.on_axis_of) + self.offset_hi

    @property
    def length(self) -> int:
        """Length of the interval in edges (letters)."""
        return self.hi_position - self.lo_position

    def power_hull(self) -> tuple[int, int]:
        """Minimal (i, j) with b^i <= interval <= b^j."""
        j = self.hi if self.offset_hi == 0 else self.hi + 1
        return self.lo, j


def _ray(block: tuple[int, ...], n: int) -> tuple[int, ...]:
    reps = -(-n // len(block))
    return (block * reps)[:n]


def _lcp(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    i = 0
    for x, y in zip(a, b):
        if x != y:
            break
        i += 1
    return i


def _end_projection_position(
    prefix: tuple[int, ...], period: tuple[int, ...], b: Word
) -> int:
    """Axis position of the projection of the boundary end prefix.period^inf.

    The ray from the identity to the end travels along the axis of b for as
    long as the infinite word agrees with b^inf (positive direction) or
    b^-inf (negative); the divergence vertex is the projection.  Agreement
    past |prefix| + |period| + |b| letters forces the periodic tails to
    coincide forever, i.e. a shared end and hence a shared axis.
    """
    bl = b.letters
    n = len(prefix) + len(period) + len(bl) + 2
    reps = -(-(n - len(prefix)) // len(period))
    xi = (prefix + period * reps)[:n]
    forward = _lcp(xi, _ray(bl, n))
    if forward >= n:
        raise AxesEqualError("the axes share an end")
    if forward > 0:
        return forward
    backward = _lcp(xi, _ray(tuple(-l for l in reversed(bl)), n))
    if backward >= n:
        raise AxesEqualError("the axes share an end")
    return -backward


def distance_to_axis(p: Word, a: Word) -> tuple[int, Word]:
    """Distance from vertex p to the axis of a, with the closest point.

    Uses d(p, X_a) = (d(p, a.p) - translation_length(a)) / 2; the foot is
    read off the common-prefix structure of the geodesic from p to a.p.
    """
    if a.is_identity():
        raise IdentityWordError("a must be nontrivial")
    if p.rank != a.rank:
        raise RankError("p and a must have the same rank")
    u = p.inverse() * a * p
    spread = len(u) - len(cyclic_reduce(a).core)
    distance = spread // 2
    foot = p * Word(u.letters[:distance], p.rank)
    return distance, foot


def project_axis_to_axis(a: Word, b: Word) -> AxisInterval:
    """Minimal axis interval containing the projection of X_a onto X_b.

    When the axes intersect, the interval is exactly their overlap; when
    they are disjoint it is the single projection point.  The two boundary
    ends of X_a project to the interval's endpoints.
    """
    _require_axis_word(b)
    if a.is_identity():
        raise IdentityWordError("a must be nontrivial")
    if a.rank != b.rank:
        raise RankError("a and b must have the same rank")
    dec = cyclic_reduce(a)
    g = dec.conjugator.letters
    core = dec.core.letters
    t_fwd = _end_projection_position(g, core, b)
    t_bwd = _end_projection_position(
        g, tuple(-l for l in reversed(core)), b
    )
    return AxisInterval.from_positions(b, min(t_fwd, t_bwd), max(t_fwd, t_bwd))


def geometric_index(a: Word, b: Word) -> int:
    """Index read from the projection of X_a onto X_b via the power hull.

    Equals words.b_reduced_decomposition(a, b).k exactly.
    """
    i, j = project_axis_to_axis(a, b).power_hull()
    if i > 0:
        return i
    if j < 0:
        return j
    return 0


@dataclass(frozen=True)
class OverlapResult:
    """Approximation of the overlap of a subgroup's minimal subtree with X_b."""

    interval: AxisInterval
    stabilized: bool
    depth: int
    elements_sampled: int


def subtree_axis_overlap(
    generators,
    b: Word,
    depth: int,
    element_budget: int | None = None,
    unbounded_multiple: int = 6,
) -> OverlapResult:
    """Hull of axis projections over all products of generator-length <= depth.

    The minimal subtree of the subgroup is the union of its elements'
    axes, so the hull of the sampled projections approximates (from below)
    the projection of the subtree, which equals the overlap with X_b
    whenever they meet.  ``stabilized`` reports whether the hull stopped
    growing between depths depth-1 and depth.

    An element sharing the axis of b, or a hull longer than
    ``unbounded_multiple * |b|``, means the subgroup meets the cyclic group
    of b and the overlap is infinite: UnboundedOverlapError.  (Proper free
    factors never exceed |b|, so the threshold has ample slack.)  An
    exhausted element budget stops the scan with whatever hull was
    accumulated, flagged unstabilized.
    """
    _require_axis_word(b)
    gen_words = [g for g in generators if not g.is_identity()]
    if not gen_words:
        raise DomainError("need at least one nontrivial generator")
    if any(g.rank != b.rank for g in gen_words):
        raise RankError("generators and b must have the same rank")
    if depth < 1:
        raise DomainError("depth must be at least 1")

    lo = hi = None
    sampled = 0
    exhausted = False
    hulls: list[tuple[int, int] | None] = []
    signed = [i + 1 for i in range(len(gen_words))]
    signed += [-i for i in signed]
    frontier: list[tuple[tuple[int, ...], Word]] = [((), Word.identity(b.rank))]
    for _ in range(depth):
        new_frontier = []
        for idx_word, prod in frontier:
            for s in signed:
                if idx_word and s == -idx_word[-1]:
                    continue
                g = gen_words[abs(s) - 1]
                w = prod * (g if s > 0 else g.inverse())
                new_frontier.append((idx_word + (s,), w))
                if w.is_identity():
                    continue
                try:
                    iv = project_axis_to_axis(w, b)
                except AxesEqualError as exc:
                    raise UnboundedOverlapError(
                        f"element {w} shares the axis of b; the overlap is unbounded"
                    ) from exc
                sampled += 1
                t0, t1 = iv.lo_position, iv.hi_position
                lo = t0 if lo is None else min(lo, t0)
                hi = t1 if hi is None else max(hi, t1)
                if hi - lo > unbounded_multiple * len(b):
                    raise UnboundedOverlapError(
                        f"overlap hull reached {hi - lo} letters; the subgroup "
                        "meets the cyclic group of b"
                    )
                if element_budget is not None and sampled >= element_budget:
                    exhausted = True
                    break
            if exhausted:
                break
        if exhausted:
            break
        frontier = new_frontier
        hulls.append((lo, hi))
    if lo is None:
        raise DomainError("all sampled products were trivial")
    stabilized = (
        not exhausted and len(hulls) >= 2 and hulls[-1] == hulls[-2]
    )
    return OverlapResult(
        AxisInterval.from_positions(b, lo, hi), stabilized, depth, sampled
    )


def stable_subtree_overlap(
    generators,
    b: Word,
    start_depth: int = 4,
    max_depth: int = 16,
    element_budget: int = 20000,
) -> OverlapResult:
    """Double the product depth until the overlap hull stabilizes.

    Genuinely unbounded overlaps raise UnboundedOverlapError (shared axis,
    or a hull several times longer than b).  When the depth or element
    budget runs out first, the best hull so far is returned with
    ``stabilized`` False: a lower approximation whose completeness was
    assumed, not proven.
    """
    depth = start_depth
    while True:
        result = subtree_axis_overlap(generators, b, depth, element_budget)
        if result.stabilized or depth >= max_depth:
            return result
        depth = min(2 * depth, max_depth)
