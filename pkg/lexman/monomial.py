"""Monomials, lex order and monomial ideals.

Monomials are exponent tuples. Variables are addressed by 0-based index and
ordered x_1 > x_2 > ... > x_n, so Python's tuple comparison *is* the lex order
on monomials of equal degree and "a >lex b" always means ``a < b`` as indices.
"""

import logging
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

from sympy.polys.monomials import monomial_deg, monomial_div, monomial_divides, monomial_mul

from lexman.exceptions import InvariantError, RingMismatchError, TruncationError
from lexman.models import (
    AbDecomposition,
    Ordering,
    PiecewiseLexSpec,
    PurePowers,
    RingContext,
)
from lexman.util import Monomial, monomials_of_degree, render_generators, variable

logger = logging.getLogger(__name__)


def minimalize(gens: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    """Drop every generator divisible by another one.

    Args:
        gens: any finite collection of monomials

    Returns:
        The minimal generators, sorted in descending lex order.

    """
    # a divisor never has larger degree, so scanning by degree suffices
    candidates = sorted(set(gens), key=lambda gen: (monomial_deg(gen), tuple(-e for e in gen)))
    kept = []
    for gen in candidates:
        if not any(monomial_divides(other, gen) for other in kept):
            kept.append(gen)
    return tuple(sorted(kept, reverse=True))


class MonomialIdeal:
    """A monomial ideal held by its minimal generators.

    The constructor minimalizes and sorts the generators, so two equal ideals
    always compare and hash equal. The zero ideal has no generators; the unit
    ideal is generated by the unit monomial.
    """

    __slots__ = ("ring", "gens", "_slices")

    def __init__(self, ring: RingContext, gens: Iterable[Sequence[int]] = ()):
        self.ring = ring
        self.gens = minimalize(ring.check(gen) for gen in gens)
        self._slices: Dict[int, Tuple[Monomial, ...]] = {}

    def __repr__(self) -> str:
        return f"MonomialIdeal(n={self.ring.n}, gens={render_generators(self.gens)})"

    def __str__(self) -> str:
        return render_generators(self.gens)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.ring == other.ring and self.gens == other.gens

    def __hash__(self) -> int:
        return hash((self.ring, self.gens))

    def __contains__(self, monomial: Monomial) -> bool:
        return membership(self, monomial)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        _same_ring(self.ring, other.ring)
        return MonomialIdeal(self.ring, self.gens + other.gens)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def max_degree(self) -> int:
        """Largest degree of a minimal generator (0 for the zero ideal)."""
        return max((monomial_deg(gen) for gen in self.gens), default=0)

    def slice(self, d: int) -> Tuple[Monomial, ...]:
        """The degree-d monomials of the ideal; see :func:`slice_`."""
        return slice_(self, d)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        """Check ``other ⊆ self`` by testing the generators of ``other``."""
        _same_ring(self.ring, other.ring)
        return all(gen in self for gen in other.gens)

    def without(self, gen: Monomial) -> "MonomialIdeal":
        """The ideal generated by every minimal generator except ``gen``."""
        return MonomialIdeal(self.ring, (other for other in self.gens if other != gen))


def _same_ring(left: RingContext, right: RingContext):
    if left != right:
        raise RingMismatchError(f"Ring with {left.n} variables mixed with {right.n}")


def lex_cmp(u: Monomial, v: Monomial) -> Ordering:
    """Compare two monomials in lex order with x_1 > x_2 > ... > x_n.

    Args:
        u: the left monomial
        v: the right monomial

    Returns:
        GREATER, EQUAL or LESS according to the first differing exponent.

    """
    if len(u) != len(v):
        raise RingMismatchError(f"Cannot compare {u} and {v}: different variable counts")
    u, v = tuple(u), tuple(v)
    if u == v:
        return Ordering.EQUAL
    return Ordering.GREATER if u > v else Ordering.LESS


def decompose_ab(m: Monomial, a: int, b: int) -> AbDecomposition:
    """Split m as f * a^alpha * b^beta with f coprime to both variables.

    Args:
        m: the monomial to split
        a: index of the first variable
        b: index of the second variable

    Returns:
        The cofactor f and the two exponents.

    """
    if a == b:
        raise InvariantError("decompose_ab needs two distinct variables")
    if not (0 <= a < len(m) and 0 <= b < len(m)):
        raise IndexError(f"Variable index out of range for {len(m)} variables")
    f = monomial_div(m, monomial_mul(variable(len(m), a, m[a]), variable(len(m), b, m[b])))
    return AbDecomposition(f, m[a], m[b])


def membership(ideal: MonomialIdeal, m: Monomial) -> bool:
    """Check if some generator of the ideal divides m."""
    if len(m) != ideal.ring.n:
        raise RingMismatchError(f"Monomial {m} is not in a ring with {ideal.ring.n} variables")
    return any(monomial_divides(gen, m) for gen in ideal.gens)


def slice_(ideal: MonomialIdeal, d: int) -> Tuple[Monomial, ...]:
    """The graded piece I_d.

    Args:
        ideal: the monomial ideal to slice
        d: a non-negative degree

    Returns:
        Every degree-d monomial in the ideal, in descending lex order.

    """
    if d < 0:
        raise InvariantError(f"Degree must be non-negative, got {d}")
    cached = ideal._slices.get(d)  # pylint: disable=protected-access
    if cached is None:
        gens = [gen for gen in ideal.gens if monomial_deg(gen) <= d]
        cached = tuple(
            m
            for m in monomials_of_degree(ideal.ring.n, d)
            if any(monomial_divides(g, m) for g in gens)
        )
        ideal._slices[d] = cached  # pylint: disable=protected-access
    return cached


def exchanges(u: Monomial, largest_only: bool = False):
    """Yield u * x_j / x_i for every x_i dividing u and j < i."""
    sources = [i for i, e in enumerate(u) if e > 0]
    if largest_only:
        sources = sources[-1:]
    for i in sources:
        for j in range(i):
            yield monomial_mul(monomial_div(u, variable(len(u), i)), variable(len(u), j))


def is_strongly_stable(ideal: MonomialIdeal) -> bool:
    """Check if the ideal is strongly stable.

    It suffices to test minimal generators: if u * x_j / x_i lies in I for every
    generator u, then for w = u * v the exchange either hits a variable of u
    (and is a multiple of u * x_j / x_i) or one of v (and is a multiple of u).
    """
    return all(moved in ideal for gen in ideal.gens for moved in exchanges(gen))


def is_stable(ideal: MonomialIdeal) -> bool:
    """Check if u * x_j / x_max(u) lies in I for every generator u and j < max(u)."""
    return all(moved in ideal for gen in ideal.gens for moved in exchanges(gen, True))


def is_lex(ideal: MonomialIdeal, bound: Optional[int] = None) -> bool:
    """Check if every graded slice up to ``bound`` is an initial lex segment.

    Args:
        ideal: the ideal to test
        bound: the truncation degree, at least one above the largest generator
            degree; defaults to exactly that

    Returns:
        True if each slice is the first |I_d| monomials of degree d.

    """
    if bound is None:
        bound = ideal.max_degree + 1
    if bound < ideal.max_degree + 1:
        raise TruncationError(
            f"is_lex needs D >= {ideal.max_degree + 1}, got {bound}"
        )
    n = ideal.ring.n
    for d in range(bound + 1):
        piece = ideal.slice(d)
        if piece != monomials_of_degree(n, d)[: len(piece)]:
            return False
    return True


def borel_closure(ring: RingContext, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    """The smallest strongly stable ideal containing ``gens``.

    Args:
        ring: the ambient ring
        gens: any finite set of monomials

    Returns:
        The ideal generated by every monomial reachable by exchanges x_i -> x_j, j < i.

    """
    seen = {ring.check(gen) for gen in gens}
    frontier = list(seen)
    while frontier:
        current = frontier.pop()
        for moved in exchanges(current):
            if moved not in seen:
                seen.add(moved)
                frontier.append(moved)
    return MonomialIdeal(ring, seen)


def pure_powers_ideal(powers: PurePowers, ring: RingContext) -> MonomialIdeal:
    """The ideal P = (x_1^e_1, ..., x_r^e_r)."""
    return MonomialIdeal(ring, powers.generators(ring))


def _component_is_lex(index: int, component: Tuple[Monomial, ...]) -> bool:
    subring = RingContext(index + 1)
    return is_lex(MonomialIdeal(subring, (gen[: index + 1] for gen in component)))


def plex_ideal(spec: PiecewiseLexSpec) -> MonomialIdeal:
    """The piecewise lex ideal L_(1)A + ... + L_(n)A.

    Args:
        spec: the generators of each component

    Returns:
        The minimalized sum of the extended components.

    """
    for index, component in enumerate(spec.components):
        if component and not _component_is_lex(index, component):
            raise InvariantError(
                f"L_({index + 1}) = {render_generators(component)} is not lex "
                f"in the first {index + 1} variables"
            )
    return MonomialIdeal(spec.ring, (gen for component in spec.components for gen in component))


def support(m: Monomial) -> FrozenSet[int]:
    """Indices of the variables dividing m."""
    return frozenset(pos for pos, e in enumerate(m) if e > 0)
