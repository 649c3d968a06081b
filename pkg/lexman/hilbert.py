"""Hilbert functions of monomial ideals and Macaulay lexification."""

import logging
from collections import Counter
from typing import Callable, Iterable, Optional, Sequence, Tuple, TypeVar

from sympy.polys.monomials import monomial_deg, monomial_lcm, monomial_mul

from lexman.constants import DEFAULT_SETTINGS
from lexman.exceptions import (
    BoundExceededError,
    ConstructionError,
    InvariantError,
    TruncationError,
)
from lexman.models import PurePowers, RingContext
from lexman.monomial import MonomialIdeal
from lexman.util import count_monomials, monomials_of_degree, variable

logger = logging.getLogger(__name__)

T = TypeVar("T")


class HilbertFunction:
    """Dimensions of the graded slices I_0, ..., I_D of an ideal."""

    __slots__ = ("ring", "dims")

    def __init__(self, ring: RingContext, dims: Iterable[int]):
        self.ring = ring
        self.dims = tuple(dims)
        for d, dim in enumerate(self.dims):
            if not 0 <= dim <= count_monomials(ring.n, d):
                raise InvariantError(f"dim {dim} impossible in degree {d} with {ring.n} variables")

    @property
    def D(self) -> int:  # pylint: disable=invalid-name
        """The truncation degree."""
        return len(self.dims) - 1

    def __getitem__(self, d: int) -> int:
        return self.dims[d]

    def __eq__(self, other) -> bool:
        if not isinstance(other, HilbertFunction):
            return NotImplemented
        return self.ring == other.ring and self.dims == other.dims

    def __hash__(self) -> int:
        return hash((self.ring, self.dims))

    def __repr__(self) -> str:
        return f"HilbertFunction(n={self.ring.n}, dims={self.dims})"

    def quotient(self) -> Tuple[int, ...]:
        """Dimensions of the quotient ring A/I in each degree."""
        return tuple(count_monomials(self.ring.n, d) - dim for d, dim in enumerate(self.dims))


def hf_ideal(ideal: MonomialIdeal, bound: int) -> HilbertFunction:
    """Hilbert function of the ideal up to degree ``bound``, by counting slices.

    Each slice must cover the shadow of the one below it.
    """
    if bound < 0:
        raise InvariantError(f"Truncation degree must be non-negative, got {bound}")
    slices = [ideal.slice(d) for d in range(bound + 1)]
    for d in range(bound):
        covered = len(shadow(ideal.ring, slices[d]))
        if len(slices[d + 1]) < covered:
            raise InvariantError(
                f"dim I_{d + 1} = {len(slices[d + 1])} is below the shadow of I_{d} ({covered})"
            )
    return HilbertFunction(ideal.ring, (len(piece) for piece in slices))


def hf_inclusion_exclusion(
    ideal: MonomialIdeal,
    bound: int,
    max_generators: int = DEFAULT_SETTINGS["max_inclusion_exclusion_generators"],
) -> HilbertFunction:
    """Hilbert function by inclusion-exclusion over lcms of generator subsets.

    Equal lcms are merged as they appear, so the signed sum stays small even
    though it ranges over every subset.

    Args:
        ideal: the monomial ideal
        bound: the truncation degree
        max_generators: refuse ideals with more generators than this

    Returns:
        The same Hilbert function as :func:`hf_ideal`, computed independently.

    """
    if len(ideal.gens) > max_generators:
        raise BoundExceededError(
            f"{len(ideal.gens)} generators exceed the inclusion-exclusion bound {max_generators}"
        )
    terms = Counter()
    for gen in ideal.gens:
        update = Counter({gen: 1})
        for multiple, sign in terms.items():
            update[monomial_lcm(multiple, gen)] -= sign
        terms.update(update)
    n = ideal.ring.n
    dims = [0] * (bound + 1)
    for multiple, sign in terms.items():
        if not sign:
            continue
        low = monomial_deg(multiple)
        for d in range(low, bound + 1):
            dims[d] += sign * count_monomials(n, d - low)
    return HilbertFunction(ideal.ring, dims)


def default_truncation(
    ideal: MonomialIdeal,
    powers: Optional[PurePowers] = None,
    margin: int = DEFAULT_SETTINGS["truncation_margin"],
) -> int:
    """Pick D = max(generator degrees, e_r) + n + margin."""
    top = ideal.max_degree
    if powers is not None and powers.r:
        top = max(top, powers.e[-1])
    return top + ideal.ring.n + margin


def retry_truncation(
    operation: Callable[[int], T],
    bound: int,
    step: int,
    cap: int = DEFAULT_SETTINGS["truncation_cap"],
) -> T:
    """Run ``operation(D)``, growing D by ``step`` after every truncation error.

    Args:
        operation: a callable taking the truncation degree
        bound: the first truncation degree to try
        step: how much to grow D by between attempts (usually n)
        cap: the largest D that may be tried

    Returns:
        Whatever the operation returns on its first successful attempt.

    """
    while True:
        try:
            return operation(bound)
        except TruncationError as exc:
            if bound + step > cap:
                raise TruncationError(f"{exc} (gave up at D={bound}, cap {cap})") from exc
            logger.info(
                f"Truncation at D={bound} too small ({exc}); retrying with D={bound + step}"
            )
            bound += step


def shadow(ring: RingContext, monomials: Iterable[Sequence[int]]) -> frozenset:
    """All products x_i * m for m in ``monomials``."""
    result = set()
    for m in monomials:
        for index in range(ring.n):
            result.add(monomial_mul(tuple(m), variable(ring.n, index)))
    return frozenset(result)


def ideal_from_segments(ring: RingContext, sizes: Sequence[int]) -> MonomialIdeal:
    """Build the lex ideal whose degree-d slice is the first ``sizes[d]`` monomials.

    The segments must grow by shadows (x_i * L_d ⊆ L_{d+1}) and no generator may
    appear in the top two degrees.
    """
    # local import: transforms builds on this module
    from lexman.transforms import GradedMonomialSpace, min_gens_from_space

    slices = [monomials_of_degree(ring.n, d)[:size] for d, size in enumerate(sizes)]
    return min_gens_from_space(GradedMonomialSpace(ring, slices))


def lexify_hf(ideal: MonomialIdeal, bound: int) -> MonomialIdeal:
    """The lex ideal with the same Hilbert function as ``ideal`` (Macaulay).

    Args:
        ideal: any monomial ideal
        bound: the truncation degree, at least the largest generator degree + n

    Returns:
        The lex ideal, checked for lexness, shadow containment and equal Hilbert function.

    """
    if bound < ideal.max_degree + ideal.ring.n:
        raise TruncationError(
            f"lexify_hf needs D >= {ideal.max_degree + ideal.ring.n}, got {bound}"
        )
    target = hf_ideal(ideal, bound)
    ring = ideal.ring
    for d in range(bound):
        segment = monomials_of_degree(ring.n, d)[: target[d]]
        following = set(monomials_of_degree(ring.n, d + 1)[: target[d + 1]])
        if not shadow(ring, segment) <= following:
            raise ConstructionError(
                f"Lex segments of sizes {target[d]}, {target[d + 1]} do not form an ideal "
                f"in degrees {d}, {d + 1}"
            )
    lex = ideal_from_segments(ring, target.dims)
    if hf_ideal(lex, bound) != target:
        raise ConstructionError(f"Lexification of {ideal} changed the Hilbert function")
    logger.debug(f"Lexified {ideal} to {lex}")
    return lex
