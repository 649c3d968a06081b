"""Shifts, compressions and the stabilization pipeline.

Every operation works degree by degree on the slices I_0, ..., I_D and rebuilds
an ideal from the result with :func:`min_gens_from_space`, which refuses spaces
that are not closed under multiplication and answers that are not determined
by the first D degrees.
"""

import logging
from collections import defaultdict
from functools import partial
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.monomials import monomial_deg, monomial_div, monomial_mul

from lexman.betti import betti_leq, betti_table
from lexman.constants import DEFAULT_SETTINGS
from lexman.exceptions import (
    ClosureError,
    HilbertMismatchError,
    InvariantError,
    PreconditionError,
    PropertyViolation,
    StabilizationError,
    TruncationError,
)
from lexman.hilbert import hf_ideal
from lexman.models import FieldSpec, PurePowers, RingContext, TransformKind, TransformStep
from lexman.monomial import (
    MonomialIdeal,
    decompose_ab,
    exchanges,
    pure_powers_ideal,
)
from lexman.util import Monomial, monomials_of_degree, variable

logger = logging.getLogger(__name__)


class GradedMonomialSpace:
    """Degree-indexed sets of monomials, up to a truncation degree D."""

    __slots__ = ("ring", "slices", "_members")

    def __init__(self, ring: RingContext, slices: Iterable[Iterable[Sequence[int]]]):
        self.ring = ring
        normalized = []
        for d, piece in enumerate(slices):
            piece = tuple(sorted({ring.check(m) for m in piece}, reverse=True))
            for m in piece:
                if monomial_deg(m) != d:
                    raise InvariantError(f"Monomial {m} of degree {monomial_deg(m)} in slice {d}")
            normalized.append(piece)
        self.slices: Tuple[Tuple[Monomial, ...], ...] = tuple(normalized)
        self._members = tuple(frozenset(piece) for piece in self.slices)

    @classmethod
    def from_ideal(cls, ideal: MonomialIdeal, bound: int) -> "GradedMonomialSpace":
        """The slices of an ideal in degrees 0..bound."""
        return cls(ideal.ring, (ideal.slice(d) for d in range(bound + 1)))

    @property
    def D(self) -> int:  # pylint: disable=invalid-name
        """The truncation degree."""
        return len(self.slices) - 1

    def slice(self, d: int) -> Tuple[Monomial, ...]:
        return self.slices[d]

    def __contains__(self, m: Monomial) -> bool:
        d = monomial_deg(m)
        return d <= self.D and m in self._members[d]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMonomialSpace):
            return NotImplemented
        return self.ring == other.ring and self.slices == other.slices

    def __hash__(self) -> int:
        return hash((self.ring, self.slices))

    def __repr__(self) -> str:
        return f"GradedMonomialSpace(n={self.ring.n}, dims={self.dims})"

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(len(piece) for piece in self.slices)

    def union(self, other: "GradedMonomialSpace") -> "GradedMonomialSpace":
        """Slice-wise union of two spaces with the same truncation degree."""
        if self.D != other.D:
            raise InvariantError(f"Cannot merge spaces truncated at {self.D} and {other.D}")
        return GradedMonomialSpace(
            self.ring, (left + right for left, right in zip(self.slices, other.slices))
        )

    def issuperset(self, other: "GradedMonomialSpace") -> bool:
        """Check slice-wise containment of ``other`` up to the smaller truncation."""
        return all(
            mine >= theirs for mine, theirs in zip(self._members, other._members)
        )


def min_gens_from_space(space: GradedMonomialSpace) -> MonomialIdeal:
    """Rebuild the ideal whose slices up to D are exactly those of ``space``.

    Args:
        space: a graded monomial space closed under multiplication by variables

    Returns:
        The ideal generated by the monomials of the space that have no divisor
        in the previous slice.

    """
    ring, top = space.ring, space.D
    members = space._members  # pylint: disable=protected-access
    for d in range(top):
        for m in space.slices[d]:
            for index in range(ring.n):
                lifted = monomial_mul(m, variable(ring.n, index))
                if lifted not in members[d + 1]:
                    raise ClosureError(
                        f"Space is not an ideal: x{index + 1} * {m} is missing from degree {d + 1}"
                    )
    gens = []
    for d, piece in enumerate(space.slices):
        for m in piece:
            lowered = (
                monomial_div(m, variable(ring.n, index))
                for index in range(ring.n)
                if m[index]
            )
            if d == 0 or not any(low in members[d - 1] for low in lowered):
                gens.append(m)
    late = [gen for gen in gens if monomial_deg(gen) >= top - 1]
    if late:
        raise TruncationError(
            f"Generators {late[:3]} appear in the top two degrees of D={top}"
        )
    ideal = MonomialIdeal(ring, gens)
    for d in range(top + 1):
        if ideal.slice(d) != space.slices[d]:
            raise ClosureError(f"Generators do not reproduce slice {d}")
    return ideal


def _check_pair(ring: RingContext, a: int, b: int):
    if not 0 <= a < b < ring.n:
        raise PreconditionError(
            f"Need variable indices 0 <= a < b < {ring.n} (a >lex b), got a={a}, b={b}"
        )


def _require_powers(ideal: MonomialIdeal, powers: PurePowers):
    for gen in powers.generators(ideal.ring):
        if gen not in ideal:
            raise PreconditionError(f"Pure power {gen} is not in the ideal {ideal}")


def _require_same_hf(before: MonomialIdeal, after: MonomialIdeal, bound: int, what: str):
    expected, actual = hf_ideal(before, bound), hf_ideal(after, bound)
    if expected != actual:
        raise HilbertMismatchError(
            f"{what} changed the Hilbert function: {expected.dims} -> {actual.dims}"
        )


def _ab_power(n: int, a: int, b: int, p: int, q: int) -> Monomial:
    return monomial_mul(variable(n, a, p), variable(n, b, q))


def _in_shift(u: Monomial, members: frozenset, a: int, b: int, t: int) -> bool:
    """Membership of u in Shift_{a,b,t}(I), given the slice of I in u's degree.

    With u = f a^p b^q and s = q - t, u is paired with f a^s b^(p+t): the
    monomial with more a's survives when either one is in I, the one with fewer
    only when both are.
    """
    p, q = u[a], u[b]
    if q < t:
        return u in members
    s = q - t
    if p == s:
        return u in members
    f = monomial_div(u, _ab_power(len(u), a, b, p, q))
    partner = monomial_mul(f, _ab_power(len(u), a, b, s, p + t))
    if p > s:
        return u in members or partner in members
    return u in members and partner in members


def shift(ideal: MonomialIdeal, a: int, b: int, t: int, bound: int) -> GradedMonomialSpace:
    """The (a, b, t)-shift of ``ideal`` in degrees 0..bound.

    Args:
        ideal: a monomial ideal
        a: index of the lex-larger variable
        b: index of the lex-smaller variable
        t: the non-negative offset; t = 0 is the (a, b)-shift
        bound: the truncation degree

    Returns:
        The shifted space; for t > 0 it need not be an ideal.

    """
    _check_pair(ideal.ring, a, b)
    if t < 0:
        raise PreconditionError(f"Shift offset must be non-negative, got {t}")
    slices = []
    for d in range(bound + 1):
        members = frozenset(ideal.slice(d))
        slices.append(
            [u for u in monomials_of_degree(ideal.ring.n, d) if _in_shift(u, members, a, b, t)]
        )
    return GradedMonomialSpace(ideal.ring, slices)


def shift_plus_p(
    ideal: MonomialIdeal, a: int, b: int, t: int, powers: PurePowers, bound: int
) -> MonomialIdeal:
    """The ideal Shift_{a,b,t}(I) + P.

    Raises:
        ClosureError: the shifted space plus P is not an ideal
        HilbertMismatchError: adding P back changed the Hilbert function

    """
    _require_powers(ideal, powers)
    pure = GradedMonomialSpace.from_ideal(pure_powers_ideal(powers, ideal.ring), bound)
    result = min_gens_from_space(shift(ideal, a, b, t, bound).union(pure))
    _require_same_hf(ideal, result, bound, f"Shift({a},{b},{t}) + P")
    return result


def _restratify(
    ideal: MonomialIdeal,
    a: int,
    b: int,
    bound: int,
    cap_a: Optional[int] = None,
    cap_b: Optional[int] = None,
) -> MonomialIdeal:
    """Replace every stratum f * V_f by f times a lex segment of K[a, b].

    Monomials with a-exponent at least ``cap_a`` or b-exponent at least
    ``cap_b`` stay put; the rest of each stratum becomes the lex-first
    monomials among those below both caps.
    """

    def pinned(p: int, q: int) -> bool:
        return (cap_a is not None and p >= cap_a) or (cap_b is not None and q >= cap_b)

    n = ideal.ring.n
    slices = []
    for d in range(bound + 1):
        piece = []
        strata: Dict[Monomial, int] = defaultdict(int)
        for m in ideal.slice(d):
            f, p, q = decompose_ab(m, a, b)
            if pinned(p, q):
                piece.append(m)
            else:
                strata[f] += 1
        for f, size in strata.items():
            rest = d - monomial_deg(f)
            candidates = []
            for p in range(rest, -1, -1):
                if pinned(p, rest - p):
                    continue
                candidates.append(monomial_mul(f, _ab_power(n, a, b, p, rest - p)))
                if len(candidates) == size:
                    break
            piece.extend(candidates)
        slices.append(piece)
    return min_gens_from_space(GradedMonomialSpace(ideal.ring, slices))


def compress(ideal: MonomialIdeal, a: int, b: int, bound: int) -> MonomialIdeal:
    """The {a, b}-compression: each stratum V_f becomes the lex ideal of K[a, b]
    with the same Hilbert function."""
    _check_pair(ideal.ring, a, b)
    return _restratify(ideal, a, b, bound)


def powers_compress(
    ideal: MonomialIdeal, a: int, b: int, powers: PurePowers, bound: int
) -> MonomialIdeal:
    """The {a, b}-compression relative to P.

    Each stratum is replaced by a lex-plus-powers segment of K[a, b]: the part
    outside (a^e_a, b^e_b) becomes a lex segment of the monomials outside it.
    The Hilbert function and P are always preserved, and an ideal fixed by this
    operation for every pair is strongly-stable-plus-P.
    """
    _check_pair(ideal.ring, a, b)
    _require_powers(ideal, powers)
    return _restratify(ideal, a, b, bound, powers.exponent(a), powers.exponent(b))


def t_step(
    ideal: MonomialIdeal,
    a: int,
    b: int,
    powers: PurePowers,
    bound: int,
    verify_hilbert: bool = True,
) -> MonomialIdeal:
    """T = T' + P where T' is the {a, b}-compression of I without the generator b^e_b.

    Args:
        ideal: a monomial ideal containing P
        a: index of the lex-larger variable
        b: index of the lex-smaller variable, which must carry a pure power
        powers: the pure powers P
        bound: the truncation degree
        verify_hilbert: raise when T and I have different Hilbert functions

    Returns:
        The ideal T.

    """
    _check_pair(ideal.ring, a, b)
    power = powers.exponent(b)
    if power is None:
        raise PreconditionError(f"x{b + 1} carries no pure power in P = {powers.e}")
    _require_powers(ideal, powers)
    pure = variable(ideal.ring.n, b, power)
    reduced = ideal.without(pure) if pure in ideal.gens else ideal
    result = compress(reduced, a, b, bound) + pure_powers_ideal(powers, ideal.ring)
    if verify_hilbert:
        _require_same_hf(ideal, result, bound, f"T-step({a},{b})")
    return result


def is_strongly_stable_plus_p(ideal: MonomialIdeal, powers: PurePowers) -> bool:
    """Check if the ideal has the form J' + P with J' strongly stable.

    Accepts when P ⊆ I and every exchange u * x_j / x_i (j < i) of a minimal
    generator u other than the pure powers lies in I.
    """
    pure = set(powers.generators(ideal.ring))
    if not all(gen in ideal for gen in pure):
        return False
    return all(
        moved in ideal for gen in ideal.gens if gen not in pure for moved in exchanges(gen)
    )


def _audit_tables(ideal: MonomialIdeal, characteristics: Sequence[int]):
    return {char: betti_table(ideal, FieldSpec(char)) for char in characteristics}


def stabilize(
    ideal: MonomialIdeal,
    powers: PurePowers,
    bound: int,
    audit: bool = False,
    step_cap: int = DEFAULT_SETTINGS["step_cap"],
    audit_characteristics: Sequence[int] = tuple(DEFAULT_SETTINGS["audit_characteristics"]),
) -> Tuple[MonomialIdeal, List[TransformStep]]:
    """Move ``ideal`` to a strongly-stable-plus-P ideal B with the same Hilbert function.

    Sweeps the pairs (0, 1), (0, 2), ..., (n - 2, n - 1): a T-step when b carries
    a pure power and a compression otherwise, then Shift_{a,b} + P. Steps that
    break the ideal property or the Hilbert function are skipped, as are steps
    leading back to an ideal already visited. When a sweep changes nothing and
    B is not yet strongly-stable-plus-P, shifts with t = 1..e_b - 1 are tried,
    and finally compressions relative to P.

    Args:
        ideal: a monomial ideal containing P
        powers: the pure powers P
        bound: the truncation degree
        audit: compare Betti tables before and after every step
        step_cap: the largest number of steps to apply
        audit_characteristics: the characteristics used by the audit

    Returns:
        B and the log of applied steps.

    """
    _require_powers(ideal, powers)
    ring = ideal.ring
    pairs = [(a, b) for a in range(ring.n) for b in range(a + 1, ring.n)]
    log: List[TransformStep] = []
    current = ideal
    seen = {ideal}
    if is_strongly_stable_plus_p(current, powers):
        logger.debug(f"{ideal} is already strongly-stable-plus-P")
        return current, log

    def attempt(kind: TransformKind, a: int, b: int, t: int, operation: Callable, revisit=False):
        nonlocal current
        if len(log) >= step_cap:
            raise StabilizationError(
                f"Step cap {step_cap} reached without a strongly-stable-plus-P ideal",
                current,
                log,
            )
        try:
            result = operation(current)
        except (ClosureError, HilbertMismatchError) as exc:
            logger.debug(f"Skipping {kind.value} on ({a}, {b}), t={t}: {exc}")
            return False
        if result == current or (result in seen and not revisit):
            return False
        step = TransformStep(
            kind, (a, b), t, hf_ideal(current, bound), hf_ideal(result, bound), result
        )
        if step.hf_before != step.hf_after:
            raise HilbertMismatchError(f"{kind.value} changed the Hilbert function of {current}")
        if audit:
            before = _audit_tables(current, audit_characteristics)
            after = _audit_tables(result, audit_characteristics)
            step = step._replace(betti_before=before, betti_after=after)
            for char in audit_characteristics:
                if not betti_leq(before[char], after[char]):
                    raise PropertyViolation(
                        f"{kind.value} on ({a}, {b}), t={t} lowered Betti numbers in "
                        f"characteristic {char}: {current} -> {result}"
                    )
        logger.debug(f"{kind.value} on ({a}, {b}), t={t}: {current} -> {result}")
        log.append(step)
        seen.add(result)
        current = result
        return True

    def sweep() -> bool:
        changed = False
        for a, b in pairs:
            if powers.exponent(b) is not None:
                operation = partial(t_step, a=a, b=b, powers=powers, bound=bound)
                changed |= attempt(TransformKind.T_STEP, a, b, 0, operation)
            else:
                operation = partial(compress, a=a, b=b, bound=bound)
                changed |= attempt(TransformKind.COMPRESS, a, b, 0, operation)
            operation = partial(shift_plus_p, a=a, b=b, t=0, powers=powers, bound=bound)
            changed |= attempt(TransformKind.SHIFT_PLUS_P, a, b, 0, operation)
        return changed

    def escalate() -> bool:
        for a, b in pairs:
            power = powers.exponent(b)
            for t in range(1, power or 1):
                operation = partial(shift_plus_p, a=a, b=b, t=t, powers=powers, bound=bound)
                if attempt(TransformKind.SHIFT_PLUS_P, a, b, t, operation):
                    return True
        return False

    def compress_against_powers() -> bool:
        changed = False
        for a, b in pairs:
            operation = partial(powers_compress, a=a, b=b, powers=powers, bound=bound)
            changed |= attempt(TransformKind.POWERS_COMPRESS, a, b, 0, operation, revisit=True)
        return changed

    while True:
        if sweep():
            continue
        if is_strongly_stable_plus_p(current, powers):
            break
        if escalate() or compress_against_powers():
            continue
        raise StabilizationError(
            f"Stuck at {current}, which is not strongly-stable-plus-P", current, log
        )
    logger.info(f"Stabilized {ideal} to {current} in {len(log)} steps")
    return current, log

