"""Constructive checks of the shifting and compression propositions and of the
lex-plus-powers theorem for ideals containing P + L~, plus random instances."""

import logging
import random
from typing import Iterable, Optional

from lexman.betti import betti_leq, betti_table
from lexman.constants import DEFAULT_SETTINGS, MAX_RANDOM_VARIABLES
from lexman.exceptions import ConstructionError, PreconditionError, TruncationError
from lexman.hilbert import default_truncation, hf_ideal, ideal_from_segments, shadow
from lexman.models import (
    FieldSpec,
    Instance,
    PiecewiseLexSpec,
    PurePowers,
    RingContext,
    TheoremReport,
)
from lexman.monomial import (
    MonomialIdeal,
    borel_closure,
    is_lex,
    is_strongly_stable,
    plex_ideal,
    pure_powers_ideal,
)
from lexman.transforms import (
    GradedMonomialSpace,
    is_strongly_stable_plus_p,
    shift,
    stabilize,
    t_step,
)
from lexman.util import monomials_of_degree

logger = logging.getLogger(__name__)


def base_ideal(inst: Instance) -> MonomialIdeal:
    """The ideal P + L~ every instance ideal must contain."""
    return pure_powers_ideal(inst.powers, inst.ring) + plex_ideal(inst.plex)


def check_instance(inst: Instance) -> bool:
    """Check the instance hypothesis P + L~ ⊆ I."""
    return inst.ideal.contains_ideal(base_ideal(inst))


def _require_strongly_stable_subideal(ideal: MonomialIdeal, sub: MonomialIdeal):
    if not is_strongly_stable(sub):
        raise PreconditionError(f"J = {sub} is not strongly stable")
    if not ideal.contains_ideal(sub):
        raise PreconditionError(f"J = {sub} is not contained in I = {ideal}")


def check_shifting_prop(
    ideal: MonomialIdeal, sub: MonomialIdeal, a: int, b: int, t: int, bound: int
) -> bool:
    """Check J ⊆ Shift_{a,b,t}(I) slice by slice up to ``bound``.

    Args:
        ideal: the ideal I
        sub: a strongly stable ideal J ⊆ I
        a: index of the lex-larger variable
        b: index of the lex-smaller variable
        t: the shift offset
        bound: the truncation degree

    Returns:
        True when every slice of J lies in the corresponding slice of the shift.

    """
    _require_strongly_stable_subideal(ideal, sub)
    shifted = shift(ideal, a, b, t, bound)
    return shifted.issuperset(GradedMonomialSpace.from_ideal(sub, bound))


def check_compression_prop(
    ideal: MonomialIdeal,
    sub: MonomialIdeal,
    a: int,
    b: int,
    powers: PurePowers,
    bound: int,
) -> bool:
    """Check J ⊆ T for the T-step T = compress(I without b^e_b) + P."""
    _require_strongly_stable_subideal(ideal, sub)
    pure = pure_powers_ideal(powers, ideal.ring)
    if not ideal.contains_ideal(pure):
        raise PreconditionError(f"P = {pure} is not contained in I = {ideal}")
    stepped = t_step(ideal, a, b, powers, bound, verify_hilbert=False)
    return GradedMonomialSpace.from_ideal(stepped, bound).issuperset(
        GradedMonomialSpace.from_ideal(sub, bound)
    )


def lexify_theorem(inst: Instance, bound: int) -> MonomialIdeal:
    """Find a lex ideal L with hf(P + L~ + L) = hf(I).

    Degree by degree, the segment of L is the shortest initial lex segment that
    contains the shadow of the previous one and brings P + L~ up to the
    dimension of I. Shadows of lex segments are lex segments, so the result is
    an ideal whenever such an L exists.

    Args:
        inst: an instance with P + L~ ⊆ I
        bound: the truncation degree

    Returns:
        The lex ideal L (possibly zero).

    """
    base = base_ideal(inst)
    if not inst.ideal.contains_ideal(base):
        raise PreconditionError(f"P + L~ = {base} is not contained in I = {inst.ideal}")
    ring = inst.ring
    needed = max(inst.ideal.max_degree, base.max_degree) + ring.n
    if bound < needed:
        raise TruncationError(f"lexify_theorem needs D >= {needed}, got {bound}")
    target = hf_ideal(inst.ideal, bound)
    sizes = []
    previous = ()
    for d in range(bound + 1):
        order = monomials_of_degree(ring.n, d)
        members = frozenset(base.slice(d))
        size = len(shadow(ring, previous))
        dim = len(members) + sum(1 for m in order[:size] if m not in members)
        while dim < target[d] and size < len(order):
            dim += order[size] not in members
            size += 1
        if dim != target[d]:
            raise ConstructionError(
                f"No lex segment in degree {d} brings P + L~ to dimension {target[d]} (got {dim})"
            )
        sizes.append(size)
        previous = order[:size]
    lex = ideal_from_segments(ring, sizes)
    if not is_lex(lex, bound):
        raise ConstructionError(f"Constructed {lex} is not lex")
    if hf_ideal(base + lex, bound) != target:
        raise ConstructionError(f"P + L~ + {lex} does not match the Hilbert function of I")
    logger.debug(f"Lex part of {inst.ideal} over P + L~ = {base} is {lex}")
    return lex


def verify_theorem(
    inst: Instance,
    bound: int,
    fields: Iterable[FieldSpec] = tuple(
        FieldSpec(char) for char in DEFAULT_SETTINGS["default_characteristics"]
    ),
    through_stable: bool = True,
    step_cap: int = DEFAULT_SETTINGS["step_cap"],
) -> TheoremReport:
    """Verify both conclusions of the lex-plus-powers theorem on one instance.

    Args:
        inst: the instance to check
        bound: the truncation degree
        fields: the characteristics to compare Betti tables in
        through_stable: also run the stabilization pipeline on I and check B
        step_cap: the step cap for the pipeline

    Returns:
        A report; ``report_ok`` says whether every check passed.

    """
    fields = list(fields)
    lex = lexify_theorem(inst, bound)
    base = base_ideal(inst)
    combined = base + lex
    hf_match = hf_ideal(combined, bound) == hf_ideal(inst.ideal, bound)
    tables, betti_ok = {}, {}
    for field in fields:
        pair = (betti_table(inst.ideal, field), betti_table(combined, field))
        tables[field.characteristic] = pair
        betti_ok[field.characteristic] = betti_leq(*pair)
    report = TheoremReport(inst, lex, combined, hf_match, betti_ok, tables)
    if through_stable:
        stable, log = stabilize(inst.ideal, inst.powers, bound, step_cap=step_cap)
        stable_ok = (
            is_strongly_stable_plus_p(stable, inst.powers)
            and stable.contains_ideal(base)
            and hf_ideal(stable, bound) == hf_ideal(inst.ideal, bound)
            and all(betti_leq(tables[f.characteristic][0], betti_table(stable, f)) for f in fields)
        )
        report = report._replace(stable=stable, stable_ok=stable_ok, log=tuple(log))
    if not report_ok(report):
        logger.warning(f"Counterexample candidate from seed {inst.seed}: {inst.ideal}")
    return report


def report_ok(report: TheoremReport) -> bool:
    """True when every check recorded in the report passed."""
    return (
        report.hf_match
        and all(report.betti_ok.values())
        and report.stable_ok is not False
    )


def random_instance(
    seed: int,
    n: int,
    r: int,
    max_e: int = 4,
    max_deg: int = 4,
    gen_budget: int = 3,
) -> Instance:
    """A random instance (P, L~, I) determined entirely by ``seed``.

    P gets r sorted exponents in [2, max_e]. Each component L_(i) is present
    with probability one half and generated by the first one to three lex
    monomials of a random degree in the first i variables. I is P + L~ plus
    ``gen_budget`` random monomials of degree 2..max_deg.
    """
    if not 1 <= r <= n <= MAX_RANDOM_VARIABLES:
        raise PreconditionError(f"Need 1 <= r <= n <= {MAX_RANDOM_VARIABLES}, got r={r}, n={n}")
    if max_e < 2 or max_deg < 2 or gen_budget < 0:
        raise PreconditionError("Need max_e >= 2, max_deg >= 2 and gen_budget >= 0")
    rng = random.Random(seed)
    ring = RingContext(n)
    powers = PurePowers(sorted(rng.randint(2, max_e) for _ in range(r)))
    components = []
    for index in range(n):
        if rng.random() < 0.5:
            components.append(())
            continue
        segment = monomials_of_degree(index + 1, rng.randint(2, max_deg))[: rng.randint(1, 3)]
        components.append(tuple(gen + (0,) * (n - index - 1) for gen in segment))
    plex = PiecewiseLexSpec(ring, components)
    extras = [
        rng.choice(monomials_of_degree(n, rng.randint(2, max_deg))) for _ in range(gen_budget)
    ]
    ideal = MonomialIdeal(ring, powers.generators(ring) + sum(plex.components, ()) + tuple(extras))
    logger.debug(f"Seed {seed}: P={powers.e}, I={ideal}")
    return Instance(ring, powers, plex, ideal, seed)


def random_strongly_stable(
    seed: int, n: int, max_deg: int = 4, gen_budget: int = 3
) -> MonomialIdeal:
    """The Borel closure of ``gen_budget`` random monomials, determined by ``seed``."""
    rng = random.Random(seed)
    ring = RingContext(n)
    gens = [
        rng.choice(monomials_of_degree(n, rng.randint(1, max_deg)))
        for _ in range(max(gen_budget, 1))
    ]
    return borel_closure(ring, gens)


def default_instance_bound(inst: Instance, margin: Optional[int] = None) -> int:
    """The default truncation degree for an instance."""
    if margin is None:
        margin = DEFAULT_SETTINGS["truncation_margin"]
    return default_truncation(inst.ideal + base_ideal(inst), inst.powers, margin)

