"""Test shifts, compressions and the stabilization pipeline"""

import pytest
from hypothesis import given, settings

from lexman.exceptions import (
    ClosureError,
    HilbertMismatchError,
    InvariantError,
    PreconditionError,
    StabilizationError,
    TruncationError,
)
from lexman.hilbert import default_truncation, hf_ideal, retry_truncation
from lexman.models import PurePowers, RingContext, TransformKind
from lexman.monomial import MonomialIdeal, plex_ideal, pure_powers_ideal
from lexman.theorem import random_instance
from lexman.transforms import (
    GradedMonomialSpace,
    compress,
    is_strongly_stable_plus_p,
    min_gens_from_space,
    powers_compress,
    shift,
    shift_plus_p,
    stabilize,
    t_step,
)
from tests.strategies import ideals, strongly_stable_ideals

R2 = RingContext(2)
R3 = RingContext(3)
SQUARES = PurePowers((2, 2))


def ideal(ring, *gens):
    return MonomialIdeal(ring, gens)


def space_of(ring, bound, *gens):
    return GradedMonomialSpace.from_ideal(MonomialIdeal(ring, gens), bound)


@pytest.mark.parametrize(
    "t,expected",
    [
        (0, (2, 0)),
        (1, (1, 1)),
    ],
)
def test_shift_of_a_pure_power(t, expected):
    assert shift(ideal(R2, (0, 2)), 0, 1, t, 8) == space_of(R2, 8, expected)


@pytest.mark.parametrize("t", [0, 1, 2, 3])
def test_shift_fixes_strongly_stable_ideals(t):
    stable = ideal(R2, (2, 0), (1, 1), (0, 2))
    assert shift(stable, 0, 1, t, 6) == space_of(R2, 6, *stable.gens)


def test_shift_preconditions():
    with pytest.raises(PreconditionError):
        shift(ideal(R2, (0, 2)), 1, 0, 0, 4)
    with pytest.raises(PreconditionError):
        shift(ideal(R2, (0, 2)), 0, 1, -1, 4)


@settings(max_examples=40, deadline=None)
@given(ideals())
def test_shift_preserves_dimensions(sample):
    bound = sample.max_degree + 2
    for a, b in ((0, 1), (0, 2), (1, 2)):
        for t in (0, 1, 2):
            assert shift(sample, a, b, t, bound).dims == hf_ideal(sample, bound).dims


@settings(max_examples=30, deadline=None)
@given(strongly_stable_ideals())
def test_strongly_stable_fixed_points(stable):
    bound = stable.max_degree + 3
    expected = GradedMonomialSpace.from_ideal(stable, bound)
    for a, b in ((0, 1), (0, 2), (1, 2)):
        assert compress(stable, a, b, bound) == stable
        for t in (0, 1, 2):
            assert shift(stable, a, b, t, bound) == expected


@pytest.mark.parametrize("t", [0, 2])
def test_shift_plus_p_fixes_p(t):
    assert shift_plus_p(ideal(R2, (2, 0), (0, 2)), 0, 1, t, SQUARES, 6) == ideal(
        R2, (2, 0), (0, 2)
    )


def test_shift_plus_p_can_break_the_hilbert_function():
    # the 1-shift moves x2^2 to x1*x2, and adding x2^2 back grows degree 2
    with pytest.raises(HilbertMismatchError):
        shift_plus_p(ideal(R2, (2, 0), (0, 2)), 0, 1, 1, SQUARES, 6)


def test_shift_plus_p_examples():
    assert shift_plus_p(ideal(R2, (0, 2)), 0, 1, 0, PurePowers(), 6) == ideal(R2, (2, 0))
    stable = ideal(R2, (2, 0), (1, 1), (0, 2))
    assert shift_plus_p(stable, 0, 1, 0, SQUARES, 6) == stable


def test_shift_plus_p_needs_p_inside():
    with pytest.raises(PreconditionError):
        shift_plus_p(ideal(R2, (2, 0)), 0, 1, 0, SQUARES, 6)


@pytest.mark.parametrize(
    "ring,gens,pair,expected",
    [
        (R2, [(0, 2), (1, 1)], (0, 1), ((2, 0), (1, 1))),
        (R2, [(2, 0), (1, 1), (0, 2)], (0, 1), ((2, 0), (1, 1), (0, 2))),
        (R3, [(0, 1, 1), (0, 0, 2)], (1, 2), ((0, 2, 0), (0, 1, 1))),
    ],
)
def test_compress(ring, gens, pair, expected):
    assert compress(MonomialIdeal(ring, gens), *pair, 6).gens == expected


@settings(max_examples=40, deadline=None)
@given(ideals())
def test_compress_preserves_the_hilbert_function(sample):
    bound = sample.max_degree + 4
    for a, b in ((0, 1), (0, 2), (1, 2)):
        try:
            result = compress(sample, a, b, bound)
        except TruncationError:
            continue
        assert hf_ideal(result, bound) == hf_ideal(sample, bound)


@pytest.mark.parametrize(
    "gens",
    [
        [(2, 0), (0, 2)],
        [(2, 0), (1, 1), (0, 2)],
    ],
)
def test_t_step_fixed_points(gens):
    sample = MonomialIdeal(R2, gens)
    assert t_step(sample, 0, 1, SQUARES, 6) == sample


def test_t_step_needs_a_pure_power_on_b():
    sample = ideal(R3, (2, 0, 0), (0, 2, 0), (0, 1, 1))
    with pytest.raises(PreconditionError):
        t_step(sample, 1, 2, SQUARES, 6)


def test_powers_compress_keeps_p_and_the_hilbert_function():
    sample = ideal(R3, (2, 0, 0), (0, 2, 0), (0, 1, 1))
    bound = default_truncation(sample, SQUARES)
    for a, b in ((0, 1), (0, 2), (1, 2)):
        result = powers_compress(sample, a, b, SQUARES, bound)
        assert result.contains_ideal(pure_powers_ideal(SQUARES, R3))
        assert hf_ideal(result, bound) == hf_ideal(sample, bound)


@pytest.mark.parametrize(
    "ring,bound,gens",
    [
        (R2, 5, [(2, 0)]),
        (R2, 6, [(1, 1), (0, 3)]),
    ],
)
def test_min_gens_from_space(ring, bound, gens):
    sample = MonomialIdeal(ring, gens)
    assert min_gens_from_space(GradedMonomialSpace.from_ideal(sample, bound)) == sample


def test_min_gens_from_space_closure_failure():
    space = GradedMonomialSpace(R2, [[], [], [(1, 1)], []])
    with pytest.raises(ClosureError):
        min_gens_from_space(space)


def test_min_gens_from_space_top_degree_generator():
    with pytest.raises(TruncationError):
        min_gens_from_space(space_of(R2, 3, (2, 0)))


def test_graded_space_checks_degrees():
    with pytest.raises(InvariantError):
        GradedMonomialSpace(R2, [[(1, 0)]])


@pytest.mark.parametrize(
    "ring,gens,expected",
    [
        (R2, [(2, 0), (0, 2)], True),
        (R2, [(2, 0), (1, 1), (0, 2)], True),
        (R3, [(2, 0, 0), (0, 2, 0), (0, 1, 1)], False),
        (R2, [(2, 0)], False),
    ],
)
def test_is_strongly_stable_plus_p(ring, gens, expected):
    assert is_strongly_stable_plus_p(MonomialIdeal(ring, gens), SQUARES) is expected


def test_stabilize_fixed_point():
    stable = ideal(R2, (2, 0), (1, 1), (0, 2))
    assert stabilize(stable, SQUARES, 6) == (stable, [])
    pure = pure_powers_ideal(SQUARES, R3)
    assert stabilize(pure, SQUARES, 6) == (pure, [])


def run_stabilize(sample, powers, **options):
    def operation(bound):
        return (bound,) + stabilize(sample, powers, bound, **options)

    return retry_truncation(operation, default_truncation(sample, powers), sample.ring.n)


def test_stabilize_running_example():
    sample = ideal(R3, (2, 0, 0), (0, 2, 0), (0, 1, 1))
    bound, stable, log = run_stabilize(sample, SQUARES, audit=True)
    assert is_strongly_stable_plus_p(stable, SQUARES)
    assert hf_ideal(stable, bound) == hf_ideal(sample, bound)
    assert hf_ideal(stable, 3).dims[2:] == (3, 8)
    assert log
    for step in log:
        assert step.hf_before == step.hf_after
        assert step.kind in TransformKind
        assert set(step.betti_before) == {0, 2}


def test_stabilize_step_cap():
    sample = ideal(R3, (2, 0, 0), (0, 2, 0), (0, 1, 1))
    with pytest.raises(StabilizationError) as info:
        stabilize(sample, SQUARES, default_truncation(sample, SQUARES), step_cap=0)
    assert info.value.ideal == sample
    assert info.value.log == []


@pytest.mark.parametrize("seed", range(6))
def test_stabilize_random_instances(seed):
    inst = random_instance(seed, 3, 2, max_e=3, max_deg=3, gen_budget=2)
    bound, stable, _ = run_stabilize(inst.ideal, inst.powers)
    assert is_strongly_stable_plus_p(stable, inst.powers)
    assert hf_ideal(stable, bound) == hf_ideal(inst.ideal, bound)
    assert stable.contains_ideal(plex_ideal(inst.plex))
