"""Test Hilbert functions and lexification"""

from functools import partial

import pytest
from hypothesis import given, settings

from lexman.exceptions import BoundExceededError, InvariantError, TruncationError
from lexman.hilbert import (
    HilbertFunction,
    default_truncation,
    hf_ideal,
    hf_inclusion_exclusion,
    lexify_hf,
    retry_truncation,
    shadow,
)
from lexman.models import PurePowers, RingContext
from lexman.monomial import MonomialIdeal, is_lex
from tests.strategies import ideals

R1 = RingContext(1)
R2 = RingContext(2)


@pytest.mark.parametrize("compute", [hf_ideal, hf_inclusion_exclusion])
@pytest.mark.parametrize(
    "ring,gens,bound,expected",
    [
        (R2, [], 3, (0, 0, 0, 0)),
        (R2, [(2, 0), (1, 1)], 3, (0, 0, 2, 3)),
        (R1, [(1,)], 2, (0, 1, 1)),
        (R2, [(1, 1)], 4, (0, 0, 1, 2, 3)),
    ],
)
def test_hilbert_function(compute, ring, gens, bound, expected):
    hf = compute(MonomialIdeal(ring, gens), bound)
    assert hf.dims == expected
    assert hf.D == bound


def test_hilbert_quotient_view():
    hf = hf_ideal(MonomialIdeal(R2, [(2, 0), (1, 1)]), 3)
    assert hf.quotient() == (1, 2, 1, 1)


def test_hilbert_function_rejects_impossible_dims():
    with pytest.raises(InvariantError):
        HilbertFunction(R2, (0, 3))


class TruncatedSlices(MonomialIdeal):
    """An ideal whose slices stop after degree 1, so the shadow is not covered."""

    def slice(self, d):
        return super().slice(d) if d < 2 else ()


def test_hilbert_function_checks_shadow_growth():
    with pytest.raises(InvariantError):
        hf_ideal(TruncatedSlices(R2, [(1, 0)]), 2)
    assert hf_ideal(TruncatedSlices(R2, [(1, 0)]), 1).dims == (0, 1)


@settings(max_examples=50, deadline=None)
@given(ideals())
def test_hilbert_function_covers_shadows(sample):
    bound = sample.max_degree + 2
    hf = hf_ideal(sample, bound)
    for d in range(bound):
        assert hf[d + 1] >= len(shadow(sample.ring, sample.slice(d)))


def test_inclusion_exclusion_bound():
    sample = MonomialIdeal(R2, [(3, 0), (2, 1), (1, 2), (0, 3)])
    with pytest.raises(BoundExceededError):
        hf_inclusion_exclusion(sample, 4, max_generators=3)


@settings(max_examples=50, deadline=None)
@given(ideals())
def test_hilbert_oracles_agree(sample):
    bound = sample.max_degree + 3
    assert hf_ideal(sample, bound) == hf_inclusion_exclusion(sample, bound)


def test_shadow():
    assert shadow(R2, [(1, 0)]) == {(2, 0), (1, 1)}
    assert shadow(R2, []) == frozenset()


def test_default_truncation():
    sample = MonomialIdeal(R2, [(2, 0), (1, 1)])
    assert default_truncation(sample) == 6
    assert default_truncation(sample, PurePowers((2, 3))) == 7
    assert default_truncation(sample, margin=0) == 4


def test_retry_truncation_grows_bound():
    attempts = []

    def operation(bound):
        attempts.append(bound)
        if bound < 6:
            raise TruncationError("too small")
        return bound

    assert retry_truncation(operation, 2, 2, cap=10) == 6
    assert attempts == [2, 4, 6]


def test_retry_truncation_gives_up_at_cap():
    def operation(bound):
        raise TruncationError(f"still too small at {bound}")

    with pytest.raises(TruncationError):
        retry_truncation(operation, 2, 2, cap=5)


@pytest.mark.parametrize(
    "gens,expected",
    [
        ([(1, 1)], ((2, 0),)),
        ([(2, 0), (1, 1)], ((2, 0), (1, 1))),
        ([(2, 0), (1, 1), (0, 2)], ((2, 0), (1, 1), (0, 2))),
    ],
)
def test_lexify_hf(gens, expected):
    assert lexify_hf(MonomialIdeal(R2, gens), 4).gens == expected


def test_lexify_hf_truncation():
    with pytest.raises(TruncationError):
        lexify_hf(MonomialIdeal(R2, [(1, 1)]), 3)


def test_lexify_hf_generator_beyond_the_input_degrees():
    # (x1^2, x2^2) lexifies to (x1^2, x1*x2, x2^3), which D = 4 cannot certify
    sample = MonomialIdeal(R2, [(2, 0), (0, 2)])
    with pytest.raises(TruncationError):
        lexify_hf(sample, 4)
    lex = retry_truncation(partial(lexify_hf, sample), 4, 2)
    assert lex.gens == ((2, 0), (1, 1), (0, 3))


@settings(max_examples=30, deadline=None)
@given(ideals())
def test_lexify_hf_realizes_the_hilbert_function(sample):
    bound = sample.max_degree + sample.ring.n
    lex = retry_truncation(partial(lexify_hf, sample), bound, sample.ring.n, cap=40)
    assert is_lex(lex)
    assert hf_ideal(lex, bound) == hf_ideal(sample, bound)
