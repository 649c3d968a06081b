"""Test the shifting and compression propositions and the lex-plus-powers theorem"""

from functools import partial

import pytest

from lexman.exceptions import PreconditionError, TruncationError
from lexman.hilbert import hf_ideal, retry_truncation
from lexman.models import (
    FieldSpec,
    Instance,
    PiecewiseLexSpec,
    PurePowers,
    RingContext,
    TheoremReport,
)
from lexman.monomial import MonomialIdeal, is_lex, is_strongly_stable, plex_ideal
from lexman.theorem import (
    base_ideal,
    check_compression_prop,
    check_instance,
    check_shifting_prop,
    default_instance_bound,
    lexify_theorem,
    random_instance,
    random_strongly_stable,
    report_ok,
    verify_theorem,
)

R2 = RingContext(2)
R3 = RingContext(3)
SQUARES = PurePowers((2, 2))
RUNNING = MonomialIdeal(R3, [(2, 0, 0), (0, 2, 0), (0, 1, 1)])
FIELDS = (FieldSpec(0), FieldSpec(2))


def instance(ring, powers, gens, short=None, seed=None):
    plex = PiecewiseLexSpec.from_short(ring, short or {})
    return Instance(ring, powers, plex, MonomialIdeal(ring, gens), seed)


@pytest.mark.parametrize("t", [0, 1, 2, 3])
@pytest.mark.parametrize("pair", [(0, 1), (0, 2), (1, 2)])
def test_shifting_prop(pair, t):
    sub = MonomialIdeal(R3, [(2, 0, 0)])
    assert check_shifting_prop(RUNNING, sub, *pair, t, 6)


@pytest.mark.parametrize(
    "gens",
    [
        [(0, 2, 0)],
        [(1, 0, 0)],
    ],
)
def test_shifting_prop_preconditions(gens):
    with pytest.raises(PreconditionError):
        check_shifting_prop(RUNNING, MonomialIdeal(R3, gens), 0, 1, 0, 6)


def test_compression_prop():
    sub = MonomialIdeal(R3, [(2, 0, 0)])
    assert check_compression_prop(RUNNING, sub, 0, 1, SQUARES, 7)
    assert check_compression_prop(RUNNING, MonomialIdeal(R3), 0, 1, SQUARES, 7)


def test_compression_prop_preconditions():
    with pytest.raises(PreconditionError):
        check_compression_prop(
            MonomialIdeal(R2, [(2, 0), (1, 1)]), MonomialIdeal(R2, [(2, 0)]), 0, 1, SQUARES, 6
        )
    with pytest.raises(PreconditionError):
        check_compression_prop(RUNNING, MonomialIdeal(R3, [(2, 0, 0)]), 1, 2, SQUARES, 7)


def test_lexify_theorem_two_variables():
    inst = instance(R2, SQUARES, [(2, 0), (1, 1), (0, 2)])
    assert lexify_theorem(inst, 4).gens == ((2, 0), (1, 1))


def test_lexify_theorem_instance_already_lex_plus_powers():
    inst = instance(R2, SQUARES, [(2, 0), (0, 2)], {1: [(3,)]})
    assert lexify_theorem(inst, 4).is_zero


def test_lexify_theorem_running_example():
    inst = instance(R3, SQUARES, RUNNING.gens)
    lex = lexify_theorem(inst, 5)
    assert lex.gens == ((2, 0, 0), (1, 1, 0), (1, 0, 2))
    assert hf_ideal(base_ideal(inst) + lex, 7) == hf_ideal(RUNNING, 7)


def test_lexify_theorem_preconditions():
    with pytest.raises(PreconditionError):
        lexify_theorem(instance(R2, SQUARES, [(2, 0), (1, 1)]), 6)
    with pytest.raises(TruncationError):
        lexify_theorem(instance(R3, SQUARES, RUNNING.gens), 4)


def test_verify_theorem():
    inst = instance(R2, SQUARES, [(2, 0), (1, 1), (0, 2)])
    report = verify_theorem(inst, 6, FIELDS)
    assert report.hf_match
    assert report.betti_ok == {0: True, 2: True}
    assert report.stable == inst.ideal
    assert report.stable_ok
    assert report.log == ()
    assert report_ok(report)
    table_i, table_combined = report.tables[0]
    assert table_i == table_combined


def test_verify_theorem_without_the_pipeline():
    inst = instance(R3, SQUARES, RUNNING.gens)
    report = verify_theorem(inst, default_instance_bound(inst), FIELDS, through_stable=False)
    assert report.hf_match
    assert all(report.betti_ok.values())
    assert report.stable is None
    assert report_ok(report)


def test_report_ok_flags_failures():
    inst = instance(R2, SQUARES, [(2, 0), (0, 2)])
    report = TheoremReport(inst, MonomialIdeal(R2), inst.ideal, True, {0: False}, {})
    assert not report_ok(report)
    assert not report_ok(report._replace(betti_ok={0: True}, stable_ok=False))
    assert report_ok(report._replace(betti_ok={0: True}))


def test_random_instance_is_determined_by_its_seed():
    assert random_instance(7, 3, 2) == random_instance(7, 3, 2)
    assert random_strongly_stable(7, 3) == random_strongly_stable(7, 3)


@pytest.mark.parametrize("seed", range(10))
def test_random_instances_are_valid(seed):
    inst = random_instance(seed, 4, 3, gen_budget=2)
    assert inst.seed == seed
    assert inst.powers.r == 3
    assert check_instance(inst)
    assert is_strongly_stable(plex_ideal(inst.plex))
    assert is_strongly_stable(random_strongly_stable(seed, 4))


def test_random_instance_without_extra_generators():
    inst = random_instance(3, 3, 2, gen_budget=0)
    assert inst.ideal == base_ideal(inst)


@pytest.mark.parametrize(
    "n,r,options",
    [
        (3, 0, {}),
        (2, 3, {}),
        (6, 2, {}),
        (3, 2, {"max_e": 1}),
        (3, 2, {"max_deg": 1}),
    ],
)
def test_random_instance_preconditions(n, r, options):
    with pytest.raises(PreconditionError):
        random_instance(0, n, r, **options)


def test_default_instance_bound():
    inst = instance(R3, SQUARES, RUNNING.gens)
    assert default_instance_bound(inst) == 7
    assert default_instance_bound(inst, margin=0) == 5


@pytest.mark.parametrize("seed", range(8))
def test_propositions_on_random_instances(seed):
    inst = random_instance(seed, 3, 2, max_e=3, max_deg=3, gen_budget=2)
    sub = plex_ideal(inst.plex)
    bound = default_instance_bound(inst)
    for a, b in ((0, 1), (0, 2), (1, 2)):
        for t in (0, 1, 2):
            assert check_shifting_prop(inst.ideal, sub, a, b, t, bound)
    compression = partial(check_compression_prop, inst.ideal, sub, 0, 1, inst.powers)
    assert retry_truncation(compression, bound, 3)


@pytest.mark.parametrize("seed", range(8))
def test_lexify_theorem_on_random_instances(seed):
    inst = random_instance(seed, 3, 2, max_e=3, max_deg=3, gen_budget=2)
    bound = default_instance_bound(inst)
    lex = retry_truncation(partial(lexify_theorem, inst), bound, 3)
    assert is_lex(lex)
    assert hf_ideal(base_ideal(inst) + lex, bound) == hf_ideal(inst.ideal, bound)
