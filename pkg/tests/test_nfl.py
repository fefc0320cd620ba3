from fractions import Fraction

import pytest

import dimkit as dk


def test_expected_risk_constant_learner_total_miss():
    learner = dk.constant_learner(1, num_labels=3, window=1)
    expected, table = dk.exact_expected_risk(learner, (0, 1), (2, 2), 1)
    assert expected == 1
    assert [risk for _, risk in table] == [1, 1]


def test_expected_risk_constant_learner_perfect():
    learner = dk.constant_learner(1, num_labels=3, window=1)
    expected, _ = dk.exact_expected_risk(learner, (0, 1), (1, 1), 1)
    assert expected == 0


def test_expected_risk_memorizer():
    # After seeing (0,1) the memorizer errs at 1 only; after (1,2) it is
    # exact everywhere, so the average over both sequences is 1/4.
    learner = dk.memorizing_learner(1, num_labels=3, window=1)
    expected, table = dk.exact_expected_risk(learner, (0, 1), (1, 2), 1)
    assert expected == Fraction(1, 4)
    assert sorted(risk for _, risk in table) == [0, Fraction(1, 2)]


def test_adversary_against_constant_learner():
    learner = dk.constant_learner(1, num_labels=3, window=1)
    report = dk.nfl_adversary(learner, (0, 1), (1, 1), (2, 2))
    assert report.f_values == (2, 2)
    assert report.index_set == frozenset()
    assert report.expected_risk == 1
    assert report.tail_probability == 1
    assert report.mixtures_examined == 1


def test_adversary_target_is_realizable_by_construction():
    learner = dk.memorizing_learner(0, num_labels=3, window=1)
    report = dk.nfl_adversary(learner, (0, 1), (1, 1), (2, 2))
    f = dk.Hypothesis(num_labels=3, table=report.f_values)
    assert dk.true_risk(f, report.distribution) == 0


def test_adversary_against_erm_singleton():
    erm = dk.erm_learner(dk.class_from_tables([(1, 1)], num_labels=3))
    report = dk.nfl_adversary(erm, (0, 1), (1, 1), (2, 2))
    assert report.index_set != frozenset({0, 1})
    assert report.f_values == (2, 2)


def test_adversary_m2_against_even_mixture_erm():
    g1, g2 = (0, 0, 0, 0), (1, 1, 1, 1)
    rows = [
        dk.mix_labelings(I, g1, g2)
        for I in ({}, {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 1, 2, 3})
    ]
    erm = dk.erm_learner(dk.class_from_tables(rows, num_labels=2))
    report = dk.nfl_adversary(erm, (0, 1, 2, 3), g1, g2)
    assert report.mixtures_examined <= 16
    assert report.expected_risk >= Fraction(1, 4)
    assert report.tail_probability >= Fraction(1, 7)


def test_adversary_rejects_bad_inputs():
    learner = dk.constant_learner(0, num_labels=2, window=3)
    with pytest.raises(dk.PreconditionError):
        dk.nfl_adversary(learner, (0, 1, 2), (0, 0, 0), (1, 1, 1))
    with pytest.raises(dk.PreconditionError):
        dk.nfl_adversary(learner, (0, 1), (0, 0), (1, 0))


def _built_in_learners(num_labels, window):
    base = dk.class_from_supports([{0: 1}, {1: 1}], num_labels=num_labels)
    witness = dk.canonical_witness(base, "natarajan", 1)
    spec = dk.GoodFunctionSpec(witness=witness, num_labels=num_labels)
    erm_cls = dk.class_from_tables(
        [(0,) * (window + 1), (1,) * (window + 1)], num_labels=num_labels
    )
    return [
        dk.constant_learner(0, num_labels, window),
        dk.memorizing_learner(1, num_labels, window),
        dk.erm_learner(erm_cls),
        dk.agnostic_learner(spec),
    ]


@pytest.mark.parametrize("m", [1, 2])
def test_adversary_constants_for_every_builtin_learner(m):
    points = tuple(range(2 * m))
    g1 = (1,) * (2 * m)
    g2 = (2,) * (2 * m)
    for learner in _built_in_learners(3, 2 * m - 1):
        report = dk.nfl_adversary(learner, points, g1, g2)
        assert report.expected_risk >= Fraction(1, 4)
        assert report.tail_probability >= Fraction(1, 7)
        assert not report.markov_flag
        # the mixture property: f follows g1 exactly on the index set
        rebuilt = dk.mix_labelings(report.index_set, g1, g2)
        assert rebuilt == report.f_values


def test_adversary_m3_smoke():
    for learner in (
        dk.constant_learner(0, num_labels=2, window=5),
        dk.memorizing_learner(1, num_labels=2, window=5),
    ):
        report = dk.nfl_adversary(learner, tuple(range(6)), (1,) * 6, (0,) * 6)
        assert report.expected_risk >= Fraction(1, 4)
        assert report.tail_probability >= Fraction(1, 7)


def test_adversary_succeeds_against_arbitrary_deterministic_learners():
    # random total deterministic behavior: a fixed random map from samples to
    # hypotheses; the averaging argument guarantees some mixture reaches 1/4
    import random

    rng = random.Random(161803)
    for trial in range(50):
        q = rng.choice((2, 3))
        window = 1
        answers = {}

        def fn(sample, _rng=random.Random(trial), _q=q, _w=window):
            key = tuple(sample)
            if key not in answers:
                answers[key] = dk.Hypothesis(
                    num_labels=_q,
                    table=tuple(_rng.randrange(_q) for _ in range(_w + 1)),
                )
            return answers[key]

        learner = dk.Learner(name=f"random:{trial}", fn=fn)
        g1 = tuple(rng.randrange(q) for _ in range(2))
        g2 = tuple((v + 1) % q for v in g1)
        report = dk.nfl_adversary(learner, (0, 1), g1, g2)
        assert report.expected_risk >= Fraction(1, 4)
        assert report.tail_probability >= Fraction(1, 7)


def test_adversary_is_deterministic():
    learner = dk.memorizing_learner(0, num_labels=3, window=3)
    a = dk.nfl_adversary(learner, (0, 1, 2, 3), (1, 2, 1, 2), (2, 1, 2, 1))
    b = dk.nfl_adversary(learner, (0, 1, 2, 3), (1, 2, 1, 2), (2, 1, 2, 1))
    assert a == b
