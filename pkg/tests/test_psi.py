import random

import pytest

import dimkit as dk
from dimkit.psi import STAR, all_encoders


def indicator_of_zero(q):
    return dk.PsiFamily(
        members=(dk.PsiFunction(table=tuple(1 if y == 0 else 0 for y in range(q))),),
        num_labels=q,
    )


def test_family_sizes():
    for q in range(2, 8):
        assert len(dk.graph_family(q)) == q
        assert len(dk.natarajan_family(q)) == q * (q - 1)


def test_graph_family_has_no_star():
    for m in dk.graph_family(3).members:
        assert STAR not in m.table


def test_natarajan_family_member_shape():
    for m in dk.natarajan_family(3).members:
        assert sorted(m.table) == [0, 1, STAR]


def test_builtin_families_are_distinguishers():
    for q in range(2, 8):
        assert dk.is_distinguisher(dk.natarajan_family(q)) == (True, None)
        assert dk.is_distinguisher(dk.graph_family(q)) == (True, None)


def test_indicator_family_fails_on_nonzero_pair():
    ok, pair = dk.is_distinguisher(indicator_of_zero(3))
    assert not ok and pair == (1, 2)


def test_all_star_family_fails_immediately():
    fam = dk.PsiFamily(members=(dk.PsiFunction(table=(STAR, STAR)),), num_labels=2)
    assert dk.is_distinguisher(fam) == (False, (0, 1))


def test_family_deduplicates_members():
    m = dk.PsiFunction(table=(0, 1))
    fam = dk.PsiFamily(members=(m, m), num_labels=2)
    assert len(fam) == 1


# -------------------------------------------------------- failing families

def test_failing_class_shape_and_witness():
    fam = indicator_of_zero(3)
    cls, witness = dk.failing_psi_class(fam, window=1)
    assert len(cls.hypotheses) == 4
    assert dk.restrict(cls, (0, 1)).patterns == ((1, 1), (1, 2), (2, 1), (2, 2))
    # the indicator maps both 1 and 2 to 0, so bit 1 is blocked coordinatewise
    psi0 = fam.members[0]
    assert witness.evaluate((0, 1), (psi0, psi0)) == (1, 1)
    report = dk.validate_witness(witness, cls, 1)
    assert report.valid


def test_failing_class_has_psi_dimension_zero():
    fam = indicator_of_zero(3)
    cls, _ = dk.failing_psi_class(fam, window=1)
    assert dk.exact_dimension(cls, "psi", psi=fam).value == 0


def test_failing_class_graph_dimension_is_window_plus_one():
    fam = indicator_of_zero(3)
    for window in (0, 1, 2):
        cls, _ = dk.failing_psi_class(fam, window=window)
        assert dk.exact_dimension(cls, "graph").value == window + 1


def test_failing_class_rejects_distinguishers():
    with pytest.raises(dk.PreconditionError):
        dk.failing_psi_class(dk.natarajan_family(2), window=1)


def test_random_non_distinguishers_yield_valid_order1_witnesses():
    rng = random.Random(424242)
    found = 0
    while found < 8:
        q = rng.choice((2, 3, 4))
        size = rng.randint(1, 4)
        members = tuple(
            dk.PsiFunction(table=tuple(rng.choice((0, 1, STAR)) for _ in range(q)))
            for _ in range(size)
        )
        fam = dk.PsiFamily(members=members, num_labels=q)
        ok, _ = dk.is_distinguisher(fam)
        if ok:
            continue
        found += 1
        cls, witness = dk.failing_psi_class(fam, window=2)
        assert witness.order == 1
        assert dk.validate_witness(witness, cls, 2).valid


# ----------------------------------------------------------- DS refutation

def test_refute_rejects_low_ds_dimension():
    three = dk.class_from_tables([(0, 1), (1, 0), (2, 2)], num_labels=3)
    with pytest.raises(dk.PreconditionError):
        dk.refute_ds_expressibility(three)


def test_refute_rejects_wide_domains():
    with pytest.raises(dk.PreconditionError):
        dk.refute_ds_expressibility(dk.full_class(3, 2))


def test_boolean_cube_is_not_refuted():
    # Binary two-point cube: shattering pairs exist, but the only 4-pattern
    # subclass is the cube itself (DS dimension 2), so no counterexample.
    report = dk.refute_ds_expressibility(dk.full_class(2, 2))
    assert report.pairs_examined == 3 ** 2 * 3 ** 2
    assert report.verdict == "not_refuted"
    assert report.entries and all(not e.subclasses for e in report.entries)


def test_encoder_enumeration_is_complete_and_ordered():
    encoders = all_encoders(2)
    assert len(encoders) == 9
    assert len(set(encoders)) == 9
    assert encoders[0].table == (0, 0)
