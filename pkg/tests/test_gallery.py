import pytest

import dimkit as dk
import oracles


def test_full_class_sizes_and_dims():
    assert len(dk.full_class(2, 2).hypotheses) == 4
    for kind in ("vc", "natarajan", "graph", "ds"):
        assert dk.exact_dimension(dk.full_class(2, 2), kind).value == 2
    assert len(dk.full_class(1, 3).hypotheses) == 3
    assert dk.exact_dimension(dk.full_class(1, 3), "natarajan").value == 1
    assert dk.exact_dimension(dk.full_class(3, 2), "vc").value == 3


def test_full_class_budget_guard():
    with pytest.raises(dk.PreconditionError):
        dk.full_class(40, 3)


def test_gap_class_boundary_m1():
    entry = dk.gap_class(1)
    assert len(entry.cls.hypotheses) == 2
    assert dk.exact_dimension(entry.cls, "graph").value == 1


@pytest.mark.parametrize("m", [1, 2, 3])
def test_gap_class_dimension_separation(m):
    entry = dk.gap_class(m)
    assert dk.exact_dimension(entry.cls, "natarajan").value == 1
    assert dk.exact_dimension(entry.cls, "graph").value == m


@pytest.mark.parametrize("m", [2, 3])
def test_gap_witness_validates_exhaustively(m):
    entry = dk.gap_class(m)
    report = dk.validate_witness(entry.witness, entry.cls, m - 1)
    assert report.valid


def test_gap_class_hypotheses_are_membership_tables():
    entry = dk.gap_class(3)
    blank = 1 << 3
    for h in entry.cls.hypotheses:
        codes = {v for v in h.table if v != blank}
        assert len(codes) <= 1
        for x, v in enumerate(h.table):
            if v != blank:
                assert (v >> x) & 1


def test_six_cycle_entry():
    entry = dk.six_cycle_class()
    pats = dk.restrict(entry.cls, (0, 1)).patterns
    assert oracles.pseudo_cube(pats)
    assert dk.is_pseudo_cube(pats)


def test_six_cycle_named_subclasses_have_ds_one():
    for rows in (
        [(0, 1), (2, 1), (4, 5), (0, 5)],
        [(0, 1), (0, 5), (4, 5), (4, 3)],
    ):
        sub = dk.class_from_tables(rows, num_labels=6)
        assert not oracles.ds_shattered(sub, (0, 1))
        assert dk.exact_dimension(sub, "ds").value == 1


def test_expected_dims_reverify():
    entries = [dk.gap_class(2), dk.gap_class(3), dk.six_cycle_class()]
    for entry in entries:
        for kind, want in entry.expected_dims.items():
            assert dk.exact_dimension(entry.cls, kind).value == want, (entry.name, kind)


def test_failing_psi_gallery_delegates():
    fam = dk.PsiFamily(
        members=(dk.PsiFunction(table=(1, 0, 0)),), num_labels=3
    )
    entry = dk.failing_psi_gallery(fam, window=2)
    assert entry.name == "failing_psi"
    assert dk.exact_dimension(entry.cls, "graph").value == 3
    assert dk.validate_witness(entry.witness, entry.cls, 2).valid
