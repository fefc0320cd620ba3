import itertools
import random

import pytest

import dimkit as dk
import oracles
from corpus import random_table_class

C6_ROWS = [(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5)]


def c6():
    return dk.class_from_tables(C6_ROWS, num_labels=6)


def three_hyp():
    return dk.class_from_tables([(0, 1), (1, 0), (2, 2)], num_labels=3)


# ------------------------------------------------------------- pseudo-cube

def test_boolean_cube_is_pseudo_cube():
    assert dk.is_pseudo_cube({(0, 0), (0, 1), (1, 0), (1, 1)})


def test_missing_neighbor_is_not_pseudo_cube():
    assert not dk.is_pseudo_cube({(0, 0), (0, 1)})


def test_six_cycle_is_pseudo_cube():
    assert oracles.pseudo_cube(C6_ROWS)  # direct definition, all 12 checks
    assert dk.is_pseudo_cube(C6_ROWS)


def test_pseudo_cube_rejects_mixed_arity():
    with pytest.raises(dk.PreconditionError):
        dk.is_pseudo_cube({(0, 0), (0,)})


# ------------------------------------------------------ shattering checks

def test_full_class_is_n_shattered_with_smallest_pair():
    cert = dk.is_n_shattered(dk.full_class(2, 3), (0, 1))
    assert cert is not None
    assert cert.payload == ((0, 0), (1, 1))


def test_three_patterns_cannot_n_shatter_two_points():
    assert oracles.n_shattered(three_hyp(), (0, 1)) is False
    assert dk.is_n_shattered(three_hyp(), (0, 1)) is None


def test_singleton_is_never_shattered():
    single = dk.class_from_tables([(1,)], num_labels=2)
    assert dk.is_n_shattered(single, (0,)) is None
    assert dk.is_g_shattered(single, (0,)) is None


def test_full_binary_class_graph_certificate():
    cert = dk.is_g_shattered(dk.full_class(2, 2), (0, 1))
    assert cert is not None and cert.payload == ((0, 0),)


def test_gap_class_graph_certificate_is_all_blank():
    entry = dk.gap_class(3)
    assert oracles.g_shattered(entry.cls, (0, 1, 2))
    cert = dk.is_g_shattered(entry.cls, (0, 1, 2))
    blank = 1 << 3
    assert cert.payload == ((blank, blank, blank),)


def test_six_cycle_ds_certificate_keeps_all_patterns():
    cert = dk.is_ds_shattered(c6(), (0, 1))
    assert cert is not None
    assert set(cert.payload[0]) == set(C6_ROWS)


def test_three_hyp_not_ds_shattered_on_pair():
    assert oracles.ds_shattered(three_hyp(), (0, 1)) is False
    assert dk.is_ds_shattered(three_hyp(), (0, 1)) is None


def test_two_labels_at_one_point_form_a_ds_certificate():
    cert = dk.is_ds_shattered(three_hyp(), (0,))
    assert cert is not None and len(cert.payload[0]) >= 2


def test_psi_shattering_picks_first_working_encoder():
    fam = dk.natarajan_family(3)
    cert = dk.is_psi_shattered(dk.full_class(1, 3), (0,), fam)
    assert cert is not None
    (psibar,) = cert.payload
    assert psibar[0].table == (1, 0, dk.STAR)


def test_all_star_family_shatters_nothing():
    fam = dk.PsiFamily(
        members=(dk.PsiFunction(table=(dk.STAR, dk.STAR)),), num_labels=2
    )
    assert dk.is_psi_shattered(dk.full_class(1, 2), (0,), fam) is None


def test_six_cycle_not_psi_n_shattered_on_pair():
    fam = dk.natarajan_family(6)
    assert oracles.psi_shattered(c6(), (0, 1), fam) is False
    assert dk.is_psi_shattered(c6(), (0, 1), fam) is None


# ------------------------------------------------------------ exact dims

def test_full_class_dimensions():
    full = dk.full_class(2, 3)
    assert dk.exact_dimension(full, "natarajan").value == 2
    assert dk.exact_dimension(full, "graph").value == 2


def test_six_cycle_dimensions():
    cls = c6()
    assert dk.exact_dimension(cls, "ds").value == 2
    assert dk.exact_dimension(cls, "natarajan").value == 1
    assert dk.exact_dimension(cls, "graph").value == 2


def test_singleton_graph_dimension_zero():
    single = dk.class_from_tables([(1, 0)], num_labels=2)
    res = dk.exact_dimension(single, "graph")
    assert res.value == 0 and res.certificate is None


def test_gap_class_dimension_separation():
    entry = dk.gap_class(3)
    assert dk.exact_dimension(entry.cls, "natarajan").value == 1
    assert dk.exact_dimension(entry.cls, "graph").value == 3


def test_vc_requires_binary_alphabet():
    with pytest.raises(dk.PreconditionError):
        dk.exact_dimension(three_hyp(), "vc")
    assert dk.exact_dimension(dk.full_class(3, 2), "vc").value == 3


def test_window_warning_when_supports_are_out_of_reach():
    cls = dk.class_from_supports([{10: 1}, {11: 1}], num_labels=2)
    res = dk.exact_dimension(cls, "natarajan", window=5)
    assert res.value == 0 and res.warning is not None


def test_oracle_class_requires_window():
    oracle = dk.HypothesisClass(num_labels=2, behavior_fn=lambda pts: {(0,) * len(pts)})
    with pytest.raises(dk.PreconditionError):
        dk.exact_dimension(oracle, "natarajan")
    assert dk.exact_dimension(oracle, "natarajan", window=3).value == 0


# ------------------------------------------------- randomized cross-checks

def test_shattering_agrees_with_bruteforce_oracles():
    rng = random.Random(20250811)
    for _ in range(60):
        n = rng.randint(1, 3)
        q = rng.choice((2, 3))
        cls = random_table_class(rng, n, q, 8)
        points = tuple(range(n))
        assert (dk.is_n_shattered(cls, points) is not None) == oracles.n_shattered(cls, points)
        assert (dk.is_g_shattered(cls, points) is not None) == oracles.g_shattered(cls, points)
        assert (dk.is_ds_shattered(cls, points) is not None) == oracles.ds_shattered(cls, points)
        fam = dk.natarajan_family(q)
        assert (dk.is_psi_shattered(cls, points, fam) is not None) == oracles.psi_shattered(cls, points, fam)


def test_exact_dimension_agrees_with_bruteforce():
    rng = random.Random(99)
    for _ in range(25):
        cls = random_table_class(rng, rng.randint(1, 3), rng.choice((2, 3)), 8)
        window = cls.domain_size - 1
        for kind in ("natarajan", "graph", "ds"):
            assert dk.exact_dimension(cls, kind).value == oracles.dimension(cls, kind, window)


def test_monotonicity_of_shattering():
    rng = random.Random(7)
    for _ in range(40):
        cls = random_table_class(rng, 4, rng.choice((2, 3)), 12)
        for kind, check in (
            ("natarajan", dk.is_n_shattered),
            ("graph", dk.is_g_shattered),
            ("ds", dk.is_ds_shattered),
        ):
            shattered = {
                pts
                for r in range(1, 5)
                for pts in itertools.combinations(range(4), r)
                if check(cls, pts) is not None
            }
            for pts in shattered:
                for r in range(1, len(pts)):
                    for sub in itertools.combinations(pts, r):
                        assert sub in shattered, (kind, pts, sub)


def test_binary_classes_have_coinciding_dimensions():
    rng = random.Random(13)
    for _ in range(40):
        cls = random_table_class(rng, rng.randint(1, 4), 2, 16)
        dims = {
            kind: dk.exact_dimension(cls, kind).value
            for kind in ("vc", "natarajan", "graph", "ds")
        }
        assert len(set(dims.values())) == 1, dims


def test_dimension_order_and_psi_instantiation():
    rng = random.Random(21)
    for _ in range(30):
        cls = random_table_class(rng, rng.randint(1, 4), rng.choice((2, 3, 4)), 16)
        n = dk.exact_dimension(cls, "natarajan").value
        g = dk.exact_dimension(cls, "graph").value
        ds = dk.exact_dimension(cls, "ds").value
        assert n <= g and n <= ds
        q = cls.num_labels
        assert dk.exact_dimension(cls, "psi", psi=dk.natarajan_family(q)).value == n
        assert dk.exact_dimension(cls, "psi", psi=dk.graph_family(q)).value == g


def test_certificates_reverify_and_avoid_constant_points():
    rng = random.Random(5)
    fam_cache = {}
    for _ in range(40):
        cls = random_table_class(rng, rng.randint(1, 4), rng.choice((2, 3)), 12)
        q = cls.num_labels
        fam = fam_cache.setdefault(q, dk.natarajan_family(q))
        for kind in ("natarajan", "graph", "ds", "psi"):
            res = dk.exact_dimension(cls, kind, psi=fam if kind == "psi" else None)
            if res.certificate is None:
                continue
            assert dk.verify_certificate(res.certificate, cls)
            for x in res.certificate.points:
                assert len(dk.restrict(cls, (x,))) >= 2


# ------------------------------------------------------------ growth bound

def test_sauer_check_three_hypotheses():
    rep = dk.sauer_natarajan_check(three_hyp(), (0, 1), 1)
    assert rep.count == 3 and rep.bound == 2 * 3 ** 2 and rep.holds


def test_sauer_check_singleton_dimension_zero():
    single = dk.class_from_tables([(1, 0)], num_labels=2)
    rep = dk.sauer_natarajan_check(single, (0, 1), 0)
    assert rep.count == 1 and rep.bound == 1 and rep.holds


def test_sauer_check_full_binary_cube():
    rep = dk.sauer_natarajan_check(dk.full_class(3, 2), (0, 1, 2), 3)
    assert rep.count == 8 and rep.bound == 27 * 2 ** 6 and rep.holds
