#!/usr/bin/env python3
"""Tour of the library on its canonical objects.

Computes every dimension of the gallery classes, extracts a witness from a
learner via the exact adversary, builds the augmented-class ERM, and runs
the DS-expressibility refutation, printing a short summary of each step.
"""

from fractions import Fraction

import dimkit as dk


def show_gallery():
    print("== gallery dimensions ==")
    entries = [dk.gap_class(3), dk.six_cycle_class()]
    for entry in entries:
        dims = {
            kind: dk.exact_dimension(entry.cls, kind).value
            for kind in ("natarajan", "graph", "ds")
        }
        print(f"{entry.name:10s} dims={dims} expected={entry.expected_dims}")
        if entry.witness is not None:
            window = entry.cls.domain_size - 1
            report = dk.validate_witness(entry.witness, entry.cls, window)
            print(f"{'':10s} bundled witness valid={report.valid} "
                  f"({report.checked_inputs} inputs)")


def show_adversary():
    print("\n== adversary against a memorizing learner ==")
    learner = dk.memorizing_learner(0, num_labels=3, window=3)
    report = dk.nfl_adversary(learner, (0, 1, 2, 3), (1, 1, 1, 1), (2, 2, 2, 2))
    print(f"target f={report.f_values} expected risk={report.expected_risk} "
          f"tail={report.tail_probability} (thresholds 1/4 and 1/7)")
    witness = dk.witness_from_learner(learner, 2)
    index_set = witness.evaluate((0, 1, 2, 3), (1, 1, 1, 1), (2, 2, 2, 2))
    print(f"order-{witness.order} witness answers {sorted(index_set)}")


def show_embedding():
    print("\n== augmented ERM over a three-hypothesis base ==")
    base = dk.class_from_supports([{1: 1}, {0: 1}, {0: 2, 1: 2}], num_labels=3)
    witness = dk.canonical_witness(base, "natarajan", 1)
    spec = dk.GoodFunctionSpec(witness=witness, num_labels=3)
    v = dk.good_patterns(spec, (0, 1))
    print(f"behaviors on (0,1): {v.patterns}")
    sample = ((0, 1), (0, 2), (1, 0), (1, 2))
    h, risk = dk.erm_augmented(spec, sample)
    print(f"ERM on {sample}: values {h.values_on((0, 1))}, risk {risk}")
    m = dk.uc_sample_size(len(v), Fraction(1, 4), Fraction(1, 5))
    print(f"sample size for eps=1/4, delta=1/5 over {len(v)} behaviors: {m}")


def show_refutation():
    print("\n== DS-expressibility refutation on the six-cycle ==")
    report = dk.refute_ds_expressibility(dk.six_cycle_class().cls)
    print(f"verdict={report.verdict} after {report.pairs_examined} encoder pairs; "
          f"{len(report.entries)} shattering pairs, "
          f"{len(report.distinct_subclasses())} distinct counterexample subclasses")


if __name__ == "__main__":
    show_gallery()
    show_adversary()
    show_embedding()
    show_refutation()
