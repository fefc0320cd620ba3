"""Seeded random class generators shared by the property and acceptance
tests."""

import itertools
import random

from dimkit import class_from_supports, class_from_tables


def random_table_class(rng, domain, num_labels, max_hypotheses):
    all_rows = list(itertools.product(range(num_labels), repeat=domain))
    k = rng.randint(1, min(max_hypotheses, len(all_rows)))
    rows = rng.sample(all_rows, k)
    return class_from_tables(rows, num_labels=num_labels)


def table_corpus(seed, count, *, max_domain=4, labels=(2, 3, 4), max_hypotheses=16):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_domain)
        q = rng.choice(labels)
        out.append(random_table_class(rng, n, q, max_hypotheses))
    return out


def random_support_class(rng, window, num_labels, max_hypotheses):
    """Explicit class over the naturals with supports inside [0, window]."""
    all_rows = list(itertools.product(range(num_labels), repeat=window + 1))
    k = rng.randint(1, min(max_hypotheses, len(all_rows)))
    rows = rng.sample(all_rows, k)
    supports = [
        tuple((x, v) for x, v in enumerate(row) if v != 0) for row in rows
    ]
    # distinct rows can collapse to equal supports only if equal rows; safe
    return class_from_supports(supports, num_labels=num_labels)
