"""Families of {0,1,*}-valued label encoders and their distinguisher checks.

An encoder maps each label to 0, 1, or star (= "ignore"); a family of them
induces a shattering notion (see ``dimensions.is_psi_shattered``).  This
module builds the two canonical families (per-label indicators, which yield
the graph dimension, and ordered-pair selectors, which yield the Natarajan
dimension), decides whether a family distinguishes every label pair,
constructs the hard class for a failing family, and runs the exhaustive
search refuting that DS-shattering is induced by any such family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .core import (
    HypothesisClass,
    PreconditionError,
    RepresentationError,
    class_from_tables,
    restrict,
)

STAR = 2  # third symbol of the {0, 1, *} output code


@dataclass(frozen=True)
class PsiFunction:
    """A total map from labels 0..q-1 to {0, 1, *}, stored as a table."""

    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        if not table:
            raise RepresentationError("encoder needs a nonempty alphabet")
        for v in table:
            if v not in (0, 1, STAR):
                raise RepresentationError(f"encoder output {v} outside {{0,1,*}}")
        object.__setattr__(self, "table", table)

    @property
    def num_labels(self) -> int:
        return len(self.table)

    def __call__(self, y: int) -> int:
        return self.table[y]

    def apply(self, pattern) -> tuple[int, ...]:
        return tuple(self.table[v] for v in pattern)


@dataclass(frozen=True)
class PsiFamily:
    """A finite, duplicate-free family of encoders over one alphabet."""

    members: tuple[PsiFunction, ...]
    num_labels: int

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise RepresentationError("family must be nonempty")
        seen = set()
        kept = []
        for m in members:
            if m.num_labels != self.num_labels:
                raise RepresentationError("family members disagree on the alphabet")
            if m.table not in seen:
                seen.add(m.table)
                kept.append(m)
        object.__setattr__(self, "members", tuple(kept))

    def __len__(self) -> int:
        return len(self.members)


def apply_encoders(psibar, pattern) -> tuple[int, ...]:
    """Componentwise application of an encoder tuple to a label tuple."""
    return tuple(psi.table[v] for psi, v in zip(psibar, pattern, strict=True))


def graph_family(num_labels: int) -> PsiFamily:
    """One indicator encoder per label (1 on the label, 0 elsewhere); the
    induced dimension is the graph dimension."""
    if num_labels < 2:
        raise PreconditionError("need at least two labels")
    members = tuple(
        PsiFunction(table=tuple(1 if y == k else 0 for y in range(num_labels)))
        for k in range(num_labels)
    )
    return PsiFamily(members=members, num_labels=num_labels)


def natarajan_family(num_labels: int) -> PsiFamily:
    """One encoder per ordered label pair (k, k'): 1 on k, 0 on k', star
    elsewhere; the induced dimension is the Natarajan dimension."""
    if num_labels < 2:
        raise PreconditionError("need at least two labels")
    members = []
    for k in range(num_labels):
        for kp in range(num_labels):
            if k != kp:
                members.append(PsiFunction(table=tuple(
                    1 if y == k else (0 if y == kp else STAR)
                    for y in range(num_labels)
                )))
    return PsiFamily(members=tuple(members), num_labels=num_labels)


def is_distinguisher(family: PsiFamily) -> tuple[bool, Optional[tuple[int, int]]]:
    """A family distinguishes (y, y') when some member maps them to 0 and 1
    (in either order).  Returns (True, None) or (False, first failing pair)."""
    for y in range(family.num_labels):
        for yp in range(y + 1, family.num_labels):
            if not any(
                {m.table[y], m.table[yp]} == {0, 1} for m in family.members
            ):
                return False, (y, yp)
    return True, None


def failing_psi_class(family: PsiFamily, window: int):
    """Hard class for a non-distinguisher: all functions from [0, window] to
    the first indistinguishable pair, plus an order-1 witness for the induced
    dimension.

    For an indistinguishable pair no encoder separates the two labels, so at
    every coordinate some bit b has the whole image inside {b, *}; the
    witness answers with the complementary bit at each coordinate, which no
    behavior can attain even at a single coordinate.
    """
    ok, pair = is_distinguisher(family)
    if ok:
        raise PreconditionError("family distinguishes every pair; no hard class exists")
    y1, y2 = pair
    if window < 0:
        raise PreconditionError("window must be a natural")
    rows = itertools.product((y1, y2), repeat=window + 1)
    cls = class_from_tables(rows, num_labels=family.num_labels)

    def blocked_bit(psi: PsiFunction) -> int:
        a, b = psi.table[y1], psi.table[y2]
        live = {v for v in (a, b) if v != STAR}
        # live is empty or a single bit: the pair is indistinguishable.
        b0 = live.pop() if live else 0
        return b0 ^ 1

    def evaluator(points, psibar):
        return tuple(blocked_bit(psi) for psi in psibar)

    from .witnesses import Witness

    witness = Witness(flavor="psi", order=1, evaluator=evaluator,
                      psi=family, provenance="failing_psi")
    return cls, witness


def all_encoders(num_labels: int) -> tuple[PsiFunction, ...]:
    """Every {0,1,*}-valued table over the alphabet, in lexicographic order."""
    return tuple(
        PsiFunction(table=t)
        for t in itertools.product((0, 1, STAR), repeat=num_labels)
    )


@dataclass(frozen=True)
class PairEntry:
    """One encoder pair that shatters the full two-point domain, together
    with every 4-hypothesis subclass of DS dimension 1 it also shatters."""

    psi1: PsiFunction
    psi2: PsiFunction
    subclasses: tuple[tuple, ...]


@dataclass(frozen=True)
class RefutationReport:
    verdict: str  # "refuted" | "not_refuted" | "vacuous"
    pairs_examined: int
    entries: tuple[PairEntry, ...]

    def distinct_subclasses(self) -> set:
        return {s for e in self.entries for s in e.subclasses}


def refute_ds_expressibility(cls: HypothesisClass) -> RefutationReport:
    """Show that no encoder family expresses DS-shattering on this class.

    Requires an explicit two-point class of DS dimension 2.  Every encoder
    pair over the alphabet is enumerated; for each pair that shatters the
    domain, the search looks for a 4-hypothesis subclass of DS dimension 1
    that the same pair shatters.  Any such subclass is a counterexample to
    the pair computing the DS dimension, so the verdict is "refuted" when
    every shattering pair admits one.
    """
    from .dimensions import _pseudo_cube_core, exact_dimension

    if not cls.is_explicit or cls.domain_size != 2:
        raise PreconditionError("need an explicit class on exactly two points")
    if exact_dimension(cls, "ds").value != 2:
        raise PreconditionError("class must have DS dimension exactly 2")
    pats = restrict(cls, (0, 1)).patterns
    q = cls.num_labels

    # 4-subsets of behaviors with DS dimension exactly 1, precomputed once.
    ds1_subsets = []
    for combo in itertools.combinations(range(len(pats)), 4):
        subset = tuple(pats[i] for i in combo)
        if not _pseudo_cube_core(subset):
            ds1_subsets.append((combo, subset))

    tables = all_encoders(q)
    img1 = [tuple(t.table[p[0]] for p in pats) for t in tables]
    img2 = [tuple(t.table[p[1]] for p in pats) for t in tables]
    npat = len(pats)
    full = 0b1111

    entries = []
    for i1, a in enumerate(img1):
        for i2, b in enumerate(img2):
            mask = 0
            codes = []
            for k in range(npat):
                v1 = a[k]
                v2 = b[k]
                if v1 < 2 and v2 < 2:
                    c = (v1 << 1) | v2
                    mask |= 1 << c
                    codes.append(c)
                else:
                    codes.append(-1)
            if mask != full:
                continue
            found = []
            for combo, subset in ds1_subsets:
                sub_codes = {codes[k] for k in combo}
                if -1 not in sub_codes and len(sub_codes) == 4:
                    found.append(subset)
            entries.append(PairEntry(psi1=tables[i1], psi2=tables[i2],
                                     subclasses=tuple(found)))

    if not entries:
        verdict = "vacuous"
    elif all(e.subclasses for e in entries):
        verdict = "refuted"
    else:
        verdict = "not_refuted"
    return RefutationReport(verdict=verdict,
                            pairs_examined=len(tables) ** 2,
                            entries=tuple(entries))
