"""Domain model for exact multiclass learnability computations.

Labels are integers 0..q-1 for an alphabet of size q; label 0 is the
distinguished default value (finite-support hypotheses map everything
outside their support to it).  Points are natural numbers.  Hypotheses and
classes are immutable and value-semantic, every operation here is pure, and
all risks and probabilities are ``fractions.Fraction`` so that threshold
comparisons (1/4, 1/7, 1/8, ...) are exact.  Index sets into label tuples
are 0-based throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Iterator, Optional

# A labeled sample: ((point, label), ...), repeats allowed.
Sample = tuple[tuple[int, int], ...]
# A labeling/behavior pattern: one label per point of some point tuple.
Pattern = tuple[int, ...]


class DomainError(ValueError):
    """A point fell outside a finite domain."""


class RepresentationError(ValueError):
    """A class body or oracle answer violates its representation contract."""


class PreconditionError(ValueError):
    """An operation was invoked outside its stated preconditions."""


class ConsistencyError(RuntimeError):
    """An internally guaranteed property failed; indicates a broken input
    contract (e.g. a nondeterministic learner) or a bug."""


class NflFailureError(ConsistencyError):
    """No mixture reached the expected-risk threshold.  Cannot happen for a
    deterministic total learner."""


class BudgetError(RuntimeError):
    """An enumeration budget ran out before the search goal was met."""


class ShatteredError(RuntimeError):
    """A canonical witness evaluator found no excludable output for some
    input, i.e. that input is shattered.  Carries the offending input."""

    def __init__(self, message: str, witness_input=None):
        super().__init__(message)
        self.witness_input = witness_input


@dataclass(frozen=True)
class Hypothesis:
    """A total labeling of the domain.

    Exactly one representation is set: ``table`` for a finite domain
    [0, n), or ``support`` for a finite-support function on the naturals
    (points absent from the support map to label 0).  ``num_labels`` is the
    alphabet size q; all values lie in 0..q-1.
    """

    num_labels: int
    table: Optional[tuple[int, ...]] = None
    support: Optional[tuple[tuple[int, int], ...]] = None

    def __post_init__(self):
        if self.num_labels < 1:
            raise RepresentationError("alphabet must contain label 0")
        if (self.table is None) == (self.support is None):
            raise RepresentationError("exactly one of table/support required")
        if self.table is not None:
            table = tuple(int(v) for v in self.table)
            for v in table:
                if not 0 <= v < self.num_labels:
                    raise RepresentationError(f"label {v} outside alphabet of size {self.num_labels}")
            object.__setattr__(self, "table", table)
        else:
            pairs = tuple(sorted((int(x), int(y)) for x, y in self.support))
            seen = set()
            for x, y in pairs:
                if x < 0:
                    raise RepresentationError("points are naturals")
                if x in seen:
                    raise RepresentationError(f"duplicate support point {x}")
                seen.add(x)
                if not 1 <= y < self.num_labels:
                    raise RepresentationError(
                        f"support stores nonzero labels below {self.num_labels}, got {y}"
                    )
            object.__setattr__(self, "support", pairs)

    @property
    def domain_size(self) -> Optional[int]:
        return len(self.table) if self.table is not None else None

    @cached_property
    def _support_map(self) -> dict[int, int]:
        return dict(self.support) if self.support is not None else {}

    def __call__(self, x: int) -> int:
        if x < 0:
            raise DomainError(f"point {x} is not a natural")
        if self.table is not None:
            if x >= len(self.table):
                raise DomainError(f"point {x} outside finite domain [0,{len(self.table)})")
            return self.table[x]
        return self._support_map.get(x, 0)

    def values_on(self, points: Iterable[int]) -> Pattern:
        return tuple(self(x) for x in points)

    def sort_key(self):
        if self.table is not None:
            return (0, self.table)
        return (1, self.support)


def max_support(h: Hypothesis) -> Optional[int]:
    """Largest point not mapped to 0, or None for the all-zero hypothesis."""
    if h.table is not None:
        best = None
        for x, v in enumerate(h.table):
            if v != 0:
                best = x
        return best
    return h.support[-1][0] if h.support else None


def truncate(h: Hypothesis, m: int) -> Hypothesis:
    """Zero out every point above ``m``; result has finite support."""
    if m < 0:
        raise PreconditionError("truncation point must be a natural")
    if h.table is not None:
        pairs = tuple((x, v) for x, v in enumerate(h.table) if x <= m and v != 0)
    else:
        pairs = tuple((x, v) for x, v in h.support if x <= m)
    return Hypothesis(num_labels=h.num_labels, support=pairs)


@dataclass(frozen=True)
class HypothesisClass:
    """A set of hypotheses, either explicit or exposed through a behavior
    oracle mapping a point tuple T to the set of realized label tuples.

    Explicit bodies are stored duplicate-free in canonical (lexicographic)
    order so that every downstream search is deterministic.
    """

    num_labels: int
    domain_size: Optional[int] = None
    hypotheses: Optional[tuple[Hypothesis, ...]] = None
    behavior_fn: Optional[Callable[[tuple[int, ...]], Iterable[Pattern]]] = None
    enumerator: Optional[Callable[[], Iterator[Hypothesis]]] = None

    def __post_init__(self):
        if (self.hypotheses is None) == (self.behavior_fn is None):
            raise RepresentationError("exactly one of hypotheses/behavior_fn required")
        if self.hypotheses is not None:
            hyps = tuple(self.hypotheses)
            if not hyps:
                raise RepresentationError("explicit class must be nonempty")
            for h in hyps:
                if h.num_labels != self.num_labels:
                    raise RepresentationError("alphabet mismatch inside class")
                if self.domain_size is not None and h.table is None:
                    raise RepresentationError("finite-domain class expects table hypotheses")
                if self.domain_size is None and h.support is None:
                    raise RepresentationError("class over the naturals expects finite-support hypotheses")
                if h.table is not None and len(h.table) != self.domain_size:
                    raise RepresentationError("table length differs from domain size")
            keys = [h.sort_key() for h in hyps]
            if len(set(keys)) != len(keys):
                dupes = [i for i, k in enumerate(keys) if keys.index(k) != i]
                raise RepresentationError(f"duplicate hypotheses at indices {dupes}")
            object.__setattr__(
                self, "hypotheses", tuple(sorted(hyps, key=Hypothesis.sort_key))
            )

    @property
    def is_explicit(self) -> bool:
        return self.hypotheses is not None

    def enumerate(self) -> Iterator[Hypothesis]:
        if self.hypotheses is not None:
            return iter(self.hypotheses)
        if self.enumerator is not None:
            return self.enumerator()
        raise RepresentationError("class exposes no hypothesis enumerator")

    def support_bound(self) -> Optional[int]:
        """Largest support point over an explicit class on the naturals."""
        if self.hypotheses is None or self.domain_size is not None:
            return None
        bounds = [m for h in self.hypotheses if (m := max_support(h)) is not None]
        return max(bounds) if bounds else None


def class_from_tables(rows: Iterable[Iterable[int]], num_labels: int) -> HypothesisClass:
    rows = [tuple(r) for r in rows]
    if not rows:
        raise RepresentationError("explicit class must be nonempty")
    n = len(rows[0])
    hyps = tuple(Hypothesis(num_labels=num_labels, table=r) for r in rows)
    return HypothesisClass(num_labels=num_labels, domain_size=n, hypotheses=hyps)


def class_from_supports(supports: Iterable[dict[int, int] | Iterable[tuple[int, int]]],
                        num_labels: int) -> HypothesisClass:
    hyps = []
    for s in supports:
        pairs = tuple(s.items()) if isinstance(s, dict) else tuple(s)
        hyps.append(Hypothesis(num_labels=num_labels, support=pairs))
    return HypothesisClass(num_labels=num_labels, domain_size=None, hypotheses=tuple(hyps))


@dataclass(frozen=True)
class BehaviorSet:
    """The distinct behaviors of a class on an ordered point tuple."""

    points: tuple[int, ...]
    patterns: tuple[Pattern, ...]

    def __post_init__(self):
        for p in self.patterns:
            if len(p) != len(self.points):
                raise RepresentationError("pattern arity differs from |points|")

    @cached_property
    def pattern_set(self) -> frozenset:
        return frozenset(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)


def restrict(cls: HypothesisClass, points: Iterable[int]) -> BehaviorSet:
    """Project the class onto ``points``: exactly { h|_X : h in H }, duplicates
    removed, in lexicographic order."""
    points = tuple(int(x) for x in points)
    if len(set(points)) != len(points):
        raise PreconditionError(f"duplicate points in {points}")
    if cls.domain_size is not None:
        for x in points:
            if not 0 <= x < cls.domain_size:
                raise DomainError(f"point {x} outside domain [0,{cls.domain_size})")
    if cls.hypotheses is not None:
        pats = {h.values_on(points) for h in cls.hypotheses}
    else:
        raw = cls.behavior_fn(points)
        pats = set()
        for p in raw:
            p = tuple(int(v) for v in p)
            if len(p) != len(points):
                raise RepresentationError(
                    f"oracle produced arity {len(p)} for {len(points)} points"
                )
            for v in p:
                if not 0 <= v < cls.num_labels:
                    raise RepresentationError(f"oracle label {v} outside alphabet")
            pats.add(p)
    return BehaviorSet(points=points, patterns=tuple(sorted(pats)))


def empirical_risk(h: Hypothesis, sample: Sample) -> Fraction:
    """Fraction of sample pairs the hypothesis mislabels."""
    if not sample:
        raise PreconditionError("empirical risk of an empty sample")
    wrong = sum(1 for x, y in sample if h(x) != y)
    return Fraction(wrong, len(sample))


@dataclass(frozen=True)
class FiniteDistribution:
    """Finite-support distribution over (point, label) pairs with exact
    rational weights summing to 1."""

    atoms: tuple[tuple[tuple[int, int], Fraction], ...]

    def __post_init__(self):
        atoms = tuple(((int(x), int(y)), Fraction(w)) for (x, y), w in self.atoms)
        keys = [k for k, _ in atoms]
        if len(set(keys)) != len(keys):
            raise RepresentationError("duplicate atoms")
        for _, w in atoms:
            if w <= 0:
                raise RepresentationError("weights must be positive")
        if sum(w for _, w in atoms) != 1:
            raise RepresentationError("weights must sum to exactly 1")
        object.__setattr__(self, "atoms", atoms)

    @staticmethod
    def uniform_on_graph(points: Iterable[int], values: Iterable[int]) -> "FiniteDistribution":
        pairs = list(zip(points, values, strict=True))
        w = Fraction(1, len(pairs))
        return FiniteDistribution(atoms=tuple((pair, w) for pair in pairs))


def true_risk(h: Hypothesis, dist: FiniteDistribution) -> Fraction:
    """Exact mass of atoms the hypothesis mislabels."""
    return sum((w for (x, y), w in dist.atoms if h(x) != y), Fraction(0))


def mix_labelings(index_set: Iterable[int], y1: Pattern, y2: Pattern) -> Pattern:
    """Componentwise selection: y1 at indices in the set, y2 elsewhere."""
    if len(y1) != len(y2):
        raise PreconditionError("labelings must share arity")
    chosen = set(index_set)
    for i in chosen:
        if not 0 <= i < len(y1):
            raise PreconditionError(f"index {i} outside arity {len(y1)}")
    return tuple(y1[i] if i in chosen else y2[i] for i in range(len(y1)))


def index_sets(arity: int) -> Iterator[frozenset]:
    """All subsets of range(arity), ordered by characteristic vector."""
    for bits in itertools.product((0, 1), repeat=arity):
        yield frozenset(i for i, b in enumerate(bits) if b)


def all_patterns(arity: int, num_labels: int) -> Iterator[Pattern]:
    return itertools.product(range(num_labels), repeat=arity)


def distinct_pairs(arity: int, num_labels: int) -> Iterator[tuple[Pattern, Pattern]]:
    """All ordered labeling pairs (y, y') that differ at every coordinate."""
    labels = range(num_labels)
    per_coord = [(a, b) for a in labels for b in labels if a != b]
    for combo in itertools.product(per_coord, repeat=arity):
        yield tuple(c[0] for c in combo), tuple(c[1] for c in combo)
