"""Shattering predicates and exact dimension computation.

Five flavors are supported: vc (binary alphabets only), natarajan, graph,
ds, and psi (parameterized by a family of {0,1,*}-valued label encoders).
Every positive answer comes with a certificate that re-verifies against the
class; every search is deterministic (lexicographic orders throughout).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .core import (
    HypothesisClass,
    PreconditionError,
    RepresentationError,
    restrict,
)
from .psi import STAR, PsiFamily

KINDS = ("vc", "natarajan", "graph", "ds", "psi")


@dataclass(frozen=True)
class ShatterCertificate:
    """Evidence that ``points`` is shattered: (g1, g2) for natarajan,
    (f,) for graph, the pseudo-cube pattern set for ds, the encoder tuple
    for psi, and () for vc."""

    kind: str
    points: tuple[int, ...]
    payload: tuple


@dataclass(frozen=True)
class DimensionResult:
    value: int
    certificate: Optional[ShatterCertificate]
    warning: Optional[str] = None


def _coverage_search(patterns, coord_choices):
    """Pick one binary encoder per coordinate so that the encoded patterns
    cover all 2^n binary tuples.

    ``coord_choices[i]`` is a list of (table, meta) where table maps a label
    to 0/1 (missing labels kill the pattern).  Branches are pruned as soon
    as the partial codes fail to cover all prefixes, which keeps negative
    answers cheap.  Returns the chosen metas (first in lexicographic choice
    order) or None.
    """
    n = len(coord_choices)
    chosen = []

    def rec(depth, alive):
        if depth == n:
            return True
        want = (1 << (1 << (depth + 1))) - 1
        for table, meta in coord_choices[depth]:
            nxt = []
            seen = 0
            for code, pat in alive:
                b = table.get(pat[depth])
                if b is not None:
                    c = (code << 1) | b
                    seen |= 1 << c
                    nxt.append((c, pat))
            if seen == want:
                chosen.append(meta)
                if rec(depth + 1, nxt):
                    return True
                chosen.pop()
        return False

    if rec(0, [(0, p) for p in patterns]):
        return tuple(chosen)
    return None


def _check_points(points):
    points = tuple(points)
    if not points:
        raise PreconditionError("point tuple must be nonempty")
    if len(set(points)) != len(points):
        raise PreconditionError(f"duplicate points in {points}")
    return points


def is_vc_shattered(cls: HypothesisClass, points) -> Optional[ShatterCertificate]:
    if cls.num_labels != 2:
        raise PreconditionError("vc shattering requires a binary alphabet")
    points = _check_points(points)
    pats = restrict(cls, points).pattern_set
    if all(p in pats for p in itertools.product((0, 1), repeat=len(points))):
        return ShatterCertificate(kind="vc", points=points, payload=())
    return None


def is_n_shattered(cls: HypothesisClass, points) -> Optional[ShatterCertificate]:
    """Search for componentwise-distinct labelings (g1, g2), drawn from the
    values realized at each coordinate, whose 2^n mixtures are all realized."""
    points = _check_points(points)
    patterns = restrict(cls, points).patterns
    choices = []
    for i in range(len(points)):
        vals = sorted({p[i] for p in patterns})
        pairs = [({a: 1, b: 0}, (a, b)) for a, b in itertools.combinations(vals, 2)]
        if not pairs:
            return None
        choices.append(pairs)
    got = _coverage_search(patterns, choices)
    if got is None:
        return None
    g1 = tuple(m[0] for m in got)
    g2 = tuple(m[1] for m in got)
    return ShatterCertificate(kind="natarajan", points=points, payload=(g1, g2))


def is_g_shattered(cls: HypothesisClass, points) -> Optional[ShatterCertificate]:
    """Search for a labeling f whose exact agreement sets against the class
    exhaust the powerset of coordinates.  Any witness labeling must itself
    be realized (take the full agreement set), so candidates are patterns."""
    points = _check_points(points)
    patterns = restrict(cls, points).patterns
    n = len(points)
    full = (1 << (1 << n)) - 1
    for f in patterns:
        seen = 0
        for p in patterns:
            mask = 0
            for i in range(n):
                if p[i] == f[i]:
                    mask |= 1 << i
            seen |= 1 << mask
        if seen == full:
            return ShatterCertificate(kind="graph", points=points, payload=(f,))
    return None


def is_pseudo_cube(patterns) -> bool:
    """True iff every pattern has, at every coordinate, a neighbor in the set
    differing there and only there."""
    pats = list(patterns)
    if not pats:
        return False
    n = len(pats[0])
    for p in pats:
        if len(p) != n:
            raise PreconditionError("mixed arities in pattern set")
    pset = set(pats)
    for p in pset:
        for i in range(n):
            if not any(
                q[i] != p[i] and all(q[j] == p[j] for j in range(n) if j != i)
                for q in pset
            ):
                return False
    return True


def _pseudo_cube_core(patterns) -> frozenset:
    """Iteratively delete patterns lacking some coordinate neighbor.  The
    neighbor property is closed under unions, so the nonempty fixpoint is the
    union of all pseudo-cubes inside the set (itself a pseudo-cube), and the
    fixpoint is empty iff no pseudo-cube exists."""
    alive = set(patterns)
    n = len(next(iter(alive))) if alive else 0
    changed = True
    while changed and alive:
        changed = False
        for p in sorted(alive):
            ok = True
            for i in range(n):
                if not any(
                    q[i] != p[i] and all(q[j] == p[j] for j in range(n) if j != i)
                    for q in alive
                ):
                    ok = False
                    break
            if not ok:
                alive.remove(p)
                changed = True
    return frozenset(alive)


def is_ds_shattered(cls: HypothesisClass, points) -> Optional[ShatterCertificate]:
    points = _check_points(points)
    patterns = restrict(cls, points).patterns
    core = _pseudo_cube_core(patterns)
    if not core:
        return None
    return ShatterCertificate(kind="ds", points=points, payload=(tuple(sorted(core)),))


def is_psi_shattered(cls: HypothesisClass, points, family: PsiFamily) -> Optional[ShatterCertificate]:
    """Search for an encoder tuple from the family whose image of the class
    behaviors covers {0,1}^n.  Star outputs never count toward coverage."""
    points = _check_points(points)
    if family.num_labels != cls.num_labels:
        raise RepresentationError("family alphabet differs from class alphabet")
    patterns = restrict(cls, points).patterns
    choices = []
    for i in range(len(points)):
        vals = {p[i] for p in patterns}
        cands = []
        for psi in family.members:
            imgs = {psi.table[v] for v in vals}
            if 0 in imgs and 1 in imgs:
                table = {v: psi.table[v] for v in vals if psi.table[v] != STAR}
                cands.append((table, psi))
        if not cands:
            return None
        choices.append(cands)
    got = _coverage_search(patterns, choices)
    if got is None:
        return None
    return ShatterCertificate(kind="psi", points=points, payload=(got,))


def _shatter(cls, points, kind, family):
    if kind == "vc":
        return is_vc_shattered(cls, points)
    if kind == "natarajan":
        return is_n_shattered(cls, points)
    if kind == "graph":
        return is_g_shattered(cls, points)
    if kind == "ds":
        return is_ds_shattered(cls, points)
    if kind == "psi":
        if family is None:
            raise PreconditionError("psi dimension requires a family")
        return is_psi_shattered(cls, points, family)
    raise PreconditionError(f"unknown dimension kind {kind!r}")


def _default_window(cls: HypothesisClass) -> int:
    if cls.domain_size is not None:
        return cls.domain_size - 1
    if cls.hypotheses is not None:
        bound = cls.support_bound()
        return 0 if bound is None else bound
    raise PreconditionError("oracle classes need an explicit window")


def exact_dimension(cls: HypothesisClass, kind: str, *, psi: Optional[PsiFamily] = None,
                    window: Optional[int] = None) -> DimensionResult:
    """Largest d such that some d-subset of [0, window] is shattered.

    For explicit classes over the naturals the window defaults to the top of
    all supports: beyond it every hypothesis is 0, so no larger point can
    join a shattered set and the search is exact.  Sizes increase until the
    first size with no shattered subset (all five flavors are downward
    monotone).  Ties go to the lexicographically first subset.
    """
    if kind not in KINDS:
        raise PreconditionError(f"unknown dimension kind {kind!r}")
    warning = None
    if window is None:
        window = _default_window(cls)
    elif cls.domain_size is None and cls.hypotheses is not None:
        if not any(
            x <= window for h in cls.hypotheses for x, _ in (h.support or ())
        ) and any(h.support for h in cls.hypotheses):
            warning = "window contains no support point of the class"
    if cls.domain_size is not None:
        window = min(window, cls.domain_size - 1)
    pts = range(window + 1)
    best = DimensionResult(value=0, certificate=None, warning=warning)
    for size in range(1, window + 2):
        found = None
        for points in itertools.combinations(pts, size):
            cert = _shatter(cls, points, kind, psi)
            if cert is not None:
                found = cert
                break
        if found is None:
            break
        best = DimensionResult(value=size, certificate=found, warning=warning)
    return best


def verify_certificate(cert: ShatterCertificate, cls: HypothesisClass) -> bool:
    """Re-check a certificate against the class it allegedly shatters."""
    points = cert.points
    pats = restrict(cls, points).pattern_set
    n = len(points)
    if cert.kind == "vc":
        return all(p in pats for p in itertools.product((0, 1), repeat=n))
    if cert.kind == "natarajan":
        g1, g2 = cert.payload
        if any(a == b for a, b in zip(g1, g2)):
            return False
        return all(
            tuple(g1[i] if i in I else g2[i] for i in range(n)) in pats
            for I in (frozenset(c) for r in range(n + 1)
                      for c in itertools.combinations(range(n), r))
        )
    if cert.kind == "graph":
        (f,) = cert.payload
        masks = set()
        for p in pats:
            masks.add(sum(1 << i for i in range(n) if p[i] == f[i]))
        return len(masks) == 1 << n
    if cert.kind == "ds":
        (cube,) = cert.payload
        return set(cube) <= pats and is_pseudo_cube(cube)
    if cert.kind == "psi":
        (psibar,) = cert.payload
        covered = set()
        for p in pats:
            img = tuple(psi.table[v] for psi, v in zip(psibar, p))
            if STAR not in img:
                covered.add(img)
        return len(covered) == 1 << n
    raise PreconditionError(f"unknown certificate kind {cert.kind!r}")


@dataclass(frozen=True)
class SauerReport:
    count: int
    bound: int
    holds: bool


def sauer_natarajan_check(cls: HypothesisClass, points, d: int) -> SauerReport:
    """Check |H|_T| <= |T|^d * q^(2d), the growth bound for classes whose
    Natarajan dimension is at most d.  Exact integers."""
    points = _check_points(points)
    count = len(restrict(cls, points))
    bound = len(points) ** d * cls.num_labels ** (2 * d)
    return SauerReport(count=count, bound=bound, holds=count <= bound)
