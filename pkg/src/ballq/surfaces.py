"""Numerical intersection calculus on surface models.

A surface model is pure bookkeeping: the topological Euler number, the
self-intersection of the canonical class, a named table of curves with
their pairwise intersection numbers, and named marked points carrying the
multiplicity of each curve through them.  Etale quotients, blow-ups,
log-Chern numbers and the Bogomolov-Miyaoka-Yau comparison are all exact
integer computations on this data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

SMOOTH_ELLIPTIC = "smooth-elliptic"
SMOOTH_RATIONAL = "smooth-rational"
SINGULAR = "singular"

_KINDS = (SMOOTH_ELLIPTIC, SMOOTH_RATIONAL, SINGULAR)


class BMYClass(str, Enum):
    EQUALITY = "Equality"
    STRICT_INEQUALITY = "StrictInequality"
    VIOLATION = "Violation"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class CurveRecord:
    """Numerical record of one curve: self-intersection and smoothness kind.

    Singular curves carry the kind they acquire once every multiple point
    has been blown up (their normalization type).
    """

    self_int: int
    kind: str
    resolved_kind: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if self.kind == SINGULAR:
            if self.resolved_kind not in (SMOOTH_ELLIPTIC, SMOOTH_RATIONAL):
                raise ValueError("singular curves need a smooth resolved kind")
        elif self.resolved_kind is not None:
            raise ValueError("resolved_kind only applies to singular curves")


def _pair_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class SurfaceModel:
    """Immutable numerical model of a projective surface.

    pairwise maps sorted name pairs to intersection numbers (absent pairs
    meet in 0 points); points maps point names to sparse multiplicity
    tables (absent curves pass with multiplicity 0).
    """

    chi_top: int
    k2: int
    curves: dict[str, CurveRecord]
    pairwise: dict[tuple[str, str], int]
    points: dict[str, dict[str, int]]

    @staticmethod
    def build(chi_top: int, k2: int, curves: dict[str, CurveRecord],
              pairwise: dict[tuple[str, str], int] | None = None,
              points: dict[str, dict[str, int]] | None = None) -> "SurfaceModel":
        pairwise = pairwise or {}
        points = points or {}
        table: dict[tuple[str, str], int] = {}
        for (a, b), value in pairwise.items():
            if a == b:
                raise ValueError(f"self-pair {a!r} belongs in the curve record")
            if a not in curves or b not in curves:
                raise ValueError(f"pairwise entry for unknown curve in ({a!r}, {b!r})")
            key = _pair_key(a, b)
            if table.get(key, value) != value:
                raise ValueError(f"conflicting intersection numbers for {key}")
            table[key] = value
        for point, mults in points.items():
            for name, mult in mults.items():
                if name not in curves:
                    raise ValueError(f"point {point!r} references unknown curve {name!r}")
                if mult < 0:
                    raise ValueError("multiplicities must be nonnegative")
        return SurfaceModel(chi_top, k2, dict(curves), table,
                            {p: dict(m) for p, m in points.items()})

    def pairwise_int(self, a: str, b: str) -> int:
        if a == b:
            return self.curves[a].self_int
        return self.pairwise.get(_pair_key(a, b), 0)

    def point_multiplicity(self, point: str, curve: str) -> int:
        return self.points[point].get(curve, 0)


@dataclass(frozen=True)
class QuotientOrbits:
    """Orbit decomposition feeding an etale quotient: image name -> the
    tuple of source names forming one orbit."""

    curve_orbits: dict[str, tuple[str, ...]]
    point_orbits: dict[str, tuple[str, ...]]


def etale_quotient(model: SurfaceModel, group_order: int,
                   orbits: QuotientOrbits) -> SurfaceModel:
    """Push a surface model through a free quotient of the given degree.

    Euler number and canonical self-intersection divide by the degree;
    a curve orbit O maps to a single curve of self-intersection (sum O)^2
    divided by the degree, and pairwise numbers push forward the same way.
    Point orbits (which must have full size, i.e. the action is free on
    them) become single marked points whose multiplicity on an image curve
    is the number of branches upstairs through any one orbit member.
    """
    g = group_order
    if g < 1:
        raise ValueError("group order must be positive")
    if model.chi_top % g or model.k2 % g:
        raise ValueError("Euler number and K^2 must divide by the group order")

    claimed_curves = [name for orbit in orbits.curve_orbits.values() for name in orbit]
    if sorted(claimed_curves) != sorted(model.curves):
        raise ValueError("curve orbits must partition the curve set")
    claimed_points = [name for orbit in orbits.point_orbits.values() for name in orbit]
    if sorted(claimed_points) != sorted(model.points):
        raise ValueError("point orbits must partition the marked points")

    for image, orbit in orbits.curve_orbits.items():
        if g % len(orbit):
            raise ValueError(f"curve orbit {image!r} has size not dividing {g}")
        kinds = {model.curves[name].kind for name in orbit}
        if len(kinds) != 1 or SINGULAR in kinds:
            raise ValueError(f"curve orbit {image!r} must consist of smooth curves of one kind")
    for image, orbit in orbits.point_orbits.items():
        if len(orbit) != g:
            raise ValueError(f"point orbit {image!r} has size {len(orbit)}, "
                             f"so the action is not free")

    def pushed(total: int, what: str) -> int:
        if total % g:
            raise ValueError(f"{what} does not divide by the group order")
        return total // g

    image_names = list(orbits.curve_orbits)
    new_curves: dict[str, CurveRecord] = {}
    new_pairwise: dict[tuple[str, str], int] = {}

    for i, image in enumerate(image_names):
        orbit = orbits.curve_orbits[image]
        total = sum(model.pairwise_int(a, b) for a in orbit for b in orbit)
        self_int = pushed(total, f"(sum of orbit {image!r})^2")
        for other in image_names[:i]:
            other_orbit = orbits.curve_orbits[other]
            cross = sum(model.pairwise_int(a, b) for a in orbit for b in other_orbit)
            value = pushed(cross, f"intersection of orbits {image!r} and {other!r}")
            if value:
                new_pairwise[_pair_key(image, other)] = value
        new_curves[image] = CurveRecord(self_int, model.curves[orbit[0]].kind)

    new_points: dict[str, dict[str, int]] = {}
    for image_point, orbit in orbits.point_orbits.items():
        branch_counts: dict[str, int] = {}
        for image, curve_orbit in orbits.curve_orbits.items():
            per_member = {
                sum(model.point_multiplicity(p, c) for c in curve_orbit) for p in orbit
            }
            if len(per_member) != 1:
                raise ValueError(f"branch count at {image_point!r} differs across the orbit")
            count = per_member.pop()
            if count:
                branch_counts[image] = count
        new_points[image_point] = branch_counts

    # A curve acquiring a point of multiplicity >= 2 downstairs is singular;
    # its normalization is the common smooth kind of the orbit members.
    for image in image_names:
        worst = max((m.get(image, 0) for m in new_points.values()), default=0)
        if worst >= 2:
            rec = new_curves[image]
            new_curves[image] = CurveRecord(rec.self_int, SINGULAR, resolved_kind=rec.kind)

    return SurfaceModel.build(model.chi_top // g, model.k2 // g,
                              new_curves, new_pairwise, new_points)


def blow_up(model: SurfaceModel, point: str,
            exceptional_name: str | None = None) -> SurfaceModel:
    """Blow up one marked point.

    Euler number rises by 1, K^2 drops by 1, each curve through the point
    with multiplicity m loses m^2 from its self-intersection and meets the
    new exceptional (-1)-curve in m points; pairwise numbers drop by the
    product of multiplicities.  A singular curve whose last multiple point
    this was becomes its resolved kind.
    """
    if point not in model.points:
        raise ValueError(f"unknown marked point {point!r}")
    mults = model.points[point]
    exc = exceptional_name or f"exc_{point}"
    if exc in model.curves:
        raise ValueError(f"exceptional name {exc!r} already in use")

    new_curves: dict[str, CurveRecord] = {}
    for name, rec in model.curves.items():
        m = mults.get(name, 0)
        if m >= 2 and rec.kind != SINGULAR:
            raise ValueError(f"smooth curve {name!r} cannot have multiplicity {m}")
        kind, resolved = rec.kind, rec.resolved_kind
        if rec.kind == SINGULAR:
            still_multiple = any(
                other_mults.get(name, 0) >= 2
                for other_point, other_mults in model.points.items()
                if other_point != point
            )
            if not still_multiple:
                kind, resolved = rec.resolved_kind, None
        new_curves[name] = CurveRecord(rec.self_int - m * m, kind, resolved)
    new_curves[exc] = CurveRecord(-1, SMOOTH_RATIONAL)

    # Only curves actually through the point change any pairwise number.
    new_pairwise = dict(model.pairwise)
    through = [name for name, m in mults.items() if m]
    for i, a in enumerate(through):
        for b in through[i + 1:]:
            key = _pair_key(a, b)
            new_pairwise[key] = new_pairwise.get(key, 0) - mults[a] * mults[b]
        new_pairwise[_pair_key(a, exc)] = mults[a]

    new_points = {p: dict(m) for p, m in model.points.items() if p != point}
    return SurfaceModel.build(model.chi_top + 1, model.k2 - 1,
                              new_curves, new_pairwise, new_points)


def k_dot(model: SurfaceModel, curve: str) -> int:
    """Intersection of the canonical class with a smooth curve, from
    adjunction: -C^2 for elliptic curves, -C^2 - 2 for rational ones."""
    rec = model.curves[curve]
    if rec.kind == SMOOTH_ELLIPTIC:
        return -rec.self_int
    if rec.kind == SMOOTH_RATIONAL:
        return -rec.self_int - 2
    raise ValueError(f"curve {curve!r} is singular; blow up its multiple points first")


@dataclass(frozen=True)
class LogPair:
    """A surface model together with a boundary divisor: a list of disjoint
    smooth elliptic curves of negative self-intersection."""

    surface: SurfaceModel
    boundary: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.boundary)) != len(self.boundary):
            raise ValueError("boundary names repeat")
        for name in self.boundary:
            rec = self.surface.curves.get(name)
            if rec is None:
                raise ValueError(f"unknown boundary curve {name!r}")
            if rec.kind != SMOOTH_ELLIPTIC:
                raise ValueError(f"boundary curve {name!r} is not smooth elliptic")
            if rec.self_int >= 0:
                raise ValueError(f"boundary curve {name!r} has nonnegative self-intersection")
        for i, a in enumerate(self.boundary):
            for b in self.boundary[i + 1:]:
                if self.surface.pairwise_int(a, b) != 0:
                    raise ValueError(f"boundary curves {a!r} and {b!r} are not disjoint")


def log_chern(pair: LogPair) -> tuple[int, int]:
    """Log-Chern numbers (c1bar^2, c2bar) of the pair.

    c2bar is the Euler number of the complement, which equals chi(X) since
    the boundary components are elliptic; c1bar^2 = (K + D)^2 expands to
    K^2 + sum(2*K.T + T^2) plus the (vanishing) pairwise boundary terms.
    """
    surface = pair.surface
    c2 = surface.chi_top
    c1 = surface.k2
    for name in pair.boundary:
        c1 += 2 * k_dot(surface, name) + surface.curves[name].self_int
    names = pair.boundary
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            c1 += 2 * surface.pairwise_int(a, b)
    return c1, c2


@dataclass(frozen=True)
class NefReport:
    """Necessary numerical conditions for K + D to be nef and big:
    (K+D)^2 > 0 and (K+D).T >= 0 for every boundary component."""

    log_canonical_self_int: int
    boundary_pairings: dict[str, int]

    @property
    def passed(self) -> bool:
        return (self.log_canonical_self_int > 0
                and all(v >= 0 for v in self.boundary_pairings.values()))

    def to_json(self) -> dict[str, object]:
        return {
            "log_canonical_self_int": self.log_canonical_self_int,
            "boundary_pairings": dict(self.boundary_pairings),
            "passed": self.passed,
        }


def nef_numerical_check(pair: LogPair) -> NefReport:
    surface = pair.surface
    c1, _ = log_chern(pair)
    pairings = {}
    for name in pair.boundary:
        value = k_dot(surface, name) + surface.curves[name].self_int
        value += sum(surface.pairwise_int(name, other)
                     for other in pair.boundary if other != name)
        pairings[name] = value
    return NefReport(c1, pairings)


def bmy_classify(pair: LogPair) -> BMYClass:
    """Compare c1bar^2 with 3*c2bar; only meaningful when the numerical
    nef check passes, otherwise NotApplicable."""
    if not nef_numerical_check(pair).passed:
        return BMYClass.NOT_APPLICABLE
    c1, c2 = log_chern(pair)
    if c1 == 3 * c2:
        return BMYClass.EQUALITY
    if c1 < 3 * c2:
        return BMYClass.STRICT_INEQUALITY
    return BMYClass.VIOLATION


def cusp_count(pair: LogPair) -> int:
    """One cusp per boundary component."""
    return len(pair.boundary)


@dataclass(frozen=True)
class ExactVolume:
    """A hyperbolic volume recorded exactly as a rational multiple of pi^2."""

    coefficient: Fraction

    def __post_init__(self) -> None:
        if self.coefficient < 0:
            raise ValueError("volume coefficient must be nonnegative")

    @property
    def text(self) -> str:
        return f"({self.coefficient})·π²"

    @property
    def approx(self) -> float:
        """Decimal value for display only; never used in any check."""
        return float(self.coefficient) * math.pi ** 2

    def to_json(self) -> dict[str, object]:
        return {
            "pi_squared_coefficient": str(self.coefficient),
            "text": self.text,
            "approx_display_only": self.approx,
        }


def volume_from_chi(chi: int) -> ExactVolume:
    """Volume (8/3) * pi^2 * chi of a curvature -1 ball quotient with the
    given Euler number (generalized Gauss-Bonnet)."""
    if chi < 0:
        raise ValueError("Euler number of a ball quotient is nonnegative")
    return ExactVolume(Fraction(8, 3) * chi)
