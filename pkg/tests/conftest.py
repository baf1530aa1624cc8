"""Shared helpers: an independent brute-force intersection oracle and
random generators for property suites."""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm

from ballq.curves import GraphCurve, ProductPoint, ProductTorus
from ballq.eisenstein import EisensteinNumber, eis
from ballq.lattices import Lattice, TorusPoint


def brute_force_intersection(c1: GraphCurve, c2: GraphCurve):
    """Denominator-bounded grid oracle for graph-graph intersections.

    Tests the congruence (slope1 - slope2)*z = offset2 - offset1 (mod the
    w-lattice) directly at every candidate z whose coordinates have the
    denominators a solution can possibly have.  Independent of the coset
    enumeration the production solver uses.
    """
    if c1.slope == c2.slope:
        return "identical" if c1.offset == c2.offset else "empty"
    lw = c1.ambient.lattice_w
    lz = c1.ambient.lattice_z
    m = c1.slope - c2.slope
    rhs = c2.offset.value - c1.offset.value

    # Index of m*(z-lattice) inside the w-lattice, straight from the
    # determinant of the rational coordinate matrix.
    a = lw.coordinates(m * lz.gen1)
    b = lw.coordinates(m * lz.gen2)
    det = a[0] * b[1] - a[1] * b[0]
    assert det.denominator == 1 and det != 0
    index = abs(int(det))

    s0, t0 = lz.coordinates(rhs / m)
    qs = lcm(s0.denominator, index)
    qt = lcm(t0.denominator, index)
    points = []
    for i in range(qs):
        for j in range(qt):
            z = lz.from_coordinates(Fraction(i, qs), Fraction(j, qt))
            if lw.contains(m * z - rhs) is not None:
                w = TorusPoint(c1.slope * z + c1.offset.value, lw)
                points.append(ProductPoint(w, TorusPoint(z, lz)))
    points.sort(key=lambda p: p.key)
    return points


def random_rational(rng: random.Random, span: int = 9, max_den: int = 9) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_eisenstein(rng: random.Random, span: int = 9, max_den: int = 9) -> EisensteinNumber:
    return eis(random_rational(rng, span, max_den), random_rational(rng, span, max_den))


def random_lattice(rng: random.Random) -> Lattice:
    while True:
        g1 = random_eisenstein(rng, span=4, max_den=3)
        g2 = random_eisenstein(rng, span=4, max_den=3)
        try:
            return Lattice(g1, g2)
        except ValueError:
            continue


def random_sublattice(rng: random.Random, lattice: Lattice) -> Lattice:
    """A random finite-index sublattice via an integer matrix of nonzero
    determinant."""
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if a * d - b * c != 0:
            return Lattice(a * lattice.gen1 + b * lattice.gen2,
                           c * lattice.gen1 + d * lattice.gen2)


def standard_torus(n: int) -> ProductTorus:
    from ballq.families import product_torus

    return product_torus(n)
