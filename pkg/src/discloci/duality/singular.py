"""Singular points of members and Milnor numbers at isolated singularities."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..ideals import Ideal, quotient_colength
from ..polyring import PolyRing, Polynomial
from .common import det, projective_dimension, projective_points

MILNOR_CUTOFF = 40


@dataclass(frozen=True)
class MilnorDatum:
    point: tuple
    mu: int | float
    exponent: int

    @property
    def isolated(self) -> bool:
        return self.mu != math.inf


@dataclass
class SingularLocus:
    points: list[tuple]
    complete: bool
    ideal: Ideal
    dimension: int

    @property
    def finite(self) -> bool:
        return self.dimension <= 0


def singular_points(D: Polynomial, hypersurface: Polynomial | None = None, seed: int = 0) -> SingularLocus:
    """Singular points of the hypersurface D = 0 in P^n, or of D|_X for X = V(hypersurface).

    A positive-dimensional locus is returned as an ideal with no point list.
    """
    ring = D.ring
    if hypersurface is None:
        gens = D.gradient()
    else:
        F = hypersurface
        gF, gD = F.gradient(), D.gradient()
        gens = [F, D] + [gF[i] * gD[j] - gF[j] * gD[i]
                         for i in range(len(gF)) for j in range(i + 1, len(gF))]
    I = Ideal(ring, gens)
    dim = projective_dimension(I)
    if dim > 0:
        return SingularLocus([], False, I.reduced(), dim)
    if dim < 0:
        return SingularLocus([], True, Ideal(ring, [ring.one()]), -1)
    pts, complete = projective_points(I, seed)
    return SingularLocus(pts, complete, I.reduced(), 0)


def milnor(f: Polynomial, point: tuple | None = None, cutoff: int = MILNOR_CUTOFF) -> MilnorDatum:
    """Milnor number of the affine polynomial f at `point` (the origin by default).

    μ is the colength of (∂f) + m^N for the first N where two consecutive values agree;
    a value still growing at the cutoff is reported as infinite.
    """
    ring = f.ring
    if point is not None:
        shift = {v: ring.var(v) + c for v, c in zip(ring.names, point) if c}
        f = f.subs(shift, ring) if shift else f
    else:
        point = (ring.field.zero,) * ring.nvars
    jac = [g for g in f.gradient() if g]
    prev = None
    for N in range(1, cutoff + 1):
        powers = _monomials_of_degree(ring, N)
        col = quotient_colength(Ideal(ring, jac + powers))
        if prev is not None and col == prev:
            return MilnorDatum(tuple(point), col, N - 1)
        prev = col
    return MilnorDatum(tuple(point), math.inf, cutoff)


def _monomials_of_degree(ring: PolyRing, d: int) -> list[Polynomial]:
    out = []

    def rec(i, left, acc):
        if i == ring.nvars - 1:
            out.append(ring.monomial(acc + [left]))
            return
        for k in range(left, -1, -1):
            rec(i + 1, left - k, acc + [k])

    if ring.nvars == 0:
        return []
    rec(0, d, [])
    return out


def dehomogenize_at(F: Polynomial, point: tuple) -> tuple[Polynomial, tuple]:
    """Affine chart through a projective point: returns (f, affine coordinates of the point)."""
    ring = F.ring
    k = next(i for i, c in enumerate(point) if c)
    Fd = ring.field
    inv = Fd.inv(point[k])
    scaled = tuple(Fd(c * inv) for c in point)
    v = ring.names[k]
    chart = ring.drop([v])
    f = F.subs({v: 1}, chart)
    return f, tuple(c for i, c in enumerate(scaled) if i != k)


def milnor_at(F: Polynomial, point: tuple, cutoff: int = MILNOR_CUTOFF) -> MilnorDatum:
    """Milnor number of the projective hypersurface F = 0 at a projective point."""
    f, p = dehomogenize_at(F, point)
    out = milnor(f, p, cutoff)
    return MilnorDatum(tuple(point), out.mu, out.exponent)


def hessian_nondegenerate(f: Polynomial, point: tuple | None = None) -> bool:
    ring = f.ring
    if point is None:
        point = (ring.field.zero,) * ring.nvars
    H = [[f.diff(a).diff(b) for b in ring.names] for a in ring.names]
    value = det(H, ring.zero())
    return bool(value.evaluate(point)) if value else False


__all__ = ["MilnorDatum", "SingularLocus", "singular_points", "milnor", "milnor_at",
           "dehomogenize_at", "hessian_nondegenerate", "MILNOR_CUTOFF"]
