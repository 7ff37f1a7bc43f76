"""Branch data of maps from curves to P^1: Wronskians of binary pencils, double covers, projections."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..ideals import Ideal, eliminate
from ..polyring import PolyRing, Polynomial, gcd, squarefree_part
from ..univar import UOps, from_poly
from .common import det, fmt_point, line_restriction, normalize, projective_points
from .discriminant import discriminant
from .linsys import LinearSystem


class CurveError(ValueError):
    pass


@dataclass
class BranchData:
    """Ramification points with indices, and the branch values they map to."""

    ramification: list[tuple[tuple, int]]
    values: list[tuple]
    codegree: int
    profile: dict = field(default_factory=dict)
    unresolved: int = 0
    wronskian: Polynomial | None = None

    def lines(self, field=None) -> list[str]:
        fmt = (lambda v: fmt_point(v, field)) if field else (lambda v: f"({':'.join(map(str, v))})")
        out = [f"codegree: {self.codegree}", f"branch values: {len(self.values) + self.unresolved}"]
        for v in self.values:
            idx = " ".join(str(e) for e in self.profile.get(v, []))
            out.append(f"  {fmt(v)} ramification {idx}")
        if self.unresolved:
            out.append(f"  {self.unresolved} values over an extension of the base field")
        return out

    def machine(self) -> dict[str, str]:
        return {"codegree": str(self.codegree),
                "branch_values": str(len(self.values) + self.unresolved),
                "ramification_degree": str(sum(e - 1 for _, e in self.ramification))}


def _proj_normalize(p, F):
    k = next(i for i, c in enumerate(p) if c)
    inv = F.inv(p[k])
    return tuple(F(c * inv) for c in p)


def wronskian_branch(f: Polynomial, g: Polynomial, seed: int = 0) -> BranchData:
    """Branch data of (f : g): P^1 → P^1 for coprime binary forms of equal degree."""
    ring = f.ring
    if ring.nvars != 2 or g.ring != ring:
        raise CurveError("f and g must be binary forms in the same two variables")
    if not (f.is_homogeneous() and g.is_homogeneous()) or f.degree() != g.degree() or f.degree() < 1:
        raise CurveError("f and g must be forms of the same positive degree")
    F = ring.field
    if not gcd(f, g).is_constant():
        if normalize(f) == normalize(g):
            raise CurveError("f and g are proportional")
        raise CurveError("f and g have a common zero (base point)")
    s, t = ring.names
    W = f.diff(s) * g.diff(t) - f.diff(t) * g.diff(s)
    U = UOps(F)
    ram = []
    # the point (1:0) is where t vanishes
    k = 0
    while W.degree(t) >= 0 and all(e[1] >= k + 1 for e in W.terms):
        k += 1
    if k:
        ram.append(((F.one, F.zero), k + 1))
    aff = from_poly(W.subs({t: 1}, PolyRing([s], F)), s)
    roots = U.roots(aff, seed)
    for r in roots:
        ram.append(((r, F.one), U.multiplicity(aff, r) + 1))
    resolved = k + sum(e - 1 for _, e in ram[1 if k else 0:])
    missing_deg = W.degree() - resolved
    values, profile = [], {}
    for p, e in ram:
        v = _proj_normalize((f.evaluate(p), g.evaluate(p)), F)
        if v not in profile:
            values.append(v)
            profile[v] = []
        profile[v].append(e)
    for v in profile:
        profile[v].sort(reverse=True)
    V = LinearSystem(ring, [f, g])
    codeg = discriminant(V, with_strata=False).codegree
    unresolved = codeg - len(values) if missing_deg else 0
    if not missing_deg and codeg != len(values):
        raise CurveError(f"branch count {len(values)} disagrees with the discriminant degree {codeg}")
    return BranchData(ram, sorted(values), codeg, profile, unresolved, W)


def double_cover_branch(F: Polynomial, seed: int = 0) -> BranchData:
    """Branch data of (x, y) ↦ x on the affine curve F = y² − h(x), completed at infinity."""
    ring = F.ring
    if ring.nvars != 2:
        raise CurveError("expected a curve in two affine variables x, y")
    x, y = ring.names
    h = ring.var(y) ** 2 - F
    if h.degree(y) > 0:
        raise CurveError("expected the form y^2 - h(x)")
    Fd = ring.field
    hx = PolyRing([x], Fd).convert(h)
    if hx.degree() < 1:
        raise CurveError("h must be nonconstant")
    if squarefree_part(hx).degree() != hx.degree():
        raise CurveError("h must be squarefree for a smooth model")
    crit = eliminate(Ideal(ring, [F, F.diff(y)]), [y])
    gen = crit.groebner().elements[0]
    U = UOps(Fd)
    uni = from_poly(gen, x)
    roots = U.roots(uni, seed)
    ram = [((r, Fd.zero), 2) for r in roots]
    finite = len(U.squarefree(uni)) - 1
    values = [(r, Fd.one) for r in roots]
    count = finite
    if hx.degree() % 2:
        values.append((Fd.one, Fd.zero))
        ram.append(((Fd.one, Fd.zero), 2))
        count += 1
    profile = {v: [2] for v in values}
    return BranchData(ram, sorted(values), count, profile, finite - len(roots))


@dataclass
class ProjectionData:
    branch: BranchData
    points: list[tuple]
    flexes: bool
    tangents_through_center: bool

    def lines(self, field=None) -> list[str]:
        out = self.branch.lines(field)
        fmt = (lambda v: fmt_point(v, field)) if field else (lambda v: f"({':'.join(map(str, v))})")
        out.append("ramification points: " + ", ".join(fmt(p) for p in self.points))
        out.append(f"all flexes: {str(self.flexes).lower()}")
        out.append(f"tangents concurrent at the center: {str(self.tangents_through_center).lower()}")
        return out


def projection_branch(C: Polynomial, center: tuple, seed: int = 0) -> ProjectionData:
    """Project the smooth plane curve C = 0 from a point off the curve onto P^1."""
    ring = C.ring
    F = ring.field
    if ring.nvars != 3:
        raise CurveError("expected a plane curve")
    center = tuple(F(c) for c in center)
    if not C.evaluate(center):
        raise CurveError("the center lies on the curve")
    # two linear forms vanishing at the center give the projection
    forms = _forms_through(ring, center)
    V = LinearSystem(ring, forms, C)
    rep = discriminant(V, with_strata=False)
    grad = C.gradient()
    polar = sum((g.scale(c) for g, c in zip(grad, center)), ring.zero())
    pts, complete = projective_points(Ideal(ring, [C, polar]), seed)
    H = det([[a.diff(b) for b in ring.names] for a in grad], ring.zero())
    flexes = complete and all(not H.evaluate(p) for p in pts)
    through = all(not sum((g.evaluate(p) * c for g, c in zip(grad, center)), F.zero) for p in pts)
    vals, profile, ram = [], {}, []
    for p in pts:
        v = _proj_normalize(tuple(L.evaluate(p) for L in forms), F)
        if v not in profile:
            vals.append(v)
            profile[v] = []
        e = _contact(C, center, p)
        profile[v].append(e)
        ram.append((p, e))
    branch = BranchData(ram, sorted(vals), rep.codegree, profile, rep.codegree - len(vals))
    return ProjectionData(branch, pts, flexes, through)


def _forms_through(ring: PolyRing, c: tuple) -> list[Polynomial]:
    k = next(i for i, x in enumerate(c) if x)
    out = []
    for j in range(ring.nvars):
        if j == k:
            continue
        # c_k x_j − c_j x_k vanishes at c
        out.append(ring.var(j).scale(c[k]) - ring.var(k).scale(c[j]))
    return out


def _contact(C: Polynomial, center: tuple, p: tuple) -> int:
    """Ramification index at p: order of contact of the line through center and p."""
    uni = line_restriction(C, p, center)
    k = 0
    while k < len(uni) and not uni[k]:
        k += 1
    return k


def osculating_pencil(r: int, ring: PolyRing) -> tuple[Polynomial, Polynomial]:
    s, t = ring.gens()
    return s ** r, t ** r


def rnc_projection_r3(ring: PolyRing, seed: int = 0, tries: int = 20) -> tuple[Polynomial, Polynomial, BranchData]:
    """Degree-3 pencil from projecting a twisted cubic from a general line in an osculating plane.

    In coordinates where the total ramification sits at (1:0) and the index-2 point at (0:1),
    the pencil is ⟨t³, s²(b·s − a·t)⟩ with a, b general; it ramifies once more, simply.
    """
    rng = random.Random(seed)
    F = ring.field
    s, t = ring.gens()
    for _ in range(tries):
        a, b = F.random(rng, 30), F.random(rng, 30)
        if not a or not b:
            continue
        f, g = t ** 3, s ** 2 * (s.scale(b) - t.scale(a))
        data = wronskian_branch(f, g, seed)
        if sorted(e for _, e in data.ramification) == [2, 2, 3] and data.codegree == 3:
            return f, g, data
    raise CurveError("no general projection center found")


__all__ = ["BranchData", "wronskian_branch", "double_cover_branch", "projection_branch",
           "ProjectionData", "osculating_pencil", "rnc_projection_r3", "CurveError"]
