"""Incidence correspondence, discriminant loci, jumping sets and their strata."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..ideals import Ideal, dimension_degree, radical_member, saturate, saturate_irrelevant
from ..polyring import GF, Polynomial, PrimeField, divexact
from .common import (certify_irreducible, chart_project, minors, normalize, projective_dimension,
                     projective_points, radical_report, random_combination)
from .linsys import LinearSystem


class UnsupportedSource(ValueError):
    pass


class FinitenessViolation(ValueError):
    """The deepest jumping set should be finite; it was not."""


def _incidence_gens(V: LinearSystem) -> list[Polynomial]:
    s = V.generic_member()
    R = s.ring
    if V.hypersurface is None:
        return [s.diff(v) for v in V.source_names]
    F = R.convert(V.hypersurface)
    gF = [F.diff(v) for v in V.source_names]
    gs = [s.diff(v) for v in V.source_names]
    out = [F, s]
    for i in range(len(gF)):
        for j in range(i + 1, len(gF)):
            m = gF[i] * gs[j] - gF[j] * gs[i]
            if m:
                out.append(m)
    return out


def incidence_ideal(V: LinearSystem) -> Ideal:
    """{(x, λ): the member λ is singular at x}, saturated by the irrelevant ideal of the source."""
    V.check_base_point_free()
    I = Ideal(V.joint_ring(), _incidence_gens(V))
    return saturate_irrelevant(I, V.source_names).reduced()


def _discriminant_ideal(V: LinearSystem) -> Ideal:
    if "disc" not in V._cache:
        I = Ideal(V.joint_ring(), _incidence_gens(V))
        D = chart_project(I, V.source_names).map(V.dual_ring())
        V._cache["disc"] = D
    return V._cache["disc"]


# ---------------------------------------------------------------- jumping sets

@dataclass
class JumpingSetReport:
    ideals: dict[int, Ideal]
    empty: dict[int, bool]
    dims: dict[int, int]
    stratum_dims: dict[int, int]
    certified: dict[int, bool]

    def format(self) -> list[str]:
        out = []
        for i in sorted(self.ideals):
            gens = ", ".join(map(str, self.ideals[i].gens)) or "0"
            out.append(f"J{i}: dim {self.dims[i]}; stratum dim {self.stratum_dims[i]}; ideal ({gens})")
        return out


def _jacobian(V: LinearSystem):
    return [[s.diff(v) for v in V.source_names] for s in V.sections]


def jumping_sets(V: LinearSystem) -> JumpingSetReport:
    """J_i = {rank dφ_V ≤ n − i}: vanishing of the (n−i+2)-minors of the homogeneous Jacobian."""
    if V.hypersurface is not None:
        raise UnsupportedSource("jumping sets are computed for projective-space sources")
    if "jump" in V._cache:
        return V._cache["jump"]
    R = V.ring
    n = V.n
    jac = _jacobian(V)
    ideals, certified = {}, {}
    for i in range(n + 2):
        if i == 0:
            ideals[0], certified[0] = Ideal(R, []), True
            continue
        if i == n + 1:
            ideals[i], certified[i] = Ideal(R, [R.one()]), True
            continue
        I = Ideal(R, minors(jac, n - i + 2, R.zero()))
        I = saturate_irrelevant(I, R.names)
        ideals[i], certified[i] = radical_report(I)
    dims = {i: projective_dimension(I) if not I.is_zero() else n for i, I in ideals.items()}
    stratum = {}
    for i in range(n + 2):
        if dims[i] < 0:
            stratum[i] = -1
        elif i == n + 1 or ideals[i + 1].is_unit():
            stratum[i] = dims[i]
        else:
            stratum[i] = _difference_dim(ideals[i], ideals[i + 1], n)
    rep = JumpingSetReport(ideals, {i: d < 0 for i, d in dims.items()}, dims, stratum, certified)
    V._cache["jump"] = rep
    return rep


def _difference_dim(I: Ideal, J: Ideal, n: int) -> int:
    """Dimension of V(I) minus V(J), projectively."""
    parts = []
    for g in J.groebner().elements:
        S = saturate(I, g)
        parts.append(S)
    dims = [projective_dimension(S) if not S.is_zero() else n for S in parts]
    return max(dims)


# ---------------------------------------------------------------- hyperplanes

def hyperplane_components(V: LinearSystem, J: JumpingSetReport | None = None,
                          seed: int = 0) -> tuple[list[Polynomial], bool]:
    """Dual linear forms |V − x| for x in the deepest jumping set, plus a completeness flag.

    The flag is False when J_n has points not defined over the base field.
    """
    J = J or jumping_sets(V)
    n = V.n
    Jn = J.ideals[n]
    if J.empty[n]:
        return [], True
    if J.dims[n] > 0:
        raise FinitenessViolation(f"J{n} has dimension {J.dims[n]}; it should be finite")
    pts, complete = projective_points(Jn, seed)
    D = V.dual_ring()
    forms = []
    for p in pts:
        vals = [s.evaluate(p) for s in V.weighted_sections()]
        form = sum((D.var(l).scale(c) for l, c in zip(V.dual_names, vals)), D.zero())
        form = normalize(form)
        if form not in forms:
            forms.append(form)
    forms.sort(key=str)
    return forms, complete


# ---------------------------------------------------------------- strata

def strata(V: LinearSystem, J: JumpingSetReport | None = None, seed: int = 0) -> dict[int, Ideal]:
    """D_i: members singular at some point of X_i = J_i minus J_{i+1}, radical-reported."""
    J = J or jumping_sets(V)
    if "strata" in V._cache:
        return V._cache["strata"]
    R = V.joint_ring()
    base = _incidence_gens(V)
    rng = random.Random(seed)
    out = {}
    n = V.n
    for i in range(n + 1):
        if J.empty[i]:
            out[i] = Ideal(V.dual_ring(), [V.dual_ring().one()])
            continue
        Ji = [R.convert(g) for g in J.ideals[i].gens]
        nxt = [R.convert(g) for g in J.ideals[i + 1].gens]
        I = Ideal(R, base + Ji)

        def prepare(chart_ideal, k, nxt=nxt):
            v = V.source_names[k]
            ring = chart_ideal.ring
            hs = Ideal(ring, [g.subs({v: 1}, ring) for g in nxt])
            if hs.is_unit():
                return chart_ideal
            G = hs.groebner().elements
            if not G:
                return Ideal(ring, [ring.one()])
            h = G[0] if len(G) == 1 else random_combination(G, rng)
            return saturate(chart_ideal, h)

        D = chart_project(I, V.source_names, prepare).map(V.dual_ring())
        rad, _ = radical_report(D)
        out[i] = _tidy(rad)
    V._cache["strata"] = out
    return out


def _tidy(I: Ideal) -> Ideal:
    if not I.is_zero() and projective_dimension(I) < 0:
        return Ideal(I.ring, [I.ring.one()])
    G = I.groebner().elements
    if len(G) == 1:
        return Ideal(I.ring, [normalize(G[0])])
    return I.reduced()


def strata_cover(D: Ideal, parts: dict[int, Ideal]) -> bool:
    """Each D_i lies in D, and D lies in the union of the D_i (radical membership)."""
    if D.is_unit():
        return all(P.is_unit() for P in parts.values())
    for P in parts.values():
        if P.is_unit():
            continue
        if not all(radical_member(g, P) for g in D.gens):
            return False
    live = [P.groebner().elements for P in parts.values() if not P.is_unit()]
    if not live:
        return False
    prods = [D.ring.one()]
    for gens in live:
        prods = [a * b for a in prods for b in gens]
    return all(radical_member(p, D) for p in prods)


# ---------------------------------------------------------------- report

@dataclass
class DiscriminantReport:
    ideal: Ideal
    equation: Polynomial | None
    dimension: int
    codegree: int
    defect: int
    certified_radical: bool
    hyperplanes: list[Polynomial] = field(default_factory=list)
    hyperplanes_complete: bool = True
    residual: Polynomial | None = None
    residual_irreducible: bool | None = None
    strata: dict[int, Ideal] = field(default_factory=dict)
    jumping: JumpingSetReport | None = None
    codegree_check: int | None = None

    @property
    def empty(self) -> bool:
        return self.ideal.is_unit()

    def lines(self) -> list[str]:
        out = []
        if self.empty:
            out.append("discriminant: empty")
        elif self.equation is not None:
            out.append(f"discriminant: {self.equation}")
        else:
            out.append("discriminant ideal: (" + ", ".join(map(str, self.ideal.gens)) + ")")
            if not self.certified_radical:
                out.append("note: radical not certified for this non-principal ideal")
        out.append(f"dimension: {self.dimension}")
        out.append(f"codegree: {self.codegree}")
        out.append(f"defect: {self.defect}")
        if self.jumping is not None:
            out.append(f"hyperplanes: {len(self.hyperplanes)}")
            for h in self.hyperplanes:
                out.append(f"  hyperplane: {h}")
            if not self.hyperplanes_complete:
                out.append("  note: some hyperplane components are not defined over the base field")
        if self.residual is not None:
            tag = {True: "irreducible", False: "not certified irreducible", None: "unchecked"}
            out.append(f"residual: {self.residual} (degree {self.residual.degree()}, "
                       f"{tag[self.residual_irreducible]})")
        for i, P in sorted(self.strata.items()):
            body = "empty" if P.is_unit() else "(" + ", ".join(map(str, P.gens)) + ")"
            out.append(f"D{i}: {body}")
        return out

    def machine(self) -> dict[str, str]:
        kv = {
            "empty": str(self.empty).lower(),
            "equation": str(self.equation) if self.equation is not None else "",
            "dimension": str(self.dimension),
            "codegree": str(self.codegree),
            "defect": str(self.defect),
            "radical_certified": str(self.certified_radical).lower(),
        }
        if self.jumping is not None:
            kv["hyperplanes"] = str(len(self.hyperplanes))
            kv["hyperplane_forms"] = "; ".join(map(str, self.hyperplanes))
        if self.residual is not None:
            kv["residual"] = str(self.residual)
            kv["residual_degree"] = str(self.residual.degree())
        for i, P in sorted(self.strata.items()):
            kv[f"D{i}"] = "empty" if P.is_unit() else "; ".join(map(str, P.gens))
        return kv


def _degree_over(V: LinearSystem, p: int) -> int:
    W = V.over(GF(p))
    D = _discriminant_ideal(W)
    if D.is_unit():
        return 0
    return dimension_degree(radical_report(D)[0])[1]


def discriminant(V: LinearSystem, with_strata: bool = True, seed: int = 0) -> DiscriminantReport:
    """Discriminant locus of |V|: the members with a singular point, with reduced structure."""
    V.check_base_point_free()
    D = _discriminant_ideal(V)
    rad, certified = radical_report(D)
    rad = _tidy(rad)
    certified = certified or rad.is_unit()
    N = V.N
    if rad.is_unit():
        dim, codeg = -1, 0
    else:
        dim = projective_dimension(rad)
        codeg = dimension_degree(rad)[1]
    eq = None
    if rad.gens and len(rad.gens) == 1 and not rad.is_unit():
        eq = rad.gens[0]
        codeg = eq.degree()
    check = None
    if eq is None and not rad.is_unit():
        # the non-principal degree is read over two primes and compared
        codeg = _degree_over(V, 32003) if not isinstance(V.field, PrimeField) else codeg
        check = _degree_over(V, 65537)
    rep = DiscriminantReport(rad, eq, dim, codeg, N - 1 - dim, certified, codegree_check=check)
    if V.hypersurface is None and with_strata:
        J = jumping_sets(V)
        rep.jumping = J
        rep.hyperplanes, rep.hyperplanes_complete = hyperplane_components(V, J, seed)
        if eq is not None and rep.hyperplanes:
            rest = eq
            for h in rep.hyperplanes:
                rest = divexact(rest, h)
            if rest.degree() > 0:
                rep.residual = normalize(rest)
                rep.residual_irreducible = certify_irreducible(rest, seed=seed)
        rep.strata = strata(V, J, seed)
    return rep


def codegree(V: LinearSystem) -> int:
    return discriminant(V, with_strata=False).codegree


__all__ = [
    "incidence_ideal", "discriminant", "DiscriminantReport", "jumping_sets", "JumpingSetReport",
    "hyperplane_components", "strata", "strata_cover", "codegree", "UnsupportedSource",
    "FinitenessViolation",
]
