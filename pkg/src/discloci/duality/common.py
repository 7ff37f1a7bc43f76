"""Shared elimination helpers: chart-wise projection, unions, radical reports, minors."""

from __future__ import annotations

import itertools
import random

from ..ideals import Ideal, dimension_degree, eliminate, intersect, quotient_colength
from ..polyring import GF, GREVLEX, PolyRing, Polynomial, PrimeField, lcm, squarefree_part
from ..univar import UOps, from_poly


def det(rows: list[list[Polynomial]], zero: Polynomial) -> Polynomial:
    n = len(rows)
    if n == 0:
        return zero + 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = zero
    for j in range(n):
        if rows[0][j]:
            sub = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = rows[0][j] * det(sub, zero)
            total = total + term if j % 2 == 0 else total - term
    return total


def minors(matrix: list[list[Polynomial]], r: int, zero: Polynomial) -> list[Polynomial]:
    nr, nc = len(matrix), len(matrix[0]) if matrix else 0
    out = []
    seen = set()
    for rows in itertools.combinations(range(nr), r):
        for cols in itertools.combinations(range(nc), r):
            d = det([[matrix[i][j] for j in cols] for i in rows], zero)
            if d and d not in seen:
                seen.add(d)
                out.append(d)
    return out


def union(parts: list[Ideal], ring: PolyRing) -> Ideal:
    """Ideal of the union of the zero sets (intersection of ideals, lcm when principal)."""
    live = [P for P in parts if not P.is_unit()]
    if not live:
        return Ideal(ring, [ring.one()])
    if any(P.is_zero() or not P.groebner().elements for P in live):
        return Ideal(ring, [])
    if all(P.is_principal() for P in live):
        g = ring.one()
        for P in live:
            g = lcm(g, P.groebner().elements[0])
        return Ideal(ring, [g])
    out = live[0]
    for P in live[1:]:
        out = intersect(out, P)
    return out.reduced()


def chart_project(I: Ideal, xnames, prepare=None) -> Ideal:
    """Image in the remaining coordinates of V(I) minus the x-irrelevant locus.

    For I homogeneous in the x block this is elimination after saturating by the
    irrelevant ideal: the union over charts x_k = 1 of the chart eliminations.
    `prepare(chart_ideal, k)` may rewrite each chart ideal (e.g. extra saturation).
    """
    ring = I.ring
    xnames = list(xnames)
    target = ring.drop(xnames)
    parts = []
    for k, v in enumerate(xnames):
        chart = ring.drop([v])
        J = I.subs({v: 1}, chart)
        if prepare is not None:
            J = prepare(J, k)
        if J.is_unit():
            parts.append(Ideal(target, [target.one()]))
            continue
        parts.append(eliminate(J, [x for x in xnames if x != v]).map(target))
    return union(parts, target)


def radical_report(I: Ideal) -> tuple[Ideal, bool]:
    """Best-effort radical: exact for unit, zero, principal and monomial ideals."""
    ring = I.ring
    if I.is_zero():
        return I, True
    G = I.groebner()
    if G.is_unit():
        return Ideal(ring, [ring.one()]), True
    if len(G.elements) == 1:
        return Ideal(ring, [squarefree_part(G.elements[0])]), True
    if all(len(g.terms) == 1 for g in G.elements):
        sup = set()
        for g in G.elements:
            e = next(iter(g.terms))
            sup.add(tuple(1 if x else 0 for x in e))
        return Ideal(ring, [ring.monomial(e) for e in sorted(sup)]).reduced(), True
    return I.reduced(), False


def projective_dimension(I: Ideal) -> int:
    """Dimension of the projective zero set; -1 when empty."""
    d, _ = dimension_degree(I)
    return max(d - 1, -1)


def normalize(f: Polynomial) -> Polynomial:
    return f.monic(GREVLEX) if f else f


def random_combination(polys, rng: random.Random):
    F = polys[0].ring.field
    acc = polys[0].ring.zero()
    for p in polys:
        c = F.random(rng, 50)
        while not c:
            c = F.random(rng, 50)
        acc = acc + p.scale(c)
    return acc


# ---------------------------------------------------------------- points

def affine_point_count(I: Ideal) -> int:
    """Number of distinct points of a zero-dimensional affine ideal over the algebraic closure."""
    ring = I.ring
    if I.is_unit():
        return 0
    if ring.nvars == 0:
        return 1
    extra = []
    for v in ring.names:
        E = eliminate(I, [u for u in ring.names if u != v])
        gens = E.groebner().elements
        if not gens:
            raise ValueError("ideal is not zero-dimensional")
        extra.append(squarefree_part(ring.convert(gens[0])))
    col = quotient_colength(I + extra)
    return col


def affine_rational_points(I: Ideal, seed: int = 0) -> list[tuple]:
    ring = I.ring
    if I.is_unit():
        return []
    if ring.nvars == 0:
        return [()]
    last = ring.names[-1]
    E = eliminate(I, list(ring.names[:-1]))
    gens = E.groebner().elements
    if not gens:
        raise ValueError("ideal is not zero-dimensional")
    U = UOps(ring.field)
    roots = U.roots(from_poly(gens[0], last), seed)
    sub = ring.drop([last])
    out = []
    for r in roots:
        J = I.subs({last: r}, sub)
        for pt in affine_rational_points(J, seed):
            out.append(pt + (r,))
    return sorted(out)


def projective_points(I: Ideal, seed: int = 0) -> tuple[list[tuple], bool]:
    """Points of a projectively finite homogeneous ideal over the base field.

    Returns (points normalized with first nonzero coordinate 1, complete) where
    `complete` says no further points exist over the algebraic closure.
    """
    ring = I.ring
    names = ring.names
    F = ring.field
    pts = []
    total = 0
    for k in range(len(names)):
        assign = {v: 0 for v in names[:k]}
        assign[names[k]] = 1
        chart = PolyRing(names[k + 1:], F)
        J = I.subs(assign, chart)
        if J.is_unit():
            continue
        if quotient_colength(J) == float("inf"):
            raise ValueError("positive-dimensional zero set")
        total += affine_point_count(J)
        for p in affine_rational_points(J, seed):
            pts.append((F.zero,) * k + (F.one,) + tuple(p))
    return pts, len(pts) == total


def certify_irreducible(f: Polynomial, trials: int = 60, seed: int = 0,
                        primes=(32003, 65537)) -> bool:
    """True when some random line restriction of f is irreducible of full degree over GF(p)."""
    d = f.degree()
    if d <= 1:
        return True
    rng = random.Random(seed)
    ring = f.ring
    for p in primes:
        F = GF(p) if not isinstance(ring.field, PrimeField) else ring.field
        try:
            g = ring.with_field(F).convert(f) if F != ring.field else f
        except ZeroDivisionError:
            continue
        U = UOps(F)
        for _ in range(trials):
            a = [rng.randrange(F.p) for _ in ring.names]
            b = [rng.randrange(F.p) for _ in ring.names]
            uni = line_restriction(g, a, b)
            if len(uni) - 1 != d:
                continue
            if len(U.squarefree(uni)) != len(uni):
                continue
            if U.degree_pattern(uni) == {d: 1}:
                return True
        if isinstance(ring.field, PrimeField):
            break
    return False


def line_restriction(f: Polynomial, a, b) -> list:
    """Coefficients of t ↦ f(a + t·b)."""
    F = f.ring.field
    U = UOps(F)
    lines = [U.norm([x, y]) for x, y in zip(a, b)]
    total = []
    for e, c in f.terms.items():
        term = [c]
        for L, k in zip(lines, e):
            for _ in range(k):
                term = U.mul(term, L)
        total = U.add(total, term)
    return total


def fmt_point(p, field) -> str:
    return "(" + ":".join(field.fmt(c) for c in p) + ")"
