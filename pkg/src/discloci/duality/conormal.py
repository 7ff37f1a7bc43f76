"""Conormal varieties, dual varieties and the biduality check."""

from __future__ import annotations

import itertools

from ..ideals import Ideal, dimension_degree, eliminate, fresh_name, saturate, saturate_irrelevant
from ..polyring import PolyRing, Polynomial, squarefree_part
from .common import certify_irreducible, det, normalize, radical_report


class DualityError(ValueError):
    pass


def _dual_names(ring: PolyRing, dual_names=None) -> tuple[str, ...]:
    if dual_names is not None:
        names = tuple(dual_names)
        if len(names) != ring.nvars:
            raise DualityError("one dual coordinate per source coordinate is required")
        if set(names) & set(ring.names):
            raise DualityError("dual coordinate names clash with source variables")
        return names
    stem = "l"
    while any(v.startswith(stem) for v in ring.names):
        stem += "l"
    return tuple(f"{stem}{i}" for i in range(ring.nvars))


def _setup(X: Ideal):
    """Codimension, generators, and a maximal Jacobian minor that is nonzero on X."""
    ring = X.ring
    if X.is_unit():
        raise DualityError("the unit ideal defines the empty variety")
    G = X.groebner()
    gens = list(G.elements)
    dim, _ = dimension_degree(X)
    c = ring.nvars - dim
    if c == 0:
        raise DualityError("X is the whole projective space; its dual is empty")
    jac = [[g.diff(v) for v in ring.names] for g in gens]
    pick = None
    for rows in itertools.combinations(range(len(gens)), c):
        for cols in itertools.combinations(range(ring.nvars), c):
            m = det([[jac[i][j] for j in cols] for i in rows], ring.zero())
            if m and G.normal_form(m):
                pick = (rows, cols, m)
                break
        if pick:
            break
    if pick is None:
        raise DualityError("X is singular everywhere (non-reduced input?)")
    return gens, c, jac, pick


def _bordered(jac, rows, cols, lam, zero) -> list[Polynomial]:
    """(c+1)-minors of the Jacobian with the row λ appended, on columns C ∪ {j}."""
    out = []
    nc = len(jac[0])
    for j in range(nc):
        if j in cols:
            continue
        cs = sorted(cols + (j,))
        mat = [[jac[i][k] for k in cs] for i in rows] + [[lam[k] for k in cs]]
        d = det(mat, zero)
        if d:
            out.append(d)
    return out


def conormal_ideal(X: Ideal, dual_names=None) -> Ideal:
    """Bihomogeneous ideal of {(x, H): x smooth on X, T_x X ⊂ H} in the joint ring (x, λ)."""
    ring = X.ring
    names = _dual_names(ring, dual_names)
    gens, c, jac, (rows, cols, g) = _setup(X)
    big = ring.extend(back=names)
    lam = [big.var(v) for v in names]
    bjac = [[big.convert(e) for e in row] for row in jac]
    eqs = [big.convert(f) for f in gens]
    eqs.append(sum((big.var(x) * l for x, l in zip(ring.names, lam)), big.zero()))
    eqs += _bordered(bjac, rows, cols, lam, big.zero())
    I = saturate(Ideal(big, eqs), big.convert(g))
    return saturate_irrelevant(I, ring.names).reduced()


def dual_variety(X: Ideal, dual_names=None, weights=None) -> Ideal:
    """Radical-reported ideal of the dual variety of an irreducible X, in dual coordinates.

    `weights` rescales the pairing: the returned ideal is in coordinates λ'_j with
    λ_j = w_j·λ'_j, which is how the symmetric (trace) pairing is expressed.
    """
    ring = X.ring
    names = _dual_names(ring, dual_names)
    gens, c, jac, (rows, cols, g) = _setup(X)
    G = X.groebner()
    # an affine chart x_k = 1 that meets X
    k = next(i for i, v in enumerate(ring.names) if G.normal_form(ring.var(v)))
    xk = ring.names[k]
    w = fresh_name(PolyRing(ring.names + names, ring.field))
    xs = [v for v in ring.names if v != xk]
    work = PolyRing([w] + xs + list(names), ring.field)
    assign = {xk: 1}
    lam = [work.var(v) for v in names]
    wjac = [[e.subs(assign, work) for e in row] for row in jac]
    eqs = [f.subs(assign, work) for f in gens]
    eqs += _bordered(wjac, rows, cols, lam, work.zero())
    eqs.append(work.one() - work.var(w) * g.subs(assign, work))
    D = eliminate(Ideal(work, eqs), 1 + len(xs))
    if weights is not None:
        dring = D.ring
        sub = {v: dring.var(v).scale(dring.field(wt)) for v, wt in zip(names, weights)}
        D = Ideal(dring, [p.subs(sub, dring) for p in D.gens])
    R, _ = radical_report(D)
    if R.is_principal() and R.gens:
        return Ideal(R.ring, [normalize(R.groebner().elements[0])])
    return R.reduced()


def bidual_check(X: Ideal) -> bool:
    """dual(dual(X)) == X for an irreducible plane curve X, compared as radical ideals."""
    ring = X.ring
    if ring.nvars != 3:
        raise DualityError("biduality is checked for plane curves")
    G = X.groebner()
    if len(G.elements) != 1:
        raise DualityError("X must be a plane curve given by one equation")
    F = G.elements[0]
    if F.degree() < 2:
        raise DualityError("X must have degree at least 2")
    sq = normalize(squarefree_part(F))
    if sq.degree() != F.degree() or not certify_irreducible(F):
        raise DualityError(f"{F} is reducible or could not be certified irreducible")
    names = _dual_names(ring)
    D = dual_variety(Ideal(ring, [F]), names)
    DD = dual_variety(D, ring.names)
    return DD == Ideal(ring, [sq])
