"""Singular members of a general pencil and their Milnor numbers against c_n(J_1(L)) on P^n."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..ideals import Ideal, fresh_name, quotient_colength
from ..numerics import cn_jet_pn
from ..polyring import PolyRing
from ..univar import UOps, to_poly
from .common import fmt_point, line_restriction
from .discriminant import UnsupportedSource, discriminant
from .linsys import LinearSystem
from .singular import MILNOR_CUTOFF, milnor_at, singular_points


class PencilError(RuntimeError):
    pass


@dataclass
class MemberRecord:
    t: object
    points: list[tuple]
    milnor: list[int]
    local_length: int

    @property
    def milnor_sum(self) -> int:
        return sum(self.milnor)


@dataclass
class PencilReport:
    seed: int
    attempts: int
    members: list[MemberRecord]
    cluster_degree: int
    cluster_length: int
    total: int
    cn: int
    rejected: list[str] = field(default_factory=list)

    @property
    def singular_members(self) -> int:
        return len(self.members) + self.cluster_degree

    @property
    def milnor_total(self) -> int:
        return sum(m.milnor_sum for m in self.members) + self.cluster_length

    @property
    def holds(self) -> bool:
        local_ok = all(m.milnor_sum == m.local_length for m in self.members if m.milnor)
        return local_ok and self.total == self.cn and self.milnor_total == self.cn

    def lines(self, field=None) -> list[str]:
        fmt = (lambda v: fmt_point(v, field)) if field else (lambda v: f"({':'.join(map(str, v))})")
        fc = field.fmt if field else str
        out = [f"pencil seed: {self.seed} (attempt {self.attempts})",
               f"singular members: {self.singular_members}"]
        for m in self.members:
            pts = ", ".join(f"{fmt(p)} mu={mu}"
                            for p, mu in zip(m.points, m.milnor)) or "points not rational"
            out.append(f"  t={fc(m.t)}: length {m.local_length}; {pts}")
        if self.cluster_degree:
            out.append(f"  {self.cluster_degree} members over an extension: length {self.cluster_length}")
        out += [f"milnor sum: {self.milnor_total}", f"c_n: {self.cn}",
                f"identity holds: {str(self.holds).lower()}"]
        return out

    def machine(self) -> dict[str, str]:
        return {"singular_members": str(self.singular_members), "milnor_sum": str(self.milnor_total),
                "cn": str(self.cn), "holds": str(self.holds).lower(), "attempt": str(self.attempts)}


def _random_change(V: LinearSystem, rng: random.Random) -> LinearSystem:
    R = V.ring
    F = R.field
    n1 = R.nvars
    while True:
        A = [[F.random(rng, 9) for _ in range(n1)] for _ in range(n1)]
        if _det(A, F):
            break
    sub = {v: sum((R.var(w).scale(A[i][j]) for j, w in enumerate(R.names)), R.zero())
           for i, v in enumerate(R.names)}
    secs = [s.subs(sub, R) for s in V.sections]
    return LinearSystem(R, secs, None, V.dual_names, V.weights, V.pairing, V.name)


def _det(A, F):
    A = [row[:] for row in A]
    n = len(A)
    d = F(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return F(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d = F(d * A[c][c])
        inv = F.inv(A[c][c])
        for r in range(c + 1, n):
            f = A[r][c] * inv
            A[r] = [F(a - f * b) for a, b in zip(A[r], A[c])]
    return d


def _stable_length(Z: Ideal, h, cutoff: int = MILNOR_CUTOFF) -> int:
    prev = None
    for K in range(1, cutoff + 1):
        col = quotient_colength(Z + [h ** K])
        if col == prev:
            return col
        prev = col
    raise PencilError("local length did not stabilize")


def pencil_verify(V: LinearSystem, seed: int = 0, max_draws: int = 10) -> PencilReport:
    """Draw a general pencil and check that its singular members account for c_n(J_1(L))."""
    if V.hypersurface is not None:
        raise UnsupportedSource("pencil verification needs a projective-space source")
    rep = discriminant(V, with_strata=False)
    cn = cn_jet_pn(V.n, V.degree)
    if rep.empty:
        return PencilReport(seed, 1, [], 0, 0, 0, cn)
    if rep.equation is None or rep.dimension != V.N - 1:
        raise PencilError("the discriminant must be a hypersurface")
    D = rep.equation
    F = V.field
    U = UOps(F)
    rng = random.Random(seed)
    reasons = []
    for attempt in range(1, max_draws + 1):
        W = _random_change(V, rng)
        alpha = [F.random(rng, 30) for _ in range(V.N + 1)]
        beta = [F.random(rng, 30) for _ in range(V.N + 1)]
        g = line_restriction(D, alpha, beta)
        if len(g) - 1 != rep.codegree:
            reasons.append(f"attempt {attempt}: pencil meets the discriminant at infinity")
            continue
        if len(U.squarefree(g)) != len(g):
            reasons.append(f"attempt {attempt}: repeated singular member")
            continue
        out = _analyse(W, alpha, beta, g, U, seed)
        if isinstance(out, str):
            reasons.append(f"attempt {attempt}: {out}")
            continue
        members, cdeg, clen, total = out
        return PencilReport(seed, attempt, members, cdeg, clen, total, cn, reasons)
    raise PencilError("no general pencil found; " + "; ".join(reasons))


def _analyse(W: LinearSystem, alpha, beta, g, U: UOps, seed: int):
    R = W.ring
    a = W.member(alpha)
    b = W.member(beta)
    x0 = R.names[0]
    t = fresh_name(R, "t")
    Zr = PolyRing(R.names[1:] + (t,), R.field)
    big = PolyRing(R.names + (t,), R.field)
    s = big.convert(a) + big.var(t) * big.convert(b)
    grads = [s.diff(v) for v in R.names]
    # no singular point of any member may sit on x0 = 0
    rest = PolyRing(R.names[1:] + (t,), R.field)
    at_inf = Ideal(rest, [h.subs({x0: 0}, rest) for h in grads])
    for v in R.names[1:]:
        chart = rest.drop([v])
        if not at_inf.subs({v: 1}, chart).is_unit():
            return "singular point on the chart boundary"
    Z = Ideal(Zr, [h.subs({x0: 1}, Zr) for h in grads])
    total = quotient_colength(Z)
    if total == float("inf"):
        return "a member has a positive-dimensional singular locus"
    roots = U.roots(g, seed)
    T = Zr.var(t)
    members = []
    rest_poly = U.monic(g)
    for r in roots:
        rest_poly = U.divmod(rest_poly, U.norm([-r, 1]))[0]
        length = _stable_length(Z, T - r)
        member = a + b.scale(r)
        loc = singular_points(member, seed=seed)
        if not loc.finite:
            return "a member has a positive-dimensional singular locus"
        pts, mus = [], []
        if loc.complete:
            pts = loc.points
            mus = [milnor_at(member, p).mu for p in pts]
            if any(m == float("inf") for m in mus):
                return "non-isolated singularity"
        members.append(MemberRecord(r, pts, mus, length))
    cdeg = len(rest_poly) - 1
    clen = 0
    if cdeg > 0:
        clen = _stable_length(Z, to_poly(rest_poly, Zr, t))
    if sum(m.local_length for m in members) + clen != total:
        return "singular points away from the discriminant roots"
    return members, cdeg, clen, total


__all__ = ["pencil_verify", "PencilReport", "MemberRecord", "PencilError"]
