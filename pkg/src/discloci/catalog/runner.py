"""Evaluate fixtures against the duality and numerics modules and report exact diffs."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import cached_property

from .. import numerics as nm
from ..duality import (bidual_check, discriminant, double_cover_branch, dual_variety, image_ideal,
                       milnor_at, parse_linear_system, pencil_verify, projection_branch,
                       rnc_projection_r3, singular_points, strata_cover, wronskian_branch)
from ..duality.common import normalize, projective_dimension, projective_points
from ..ideals import Ideal, dimension_degree, radical_member
from ..polyring import GF, QQ, Field, PolyRing, Polynomial, parse_field
from .model import Fixture, FixtureError, load_all, load_fixture

DEFAULT_FIELD = GF(32003)
EMPTY = "empty"


class FixtureRunError(RuntimeError):
    """An engine error raised while running a fixture."""

    def __init__(self, fixture_id: str, exc: Exception):
        super().__init__(f"{fixture_id}: {type(exc).__name__}: {exc}")
        self.fixture_id = fixture_id
        self.cause = exc


# ---------------------------------------------------------------- values

def render(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, Polynomial):
        return str(normalize(v))
    if isinstance(v, Ideal):
        if v.is_unit():
            return EMPTY
        return "; ".join(str(g) for g in v.gens) or "0"
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    return str(v)


def _parse_gens(text: str, ring: PolyRing) -> list[Polynomial]:
    return [ring.parse(part.strip()) for part in text.split(";") if part.strip()]


def _radical_equal(I: Ideal, J: Ideal) -> bool:
    return (all(radical_member(g, J) for g in I.gens)
            and all(radical_member(g, I) for g in J.gens))


def matches(expected: str, actual) -> bool:
    exp = " ".join(expected.split())
    if isinstance(actual, bool):
        return exp.lower() == str(actual).lower()
    if isinstance(actual, int):
        try:
            return int(exp) == actual
        except ValueError:
            return False
    if isinstance(actual, Polynomial):
        if exp == EMPTY:
            return False
        f = actual.ring.parse(exp)
        return normalize(f) == normalize(actual)
    if isinstance(actual, Ideal):
        if exp == EMPTY:
            return actual.is_unit()
        return _radical_equal(Ideal(actual.ring, _parse_gens(exp, actual.ring)), actual)
    return exp == " ".join(render(actual).split())


# ---------------------------------------------------------------- evaluators

class Evaluator:
    """Maps quantity names to computed values; heavy results are computed once."""

    uses_field = True

    def __init__(self, fx: Fixture, field: Field):
        self.fx = fx
        self.field = field
        self.seed = fx.seed

    def value(self, quantity: str):
        table = self.table()
        if quantity in table:
            return table[quantity]()
        for pattern, fn in self.patterns():
            m = re.fullmatch(pattern, quantity)
            if m:
                return fn(*m.groups())
        raise FixtureError(f"{self.fx.id}: unknown quantity {quantity!r} for kind {self.fx.kind}")

    def table(self) -> dict:
        return {}

    def patterns(self) -> list:
        return []

    def ring_from(self, value: str, line: int, col: int) -> PolyRing:
        parts = value.split()
        if len(parts) < 2:
            raise FixtureError(f"{self.fx.id}:{line}: ring needs a field and variables")
        return PolyRing(parts[1:], self.field)


def _member_through(V, p, rng: random.Random):
    """A random member of |V − p|: coefficients λ with Σ λ_j w_j s_j(p) = 0."""
    F = V.field
    vals = [s.evaluate(p) for s in V.weighted_sections()]
    k = next(j for j, c in enumerate(vals) if c)
    lam = [F.random(rng, 30) for _ in vals]
    rest = sum((c * l for j, (c, l) in enumerate(zip(vals, lam)) if j != k), F.zero)
    lam[k] = F(-rest * F.inv(vals[k]))
    return V.member(lam)


class SymbolicEval(Evaluator):
    def __init__(self, fx, field):
        super().__init__(fx, field)
        self.V = parse_linear_system(fx.body, field, fx.id)

    @cached_property
    def report(self):
        return discriminant(self.V, with_strata=True, seed=self.seed)

    @cached_property
    def pencil(self):
        return pencil_verify(self.V, seed=self.seed)

    def _equation(self):
        r = self.report
        if r.empty:
            return EMPTY
        return r.equation if r.equation is not None else r.ideal

    def _deepest_points(self):
        J = self.report.jumping
        n = self.V.n
        if J.empty[n]:
            return []
        pts, complete = projective_points(J.ideals[n], self.seed)
        if not complete:
            raise FixtureError(f"{self.fx.id}: J{n} has points over an extension field")
        return pts

    def _vertex_milnor(self):
        rng = random.Random(self.seed)
        return sorted(milnor_at(_member_through(self.V, p, rng), p).mu for p in self._deepest_points())

    def _disc_singular(self):
        eq = self.report.equation
        if eq is None:
            raise FixtureError(f"{self.fx.id}: the discriminant is not a hypersurface")
        return singular_points(eq, seed=self.seed)

    def _disc_milnor(self):
        loc = self._disc_singular()
        if not loc.complete:
            raise FixtureError(f"{self.fx.id}: singular points over an extension field")
        return sorted(milnor_at(self.report.equation, p).mu for p in loc.points)

    def _disc_singular_count(self):
        loc = self._disc_singular()
        if not loc.finite:
            raise FixtureError(f"{self.fx.id}: positive-dimensional singular locus")
        if not loc.complete:
            raise FixtureError(f"{self.fx.id}: singular points over an extension field")
        return len(loc.points)

    def _transverse_points(self):
        r = self.report
        if not r.hyperplanes or r.residual is None:
            raise FixtureError(f"{self.fx.id}: no hyperplane with a residual component")
        pts, complete = projective_points(Ideal(r.residual.ring, [r.hyperplanes[0], r.residual]),
                                          self.seed)
        if not complete:
            raise FixtureError(f"{self.fx.id}: intersection points over an extension field")
        return len(pts)

    def _image(self):
        I = image_ideal(self.V).reduced()
        return I.gens[0] if len(I.gens) == 1 else I

    def _hyperplane_law(self):
        J = self.report.jumping
        return bool(self.report.hyperplanes) == (not J.empty[self.V.n])

    def table(self):
        r = lambda: self.report  # noqa: E731
        return {
            "equation": self._equation,
            "codegree": lambda: r().codegree,
            "dimension": lambda: r().dimension,
            "defect": lambda: r().defect,
            "radical certified": lambda: r().certified_radical,
            "hyperplanes": lambda: len(r().hyperplanes),
            "hyperplane forms": lambda: "; ".join(map(str, r().hyperplanes)),
            "residual": lambda: r().residual if r().residual is not None else EMPTY,
            "residual irreducible": lambda: bool(r().residual_irreducible),
            "hyperplane law": self._hyperplane_law,
            "strata cover": lambda: strata_cover(r().ideal, r().strata),
            "deepest jumping points": lambda: len(self._deepest_points()),
            "vertex milnor": self._vertex_milnor,
            "discriminant singular points": self._disc_singular_count,
            "discriminant milnor": self._disc_milnor,
            "hyperplane meets residual": self._transverse_points,
            "image": self._image,
            "image degree": lambda: dimension_degree(image_ideal(self.V))[1],
            "pencil holds": lambda: self.pencil.holds,
            "pencil milnor sum": lambda: self.pencil.milnor_total,
            "pencil singular members": lambda: self.pencil.singular_members,
            "cn": lambda: nm.cn_jet_pn(self.V.n, self.V.degree),
            "tame": lambda: nm.tame_check(r().codegree, nm.cn_jet_pn(self.V.n, self.V.degree)),
        }

    def patterns(self):
        return [
            (r"D(\d+)", lambda i: self.report.strata[int(i)]),
            (r"J(\d+) dim", lambda i: self.report.jumping.dims[int(i)]),
            (r"J(\d+)", lambda i: self.report.jumping.ideals[int(i)]),
        ]


class DualEval(Evaluator):
    def __init__(self, fx, field):
        super().__init__(fx, field)
        ring, dual, weights, eqs, genus = None, None, None, [], None
        for line, col, key, value in fx.body_entries():
            if key == "ring":
                ring = self.ring_from(value, line, col)
            elif key == "dual":
                dual = value.split()
            elif key == "weights":
                weights = [int(w) for w in value.split()]
            elif key == "genus":
                genus = int(value)
            elif key == "equation":
                if ring is None:
                    raise FixtureError(f"{fx.id}:{line}: ring must come first")
                eqs.append(ring.parse(value, line, col))
            else:
                raise FixtureError(f"{fx.id}:{line}: unknown key {key!r}")
        if ring is None or not eqs:
            raise FixtureError(f"{fx.id}: a dual fixture needs a ring and equations")
        self.X = Ideal(ring, eqs)
        self.names, self.weights, self.genus = dual, weights, genus

    @cached_property
    def dual(self) -> Ideal:
        return dual_variety(self.X, self.names, self.weights)

    def _dual_value(self):
        D = self.dual
        return D.gens[0] if len(D.gens) == 1 else D

    def _formula(self):
        if self.genus is None or len(self.X.gens) != 1:
            raise FixtureError(f"{self.fx.id}: the degree formula needs a plane curve and its genus")
        return nm.dual_degree_plane_curve(self.X.gens[0].degree(), self.genus)

    def table(self):
        return {
            "dual": self._dual_value,
            "dual degree": lambda: dimension_degree(self.dual)[1],
            "dual dimension": lambda: projective_dimension(self.dual),
            "bidual": lambda: bidual_check(self.X),
            "degree formula": self._formula,
        }


class _BranchEval(Evaluator):
    data = None

    def branch(self):
        return self.data

    def _ramification(self):
        return sorted(e for _, e in self.branch().ramification)

    def _profile(self):
        b = self.branch()
        rows = sorted(" ".join(map(str, b.profile[v])) for v in b.values)
        return ", ".join(rows)

    def table(self):
        b = self.branch
        return {
            "codegree": lambda: b().codegree,
            "branch values": lambda: len(b().values) + b().unresolved,
            "ramification": self._ramification,
            "ramification profile": self._profile,
            "ramification degree": lambda: sum(e - 1 for _, e in b().ramification),
        }


class PencilCurveEval(_BranchEval):
    """A pencil (f : g) of binary forms, given explicitly or as the osculating pair (s^r, t^r)."""

    def __init__(self, fx, field):
        super().__init__(fx, field)
        ring, forms, r = None, [], None
        for line, col, key, value in fx.body_entries():
            if key == "ring":
                ring = self.ring_from(value, line, col)
            elif key == "form":
                if ring is None:
                    raise FixtureError(f"{fx.id}:{line}: ring must come first")
                forms.append(ring.parse(value, line, col))
            elif key == "osculating":
                r = int(value)
            else:
                raise FixtureError(f"{fx.id}:{line}: unknown key {key!r}")
        if ring is None:
            ring = PolyRing(["s", "t"], field)
        if r is not None:
            s, t = ring.gens()
            forms = [s ** r, t ** r]
        if len(forms) != 2:
            raise FixtureError(f"{fx.id}: a pencil needs exactly two forms")
        self.forms = forms

    @cached_property
    def data(self):
        return wronskian_branch(*self.forms, seed=self.seed)

    def table(self):
        out = super().table()
        d = self.forms[0].degree()
        out["riemann-hurwitz"] = lambda: sum(e - 1 for _, e in self.data.ramification) == 2 * d - 2
        out["single branch value impossible"] = lambda: nm.single_branch_impossible(d, d)
        return out


class RncEval(_BranchEval):
    def __init__(self, fx, field):
        super().__init__(fx, field)
        degree = 3
        for line, _, key, value in fx.body_entries():
            if key != "degree":
                raise FixtureError(f"{fx.id}:{line}: unknown key {key!r}")
            degree = int(value)
        if degree != 3:
            raise FixtureError(f"{fx.id}: only the twisted cubic construction is available")
        self.ring = PolyRing(["s", "t"], field)

    @cached_property
    def data(self):
        return rnc_projection_r3(self.ring, self.seed)[2]


class DoubleCoverEval(_BranchEval):
    def __init__(self, fx, field):
        super().__init__(fx, field)
        ring, curve = None, None
        for line, col, key, value in fx.body_entries():
            if key == "ring":
                ring = self.ring_from(value, line, col)
            elif key == "curve" and ring is not None:
                curve = ring.parse(value, line, col)
            else:
                raise FixtureError(f"{fx.id}:{line}: unexpected {key!r}")
        if curve is None:
            raise FixtureError(f"{fx.id}: missing curve")
        self.curve = curve

    @cached_property
    def data(self):
        return double_cover_branch(self.curve, self.seed)

    def table(self):
        out = super().table()

        def genus():
            count = len(self.data.values) + self.data.unresolved
            return (count - 2) // 2

        out["genus"] = genus
        return out


class ProjectionEval(_BranchEval):
    def __init__(self, fx, field):
        super().__init__(fx, field)
        ring, curve, center = None, None, None
        for line, col, key, value in fx.body_entries():
            if key == "ring":
                ring = self.ring_from(value, line, col)
            elif key == "curve" and ring is not None:
                curve = ring.parse(value, line, col)
            elif key == "center":
                center = tuple(int(c) for c in value.split())
            else:
                raise FixtureError(f"{fx.id}:{line}: unexpected {key!r}")
        if curve is None or center is None:
            raise FixtureError(f"{fx.id}: a projection needs a curve and a center")
        self.curve, self.center = curve, center

    @cached_property
    def proj(self):
        return projection_branch(self.curve, self.center, self.seed)

    def branch(self):
        return self.proj.branch

    def table(self):
        out = super().table()
        out["all flexes"] = lambda: self.proj.flexes
        out["concurrent tangents"] = lambda: self.proj.tangents_through_center
        return out


# ---------------------------------------------------------------- field-free kinds

_NUMERIC_KEYS = ("e", "K2", "KL", "L2", "q", "g", "chi")


class NumericEval(Evaluator):
    """Surface invariants plus the discriminant components (degree, Milnor multiplier)."""

    uses_field = False

    def __init__(self, fx, field):
        super().__init__(fx, field)
        lines, ruled = [], None
        self.components: list[tuple[int, int]] = []
        self.curve = None
        self.image_degree = None
        self.scroll = False
        for line, _, key, value in fx.body_entries():
            if key in _NUMERIC_KEYS:
                lines.append(f"{key}: {value}")
            elif key == "ruled":
                ruled = nm.RuledClass(*(int(v) for v in value.split()))
            elif key == "component":
                parts = value.split()
                count = int(parts[2].lstrip("x")) if len(parts) > 2 else 1
                self.components += [(int(parts[0]), int(parts[1]))] * count
            elif key == "branch curve":
                d, g = (int(v) for v in value.split())
                self.curve = (d, g)
                self.components.append((nm.dual_degree_plane_curve(d, g), 1))
            elif key == "image degree":
                self.image_degree = int(value)
            elif key == "scroll":
                self.scroll = value.lower() == "true"
            else:
                raise FixtureError(f"{fx.id}:{line}: unknown key {key!r}")
        if ruled is not None and lines:
            raise FixtureError(f"{fx.id}: give either a ruled class or explicit invariants")
        try:
            self.s = (nm.ruled_numerics(ruled) if ruled is not None
                      else nm.parse_surface_numerics("\n".join(lines)))
        except nm.NumericsError as exc:
            raise FixtureError(f"{fx.id}: {exc}") from None

    def _chi(self):
        if self.s.chi is not None:
            return self.s.chi
        if (self.s.K2 + self.s.e) % 12:
            raise FixtureError(f"{self.fx.id}: K² + e is not divisible by 12")
        return (self.s.K2 + self.s.e) // 12

    def _needs_components(self):
        if not self.components:
            raise FixtureError(f"{self.fx.id}: no discriminant components recorded")
        return self.components

    def table(self):
        s = self.s
        c2 = lambda: nm.c2_jet_surface(s)  # noqa: E731
        codeg = lambda: sum(d for d, _ in self._needs_components())  # noqa: E731
        return {
            "e": lambda: s.e, "K2": lambda: s.K2, "KL": lambda: s.KL, "L2": lambda: s.L2,
            "q": lambda: s.q, "g": lambda: s.g, "chi": self._chi,
            "c2": c2,
            "c2 minus L2": lambda: c2() - s.L2,
            "euler plus genus term": lambda: s.e + 4 * (s.g - 1),
            "riemann-roch": lambda: self._chi() + (s.L2 - s.KL) // 2,
            "codegree": codeg,
            "dual curve degree": lambda: nm.dual_degree_plane_curve(*self.curve),
            "identity": lambda: nm.codegree_identity_check(self._needs_components(), c2()),
            "tame": lambda: nm.tame_check(codeg(), c2()),
            "degree bound": lambda: nm.marchionna_check(codeg(), self.image_degree,
                                                        is_scroll=self.scroll).value,
        }


class CyclicGridEval(Evaluator):
    uses_field = False

    def __init__(self, fx, field):
        super().__init__(fx, field)
        self.ds, self.bs = [], []
        for line, _, key, value in fx.body_entries():
            if key == "d":
                self.ds = [int(v) for v in value.split()]
            elif key == "b":
                self.bs = [int(v) for v in value.split()]
            else:
                raise FixtureError(f"{fx.id}:{line}: unknown key {key!r}")
        if not self.ds or not self.bs:
            raise FixtureError(f"{fx.id}: the grid needs d and b values")

    def cells(self):
        return [(d, b) for d in self.ds for b in self.bs]

    def _agree(self):
        """c2 from the closed form equals c2 from the cover's invariants."""
        return all(nm.c2_jet_cyclic(d, b).c2 == nm.c2_jet_surface(nm.cyclic_numerics(d, b))
                   for d, b in self.cells())

    def _identity(self):
        for d, b in self.cells():
            cc = nm.c2_jet_cyclic(d, b)
            if not nm.codegree_identity_check([(cc.class_of_branch, cc.multiplier)], cc.c2):
                return False
        return True

    def _tame_cells(self):
        return ", ".join(f"d={d} b={b}" for d, b in self.cells()
                         if nm.tame_check(nm.c2_jet_cyclic(d, b).class_of_branch,
                                          nm.c2_jet_cyclic(d, b).c2))

    def table(self):
        return {"invariants agree": self._agree, "identity": self._identity,
                "tame cells": self._tame_cells}

    def patterns(self):
        cell = r" d=(\d+) b=(\d+)"
        return [
            ("c2" + cell, lambda d, b: nm.c2_jet_cyclic(int(d), int(b)).c2),
            ("class" + cell, lambda d, b: nm.c2_jet_cyclic(int(d), int(b)).class_of_branch),
            ("multiplier" + cell, lambda d, b: nm.c2_jet_cyclic(int(d), int(b)).multiplier),
            ("tame" + cell, lambda d, b: nm.tame_check(nm.c2_jet_cyclic(int(d), int(b)).class_of_branch,
                                                       nm.c2_jet_cyclic(int(d), int(b)).c2)),
        ]


class SegreEval(Evaluator):
    """Jumping sets of a product from per-factor data.

    `factor: curve <g> <d>` is a curve of genus g with a base-point-free pencil of degree d,
    whose ramification points form J_1; `factor: projective <n>` is P^n with all linear forms.
    """

    uses_field = False

    def __init__(self, fx, field):
        super().__init__(fx, field)
        self.factors, self.index = [], None
        for line, _, key, value in fx.body_entries():
            if key == "factor":
                kind, *nums = value.split()
                nums = [int(v) for v in nums]
                if kind == "curve":
                    g, d = nums
                    self.factors.append(nm.JumpingProfile(1, {1: (0, 2 * g - 2 + 2 * d)}))
                elif kind == "projective":
                    self.factors.append(nm.JumpingProfile(nums[0], {}))
                else:
                    raise FixtureError(f"{fx.id}:{line}: unknown factor {kind!r}")
            elif key == "index":
                self.index = int(value)
            else:
                raise FixtureError(f"{fx.id}:{line}: unknown key {key!r}")
        if self.index is None:
            raise FixtureError(f"{fx.id}: missing index")

    @cached_property
    def profile(self):
        return nm.product_jumping_profile(self.factors, self.index)

    def table(self):
        p = lambda: self.profile  # noqa: E731
        return {
            "pieces": lambda: "; ".join(f"{t} dim {d} count {c}" for t, d, c in p()["pieces"]),
            "dimension": lambda: p()["dimension"],
            "components": lambda: sum(c for _, _, c in p()["pieces"]),
        }


class DocumentationEval(Evaluator):
    uses_field = False


EVALUATORS = {
    "symbolic": SymbolicEval, "dual": DualEval, "curve-pencil": PencilCurveEval,
    "rnc-projection": RncEval, "double-cover": DoubleCoverEval, "projection": ProjectionEval,
    "numeric": NumericEval, "cyclic-grid": CyclicGridEval, "segre-profile": SegreEval,
    "documentation": DocumentationEval,
}


# ---------------------------------------------------------------- reports

@dataclass
class Check:
    quantity: str
    expected: str
    actual: str
    ok: bool
    provenance: str


@dataclass
class FixtureReport:
    id: str
    kind: str
    field: str
    status: str  # pass, fail, skipped, documented
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def diffs(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def lines(self) -> list[str]:
        out = [f"fixture {self.id} [{self.kind}, {self.field}]: {self.status}"]
        for c in self.checks:
            mark = "ok  " if c.ok else "FAIL"
            if c.ok:
                out.append(f"  {mark} {c.quantity}: {c.actual}")
            else:
                out.append(f"  {mark} {c.quantity}: expected {c.expected}, got {c.actual} ({c.provenance})")
        out += [f"  note: {n}" for n in self.notes]
        return out

    def machine(self) -> dict[str, str]:
        kv = {"id": self.id, "kind": self.kind, "field": self.field, "status": self.status,
              "checks": str(len(self.checks)), "failed": str(len(self.diffs()))}
        for c in self.checks:
            kv[f"value.{c.quantity}"] = c.actual
        return kv


def run_fixture(ref: str | Fixture, field: Field | str | None = None) -> FixtureReport:
    """Run one fixture. Over ℚ, fixtures not declared ℚ-feasible are reported as skipped."""
    fx = ref if isinstance(ref, Fixture) else load_fixture(ref)
    F = parse_field(field) if isinstance(field, str) else (field or DEFAULT_FIELD)
    cls = EVALUATORS[fx.kind]
    fspec = F.spec if cls.uses_field else "any"
    if fx.kind == "documentation":
        return FixtureReport(fx.id, fx.kind, fspec, "documented", [], fx.notes)
    if cls.uses_field and F == QQ and not fx.qq:
        return FixtureReport(fx.id, fx.kind, fspec, "skipped", [],
                             ["not declared feasible over the rationals"])
    try:
        ev = cls(fx, F)
        checks = []
        for e in fx.expected:
            actual = ev.value(e.quantity)
            checks.append(Check(e.quantity, e.value, render(actual), matches(e.value, actual),
                                e.provenance))
    except Exception as exc:
        if isinstance(exc, FixtureError):
            raise
        raise FixtureRunError(fx.id, exc) from exc
    status = "pass" if all(c.ok for c in checks) else "fail"
    return FixtureReport(fx.id, fx.kind, fspec, status, checks, fx.notes)


def run_all(field: Field | str | None = None) -> list[FixtureReport]:
    """Run the whole roster; an engine error becomes a failed report rather than an abort."""
    out = []
    for fx in load_all():
        try:
            out.append(run_fixture(fx, field))
        except (FixtureError, FixtureRunError) as exc:
            F = parse_field(field) if isinstance(field, str) else (field or DEFAULT_FIELD)
            out.append(FixtureReport(fx.id, fx.kind, F.spec, "fail",
                                     [Check("run", "no error", str(exc), False, "engine")]))
    return out
