"""The eleven acceptance criteria, each timed against its budget.

One PASS/FAIL line per criterion is printed in the terminal summary.
"""

import subprocess
import sys
import time
from pathlib import Path

import pytest

from discloci.catalog import load_fixture
from discloci.duality import (bidual_check, dehomogenize_at, discriminant, double_cover_branch,
                              dual_variety, milnor_at, osculating_pencil, parse_linear_system,
                              pencil_verify, projection_branch, rnc_projection_r3, singular_points,
                              strata_cover, wronskian_branch)
from discloci.duality.common import normalize
from discloci.ideals import Ideal, dimension_degree, quotient_colength, radical_member
from discloci.numerics import (RuledClass, SurfaceNumerics, c2_jet_cyclic, c2_jet_surface,
                               cn_jet_pn, codegree_identity_check, cyclic_numerics,
                               dual_degree_plane_curve, expected_family, ruled_numerics,
                               scan_scroll_inequality, tame_check)
from discloci.polyring import GF, QQ, PolyRing

RESULTS = []
GF1, GF2 = GF(32003), GF(65537)


def record(number, title, checks, elapsed, limit):
    ok = all(checks.values()) and elapsed < limit
    failed = [k for k, v in checks.items() if not v]
    if elapsed >= limit:
        failed.append(f"time {elapsed:.2f}s >= {limit}s")
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'} {elapsed:7.2f}s (limit {limit}s) {title}"
    if failed:
        line += " | failed: " + ", ".join(failed)
    RESULTS.append(line)
    assert ok, line


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def system(fid, field):
    return parse_linear_system(load_fixture(fid).body, field)


def radical_equal(I, J):
    return (all(radical_member(g, J) for g in I.gens) and
            all(radical_member(g, I) for g in J.gens))


def test_criterion_01_steiner():
    checks = {}
    worst = 0.0
    for field, limit in ((QQ, 60), (GF1, 5)):
        rep, dt = timed(lambda: discriminant(system("steiner-web", field), with_strata=False))
        R = rep.equation.ring
        want = normalize(R.parse("lambda^3 - lambda*(mu^2 + nu^2 + eps^2) + 2*mu*nu*eps"))
        checks[f"equation over {field.spec}"] = rep.equation == want
        checks[f"codegree over {field.spec}"] = rep.codegree == 3
        checks[f"time over {field.spec}"] = dt < limit
        worst = max(worst, dt)
    record(1, "Steiner web discriminant", checks, worst, 60)


def test_criterion_02_cone_web():
    def run():
        return discriminant(system("cone-web", QQ))
    rep, dt = timed(run)
    R = rep.equation.ring
    lam = R.parse("lambda")
    cone = R.parse("mu*eps - nu^2")
    checks = {
        "equation": rep.equation == normalize(lam * cone),
        "one hyperplane": [str(h) for h in rep.hyperplanes] == ["lambda"],
        "J2 nonempty": not rep.jumping.empty[2],
        "D1 quadric cone": radical_equal(rep.strata[1], Ideal(R, [cone])),
        "D2 plane": radical_equal(rep.strata[2], Ideal(R, [lam])),
        "strata cover": strata_cover(rep.ideal, rep.strata),
    }
    record(2, "cone web: plane plus quadric cone", checks, dt, 10)


def _veronese(field):
    fx = load_fixture("veronese-dual")
    entries = [(k, v) for _, _, k, v in fx.body_entries()]
    ring = PolyRing("x0 x1 x2 x3 x4 x5", field)
    eqs = [ring.parse(v) for k, v in entries if k == "equation"]
    weights = [int(w) for k, v in entries if k == "weights" for w in v.split()]
    return dual_variety(Ideal(ring, eqs), tuple(f"y{i}" for i in range(6)), weights)


def test_criterion_03_veronese_dual():
    def run():
        return {F.spec: _veronese(F) for F in (GF1, GF2, QQ)}
    duals, dt = timed(run)
    D = duals["q"]
    det_m = D.ring.parse("y0*y1*y2 + 2*y3*y4*y5 - y0*y5^2 - y1*y4^2 - y2*y3^2")
    checks = {
        "degree 3 mod 32003": dimension_degree(duals[GF1.spec])[1] == 3,
        "degree 3 mod 65537": dimension_degree(duals[GF2.spec])[1] == 3,
        "radical-equal to det M over Q": radical_equal(D, Ideal(D.ring, [det_m])),
    }
    record(3, "dual of the Veronese surface is the cubic symmetroid", checks, dt, 120)


@pytest.mark.parametrize("m", [2, 3])
def test_criterion_04_fermat(m):
    text = f"ring: q x0 x1 x2\nsection: x0^{m}\nsection: x1^{m}\nsection: x2^{m}\n"

    def run():
        V = parse_linear_system(text)
        return V, discriminant(V), pencil_verify(V, seed=0)
    (V, rep, pv), dt = timed(run)
    R, S = rep.equation.ring, V.ring
    J = rep.jumping
    verts = []
    for k in range(3):
        pt = tuple(1 if i == k else 0 for i in range(3))
        member = sum((S.var(i) ** m for i in range(3) if i != k), S.zero())
        verts.append(milnor_at(member, pt).mu)
    checks = {
        "three dual lines": radical_equal(rep.ideal, Ideal(R, [R.parse("l0*l1*l2")])),
        "codegree 3": rep.codegree == 3,
        "J1 coordinate triangle": radical_equal(J.ideals[1], Ideal(S, [S.parse("x0*x1*x2")])),
        "J2 three vertices": radical_equal(
            J.ideals[2], Ideal(S, [S.parse(p) for p in ("x0*x1", "x0*x2", "x1*x2")])),
        "vertex Milnor numbers": verts == [(m - 1) ** 2] * 3,
        "pencil sum": pv.holds and pv.milnor_total == 3 * (m - 1) ** 2 == cn_jet_pn(2, m),
    }
    record(4, f"Fermat n=2 m={m}", checks, dt, 10)


def test_criterion_05_nets():
    def run(fid):
        rep = discriminant(system(fid, QQ), with_strata=False)
        return rep, singular_points(rep.equation)
    out, dt = {}, 0.0
    for fid in ("net-generic", "net-special"):
        out[fid], t = timed(lambda: run(fid))
        dt = max(dt, t)
    gen, gen_sing = out["net-generic"]
    spe, spe_sing = out["net-special"]
    node = spe_sing.points[0] if len(spe_sing.points) == 1 else None
    colength = None
    if node is not None:
        # the whole singular scheme, read in an affine chart through the point
        f, _ = dehomogenize_at(spe.equation, node)
        colength = quotient_colength(Ideal(f.ring, [f] + f.gradient()))
    checks = {
        "generic cubic": gen.codegree == 3,
        "generic smooth": gen_sing.dimension < 0,
        "special cubic": spe.codegree == 3,
        "special one singular point": node is not None,
        "singular locus colength 1": colength == 1,
        "the point is a node": node is not None and milnor_at(spe.equation, node).mu == 1,
    }
    record(5, "nets of conics: smooth and one-nodal cubic", checks, dt, 30)


def test_criterion_06_plane_cubic():
    def run():
        R = PolyRing("x y z", QQ)
        X = Ideal(R, [R.parse("x^3 + y^3 + z^3")])
        return dual_variety(X, ("a", "b", "c")), bidual_check(X)
    (D, bid), dt = timed(run)
    checks = {
        "dual degree 6": D.gens[0].degree() == 6 == dual_degree_plane_curve(3, 1),
        "bidual": bid,
    }
    record(6, "plane cubic dual and biduality", checks, dt, 60)


def test_criterion_07_flex_projection():
    def run():
        R = PolyRing("x0 x1 x2", QQ)
        return projection_branch(R.parse("x0^3 - x1*x2^2 + x1^2*x2"), (1, 0, 0))
    p, dt = timed(run)
    checks = {
        "three flexes": p.flexes and len(p.points) == 3,
        "tangents concurrent at the center": p.tangents_through_center,
        "three branch values": len(p.branch.values) == 3,
        "codegree 3": p.branch.codegree == 3,
    }
    record(7, "flex tangents of the projected cubic", checks, dt, 10)


def test_criterion_08_curve_pencils():
    S = PolyRing("s t", QQ)
    checks = {}
    worst = 0.0
    for r in range(2, 7):
        b, dt = timed(lambda: wronskian_branch(*osculating_pencil(r, S)))
        checks[f"r={r}"] = len(b.values) == 2 and b.codegree == 2
        worst = max(worst, dt)
    (_, _, b), dt = timed(lambda: rnc_projection_r3(S, seed=0))
    checks["projected twisted cubic"] = len(b.values) == 3 and b.codegree == 3
    worst = max(worst, dt)
    H = PolyRing("x y", QQ)
    b, dt = timed(lambda: double_cover_branch(H.parse("y^2 - x*(x-1)*(x-2)*(x-3)*(x-4)*(x-5)")))
    checks["hyperelliptic genus 2"] = len(b.values) == 6
    worst = max(worst, dt)
    record(8, "branch values of pencils on curves", checks, worst, 1)


def test_criterion_09_numeric_ledger():
    def run():
        dp = SurfaceNumerics(e=11, K2=1, KL=-2, L2=4, chi=1)
        checks = {
            "double cone c2 19": c2_jet_surface(dp) == 19,
            "symmetric product c2 8":
                c2_jet_surface(ruled_numerics(2 * RuledClass(1, 0, -1, 1))) == 8,
            "elliptic scroll c2 3": c2_jet_surface(ruled_numerics(RuledClass(1, 1, -1, 1))) == 3,
            "identity on the double cone": codegree_identity_check([(18, 1), (1, 1)], 19),
            "identity on Fermat": codegree_identity_check([(1, 4)] * 3, cn_jet_pn(2, 3)),
            "double cone tame": tame_check(19, 19),
            "symmetric product tame": tame_check(8, 8),
        }
        for d in range(2, 5):
            for b in range(1, 5):
                c = c2_jet_cyclic(d, b)
                cls = b * d * (b * d - 1)
                checks[f"cyclic d={d} b={b}"] = (
                    c.c2 == (d - 1) * cls and c.class_of_branch == cls
                    and c2_jet_surface(cyclic_numerics(d, b)) == c.c2
                    and codegree_identity_check([(cls, d - 1)], c.c2)
                    and tame_check(cls, c.c2) == (d == 2))
        return checks
    checks, dt = timed(run)
    record(9, "numeric ledger", checks, dt, 1)


def test_criterion_10_scanner():
    def run():
        small = scan_scroll_inequality(5, 6, 40)
        big = scan_scroll_inequality(5, 6, 80)
        return small, big
    (small, big), dt = timed(run)
    checks = {
        "survivors found": bool(small),
        "families": all(expected_family(*t) for t in small),
        "stable when b doubles": all(expected_family(*t) for t in big),
        "e=0 a=b=3 present": (0, 3, 3) in small,
        "e=1 a=3 present": any(t[:2] == (1, 3) for t in small),
    }
    record(10, "scroll inequality scan", checks, dt, 1)


def test_criterion_11_property_suites():
    here = Path(__file__).parent
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                           str(here / "test_properties.py")], capture_output=True, text=True,
                          cwd=here.parent)
    dt = time.perf_counter() - t0
    tail = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr
    record(11, f"randomized property suites ({tail})", {"suites pass": proc.returncode == 0}, dt, 120)
