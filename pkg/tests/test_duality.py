import random

import pytest
import sympy

from conftest import to_sympy
from discloci.catalog import load_fixture
from discloci.duality import (BasePointError, LinearSystem, LinearSystemError, UnsupportedSource,
                              bidual_check, discriminant, dual_variety, hessian_nondegenerate,
                              image_ideal, jumping_sets, milnor, milnor_at, parse_linear_system, pencil_verify,
                              singular_points, strata_cover)
from discloci.duality.common import normalize
from discloci.ideals import Ideal, radical_member
from discloci.numerics import cn_jet_pn
from discloci.polyring import GF, QQ, ParseError, PolyRing

GF1 = GF(32003)


def lsys(text, field=None):
    return parse_linear_system(text, field)


def fixture_lsys(fid, field=None):
    return lsys(load_fixture(fid).body, field)


def same_up_to_scalar(f, expr, syms):
    ratio = sympy.cancel(to_sympy(f, syms) / expr)
    return ratio.is_number and ratio != 0


def radical_equal(I, J):
    return (all(radical_member(g, J) for g in I.gens) and
            all(radical_member(g, I) for g in J.gens))


# ---------------------------------------------------------------- linear systems

def test_parse_errors():
    with pytest.raises(ParseError) as err:
        lsys("ring: q x y z\nsection: x^2\nsection: x*y+\nsection: y^2\n")
    assert err.value.line == 3
    with pytest.raises(ParseError, match="different degrees"):
        lsys("ring: q x y\nsection: x^2\nsection: y\n")
    with pytest.raises(ParseError, match="at least two"):
        lsys("ring: q x y\nsection: x^2\n")
    R = PolyRing("x y", QQ)
    with pytest.raises(LinearSystemError):
        LinearSystem(R, [R.parse("x^2"), R.parse("x + y")])


def test_base_points_rejected():
    V = lsys("ring: q x y z\nsection: x^2\nsection: x*y\nsection: y^2\n")
    with pytest.raises(BasePointError) as err:
        discriminant(V)
    # the witness cuts out the base point (0:0:1)
    w = err.value.witness
    x, y, z = w.ring.gens()
    assert radical_member(x, w) and radical_member(y, w) and not radical_member(z, w)


# ---------------------------------------------------------------- discriminants vs sympy

@pytest.mark.parametrize("m", [2, 3])
def test_complete_binary_system(m):
    sec = "\n".join(f"section: s^{m - k}*t^{k}" for k in range(m + 1))
    V = lsys(f"ring: q s t\n{sec}\n")
    rep = discriminant(V, with_strata=False)
    ls = sympy.symbols(" ".join(V.dual_names))
    X = sympy.Symbol("X")
    generic = sum(l * X ** (m - k) for k, l in enumerate(ls))
    assert rep.codegree == 2 * (m - 1)
    assert same_up_to_scalar(rep.equation, sympy.discriminant(generic, X), ls)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_fermat_binary(m):
    V = lsys(f"ring: q s t\nsection: s^{m}\nsection: t^{m}\n")
    rep = discriminant(V, with_strata=False)
    l0, l1 = sympy.symbols(" ".join(V.dual_names))
    X = sympy.Symbol("X")
    expected = sympy.discriminant(l0 * X ** m + l1, X)
    assert sympy.factor_list(expected)[1] and rep.codegree == 2
    # the radical of the sympy discriminant is l0*l1
    rad = sympy.Mul(*[f for f, _ in sympy.factor_list(expected)[1]])
    assert same_up_to_scalar(rep.equation, rad, (l0, l1))


def test_conic_sections_vs_sympy():
    fx = load_fixture("conic-sections")
    V = lsys(fx.body)
    rep = discriminant(V, with_strata=False)
    l0, l1, l2 = sympy.symbols(" ".join(V.dual_names))
    t = sympy.Symbol("t")
    # parametrize the conic (s^2 : s t : t^2) and pull the member back
    member = l0 * t ** 2 + l1 * t + l2
    assert same_up_to_scalar(rep.equation, sympy.discriminant(member, t), (l0, l1, l2))


@pytest.mark.parametrize("field", [QQ, GF1], ids=["q", "gf"])
def test_steiner(field):
    V = fixture_lsys("steiner-web", field)
    rep = discriminant(V, with_strata=False)
    R = rep.equation.ring
    target = R.parse("lambda^3 - lambda*(mu^2 + nu^2 + eps^2) + 2*mu*nu*eps")
    assert rep.equation == normalize(target)
    assert rep.codegree == 3


def test_cone_web():
    V = fixture_lsys("cone-web", QQ)
    rep = discriminant(V)
    R = rep.equation.ring
    assert rep.equation == normalize(R.parse("lambda*(mu*eps - nu^2)"))
    assert [str(h) for h in rep.hyperplanes] == ["lambda"]
    assert rep.residual == normalize(R.parse("mu*eps - nu^2"))
    assert rep.residual_irreducible
    assert strata_cover(rep.ideal, rep.strata)
    assert rep.strata[2].contains(R.parse("lambda"))
    img = image_ideal(V)
    assert img.is_principal() and img.gens[0].degree() == 2


def test_veronese_dual_symmetroid():
    fx = load_fixture("veronese-dual")
    entries = {k: v for _, _, k, v in fx.body_entries()}
    weights = [int(w) for w in entries["weights"].split()]
    ring = PolyRing("x0 x1 x2 x3 x4 x5", QQ)
    # the Veronese surface: 2x2 minors of the symmetric matrix [[x0,x3,x4],[x3,x1,x5],[x4,x5,x2]]
    M = sympy.Matrix([[0, 3, 4], [3, 1, 5], [4, 5, 2]])
    xs = sympy.symbols("x0:6")
    S = M.applyfunc(lambda k: xs[k])
    minors = {sympy.expand(S.extract(list(r), list(c)).det())
              for r in [(0, 1), (0, 2), (1, 2)] for c in [(0, 1), (0, 2), (1, 2)]}
    X = Ideal(ring, [ring.parse(str(m).replace("**", "^")) for m in minors if m != 0])
    D = dual_variety(X, tuple(f"y{i}" for i in range(6)), weights)
    ys = sympy.symbols("y0:6")
    Y = M.applyfunc(lambda k: ys[k])
    assert D.is_principal()
    assert same_up_to_scalar(D.gens[0], Y.det(), ys)
    Xp = X.map(PolyRing(ring.names, GF(65537)))
    Dp = dual_variety(Xp, tuple(f"y{i}" for i in range(6)), weights)
    assert Dp.gens[0].degree() == 3


def test_plane_cubic_dual_and_bidual():
    R = PolyRing("x y z", QQ)
    X = Ideal(R, [R.parse("x^3 + y^3 + z^3")])
    D = dual_variety(X, ("a", "b", "c"))
    a, b, c = sympy.symbols("a b c")
    expected = a**6 + b**6 + c**6 - 2*a**3*b**3 - 2*a**3*c**3 - 2*b**3*c**3
    assert same_up_to_scalar(D.gens[0], expected, (a, b, c))
    assert bidual_check(X.map(PolyRing("x y z", GF1)))


@pytest.mark.parametrize("curve", ["x*z - y^2", "y^2*z - x^3 - x*z^2 - z^3",
                                   "x^2*y^2 + y^2*z^2 + z^2*x^2 - 2*x*y*z*(x + y + z)"])
def test_bidual(curve):
    R = PolyRing("x y z", GF1)
    assert bidual_check(Ideal(R, [R.parse(curve)]))


def test_bidual_fermat_quartic():
    R = PolyRing("x y z", GF1)
    assert bidual_check(Ideal(R, [R.parse("x^4 + y^4 + z^4")]))


# ---------------------------------------------------------------- jumping sets and hyperplanes

@pytest.mark.parametrize("m", [2, 3])
def test_fermat_plane(m):
    V = lsys(f"ring: q x0 x1 x2\nsection: x0^{m}\nsection: x1^{m}\nsection: x2^{m}\n")
    rep = discriminant(V)
    R = rep.equation.ring
    assert rep.equation == normalize(R.parse("l0*l1*l2"))
    assert rep.codegree == 3
    J = rep.jumping
    S = J.ideals[1].ring
    assert radical_equal(J.ideals[1], Ideal(S, [S.parse("x0*x1*x2")]))
    assert radical_equal(J.ideals[2], Ideal(S, [S.parse(p) for p in ("x0*x1", "x0*x2", "x1*x2")]))
    assert sorted(map(str, rep.hyperplanes)) == ["l0", "l1", "l2"]
    for k in range(3):
        pt = tuple(1 if i == k else 0 for i in range(3))
        # the member dual to the vertex: the other two coordinates to the m-th power
        member = sum((S.var(i) ** m for i in range(3) if i != k), S.zero())
        assert milnor_at(member, pt).mu == (m - 1) ** 2
    pv = pencil_verify(V, seed=1)
    assert pv.holds and pv.milnor_total == 3 * (m - 1) ** 2


@pytest.mark.parametrize("n,m", [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4)])
def test_pencil_matches_cn(n, m):
    names = " ".join(f"x{i}" for i in range(n + 1))
    sec = "\n".join(f"section: x{i}^{m}" for i in range(n + 1))
    V = lsys(f"ring: gf:32003 {names}\n{sec}\n")
    pv = pencil_verify(V, seed=3)
    assert pv.cn == cn_jet_pn(n, m)
    assert pv.milnor_total == cn_jet_pn(n, m)
    assert pv.holds


def test_jumping_sets_need_projective_source():
    V = fixture_lsys("conic-sections")
    with pytest.raises(UnsupportedSource):
        jumping_sets(V)


def test_rank_convention_random_points():
    # J_i is where the differential drops rank to n - i; compare with sympy ranks at points
    V = fixture_lsys("cone-web", QQ)
    J = jumping_sets(V)
    names = V.source_names
    syms = sympy.symbols(" ".join(names))
    jac = sympy.Matrix([[sympy.diff(to_sympy(s, syms), v) for v in syms] for s in V.sections])
    rng = random.Random(5)
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)]
    pts += [tuple(rng.randint(-5, 5) for _ in names) for _ in range(10)]
    for p in pts:
        if not any(p):
            continue
        rank = jac.subs(dict(zip(syms, p))).rank()
        n = len(names) - 1
        for i in range(1, n + 1):
            inside = all(not g.evaluate(tuple(QQ(c) for c in p)) for g in J.ideals[i].gens)
            assert inside == (rank - 1 <= n - i)


# ---------------------------------------------------------------- singularities

@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_milnor_ak(k):
    R = PolyRing("x y", QQ)
    f = R.parse(f"x^2 + y^{k + 1}")
    assert milnor(f, (0, 0)).mu == k
    assert hessian_nondegenerate(f, (0, 0)) == (k == 1)


def test_milnor_d4_and_fermat():
    R = PolyRing("x y", QQ)
    assert milnor(R.parse("x^2*y + y^3"), (0, 0)).mu == 4
    assert milnor(R.parse("x^3 + y^3"), (0, 0)).mu == 4
    assert not milnor(R.parse("x^2"), (0, 0)).isolated


def test_milnor_equals_sympy_colength():
    # colength of the Jacobian ideal at the origin, counted by brute-force monomials
    R = PolyRing("x y", QQ)
    f = R.parse("x^3 + y^4")
    x, y = sympy.symbols("x y")
    G = sympy.groebner([3 * x**2, 4 * y**3], x, y, order="grevlex")
    count = sum(1 for a in range(10) for b in range(10)
                if G.reduce(x**a * y**b)[1] == x**a * y**b)
    assert milnor(f, (0, 0)).mu == count == 6


def test_net_special_node():
    V = fixture_lsys("net-special", QQ)
    rep = discriminant(V, with_strata=False)
    loc = singular_points(rep.equation)
    assert rep.codegree == 3
    assert loc.finite and len(loc.points) == 1
    assert milnor_at(rep.equation, loc.points[0]).mu == 1


def test_net_generic_smooth():
    V = fixture_lsys("net-generic", QQ)
    rep = discriminant(V, with_strata=False)
    assert rep.codegree == 3
    assert singular_points(rep.equation).dimension < 0
