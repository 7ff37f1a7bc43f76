import sys
import random

import pytest
import sympy

from discloci.polyring import GF, QQ, PolyRing


def to_sympy(f, syms=None):
    """Exact sympy expression for a polynomial over QQ (or GF(p) lifted to symmetric integers)."""
    ring = f.ring
    syms = syms or sympy.symbols(" ".join(ring.names))
    if ring.nvars == 1 and not isinstance(syms, (list, tuple)):
        syms = [syms]
    F = ring.field
    out = 0
    for e, c in f.terms.items():
        coeff = sympy.Rational(int(c.numerator), int(c.denominator)) if F == QQ else int(F.fmt(c))
        mono = 1
        for s, k in zip(syms, e):
            mono *= s ** k
        out += coeff * mono
    return out


def from_sympy(expr, ring):
    return ring.parse(str(sympy.expand(expr)).replace("**", "^"))


def random_poly(ring, rng, terms=4, degree=3, bound=9, homogeneous=None):
    n = ring.nvars
    acc = ring.zero()
    for _ in range(terms):
        if homogeneous is not None:
            e = [0] * n
            for _ in range(homogeneous):
                e[rng.randrange(n)] += 1
        else:
            e = [rng.randint(0, degree) for _ in range(n)]
        acc = acc + ring.monomial(e, ring.field(rng.randint(-bound, bound)))
    return acc


@pytest.fixture
def rng():
    return random.Random(20261017)


@pytest.fixture(params=["q", "gf"])
def field(request):
    return QQ if request.param == "q" else GF(32003)


@pytest.fixture
def R3():
    return PolyRing("x y z", QQ)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
