import sympy

from discloci.polyring import GF, QQ
from discloci.univar import UOps


def test_roots_over_rationals():
    U = UOps(QQ)
    # (t - 1)(t + 2)(2t - 3)(t^2 + 1)
    a = U.mul(U.mul(U.norm([-1, 1]), U.norm([2, 1])), U.mul(U.norm([-3, 2]), U.norm([1, 0, 1])))
    assert sorted(U.roots(a)) == [-2, 1, sympy.Rational(3, 2)]


def test_roots_mod_p_match_brute_force():
    F = GF(101)
    U = UOps(F)
    a = U.norm([5, 0, 3, 1, 0, 1])
    brute = sorted(x for x in range(101) if U.eval(a, x) == 0)
    assert sorted(U.roots(a, seed=4)) == brute


def test_squarefree_and_multiplicity():
    U = UOps(QQ)
    a = U.mul(U.mul(U.norm([-1, 1]), U.norm([-1, 1])), U.norm([2, 1]))
    assert U.multiplicity(a, 1) == 2
    assert len(U.squarefree(a)) == 3
