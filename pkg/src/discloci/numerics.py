"""Closed-form invariant calculators and arithmetic scanners for linear systems on surfaces."""

from __future__ import annotations

from dataclasses import dataclass, fields
from enum import Enum


class NumericsError(ValueError):
    pass


# ---------------------------------------------------------------- records

@dataclass(frozen=True)
class SurfaceNumerics:
    """Invariants of a polarized surface (S, L): e(S), K², K·L, L², q and the sectional genus."""

    e: int
    K2: int
    KL: int
    L2: int
    q: int = 0
    g: int | None = None
    chi: int | None = None

    def __post_init__(self):
        twice = self.KL + self.L2
        if twice % 2:
            raise NumericsError(f"(K+L)·L = {twice} is odd; no integral sectional genus")
        genus = twice // 2 + 1
        if self.g is None:
            object.__setattr__(self, "g", genus)
        elif self.g != genus:
            raise NumericsError(f"sectional genus {self.g} contradicts 2g-2 = (K+L)·L = {twice}")
        if self.chi is not None and 12 * self.chi != self.K2 + self.e:
            raise NumericsError(f"Noether fails: 12·{self.chi} != {self.K2} + {self.e}")

    def to_text(self) -> str:
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None:
                out.append(f"{f.name}: {v}")
        return "\n".join(out) + "\n"


_KEYS = {"e": "e", "k2": "K2", "kl": "KL", "l2": "L2", "q": "q", "g": "g", "chi": "chi"}


def parse_surface_numerics(text: str) -> SurfaceNumerics:
    """key: value lines (e, K2, KL, L2, q, g, chi); `#` starts a comment; unknown keys are errors."""
    vals = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        name = _KEYS.get(key.strip().lower())
        if not sep or name is None:
            raise NumericsError(f"line {lineno}: unknown entry {line!r}")
        try:
            vals[name] = int(value.strip())
        except ValueError:
            raise NumericsError(f"line {lineno}: {value.strip()!r} is not an integer") from None
    missing = {"e", "K2", "KL", "L2"} - vals.keys()
    if missing:
        raise NumericsError(f"missing entries: {', '.join(sorted(missing))}")
    return SurfaceNumerics(**vals)


@dataclass(frozen=True)
class RuledClass:
    """The divisor a·C0 + b·f on a ruled surface with invariant e over a curve of genus g."""

    a: int
    b: int
    e: int
    g: int = 0

    def __add__(self, other: RuledClass) -> RuledClass:
        _same_surface(self, other)
        return RuledClass(self.a + other.a, self.b + other.b, self.e, self.g)

    def __rmul__(self, k: int) -> RuledClass:
        return RuledClass(k * self.a, k * self.b, self.e, self.g)


def _same_surface(D1: RuledClass, D2: RuledClass):
    if (D1.e, D1.g) != (D2.e, D2.g):
        raise NumericsError("classes live on different ruled surfaces")


def ruled_dot(D1: RuledClass, D2: RuledClass) -> int:
    """Intersection with C0² = −e, C0·f = 1, f² = 0."""
    _same_surface(D1, D2)
    return -D1.a * D2.a * D1.e + D1.a * D2.b + D2.a * D1.b


def ruled_canonical(g: int, e: int) -> RuledClass:
    return RuledClass(-2, 2 * g - 2 - e, e, g)


def ruled_numerics(L: RuledClass) -> SurfaceNumerics:
    """Numerics of (S, L) for S ruled over a genus-g curve: e(S) = 4(1 − g), K² = 8(1 − g)."""
    K = ruled_canonical(L.g, L.e)
    return SurfaceNumerics(e=4 * (1 - L.g), K2=8 * (1 - L.g), KL=ruled_dot(K, L),
                           L2=ruled_dot(L, L), q=L.g)


# ---------------------------------------------------------------- jet Chern numbers

def c2_jet_surface(s: SurfaceNumerics) -> int:
    return s.e + 2 * s.KL + 3 * s.L2


def cn_jet_pn(n: int, m: int) -> int:
    """Top Chern class of J_1(O(m)) on P^n."""
    if n < 1 or m < 1:
        raise NumericsError("need n >= 1 and m >= 1")
    return (n + 1) * (m - 1) ** n


@dataclass(frozen=True)
class CyclicCover:
    c2: int
    class_of_branch: int
    multiplier: int


def c2_jet_cyclic(d: int, b: int) -> CyclicCover:
    """d-cyclic cover of P² branched along a smooth curve of degree bd, with L the pullback of O(1)."""
    if d < 2 or b < 1:
        raise NumericsError("need d >= 2 and b >= 1")
    cls = b * d * (b * d - 1)
    return CyclicCover((d - 1) * cls, cls, d - 1)


def cyclic_numerics(d: int, b: int) -> SurfaceNumerics:
    """Invariants of the d-cyclic cover of P² branched along a smooth curve of degree bd."""
    if d < 2 or b < 1:
        raise NumericsError("need d >= 2 and b >= 1")
    e = d * 3 - (d - 1) * (3 * b * d - (b * d) ** 2)
    k = b * (d - 1) - 3
    twelve_chi = b * b * (d - 1) * d * (2 * d - 1) - 9 * b * d * (d - 1) + 12 * d
    if twelve_chi % 12:
        raise NumericsError("non-integral holomorphic Euler characteristic")
    return SurfaceNumerics(e=e, K2=d * k * k, KL=d * k, L2=d, q=0, chi=twelve_chi // 12)


def dual_degree_plane_curve(d: int, g: int) -> int:
    """Degree of the dual of a plane curve of degree d and geometric genus g whose singularities are nodes."""
    if d < 2 or g < 0:
        raise NumericsError("need d >= 2 and g >= 0")
    return 2 * (d + g - 1)


def single_branch_impossible(d: int, m: int) -> bool:
    """A degree-d map P¹ → P¹ cannot have a single branch point with ramification total m.

    Riemann–Hurwitz would need 2g − 2 = −2d + (d − m), i.e. g = (2 − d − m)/2 ≥ 0.
    """
    if d < 2 or not 1 <= m <= d:
        raise NumericsError("need d >= 2 and 1 <= m <= d")
    num = 2 - d - m
    return not (num >= 0 and num % 2 == 0)


# ---------------------------------------------------------------- checks

def codegree_identity_check(components, cn: int) -> bool:
    """components: (degree, multiplier) pairs; holds iff Σ m·d = cn and Σ d ≤ cn."""
    comps = list(components)
    for d, m in comps:
        if d < 1 or m < 1:
            raise NumericsError("degrees and multipliers must be positive")
    return sum(d * m for d, m in comps) == cn and sum(d for d, _ in comps) <= cn


def tame_check(codeg: int, cn: int) -> bool:
    return codeg == cn


class Verdict(str, Enum):
    PASS = "pass"
    SCROLL_EQUALITY = "pass (equality, scroll)"
    EXCEPTION = "pass (P2, O(2) exception)"
    FAIL = "fail"


def marchionna_check(codeg: int, deg_image: int, is_p2_o2: bool = False,
                     is_scroll: bool = False) -> Verdict:
    """Compare codegree with the degree of the image surface."""
    if is_p2_o2:
        return Verdict.EXCEPTION
    if codeg > deg_image:
        return Verdict.PASS
    if codeg == deg_image:
        return Verdict.SCROLL_EQUALITY if is_scroll else Verdict.FAIL
    return Verdict.FAIL


# ---------------------------------------------------------------- scanners

def scroll_inequality(e: int, a: int, b: int) -> bool:
    lhs = 4 + 2 * a * e - 4 * a - 4 * b + 6 * a * b - 3 * a * a * e
    rhs = 4 * a * b - 2 * a * a * e - 2
    return lhs <= rhs


def scan_scroll_inequality(e_max: int, a_max: int, b_max: int) -> list[tuple[int, int, int]]:
    """Triples (e, a, b) with a ≥ 2, e ≥ 0, b ≥ ae + 1 satisfying the rational-scroll inequality.

    For e = 0 the two rulings are interchangeable, so a ≤ b is imposed when a ≥ 3.
    """
    out = []
    for e in range(e_max + 1):
        for a in range(2, a_max + 1):
            for b in range(a * e + 1, b_max + 1):
                if e == 0 and a != 2 and b < a:
                    continue
                if scroll_inequality(e, a, b):
                    out.append((e, a, b))
    return out


def expected_family(e: int, a: int, b: int) -> bool:
    return a == 2 or (e == 0 and a == 3 and b == 3) or (e == 1 and a == 3)


def scan_matches_families(e_max: int, a_max: int, b_max: int) -> bool:
    return all(expected_family(*t) for t in scan_scroll_inequality(e_max, a_max, b_max))


# ---------------------------------------------------------------- products

@dataclass(frozen=True)
class JumpingProfile:
    """Per-factor data: dimension of the factor and, for each index i ≥ 1, (dim J_i, count)."""

    dim: int
    sets: dict

    def dim_of(self, i: int) -> int:
        if i == 0:
            return self.dim
        return self.sets.get(i, (-1, 0))[0]

    def count_of(self, i: int) -> int:
        if i == 0:
            return 1
        return self.sets.get(i, (-1, 0))[1]


def product_jumping_profile(profiles: list[JumpingProfile], i: int) -> dict:
    """J_i of a product: the union over index tuples summing to i of the products of factor sets.

    Tuples summing to more than i give smaller sets, so they add nothing to the union.
    Returns the pieces as (tuple, dimension, component count) and the overall dimension.
    """
    if len(profiles) < 2:
        raise NumericsError("need at least two factors")
    pieces = []

    def rec(k, acc):
        if k == len(profiles):
            if sum(acc) == i:
                dims = [profiles[j].dim_of(t) for j, t in enumerate(acc)]
                count = 1
                for j, t in enumerate(acc):
                    count *= profiles[j].count_of(t)
                pieces.append((tuple(acc), sum(dims), count))
            return
        p = profiles[k]
        for t in range(0, i - sum(acc) + 1):
            if p.dim_of(t) >= 0:
                rec(k + 1, acc + [t])

    rec(0, [])
    return {"pieces": sorted(pieces), "dimension": max((d for _, d, _ in pieces), default=-1)}


__all__ = [
    "SurfaceNumerics", "RuledClass", "parse_surface_numerics", "ruled_dot", "ruled_canonical",
    "ruled_numerics", "c2_jet_surface", "cn_jet_pn", "c2_jet_cyclic", "cyclic_numerics",
    "CyclicCover", "dual_degree_plane_curve", "single_branch_impossible",
    "codegree_identity_check", "tame_check", "marchionna_check", "Verdict", "scroll_inequality",
    "scan_scroll_inequality", "expected_family", "scan_matches_families", "JumpingProfile",
    "product_jumping_profile", "NumericsError",
]
