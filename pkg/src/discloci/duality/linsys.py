"""Linear systems (X, V): a source (projective space or a hypersurface) and N+1 sections."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from ..ideals import Ideal, eliminate, saturate_irrelevant
from ..polyring import Field, ParseError, PolyRing, Polynomial, parse_field


class BasePointError(ValueError):
    def __init__(self, witness: Ideal):
        super().__init__("linear system has base points; witness ideal: "
                         + ", ".join(map(str, witness.gens)))
        self.witness = witness


class LinearSystemError(ValueError):
    pass


def symmetric_weights(sections) -> list[int]:
    """Trace-pairing weights: a monomial x^a pairs with multinomial(a); sums of pure powers with 1."""
    out = []
    for s in sections:
        mults = set()
        for e in s.terms:
            m = factorial(sum(e))
            for x in e:
                m //= factorial(x)
            mults.add(m)
        if len(s.terms) == 1:
            out.append(mults.pop())
        elif mults == {1}:
            out.append(1)
        else:
            raise LinearSystemError(f"symmetric pairing undefined for section {s}")
    return out


@dataclass
class LinearSystem:
    """Sections of equal degree on P^n (hypersurface=None) or on X = V(F) ⊂ P^M.

    The member attached to a dual point λ is Σ λ_j·w_j·s_j, where the weights w_j are 1
    for the standard pairing.
    """

    ring: PolyRing
    sections: list[Polynomial]
    hypersurface: Polynomial | None = None
    dual_names: tuple[str, ...] | None = None
    weights: list | None = None
    pairing: str = "standard"
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.sections) < 2:
            raise LinearSystemError("a linear system needs at least two sections")
        degs = set()
        for s in self.sections:
            if s.ring != self.ring:
                raise LinearSystemError(f"section {s} is not in {self.ring}")
            if s.is_zero() or not s.is_homogeneous():
                raise LinearSystemError(f"section {s} is not a nonzero form")
            degs.add(s.degree())
        if len(degs) != 1:
            raise LinearSystemError(f"sections have different degrees {sorted(degs)}")
        self.degree = degs.pop()
        if self.degree < 1:
            raise LinearSystemError("sections must have positive degree")
        if self.hypersurface is not None:
            F = self.hypersurface
            if F.ring != self.ring or not F.is_homogeneous() or F.degree() < 1:
                raise LinearSystemError("hypersurface must be a nonconstant form in the source ring")
        if self.dual_names is None:
            stem = "l"
            while any(v.startswith(stem) for v in self.ring.names):
                stem += "l"
            self.dual_names = tuple(f"{stem}{j}" for j in range(len(self.sections)))
        self.dual_names = tuple(self.dual_names)
        if len(self.dual_names) != len(self.sections):
            raise LinearSystemError("one dual coordinate per section is required")
        if set(self.dual_names) & set(self.ring.names):
            raise LinearSystemError("dual coordinate names clash with source variables")
        if self.weights is None:
            self.weights = (symmetric_weights(self.sections) if self.pairing == "symmetric"
                            else [1] * len(self.sections))
        self.weights = [self.ring.field(w) for w in self.weights]

    # -- shape
    @property
    def N(self) -> int:
        return len(self.sections) - 1

    @property
    def source_names(self) -> tuple[str, ...]:
        return self.ring.names

    @property
    def n(self) -> int:
        """Dimension of the source."""
        return self.ring.nvars - 1 - (self.hypersurface is not None)

    @property
    def field(self) -> Field:
        return self.ring.field

    def is_projective_space(self) -> bool:
        return self.hypersurface is None

    def dual_ring(self) -> PolyRing:
        return PolyRing(self.dual_names, self.field)

    def joint_ring(self) -> PolyRing:
        return PolyRing(self.ring.names + self.dual_names, self.field)

    def over(self, field: Field) -> LinearSystem:
        ring = self.ring.with_field(field)
        return LinearSystem(
            ring, [ring.convert(s) for s in self.sections],
            None if self.hypersurface is None else ring.convert(self.hypersurface),
            self.dual_names, [field(w) for w in self.weights], self.pairing, self.name,
        )

    def weighted_sections(self) -> list[Polynomial]:
        return [s.scale(w) for s, w in zip(self.sections, self.weights)]

    def generic_member(self) -> Polynomial:
        """s = Σ λ_j w_j s_j in the joint ring."""
        R = self.joint_ring()
        return sum((R.var(l) * R.convert(s) for l, s in zip(self.dual_names, self.weighted_sections())),
                   R.zero())

    def member(self, lam) -> Polynomial:
        return sum((s.scale(c) for s, c in zip(self.weighted_sections(), lam)), self.ring.zero())

    def source_ideal(self) -> Ideal:
        return Ideal(self.ring, [] if self.hypersurface is None else [self.hypersurface])

    # -- validation
    def coefficient_rank(self) -> int:
        """Rank of the sections in H^0(X, L), i.e. modulo the hypersurface equation."""
        vecs = self.sections
        if self.hypersurface is not None:
            G = Ideal(self.ring, [self.hypersurface]).groebner()
            vecs = [G.normal_form(s) for s in vecs]
        return _rank(vecs, self.field)

    def check(self) -> None:
        if self.coefficient_rank() != len(self.sections):
            raise LinearSystemError("sections are linearly dependent")
        self.check_base_point_free()
        if self.hypersurface is not None:
            self.check_smooth_source()

    def check_base_point_free(self) -> None:
        gens = list(self.sections) + ([self.hypersurface] if self.hypersurface is not None else [])
        I = Ideal(self.ring, gens)
        if not _projectively_empty(I):
            raise BasePointError(saturate_irrelevant(I, self.ring.names).reduced())

    def check_smooth_source(self) -> None:
        F = self.hypersurface
        I = Ideal(self.ring, [F] + F.gradient())
        if not _projectively_empty(I):
            raise LinearSystemError(f"hypersurface {F} is singular")


def _projectively_empty(I: Ideal) -> bool:
    ring = I.ring
    for v in ring.names:
        chart = ring.drop([v])
        if not I.subs({v: 1}, chart).is_unit():
            return False
    return True


def _rank(polys, field) -> int:
    monos = sorted({e for f in polys for e in f.terms})
    rows = [[f.terms.get(m, field.zero) for m in monos] for f in polys]
    rank = 0
    col = 0
    nrows = len(rows)
    while rank < nrows and col < len(monos):
        piv = next((r for r in range(rank, nrows) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.inv(rows[rank][col])
        for r in range(nrows):
            if r != rank and rows[r][col]:
                c = rows[r][col] * inv
                rows[r] = [field(a - c * b) for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


# ---------------------------------------------------------------- text format

def parse_linear_system(text: str, field: Field | None = None, name: str = "") -> LinearSystem:
    """Read `ring:`, optional `dual:`, `pairing:`, `hypersurface:`, and `section:` lines.

    `field` overrides the field named in the ring declaration.
    """
    ring = None
    dual = None
    pairing = "standard"
    hyper = None
    sections = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        col = len(line) - len(rest) + 1
        if not sep:
            raise ParseError("expected 'key: value'", lineno, 1)
        if key == "ring":
            parts = rest.split()
            if not parts:
                raise ParseError("ring declaration needs a field and variables", lineno, col)
            try:
                F = field or parse_field(parts[0])
                ring = PolyRing(parts[1:], F)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col) from None
        elif key == "dual":
            dual = tuple(rest.split())
        elif key == "pairing":
            pairing = rest.strip()
            if pairing not in ("standard", "symmetric"):
                raise ParseError(f"unknown pairing {pairing!r}", lineno, col)
        elif key in ("hypersurface", "section"):
            if ring is None:
                raise ParseError("ring declaration must come first", lineno, 1)
            lead = len(rest) - len(rest.lstrip())
            f = ring.parse(rest.strip(), lineno, col + lead)
            if key == "section":
                sections.append(f)
            else:
                hyper = f
        else:
            raise ParseError(f"unknown key {key!r}", lineno, 1)
    if ring is None:
        raise ParseError("missing ring declaration", 1, 1)
    try:
        return LinearSystem(ring, sections, hyper, dual, None, pairing, name)
    except LinearSystemError as exc:
        raise ParseError(str(exc), 1, 1) from None


def format_linear_system(V: LinearSystem) -> str:
    lines = [f"ring: {V.ring.declaration()}", f"dual: {' '.join(V.dual_names)}"]
    if V.pairing != "standard":
        lines.append(f"pairing: {V.pairing}")
    if V.hypersurface is not None:
        lines.append(f"hypersurface: {V.hypersurface}")
    lines += [f"section: {s}" for s in V.sections]
    return "\n".join(lines) + "\n"


def image_ideal(V: LinearSystem) -> Ideal:
    """Ideal of φ_V(X) ⊂ P^N in coordinates y_j = s_j, by implicitization."""
    R = V.ring
    ynames = tuple(f"y{j}" for j in range(V.N + 1))
    while set(ynames) & set(R.names):
        ynames = tuple("y" + y for y in ynames)
    big = PolyRing(R.names + ynames, V.field)
    gens = [big.var(y) - big.convert(s) for y, s in zip(ynames, V.sections)]
    if V.hypersurface is not None:
        gens.append(big.convert(V.hypersurface))
    return eliminate(Ideal(big, gens), len(R.names))


