"""Gröbner bases (Buchberger with Gebauer–Möller pair pruning), elimination,
saturation, and Hilbert-function invariants read off the leading-term staircase."""

from __future__ import annotations

import heapq
import math
from functools import lru_cache

from .polyring import (
    GREVLEX, MonomialOrder, ParseError, PolyRing, Polynomial, PrimeField,
    RingMismatch, block_order, parse_field,
)

__all__ = [
    "Ideal", "GroebnerBasis", "buchberger", "normal_form", "eliminate", "saturate",
    "saturate_ideal", "saturate_irrelevant", "intersect", "member", "radical_member",
    "dimension_degree", "quotient_colength", "hilbert_numerator", "fresh_name",
    "format_ideal", "parse_ideal",
]

_BITS = 16
_FIELD_MASK = (1 << _BITS) - 1
_MAX_EXP = 1 << (_BITS - 1)


class _Packing:
    """Exponent vectors packed into one int (variable 0 most significant), with a
    linear integer key reproducing the monomial order, so products add keys."""

    def __init__(self, nvars: int, order: MonomialOrder):
        self.n = nvars
        self.order = order
        self.shifts = [(nvars - 1 - i) * _BITS for i in range(nvars)]
        self.guard = sum(1 << (s + _BITS - 1) for s in self.shifts)
        self.low = sum(1 << s for s in self.shifts)
        if order.kind == "block":
            k = order.k
            self.split = k
            self.width = (nvars - k + 1) * _BITS + 2

    def pack(self, e) -> int:
        m = 0
        for x, s in zip(e, self.shifts):
            if x >= _MAX_EXP:
                raise OverflowError(f"exponent {x} too large")
            m |= x << s
        return m

    def unpack(self, m: int) -> tuple:
        return tuple((m >> s) & _FIELD_MASK for s in self.shifts)

    def key(self, e) -> int:
        kind = self.order.kind
        if kind == "lex":
            return self.pack(e)
        if kind == "grevlex":
            return _grevlex_int(e)
        k = self.split
        return (_grevlex_int(e[:k]) << self.width) + _grevlex_int(e[k:])

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        g = self.guard
        ge = (((a | g) - b) & g) >> (_BITS - 1)
        mask = ge * _FIELD_MASK
        return (a & mask) | (b & ~mask)

    def coprime(self, a: int, b: int) -> bool:
        return self.lcm(a, b) == a + b

    def degree(self, m: int) -> int:
        return sum(self.unpack(m))


def _grevlex_int(e) -> int:
    n = len(e)
    d = sum(e)
    acc = 0
    for i, x in enumerate(e):
        acc += x << (i * _BITS)
    return (d << (n * _BITS)) - acc


class _EPoly:
    __slots__ = ("terms", "lm", "lk")

    def __init__(self, terms):
        # terms: list of (key, mono, coeff) in decreasing key order, leading coeff 1
        self.terms = terms
        self.lk, self.lm, _ = terms[0]


class _Engine:
    def __init__(self, ring: PolyRing, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.pk = _Packing(ring.nvars, order)
        F = ring.field
        self.p = F.p if isinstance(F, PrimeField) else 0
        self.F = F

    # -- conversion
    def load(self, f: Polynomial) -> list:
        pk = self.pk
        terms = [(pk.key(e), pk.pack(e), c) for e, c in f.terms.items()]
        terms.sort(reverse=True, key=lambda t: t[0])
        return terms

    def dump(self, terms) -> Polynomial:
        unpack = self.pk.unpack
        return Polynomial(self.ring, {unpack(m): c for _, m, c in terms})

    def monic(self, terms):
        lc = terms[0][2]
        if lc == 1:
            return terms
        inv = self.F.inv(lc)
        p = self.p
        if p:
            return [(k, m, c * inv % p) for k, m, c in terms]
        return [(k, m, c * inv) for k, m, c in terms]

    # -- reduction
    def reduce(self, terms, basis, tail=True):
        """Remainder of `terms` modulo monic `basis` (list of _EPoly)."""
        if not terms:
            return []
        p = self.p
        divides = self.pk.divides
        acc = {m: c for _, m, c in terms}
        heap = [(-k, m) for k, m, _ in terms]
        heapq.heapify(heap)
        rem = []
        pop, push = heapq.heappop, heapq.heappush
        lms = [(g.lm, g) for g in basis]
        while heap:
            negk, m = pop(heap)
            c = acc.pop(m, None)
            if c is None:
                continue
            red = None
            for lm, g in lms:
                if divides(lm, m):
                    red = g
                    break
            if red is None:
                rem.append((-negk, m, c))
                if not tail:
                    while heap:
                        negk, m = pop(heap)
                        c = acc.pop(m, None)
                        if c is not None:
                            rem.append((-negk, m, c))
                    break
                continue
            shift = m - red.lm
            kshift = -negk - red.lk
            gterms = red.terms
            for idx in range(1, len(gterms)):
                gk, gm, gc = gterms[idx]
                nm = gm + shift
                v = acc.get(nm)
                if v is None:
                    v = -c * gc
                    if p:
                        v %= p
                    if v:
                        acc[nm] = v
                        push(heap, (-(gk + kshift), nm))
                else:
                    v = v - c * gc
                    if p:
                        v %= p
                    if v:
                        acc[nm] = v
                    else:
                        del acc[nm]
        return rem

    def spoly(self, f: _EPoly, g: _EPoly, lcm_m: int):
        p = self.p
        sf = lcm_m - f.lm
        sg = lcm_m - g.lm
        kf = self._key_of(sf)
        kg = self._key_of(sg)
        acc = {}
        keys = {}
        for k, m, c in f.terms[1:]:
            nm = m + sf
            acc[nm] = c
            keys[nm] = k + kf
        for k, m, c in g.terms[1:]:
            nm = m + sg
            v = acc.get(nm, 0) - c
            if p:
                v %= p
            keys[nm] = k + kg
            if v:
                acc[nm] = v
            else:
                acc.pop(nm, None)
        out = [(keys[m], m, c) for m, c in acc.items()]
        out.sort(reverse=True, key=lambda t: t[0])
        return out

    def _key_of(self, m: int) -> int:
        return self.pk.key(self.pk.unpack(m))

    # -- Buchberger
    def groebner(self, polys: list[Polynomial]) -> list[_EPoly]:
        pk = self.pk
        G: list[_EPoly] = []
        active: list[int] = []
        pairs: list = []
        counter = 0

        def update(h: int):
            nonlocal pairs, active, counter
            lh = G[h].lm
            cands = list(active)
            C = [(g, pk.lcm(lh, G[g].lm)) for g in cands]
            D = []
            while C:
                g1, L1 = C.pop()
                if pk.coprime(lh, G[g1].lm) or not any(
                    pk.divides(L2, L1) for _, L2 in C
                ) and not any(pk.divides(L2, L1) for _, L2 in D):
                    D.append((g1, L1))
            E = [(g, L) for g, L in D if not pk.coprime(lh, G[g].lm)]
            kept = []
            for item in pairs:
                _, _, _, i, j, L = item
                if pk.divides(lh, L) and pk.lcm(G[i].lm, lh) != L and pk.lcm(G[j].lm, lh) != L:
                    continue
                kept.append(item)
            for g, L in E:
                counter += 1
                kept.append((pk.degree(L), self._key_of(L), counter, g, h, L))
            heapq.heapify(kept)
            pairs = kept
            active = [g for g in active if not pk.divides(lh, G[g].lm)] + [h]

        loaded = [self.load(f) for f in polys if f]
        loaded.sort(key=lambda t: t[0][0])
        for terms in loaded:
            r = self.reduce(terms, [G[i] for i in active])
            if r:
                G.append(_EPoly(self.monic(r)))
                update(len(G) - 1)
        while pairs:
            _, _, _, i, j, L = heapq.heappop(pairs)
            s = self.spoly(G[i], G[j], L)
            r = self.reduce(s, [G[a] for a in active])
            if r:
                G.append(_EPoly(self.monic(r)))
                update(len(G) - 1)
        return self.interreduce([G[i] for i in active])

    def interreduce(self, basis: list[_EPoly]) -> list[_EPoly]:
        pk = self.pk
        basis = sorted(basis, key=lambda g: g.lk)
        minimal = []
        for g in basis:
            if not any(pk.divides(h.lm, g.lm) for h in minimal):
                minimal.append(g)
        out = []
        for idx, g in enumerate(minimal):
            others = minimal[:idx] + minimal[idx + 1:]
            tail = self.reduce(g.terms[1:], others)
            out.append(_EPoly([g.terms[0]] + tail))
        out.sort(key=lambda g: g.lk)
        return out


class GroebnerBasis:
    """Reduced, monic, interreduced basis; elements ascend by leading monomial."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, elements: list[Polynomial], _engine=None, _epolys=None):
        self.ring = ring
        self.order = order
        self.elements = elements
        self._engine = _engine
        self._epolys = _epolys

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.order == other.order and set(self.elements) == set(other.elements))

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def leading_exponents(self) -> list[tuple]:
        return [g.leading_term(self.order)[0] for g in self.elements]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatch(f"ring mismatch: {f.ring} vs {self.ring}")
        eng = self._engine or _Engine(self.ring, self.order)
        if self._epolys is None:
            self._epolys = [_EPoly(eng.load(g)) for g in self.elements]
            self._engine = eng
        return eng.dump(eng.reduce(eng.load(f), self._epolys))

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()


def buchberger(I: Ideal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    eng = _Engine(I.ring, order)
    eps = eng.groebner(I.gens)
    return GroebnerBasis(I.ring, order, [eng.dump(g.terms) for g in eps], eng, eps)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


class Ideal:
    def __init__(self, ring: PolyRing, gens=()):
        conv = []
        for g in gens:
            g = ring(g) if not isinstance(g, Polynomial) else g
            if g.ring != ring:
                raise RingMismatch(f"generator {g} lives in {g.ring}, not {ring}")
            if g:
                conv.append(g)
        self.ring = ring
        self.gens = conv
        self._gb: dict = {}

    def __repr__(self):
        return f"Ideal({self.ring!r}, [{', '.join(map(str, self.gens))}])"

    def groebner(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        if order not in self._gb:
            self._gb[order] = buchberger(self, order)
        return self._gb[order]

    def reduced(self) -> Ideal:
        """The same ideal generated by its reduced grevlex basis."""
        out = Ideal(self.ring, self.groebner().elements)
        out._gb[GREVLEX] = self._gb[GREVLEX]
        return out

    def __add__(self, other):
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + list(other))

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.ring, frozenset(self.groebner().elements)))

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, f) -> bool:
        return self.groebner().contains(self.ring(f))

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains(g) for g in other.gens)

    def is_principal(self) -> bool:
        return len(self.groebner().elements) <= 1

    def map(self, ring: PolyRing) -> Ideal:
        return Ideal(ring, [ring.convert(g) for g in self.gens])

    def subs(self, assignment: dict, ring: PolyRing | None = None) -> Ideal:
        dest = ring or self.ring
        return Ideal(dest, [g.subs(assignment, dest) for g in self.gens])


# ---------------------------------------------------------------- elimination

def fresh_name(ring: PolyRing, stem: str = "w") -> str:
    name = f"_{stem}"
    while name in ring.names:
        name = "_" + name
    return name


def eliminate(I: Ideal, variables) -> Ideal:
    """I ∩ k[remaining variables]. `variables` is a count of leading variables or a list of names."""
    ring = I.ring
    if isinstance(variables, int):
        names = list(ring.names[:variables])
    else:
        names = [ring.names[ring.index(v)] for v in variables]
    rest = [v for v in ring.names if v not in names]
    work = PolyRing(names + rest, ring.field)
    target = PolyRing(rest, ring.field)
    k = len(names)
    J = Ideal(work, [work.convert(g) for g in I.gens])
    G = J.groebner(block_order(k))
    keep = [g for g in G.elements if not any(any(e[:k]) for e in g.terms)]
    out = Ideal(target, [target.convert(g) for g in keep])
    return out


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """I : f^∞ by eliminating a fresh w from I + (1 − w·f)."""
    if f.is_zero():
        raise ValueError("cannot saturate by zero")
    if f.is_constant():
        return I
    ring = I.ring
    w = fresh_name(ring)
    big = ring.extend(front=[w])
    gens = [big.convert(g) for g in I.gens]
    gens.append(big.one() - big.var(w) * big.convert(f))
    return eliminate(Ideal(big, gens), 1).map(ring)


def saturate_ideal(I: Ideal, J: Ideal) -> Ideal:
    """I : J^∞ as the intersection of the saturations by each generator of J."""
    parts = [saturate(I, g) for g in J.gens]
    if not parts:
        return Ideal(I.ring, [I.ring.one()])
    out = parts[0]
    for P in parts[1:]:
        out = intersect(out, P)
    return out


def saturate_irrelevant(I: Ideal, variables) -> Ideal:
    variables = list(variables)
    if not variables:
        raise ValueError("empty variable block")
    ring = I.ring
    return saturate_ideal(I, Ideal(ring, [ring.var(v) for v in variables]))


def intersect(I: Ideal, J: Ideal) -> Ideal:
    if I.ring != J.ring:
        raise RingMismatch(f"ring mismatch: {I.ring} vs {J.ring}")
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    ring = I.ring
    t = fresh_name(ring, "t")
    big = ring.extend(front=[t])
    T = big.var(t)
    gens = [T * big.convert(g) for g in I.gens] + [(big.one() - T) * big.convert(g) for g in J.gens]
    return eliminate(Ideal(big, gens), 1).map(ring)


def member(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


def radical_member(f: Polynomial, I: Ideal) -> bool:
    """f ∈ √I iff 1 ∈ I + (1 − w·f)."""
    ring = I.ring
    if f.is_zero():
        return True
    w = fresh_name(ring)
    big = ring.extend(front=[w])
    gens = [big.convert(g) for g in I.gens] + [big.one() - big.var(w) * big.convert(f)]
    return Ideal(big, gens).is_unit()


# ---------------------------------------------------------------- Hilbert data

def _minimalize(gens):
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _poly_add(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _shift(a, k):
    return [0] * k + list(a)


@lru_cache(maxsize=65536)
def _numerator(gens: tuple) -> tuple:
    if not gens:
        return (1,)
    n = len(gens[0])
    counts = [0] * n
    for g in gens:
        for i, x in enumerate(g):
            if x:
                counts[i] += 1
    if max(counts) <= 1:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1] if d else [0])
        return tuple(out)
    var = max(range(n), key=lambda i: counts[i])
    exps = sorted(g[var] for g in gens if g[var])
    k = exps[len(exps) // 2]
    pivot = tuple(k if i == var else 0 for i in range(n))
    plus = _minimalize([g for g in gens if g[var] < k] + [pivot])
    if plus == gens:
        k = 1
        pivot = tuple(k if i == var else 0 for i in range(n))
        plus = _minimalize([g for g in gens if g[var] < k] + [pivot])
    colon = _minimalize([g[:var] + (max(g[var] - k, 0),) + g[var + 1:] for g in gens])
    return tuple(_poly_add(_numerator(plus), _shift(_numerator(colon), k)))


def hilbert_numerator(gens, nvars: int) -> list[int]:
    """Numerator N(t) of the Hilbert series N(t)/(1−t)^n of k[x]/(gens) for monomial gens."""
    gens = [tuple(g) for g in gens]
    if not gens:
        return [1]
    return list(_numerator(_minimalize(gens)))


def _divide_one_minus_t(a):
    # a(t) / (1 - t), assuming a(1) = 0
    out = []
    acc = 0
    for x in a[:-1]:
        acc += x
        out.append(acc)
    return out or [0]


def _hilbert_data(G: GroebnerBasis):
    n = G.ring.nvars
    if G.is_unit():
        return None
    num = hilbert_numerator(G.leading_exponents(), n)
    r = 0
    while r < n and sum(num) == 0:
        num = _divide_one_minus_t(num)
        r += 1
    return n - r, sum(num)


def dimension_degree(I: Ideal) -> tuple[int, int]:
    """(Krull dimension, degree) of ring/I; the unit ideal gives (-1, 0)."""
    data = _hilbert_data(I.groebner(GREVLEX))
    if data is None:
        return -1, 0
    return data


def quotient_colength(I: Ideal):
    """dim_k ring/I, or math.inf when the quotient is infinite."""
    G = I.groebner(GREVLEX)
    if G.is_unit():
        return 0
    dim, deg = _hilbert_data(G)
    return deg if dim == 0 else math.inf


# ---------------------------------------------------------------- text format

def format_ideal(I: Ideal) -> str:
    lines = [f"ring: {I.ring.declaration()}"]
    lines += [str(g) for g in I.gens]
    return "\n".join(lines) + "\n"


def parse_ideal(text: str) -> Ideal:
    ring = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ring is None:
            head, _, rest = line.partition(":")
            if head.strip() != "ring":
                raise ParseError("expected 'ring: <field> <variables>' header", lineno, 1)
            parts = rest.split()
            if len(parts) < 1:
                raise ParseError("ring declaration needs a field", lineno, len(head) + 2)
            try:
                ring = PolyRing(parts[1:], parse_field(parts[0]))
            except ValueError as exc:
                raise ParseError(str(exc), lineno, len(head) + 2) from None
            continue
        col = len(line) - len(line.lstrip()) + 1
        gens.append(ring.parse(line.strip(), lineno, col))
    if ring is None:
        raise ParseError("missing ring header", 1, 1)
    return Ideal(ring, gens)
