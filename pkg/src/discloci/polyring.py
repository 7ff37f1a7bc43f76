"""Sparse multivariate polynomials over QQ and GF(p)."""

from __future__ import annotations

import operator
import re
from fractions import Fraction
from functools import lru_cache

import gmpy2

__all__ = [
    "Field", "RationalField", "PrimeField", "QQ", "GF", "parse_field",
    "MonomialOrder", "LEX", "GREVLEX", "block_order",
    "PolyRing", "Polynomial", "ParseError", "RingMismatch",
    "gcd", "lcm", "divexact", "squarefree_part", "content_free_monic",
]

DEFAULT_PRIME = 32003


class RingMismatch(ValueError):
    pass


class ParseError(ValueError):
    """Malformed polynomial text; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


# ---------------------------------------------------------------- fields

class Field:
    characteristic: int
    name: str

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


class RationalField(Field):
    characteristic = 0
    name = "QQ"
    spec = "q"

    def __call__(self, x):
        if isinstance(x, str):
            return gmpy2.mpq(x)
        if isinstance(x, Fraction):
            return gmpy2.mpq(x.numerator, x.denominator)
        return gmpy2.mpq(x)

    zero = gmpy2.mpq(0)
    one = gmpy2.mpq(1)

    def inv(self, a):
        return 1 / gmpy2.mpq(a)

    def div(self, a, b):
        return gmpy2.mpq(a) / b

    def fmt(self, c) -> str:
        return str(c)

    def is_integer(self, c) -> bool:
        return c.denominator == 1

    def random(self, rng, bound=20):
        return gmpy2.mpq(rng.randint(-bound, bound))


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"
        self.spec = f"gf:{p}"
        self.zero = 0
        self.one = 1

    def __call__(self, x):
        p = self.p
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, (Fraction,)) or hasattr(x, "denominator"):
            num, den = int(x.numerator), int(x.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
            return num * pow(den, -1, p) % p
        return int(x) % p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def fmt(self, c) -> str:
        # symmetric representative keeps small negatives readable
        return str(c - self.p if c > self.p // 2 else c)

    def is_integer(self, c) -> bool:
        return True

    def random(self, rng, bound=None):
        return rng.randrange(self.p)


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str) -> Field:
    """Accept `q`, `QQ`, `gf:<p>` or `GF(<p>)`."""
    s = spec.strip()
    if s.lower() in ("q", "qq"):
        return QQ
    m = re.fullmatch(r"(?i)gf[:(](\d+)\)?", s)
    if m:
        return GF(int(m.group(1)))
    raise ValueError(f"unknown field {spec!r}; expected q or gf:<p>")


# ---------------------------------------------------------------- orders

class MonomialOrder:
    """lex, grevlex, or block(k): grevlex on the first k variables, then grevlex on the rest."""

    def __init__(self, kind: str, k: int = 0):
        if kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown order {kind!r}")
        self.kind = kind
        self.k = k if kind == "block" else 0

    def key(self, e: tuple):
        if self.kind == "lex":
            return e
        if self.kind == "grevlex":
            return _grevlex_key(e)
        k = self.k
        return (_grevlex_key(e[:k]), _grevlex_key(e[k:]))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.k) == (other.kind, other.k)

    def __hash__(self):
        return hash((self.kind, self.k))

    def __repr__(self):
        return f"block({self.k})" if self.kind == "block" else self.kind


def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(k: int) -> MonomialOrder:
    return MonomialOrder("block", k)


# ---------------------------------------------------------------- rings

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class PolyRing:
    def __init__(self, names, field: Field = QQ):
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"repeated variable in {names}")
        for v in names:
            if not _IDENT.match(v):
                raise ValueError(f"bad variable name {v!r}")
        self.names = names
        self.nvars = len(names)
        self.field = field
        self._index = {v: i for i, v in enumerate(names)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"{self.field.name}[{', '.join(self.names)}]"

    def declaration(self) -> str:
        return f"{self.field.spec} {' '.join(self.names)}"

    def index(self, v) -> int:
        if isinstance(v, int):
            if not 0 <= v < self.nvars:
                raise ValueError(f"variable index {v} out of range for {self}")
            return v
        if isinstance(v, Polynomial):
            e = v.as_variable()
            return e
        try:
            return self._index[v]
        except KeyError:
            raise ValueError(f"unknown variable {v!r} in {self}") from None

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, v) -> Polynomial:
        i = self.index(v)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list[Polynomial]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, e, c=1) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {tuple(e): c} if c else {})

    def from_dict(self, terms: dict) -> Polynomial:
        conv = self.field
        out = {}
        for e, c in terms.items():
            c = conv(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def __call__(self, x) -> Polynomial:
        if isinstance(x, Polynomial):
            if x.ring == self:
                return x
            return self.convert(x)
        if isinstance(x, str):
            return self.parse(x)
        return self.const(x)

    def convert(self, f: Polynomial) -> Polynomial:
        """Map f into this ring by variable name; coefficients are re-read in this field."""
        pos = []
        for i, v in enumerate(f.ring.names):
            if v in self._index:
                pos.append(self._index[v])
            elif any(e[i] for e in f.terms):
                raise RingMismatch(f"variable {v} of {f.ring} is missing from {self}")
            else:
                pos.append(None)
        conv = self.field
        out = {}
        for e, c in f.terms.items():
            ne = [0] * self.nvars
            for i, x in enumerate(e):
                if x:
                    ne[pos[i]] = x
            c2 = conv(c)
            if c2:
                key = tuple(ne)
                out[key] = conv(out.get(key, 0) + c2)
                if not out[key]:
                    del out[key]
        return Polynomial(self, out)

    def with_field(self, field: Field) -> PolyRing:
        return PolyRing(self.names, field)

    def drop(self, names) -> PolyRing:
        names = set(names)
        return PolyRing([v for v in self.names if v not in names], self.field)

    def extend(self, front=(), back=()) -> PolyRing:
        return PolyRing(tuple(front) + self.names + tuple(back), self.field)

    def parse(self, text: str, line: int = 1, col0: int = 1) -> Polynomial:
        return _Parser(self, text, line, col0).parse()


# ---------------------------------------------------------------- polynomials

class Polynomial:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- structure
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or hasattr(other, "denominator"):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.terms:
            return self.ring.field.zero
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.terms.values()))

    def as_variable(self) -> int:
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if c == 1 and sum(e) == 1:
                return e.index(1)
        raise ValueError(f"{self} is not a variable")

    def degree(self, v=None) -> int:
        if not self.terms:
            return -1
        if v is None:
            return max(sum(e) for e in self.terms)
        i = self.ring.index(v)
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def variables(self) -> list[int]:
        used = [False] * self.ring.nvars
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return [i for i, u in enumerate(used) if u]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        key = order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key
        return max(self.terms.items(), key=lambda t: key(t[0]))

    def leading_coefficient(self, order: MonomialOrder = GREVLEX):
        return self.leading_term(order)[1]

    def monic(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        return self.scale(self.ring.field.inv(lc))

    # -- arithmetic
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, _add(self.terms, other.terms, self.ring.field, 1))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Polynomial(self.ring, _add(self.terms, other.terms, self.ring.field, -1))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        return Polynomial(self.ring, _mul(self.terms, other.terms, self.ring.field))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> Polynomial:
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero()
        if isinstance(F, PrimeField):
            p = F.p
            return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()})
        return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, m: tuple, c=None) -> Polynomial:
        out = Polynomial(self.ring, {tuple(map(operator.add, e, m)): v for e, v in self.terms.items()})
        return out if c is None else out.scale(c)

    # -- calculus and substitution
    def diff(self, v) -> Polynomial:
        i = self.ring.index(v)
        F = self.ring.field
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                c2 = F(c * k) if isinstance(F, PrimeField) else c * k
                if c2:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = c2
        return Polynomial(self.ring, out)

    def gradient(self) -> list[Polynomial]:
        return [self.diff(i) for i in range(self.ring.nvars)]

    def subs(self, assignment: dict, ring: PolyRing | None = None) -> Polynomial:
        """Simultaneous substitution. Keys are variable names or indices; values are
        polynomials (or scalars) in the destination ring, which defaults to this ring."""
        dest = ring or self.ring
        images = []
        for i, v in enumerate(self.ring.names):
            val = assignment.get(v, assignment.get(i))
            if val is None:
                if v not in dest._index:
                    if any(e[i] for e in self.terms):
                        raise RingMismatch(f"no image for {v} in {dest}")
                    images.append(None)
                    continue
                val = dest.var(v)
            images.append(dest(val) if not isinstance(val, Polynomial) else val)
            if images[-1].ring != dest:
                raise RingMismatch(f"image of {v} lives in {images[-1].ring}, expected {dest}")
        powers = [dict() for _ in images]
        result = {}
        F = dest.field
        for e, c in self.terms.items():
            term = dest.const(F(c) if dest.field != self.ring.field else c)
            for i, k in enumerate(e):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        cache[k] = images[i] ** k
                    term = term * cache[k]
            result = _add(result, term.terms, F, 1)
        return Polynomial(dest, result)

    def evaluate(self, point) -> object:
        """Value at a point given as a sequence of field elements."""
        F = self.ring.field
        total = F.zero
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            total = total + t
        return F(total) if isinstance(F, PrimeField) else total

    def homogenize(self, v) -> Polynomial:
        i = self.ring.index(v)
        d = self.degree()
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] += d - sum(e)
            out[tuple(ne)] = c
        return Polynomial(self.ring, out)

    def coefficients_in(self, v) -> dict[int, Polynomial]:
        """Group terms by the power of v; coefficients stay in this ring, free of v."""
        i = self.ring.index(v)
        groups: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            groups.setdefault(k, {})[ne] = c
        return {k: Polynomial(self.ring, t) for k, t in groups.items()}

    # -- text
    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms(GREVLEX):
            s = F.fmt(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {self.ring!r})"


def _add(a: dict, b: dict, F: Field, sign: int) -> dict:
    out = dict(a)
    mod = F.p if isinstance(F, PrimeField) else None
    for e, c in b.items():
        v = out.get(e, 0) + (c if sign == 1 else -c)
        if mod:
            v %= mod
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(a: dict, b: dict, F: Field) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    add = operator.add
    get = out.get
    for e2, c2 in b.items():
        for e1, c1 in a.items():
            e = tuple(map(add, e1, e2))
            out[e] = get(e, 0) + c1 * c2
    if isinstance(F, PrimeField):
        p = F.p
        return {e: v % p for e, v in out.items() if v % p}
    return {e: v for e, v in out.items() if v}


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str, line: int, col0: int):
        self.ring = ring
        self.text = text
        self.line = line
        self.col0 = col0
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise self.error(f"unexpected character {text[start]!r}", start)
            start = m.start(m.lastindex)
            kind = ("num", "id", "op")[m.lastindex - 1]
            val = m.group(m.lastindex)
            if val == "**":
                val = "^"
            self.tokens.append((kind, val, start))
            pos = m.end()
        self.i = 0
        self.end = len(text)

    def error(self, msg, pos):
        return ParseError(msg, self.line, self.col0 + pos)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.end)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise self.error("empty polynomial", 0)
        f = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            raise self.error(f"unexpected {val!r}", pos)
        return f

    def expr(self):
        kind, val, pos = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            # unary sign inside a term, as in "x + -2*y"
            self.take()
            t = self.term()
            return -t if val == "-" else t
        acc = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind == "op" and val == "/":
                # division by an integer constant, as in "x/3"
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num" or int(v2) == 0:
                    raise self.error("can only divide by a nonzero integer", p2)
                try:
                    acc = acc.scale(self.ring.field(Fraction(1, int(v2))))
                except ZeroDivisionError as exc:
                    raise self.error(str(exc), p2) from None
            elif kind in ("num", "id") or (kind == "op" and val == "("):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.primary()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise self.error("exponent must be a non-negative integer", pos)
            base = base ** int(val)
        return base

    def primary(self):
        kind, val, pos = self.take()
        if kind == "num":
            k2, v2, p2 = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, p3 = self.take()
                if k3 != "num":
                    raise self.error("denominator must be an integer", p3)
                if int(v3) == 0:
                    raise self.error("zero denominator", p3)
                try:
                    return self.ring.const(Fraction(int(val), int(v3)))
                except ZeroDivisionError as exc:
                    raise self.error(str(exc), p3) from None
            return self.ring.const(int(val))
        if kind == "id":
            if val not in self.ring._index:
                raise self.error(f"unknown variable {val!r} (ring has {', '.join(self.ring.names)})", pos)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            k2, v2, p2 = self.take()
            if v2 != ")":
                raise self.error("expected ')'", p2)
            return inner
        if kind is None:
            raise self.error("unexpected end of input", pos)
        raise self.error(f"unexpected {val!r}", pos)


# ---------------------------------------------------------------- gcd and friends

def content_free_monic(f: Polynomial) -> Polynomial:
    """Scale f so its grevlex leading coefficient is 1."""
    return f.monic(GREVLEX)


def divexact(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, raising ArithmeticError when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    q, r = divmod_lex(f, g)
    if r:
        raise ArithmeticError(f"{g} does not divide {f}")
    return q


def divmod_lex(f: Polynomial, g: Polynomial):
    ring = f.ring
    F = ring.field
    lm, lc = g.leading_term(LEX)
    inv = F.inv(lc)
    mod = F.p if isinstance(F, PrimeField) else None
    rem = dict(f.terms)
    quo = {}
    out_rem = {}
    gterms = list(g.terms.items())
    while rem:
        e = max(rem)
        c = rem[e]
        if all(a >= b for a, b in zip(e, lm)):
            shift = tuple(a - b for a, b in zip(e, lm))
            q = c * inv
            if mod:
                q %= mod
            quo[shift] = q
            for ge, gc in gterms:
                ne = tuple(map(operator.add, ge, shift))
                v = rem.get(ne, 0) - q * gc
                if mod:
                    v %= mod
                if v:
                    rem[ne] = v
                else:
                    rem.pop(ne, None)
        else:
            out_rem[e] = c
            del rem[e]
    return Polynomial(ring, quo), Polynomial(ring, out_rem)


def _unit_normal(f: Polynomial) -> Polynomial:
    """Remove numeric content: coprime integer coefficients over QQ, monic over GF(p)."""
    if not f.terms:
        return f
    F = f.ring.field
    if isinstance(F, PrimeField):
        return f.monic(LEX)
    nums = [int(c.numerator) for c in f.terms.values()]
    dens = [int(c.denominator) for c in f.terms.values()]
    g = 0
    for n in nums:
        g = gmpy2.gcd(g, n)
    lden = 1
    for d in dens:
        lden = gmpy2.lcm(lden, d)
    scale = gmpy2.mpq(lden, g)
    if f.leading_coefficient(LEX) < 0:
        scale = -scale
    return f.scale(scale)


def _content(f: Polynomial, i: int) -> Polynomial:
    g = f.ring.zero()
    for c in f.coefficients_in(i).values():
        g = _gcd(g, c)
        if g.is_constant() and g:
            return f.ring.one()
    return g


def _prem(a: Polynomial, b: Polynomial, i: int) -> Polynomial:
    db = b.degree(i)
    cb = b.coefficients_in(i)
    lb = cb[db]
    e = [0] * a.ring.nvars
    r = a
    while r and r.degree(i) >= db:
        dr = r.degree(i)
        lr = r.coefficients_in(i)[dr]
        e[i] = dr - db
        r = r * lb - (b * lr).mul_monomial(tuple(e))
    return r


def _gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_zero():
        return _unit_normal(g)
    if g.is_zero():
        return _unit_normal(f)
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    vf, vg = set(f.variables()), set(g.variables())
    i = min(vf | vg)
    if i not in vf:
        return _gcd(f, _content(g, i))
    if i not in vg:
        return _gcd(_content(f, i), g)
    cf, cg = _content(f, i), _content(g, i)
    c = _gcd(cf, cg)
    a = _unit_normal(divexact(f, cf))
    b = _unit_normal(divexact(g, cg))
    if a.degree(i) < b.degree(i):
        a, b = b, a
    while b and b.degree(i) > 0:
        r = _prem(a, b, i)
        a = b
        if r.is_zero():
            b = r
        else:
            b = _unit_normal(divexact(r, _content(r, i)))
    h = a if b.is_zero() else f.ring.one()
    return _unit_normal(c * _unit_normal(divexact(h, _content(h, i))))


def gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Greatest common divisor by primitive pseudo-remainder sequences, grevlex-monic."""
    if f.ring != g.ring:
        raise RingMismatch(f"ring mismatch: {f.ring} vs {g.ring}")
    h = _gcd(f, g)
    return h.monic(GREVLEX) if h else h


def lcm(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.is_zero() or g.is_zero():
        return f.ring.zero()
    return divexact(f * g, gcd(f, g)).monic(GREVLEX)


def squarefree_part(f: Polynomial) -> Polynomial:
    """Product of the distinct irreducible factors of f, grevlex-monic."""
    if f.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if f.is_constant():
        return f.ring.one()
    g = f
    for i in f.variables():
        d = f.diff(i)
        if d:
            g = gcd(g, d)
    return divexact(f, g).monic(GREVLEX)
