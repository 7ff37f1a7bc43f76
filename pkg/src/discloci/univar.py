"""Dense univariate polynomials over QQ or GF(p): root finding and factor-degree patterns.

Coefficient lists run from the constant term upward.
"""

from __future__ import annotations

import random

import gmpy2

from .polyring import PolyRing, Polynomial, PrimeField, RationalField


def from_poly(f: Polynomial, var) -> list:
    i = f.ring.index(var)
    d = max(f.degree(), 0)
    out = [f.ring.field.zero] * (d + 1)
    for e, c in f.terms.items():
        if any(x for j, x in enumerate(e) if j != i):
            raise ValueError(f"{f} is not univariate in {f.ring.names[i]}")
        out[e[i]] = c
    return trim(out)


def to_poly(a: list, ring: PolyRing, var) -> Polynomial:
    i = ring.index(var)
    terms = {}
    for k, c in enumerate(a):
        if c:
            e = [0] * ring.nvars
            e[i] = k
            terms[tuple(e)] = c
    return Polynomial(ring, terms)


def trim(a: list) -> list:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


class UOps:
    """Arithmetic on coefficient lists over one field."""

    def __init__(self, field):
        self.F = field
        self.p = field.p if isinstance(field, PrimeField) else 0

    def norm(self, a):
        if self.p:
            a = [x % self.p for x in a]
        else:
            a = [gmpy2.mpq(x) for x in a]
        return trim(a)

    def add(self, a, b):
        n = max(len(a), len(b))
        return self.norm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def sub(self, a, b):
        n = max(len(a), len(b))
        return self.norm([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])

    def mul(self, a, b):
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self.norm(out)

    def divmod(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero polynomial")
        a = list(a)
        inv = self.F.inv(b[-1])
        q = [0] * max(len(a) - len(b) + 1, 0)
        p = self.p
        while len(a) >= len(b) and a:
            c = a[-1] * inv
            if p:
                c %= p
            shift = len(a) - len(b)
            q[shift] = c
            for i, y in enumerate(b):
                a[shift + i] -= c * y
                if p:
                    a[shift + i] %= p
            a = trim(a)
        return self.norm(q), self.norm(a)

    def rem(self, a, b):
        return self.divmod(a, b)[1]

    def monic(self, a):
        if not a:
            return a
        inv = self.F.inv(a[-1])
        return self.norm([x * inv for x in a])

    def gcd(self, a, b):
        a, b = trim(a), trim(b)
        while b:
            a, b = b, self.rem(a, b)
        return self.monic(a)

    def deriv(self, a):
        return self.norm([i * a[i] for i in range(1, len(a))])

    def powmod(self, a, k, m):
        result = [1]
        base = self.rem(a, m)
        while k:
            if k & 1:
                result = self.rem(self.mul(result, base), m)
            k >>= 1
            if k:
                base = self.rem(self.mul(base, base), m)
        return result

    def eval(self, a, x):
        acc = 0
        for c in reversed(a):
            acc = acc * x + c
            if self.p:
                acc %= self.p
        return acc

    def squarefree(self, a):
        a = trim(a)
        if len(a) <= 1:
            return [1] if a else []
        g = self.gcd(a, self.deriv(a))
        return self.monic(self.divmod(a, g)[0])

    def multiplicity(self, a, r):
        """Order of vanishing of a at x = r."""
        lin = self.norm([-r, 1])
        k = 0
        while a:
            q, rm = self.divmod(a, lin)
            if rm:
                break
            a = q
            k += 1
        return k

    # -- roots
    def roots(self, a, seed: int = 0) -> list:
        """Distinct roots in the base field, sorted."""
        a = trim(a)
        if len(a) <= 1:
            return []
        if self.p:
            return sorted(self._roots_mod_p(a, random.Random(seed)))
        return sorted(self._rational_roots(a))

    def _roots_mod_p(self, a, rng):
        p = self.p
        a = self.monic(a)
        xp = self.powmod([0, 1], p, a)
        g = self.gcd(a, self.sub(xp, [0, 1]))
        out = []
        self._split(g, rng, out)
        return out

    def _split(self, g, rng, out):
        p = self.p
        d = len(g) - 1
        if d <= 0:
            return
        if d == 1:
            out.append((-g[0] * self.F.inv(g[1])) % p)
            return
        if p == 2:
            for r in (0, 1):
                if self.eval(g, r) == 0:
                    out.append(r)
            return
        while True:
            shift = rng.randrange(p)
            h = self.powmod([shift, 1], (p - 1) // 2, g)
            f = self.gcd(g, self.sub(h, [1]))
            if 0 < len(f) - 1 < d:
                self._split(f, rng, out)
                self._split(self.divmod(g, f)[0], rng, out)
                return

    def _rational_roots(self, a):
        den = 1
        for c in a:
            den = gmpy2.lcm(den, gmpy2.mpq(c).denominator)
        ints = [int(gmpy2.mpq(c) * den) for c in a]
        k = 0
        while ints[k] == 0:
            k += 1
        out = {gmpy2.mpq(0)} if k else set()
        ints = ints[k:]
        if len(ints) <= 1:
            return out
        for num in _divisors(abs(ints[0])):
            for dd in _divisors(abs(ints[-1])):
                for sgn in (1, -1):
                    r = gmpy2.mpq(sgn * num, dd)
                    acc = gmpy2.mpq(0)
                    for c in reversed(ints):
                        acc = acc * r + c
                    if acc == 0:
                        out.add(r)
        return out

    def degree_pattern(self, a) -> dict[int, int]:
        """Degrees of the irreducible factors of a squarefree a over GF(p) (distinct-degree split)."""
        if not self.p:
            raise ValueError("degree patterns are computed over prime fields")
        p = self.p
        f = self.monic(trim(a))
        pattern: dict[int, int] = {}
        h = [0, 1]
        d = 0
        while len(f) - 1 > 0:
            d += 1
            if 2 * d > len(f) - 1:
                pattern[len(f) - 1] = pattern.get(len(f) - 1, 0) + 1
                break
            h = self.powmod(h, p, f)
            g = self.gcd(f, self.sub(h, [0, 1]))
            if len(g) > 1:
                pattern[d] = pattern.get(d, 0) + (len(g) - 1) // d
                f = self.divmod(f, g)[0]
                h = self.rem(h, f) if len(f) > 1 else h
        return pattern


def _divisors(n: int) -> list[int]:
    n = int(n)
    if n == 0:
        return [1]
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def is_rational_field(F) -> bool:
    return isinstance(F, RationalField)
