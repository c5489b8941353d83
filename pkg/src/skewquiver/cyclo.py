"""Exact cyclotomic scalars and their reduction into a split prime field."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "CycloNumber",
    "PrimeEmbedding",
    "SearchExhausted",
    "DenominatorNotInvertible",
    "cyclotomic_polynomial",
    "totient",
    "choose_prime",
    "is_prime",
    "parse_cyclo",
]

SEARCH_CAP = 2**31


class SearchExhausted(RuntimeError):
    pass


class DenominatorNotInvertible(ArithmeticError):
    pass


def _poly_divmod(num, den):
    # integer polynomials, coefficient lists lowest degree first, den monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    rem = num[: len(den) - 1]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not any(rem)
    return tuple(num)


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _mobius(n):
    out, q = 1, 2
    while q * q <= n:
        if n % q == 0:
            n //= q
            if n % q == 0:
                return 0
            out = -out
        q += 1
    return -out if n > 1 else out


@lru_cache(maxsize=None)
def _normalized_traces(n):
    # Tr(zeta_n^k) / phi(n) = mu(m) / phi(m) with m = n / gcd(n, k)
    out = []
    for k in range(len(cyclotomic_polynomial(n)) - 1):
        m = n // math.gcd(n, k)
        out.append(Fraction(_mobius(m), totient(m)))
    return tuple(out)


def _reduce(coeffs, n):
    """Reduce a rational polynomial modulo Phi_n (monic)."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, d - 1, -1):
        top = c[k]
        if top:
            for i in range(d + 1):
                c[k - d + i] -= top * phi[i]
    c = c[:d] + [Fraction(0)] * max(0, d - len(c))
    return tuple(Fraction(x) for x in c)


@dataclass(frozen=True)
class CycloNumber:
    """An element of Q(zeta_level) in the power basis, reduced mod Phi_level."""

    level: int
    coeffs: tuple

    @classmethod
    def from_poly(cls, level, coeffs):
        return cls(level, _reduce(coeffs, level))

    @classmethod
    def rational(cls, value, level=1):
        return cls.from_poly(level, [Fraction(value)])

    @classmethod
    def zeta(cls, level, power=1):
        power %= level
        return cls.from_poly(level, [0] * power + [1])

    def lift(self, level: int) -> CycloNumber:
        if level == self.level:
            return self
        if level % self.level:
            raise ValueError(f"level {self.level} does not divide {level}")
        step = level // self.level
        poly = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for k, c in enumerate(self.coeffs):
            poly[k * step] = c
        return CycloNumber.from_poly(level, poly)

    def _common(self, other):
        if not isinstance(other, CycloNumber):
            other = CycloNumber.rational(other, self.level)
        if other.level == self.level:
            return self, other
        n = math.lcm(self.level, other.level)
        return self.lift(n), other.lift(n)

    def __add__(self, other):
        a, b = self._common(other)
        return CycloNumber(a.level, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.level, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycloNumber) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._common(other)
        if a.is_zero() or b.is_zero():
            return CycloNumber(a.level, tuple(Fraction(0) for _ in a.coeffs))
        if not any(a.coeffs[1:]):
            return CycloNumber(a.level, tuple(a.coeffs[0] * y for y in b.coeffs))
        if not any(b.coeffs[1:]):
            return CycloNumber(a.level, tuple(b.coeffs[0] * x for x in a.coeffs))
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CycloNumber.from_poly(a.level, prod)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, CycloNumber):
            try:
                other = CycloNumber.rational(other, self.level)
            except TypeError:
                return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # normalized trace is invariant under lifting, so equal values hash equal
        tr = _normalized_traces(self.level)
        return hash(sum(c * t for c, t in zip(self.coeffs, tr)))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"CycloNumber({self.level}, {str(self)!r})"

    def denominators(self):
        return [c.denominator for c in self.coeffs if c]


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?
        (?P<z>z(?:\s*\^\s*(?P<exp>[+-]?\d+))?)?\s*""",
    re.X,
)


def parse_cyclo(text, level: int) -> CycloNumber:
    """Parse literals like ``"z^2 - z + 1"``, ``"-1/2*z^-1"`` or ``3`` at a given level."""
    if isinstance(text, (int, Fraction)):
        return CycloNumber.rational(text, level)
    s = str(text).strip()
    if not s:
        raise ValueError("empty cyclotomic literal")
    pos = 0
    poly = [Fraction(0)] * level
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"cannot parse cyclotomic literal {text!r} at {pos}")
        if not m.group("coef") and not m.group("z"):
            raise ValueError(f"dangling sign in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        if m.group("z"):
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        else:
            exp = 0
        poly[exp % level] += coef
        pos = m.end()
        first = False
    return CycloNumber.from_poly(level, poly)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n):
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _primitive_root_of_unity(p, n):
    qs = _prime_factors(n)
    for g in range(2, p):
        w = pow(g, (p - 1) // n, p)
        if all(pow(w, n // q, p) != 1 for q in qs):
            return w
    return 1  # n == 1


@dataclass(frozen=True)
class PrimeEmbedding:
    """Ring map Z[1/m][zeta_level] -> F_p sending zeta_level to ``omega``."""

    p: int
    level: int
    omega: int
    safety_bound: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p <= self.safety_bound:
            raise ValueError(f"p={self.p} is not a prime above {self.safety_bound}")
        if (self.p - 1) % self.level:
            raise ValueError(f"p={self.p} is not 1 mod {self.level}")
        if pow(self.omega, self.level, self.p) != 1 or any(
            pow(self.omega, m, self.p) == 1 for m in range(1, self.level)
        ):
            raise ValueError("omega is not a primitive root of unity of the level")

    @classmethod
    def for_prime(cls, p: int, level: int, safety_bound: int = 1) -> PrimeEmbedding:
        """Embedding at a user-chosen prime (validated)."""
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if (p - 1) % level:
            raise ValueError(f"prime {p} is not 1 mod {level}")
        return cls(p, level, _primitive_root_of_unity(p, level), safety_bound)

    def root(self, n: int, power: int = 1) -> int:
        """Image of zeta_n ** power for n dividing the level."""
        if self.level % n:
            raise ValueError(f"level {n} does not divide embedding level {self.level}")
        return pow(self.omega, (self.level // n) * (power % n), self.p)

    def __call__(self, x) -> int:
        return embed(x, self)

    @lru_cache(maxsize=None)
    def log(self, value: int):
        """Exponent k with omega**k == value, or None."""
        w = 1
        for k in range(self.level):
            if w == value % self.p:
                return k
            w = w * self.omega % self.p
        return None


def choose_prime(level: int, safety_bound: int) -> PrimeEmbedding:
    """Smallest prime p = 1 (mod level) exceeding ``safety_bound``."""
    if level < 1 or safety_bound < 1:
        raise ValueError("level and bound must be positive")
    p = safety_bound + 1
    p += (1 - p) % level
    while p < SEARCH_CAP:
        if is_prime(p):
            return PrimeEmbedding(p, level, _primitive_root_of_unity(p, level), safety_bound)
        p += level
    raise SearchExhausted(f"no prime = 1 mod {level} between {safety_bound} and 2^31")


def embed(x, e: PrimeEmbedding) -> int:
    p = e.p
    if isinstance(x, int):
        return x % p
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise DenominatorNotInvertible(f"{x} has denominator divisible by {p}")
        return x.numerator * pow(x.denominator, -1, p) % p
    w = e.root(x.level)
    acc, wk = 0, 1
    for c in x.coeffs:
        if c:
            if c.denominator % p == 0:
                raise DenominatorNotInvertible(f"{x} has denominator divisible by {p}")
            acc += c.numerator * pow(c.denominator, -1, p) * wk
        wk = wk * w % p
    return acc % p
