"""Ground-truth signs of sums of square roots.

The oracle evaluates an instance with dyadic interval arithmetic at doubling
precisions until the enclosure excludes zero. Termination is certified: the
value is an algebraic integer whose conjugates are the sign flips of its
radical terms, so ``|A| >= 1 / N**(d-1)`` where ``N`` bounds every conjugate
and ``d`` counts them. Once the enclosure is narrower than that, it cannot
straddle zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .dyadic import DyadicInterval
from .errors import DomainError, InternalError, ResourceLimitError
from .model import UUSSRInstance, is_zero

START_BITS = 64
MAX_ANNIHILATOR_TERMS = 6
SQRT3_BELOW = Fraction(433, 250)


def ceil_log2(x) -> int:
    """Smallest integer t with 2**t >= x, for rational x > 0."""
    x = Fraction(x)
    if x <= 0:
        raise DomainError(f"ceil_log2 needs a positive argument, got {x}")
    t = x.numerator.bit_length() - x.denominator.bit_length()
    # 2**(t-1) < x < 2**(t+1)
    return t if _pow2(t) >= x else t + 1


def _pow2(t: int) -> Fraction:
    return Fraction(1 << t) if t >= 0 else Fraction(1, 1 << -t)


# square roots


def isqrt_newton(N: int, seed: int | None = None) -> int:
    """floor(sqrt(N)) by integer Newton iteration from an over-estimate."""
    if N < 0:
        raise DomainError("square root of a negative integer")
    if N < 2:
        return N
    x = seed if seed is not None and seed * seed >= N else 1 << ((N.bit_length() + 1) // 2)
    while True:
        y = (x + N // x) >> 1
        if y >= x:
            return x
        x = y


@lru_cache(maxsize=8192)
def sqrt_interval(n: int, p: int) -> DyadicInterval:
    """Enclosure of sqrt(n) on the grid 2**-p, width at most 2**-p."""
    if n < 1:
        raise DomainError(f"sqrt_interval needs n >= 1, got {n}")
    if p < 1:
        raise DomainError(f"sqrt_interval needs precision >= 1, got {p}")
    N = n << (2 * p)
    r = isqrt_newton(N, seed=(math.isqrt(n) + 1) << p)
    if r * r == N:
        return DyadicInterval(r, r, -p)
    return DyadicInterval(r, r + 1, -p)


def eval_interval(inst: UUSSRInstance, p: int) -> DyadicInterval:
    """Enclosure of the instance value of width <= (m+1) * max|delta| * 2**-p."""
    lo = hi = 0
    for d, s in zip(inst.delta, inst.basis):
        if d == 0:
            continue
        iv = sqrt_interval(s, p)
        if d > 0:
            lo += d * iv.lo
            hi += d * iv.hi
        else:
            lo += d * iv.hi
            hi += d * iv.lo
    return DyadicInterval(lo, hi, -p)


# certified bounds


def _conjugate_bound(inst: UUSSRInstance) -> int:
    return sum(abs(d) * (math.isqrt(s - 1) + 1) for d, s in zip(inst.delta, inst.basis))


def _radical_terms(inst: UUSSRInstance) -> int:
    return sum(1 for d in inst.delta[1:] if d)


def value_lower_bound(inst: UUSSRInstance) -> Fraction:
    if is_zero(inst):
        raise DomainError("value_lower_bound is undefined for the zero instance")
    N = _conjugate_bound(inst)
    d = 1 << _radical_terms(inst)
    return Fraction(1, N ** (d - 1))


def certified_precision(inst: UUSSRInstance) -> int:
    """Bits at which eval_interval provably excludes zero (nonzero instances)."""
    if is_zero(inst):
        return 1
    N = _conjugate_bound(inst)
    d = 1 << _radical_terms(inst)
    # (m+1) * max|delta| / L with L = 1 / N**(d-1)
    ratio = len(inst.delta) * inst.max_abs() * N ** (d - 1)
    return (ratio - 1).bit_length() + 1


@dataclass(frozen=True)
class OracleResult:
    sign: int
    bits_used: int
    certified_bits: int


def oracle_sign(inst: UUSSRInstance, max_bits: int | None = None) -> OracleResult:
    """Sign with the precision that decided it.

    Zero is decided exactly by the independence of the square roots, so
    ``bits_used`` is 0 there.
    """
    if is_zero(inst):
        return OracleResult(0, 0, 0)
    cert = certified_precision(inst)
    cap = max_bits if max_bits is not None else max(START_BITS, 4 * cert)
    if cap < 1:
        raise DomainError(f"precision cap must be >= 1, got {cap}")
    p = START_BITS
    while True:
        bits = min(p, cap)
        s = eval_interval(inst, bits).sign()
        if s:
            return OracleResult(s, bits, cert)
        if s == 0:
            raise InternalError(f"nonzero instance {inst} evaluated to exactly zero")
        if bits >= cap:
            raise ResourceLimitError(
                f"sign of {inst} undecided at the {cap}-bit cap "
                f"(certified precision {cert})"
            )
        p *= 2


def sign_exact(inst: UUSSRInstance, max_bits: int | None = None) -> int:
    return oracle_sign(inst, max_bits).sign


def compare_values(a: UUSSRInstance, b: UUSSRInstance) -> int:
    """sign(value(a) - value(b)) for instances over the same k."""
    diff = UUSSRInstance(a.k, tuple(x - y for x, y in zip(a.delta, b.delta)))
    return sign_exact(diff)


# polynomials


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, constant term first. Trailing zeros are stripped."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        c = [int(a) for a in self.coefficients]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    @property
    def size(self) -> int:
        return sum(abs(a) for a in self.coefficients)

    def __call__(self, x):
        """Horner evaluation; works on ints, Fractions and DyadicIntervals."""
        acc = 0
        for a in reversed(self.coefficients):
            acc = acc * x + a
        return acc

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            a = self.coefficients[i]
            if a == 0:
                continue
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                var = "x" if i == 1 else f"x^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if a > 0 else f"-{body}")
            else:
                parts.append(("+ " if a > 0 else "- ") + body)
        return " ".join(parts)


def _ring_mul(a: dict, b: dict, radicands: list[int]) -> dict:
    # elements of Z[r_1..r_t]/(r_i^2 - s_i), keyed by the bitmask of r's present
    out: dict[int, int] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            c = ca * cb
            common = ma & mb
            i = 0
            while common:
                if common & 1:
                    c *= radicands[i]
                common >>= 1
                i += 1
            key = ma ^ mb
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def _poly_mul(f: list[dict], g: list[dict], radicands: list[int]) -> list[dict]:
    out: list[dict] = [dict() for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if not a:
            continue
        for j, b in enumerate(g):
            if not b:
                continue
            acc = out[i + j]
            for key, v in _ring_mul(a, b, radicands).items():
                acc[key] = acc.get(key, 0) + v
    return [{k: v for k, v in c.items() if v} for c in out]


def _flip(f: list[dict], bit: int) -> list[dict]:
    return [{k: (-v if k & bit else v) for k, v in c.items()} for c in f]


def annihilating_poly(
    inst: UUSSRInstance, max_terms: int = MAX_ANNIHILATOR_TERMS
) -> IntPolynomial:
    """Product of (x - conjugate) over all sign flips of the radical terms.

    Each radical gets its own formal square root, so the product over flips
    is built one radical at a time: ``F <- F(x) * F_flipped(x)``. After the
    last flip every coefficient is even in every formal root and reduces to
    an integer.
    """
    terms = [(d, s) for d, s in zip(inst.delta[1:], inst.basis.elements[1:]) if d]
    if len(terms) > max_terms:
        raise ResourceLimitError(
            f"{len(terms)} radical terms exceed the annihilator cap of {max_terms}"
        )
    radicands = [s for _, s in terms]
    constant = {0: -inst.delta[0]} if inst.delta[0] else {}
    for i, (d, _) in enumerate(terms):
        constant[1 << i] = -d
    f = [constant, {0: 1}]
    for i in range(len(terms)):
        f = _poly_mul(f, _flip(f, 1 << i), radicands)
    coeffs = []
    for c in f:
        if any(k != 0 for k in c):
            raise InternalError("annihilator expansion left a radical coefficient")
        coeffs.append(c.get(0, 0))
    return IntPolynomial(tuple(coeffs))


def _sqrt_upper(n: int, bits: int = 32) -> Fraction:
    r = math.isqrt(n << (2 * bits))
    if r * r == n << (2 * bits):
        return Fraction(r, 1 << bits)
    return Fraction(r + 1, 1 << bits)


def mahler_sep(P: IntPolynomial) -> Fraction:
    """Rational lower bound on the minimum distance between distinct roots of P."""
    n = P.degree
    if n < 2:
        raise DomainError(f"root separation needs degree >= 2, got {n}")
    s = P.size
    if n % 2 == 0:
        denom = Fraction(n ** (n // 2 + 1))
    else:
        denom = n ** ((n + 1) // 2) * _sqrt_upper(n)
    return SQRT3_BELOW / (denom * s ** (n - 1))
