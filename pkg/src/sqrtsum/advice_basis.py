"""Lightest-basis advice.

The advice for a domain is the ``m+1`` linearly independent positive-value
domain vectors of smallest value (the lightest basis), ordered by value, plus
a short floating approximation ``beta_i * 2**-e_i`` of each value.

To decide an instance, write it exactly in the basis, ``delta = sum c_i b_i``.
If ``m1`` is the last row with ``c_m1 != 0`` then ``|A| >= v_m1``: otherwise
``delta`` would have displaced row ``m1`` when the basis was chosen greedily.
Rows much lighter than ``v_m1`` (exponent gap above ``P_drop``) are dropped, and
the remaining window is summed exactly with the stored mantissas. With

    P* = m**2 + ceil(log2(4 (m+1) (m+1)! B**(m+1)))

for both the mantissa width and the drop threshold, the total error is at most
``3 (m+1) max|c| 2**(-P* - e_m1) < 2**-e_m1 <= v_m1 <= |A|``, so the sign of
the truncated sum is the sign of ``A``. Coordinates are bounded by Cramer's
rule, ``|c_i| <= (m+1)! B**(m+1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import DomainError
from .exact_oracle import START_BITS, eval_interval, sign_exact
from .instances import DEFAULT_ENUM_CAP, domain_vectors, positive_vectors
from .linalg import RowSpace, det, inverse, solve, transpose
from .model import DomainSpec, UUSSRInstance, is_zero
from .advice_ltf import check_in_domain


def coordinate_bound(dom: DomainSpec) -> int:
    """(m+1)! * B**(m+1), the Cramer bound on basis coordinates."""
    return math.factorial(dom.dimension) * dom.B ** dom.dimension


def default_precision(dom: DomainSpec) -> int:
    m = dom.dimension - 1
    return m * m + (4 * dom.dimension * coordinate_bound(dom) - 1).bit_length()


@dataclass(frozen=True)
class BasisSearchReport:
    domain: DomainSpec
    positive_count: int
    examined: int
    skipped_dependent: int


@dataclass(frozen=True)
class BasisAdvice:
    domain: DomainSpec
    basis: tuple[tuple[int, ...], ...]
    values: tuple[tuple[Fraction, int], ...] = ()
    inverse: tuple[tuple[Fraction, ...], ...] | None = None
    p_mant: int = 0
    p_drop: int = 0
    provenance: tuple[tuple[str, str], ...] = field(default=())

    def __post_init__(self):
        n = self.domain.dimension
        if len(self.basis) != n or any(len(r) != n for r in self.basis):
            raise DomainError(f"basis must be {n}x{n} for k={self.domain.k}")
        if self.values and len(self.values) != n:
            raise DomainError(f"expected {n} approximate values, got {len(self.values)}")
        if self.p_mant < 0 or self.p_drop < 0:
            raise DomainError("precision parameters must be non-negative")

    @property
    def kind(self) -> str:
        return "basis"

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.values)

    def row_instance(self, i: int) -> UUSSRInstance:
        return UUSSRInstance(self.domain.k, self.basis[i])

    def with_inverse(self) -> "BasisAdvice":
        inv = inverse(self.basis)
        return replace(self, inverse=tuple(tuple(r) for r in inv))


def lightest_basis(dom: DomainSpec, cap: int = DEFAULT_ENUM_CAP):
    """Greedy choice of the m+1 lightest independent positive-value vectors."""
    W = positive_vectors(dom, cap)
    space = RowSpace(dom.dimension)
    rows, skipped = [], 0
    for w in W:
        if space.add(w.delta):
            rows.append(w.delta)
            if len(rows) == dom.dimension:
                break
        else:
            skipped += 1
    # unit vectors are in W, so the search always fills the basis
    report = BasisSearchReport(dom, len(W), dom.size, skipped)
    p = default_precision(dom)
    return BasisAdvice(dom, tuple(rows), p_mant=p, p_drop=p), report


# approximate values


def _scaled_instance(row, k: int, shift: int, n: int) -> UUSSRInstance:
    """Instance whose value is a positive multiple of ``value(row) * 2**shift - n``."""
    if shift >= 0:
        delta = [d << shift for d in row]
        delta[0] -= n
    else:
        delta = list(row)
        delta[0] -= n << -shift
    return UUSSRInstance(k, tuple(delta))


def _floor_scaled(row, k: int, shift: int) -> int:
    """floor(value(row) * 2**shift), decided by the exact oracle."""
    iv = eval_interval(UUSSRInstance(k, row), max(shift, 0) + START_BITS)
    lo = iv.lower * Fraction(2) ** shift
    n = lo.numerator // lo.denominator
    while sign_exact(_scaled_instance(row, k, shift, n)) < 0:
        n -= 1
    while sign_exact(_scaled_instance(row, k, shift, n + 1)) >= 0:
        n += 1
    return n


def _exponent(row, k: int) -> int:
    """The e with value(row) * 2**e in [1, 2)."""
    iv = eval_interval(UUSSRInstance(k, row), START_BITS)
    t = math.floor(math.log2(max(float(iv.midpoint), 1e-300)))
    # t = floor(log2 v) exactly: 2**t <= v < 2**(t+1)
    while sign_exact(_scaled_instance(row, k, -t, 1)) < 0:
        t -= 1
    while sign_exact(_scaled_instance(row, k, -(t + 1), 1)) >= 0:
        t += 1
    return -t


def approx_values(adv: BasisAdvice) -> BasisAdvice:
    values = []
    k = adv.domain.k
    for row in adv.basis:
        e = _exponent(row, k)
        n = _floor_scaled(row, k, e + adv.p_mant)
        values.append((Fraction(n, 1 << adv.p_mant), e))
    return replace(adv, values=tuple(values))


def synth_basis(
    dom: DomainSpec,
    p_mant: int | None = None,
    p_drop: int | None = None,
    include_inverse: bool = True,
    cap: int = DEFAULT_ENUM_CAP,
) -> BasisAdvice:
    adv, report = lightest_basis(dom, cap)
    if p_mant is not None:
        adv = replace(adv, p_mant=p_mant)
    if p_drop is not None:
        adv = replace(adv, p_drop=p_drop)
    adv = approx_values(adv)
    if include_inverse:
        adv = adv.with_inverse()
    provenance = (
        ("positive_count", str(report.positive_count)),
        ("examined", str(report.examined)),
        ("skipped_dependent", str(report.skipped_dependent)),
        ("determinant", str(det(adv.basis))),
    )
    return replace(adv, provenance=provenance)


# deciding


@dataclass(frozen=True)
class BasisCoordinates:
    c: tuple[Fraction, ...]
    m1: int
    m0: int | None

    @property
    def max_abs(self) -> Fraction:
        return max(abs(x) for x in self.c)


def express_in_basis(inst: UUSSRInstance, adv: BasisAdvice) -> BasisCoordinates:
    check_in_domain(inst, adv.domain)
    if is_zero(inst):
        raise DomainError("the zero vector has no basis expansion worth deciding")
    if adv.inverse is not None:
        n = len(inst.delta)
        c = tuple(
            sum(inst.delta[j] * adv.inverse[j][i] for j in range(n)) for i in range(n)
        )
        c = tuple(Fraction(x) for x in c)
    else:
        c = tuple(solve(transpose(adv.basis), inst.delta))
    m1 = max(i for i, x in enumerate(c) if x != 0)
    m0 = None
    if adv.values:
        e = adv.exponents
        m0 = min(i for i in range(m1 + 1) if e[i] - e[m1] <= adv.p_drop)
    return BasisCoordinates(c, m1, m0)


def windowed_sum(coords: BasisCoordinates, adv: BasisAdvice) -> Fraction:
    """The kept-window estimate of the value, scaled back by 2**-e_m1."""
    e = adv.exponents
    m1 = coords.m1
    inner = sum(
        coords.c[i] * adv.values[i][0] * Fraction(2) ** (e[m1] - e[i])
        for i in range(coords.m0, m1 + 1)
    )
    return inner * Fraction(2) ** (-e[m1])


def error_bound(coords: BasisCoordinates, adv: BasisAdvice) -> Fraction:
    """Explicit bound on |windowed_sum - value| from truncation plus dropping."""
    e_m1 = adv.exponents[coords.m1]
    scale = Fraction(2) ** (-e_m1)
    cmax = coords.max_abs
    truncation = (coords.m1 - coords.m0 + 1) * cmax * Fraction(1, 1 << adv.p_mant) * scale
    dropping = coords.m0 * cmax * 2 * scale * Fraction(1, 1 << adv.p_drop)
    return truncation + dropping


def decide_basis(inst: UUSSRInstance, adv: BasisAdvice) -> int:
    check_in_domain(inst, adv.domain)
    if is_zero(inst):
        return 0
    if not adv.values:
        raise DomainError("basis advice has no approximate values")
    estimate = windowed_sum(express_in_basis(inst, adv), adv)
    return (estimate > 0) - (estimate < 0)


# lower-bound check


@dataclass
class Prop6Report:
    domain: DomainSpec
    checked: int = 0
    multiples: int = 0
    violations: list = field(default_factory=list)


def verify_prop6(dom: DomainSpec, adv: BasisAdvice, cap: int = DEFAULT_ENUM_CAP) -> Prop6Report:
    """Check |value(delta)| > v_m1 for every nonzero delta off the basis rays.

    On a ray, delta = c * b_i, the value is |c| v_i and the check is |c| >= 1.
    """
    report = Prop6Report(dom)
    for delta in domain_vectors(dom, cap):
        inst = UUSSRInstance(dom.k, delta)
        if is_zero(inst):
            continue
        coords = express_in_basis(inst, adv)
        report.checked += 1
        nonzero = [i for i, x in enumerate(coords.c) if x != 0]
        if len(nonzero) == 1:
            report.multiples += 1
            if abs(coords.c[nonzero[0]]) < 1:
                report.violations.append(delta)
            continue
        s = sign_exact(inst)
        row = adv.basis[coords.m1]
        gap = UUSSRInstance(dom.k, tuple(s * d - r for d, r in zip(delta, row)))
        if sign_exact(gap) <= 0:
            report.violations.append(delta)
    return report
