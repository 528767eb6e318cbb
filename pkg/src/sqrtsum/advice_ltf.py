"""Integer threshold weights that reproduce the sign of every instance in a domain.

Over a fixed domain ``[-B, B]**(m+1)`` the map ``delta -> sign(<delta, sqrt(s)>)``
is a threshold function with real weights ``sqrt(s_j)`` and threshold 0. Two
synthesizers turn it into integer weights ``u``:

* ``synth_round`` scales by ``lam = ceil(2(m+1)B / eps)``, where ``eps`` is the
  smallest nonzero |value| in the domain, and rounds. Rounding moves any
  in-domain sum by at most ``(m+1)B/2 < lam*eps/2``, which is less than half
  the scaled value, so no sign flips.
* ``synth_lp`` solves the covering LP ``<delta, z> >= 1`` over the
  positive-value vectors exactly and clears denominators at a vertex. By
  Cramer's rule the weights are bounded by a minor of a {-B..B} matrix.

Deciding an instance is then a single integer dot product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InternalError, ResourceLimitError
from .exact_oracle import ceil_log2, sqrt_interval
from .instances import DEFAULT_ENUM_CAP, min_gap, positive_vectors
from .model import DomainSpec, UUSSRInstance, is_zero
from .simplex import solve_covering_lp

METHODS = ("round", "lp")
DEFAULT_MAX_CONSTRAINTS = 10_000


@dataclass(frozen=True)
class LtfAdvice:
    domain: DomainSpec
    weights: tuple[int, ...]
    method: str
    # ordered (key, value) pairs; values are plain text so they survive a file round trip
    provenance: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.method not in METHODS:
            raise DomainError(f"unknown LTF method {self.method!r}")
        if len(self.weights) != self.domain.dimension:
            raise DomainError(
                f"expected {self.domain.dimension} weights for k={self.domain.k}, "
                f"got {len(self.weights)}"
            )
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    @property
    def kind(self) -> str:
        return "ltf"

    def info(self, key: str) -> str | None:
        return dict(self.provenance).get(key)


def lp_weight_bound(dom: DomainSpec) -> int:
    """(m+2)! * B**(m+1)."""
    return math.factorial(dom.dimension + 1) * dom.B ** dom.dimension


def round_weight_bound(dom: DomainSpec, lam: int) -> int:
    return lam * (math.isqrt(dom.k - 1) + 1) + 1


def _nearest_scaled_sqrt(lam: int, s: int, bits: int) -> int:
    half = Fraction(1, 2)
    while True:
        iv = sqrt_interval(s, bits).scale(lam)
        lo = math.floor(iv.lower + half)
        if lo == math.floor(iv.upper + half):
            return lo
        # the enclosure straddles a half-integer; lam*sqrt(s) is irrational so refining ends
        bits *= 2


def synth_round(dom: DomainSpec, cap: int = DEFAULT_ENUM_CAP) -> LtfAdvice:
    gap = min_gap(dom, cap)
    eps = gap.enclosure.lower
    lam = math.ceil(2 * dom.dimension * dom.B / eps)
    bits = ceil_log2(lam) + 8
    weights = tuple(_nearest_scaled_sqrt(lam, s, bits) for s in dom.basis)
    provenance = (
        ("lambda", str(lam)),
        ("eps_min_lo", str(gap.enclosure.lower)),
        ("eps_min_hi", str(gap.enclosure.upper)),
        ("eps_witness", " ".join(str(d) for d in gap.witness.delta)),
    )
    return LtfAdvice(dom, weights, "round", provenance)


def domain_index(dom: DomainSpec, delta) -> int:
    """Position of ``delta`` in the lexicographic enumeration of the domain."""
    base = 2 * dom.B + 1
    idx = 0
    for d in delta:
        idx = idx * base + (d + dom.B)
    return idx


def synth_lp(
    dom: DomainSpec,
    max_constraints: int = DEFAULT_MAX_CONSTRAINTS,
    cap: int = DEFAULT_ENUM_CAP,
) -> LtfAdvice:
    # one constraint per nonzero domain vector; the negative half mirrors the positive
    if dom.size - 1 > max_constraints:
        raise ResourceLimitError(
            f"LP would have {dom.size - 1} constraints, limit is {max_constraints}"
        )
    W = positive_vectors(dom, cap)
    A = [w.delta for w in W]
    sol = solve_covering_lp(A)
    for row in A:
        if sum(a * z for a, z in zip(row, sol.z)) < 1:
            raise InternalError(f"LP solution violates constraint {row}")
    scale = math.lcm(*(z.denominator for z in sol.z))
    weights = tuple(int(z * scale) for z in sol.z)
    tight = sorted(domain_index(dom, A[i]) for i in sol.tight)
    provenance = (
        ("tight", " ".join(str(i) for i in tight)),
        ("denominator_lcm", str(scale)),
        ("pivots", str(sol.pivots)),
    )
    return LtfAdvice(dom, weights, "lp", provenance)


def check_in_domain(inst: UUSSRInstance, dom: DomainSpec) -> None:
    if inst.k != dom.k:
        raise DomainError(f"instance has k={inst.k}, advice covers k={dom.k}")
    worst = inst.max_abs()
    if worst > dom.B:
        raise DomainError(f"coefficient magnitude {worst} exceeds advice bound B={dom.B}")


def decide_ltf(inst: UUSSRInstance, adv: LtfAdvice) -> int:
    check_in_domain(inst, adv.domain)
    if is_zero(inst):
        return 0
    total = sum(d * u for d, u in zip(inst.delta, adv.weights))
    return (total > 0) - (total < 0)
