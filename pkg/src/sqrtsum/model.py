"""Instance value types shared by the oracle, the reductions and the advice code."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError
from .numtheory import SquareFreeBasis, square_free_basis


@dataclass(frozen=True)
class USSRInstance:
    """A signed sum ``sum(sign * sqrt(a))`` with every ``a`` in ``[1, k]``.

    Any number of terms is allowed, repeated values included.
    """

    k: int
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.k < 1:
            raise DomainError(f"k must be >= 1, got {self.k}")
        object.__setattr__(self, "terms", tuple((int(s), int(a)) for s, a in self.terms))
        for i, (sign, a) in enumerate(self.terms):
            if sign not in (-1, 1):
                raise DomainError(f"term {i}: sign must be +1 or -1, got {sign}")
            if not 1 <= a <= self.k:
                raise DomainError(f"term {i}: value {a} outside [1, {self.k}]")

    def __str__(self):
        body = " ".join(f"{'+' if s > 0 else '-'}{a}" for s, a in self.terms)
        return f"USSR(k={self.k}: {body})"


@dataclass(frozen=True)
class UUSSRInstance:
    """Integer coefficients over the square roots of the square-free integers <= k.

    ``delta[j]`` multiplies ``sqrt(basis[j])``; ``delta[0]`` is the rational part.
    """

    k: int
    delta: tuple[int, ...]
    basis: SquareFreeBasis = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        basis = square_free_basis(self.k)
        delta = tuple(int(d) for d in self.delta)
        if len(delta) != len(basis):
            raise DomainError(
                f"k={self.k} needs {len(basis)} coefficients, got {len(delta)}"
            )
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "basis", basis)

    @property
    def m(self) -> int:
        return self.basis.m

    def max_abs(self) -> int:
        return max(abs(d) for d in self.delta)

    def __neg__(self):
        return UUSSRInstance(self.k, tuple(-d for d in self.delta))

    def __str__(self):
        return f"UUSSR(k={self.k}: {self.delta})"


@dataclass(frozen=True)
class DomainSpec:
    """All coefficient vectors in ``[-B, B]**(m+1)`` over the basis for ``k``."""

    k: int
    B: int

    def __post_init__(self):
        if self.k < 1:
            raise DomainError(f"k must be >= 1, got {self.k}")
        if self.B < 1:
            raise DomainError(f"B must be >= 1, got {self.B}")

    @property
    def basis(self) -> SquareFreeBasis:
        return square_free_basis(self.k)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return (2 * self.B + 1) ** self.dimension

    def contains(self, inst: UUSSRInstance) -> bool:
        return inst.k == self.k and all(abs(d) <= self.B for d in inst.delta)


def is_zero(inst: UUSSRInstance) -> bool:
    # square roots of distinct square-free integers are linearly independent over Q
    return not any(inst.delta)
