"""Square-free structure of small integers."""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError


@dataclass(frozen=True)
class SquareFreeDecomposition:
    """``n == core**2 * part`` with ``part`` square-free."""

    n: int
    core: int
    part: int

    def __str__(self):
        return f"{self.n} = {self.core}^2 * {self.part}"


@dataclass(frozen=True)
class SquareFreeBasis:
    k: int
    elements: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.elements) - 1

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, j):
        return self.elements[j]

    def index(self, s: int) -> int:
        return _basis_index(self.k)[s]


_prime_table: list[int] = [2, 3, 5, 7]
_prime_limit = 10


def primes_upto(n: int) -> list[int]:
    """All primes <= n. The shared table only ever grows."""
    global _prime_table, _prime_limit
    if n > _prime_limit:
        limit = max(n, 2 * _prime_limit)
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, math.isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
        _prime_table = [i for i in range(limit + 1) if sieve[i]]
        _prime_limit = limit
    return _prime_table[: bisect_right(_prime_table, n)]


def _check_positive(name, value):
    if not isinstance(value, int) or isinstance(value, bool):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise DomainError(f"{name} must be >= 1, got {value}")


def square_free_part(n: int) -> SquareFreeDecomposition:
    _check_positive("n", n)
    core, rest = 1, n
    for p in primes_upto(math.isqrt(n)):
        pp = p * p
        if pp > rest:
            break
        while rest % pp == 0:
            rest //= pp
            core *= p
    return SquareFreeDecomposition(n, core, rest)


@lru_cache(maxsize=64)
def _square_free_flags(k: int) -> bytearray:
    flags = bytearray([1]) * (k + 1)
    flags[0] = 0
    for p in primes_upto(math.isqrt(k)):
        pp = p * p
        flags[pp::pp] = bytes(len(range(pp, k + 1, pp)))
    return flags


def square_free_basis(k: int) -> SquareFreeBasis:
    _check_positive("k", k)
    return _basis(k)


@lru_cache(maxsize=256)
def _basis(k: int) -> SquareFreeBasis:
    flags = _square_free_flags(k)
    return SquareFreeBasis(k, tuple(i for i in range(1, k + 1) if flags[i]))


@lru_cache(maxsize=256)
def _basis_index(k: int) -> dict[int, int]:
    return {s: j for j, s in enumerate(_basis(k).elements)}


def square_free_count(k: int) -> int:
    _check_positive("k", k)
    return _square_free_flags(k).count(1)


def is_square_free(n: int) -> bool:
    return square_free_part(n).core == 1
