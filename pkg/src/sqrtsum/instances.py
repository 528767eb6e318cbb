"""Instances: reduction to the square-free normal form, domains, generators, text format."""

from __future__ import annotations

import itertools
import random
import re
from functools import cmp_to_key
from typing import Iterator, NamedTuple

from .dyadic import DyadicInterval
from .errors import DomainError, FormatError, ResourceLimitError
from .exact_oracle import START_BITS, ceil_log2, eval_interval, sign_exact
from .model import DomainSpec, UUSSRInstance, USSRInstance, is_zero
from .numtheory import primes_upto, square_free_basis, square_free_part

__all__ = [
    "DomainSpec",
    "USSRInstance",
    "UUSSRInstance",
    "is_zero",
    "normalize",
    "enumerate_domain",
    "domain_vectors",
    "positive_vectors",
    "min_gap",
    "gen_family",
    "FAMILIES",
    "parse_instance",
    "format_instance",
    "read_instance",
    "write_instance",
]

DEFAULT_ENUM_CAP = 10**6
FAMILIES = ("primes", "alternating-primes", "random")


def normalize(inst: USSRInstance) -> UUSSRInstance:
    """Rewrite each sqrt(a) as c*sqrt(s) and collect coefficients per square-free s."""
    basis = square_free_basis(inst.k)
    delta = [0] * len(basis)
    for sign, a in inst.terms:
        if not 1 <= a <= inst.k:
            raise DomainError(f"value {a} outside [1, {inst.k}]")
        dec = square_free_part(a)
        delta[basis.index(dec.part)] += sign * dec.core
    return UUSSRInstance(inst.k, tuple(delta))


def domain_vectors(dom: DomainSpec, cap: int = DEFAULT_ENUM_CAP) -> Iterator[tuple[int, ...]]:
    """Every vector of [-B, B]**(m+1), lexicographic, as plain tuples."""
    if dom.size > cap:
        raise ResourceLimitError(
            f"domain k={dom.k}, B={dom.B} has {dom.size} vectors, cap is {cap}"
        )
    return itertools.product(range(-dom.B, dom.B + 1), repeat=dom.dimension)


def enumerate_domain(dom: DomainSpec, cap: int = DEFAULT_ENUM_CAP) -> Iterator[UUSSRInstance]:
    for delta in domain_vectors(dom, cap):
        yield UUSSRInstance(dom.k, delta)


# exact ordering by value


class _Valued:
    __slots__ = ("inst", "iv")

    def __init__(self, inst: UUSSRInstance, iv: DyadicInterval):
        self.inst = inst
        self.iv = iv


def _cmp_valued(a: _Valued, b: _Valued) -> int:
    # both intervals come from eval_interval at START_BITS, so exponents agree
    if a.iv.hi < b.iv.lo:
        return -1
    if b.iv.hi < a.iv.lo:
        return 1
    if a.inst.delta == b.inst.delta:
        return 0
    diff = UUSSRInstance(a.inst.k, tuple(x - y for x, y in zip(a.inst.delta, b.inst.delta)))
    return sign_exact(diff)


value_order = cmp_to_key(_cmp_valued)


def positive_vectors(dom: DomainSpec, cap: int = DEFAULT_ENUM_CAP) -> list[UUSSRInstance]:
    """Domain vectors with positive value, sorted by exact increasing value."""
    valued = []
    for delta in domain_vectors(dom, cap):
        inst = UUSSRInstance(dom.k, delta)
        if is_zero(inst):
            continue
        iv = eval_interval(inst, START_BITS)
        s = iv.sign() or sign_exact(inst)
        if s > 0:
            valued.append(_Valued(inst, iv))
    valued.sort(key=value_order)
    return [v.inst for v in valued]


class MinGap(NamedTuple):
    enclosure: DyadicInterval
    witness: UUSSRInstance


def _positive_enclosure(inst: UUSSRInstance, width_bits: int) -> DyadicInterval:
    """Enclosure of |value| with width <= 2**-width_bits and a positive lower end."""
    p = width_bits + ceil_log2(len(inst.delta) * inst.max_abs())
    while True:
        iv = abs(eval_interval(inst, p))
        if iv.lo > 0:
            return iv
        p *= 2


def min_gap(dom: DomainSpec, cap: int = DEFAULT_ENUM_CAP, width_bits: int = 32) -> MinGap:
    """Smallest nonzero |value| over the domain, with its lexicographically least witness."""
    best = None
    for delta in domain_vectors(dom, cap):
        inst = UUSSRInstance(dom.k, delta)
        if is_zero(inst):
            continue
        if sign_exact(inst) < 0:
            inst = -inst
        cand = _Valued(inst, eval_interval(inst, START_BITS))
        if best is None or _cmp_valued(cand, best) < 0:
            best = cand
    if best is None:
        raise DomainError("domain has no nonzero vectors")
    w = best.inst
    witness = min(w, -w, key=lambda i: i.delta)
    return MinGap(_positive_enclosure(w, width_bits), witness)


# generators


def gen_family(name: str, k: int, seed: int = 0) -> USSRInstance:
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if name == "primes":
        return USSRInstance(k, tuple((1, p) for p in primes_upto(k)))
    if name == "alternating-primes":
        return USSRInstance(
            k, tuple((1 if i % 2 == 0 else -1, p) for i, p in enumerate(primes_upto(k)))
        )
    if name == "random":
        rng = random.Random(seed)
        return USSRInstance(
            k, tuple((rng.choice((-1, 1)), rng.randint(1, k)) for _ in range(k))
        )
    raise DomainError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


# text format

_INT = re.compile(r"^[+-]?\d+$")
_SIGNED = re.compile(r"^[+-]\d+$")


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _expect(lines, keyword, source):
    try:
        lineno, tokens = next(lines)
    except StopIteration:
        raise FormatError(f"missing '{keyword}' line", source=source) from None
    if tokens[0] != keyword:
        raise FormatError(f"expected '{keyword}', found {tokens[0]!r}", lineno, 1, source)
    return lineno, tokens[1:]


def _parse_int(token, lineno, column, source, pattern=_INT):
    if not pattern.match(token):
        raise FormatError(f"not an integer: {token!r}", lineno, column, source)
    return int(token)


def _parse_k(lines, source):
    lineno, rest = _expect(lines, "k", source)
    if len(rest) != 1:
        raise FormatError(f"'k' takes one integer, got {len(rest)}", lineno, None, source)
    k = _parse_int(rest[0], lineno, 2, source)
    if k < 1:
        raise FormatError(f"k must be >= 1, got {k}", lineno, 2, source)
    return k


def parse_instance(text: str, source=None) -> USSRInstance | UUSSRInstance:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise FormatError("empty instance file", source=source) from None
    if len(header) != 2 or header[0] not in ("USSR", "UUSSR"):
        raise FormatError(f"unknown header {' '.join(header)!r}", lineno, 1, source)
    if header[1] != "v1":
        raise FormatError(f"unsupported version {header[1]!r}", lineno, 2, source)
    k = _parse_k(lines, source)
    if header[0] == "USSR":
        lineno, rest = _expect(lines, "terms", source)
        terms = []
        for col, tok in enumerate(rest, start=2):
            value = _parse_int(tok, lineno, col, source, _SIGNED)
            if not 1 <= abs(value) <= k:
                raise FormatError(f"value {abs(value)} outside [1, {k}]", lineno, col, source)
            terms.append((1 if value > 0 else -1, abs(value)))
        inst = USSRInstance(k, tuple(terms))
    else:
        lineno, rest = _expect(lines, "delta", source)
        width = len(square_free_basis(k))
        if len(rest) != width:
            raise FormatError(
                f"k={k} needs {width} coefficients, got {len(rest)}", lineno, None, source
            )
        inst = UUSSRInstance(
            k, tuple(_parse_int(t, lineno, c, source) for c, t in enumerate(rest, start=2))
        )
    extra = next(lines, None)
    if extra is not None:
        raise FormatError("unexpected content after instance", extra[0], 1, source)
    return inst


def format_instance(inst: USSRInstance | UUSSRInstance) -> str:
    if isinstance(inst, USSRInstance):
        terms = " ".join(f"{'+' if s > 0 else '-'}{a}" for s, a in inst.terms)
        return f"USSR v1\nk {inst.k}\nterms {terms}".rstrip() + "\n"
    basis = " ".join(str(s) for s in inst.basis)
    return (
        f"UUSSR v1\n# basis {basis}\nk {inst.k}\n"
        f"delta {' '.join(str(d) for d in inst.delta)}\n"
    )


def read_instance(path) -> USSRInstance | UUSSRInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read(), source=path)


def write_instance(path, inst) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_instance(inst))
