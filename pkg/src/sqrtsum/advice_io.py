"""Text serialization of advice files (both kinds share one container format)."""

from __future__ import annotations

import re
from fractions import Fraction

from .advice_basis import BasisAdvice
from .advice_ltf import LtfAdvice
from .errors import DomainError, FormatError
from .linalg import matmul
from .model import DomainSpec

_INT = re.compile(r"^[+-]?\d+$")
_RATIONAL = re.compile(r"^([+-]?\d+)/(\d+)$")
PROVENANCE = "# provenance:"


def _provenance_lines(provenance):
    return [f"{PROVENANCE} {key} {value}".rstrip() for key, value in provenance]


def format_advice(adv) -> str:
    dom = adv.domain
    lines = ["ADVICE v1", f"kind {adv.kind}", f"k {dom.k}", f"B {dom.B}"]
    if isinstance(adv, LtfAdvice):
        lines.append(f"method {adv.method}")
        lines.append("weights " + " ".join(str(w) for w in adv.weights))
    elif isinstance(adv, BasisAdvice):
        lines.append(f"Pmant {adv.p_mant}")
        lines.append(f"Pdrop {adv.p_drop}")
        lines.append("basis " + " ; ".join(" ".join(str(x) for x in row) for row in adv.basis))
        den = 1 << adv.p_mant
        vals = []
        for beta, e in adv.values:
            num = beta * den
            if num.denominator != 1:
                raise DomainError(f"mantissa {beta} is not a multiple of 2**-{adv.p_mant}")
            vals.append(f"{num.numerator}/{den} {e}")
        lines.append("values " + " ; ".join(vals))
        if adv.inverse is not None:
            lines.append(
                "inverse "
                + " ; ".join(
                    " ".join(f"{x.numerator}/{x.denominator}" for x in row) for row in adv.inverse
                )
            )
    else:
        raise TypeError(f"not an advice object: {adv!r}")
    lines.extend(_provenance_lines(adv.provenance))
    return "\n".join(lines) + "\n"


class _Reader:
    def __init__(self, text: str, source):
        self.source = source
        self.provenance = []
        self.lines = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.strip()
            if stripped.startswith(PROVENANCE):
                rest = stripped[len(PROVENANCE):].strip()
                if not rest:
                    raise FormatError("empty provenance line", lineno, None, source)
                key, _, value = rest.partition(" ")
                self.provenance.append((key, value.strip()))
                continue
            content = raw.split("#", 1)[0].strip()
            if content:
                self.lines.append((lineno, content.split()))
        self.pos = 0

    def error(self, msg, lineno=None, col=None):
        return FormatError(msg, lineno, col, self.source)

    def take(self, keyword):
        if self.pos >= len(self.lines):
            raise self.error(f"missing '{keyword}' line")
        lineno, tokens = self.lines[self.pos]
        if tokens[0] != keyword:
            raise self.error(f"expected '{keyword}', found {tokens[0]!r}", lineno, 1)
        self.pos += 1
        return lineno, tokens[1:]

    def peek_keyword(self):
        if self.pos < len(self.lines):
            return self.lines[self.pos][1][0]
        return None

    def int_(self, token, lineno, col):
        if not _INT.match(token):
            raise self.error(f"not an integer: {token!r}", lineno, col)
        return int(token)

    def rational(self, token, lineno, col):
        if _INT.match(token):
            return Fraction(int(token))
        m = _RATIONAL.match(token)
        if not m or int(m.group(2)) == 0:
            raise self.error(f"not a rational: {token!r}", lineno, col)
        return Fraction(int(m.group(1)), int(m.group(2)))

    def single_int(self, keyword, minimum):
        lineno, rest = self.take(keyword)
        if len(rest) != 1:
            raise self.error(f"'{keyword}' takes one integer, got {len(rest)}", lineno)
        value = self.int_(rest[0], lineno, 2)
        if value < minimum:
            raise self.error(f"'{keyword}' must be >= {minimum}, got {value}", lineno, 2)
        return value

    def groups(self, keyword, count, width):
        """A ';'-separated list of ``count`` groups of ``width`` tokens, with token columns."""
        lineno, rest = self.take(keyword)
        groups, current, col = [], [], 2
        for tok in rest + [";"]:
            if tok == ";":
                groups.append(current)
                current = []
            else:
                current.append((tok, col))
            col += 1
        if len(groups) != count:
            raise self.error(f"'{keyword}' needs {count} groups, got {len(groups)}", lineno)
        for g in groups:
            if len(g) != width:
                raise self.error(
                    f"'{keyword}' group needs {width} entries, got {len(g)}",
                    lineno,
                    g[0][1] if g else None,
                )
        return lineno, groups

    def finish(self):
        if self.pos < len(self.lines):
            lineno, tokens = self.lines[self.pos]
            raise self.error(f"unexpected line {tokens[0]!r}", lineno, 1)


def parse_advice(text: str, source=None):
    r = _Reader(text, source)
    if not r.lines:
        raise r.error("empty advice file")
    lineno, header = r.lines[0]
    if header[0] != "ADVICE" or len(header) != 2:
        raise r.error(f"unknown header {' '.join(header)!r}", lineno, 1)
    if header[1] != "v1":
        raise r.error(f"unsupported version {header[1]!r}", lineno, 2)
    r.pos = 1
    lineno, rest = r.take("kind")
    if len(rest) != 1 or rest[0] not in ("ltf", "basis"):
        raise r.error(f"kind must be 'ltf' or 'basis', got {' '.join(rest)!r}", lineno, 2)
    kind = rest[0]
    dom = DomainSpec(r.single_int("k", 1), r.single_int("B", 1))
    n = dom.dimension
    if kind == "ltf":
        lineno, rest = r.take("method")
        if len(rest) != 1 or rest[0] not in ("round", "lp"):
            raise r.error(f"method must be 'round' or 'lp', got {' '.join(rest)!r}", lineno, 2)
        method = rest[0]
        lineno, rest = r.take("weights")
        if len(rest) != n:
            raise r.error(f"k={dom.k} needs {n} weights, got {len(rest)}", lineno)
        weights = tuple(r.int_(t, lineno, c) for c, t in enumerate(rest, start=2))
        r.finish()
        return LtfAdvice(dom, weights, method, tuple(r.provenance))

    p_mant = r.single_int("Pmant", 0)
    p_drop = r.single_int("Pdrop", 0)
    lineno, groups = r.groups("basis", n, n)
    basis = []
    for g in groups:
        row = []
        for tok, col in g:
            x = r.int_(tok, lineno, col)
            if abs(x) > dom.B:
                raise r.error(f"basis entry {x} outside [-{dom.B}, {dom.B}]", lineno, col)
            row.append(x)
        basis.append(tuple(row))
    lineno, groups = r.groups("values", n, 2)
    values = []
    for (btok, bcol), (etok, ecol) in groups:
        m = _RATIONAL.match(btok)
        if not m:
            raise r.error(f"mantissa must be <num>/<den>, got {btok!r}", lineno, bcol)
        num, den = int(m.group(1)), int(m.group(2))
        if den != 1 << p_mant:
            raise r.error(f"mantissa denominator must be 2^{p_mant}, got {den}", lineno, bcol)
        if not den <= num < 2 * den:
            raise r.error(f"mantissa {btok} outside [1, 2)", lineno, bcol)
        values.append((Fraction(num, den), r.int_(etok, lineno, ecol)))
    inverse = None
    if r.peek_keyword() == "inverse":
        lineno, groups = r.groups("inverse", n, n)
        inverse = tuple(tuple(r.rational(t, lineno, c) for t, c in g) for g in groups)
        identity = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        if matmul(basis, inverse) != identity:
            raise r.error("inverse does not invert the basis matrix", lineno)
    r.finish()
    return BasisAdvice(
        dom, tuple(basis), tuple(values), inverse, p_mant, p_drop, tuple(r.provenance)
    )


def read_advice(path):
    with open(path, encoding="utf-8") as fh:
        return parse_advice(fh.read(), source=path)


def write_advice(path, adv) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_advice(adv))
