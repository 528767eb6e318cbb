"""Verification of advice against the exact oracle, and oracle precision benchmarks."""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .advice_basis import BasisAdvice, decide_basis
from .advice_ltf import LtfAdvice, decide_ltf
from .exact_oracle import oracle_sign
from .instances import DEFAULT_ENUM_CAP, domain_vectors, gen_family, normalize
from .model import DomainSpec, UUSSRInstance
from .errors import DomainError

WORKERS_ENV = "SQRTSUM_WORKERS"


@dataclass(frozen=True)
class CheckRecord:
    delta: tuple[int, ...]
    advice_sign: int
    oracle_sign: int
    bits_used: int

    @property
    def agree(self) -> bool:
        return self.advice_sign == self.oracle_sign


@dataclass
class VerificationReport:
    domain: DomainSpec
    kind: str
    method: str
    mode: str
    total: int = 0
    agree: int = 0
    disagree: list = field(default_factory=list)
    max_bits_used: int = 0
    wall_time: float = 0.0
    records: list = field(default_factory=list)
    parameters: str = ""

    @property
    def verified(self) -> bool:
        return not self.disagree


def _method(adv) -> str:
    return adv.method if isinstance(adv, LtfAdvice) else "lightest"


def _parameters(adv) -> str:
    if isinstance(adv, LtfAdvice):
        return "weights " + " ".join(str(w) for w in adv.weights)
    return f"Pmant={adv.p_mant} Pdrop={adv.p_drop}"


def _decide(adv, inst):
    if isinstance(adv, LtfAdvice):
        return decide_ltf(inst, adv)
    if isinstance(adv, BasisAdvice):
        return decide_basis(inst, adv)
    raise TypeError(f"not an advice object: {adv!r}")


def _check_chunk(args):
    adv, chunk = args
    out = []
    for delta in chunk:
        inst = UUSSRInstance(adv.domain.k, delta)
        res = oracle_sign(inst)
        out.append(CheckRecord(delta, _decide(adv, inst), res.sign, res.bits_used))
    return out


def worker_count(requested: int | None = None) -> int:
    if requested is not None:
        return max(1, requested)
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
    return 1


def verify_advice(
    adv,
    mode: str = "exhaustive",
    samples: int = 0,
    seed: int = 0,
    workers: int | None = None,
    cap: int = DEFAULT_ENUM_CAP,
) -> VerificationReport:
    """Compare the advice decider with the oracle on every (or sampled) domain vector."""
    dom = adv.domain
    start = time.perf_counter()
    if mode == "exhaustive":
        vectors = list(domain_vectors(dom, cap))
    elif mode == "sampled":
        if samples < 0:
            raise DomainError(f"sample count must be >= 0, got {samples}")
        rng = random.Random(seed)
        vectors = [
            tuple(rng.randint(-dom.B, dom.B) for _ in range(dom.dimension))
            for _ in range(samples)
        ]
    else:
        raise DomainError(f"unknown verification mode {mode!r}")

    n = worker_count(workers)
    if n == 1 or len(vectors) < 2 * n:
        records = _check_chunk((adv, vectors))
    else:
        size = -(-len(vectors) // n)
        chunks = [(adv, vectors[i : i + size]) for i in range(0, len(vectors), size)]
        with ProcessPoolExecutor(max_workers=n) as pool:
            # map preserves chunk order, so the merge is deterministic
            records = [r for part in pool.map(_check_chunk, chunks) for r in part]

    report = VerificationReport(dom, adv.kind, _method(adv), mode, parameters=_parameters(adv))
    for rec in records:
        report.total += 1
        if rec.agree:
            report.agree += 1
        else:
            report.disagree.append(rec.delta)
        report.max_bits_used = max(report.max_bits_used, rec.bits_used)
    report.records = records
    report.wall_time = time.perf_counter() - start
    return report


def format_sign(s: int) -> str:
    return "0" if s == 0 else f"{s:+d}"


def _header(lines):
    return "".join(f"# {line}\n" for line in lines)


def format_verification_report(report: VerificationReport, seed=None) -> str:
    """CSV text with '#' provenance headers. Wall time is left out so reruns diff clean."""
    mode = report.mode
    if mode == "sampled":
        mode = f"sampled (non-exhaustive) seed={seed}"
    head = [
        f"sqrtsum {__version__} verification report",
        f"domain k={report.domain.k} B={report.domain.B}",
        f"advice kind={report.kind} method={report.method}",
        f"parameters {report.parameters}",
        f"mode {mode}",
        f"total {report.total} agree {report.agree} disagree {len(report.disagree)}",
        f"max_bits_used {report.max_bits_used}",
        f"status {'verified' if report.verified else 'disagreement'}",
        "index,delta,advice_sign,oracle_sign,bits_used,agree",
    ]
    body = "".join(
        f"{i},{' '.join(str(d) for d in r.delta)},{format_sign(r.advice_sign)},{format_sign(r.oracle_sign)},"
        f"{r.bits_used},{int(r.agree)}\n"
        for i, r in enumerate(report.records)
    )
    return _header(head) + body


# precision benchmark


@dataclass(frozen=True)
class BenchRecord:
    family: str
    k: int
    terms: int
    bits_used: int
    certified_bits: int
    sign: int


def bench_precision(family: str, k_max: int, seed: int = 0):
    """One record per k up to k_max where the family instance is new (and at k_max).

    Empty instances are skipped; for the prime families k values without a
    new prime would repeat the previous instance verbatim.
    """
    if k_max < 1:
        raise DomainError(f"k_max must be >= 1, got {k_max}")
    previous = None
    for k in range(1, k_max + 1):
        inst = gen_family(family, k, seed)
        if not inst.terms:
            continue
        if inst.terms == previous and k != k_max:
            continue
        previous = inst.terms
        res = oracle_sign(normalize(inst))
        yield BenchRecord(family, k, len(inst.terms), res.bits_used, res.certified_bits, res.sign)


def format_bench_report(records, family: str, k_max: int, seed: int) -> str:
    head = [
        f"sqrtsum {__version__} precision benchmark",
        f"family {family} k_max {k_max} seed {seed}",
        "family,k,terms,bits_used,certified_bits,sign",
    ]
    body = "".join(
        f"{r.family},{r.k},{r.terms},{r.bits_used},{r.certified_bits},{format_sign(r.sign)}\n"
        for r in records
    )
    return _header(head) + body
