"""Probability-distribution models (DistLang) and their statistics.

Distributions carry exact rational masses over a finite domain and admit
a canonical Shannon–Fano codebook that the machine's SFDECODE opcode
consumes, so "conditioning on P" is a runnable condition. Deficiency,
two-part totals and sufficient-statistic search mirror the finite-set
module; the uniform wrapper reproduces the set semantics exactly
(identical condition object, identical conditional table).

Grammar:

    00  UniformOn(set-code)
    01  Bernoulli(n, p)     bar(b(n)) rat(p), p in (0,1)
    10  Table(entries)      bar(b(count)) then std(x) rat(mass) per entry

Rationals are encoded reduced as bar(b(numerator)) bar(b(denominator)).
Table entries are kept in canonical (length, lex) domain order — the
constructor sorts and the decoder rejects any other order, keeping the
code round-trip exact. Masses may sum below 1 (defective distributions
are meaningful here; the missing mass simply has no codeword).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, NamedTuple

from .bits import (
    BitReader,
    CodeError,
    bar_nat,
    bits_to_text,
    ceil_log2_ratio,
    check_bits,
    std,
    text_to_bits,
)
from .complexity import Absent, require_k
from .enumeration import DEFAULT_COND_MAX_LEN, ComplexityTable
from .machine import Budgets, Condition
from .models_set import (
    DEFAULT_DENOTE_CAP,
    CapExceeded,
    Hamming,
    ListSet,
    ModelOpts,
    SetDesc,
    Singleton,
    _CondCache,
    _read_desc,
    encode as encode_set,
    enumerate_models,
    format_setlang,
    parse_setlang,
    suffstat,
    two_part,
)

INF_NEGLOG = math.inf  # zero-mass marker


class DistLangError(CodeError):
    """Malformed DistLang code or textual syntax."""


def _rat_bits(q: Fraction) -> str:
    return bar_nat(q.numerator) + bar_nat(q.denominator)


def _read_rat(r: BitReader) -> Fraction:
    num = r.read_bar_nat()
    den = r.read_bar_nat()
    if num < 1 or den < 1:
        raise DistLangError("rational parts must be positive")
    q = Fraction(num, den)
    if q.numerator != num or q.denominator != den:
        raise DistLangError(f"rational {num}/{den} is not in lowest terms")
    return q


def _parse_rat_text(text: str) -> Fraction:
    num_text, slash, den_text = text.partition("/")
    if not slash:
        raise DistLangError(f"expected a/b rational, got {text!r}")
    return Fraction(int(num_text), int(den_text))


# -- distribution AST ---------------------------------------------------------


class DistDesc:
    """Base class. Also a valid machine Model condition: the machine sees
    ``code`` plus the canonical codebook."""

    __slots__ = ()

    @property
    def code(self) -> str:
        return _encode_cached(self)

    @property
    def code_len(self) -> int:
        return len(self.code)

    def domain(self, cap: int = DEFAULT_DENOTE_CAP) -> list[str]:
        """Positive-mass support in canonical (length, lex) order."""
        raise NotImplementedError

    def mass(self, x: str) -> Fraction:
        raise NotImplementedError

    def neglog(self, x: str) -> float:
        """-log2 mass as a real (documented 1e-9 precision); +inf marks
        zero mass. Comparisons elsewhere go through exact rationals."""
        m = self.mass(x)
        if m == 0:
            return INF_NEGLOG
        return math.log2(m.denominator) - math.log2(m.numerator)

    def codebook_pairs(self) -> list[tuple[str, str]]:
        return codebook(self).pairs_codeword_first()


@dataclass(frozen=True, slots=True)
class UniformOn(DistDesc):
    desc: SetDesc

    def domain(self, cap: int = DEFAULT_DENOTE_CAP) -> list[str]:
        return self.desc.denote(cap)

    def mass(self, x: str) -> Fraction:
        if not self.desc.member(x):
            return Fraction(0)
        return Fraction(1, self.desc.size())


@dataclass(frozen=True, slots=True)
class Bernoulli(DistDesc):
    n: int
    p: Fraction

    def __post_init__(self):
        if self.n < 0:
            raise DistLangError("Bernoulli needs n >= 0")
        if not isinstance(self.p, Fraction):
            object.__setattr__(self, "p", Fraction(self.p))
        if not 0 < self.p < 1:
            raise DistLangError("Bernoulli needs p strictly between 0 and 1")

    def domain(self, cap: int = DEFAULT_DENOTE_CAP) -> list[str]:
        if (1 << self.n) > cap:
            raise CapExceeded(f"Bernoulli domain 2^{self.n} exceeds cap {cap}")
        return [format(v, f"0{self.n}b") if self.n else "" for v in range(1 << self.n)]

    def mass(self, x: str) -> Fraction:
        if len(x) != self.n:
            return Fraction(0)
        ones = x.count("1")
        return self.p**ones * (1 - self.p) ** (self.n - ones)


@dataclass(frozen=True, slots=True)
class TableDist(DistDesc):
    entries: tuple[tuple[str, Fraction], ...]

    def __post_init__(self):
        if not self.entries:
            raise DistLangError("Table needs at least one entry")
        fixed = []
        total = Fraction(0)
        for x, q in self.entries:
            check_bits(x)
            q = Fraction(q)
            if not 0 < q <= 1:
                raise DistLangError("Table masses must be in (0, 1]")
            total += q
            fixed.append((x, q))
        if total > 1:
            raise DistLangError(f"Table masses sum to {total} > 1")
        fixed.sort(key=lambda e: (len(e[0]), e[0]))
        for (a, _), (b, _) in zip(fixed, fixed[1:]):
            if a == b:
                raise DistLangError(f"duplicate Table entry {bits_to_text(a)}")
        object.__setattr__(self, "entries", tuple(fixed))

    def domain(self, cap: int = DEFAULT_DENOTE_CAP) -> list[str]:
        return [x for x, _ in self.entries]

    def mass(self, x: str) -> Fraction:
        for y, q in self.entries:
            if y == x:
                return q
        return Fraction(0)


# -- encoding ----------------------------------------------------------------


@lru_cache(maxsize=65536)
def _encode_cached(dist: DistDesc) -> str:
    return encode_dist(dist)


def encode_dist(dist: DistDesc) -> str:
    if isinstance(dist, UniformOn):
        return "00" + encode_set(dist.desc)
    if isinstance(dist, Bernoulli):
        return "01" + bar_nat(dist.n) + _rat_bits(dist.p)
    if isinstance(dist, TableDist):
        body = "".join(std(x) + _rat_bits(q) for x, q in dist.entries)
        return "10" + bar_nat(len(dist.entries)) + body
    raise TypeError(f"not a distribution description: {dist!r}")


def decode_dist(bits: str) -> DistDesc:
    r = BitReader(bits)
    try:
        dist = _read_dist(r)
    except CodeError as exc:
        raise DistLangError(f"malformed distribution code: {exc}") from exc
    if not r.at_end():
        raise DistLangError("trailing bits after distribution code")
    return dist


def _read_dist(r: BitReader) -> DistDesc:
    tag = r.take(2)
    if tag == "00":
        return UniformOn(_read_desc(r))
    if tag == "01":
        n = r.read_bar_nat()
        return Bernoulli(n, _read_rat(r))
    if tag == "10":
        count = r.read_bar_nat()
        if count < 1:
            raise DistLangError("Table count must be >= 1")
        entries = tuple((r.read_std(), _read_rat(r)) for _ in range(count))
        dist = TableDist(entries)
        if dist.entries != entries:
            raise DistLangError("Table entries must be in canonical (length, lex) order")
        return dist
    raise DistLangError(f"unknown distribution tag {tag!r}")


# -- textual syntax ----------------------------------------------------------


def format_distlang(dist: DistDesc) -> str:
    if isinstance(dist, UniformOn):
        return f"unif({format_setlang(dist.desc)})"
    if isinstance(dist, Bernoulli):
        return f"bern:{dist.n},{dist.p.numerator}/{dist.p.denominator}"
    if isinstance(dist, TableDist):
        body = ",".join(
            f"{bits_to_text(x)}:{q.numerator}/{q.denominator}" for x, q in dist.entries
        )
        return "table{" + body + "}"
    raise TypeError(f"not a distribution description: {dist!r}")


def parse_distlang(text: str) -> DistDesc:
    text = text.strip()
    try:
        if text.startswith("unif(") and text.endswith(")"):
            return UniformOn(parse_setlang(text[5:-1]))
        if text.startswith("bern:"):
            n_text, _, p_text = text[5:].partition(",")
            return Bernoulli(int(n_text), _parse_rat_text(p_text))
        if text.startswith("table{") and text.endswith("}"):
            entries = []
            for item in text[6:-1].split(","):
                x_text, _, q_text = item.strip().partition(":")
                entries.append((text_to_bits(x_text), _parse_rat_text(q_text)))
            return TableDist(tuple(entries))
    except (ValueError, CodeError) as exc:
        raise DistLangError(f"bad distribution syntax {text!r}: {exc}") from exc
    raise DistLangError(f"bad distribution syntax {text!r}")


# -- canonical Shannon–Fano codebook ------------------------------------------


@dataclass(frozen=True)
class Codebook:
    """(element, codeword) per domain element, canonical domain order.

    Codeword lengths are ceil(-log2 mass); assignment is shorter-first
    (ties by domain order) with Kraft packing, so the book is prefix-free
    by construction."""

    assignments: tuple[tuple[str, str], ...]

    def codeword_of(self, x: str) -> str:
        for elem, cw in self.assignments:
            if elem == x:
                return cw
        raise KeyError(f"{bits_to_text(x)} has no codeword")

    def decode(self, codeword: str) -> str:
        for elem, cw in self.assignments:
            if cw == codeword:
                return elem
        raise KeyError(f"no element for codeword {bits_to_text(codeword)}")

    def pairs_codeword_first(self) -> list[tuple[str, str]]:
        return [(cw, elem) for elem, cw in self.assignments]

    def kraft_sum(self) -> Fraction:
        return sum((Fraction(1, 1 << len(cw)) for _, cw in self.assignments), Fraction(0))


def codeword_length(dist: DistDesc, x: str) -> int:
    """ceil(-log2 mass(x)), computed exactly."""
    m = dist.mass(x)
    if m == 0:
        raise DistLangError(f"{bits_to_text(x)} has zero mass")
    return ceil_log2_ratio(m.denominator, m.numerator)


def codebook(dist: DistDesc, cap: int = DEFAULT_DENOTE_CAP) -> Codebook:
    domain = dist.domain(cap)
    with_lengths = [(codeword_length(dist, x), i, x) for i, x in enumerate(domain)]
    with_lengths.sort(key=lambda t: (t[0], t[1]))
    assigned: dict[str, str] = {}
    value = 0
    prev_len = None
    for length, _, x in with_lengths:
        if prev_len is not None:
            value <<= length - prev_len
        if value >= (1 << length):
            raise DistLangError("Kraft overflow while packing codewords")
        assigned[x] = format(value, f"0{length}b") if length else ""
        value += 1
        prev_len = length
    return Codebook(assignments=tuple((x, assigned[x]) for x in domain))


# -- deficiency, typicality, two-part ------------------------------------------


def model_condition(dist: DistDesc) -> Condition:
    return Condition.of_model(dist)


@dataclass(frozen=True)
class ProbDeficiencyRecord:
    x: str
    dist: DistDesc
    neglog: float
    k_cond: int  # K(x | Model(dist))
    delta_raw: float  # neglog - k_cond, before shifting out the machine's offset
    delta_norm: float  # delta_raw - min_y delta_raw(y), always >= 0

    def typical(self, beta: float) -> bool:
        return self.delta_norm <= beta + 1e-9


def deficiency_p(
    x: str,
    dist: DistDesc,
    L_c: int = DEFAULT_COND_MAX_LEN,
    budgets: Budgets | None = None,
    workers: int = 1,
    cache_dir: str | Path | None = None,
    warn: Callable[[str], None] | None = None,
    backend: str | None = None,
    cap: int = DEFAULT_DENOTE_CAP,
    _cache: _CondCache | None = None,
) -> ProbDeficiencyRecord:
    """Randomness deficiency of x within dist, normalized against the
    least-deficient domain element. The winner of the normalization is
    found by exact rational comparison (score = mass * 2^K, descending in
    deficiency), so no float tie-breaking is involved; only the reported
    gap is a real. For UniformOn this equals the finite-set deficiency —
    the condition object is the same."""
    mx = dist.mass(x)
    if mx == 0:
        raise ValueError(f"{bits_to_text(x)} has zero mass under {format_distlang(dist)}")
    cache = _cache or _CondCache(L_c, budgets, workers, cache_dir, warn, backend)
    table = cache.table(model_condition(dist))

    def k_or_raise(y: str) -> int:
        k = table.k_of(y)
        if k is None:
            raise Absent(y, table.L, conditioned=True)
        return k

    kx = k_or_raise(x)
    best_y, best_k, best_score = None, None, Fraction(-1)
    for y in dist.domain(cap):
        ky = k_or_raise(y)
        score = dist.mass(y) * (1 << ky)  # large score = small deficiency
        if score > best_score:
            best_y, best_k, best_score = y, ky, score
    assert best_y is not None and best_k is not None
    delta_raw = dist.neglog(x) - kx
    delta_norm = delta_raw - (dist.neglog(best_y) - best_k)
    return ProbDeficiencyRecord(
        x=x, dist=dist, neglog=dist.neglog(x), k_cond=kx,
        delta_raw=delta_raw, delta_norm=delta_norm,
    )


def two_part_p(x: str, dist: DistDesc) -> int:
    """Model bits plus ideal-code bits: len(code) + ceil(-log2 mass(x))."""
    return dist.code_len + codeword_length(dist, x)


@dataclass(frozen=True)
class SuffStatPReport:
    x: str
    beta: int
    lambda_min: int
    optimal: tuple[DistDesc, ...]
    minimal: DistDesc
    in_class_sufficient: bool | None = None


def suffstat_p(
    x: str,
    beta: int = 0,
    opts: ModelOpts | None = None,
    family: Iterable[DistDesc] | None = None,
    reference_lambda: int | None = None,
) -> SuffStatPReport:
    """Distribution-level sufficient statistics. The default family is
    the uniform wrap of the set family (each set model S becomes
    UniformOn(S), two extra tag bits), which keeps set-stochastic strings
    quasistochastic at the measured constant. Pass ``family`` for a
    restricted class, plus ``reference_lambda`` to have the report state
    whether the class stays within beta of the unrestricted total."""
    if beta < 0:
        raise ValueError("beta must be >= 0")
    if family is None:
        singleton_total = two_part_p(x, UniformOn(Singleton(x)))
        # set codes are 2 bits shorter than their uniform wrap
        alpha_cap = singleton_total + beta + 1 - 2
        family = [UniformOn(d) for d in enumerate_models(x, alpha_cap, opts)]
    candidates = [(two_part_p(x, d), d) for d in family if d.mass(x) > 0]
    if not candidates:
        raise ValueError("family gives x zero mass everywhere")
    lambda_min = min(t for t, _ in candidates)
    optimal = [d for t, d in candidates if t <= lambda_min + beta]
    optimal.sort(key=lambda d: (d.code_len, d.code))
    in_class = None
    if reference_lambda is not None:
        in_class = lambda_min <= reference_lambda + beta
    return SuffStatPReport(
        x=x,
        beta=beta,
        lambda_min=lambda_min,
        optimal=tuple(optimal),
        minimal=optimal[0],
        in_class_sufficient=in_class,
    )


# -- complexity-level sets as distributions ------------------------------------


def pk(table: ComplexityTable, k: int) -> UniformOn:
    """Uniform distribution on S^k = {x : K(x) <= k}, materialized as an
    explicit list in canonical order."""
    if k > table.L:
        raise ValueError(f"k={k} exceeds the table cap L={table.L}")
    members = sorted(
        (x for x in table.sorted_outputs() if table.k_of(x) <= k),
        key=lambda s: (len(s), s),
    )
    if not members:
        raise ValueError(f"no strings of complexity <= {k} in the table")
    return UniformOn(ListSet(tuple(members)))


# -- Bernoulli / weight-class demonstration ------------------------------------


class DemoRow(NamedTuple):
    x: str
    weight: int
    k: int
    hamming_total: int  # two-part total through the weight-class model
    lambda_min: int  # unrestricted two-part optimum
    flagged: bool  # weight-class total exceeds K(x) + beta


@dataclass(frozen=True)
class BernoulliDemoReport:
    n: int
    beta: int
    rows: tuple[DemoRow, ...]

    @property
    def flagged(self) -> tuple[str, ...]:
        return tuple(r.x for r in self.rows if r.flagged)

    def row_of(self, x: str) -> DemoRow:
        for r in self.rows:
            if r.x == x:
                return r
        raise KeyError(bits_to_text(x))

    def to_csv(self) -> str:
        lines = ["x,weight,K,hamming_total,lambda_min,flagged"]
        for r in self.rows:
            lines.append(
                f"{bits_to_text(r.x)},{r.weight},{r.k},{r.hamming_total},"
                f"{r.lambda_min},{int(r.flagged)}"
            )
        return "\n".join(lines) + "\n"


def bernoulli_demo(
    table: ComplexityTable, n: int, beta: int, opts: ModelOpts | None = None
) -> BernoulliDemoReport:
    """The restricted-class demonstration: within the weight-class
    (Hamming) family the only model of x is Hamming(n, weight(x)); x is
    flagged when that class total cannot compete with the machine's own
    one-part code at slack beta. Regular strings of balanced weight —
    (01)^(n/2) foremost — get flagged while typical strings of the same
    weight do not."""
    if n % 2 != 0 or n > 12:
        raise ValueError("demo needs even n <= 12")
    rows = []
    for v in range(1 << n):
        x = format(v, f"0{n}b") if n else ""
        weight = x.count("1")
        kx = require_k(table, x)
        hamming_total = two_part(x, Hamming(n, weight))
        lam = suffstat(x, beta, opts).lambda_min
        rows.append(
            DemoRow(
                x=x,
                weight=weight,
                k=kx,
                hamming_total=hamming_total,
                lambda_min=lam,
                flagged=hamming_total > kx + beta,
            )
        )
    return BernoulliDemoReport(n=n, beta=beta, rows=tuple(rows))
