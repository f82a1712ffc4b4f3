"""Finite-set models described in a small prefix-free language (SetLang).

A description plays the role of the model S: its *code length* is the
model complexity (description-level, no second machine layer), its
denotation is a nonempty finite set of bit strings. On top of that:
randomness deficiency, two-part codes, structure functions h/beta/lambda,
sufficient-statistic search and the (alpha, beta)-stochasticity predicate.

Grammar (tags chosen prefix-free):

    00  Singleton(x)        std(x)
    01  All(n)              bar(b(n))           all strings of length n
    100 Cyl(prefix, n)      std(prefix) bar(b(n))   length-n extensions
    101 Hamming(n, s)       bar(b(n)) bar(b(s))     weight-s length-n
    110 Union(parts)        bar(b(count)) codes...  count >= 2
    111 List(elements)      bar(b(count)) std(e)... count >= 1

Conventions: deficiencies are *normalized* — delta_norm(x) is measured
from the most compressible member (max_y K(y|S) - K(x|S)), which is zero
exactly when x attains the in-set maximum; on this machine the raw
log|S| - K(x|S) carries a uniform negative offset that would make every
element look atypical.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterable, Iterator, NamedTuple

from .bits import (
    BitReader,
    CodeError,
    bar_nat,
    bits_to_text,
    ceil_log2,
    check_bits,
    nat_len,
    nat_to_bits,
    pair,
    std,
    std_len,
    text_to_bits,
)
from .cache import load_or_build
from .complexity import Absent, require_k
from .enumeration import DEFAULT_COND_MAX_LEN, ComplexityTable
from .machine import Budgets, Condition

DEFAULT_DENOTE_CAP = 1 << 20
DEFAULT_ALPHA_BOUND = 40


class SetLangError(CodeError):
    """Malformed SetLang code or textual syntax."""


class CapExceeded(Exception):
    """A denotation is larger than the materialization cap."""


# -- description AST ---------------------------------------------------------


class SetDesc:
    """Base class; concrete shapes below. Instances are immutable."""

    __slots__ = ()

    @property
    def code(self) -> str:
        return _encode_cached(self)

    @property
    def code_len(self) -> int:
        return len(self.code)

    def member(self, x: str) -> bool:
        raise NotImplementedError

    def size(self, cap: int = DEFAULT_DENOTE_CAP) -> int:
        raise NotImplementedError

    def denote(self, cap: int = DEFAULT_DENOTE_CAP) -> list[str]:
        """Members in canonical (length, lexicographic) order."""
        raise NotImplementedError


@dataclass(frozen=True, slots=True)
class Singleton(SetDesc):
    x: str

    def __post_init__(self):
        check_bits(self.x)

    def member(self, x: str) -> bool:
        return x == self.x

    def size(self, cap: int = DEFAULT_DENOTE_CAP) -> int:
        return 1

    def denote(self, cap: int = DEFAULT_DENOTE_CAP) -> list[str]:
        return [self.x]


@dataclass(frozen=True, slots=True)
class All(SetDesc):
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise SetLangError("All(n) needs n >= 0")

    def member(self, x: str) -> bool:
        return len(x) == self.n

    def size(self, cap: int = DEFAULT_DENOTE_CAP) -> int:
        return 1 << self.n

    def denote(self, cap: int = DEFAULT_DENOTE_CAP) -> list[str]:
        if self.size() > cap:
            raise CapExceeded(f"|All({self.n})| = 2^{self.n} exceeds cap {cap}")
        return [format(v, f"0{self.n}b") if self.n else "" for v in range(1 << self.n)]


@dataclass(frozen=True, slots=True)
class Cyl(SetDesc):
    prefix: str
    n: int

    def __post_init__(self):
        check_bits(self.prefix)
        if not 0 <= len(self.prefix) <= self.n:
            raise SetLangError("Cyl needs l(prefix) <= n")

    def member(self, x: str) -> bool:
        return len(x) == self.n and x.startswith(self.prefix)

    def size(self, cap: int = DEFAULT_DENOTE_CAP) -> int:
        return 1 << (self.n - len(self.prefix))

    def denote(self, cap: int = DEFAULT_DENOTE_CAP) -> list[str]:
        free = self.n - len(self.prefix)
        if self.size() > cap:
            raise CapExceeded(f"|Cyl| = 2^{free} exceeds cap {cap}")
        return [self.prefix + (format(v, f"0{free}b") if free else "") for v in range(1 << free)]


@dataclass(frozen=True, slots=True)
class Hamming(SetDesc):
    n: int
    s: int

    def __post_init__(self):
        if not 0 <= self.s <= self.n:
            raise SetLangError("Hamming needs 0 <= s <= n")

    def member(self, x: str) -> bool:
        return len(x) == self.n and x.count("1") == self.s

    def size(self, cap: int = DEFAULT_DENOTE_CAP) -> int:
        return math.comb(self.n, self.s)

    def denote(self, cap: int = DEFAULT_DENOTE_CAP) -> list[str]:
        if self.size() > cap:
            raise CapExceeded(f"|Hamming({self.n},{self.s})| exceeds cap {cap}")
        out = []
        for ones in combinations(range(self.n), self.s):
            chars = ["0"] * self.n
            for i in ones:
                chars[i] = "1"
            out.append("".join(chars))
        out.sort()
        return out


@dataclass(frozen=True, slots=True)
class UnionSet(SetDesc):
    parts: tuple[SetDesc, ...]

    def __post_init__(self):
        if len(self.parts) < 2:
            raise SetLangError("Union needs at least 2 parts")

    def member(self, x: str) -> bool:
        return any(p.member(x) for p in self.parts)

    def size(self, cap: int = DEFAULT_DENOTE_CAP) -> int:
        # inclusion-exclusion keeps huge structured unions exact without
        # materializing; nested unions fall back to the capped walk
        if len(self.parts) <= 8 and all(_is_simple(p) for p in self.parts):
            total = 0
            for r in range(1, len(self.parts) + 1):
                sign = 1 if r % 2 else -1
                for combo in combinations(self.parts, r):
                    total += sign * _intersection_size(combo)
            return total
        return len(self.denote(cap))

    def denote(self, cap: int = DEFAULT_DENOTE_CAP) -> list[str]:
        seen: set[str] = set()
        for p in self.parts:
            seen.update(p.denote(cap))
            if len(seen) > cap:
                raise CapExceeded(f"union grew past cap {cap}")
        return sorted(seen, key=lambda s: (len(s), s))


def _is_simple(desc: SetDesc) -> bool:
    return isinstance(desc, (Singleton, All, Cyl, Hamming, ListSet))


def _intersection_size(parts: tuple[SetDesc, ...]) -> int:
    """Exact size of the intersection of simple shapes: accumulate the
    implied length / prefix / weight constraints and either count the
    surviving explicit strings or close the count combinatorially."""
    n: int | None = None
    prefix = ""
    weight: int | None = None
    finite: set[str] | None = None
    for p in parts:
        if isinstance(p, Singleton):
            finite = {p.x} if finite is None else finite & {p.x}
        elif isinstance(p, ListSet):
            s = set(p.elems)
            finite = s if finite is None else finite & s
        elif isinstance(p, All):
            if n is not None and n != p.n:
                return 0
            n = p.n
        elif isinstance(p, Cyl):
            if n is not None and n != p.n:
                return 0
            n = p.n
            short, long = sorted((prefix, p.prefix), key=len)
            if not long.startswith(short):
                return 0
            prefix = long
        elif isinstance(p, Hamming):
            if n is not None and n != p.n:
                return 0
            n = p.n
            if weight is not None and weight != p.s:
                return 0
            weight = p.s
        else:
            raise TypeError(f"not a simple shape: {p!r}")
    if finite is not None:
        return sum(
            1
            for x in finite
            if (n is None or len(x) == n)
            and x.startswith(prefix)
            and (weight is None or x.count("1") == weight)
        )
    assert n is not None  # only All/Cyl/Hamming left, and each sets n
    free = n - len(prefix)
    if weight is None:
        return 1 << free
    w_free = weight - prefix.count("1")
    if not 0 <= w_free <= free:
        return 0
    return math.comb(free, w_free)


@dataclass(frozen=True, slots=True)
class ListSet(SetDesc):
    elems: tuple[str, ...]

    def __post_init__(self):
        if not self.elems:
            raise SetLangError("List needs at least 1 element")
        for e in self.elems:
            check_bits(e)

    def member(self, x: str) -> bool:
        return x in self.elems

    def size(self, cap: int = DEFAULT_DENOTE_CAP) -> int:
        return len(set(self.elems))

    def denote(self, cap: int = DEFAULT_DENOTE_CAP) -> list[str]:
        return sorted(set(self.elems), key=lambda s: (len(s), s))


# -- encoding ----------------------------------------------------------------


@lru_cache(maxsize=65536)
def _encode_cached(desc: SetDesc) -> str:
    return encode(desc)


def encode(desc: SetDesc) -> str:
    if isinstance(desc, Singleton):
        return "00" + std(desc.x)
    if isinstance(desc, All):
        return "01" + bar_nat(desc.n)
    if isinstance(desc, Cyl):
        return "100" + std(desc.prefix) + bar_nat(desc.n)
    if isinstance(desc, Hamming):
        return "101" + bar_nat(desc.n) + bar_nat(desc.s)
    if isinstance(desc, UnionSet):
        return "110" + bar_nat(len(desc.parts)) + "".join(encode(p) for p in desc.parts)
    if isinstance(desc, ListSet):
        return "111" + bar_nat(len(desc.elems)) + "".join(std(e) for e in desc.elems)
    raise TypeError(f"not a set description: {desc!r}")


def _read_desc(r: BitReader) -> SetDesc:
    tag = r.take(2)
    if tag == "00":
        return Singleton(r.read_std())
    if tag == "01":
        return All(r.read_bar_nat())
    tag += r.take(1)
    if tag == "100":
        prefix = r.read_std()
        return Cyl(prefix, r.read_bar_nat())
    if tag == "101":
        n = r.read_bar_nat()
        return Hamming(n, r.read_bar_nat())
    if tag == "110":
        count = r.read_bar_nat()
        if count < 2:
            raise SetLangError("Union count must be >= 2")
        return UnionSet(tuple(_read_desc(r) for _ in range(count)))
    count = r.read_bar_nat()
    if count < 1:
        raise SetLangError("List count must be >= 1")
    return ListSet(tuple(r.read_std() for _ in range(count)))


def decode(bits: str) -> SetDesc:
    r = BitReader(bits)
    try:
        desc = _read_desc(r)
    except CodeError as exc:
        raise SetLangError(f"malformed set code: {exc}") from exc
    if not r.at_end():
        raise SetLangError("trailing bits after set code")
    return desc


# -- textual syntax ----------------------------------------------------------


def format_setlang(desc: SetDesc) -> str:
    if isinstance(desc, Singleton):
        return f"singleton:{bits_to_text(desc.x)}"
    if isinstance(desc, All):
        return f"all:{desc.n}"
    if isinstance(desc, Cyl):
        return f"cyl:{bits_to_text(desc.prefix)}/{desc.n}"
    if isinstance(desc, Hamming):
        return f"ham:{desc.n},{desc.s}"
    if isinstance(desc, UnionSet):
        return "union(" + ",".join(format_setlang(p) for p in desc.parts) + ")"
    if isinstance(desc, ListSet):
        return "list{" + ",".join(bits_to_text(e) for e in desc.elems) + "}"
    raise TypeError(f"not a set description: {desc!r}")


def _split_top(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    # the ham:n,s form carries a bare comma, so rejoin its two halves
    merged: list[str] = []
    for p in parts:
        if merged and re.fullmatch(r"ham:\d+", merged[-1].strip()) and re.fullmatch(
            r"\d+", p.strip()
        ):
            merged[-1] = f"{merged[-1]},{p}"
        else:
            merged.append(p)
    return merged


def parse_setlang(text: str) -> SetDesc:
    text = text.strip()
    try:
        if text.startswith("singleton:"):
            return Singleton(text_to_bits(text[10:]))
        if text.startswith("all:"):
            return All(int(text[4:]))
        if text.startswith("cyl:"):
            prefix_text, _, n_text = text[4:].partition("/")
            return Cyl(text_to_bits(prefix_text), int(n_text))
        if text.startswith("ham:"):
            n_text, _, s_text = text[4:].partition(",")
            return Hamming(int(n_text), int(s_text))
        if text.startswith("union(") and text.endswith(")"):
            return UnionSet(tuple(parse_setlang(p) for p in _split_top(text[6:-1])))
        if text.startswith("list{") and text.endswith("}"):
            return ListSet(tuple(text_to_bits(e.strip()) for e in _split_top(text[5:-1])))
    except (ValueError, CodeError) as exc:
        raise SetLangError(f"bad model syntax {text!r}: {exc}") from exc
    raise SetLangError(f"bad model syntax {text!r}")


# -- model enumeration -------------------------------------------------------


@dataclass(frozen=True)
class ModelOpts:
    union_width: int = 3  # max parts per union (depth stays 1: parts are base sets)
    list_cap: int = 4  # max elements per list
    alpha_bound: int = DEFAULT_ALPHA_BOUND


def _base_pool(budget: int) -> list[SetDesc]:
    """Every Singleton/All/Cyl/Hamming whose code fits in ``budget`` bits."""
    pool: list[SetDesc] = []
    l = 0
    while 2 + std_len(l) <= budget:
        pool.extend(Singleton(format(v, f"0{l}b") if l else "") for v in range(1 << l))
        l += 1
    n = 0
    while 2 + 2 * nat_len(n) + 1 <= budget:
        pool.append(All(n))
        n += 1
    lp = 0
    while True:
        if 3 + std_len(lp) + 1 > budget:  # even n with 1-bit bar won't fit
            break
        for v in range(1 << lp):
            p = format(v, f"0{lp}b") if lp else ""
            n = lp
            while 3 + std_len(lp) + 2 * nat_len(n) + 1 <= budget:
                pool.append(Cyl(p, n))
                n += 1
        lp += 1
    n = 0
    while 3 + (2 * nat_len(n) + 1) + 1 <= budget:
        for s in range(n + 1):
            if 3 + (2 * nat_len(n) + 1) + (2 * nat_len(s) + 1) <= budget:
                pool.append(Hamming(n, s))
        n += 1
    return pool


def _tuples_within(pool: list[tuple[int, object]], count: int, budget: int) -> Iterator[tuple]:
    """Ordered count-tuples with repetition whose entry costs sum <= budget.

    ``pool`` must be sorted by ascending cost so the prune below (this
    entry plus cheapest fillers for the remaining slots) can break."""
    if count == 0:
        yield ()
        return
    if not pool:
        return
    min_cost = pool[0][0]
    for cost, item in pool:
        if cost + (count - 1) * min_cost > budget:
            break
        for rest in _tuples_within(pool, count - 1, budget - cost):
            yield (item,) + rest


def enumerate_models(x: str, alpha_max: int, opts: ModelOpts | None = None) -> list[SetDesc]:
    """All descriptions in the family with member(x) and code length
    strictly below alpha_max, in deterministic (length, code) order.

    The family is the full grammar restricted to depth-1 unions of base
    sets (width <= opts.union_width) and lists of <= opts.list_cap
    elements; below 16 bits this equals the unrestricted grammar, which
    the blind-decoding oracle test pins down.
    """
    opts = opts or ModelOpts()
    if alpha_max > opts.alpha_bound:
        raise ValueError(f"alpha_max {alpha_max} exceeds configured bound {opts.alpha_bound}")
    check_bits(x)
    found: list[SetDesc] = []

    def consider(desc: SetDesc):
        if desc.code_len < alpha_max:
            found.append(desc)

    consider(Singleton(x))
    consider(All(len(x)))
    for lp in range(len(x) + 1):
        consider(Cyl(x[:lp], len(x)))
    consider(Hamming(len(x), x.count("1")))

    # unions: at least one part must contain x
    min_part = 3  # smallest base code (Singleton(""), All(0))
    for count in range(2, opts.union_width + 1):
        header = 3 + 2 * nat_len(count) + 1
        budget = alpha_max - 1 - header
        if budget < count * min_part:
            continue
        pool = [(d.code_len, d) for d in _base_pool(budget - (count - 1) * min_part)]
        pool.sort(key=lambda t: (t[0], t[1].code))
        for parts in _tuples_within(pool, count, budget):
            if any(p.member(x) for p in parts):
                consider(UnionSet(parts))

    # lists: x must literally appear among the elements
    for count in range(1, opts.list_cap + 1):
        header = 3 + 2 * nat_len(count) + 1
        budget = alpha_max - 1 - header
        if std_len(len(x)) + (count - 1) > budget:  # x plus minimal others
            continue
        strings: list[tuple[int, str]] = []
        l = 0
        while std_len(l) + (count - 1) <= budget:
            strings.extend(
                (std_len(l), format(v, f"0{l}b") if l else "") for v in range(1 << l)
            )
            l += 1
        for elems in _tuples_within(strings, count, budget):
            if x in elems:
                consider(ListSet(elems))

    found.sort(key=lambda d: (d.code_len, d.code))
    return found


# -- deficiency and two-part codes -------------------------------------------


def uniform_condition(desc: SetDesc) -> Condition:
    """Model condition: the uniform distribution on the described set
    (SFDECODE sees its canonical codebook)."""
    from .models_prob import UniformOn  # late import; models_prob builds on this module

    return Condition.of_model(UniformOn(desc))


def star_condition(desc: SetDesc) -> Condition:
    """String condition carrying the description and its length — the
    analogue of conditioning on (S, K(S)): the code bits are literally
    available to COPYIN."""
    code = desc.code
    return Condition.string(pair(code, nat_to_bits(len(code))))


@dataclass(frozen=True)
class DeficiencyRecord:
    x: str
    desc: SetDesc
    log_size: int  # ceil(log2 |S|)
    k_cond_set: int  # K(x | uniform-on-S model)
    delta_raw: int  # log_size - k_cond_set
    delta_norm: int  # max_y K(y|S) - K(x|S), always >= 0
    delta_star: int  # same, conditioned on (code, len(code)) as a string

    def typical(self, beta: int) -> bool:
        return self.delta_norm <= beta


class _CondCache:
    """Per-run memo of conditional tables keyed by condition fingerprint."""

    def __init__(self, L_c, budgets, workers, cache_dir, warn, backend):
        self.L_c = L_c
        self.budgets = budgets
        self.workers = workers
        self.cache_dir = cache_dir
        self.warn = warn
        self.backend = backend
        self._tables: dict[str, ComplexityTable] = {}

    def table(self, cond: Condition) -> ComplexityTable:
        fp = cond.fingerprint()
        t = self._tables.get(fp)
        if t is None:
            t, _ = load_or_build(
                self.L_c,
                cond,
                self.budgets,
                workers=self.workers,
                cache_dir=self.cache_dir,
                warn=self.warn,
                backend=self.backend,
            )
            self._tables[fp] = t
        return t


def _normalized_deficiencies(
    x: str, members: list[str], table: ComplexityTable
) -> tuple[int, int]:
    """(K(x|.), max_y K(y|.) - K(x|.)) over the member list."""
    kx = None
    kmax = -1
    for y in members:
        k = table.k_of(y)
        if k is None:
            raise Absent(y, table.L, conditioned=True)
        if k > kmax:
            kmax = k
        if y == x:
            kx = k
    if kx is None:
        k = table.k_of(x)
        if k is None:
            raise Absent(x, table.L, conditioned=True)
        kx = k
    return kx, kmax - kx


def deficiency(
    x: str,
    desc: SetDesc,
    L_c: int = DEFAULT_COND_MAX_LEN,
    budgets: Budgets | None = None,
    workers: int = 1,
    cache_dir: str | Path | None = None,
    warn: Callable[[str], None] | None = None,
    backend: str | None = None,
    denote_cap: int = DEFAULT_DENOTE_CAP,
    _cache: "_CondCache | None" = None,
) -> DeficiencyRecord:
    if not desc.member(x):
        raise ValueError(f"{bits_to_text(x)} is not in {format_setlang(desc)}")
    cache = _cache or _CondCache(L_c, budgets, workers, cache_dir, warn, backend)
    members = desc.denote(denote_cap)
    log_size = ceil_log2(desc.size(denote_cap))

    k_set, d_norm = _normalized_deficiencies(x, members, cache.table(uniform_condition(desc)))
    _, d_star = _normalized_deficiencies(x, members, cache.table(star_condition(desc)))
    return DeficiencyRecord(
        x=x,
        desc=desc,
        log_size=log_size,
        k_cond_set=k_set,
        delta_raw=log_size - k_set,
        delta_norm=d_norm,
        delta_star=d_star,
    )


def two_part(x: str, desc: SetDesc, denote_cap: int = DEFAULT_DENOTE_CAP) -> int:
    """Model bits plus index bits: len(code) + ceil(log2 |S|)."""
    if not desc.member(x):
        raise ValueError(f"{bits_to_text(x)} is not in {format_setlang(desc)}")
    return desc.code_len + ceil_log2(desc.size(denote_cap))


# -- structure function ------------------------------------------------------


class CurveRow(NamedTuple):
    alpha: int
    h: float  # min log2 |S| over models with code_len < alpha
    beta: int | None  # min delta_norm, when deficiencies were computed
    beta_star: int | None
    lam: float  # h + alpha


@dataclass(frozen=True)
class StructureCurve:
    x: str
    alpha_max: int
    rows: tuple[CurveRow, ...]

    def h(self, alpha: int) -> float:
        for row in self.rows:
            if row.alpha == alpha:
                return row.h
        raise KeyError(f"no models below alpha={alpha}")

    def to_csv(self) -> str:
        lines = ["alpha,h,beta,beta_star,lambda"]
        for r in self.rows:
            beta = "" if r.beta is None else str(r.beta)
            beta_star = "" if r.beta_star is None else str(r.beta_star)
            lines.append(f"{r.alpha},{_fmt_real(r.h)},{beta},{beta_star},{_fmt_real(r.lam)}")
        return "\n".join(lines) + "\n"


def _fmt_real(v: float) -> str:
    """Deterministic decimal form with documented 1e-9 precision."""
    text = f"{v:.9f}".rstrip("0").rstrip(".")
    return text if text else "0"


def structfn(
    x: str,
    alpha_max: int,
    opts: ModelOpts | None = None,
    include_deficiency: bool = True,
    L_c: int = DEFAULT_COND_MAX_LEN,
    budgets: Budgets | None = None,
    workers: int = 1,
    cache_dir: str | Path | None = None,
    warn: Callable[[str], None] | None = None,
    backend: str | None = None,
    denote_cap: int = DEFAULT_DENOTE_CAP,
) -> StructureCurve:
    """The h / beta / beta_star / lambda curves of x over the model family.

    h(alpha) minimizes real-valued log2|S| over models of code length
    strictly below alpha; beta curves minimize the normalized
    deficiencies; rows run from the first alpha admitting a model."""
    models = enumerate_models(x, alpha_max, opts)
    cache = _CondCache(L_c, budgets, workers, cache_dir, warn, backend)
    per_model: list[tuple[int, float, int | None, int | None]] = []
    for desc in models:
        log2_size = math.log2(desc.size(denote_cap))
        if include_deficiency:
            rec = deficiency(
                x, desc, L_c=L_c, budgets=budgets, denote_cap=denote_cap, _cache=cache
            )
            per_model.append((desc.code_len, log2_size, rec.delta_norm, rec.delta_star))
        else:
            per_model.append((desc.code_len, log2_size, None, None))

    rows: list[CurveRow] = []
    if models:
        first_alpha = models[0].code_len + 1
        for alpha in range(first_alpha, alpha_max + 1):
            eligible = [m for m in per_model if m[0] < alpha]
            h = min(m[1] for m in eligible)
            beta = min((m[2] for m in eligible), default=None) if include_deficiency else None
            beta_star = (
                min((m[3] for m in eligible), default=None) if include_deficiency else None
            )
            rows.append(CurveRow(alpha, h, beta, beta_star, h + alpha))
    return StructureCurve(x=x, alpha_max=alpha_max, rows=tuple(rows))


# -- sufficient statistics and stochasticity ----------------------------------


@dataclass(frozen=True)
class SuffStatReport:
    x: str
    beta: int
    lambda_min: int
    optimal: tuple[SetDesc, ...]  # two_part <= lambda_min + beta
    minimal: SetDesc  # least (code_len, code) among optimal
    in_class_sufficient: bool | None = None  # only when a reference lambda was given


def suffstat(
    x: str,
    beta: int = 0,
    opts: ModelOpts | None = None,
    family: Iterable[SetDesc] | None = None,
    reference_lambda: int | None = None,
    denote_cap: int = DEFAULT_DENOTE_CAP,
) -> SuffStatReport:
    """Optimal models of x: those whose two-part total is within beta of
    the best achievable. With an explicit ``family`` the search is
    class-restricted and, given ``reference_lambda`` (the unrestricted
    lambda_min), reports whether the class contains a sufficient
    statistic at this beta."""
    if beta < 0:
        raise ValueError("beta must be >= 0")
    if family is None:
        # two_part(Singleton) bounds lambda_min, so no candidate's code
        # can be longer than that total plus the slack; the family's own
        # alpha bound clamps runaway betas (class restriction binds there)
        alpha_cap = min(
            two_part(x, Singleton(x)) + beta + 1, (opts or ModelOpts()).alpha_bound
        )
        family = enumerate_models(x, alpha_cap, opts)
    candidates = [(two_part(x, d, denote_cap), d) for d in family if d.member(x)]
    if not candidates:
        raise ValueError("family contains no model of x")
    lambda_min = min(t for t, _ in candidates)
    optimal = [d for t, d in candidates if t <= lambda_min + beta]
    optimal.sort(key=lambda d: (d.code_len, d.code))
    in_class = None
    if reference_lambda is not None:
        in_class = lambda_min <= reference_lambda + beta
    return SuffStatReport(
        x=x,
        beta=beta,
        lambda_min=lambda_min,
        optimal=tuple(optimal),
        minimal=optimal[0],
        in_class_sufficient=in_class,
    )


def stochastic(
    x: str,
    alpha: int,
    beta: int,
    table: ComplexityTable,
    opts: ModelOpts | None = None,
    denote_cap: int = DEFAULT_DENOTE_CAP,
) -> bool:
    """(alpha, beta)-stochastic within the family: some model of code
    length <= alpha contains x with ceil(log2|S|) - K(x) <= beta. Uses
    the one-part machine K from ``table`` (raises Absent if x is beyond
    its cap) and exact integer logs."""
    kx = require_k(table, x)
    for desc in enumerate_models(x, alpha + 1, opts):
        if ceil_log2(desc.size(denote_cap)) - kx <= beta:
            return True
    return False


@dataclass(frozen=True)
class NonStochReport:
    n: int
    beta: int
    min_len: dict[str, int]  # x -> minimal model length with delta_star <= beta
    histogram: dict[int, int]
    argmax: tuple[str, ...]

    @property
    def max_len(self) -> int:
        return max(self.min_len.values())


def nonstoch_scan(
    n: int,
    beta: int,
    opts: ModelOpts | None = None,
    L_c: int = DEFAULT_COND_MAX_LEN,
    budgets: Budgets | None = None,
    workers: int = 1,
    cache_dir: str | Path | None = None,
    warn: Callable[[str], None] | None = None,
    backend: str | None = None,
) -> NonStochReport:
    """For every x of length n, the least model length whose delta_star
    is within beta — the most structure-resistant strings stand out as
    the argmax. Exhaustive and deterministic; n is capped at 12."""
    if n > 12:
        raise ValueError("scan is exhaustive over 2^n strings; n > 12 is not supported")
    cache = _CondCache(L_c, budgets, workers, cache_dir, warn, backend)
    min_len: dict[str, int] = {}
    for v in range(1 << n):
        x = format(v, f"0{n}b") if n else ""
        # Singleton always qualifies (delta_star = 0), so the search is
        # bounded by its length.
        alpha_cap = Singleton(x).code_len + 1
        best: int | None = None
        for desc in enumerate_models(x, alpha_cap, opts):
            if best is not None and desc.code_len >= best:
                break  # models come sorted by length
            members = desc.denote()
            _, d_star = _normalized_deficiencies(x, members, cache.table(star_condition(desc)))
            if d_star <= beta:
                best = desc.code_len
        assert best is not None
        min_len[x] = best
    histogram: dict[int, int] = {}
    for l in min_len.values():
        histogram[l] = histogram.get(l, 0) + 1
    top = max(min_len.values())
    argmax = tuple(sorted((x for x, l in min_len.items() if l == top)))
    return NonStochReport(n=n, beta=beta, min_len=min_len, histogram=histogram, argmax=argmax)
