"""Classical-vs-machine information audits on small exact joint models.

A joint model is a finite parameter set with exact rational priors and a
per-parameter distribution over strings. Classical quantities (mutual
information, sufficiency of a statistic) are computed from the definition
with exact masses; their machine-side analogues are read off enumeration
tables. The gap between the two sides is a machine constant with no
theoretical value here, so audits measure it and the constants file
freezes the measurement for regression.

Parameters are materialized as label strings: K(theta) always means K of
the label, and conditioning on theta means conditioning on the label's
canonical witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, NamedTuple, Sequence

from .bits import (
    bar_nat,
    bits_to_nat,
    bits_to_text,
    ceil_log2,
    check_bits,
    nat_to_bits,
    std,
    text_to_bits,
)
from .cache import load_or_build
from .complexity import (
    DEFAULT_SOI_LEN_CAP,
    Absent,
    SoiReport,
    _all_strings,
    mutual_info,
    require_k,
    shortest_program,
    soi_audit,
)
from .enumeration import ComplexityTable
from .machine import Budgets, Condition, Op, run
from .models_prob import (
    Bernoulli,
    DistDesc,
    TableDist,
    _rat_bits,
    format_distlang,
    parse_distlang,
)
from .models_set import DEFAULT_DENOTE_CAP, SetDesc, Hamming, _fmt_real
from .skstats import logn_gap

TOL = 1e-9
DEFAULT_NI_LEN_CAP = 6
MASS_TARGET = Fraction(9, 10)


class JointModelError(Exception):
    """Malformed joint model, statistic, or joint-model file input."""


def _canon_key(x: str) -> tuple[int, str]:
    return (len(x), x)


def _log2_frac(q: Fraction) -> float:
    return math.log2(q.numerator) - math.log2(q.denominator)


# -- joint models and statistics ----------------------------------------------


@dataclass(frozen=True, slots=True)
class JointModel:
    """p(i, x) = priors[i] * dists[i].mass(x), everything an exact rational.

    Labels are distinct bit strings; priors sum to exactly 1. Per-label
    mass totals are not re-checked here: the distribution types already
    guarantee a total of at most 1 each.
    """

    thetas: tuple[str, ...]
    priors: tuple[Fraction, ...]
    dists: tuple[DistDesc, ...]

    def __post_init__(self):
        if not self.thetas:
            raise JointModelError("a joint model needs at least one parameter")
        if len(set(self.thetas)) != len(self.thetas):
            raise JointModelError("duplicate parameter labels")
        for label in self.thetas:
            check_bits(label)
        if not (len(self.priors) == len(self.dists) == len(self.thetas)):
            raise JointModelError("labels, priors and distributions must align")
        object.__setattr__(self, "priors", tuple(Fraction(p) for p in self.priors))
        if any(p < 0 for p in self.priors):
            raise JointModelError("priors must be nonnegative")
        if sum(self.priors, Fraction(0)) != 1:
            raise JointModelError("priors must sum to exactly 1")

    def x_domain(self, cap: int = DEFAULT_DENOTE_CAP) -> tuple[str, ...]:
        seen: set[str] = set()
        for d in self.dists:
            seen.update(d.domain(cap))
        return tuple(sorted(seen, key=_canon_key))

    def support(self, cap: int = DEFAULT_DENOTE_CAP) -> list[tuple[int, str, Fraction]]:
        """(parameter index, x, joint mass) triples with positive mass,
        in deterministic (parameter, then canonical x) order."""
        out: list[tuple[int, str, Fraction]] = []
        for i, (p1, d) in enumerate(zip(self.priors, self.dists)):
            if p1 == 0:
                continue
            for x in d.domain(cap):
                out.append((i, x, p1 * d.mass(x)))
        return out

    def marginal(self, cap: int = DEFAULT_DENOTE_CAP) -> dict[str, Fraction]:
        p2: dict[str, Fraction] = {}
        for _, x, p in self.support(cap):
            p2[x] = p2.get(x, Fraction(0)) + p
        return p2

    def with_priors(self, priors: Sequence[Fraction]) -> "JointModel":
        return JointModel(self.thetas, tuple(priors), self.dists)

    def code(self) -> str:
        """Deterministic self-delimiting encoding of the whole joint; its
        length is the description-length proxy reported by the
        expected-information audit."""
        parts = [bar_nat(len(self.thetas))]
        for label, p, d in zip(self.thetas, self.priors, self.dists):
            parts.append(std(label))
            parts.append(_rat_bits(p))
            parts.append(d.code)
        return "".join(parts)


_STAT_KINDS = ("weight", "identity", "constant", "map")


@dataclass(frozen=True, slots=True)
class Statistic:
    """Total map from data strings to label strings.

    ``weight`` sends x to the canonical name of its 1-count, ``identity``
    to x itself, ``constant`` to the empty string; ``map`` looks entries
    up in an explicit table and is total only on its keys.
    """

    kind: str
    table: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.kind not in _STAT_KINDS:
            raise JointModelError(f"unknown statistic kind {self.kind!r}")
        if self.kind == "map":
            for k, v in self.table:
                check_bits(k)
                check_bits(v)
            keys = [k for k, _ in self.table]
            if len(set(keys)) != len(keys):
                raise JointModelError("duplicate keys in map statistic")
            object.__setattr__(
                self, "table", tuple(sorted(self.table, key=lambda kv: _canon_key(kv[0])))
            )
        elif self.table:
            raise JointModelError(f"{self.kind} statistic takes no table")

    def __call__(self, x: str) -> str:
        if self.kind == "weight":
            return nat_to_bits(x.count("1"))
        if self.kind == "identity":
            return x
        if self.kind == "constant":
            return ""
        for k, v in self.table:
            if k == x:
                return v
        raise JointModelError(f"map statistic is not defined on {bits_to_text(x)}")


def parse_statistic(text: str) -> Statistic:
    t = text.strip()
    if t in ("weight", "identity", "constant"):
        return Statistic(t)
    if t.startswith("map{") and t.endswith("}"):
        inner = t[4:-1].strip()
        entries = []
        if inner:
            for item in inner.split(","):
                k, sep, v = item.partition(":")
                if not sep:
                    raise JointModelError(f"map entry {item.strip()!r} needs the form x:label")
                entries.append((text_to_bits(k.strip()), text_to_bits(v.strip())))
        return Statistic("map", tuple(entries))
    raise JointModelError(f"unknown statistic {text!r}")


def format_statistic(statistic: Statistic) -> str:
    if statistic.kind != "map":
        return statistic.kind
    body = ",".join(f"{bits_to_text(k)}:{bits_to_text(v)}" for k, v in statistic.table)
    return "map{" + body + "}"


def parse_joint_text(text: str) -> tuple[JointModel, Statistic | None]:
    """Joint-model file: ``theta <label> <prior>`` lines, then ``dist
    <label> <distribution>`` lines, optionally one ``statistic <kind>``
    line. '-' names the empty string; blank lines and #-comments pass."""
    thetas: list[str] = []
    priors: list[Fraction] = []
    dist_by: dict[str, DistDesc] = {}
    statistic: Statistic | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "theta":
            parts = rest.split()
            if len(parts) != 2:
                raise JointModelError(f"line {lineno}: expected 'theta <label> <prior>'")
            label = text_to_bits(parts[0])
            if label in thetas:
                raise JointModelError(f"line {lineno}: duplicate theta {parts[0]}")
            try:
                prior = Fraction(parts[1])
            except (ValueError, ZeroDivisionError):
                raise JointModelError(f"line {lineno}: bad prior {parts[1]!r}") from None
            thetas.append(label)
            priors.append(prior)
        elif head == "dist":
            parts = rest.split(None, 1)
            if len(parts) != 2:
                raise JointModelError(f"line {lineno}: expected 'dist <label> <distribution>'")
            label = text_to_bits(parts[0])
            if label in dist_by:
                raise JointModelError(f"line {lineno}: duplicate dist for {parts[0]}")
            dist_by[label] = parse_distlang(parts[1])
        elif head == "statistic":
            if statistic is not None:
                raise JointModelError(f"line {lineno}: more than one statistic line")
            statistic = parse_statistic(rest)
        else:
            raise JointModelError(f"line {lineno}: unknown directive {head!r}")
    if not thetas:
        raise JointModelError("no theta lines")
    for label in dist_by:
        if label not in thetas:
            raise JointModelError(f"dist line for unknown theta {bits_to_text(label)}")
    missing = [label for label in thetas if label not in dist_by]
    if missing:
        raise JointModelError(f"no dist line for theta {bits_to_text(missing[0])}")
    joint = JointModel(tuple(thetas), tuple(priors), tuple(dist_by[t] for t in thetas))
    return joint, statistic


def format_joint_text(joint: JointModel, statistic: Statistic | None = None) -> str:
    lines = [
        f"theta {bits_to_text(label)} {prior}"
        for label, prior in zip(joint.thetas, joint.priors)
    ]
    lines.extend(
        f"dist {bits_to_text(label)} {format_distlang(dist)}"
        for label, dist in zip(joint.thetas, joint.dists)
    )
    if statistic is not None:
        lines.append(f"statistic {format_statistic(statistic)}")
    return "\n".join(lines) + "\n"


# -- classical side -----------------------------------------------------------


def prior_sweep(joint: JointModel, steps: int = 9) -> list[tuple[Fraction, ...]]:
    """The joint's own prior followed by ``steps`` full-support grid
    priors: the i-th mixes the uniform prior with a point mass on
    parameter i mod m at weight i/(steps+1). Exact rationals."""
    m = len(joint.thetas)
    unif = Fraction(1, m)
    rows = [joint.priors]
    for i in range(1, steps + 1):
        w = Fraction(i, steps + 1)
        rows.append(
            tuple((1 - w) * unif + (w if j == i % m else 0) for j in range(m))
        )
    return rows


def pushforward(
    joint: JointModel, statistic: Statistic, cap: int = DEFAULT_DENOTE_CAP
) -> JointModel:
    """The joint on (parameter, statistic value): each per-parameter
    distribution becomes an explicit table carrying the transported
    masses."""
    dists = []
    for d in joint.dists:
        acc: dict[str, Fraction] = {}
        for x in d.domain(cap):
            t = statistic(x)
            acc[t] = acc.get(t, Fraction(0)) + d.mass(x)
        entries = tuple(sorted(acc.items(), key=lambda kv: _canon_key(kv[0])))
        dists.append(TableDist(entries))
    return JointModel(joint.thetas, joint.priors, tuple(dists))


class ProbMIReport(NamedTuple):
    i: float
    h_theta: float
    h_x: float
    h_joint: float


def prob_mi(joint: JointModel, cap: int = DEFAULT_DENOTE_CAP) -> ProbMIReport:
    """Mutual information between parameter and data, computed from the
    definition with exact masses and real logs (1e-9 is the documented
    comparison grain). Entropies come along for free."""
    support = joint.support(cap)
    p2 = joint.marginal(cap)
    i_val = 0.0
    h_joint = 0.0
    for idx, x, p in support:
        if p == 0:
            continue
        i_val += float(p) * _log2_frac(p / (joint.priors[idx] * p2[x]))
        h_joint -= float(p) * _log2_frac(p)
    h_theta = -sum(float(p) * _log2_frac(p) for p in joint.priors if p > 0)
    h_x = -sum(float(p) * _log2_frac(p) for p in p2.values() if p > 0)
    return ProbMIReport(i_val, h_theta, h_x, h_joint)


class PriorCheckRow(NamedTuple):
    priors: tuple[Fraction, ...]
    i_data: float
    i_statistic: float
    sufficient: bool


@dataclass(frozen=True)
class SuffCheckReport:
    statistic: Statistic
    rows: tuple[PriorCheckRow, ...]
    tol: float

    @property
    def sufficient(self) -> bool:
        return all(r.sufficient for r in self.rows)

    def to_csv(self) -> str:
        lines = ["prior,I_data,I_statistic,sufficient"]
        for r in self.rows:
            prior = "|".join(str(p) for p in r.priors)
            lines.append(
                f"{prior},{_fmt_real(r.i_data)},{_fmt_real(r.i_statistic)},{int(r.sufficient)}"
            )
        return "\n".join(lines) + "\n"


def prob_suff_check(
    joint: JointModel,
    statistic: Statistic,
    priors: Iterable[Sequence[Fraction]] | None = None,
    tol: float = TOL,
    cap: int = DEFAULT_DENOTE_CAP,
) -> SuffCheckReport:
    """Does the statistic preserve all parameter information? Checked as
    I(parameter; data) == I(parameter; statistic) within tol at every
    prior in the sweep (the channel computation is exact; only the final
    logs are real). Processing can only lose information, so equality is
    the sufficiency verdict."""
    sweep = prior_sweep(joint) if priors is None else [tuple(p) for p in priors]
    rows = []
    for pr in sweep:
        j = joint.with_priors(pr)
        i_x = prob_mi(j, cap).i
        i_t = prob_mi(pushforward(j, statistic, cap), cap).i
        rows.append(PriorCheckRow(tuple(pr), i_x, i_t, abs(i_x - i_t) <= tol))
    return SuffCheckReport(statistic, tuple(rows), tol)


# -- expected information vs the classical value ------------------------------


class ExpectedMIRow(NamedTuple):
    theta: str
    x: str
    p: Fraction
    i_alg: int


@dataclass(frozen=True)
class ExpectedMIReport:
    rows: tuple[ExpectedMIRow, ...]
    expected: Fraction  # sum of p * I(label : x), exact
    prob_i: float
    k_p: int  # length of the joint's own encoding

    @property
    def slack(self) -> float:
        return abs(float(self.expected) - self.prob_i)

    @property
    def slack_bits(self) -> int:
        return max(0, math.ceil(self.slack - TOL))

    def measured(self) -> dict[str, int]:
        return {"expected_mi": self.slack_bits}

    def to_csv(self) -> str:
        lines = ["theta,x,p,I_alg"]
        lines.extend(
            f"{bits_to_text(r.theta)},{bits_to_text(r.x)},{r.p},{r.i_alg}" for r in self.rows
        )
        return "\n".join(lines) + "\n"


def expected_mi_audit(
    joint: JointModel, table: ComplexityTable, cap: int = DEFAULT_DENOTE_CAP
) -> ExpectedMIReport:
    """Average table information between parameter label and data versus
    the classical mutual information. The two agree only up to the
    description length of the joint itself, so the audit reports the
    joint's encoding length alongside the measured slack."""
    rows = []
    for idx, x, p in joint.support(cap):
        if p == 0:
            continue
        rec = mutual_info(table, joint.thetas[idx], x)
        rows.append(ExpectedMIRow(joint.thetas[idx], x, p, rec.i))
    expected = sum((r.p * r.i_alg for r in rows), Fraction(0))
    return ExpectedMIReport(tuple(rows), expected, prob_mi(joint, cap).i, len(joint.code()))


# -- processing cannot create information -------------------------------------


@dataclass(frozen=True)
class Transform:
    """A straight-line machine program family. For each input x the
    builder returns program bits that, run with condition Str(x), write
    the transformed string; the program's length prices the transform."""

    name: str
    builder: Callable[[str], str]

    def program_for(self, x: str) -> str:
        return self.builder(x)

    def apply(self, x: str, budgets: Budgets | None = None) -> tuple[str, str]:
        program = self.builder(x)
        outcome = run(program, Condition.string(x), budgets)
        if not outcome.halted:
            raise ValueError(
                f"transform {self.name!r} fails on {bits_to_text(x)}: {outcome.status.name}"
            )
        return program, outcome.output


def _copy_tokens(m: int) -> str:
    parts = []
    for nbits, cc in ((8, "11"), (4, "10"), (2, "01"), (1, "00")):
        while m >= nbits:
            parts.append(Op.COPYIN.value + cc)
            m -= nbits
    return "".join(parts)


def copy_transform() -> Transform:
    return Transform("copy", lambda x: _copy_tokens(len(x)) + Op.HALT.value)


def drop_last_transform() -> Transform:
    return Transform("drop-last", lambda x: _copy_tokens(max(0, len(x) - 1)) + Op.HALT.value)


def const_empty_transform() -> Transform:
    return Transform("const-empty", lambda x: Op.HALT.value)


def default_transforms() -> tuple[Transform, ...]:
    return (drop_last_transform(), copy_transform(), const_empty_transform())


class TransformMax(NamedTuple):
    name: str
    max_deficit: int
    argmax: tuple[str, str]  # (x, y)


@dataclass(frozen=True)
class NonincreaseReport:
    len_cap: int
    pairs_checked: int
    per_transform: tuple[TransformMax, ...]

    @property
    def max_deficit(self) -> int:
        return max(t.max_deficit for t in self.per_transform)

    def measured(self) -> dict[str, int]:
        return {"nonincrease": self.max_deficit}

    def to_csv(self) -> str:
        lines = ["transform,max_deficit,x,y"]
        lines.extend(
            f"{t.name},{t.max_deficit},{bits_to_text(t.argmax[0])},{bits_to_text(t.argmax[1])}"
            for t in self.per_transform
        )
        return "\n".join(lines) + "\n"


def nonincrease_audit(
    table: ComplexityTable,
    transforms: Sequence[Transform] | None = None,
    len_cap: int = DEFAULT_NI_LEN_CAP,
    L_c: int | None = None,
    budgets: Budgets | None = None,
    workers: int = 1,
    cache_dir: str | Path | None = None,
    warn: Callable[[str], None] | None = None,
    backend: str | None = None,
) -> NonincreaseReport:
    """Max over (x, y, q) of I(q(x):y) - I(x:y) - l(q), with I(a:b) =
    K(b) - K(b | a's witness) and q actually run on the machine. The
    conditional cap defaults to the emit-only bound for the sweep, which
    already pins the exact minima; larger caps cannot change them."""
    if transforms is None:
        transforms = default_transforms()
    xs = _all_strings(len_cap)
    applied: dict[tuple[str, str], tuple[str, str]] = {}
    needed = set(xs)
    for q in transforms:
        for x in xs:
            program, out = q.apply(x, budgets)
            applied[(q.name, x)] = (program, out)
            needed.add(out)
    if L_c is None:
        L_c = 2 * max(len(s) for s in needed | set(xs)) + 3
    cond_k: dict[str, ComplexityTable] = {}
    for s in sorted(needed, key=_canon_key):
        cond = Condition.string(shortest_program(table, s))
        cond_k[s], _ = load_or_build(
            L_c, cond, budgets, workers=workers, cache_dir=cache_dir, warn=warn, backend=backend
        )

    def kc(y: str, given: str) -> int:
        k = cond_k[given].k_of(y)
        if k is None:
            raise Absent(y, L_c, conditioned=True)
        return k

    per: list[TransformMax] = []
    for q in transforms:
        best, arg = None, ("", "")
        for x in xs:
            program, out = applied[(q.name, x)]
            for y in xs:
                # K(y) cancels between the two information terms.
                deficit = kc(y, x) - kc(y, out) - len(program)
                if best is None or deficit > best:
                    best, arg = deficit, (x, y)
        assert best is not None
        per.append(TransformMax(q.name, best, arg))
    return NonincreaseReport(len_cap, len(xs) * len(xs), tuple(per))


# -- parameter sufficiency on the machine side --------------------------------


def _label_cond_tables(
    labels: Iterable[str],
    table: ComplexityTable,
    L_c: int,
    budgets: Budgets | None,
    workers: int,
    cache_dir: str | Path | None,
    warn: Callable[[str], None] | None,
    backend: str | None,
) -> dict[str, ComplexityTable]:
    out: dict[str, ComplexityTable] = {}
    for label in sorted(set(labels), key=_canon_key):
        cond = Condition.string(shortest_program(table, label))
        out[label], _ = load_or_build(
            L_c, cond, budgets, workers=workers, cache_dir=cache_dir, warn=warn, backend=backend
        )
    return out


def _auto_cond_cap(strings: Iterable[str]) -> int:
    # Emit-only programs of length 2l+3 exist under every condition, so
    # this cap keeps every audited string inside the table while leaving
    # the minima equal to what any larger cap would report.
    return 2 * max((len(s) for s in strings), default=0) + 3


class ThetaSuffRow(NamedTuple):
    theta: str
    x: str
    s_x: str
    p: Fraction
    d: int


@dataclass(frozen=True)
class ThetaSuffReport:
    rows: tuple[ThetaSuffRow, ...]
    threshold: int | None
    prob_sufficient: bool
    tol: float

    def mass_leq(self, threshold: int) -> Fraction:
        return sum((r.p for r in self.rows if r.d <= threshold), Fraction(0))

    def minimal_tau(self, target: Fraction = MASS_TARGET) -> int:
        """Smallest integer threshold whose deficiency mass reaches the
        target."""
        total = Fraction(0)
        for d in sorted({r.d for r in self.rows}):
            total = self.mass_leq(d)
            if total >= target:
                return d
        raise ValueError(f"total mass {total} never reaches {target}")

    @property
    def passed(self) -> bool:
        if self.threshold is None:
            raise ValueError("no threshold was given to audit against")
        return self.mass_leq(self.threshold) >= MASS_TARGET

    def measured(self) -> dict[str, int]:
        return {"theta_tau": self.minimal_tau()}

    def to_csv(self) -> str:
        lines = ["theta,x,statistic,p,d"]
        lines.extend(
            f"{bits_to_text(r.theta)},{bits_to_text(r.x)},{bits_to_text(r.s_x)},{r.p},{r.d}"
            for r in self.rows
        )
        return "\n".join(lines) + "\n"


def _deficiency_terms(
    joint: JointModel,
    statistic: Statistic,
    table: ComplexityTable,
    cap: int,
    L_c: int | None,
    budgets: Budgets | None,
    workers: int,
    cache_dir: str | Path | None,
    warn: Callable[[str], None] | None,
    backend: str | None,
) -> tuple[dict[str, ComplexityTable], int]:
    xs = joint.x_domain(cap)
    images = {statistic(x) for x in xs}
    if L_c is None:
        L_c = _auto_cond_cap(set(xs) | images)
    tables = _label_cond_tables(
        joint.thetas, table, L_c, budgets, workers, cache_dir, warn, backend
    )
    return tables, L_c


def theta_suff_audit(
    joint: JointModel,
    statistic: Statistic,
    table: ComplexityTable,
    threshold: int | None = None,
    L_c: int | None = None,
    tol: float = TOL,
    cap: int = DEFAULT_DENOTE_CAP,
    budgets: Budgets | None = None,
    workers: int = 1,
    cache_dir: str | Path | None = None,
    warn: Callable[[str], None] | None = None,
    backend: str | None = None,
) -> ThetaSuffReport:
    """Per-(parameter, x) deficiency d = I(theta:x) - I(theta:S(x)) with
    I(a:b) = K(b) - K(b | a's witness), plus the exact joint mass sitting
    at or below the threshold. The report also carries the classical
    sufficiency verdict so both directions of the correspondence can be
    read off one object: small-deficiency mass tracks classical
    sufficiency and vice versa."""
    cond_tables, L_c = _deficiency_terms(
        joint, statistic, table, cap, L_c, budgets, workers, cache_dir, warn, backend
    )

    def kc(y: str, label: str) -> int:
        k = cond_tables[label].k_of(y)
        if k is None:
            raise Absent(y, L_c, conditioned=True)
        return k

    rows = []
    for idx, x, p in joint.support(cap):
        if p == 0:
            continue
        label = joint.thetas[idx]
        s_x = statistic(x)
        i_x = require_k(table, x) - kc(x, label)
        i_s = require_k(table, s_x) - kc(s_x, label)
        rows.append(ThetaSuffRow(label, x, s_x, p, i_x - i_s))
    verdict = prob_suff_check(joint, statistic, tol=tol, cap=cap).sufficient
    return ThetaSuffReport(tuple(rows), threshold, verdict, tol)


class SuffIdentityRow(NamedTuple):
    x: str
    theta_star: str
    lhs: int  # K(x | best label's witness) + d
    rhs: int  # K(S(x) | same witness) + model cost of S(x)'s class


@dataclass(frozen=True)
class SuffIdentityReport:
    rows: tuple[SuffIdentityRow, ...]

    @property
    def max_gap(self) -> int:
        return max(abs(r.lhs - r.rhs) for r in self.rows)

    def measured(self) -> dict[str, int]:
        return {"suff_identity": self.max_gap}

    def to_csv(self) -> str:
        lines = ["x,theta_star,lhs,rhs"]
        lines.extend(
            f"{bits_to_text(r.x)},{bits_to_text(r.theta_star)},{r.lhs},{r.rhs}"
            for r in self.rows
        )
        return "\n".join(lines) + "\n"


def weight_models(n: int) -> Callable[[str], SetDesc]:
    """Associate each weight label with the set of length-n strings of
    that weight, giving the statistic's value a concrete model class."""

    def model_of(label: str) -> SetDesc:
        return Hamming(n, bits_to_nat(label))

    return model_of


def suff_identity_audit(
    joint: JointModel,
    statistic: Statistic,
    table: ComplexityTable,
    model_of: Callable[[str], SetDesc],
    L_c: int | None = None,
    cap: int = DEFAULT_DENOTE_CAP,
    budgets: Budgets | None = None,
    workers: int = 1,
    cache_dir: str | Path | None = None,
    warn: Callable[[str], None] | None = None,
    backend: str | None = None,
) -> SuffIdentityReport:
    """Two ways of pricing x through a sufficient statistic should agree:
    describing x directly given the best-fitting parameter, or naming the
    statistic's value and then x's index inside that value's model class.
    The agreement gap is a machine constant; the audit measures its max
    over the joint's support."""
    cond_tables, L_c = _deficiency_terms(
        joint, statistic, table, cap, L_c, budgets, workers, cache_dir, warn, backend
    )

    def kc(y: str, label: str) -> int:
        k = cond_tables[label].k_of(y)
        if k is None:
            raise Absent(y, L_c, conditioned=True)
        return k

    rows = []
    for x in joint.x_domain(cap):
        scores = [p * d.mass(x) for p, d in zip(joint.priors, joint.dists)]
        best = max(range(len(scores)), key=lambda i: (scores[i], -i))
        label = joint.thetas[best]
        s_x = statistic(x)
        d = (require_k(table, x) - kc(x, label)) - (require_k(table, s_x) - kc(s_x, label))
        lhs = kc(x, label) + d
        rhs = kc(s_x, label) + ceil_log2(model_of(s_x).size())
        rows.append(SuffIdentityRow(x, label, lhs, rhs))
    return SuffIdentityReport(tuple(rows))


# -- the measured-constants battery --------------------------------------------


def standard_joints() -> dict[str, JointModel]:
    """The fixed instances the audits freeze constants on: a one-point
    deterministic joint, a perfectly correlated bit, an independent bit,
    and a two-coin Bernoulli pair observed through two flips."""
    half = Fraction(1, 2)
    one = Fraction(1)
    return {
        "deterministic": JointModel(
            ("0",), (one,), (TableDist((("1", one),)),)
        ),
        "correlated-bit": JointModel(
            ("0", "1"),
            (half, half),
            (TableDist((("0", one),)), TableDist((("1", one),))),
        ),
        "independent-bit": JointModel(
            ("0", "1"), (half, half), (Bernoulli(1, half), Bernoulli(1, half))
        ),
        "bernoulli-pair": JointModel(
            ("0", "1"),
            (half, half),
            (Bernoulli(2, Fraction(1, 4)), Bernoulli(2, Fraction(3, 4))),
        ),
    }


@dataclass(frozen=True)
class LawsAudit:
    soi: SoiReport
    nonincrease: NonincreaseReport
    expected: tuple[tuple[str, ExpectedMIReport], ...]
    theta: ThetaSuffReport
    identity: SuffIdentityReport
    level_gap: int | None

    def measured(self) -> dict[str, int]:
        out = dict(self.soi.measured())
        out.update(self.nonincrease.measured())
        out["expected_mi"] = max(rep.slack_bits for _, rep in self.expected)
        out.update(self.theta.measured())
        out.update(self.identity.measured())
        if self.level_gap is not None:
            out["logn_gap"] = self.level_gap
        return out


def laws_audit(
    table: ComplexityTable,
    level_table: ComplexityTable | None = None,
    soi_len_cap: int = DEFAULT_SOI_LEN_CAP,
    ni_len_cap: int = DEFAULT_NI_LEN_CAP,
    budgets: Budgets | None = None,
    workers: int = 1,
    cache_dir: str | Path | None = None,
    warn: Callable[[str], None] | None = None,
    backend: str | None = None,
) -> LawsAudit:
    """Run the whole measured-constants battery on one table (deep enough
    to cover the pair sweep) plus, when a second table is supplied, the
    level-size gap check. Conditional caps follow the emit-only bound;
    see the individual audits. Deterministic throughout."""
    soi = soi_audit(
        table,
        len_cap=soi_len_cap,
        L_c=2 * soi_len_cap + 3,
        workers=workers,
        cache_dir=cache_dir,
        warn=warn,
        backend=backend,
    )
    ni = nonincrease_audit(
        table,
        len_cap=ni_len_cap,
        budgets=budgets,
        workers=workers,
        cache_dir=cache_dir,
        warn=warn,
        backend=backend,
    )
    joints = standard_joints()
    expected = tuple(
        (name, expected_mi_audit(joint, table)) for name, joint in sorted(joints.items())
    )
    weight = Statistic("weight")
    pair_joint = joints["bernoulli-pair"]
    theta = theta_suff_audit(
        pair_joint,
        weight,
        table,
        budgets=budgets,
        workers=workers,
        cache_dir=cache_dir,
        warn=warn,
        backend=backend,
    )
    identity = suff_identity_audit(
        pair_joint,
        weight,
        table,
        model_of=weight_models(2),
        budgets=budgets,
        workers=workers,
        cache_dir=cache_dir,
        warn=warn,
        backend=backend,
    )
    gap = logn_gap(level_table) if level_table is not None else None
    return LawsAudit(soi, ni, expected, theta, identity, gap)
