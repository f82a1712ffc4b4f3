"""Batch front-end: build and cache enumeration tables, query them, and
run the audit batteries.

Exit codes: 0 success, 1 usage or input error, 2 audit regression. Every
command works from a cold cache (tables auto-build with a warning on
stderr) and all outputs are deterministic for a given configuration,
including across worker counts.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .bits import CodeError, bits_to_text, pair, text_to_bits
from .cache import ENV_CACHE_DIR, load_or_build
from .complexity import (
    AUDIT_MAX_LEN,
    DEFAULT_SOI_LEN_CAP,
    Absent,
    mutual_info,
    soi_audit,
)
from .constants import (
    ConstantsError,
    load_constants,
    regression_check,
    save_constants,
)
from .enumeration import (
    DEFAULT_COND_MAX_LEN,
    DEFAULT_MAX_LEN,
    TableError,
    export_table,
)
from .infolaws import (
    JointModelError,
    Statistic,
    expected_mi_audit,
    laws_audit,
    nonincrease_audit,
    parse_joint_text,
    prob_suff_check,
    standard_joints,
    suff_identity_audit,
    theta_suff_audit,
    weight_models,
)
from .machine import (
    DEFAULT_MAX_OUTPUT,
    DEFAULT_MAX_STEPS,
    MACHINE_VERSION,
    Budgets,
    Condition,
)
from .models_prob import (
    bernoulli_demo,
    deficiency_p,
    format_distlang,
    parse_distlang,
    suffstat_p,
    two_part_p,
)
from .models_set import (
    CapExceeded,
    ModelOpts,
    Singleton,
    _fmt_real,
    format_setlang,
    parse_setlang,
    structfn,
    suffstat,
    two_part,
    uniform_condition,
)
from .skstats import _dyadic_csv, sk_csv, slice_bound_check, xr_bound_check, xr_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REGRESSION = 2

_AUDITS = ("all", "xr", "slices", "soi", "nonincrease", "expected-mi", "theta", "identity")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors, but 2 is reserved for audit
    regressions here, so usage failures are forced to exit 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _warn(message: str) -> None:
    print(f"algstat: {message}", file=sys.stderr)


@dataclass(frozen=True)
class Config:
    """Resolved run configuration shared by the command handlers."""

    machine: str
    L: int | None
    budgets: Budgets
    workers: int
    cache_dir: str | None
    constants_path: str | None
    alpha_max: int | None
    beta: int
    opts: ModelOpts

    def __post_init__(self):
        if self.L is not None and self.L <= 0:
            raise ValueError("--max-len must be positive")
        if self.budgets.max_steps <= 0 or self.budgets.max_output <= 0:
            raise ValueError("--steps and --max-out must be positive")
        if self.workers <= 0:
            raise ValueError("--workers must be positive")
        if self.beta < 0:
            raise ValueError("--beta must be >= 0")


def _config(args: argparse.Namespace) -> Config:
    return Config(
        machine=MACHINE_VERSION,
        L=getattr(args, "max_len", None),
        budgets=Budgets(
            max_steps=getattr(args, "steps", DEFAULT_MAX_STEPS),
            max_output=getattr(args, "max_out", DEFAULT_MAX_OUTPUT),
        ),
        workers=getattr(args, "workers", 1),
        cache_dir=getattr(args, "cache_dir", None),
        constants_path=getattr(args, "constants", None),
        alpha_max=getattr(args, "alpha_max", None),
        beta=getattr(args, "beta", 0),
        opts=ModelOpts(
            union_width=getattr(args, "union_width", ModelOpts().union_width),
            list_cap=getattr(args, "list_cap", ModelOpts().list_cap),
        ),
    )


def _table(cfg: Config, L: int, cond: Condition | None = None):
    table, _ = load_or_build(
        L, cond, cfg.budgets, workers=cfg.workers, cache_dir=cfg.cache_dir, warn=_warn
    )
    return table


def _condition(args: argparse.Namespace) -> Condition | None:
    if getattr(args, "cond", None) is not None:
        return Condition.string(text_to_bits(args.cond))
    if getattr(args, "cond_set", None) is not None:
        return uniform_condition(parse_setlang(args.cond_set))
    return None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="ascii")
        _warn(f"wrote {out}")


# -- commands ------------------------------------------------------------------


def cmd_enumerate(args: argparse.Namespace) -> int:
    cfg = _config(args)
    cond = _condition(args)
    L = cfg.L if cfg.L is not None else (
        DEFAULT_MAX_LEN if cond is None else DEFAULT_COND_MAX_LEN
    )
    table, built = load_or_build(
        L, cond, cfg.budgets, workers=cfg.workers, cache_dir=cfg.cache_dir, warn=_warn
    )
    if args.out:
        export_table(table, args.out)
        _warn(f"wrote {args.out}")
    print(
        f"machine={table.machine_version} L={table.L} "
        f"condition={table.cond_fingerprint} entries={len(table.sorted_outputs())} "
        f"{'built' if built else 'cached'}"
    )
    return EXIT_OK


def cmd_k(args: argparse.Namespace) -> int:
    cfg = _config(args)
    cond = _condition(args)
    L = cfg.L if cfg.L is not None else (
        DEFAULT_MAX_LEN if cond is None else DEFAULT_COND_MAX_LEN
    )
    table = _table(cfg, L, cond)
    x = text_to_bits(args.x)
    k = table.k_of(x)
    if k is None:
        raise Absent(x, table.L, conditioned=cond is not None)
    print(f"K={k} witness={table.witness_of(x)}")
    return EXIT_OK


def cmd_mi(args: argparse.Namespace) -> int:
    cfg = _config(args)
    table = _table(cfg, cfg.L if cfg.L is not None else DEFAULT_MAX_LEN)
    rec = mutual_info(table, text_to_bits(args.x), text_to_bits(args.y))
    print(f"I={rec.i} K(x)={rec.kx} K(y)={rec.ky} K(pair)={rec.kxy}")
    return EXIT_OK


def cmd_structfn(args: argparse.Namespace) -> int:
    cfg = _config(args)
    x = text_to_bits(args.x)
    alpha_max = cfg.alpha_max
    if alpha_max is None:
        alpha_max = min(two_part(x, Singleton(x)) + 1, cfg.opts.alpha_bound)
    curve = structfn(
        x,
        alpha_max,
        cfg.opts,
        include_deficiency=not args.no_deficiency,
        L_c=cfg.L if cfg.L is not None else DEFAULT_COND_MAX_LEN,
        budgets=cfg.budgets,
        workers=cfg.workers,
        cache_dir=cfg.cache_dir,
        warn=_warn,
    )
    _emit(curve.to_csv(), args.out)
    return EXIT_OK


def cmd_suffstat(args: argparse.Namespace) -> int:
    cfg = _config(args)
    x = text_to_bits(args.x)
    rep = suffstat(x, cfg.beta, cfg.opts)
    lines = [
        f"x={bits_to_text(x)}",
        f"beta={rep.beta}",
        f"lambda_min={rep.lambda_min}",
        f"minimal={format_setlang(rep.minimal)}",
        "optimal=" + ";".join(format_setlang(d) for d in rep.optimal),
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_sk(args: argparse.Namespace) -> int:
    cfg = _config(args)
    table = _table(cfg, cfg.L if cfg.L is not None else DEFAULT_COND_MAX_LEN)
    _emit(sk_csv(table, args.k), args.out)
    return EXIT_OK


def cmd_xr(args: argparse.Namespace) -> int:
    cfg = _config(args)
    table = _table(cfg, cfg.L if cfg.L is not None else DEFAULT_COND_MAX_LEN)
    _emit(xr_csv(table), args.out)
    return EXIT_OK


def cmd_bernoulli(args: argparse.Namespace) -> int:
    cfg = _config(args)
    if cfg.L is not None:
        L = cfg.L
    else:
        # every n-bit string must be in the table; 2n+3 is the emit bound
        L = max(DEFAULT_MAX_LEN, 2 * args.n + 3)
    table = _table(cfg, L)
    rep = bernoulli_demo(table, args.n, cfg.beta, cfg.opts)
    _emit(rep.to_csv(), args.out)
    return EXIT_OK


def cmd_probstat(args: argparse.Namespace) -> int:
    cfg = _config(args)
    x = text_to_bits(args.x)
    dist = parse_distlang(args.dist)
    rec = deficiency_p(
        x,
        dist,
        L_c=cfg.L if cfg.L is not None else DEFAULT_COND_MAX_LEN,
        budgets=cfg.budgets,
        workers=cfg.workers,
        cache_dir=cfg.cache_dir,
        warn=_warn,
    )
    rep = suffstat_p(x, cfg.beta, cfg.opts)
    lines = [
        f"x={bits_to_text(x)}",
        f"dist={format_distlang(dist)}",
        f"neglog={_fmt_real(rec.neglog)}",
        f"K_cond={rec.k_cond}",
        f"delta_norm={_fmt_real(rec.delta_norm)}",
        f"two_part={two_part_p(x, dist)}",
        f"lambda_min={rep.lambda_min}",
        f"minimal={format_distlang(rep.minimal)}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


# -- the laws command ----------------------------------------------------------


def _pass_line(name: str, ok: bool, detail: str = "") -> tuple[str, bool]:
    suffix = f" {detail}" if detail else ""
    return f"{name}{suffix} {'PASS' if ok else 'FAIL'}", ok


def _laws_joint(args: argparse.Namespace, cfg: Config) -> int:
    """Audit a user-supplied joint model file; the report is CSV."""
    joint, statistic = parse_joint_text(Path(args.joint).read_text(encoding="ascii"))
    audit = args.audit if args.audit != "all" else "theta"
    if audit not in ("expected-mi", "theta", "identity"):
        raise ValueError(f"--joint supports the expected-mi/theta/identity audits, not {audit!r}")
    strings = set(joint.x_domain()) | set(joint.thetas)
    if audit == "expected-mi":
        # pairs of label and data must be inside the table
        need = max(
            2 * len(pair(t, x)) + 3 for t in joint.thetas for x in joint.x_domain()
        )
    else:
        need = 2 * max(len(s) for s in strings) + 3
    table = _table(cfg, max(cfg.L or 0, need, DEFAULT_MAX_LEN))
    if audit == "expected-mi":
        rep = expected_mi_audit(joint, table)
        _warn(f"expected={float(rep.expected):.9f} classical={_fmt_real(rep.prob_i)} k_p={rep.k_p}")
        _emit(rep.to_csv(), args.out)
        return EXIT_OK
    if statistic is None:
        raise ValueError("the joint-model file has no statistic line")
    if audit == "theta":
        rep = theta_suff_audit(
            joint, statistic, table,
            workers=cfg.workers, cache_dir=cfg.cache_dir, warn=_warn,
        )
        _warn(f"prob_sufficient={rep.prob_sufficient} minimal_tau={rep.minimal_tau()}")
        _emit(rep.to_csv(), args.out)
        return EXIT_OK
    if statistic.kind != "weight":
        raise ValueError("the identity audit needs the weight statistic")
    lens = {len(x) for x in joint.x_domain()}
    if len(lens) != 1:
        raise ValueError("the identity audit needs a fixed-length data domain")
    rep = suff_identity_audit(
        joint, statistic, table, weight_models(lens.pop()),
        workers=cfg.workers, cache_dir=cfg.cache_dir, warn=_warn,
    )
    _warn(f"max_gap={rep.max_gap}")
    _emit(rep.to_csv(), args.out)
    return EXIT_OK


def cmd_laws(args: argparse.Namespace) -> int:
    cfg = _config(args)
    if args.joint:
        return _laws_joint(args, cfg)
    sel = args.audit
    lines: list[str] = []
    all_ok = True

    def record(line: str, ok: bool) -> None:
        nonlocal all_ok
        lines.append(line)
        all_ok = all_ok and ok

    level_L = cfg.L if cfg.L is not None else DEFAULT_COND_MAX_LEN
    if sel in ("xr", "slices", "all"):
        level = _table(cfg, level_L)
        if sel in ("xr", "all"):
            _, _, rows = xr_bound_check(level)
            for row in rows:
                record(
                    *_pass_line(
                        f"xr r={row.r}",
                        row.passed,
                        f"sum={_dyadic_csv(row.mass_sum)} bound={_dyadic_csv(row.bound)}",
                    )
                )
        if sel in ("slices", "all"):
            record(*_pass_line("slice-bound", slice_bound_check(level)))

    measured: dict[str, int] = {}
    if sel in ("soi", "nonincrease", "expected-mi", "theta", "identity", "all"):
        deep = _table(cfg, AUDIT_MAX_LEN)
        common = dict(workers=cfg.workers, cache_dir=cfg.cache_dir, warn=_warn)
        if sel == "all":
            audit = laws_audit(deep, level_table=_table(cfg, level_L), **common)
            measured.update(audit.measured())
            theta_rep = audit.theta
        elif sel == "soi":
            rep = soi_audit(
                deep, len_cap=DEFAULT_SOI_LEN_CAP, L_c=2 * DEFAULT_SOI_LEN_CAP + 3, **common
            )
            measured.update(rep.measured())
        elif sel == "nonincrease":
            measured.update(nonincrease_audit(deep, **common).measured())
        elif sel == "expected-mi":
            slacks = [
                expected_mi_audit(j, deep).slack_bits for _, j in sorted(standard_joints().items())
            ]
            measured["expected_mi"] = max(slacks)
        else:
            pair_joint = standard_joints()["bernoulli-pair"]
            if sel == "theta":
                theta_rep = theta_suff_audit(pair_joint, Statistic("weight"), deep, **common)
                measured.update(theta_rep.measured())
            else:
                rep = suff_identity_audit(
                    pair_joint, Statistic("weight"), deep, weight_models(2), **common
                )
                measured.update(rep.measured())
        if sel in ("theta", "all"):
            record(*_pass_line("theta weight-prob-sufficient", theta_rep.prob_sufficient))
            id_rep = theta_suff_audit(
                standard_joints()["bernoulli-pair"], Statistic("identity"), deep, **common
            )
            record(*_pass_line("theta identity-deficiency-zero", all(r.d == 0 for r in id_rep.rows)))

    if args.freeze:
        if sel != "all":
            raise ValueError("--freeze requires --audit all (a full battery)")
        if not cfg.constants_path:
            raise ValueError("--freeze needs --constants PATH to write to")
        save_constants(measured, cfg.constants_path)
        for name in sorted(measured):
            lines.append(f"{name} measured={measured[name]} frozen")
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK

    if measured:
        frozen = load_constants(cfg.constants_path)
        for check in regression_check(measured, frozen):
            have = "-" if check.frozen is None else str(check.frozen)
            record(
                *_pass_line(check.name, check.ok, f"measured={check.measured} frozen={have}")
            )

    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if all_ok else EXIT_REGRESSION


# -- parser --------------------------------------------------------------------


def _add_table_flags(p: argparse.ArgumentParser, cond: bool = False) -> None:
    p.add_argument("--max-len", type=int, metavar="L", help="program-length cap")
    p.add_argument("--steps", type=int, default=DEFAULT_MAX_STEPS, metavar="T")
    p.add_argument("--max-out", type=int, default=DEFAULT_MAX_OUTPUT, metavar="O")
    p.add_argument("--workers", type=int, default=1, metavar="N")
    p.add_argument(
        "--cache-dir",
        metavar="DIR",
        help=f"table cache directory (default ${ENV_CACHE_DIR} or a user cache dir)",
    )
    if cond:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--cond", metavar="BITS", help="condition string ('-' for empty)")
        g.add_argument(
            "--cond-set",
            metavar="SET",
            help="condition on the uniform distribution over this set description",
        )


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--union-width", type=int, default=ModelOpts().union_width)
    p.add_argument("--list-cap", type=int, default=ModelOpts().list_cap)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="algstat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="build (and cache) an enumeration table")
    _add_table_flags(p, cond=True)
    p.add_argument("--out", metavar="FILE", help="export the table file")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("k", help="exact complexity of a string")
    p.add_argument("x", help="bit string ('-' for empty)")
    _add_table_flags(p, cond=True)
    p.set_defaults(fn=cmd_k)

    p = sub.add_parser("mi", help="table mutual information between two strings")
    p.add_argument("x")
    p.add_argument("y")
    _add_table_flags(p)
    p.set_defaults(fn=cmd_mi)

    p = sub.add_parser("structfn", help="structure-function curves as CSV")
    p.add_argument("x")
    p.add_argument("--alpha-max", type=int, metavar="A")
    p.add_argument("--no-deficiency", action="store_true", help="skip the beta columns")
    _add_model_flags(p)
    _add_table_flags(p)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(fn=cmd_structfn)

    p = sub.add_parser("suffstat", help="optimal and minimal sufficient set models")
    p.add_argument("x")
    p.add_argument("--beta", type=int, default=0)
    _add_model_flags(p)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(fn=cmd_suffstat)

    p = sub.add_parser("sk", help="complexity-level index CSV")
    p.add_argument("k", type=int)
    _add_table_flags(p)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(fn=cmd_sk)

    p = sub.add_parser("xr", help="rareness classes and their mass bounds as CSV")
    _add_table_flags(p)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(fn=cmd_xr)

    p = sub.add_parser("laws", help="information-law audits against frozen constants")
    p.add_argument("--audit", choices=_AUDITS, default="all")
    p.add_argument("--constants", metavar="FILE", help="constants file (default: packaged)")
    p.add_argument("--freeze", action="store_true", help="write measured constants and exit")
    p.add_argument("--joint", metavar="FILE", help="audit a joint-model file instead")
    _add_table_flags(p)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(fn=cmd_laws)

    p = sub.add_parser("bernoulli", help="weight-class sufficiency demo as CSV")
    p.add_argument("n", type=int)
    p.add_argument("--beta", type=int, default=3)
    _add_model_flags(p)
    _add_table_flags(p)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(fn=cmd_bernoulli)

    p = sub.add_parser("probstat", help="distribution-level deficiency and sufficiency")
    p.add_argument("x")
    p.add_argument("dist", help="distribution description, e.g. bern:8,1/4")
    p.add_argument("--beta", type=int, default=0)
    _add_model_flags(p)
    _add_table_flags(p)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(fn=cmd_probstat)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (
        Absent,
        CapExceeded,
        CodeError,
        ConstantsError,
        JointModelError,
        TableError,
        ValueError,
        OSError,
    ) as exc:
        print(f"algstat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
