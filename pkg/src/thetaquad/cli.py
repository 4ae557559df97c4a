"""Command line front end.

    python -m thetaquad count  --form "t(1,1,6,24)" --n 3
    python -m thetaquad series --form "N(1,4,4)" --n-max 50
    python -m thetaquad verify --rule thm2.1 --a 1 --b 1 --n-max 100
    python -m thetaquad scan   --rule conj5.19 --n-max 1000 --format json
    python -m thetaquad suite  theta-identities      (or: suite --all)
    python -m thetaquad parse  my.rules

Exit status: 0 on success, 1 when any check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .catalog import builtin_catalog, parse_rules, print_rule
from .catalog import dsl
from .counting import FormSpec, count_enum, count_series
from .verify import engine
from .verify.report import Method, Status, to_csv, to_json
from .verify.scan import append_jsonl, scan_rule
from .verify.suites import BUNDLES, run_bundle

PARAM_NAMES = ("a", "b", "c", "d", "m")
SUITE_NAMES = ("theta-identities", "ach-bch", "theorems", "closed-forms", "conjectures", "all") + tuple(
    b for b in BUNDLES if b not in ("theta-identities", "ach-bch", "theorems", "closed-forms", "conjectures")
)


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    subcommand: str
    form: str | None = None
    rule: str | None = None
    params: dict[str, int] = field(default_factory=dict)
    n: int | None = None
    n_min: int = 0
    n_max: int = 100
    bound: int = 5
    method: str = "series"
    trunc: int | None = None
    fmt: str = "text"
    output: str | None = None
    append: str | None = None
    threads: int | None = None
    timings: bool = False
    rule_files: list[str] = field(default_factory=list)
    suite: str | None = None

    def __post_init__(self):
        if self.n_max < 0 or self.n_min < 0:
            raise UsageError("n ranges must be non-negative")
        if self.n_min > self.n_max:
            raise UsageError("--n-min exceeds --n-max")
        if self.threads is not None and self.threads < 1:
            raise UsageError("--threads must be >= 1")
        if self.trunc is not None and self.trunc < 1:
            raise UsageError("--trunc must be >= 1")

    @property
    def workers(self) -> int:
        return self.threads if self.threads is not None else engine.default_workers()


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--threads", type=int, help="worker processes (default: THETAQUAD_THREADS or all cores)")
    common.add_argument("--timings", action="store_true", help="include elapsed_ms in reports")
    common.add_argument("--rules-file", action="append", default=[], dest="rule_files",
                        help="extra rule file, added to the built-in catalog (repeatable)")

    p = argparse.ArgumentParser(prog="thetaquad", description="Representation counts and identity checks.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    c = sub.add_parser("count", parents=[common], help="one count, e.g. t(1,1,6,24; 3)")
    c.add_argument("--form", required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--method", choices=("series", "enum"), default="enum")

    s = sub.add_parser("series", parents=[common], help="counts for n = 0..n-max as CSV")
    s.add_argument("--form", required=True)
    s.add_argument("--n-max", type=int, default=100)

    v = sub.add_parser("verify", parents=[common], help="check one rule over a range of n")
    v.add_argument("--rule", required=True)
    for name in PARAM_NAMES:
        v.add_argument(f"--{name}", type=int)
    v.add_argument("--n-min", type=int, default=0)
    v.add_argument("--n-max", type=int, default=100)
    v.add_argument("--bound", type=int, default=5, help="parameter bound when no parameters are given")
    v.add_argument("--method", choices=("series", "enum", "both"), default="series")

    sc = sub.add_parser("scan", parents=[common], help="search conjectures for counterexamples")
    sc.add_argument("--rule", required=True, help="conjecture id or id prefix")
    sc.add_argument("--n-max", type=int, default=1000)
    sc.add_argument("--append", metavar="JSONL", help="also append reports to this log")

    su = sub.add_parser("suite", parents=[common], help="named bundle of checks")
    su.add_argument("name", nargs="?", choices=SUITE_NAMES)
    su.add_argument("--all", action="store_true")

    pa = sub.add_parser("parse", parents=[common], help="validate rule files and print canonical forms")
    pa.add_argument("files", nargs="+")
    return p


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    params = {k: getattr(ns, k) for k in PARAM_NAMES if getattr(ns, k, None) is not None}
    suite = None
    if ns.subcommand == "suite":
        if ns.all and ns.name not in (None, "all"):
            raise UsageError("give either a bundle name or --all")
        suite = "all" if ns.all else ns.name
        if suite is None:
            raise UsageError(f"suite needs a bundle name ({' | '.join(SUITE_NAMES)}) or --all")
    return CliConfig(
        subcommand=ns.subcommand,
        form=getattr(ns, "form", None),
        rule=getattr(ns, "rule", None),
        params=params,
        n=getattr(ns, "n", None),
        n_min=getattr(ns, "n_min", 0),
        n_max=getattr(ns, "n_max", 100),
        bound=getattr(ns, "bound", 5),
        method=getattr(ns, "method", "series"),
        fmt=ns.fmt,
        output=ns.output,
        append=getattr(ns, "append", None),
        threads=ns.threads,
        timings=ns.timings,
        rule_files=ns.rule_files + list(getattr(ns, "files", [])),
        suite=suite,
    )


# --- helpers --------------------------------------------------------------------------


def _form(text: str) -> FormSpec:
    try:
        return FormSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_rule_file(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_rules(text)
    except (dsl.RuleSyntaxError, dsl.RuleSemanticError) as exc:
        raise UsageError(f"{path}: {exc}\n\n{dsl.__doc__}") from None


def _catalog(cfg: CliConfig) -> dict[str, dsl.IdentityRule]:
    rules = {r.id: r for r in builtin_catalog()}
    for path in cfg.rule_files:
        for r in _load_rule_file(path):
            if r.id in rules:
                raise UsageError(f"{path}: rule id {r.id!r} already exists")
            rules[r.id] = r
    return rules


def _select(rules: dict, selector: str) -> list:
    if selector in rules:
        return [rules[selector]]
    hits = [r for i, r in rules.items() if i.startswith(selector + ".")]
    if not hits:
        raise UsageError(f"unknown rule id {selector!r}")
    return hits


def _render(reports, cfg: CliConfig) -> str:
    if cfg.fmt == "json":
        return to_json(reports, cfg.timings)
    if cfg.fmt == "csv":
        return to_csv(reports, cfg.timings)
    return "\n".join(r.summary() for r in reports) + "\n"


def _emit(text: str, cfg: CliConfig, out) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)


# --- subcommands ------------------------------------------------------------------------


def cmd_count(cfg: CliConfig, out) -> int:
    spec = _form(cfg.form)
    if cfg.n is None or cfg.n < 0:
        raise UsageError("--n must be a non-negative integer")
    value = count_enum(spec, cfg.n) if cfg.method == "enum" else int(count_series(spec, cfg.n)[cfg.n])
    if cfg.fmt == "json":
        text = json.dumps({"form": str(spec), "n": cfg.n, "count": value}) + "\n"
    elif cfg.fmt == "csv":
        text = f"form,n,count\n{spec},{cfg.n},{value}\n"
    else:
        text = f"{value}\n"
    _emit(text, cfg, out)
    return 0


def cmd_series(cfg: CliConfig, out) -> int:
    spec = _form(cfg.form)
    tab = count_series(spec, cfg.n_max)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", str(spec)])
    w.writerows((n, int(v)) for n, v in enumerate(tab))
    _emit(buf.getvalue(), cfg, out)
    return 0


def cmd_verify(cfg: CliConfig, out) -> int:
    rules = _select(_catalog(cfg), cfg.rule)
    if len(rules) > 1 and cfg.params:
        raise UsageError(f"{cfg.rule!r} names several rules; give one rule id with parameters")
    methods = [Method.SERIES, Method.ENUM] if cfg.method == "both" else [Method(cfg.method)]
    jobs = []
    for rule in rules:
        if cfg.params:
            unknown = set(cfg.params) - set(rule.params)
            missing = set(rule.params) - set(cfg.params)
            if unknown or missing:
                raise UsageError(f"{rule.id} takes parameters {' '.join(rule.params) or '(none)'}")
            assigns = [tuple(sorted(cfg.params.items()))]
            try:
                dsl.instantiate(rule, cfg.params)
            except dsl.InadmissibleAssignment as exc:
                raise UsageError(str(exc)) from None
        else:
            assigns = engine.instances(rule, cfg.bound)
        jobs += [engine.Job(rule, a, cfg.n_min, cfg.n_max, m) for a in assigns for m in methods]
    reports = engine.run_jobs(jobs, cfg.workers)
    _emit(_render(reports, cfg), cfg, out)
    return 1 if any(r.status is Status.FAIL for r in reports) else 0


def cmd_scan(cfg: CliConfig, out) -> int:
    rules = _select(_catalog(cfg), cfg.rule)
    not_conj = [r.id for r in rules if not r.is_conjecture]
    if not_conj:
        raise UsageError(f"not conjectures: {', '.join(not_conj)} (use verify)")
    reports = [scan_rule(r, cfg.n_max, max(cfg.n_min, 1)) for r in rules]
    if cfg.append:
        append_jsonl(cfg.append, reports, cfg.timings)
    _emit(_render(reports, cfg), cfg, out)
    return 1 if any(r.status is Status.FAIL for r in reports) else 0


def cmd_suite(cfg: CliConfig, out) -> int:
    results = run_bundle(cfg.suite, workers=cfg.workers)
    if cfg.fmt == "json":
        text = json.dumps(
            [
                {"name": r.name, "passed": r.passed, "summary": r.summary, "failures": r.failures}
                for r in results
            ],
            indent=2,
        ) + "\n"
    else:
        lines = []
        for r in results:
            lines.append(r.line() if cfg.timings else r.line().rsplit(" (", 1)[0])
            lines += [f"    {f}" for f in r.failures]
        text = "\n".join(lines) + "\n"
    _emit(text, cfg, out)
    return 0 if all(r.passed for r in results) else 1


def cmd_parse(cfg: CliConfig, out) -> int:
    lines = []
    for path in cfg.rule_files:
        for r in _load_rule_file(path):
            lines.append(print_rule(r))
    _emit("\n".join(lines) + ("\n" if lines else ""), cfg, out)
    return 0


COMMANDS = {
    "count": cmd_count,
    "series": cmd_series,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "suite": cmd_suite,
    "parse": cmd_parse,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.subcommand](cfg, out)
    except (UsageError, ValueError) as exc:
        err.write(f"thetaquad {ns.subcommand}: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
