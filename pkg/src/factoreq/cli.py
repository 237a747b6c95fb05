"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 precondition violation,
4 verification failure.
"""

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from .corpus import corpus_group, corpus_names
from .grp import GroupError, all_subgroups
from .burnside import RelationError, brauer_relation_basis
from .zgmod import ModuleError
from .regfe import PairingError, factor_equivalent, regulator_constant
from .jsonio import (
    InputError,
    burnside_from_json,
    canonical_dumps,
    fe_report_to_json,
    group_from_json,
    jsonable,
    load_json,
    module_from_json,
    rational_to_json,
)
from .suites import SUITE_NAMES, run_suites


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    group_size_bound: int = 64
    retry_budget: int = 64
    format: str = "text"

    def __post_init__(self):
        if self.seed < 0:
            raise InputError("seed must be non-negative")
        if self.group_size_bound <= 0 or self.retry_budget <= 0:
            raise InputError("bounds must be positive")
        if self.format not in ("text", "json"):
            raise InputError(f"unknown format {self.format!r}")


def _read_source(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_group(source, config):
    """Group from a corpus name, a JSON file path, or '-' (stdin)."""
    if source in corpus_names():
        return corpus_group(source)
    return group_from_json(load_json(_read_source(source)), bound=config.group_size_bound)


def _rat_text(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# --- command implementations -----------------------------------------------


def cmd_group(args, config):
    group = _load_group(args.group, config)
    table = all_subgroups(group, bound=config.group_size_bound)
    classes = [
        {
            "id": ci,
            "order": cls.order,
            "size": len(cls.members),
            "cyclic": cls.is_cyclic,
            "representative": list(cls.representative.elements),
        }
        for ci, cls in enumerate(table)
    ]
    report = {
        "order": group.order,
        "element_classes": len(group.element_classes),
        "subgroup_classes": classes,
    }
    lines = [
        f"group of order {group.order}",
        f"element conjugacy classes: {len(group.element_classes)}",
        f"subgroup conjugacy classes: {len(table)}",
    ]
    for c in classes:
        tag = "cyclic" if c["cyclic"] else "non-cyclic"
        lines.append(
            f"  [{c['id']}] order {c['order']}, {c['size']} conjugate(s), {tag}, "
            f"representative {c['representative']}"
        )
    return report, lines


def cmd_relations(args, config):
    group = _load_group(args.group, config)
    basis = brauer_relation_basis(group, bound=config.group_size_bound)
    report = {
        "rank": basis.rank,
        "relations": [jsonable(theta) for theta in basis],
    }
    lines = [f"Brauer relation space of rank {basis.rank}"]
    for i, theta in enumerate(basis):
        terms = " ".join(f"{n:+d}·[{ci}]" for ci, n in theta.support())
        lines.append(f"  theta_{i}: {terms}")
    return report, lines


def cmd_regconst(args, config):
    group = _load_group(args.group, config)
    module = module_from_json(group, load_json(_read_source(args.module)))
    basis = brauer_relation_basis(group, bound=config.group_size_bound)
    if args.relation is not None:
        theta = burnside_from_json(group, load_json(_read_source(args.relation)))
        relations = [theta]
    else:
        relations = list(basis)
    constants = [regulator_constant(theta, module) for theta in relations]
    report = {
        "relations": [jsonable(t) for t in relations],
        "constants": [rational_to_json(c) for c in constants],
    }
    lines = ["regulator constants"]
    for i, c in enumerate(constants):
        lines.append(f"  theta_{i}: {_rat_text(c)}")
    if not constants:
        lines.append("  (no relations)")
    return report, lines


def cmd_factor_equiv(args, config):
    group = _load_group(args.group, config)
    m = module_from_json(group, load_json(_read_source(args.module_a)))
    n = module_from_json(group, load_json(_read_source(args.module_b)))
    fe = factor_equivalent(m, n, seed=config.seed, retry_budget=config.retry_budget)
    report = fe_report_to_json(fe)
    lines = [f"factor equivalent: {'yes' if fe.verdict else 'no'}"]
    for i, d in enumerate(fe.defects):
        lines.append(
            f"  theta_{i}: defect {_rat_text(d)}, "
            f"C(M) = {_rat_text(fe.constants_m[i])}, C(N) = {_rat_text(fe.constants_n[i])}"
        )
    lines.append(f"  index function: {[_rat_text(v) for v in fe.index_values.values]}")
    return report, lines


def cmd_verify(args, config):
    report = run_suites(args.suite, seed=config.seed)
    lines = [f"suite {report['suite']} (seed {report['seed']})"]
    for c in report["checks"]:
        status = "pass" if c["ok"] else "FAIL"
        extras = {
            k: v for k, v in c.items() if k not in ("name", "group", "ok")
        }
        detail = f" {extras}" if extras else ""
        lines.append(f"  [{status}] {c['name']}[{c['group']}]{detail}")
    s = report["summary"]
    lines.append(f"{s['passed']}/{s['checks']} checks passed")
    return jsonable(report), lines


# --- plumbing ---------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="factoreq",
        description=(
            "Brauer relations, regulator constants, and factor-equivalence "
            "certificates for modules over integral group rings."
        ),
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--bound", type=int, default=64, help="group size bound")
    parser.add_argument("--retry-budget", type=int, default=64)
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--output", default=None, help="write the report to a file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="subgroup class table of a group")
    p.add_argument("group", help="JSON path, '-' for stdin, or a corpus name")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("relations", help="Brauer relation basis")
    p.add_argument("group")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("regconst", help="regulator constants of a module")
    p.add_argument("group")
    p.add_argument("--module", required=True, help="module JSON path or '-'")
    p.add_argument("--relation", default=None, help="Burnside element JSON path")
    p.set_defaults(func=cmd_regconst)

    p = sub.add_parser("factor-equiv", help="factor-equivalence certificate")
    p.add_argument("group")
    p.add_argument("--module-a", required=True)
    p.add_argument("--module-b", required=True)
    p.set_defaults(func=cmd_factor_equiv)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITE_NAMES + ("all",))
    p.set_defaults(func=cmd_verify)

    return parser


def _emit(report, lines, args):
    if args.format == "json":
        text = canonical_dumps(jsonable(report))
    else:
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            seed=args.seed,
            group_size_bound=args.bound,
            retry_budget=args.retry_budget,
            format=args.format,
        )
        report, lines = args.func(args, config)
    except (InputError, GroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RelationError, ModuleError, PairingError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 3
    _emit(report, lines, args)
    if args.command == "verify" and not report["summary"]["ok"]:
        return 4
    return 0


def run():
    raise SystemExit(main())


if __name__ == "__main__":
    run()
