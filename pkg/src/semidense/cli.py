"""Command-line interface.

Exit codes: 0 for success (including hunt discoveries), 2 for usage or input
errors, 3 when a computed identity fails (densities disagree, a campaign
records violations, a certificate does not hold).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import campaigns, catalog, infinite, means
from . import densities as dens
from . import semigroup as sg
from .errors import NotAmenable, QuotientError, SemidenseError, TheoremViolation
from .kernels import BACKEND
from .semigroup import MASK_WIDTH, FiniteSemigroup

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 2, 3


@dataclass(frozen=True)
class RunConfig:
    oracle_bound: int = dens.ORACLE_BOUND
    mask_width: int = MASK_WIDTH
    jobs: int = 1
    seed: int = 0
    fmt: str = "tsv"

    def __post_init__(self):
        if self.oracle_bound > self.mask_width:
            raise SemidenseError(f"oracle bound {self.oracle_bound} exceeds mask width {self.mask_width}")
        if self.jobs < 1:
            raise SemidenseError("--jobs must be at least 1")
        if not 0 <= self.seed < 1 << 64:
            raise SemidenseError("--seed must fit in 64 bits")


class Output:
    """Collects rows and prints them as TSV or as aligned columns."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self.rows: list[list[str]] = []

    def row(self, *fields) -> None:
        self.rows.append([_fmt(f) for f in fields])

    def flush(self) -> None:
        if self.fmt == "tsv":
            for r in self.rows:
                print("\t".join(r), file=self.stream)
        else:
            width = max((len(r[0]) for r in self.rows), default=0)
            for r in self.rows:
                print(r[0].ljust(width), "  ".join(r[1:]), file=self.stream)
        self.rows = []


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return dens.fmt_fraction(v)
    return str(v)


def load_semigroup(spec: str) -> FiniteSemigroup:
    """A .sgt path, or a builtin name (RZ2, LZ2, C2, SL2) when no such file exists."""
    if not Path(spec).exists() and spec in catalog.BUILTINS:
        return catalog.BUILTINS[spec]()
    return sg.read_sgt(spec)


def _elements(S: FiniteSemigroup, mask) -> str:
    return "{" + ",".join(S.label(e) for e in mask) + "}"


# commands


def cmd_analyze(args, cfg: RunConfig, out: Output) -> int:
    S = load_semigroup(args.table)
    flags = sg.classify(S)
    sfc, amenable = dens.satisfies_sfc(S), means.is_left_amenable(S)
    out.row("order", S.order)
    for name, value in flags.as_dict().items():
        out.row(name, value)
    out.row("sfc", sfc)
    out.row("left_amenable", amenable)
    out.row("kernel", _elements(S, sg.kernel(S)))
    out.row("minimal_left_ideals", " ".join(_elements(S, L) for L in sg.minimal_left_ideals(S)))
    if sfc:
        out.row("delta", _elements(S, dens.delta_set(S)))
    if amenable:
        out.row("delta_star", _elements(S, means.delta_star_set(S)))
    if not sfc:
        out.row("notice", "no SFC: d and fast d_t skipped")
    if not amenable:
        out.row("notice", "not left amenable: d_star skipped")
    status = EXIT_OK
    for text in args.subset or []:
        A = sg.parse_subset(text, S.order)
        report = dens.density_report(S, A, cfg.oracle_bound)
        out.row("subset", _elements(S, A))
        for line in report.tsv().splitlines():
            out.row(*line.split("\t"))
        out.row("thick", sg.is_thick(S, A))
        out.row("piecewise_syndetic", dens.piecewise_syndetic(S, A))
        if not report.consistent:
            out.row("violation", "densities disagree")
            status = EXIT_VIOLATION
    out.flush()
    return status


def cmd_campaign(args, cfg: RunConfig, out: Output) -> int:
    params = campaigns.Params(
        order_min=args.order_min,
        order_max=args.order_max,
        seed=cfg.seed,
        samples=args.samples,
        semigroup_samples=args.semigroup_samples,
        dedup=args.dedup,
        jobs=cfg.jobs,
    )
    report = campaigns.run_campaign(args.name, params)
    for line in report.tsv().splitlines():
        out.row(*line.split("\t"))
    out.flush()
    if args.artifacts and (report.violations or report.discoveries):
        for path in campaigns.dump_artifacts(report, args.artifacts):
            print(f"artifact\t{path}", file=sys.stderr)
    if report.discoveries:
        print(f"DISCOVERY: {len(report.discoveries)} record(s) in campaign {args.name}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_product(args, cfg: RunConfig, out: Output) -> int:
    S, T = load_semigroup(args.left), load_semigroup(args.right)
    P = sg.direct_product(S, T, cfg.mask_width)
    if args.out:
        sg.write_sgt(P, args.out)
    out.row("order", P.order)
    status = EXIT_OK
    if args.subset_left is not None or args.subset_right is not None:
        A = sg.parse_subset(args.subset_left or "", S.order)
        B = sg.parse_subset(args.subset_right or "", T.order)
        try:
            dA, dB = means.banach_density(S, A)[0], means.banach_density(T, B)[0]
            dAB = means.banach_density(P, sg.product_subset(A, B))[0]
        except NotAmenable as exc:
            out.row("notice", f"{exc}; product law not applicable")
        else:
            out.row("d_star_product", dAB)
            out.row("d_star_left_times_right", dA * dB)
            if dAB != dA * dB:
                out.row("violation", "d*(AxB) != d*(A) d*(B)")
                status = EXIT_VIOLATION
    if not args.out:
        for line in sg.format_sgt(P).splitlines():
            out.row("table", line)
    out.flush()
    return status


def cmd_quotient(args, cfg: RunConfig, out: Output) -> int:
    S = load_semigroup(args.table)
    try:
        h = sg.collapse_quotient(S)
    except QuotientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TheoremViolation as exc:
        out.row("violation", exc)
        out.flush()
        return EXIT_VIOLATION
    T = h.target
    if args.out:
        sg.write_sgt(T, args.out)
    flags = sg.classify(T)
    sfc = dens.satisfies_sfc(S)
    out.row("target_order", T.order)
    out.row("class_of", " ".join(map(str, h.class_of)))
    out.row("cancellative", flags.left_cancellative and flags.right_cancellative)
    out.row("group", flags.group)
    if not sfc:
        print("warning: NonSFCQuotient: source lacks SFC, so cancellativity of the quotient is not guaranteed",
              file=sys.stderr)
        out.row("notice", "NonSFCQuotient")
    status = EXIT_OK
    for text in args.subset or []:
        B = sg.parse_subset(text, T.order)
        out.row("subset", _elements(T, B))
        if not sfc:
            out.row("notice", "density cross-check needs SFC; skipped")
            continue
        pre = means.banach_density(S, h.preimage(B))[0]
        target = dens.folner_density(T, B)[0]
        target_star = means.banach_density(T, B)[0]
        out.row("d_star_preimage", pre)
        out.row("d_target", target)
        out.row("d_star_target", target_star)
        if not pre == target == target_star:
            out.row("violation", "quotient densities disagree")
            status = EXIT_VIOLATION
    if not args.out:
        for line in sg.format_sgt(T).splitlines():
            out.row("table", line)
    out.flush()
    return status


def cmd_example(args, cfg: RunConfig, out: Output) -> int:
    if args.which == "pfn":
        out.row("n", "ratio", "defect")
        status = EXIT_OK
        for n in range(1, args.n_max + 1):
            ratio, _ = infinite.pfn_max_ratio(n)
            out.row(n, ratio, infinite.pfn_defect(n))
            if ratio != Fraction(1, 2):
                status = EXIT_VIOLATION
        for m in range(2, min(args.m_max, 5) + 1):
            t = infinite.pfn_density_A(m)
            out.row("truncation", m, t.density_avoiding_one, t.density_containing_one)
            if t.density_avoiding_one != 0 or t.shift_absorbed or t.cofinal:
                status = EXIT_VIOLATION
        out.flush()
        return status
    report = infinite.free_semigroup_example(args.len)
    out.row("length", report.length)
    out.row("words", report.words)
    for name in ("a_misses_B_translates", "b_misses_A_translates", "union_translates_cover", "a_inverse_A_is_everything"):
        out.row("certificate", name, getattr(report, name))
    out.flush()
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_net(args, cfg: RunConfig, out: Output) -> int:
    fg = infinite.BUILTINS[args.fg]()
    pred = infinite.PREDICATES[args.subset]
    spec = infinite.default_spec(fg, args.n_max)
    shifts = fg.ball(args.shift_len)
    ns = range(1, args.n_max + 1)
    ratios = infinite.density_along_net(fg, pred, spec, ns, shifts)
    defects = infinite.net_defects(fg, spec, ns)
    out.row("n", "ratio", "defect")
    for n, r, d in zip(ns, ratios, defects):
        out.row(n, r, d)
    out.flush()
    return EXIT_OK


def cmd_lp_dump(args, cfg: RunConfig, out: Output) -> int:
    S = load_semigroup(args.table)
    A = sg.parse_subset(args.subset or "", S.order)
    out.stream.write(means.build_lim_program(S, A).dump())
    return EXIT_OK


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    """Shared flags, accepted before or after the command name."""
    p = argparse.ArgumentParser(add_help=False)
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--jobs", type=int, default=default(1), help="worker processes (default 1)")
    p.add_argument("--seed", type=int, default=default(0), help="sampling seed (default 0)")
    p.add_argument("--format", choices=["tsv", "pretty"], default=default("tsv"), dest="fmt")
    p.add_argument("--oracle-bound", type=int, default=default(dens.ORACLE_BOUND),
                   help="largest order for subset-scan oracles")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semidense", description=__doc__.splitlines()[0],
                                     parents=[_global_flags(False)])
    parser.add_argument("--version", action="version", version=f"%(prog)s (kernels: {BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_global_flags(True)]

    p = sub.add_parser("analyze", parents=common, help="structure and densities of one table")
    p.add_argument("table", help=".sgt file or builtin name")
    p.add_argument("--subset", action="append", help="'0,2' or '@hex'; repeatable")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("campaign", parents=common, help="run a named campaign")
    p.add_argument("name")
    p.add_argument("--order-min", type=int, default=1)
    p.add_argument("--order-max", type=int, default=4)
    p.add_argument("--samples", type=int, default=512, help="subsets per semigroup above order 4")
    p.add_argument("--semigroup-samples", type=int, default=64, help="sampled semigroups per order above 5")
    p.add_argument("--dedup", choices=["none", "iso", "iso+anti"], default="iso")
    p.add_argument("--artifacts", help="directory for .sgt dumps of violations and discoveries")
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("product", parents=common, help="direct product with a density cross-check")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--subset-left")
    p.add_argument("--subset-right")
    p.add_argument("--out", help="write the product table here")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("quotient", parents=common, help="collapse quotient with density cross-checks")
    p.add_argument("table")
    p.add_argument("--subset", action="append", help="subset of the quotient; repeatable")
    p.add_argument("--out", help="write the quotient table here")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("example", parents=common, help="finite-scale infinite examples")
    p.add_argument("which", choices=["pfn", "free"])
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--m-max", type=int, default=5, help="largest truncation P_f({1..m}) (at most 5)")
    p.add_argument("--len", type=int, default=5)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("net", parents=common, help="density profile along a Folner sequence")
    p.add_argument("--fg", choices=sorted(infinite.BUILTINS), required=True)
    p.add_argument("--subset", choices=sorted(infinite.PREDICATES), required=True)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--shift-len", type=int, default=10, help="shifts range over the ball of this length")
    p.set_defaults(func=cmd_net)

    p = sub.add_parser("lp-dump", parents=common, help="print the invariant-mean LP for a subset")
    p.add_argument("table")
    p.add_argument("--subset")
    p.set_defaults(func=cmd_lp_dump)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(oracle_bound=args.oracle_bound, jobs=args.jobs, seed=args.seed, fmt=args.fmt)
        return args.func(args, cfg, Output(cfg.fmt))
    except SemidenseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TheoremViolation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
