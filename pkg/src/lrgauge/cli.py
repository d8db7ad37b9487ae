"""Command-line tables for the counterexample's integrals, variations and probes.

Every subcommand prints one table (CSV or Markdown) whose ``status`` column
reads ``certified`` or ``failed``.  Exit status: 0 when every row is
certified, 2 when some row is not, 1 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys
from fractions import Fraction
from typing import Sequence

from . import cantor
from .functions import CounterexampleF, vn_integral_exact
from .hkr import candidate_pair, hkr_refinement_study, hkr_sum
from .lr_analysis import density_at_zero, lr_derivative_estimate, omega, s_set
from .numerics import Enclosure, fmt_rat, rat
from .partitions import ConstantGauge, Segment, cousin_division, parse_gauge
from .variation import (
    Unreachable,
    adversarial_report,
    exceeds_paper_bound,
    minimal_workable_rank,
    paper_bound,
    variation_search,
)

OK, FAIL = "certified", "failed"


class UsageError(Exception):
    pass


def _rat(s: str) -> Fraction:
    try:
        return rat(s)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise argparse.ArgumentTypeError(f"not a rational: {s!r}") from e


def _pos_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from e
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg_int(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _rat_list(s: str) -> list[Fraction]:
    return [_rat(x) for x in s.split(",") if x.strip()]


def _cell(x, approx: bool) -> str:
    if isinstance(x, Enclosure):
        s = str(x)
        return f"{s} (~{float(x.mid):.6g})" if approx else s
    if isinstance(x, Fraction):
        s = fmt_rat(x)
        return f"{s} (~{float(x):.6g})" if approx else s
    return str(x)


def _emit(header: Sequence[str], rows: list[Sequence], fmt: str, approx: bool, out) -> None:
    cells = [[_cell(c, approx) for c in row] for row in rows]
    if fmt == "md":
        out.write("| " + " | ".join(header) + " |\n")
        out.write("|" + "|".join("---" for _ in header) + "|\n")
        for row in cells:
            out.write("| " + " | ".join(row) + " |\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(cells)


def _load_gauge(spec: str):
    kind, _, arg = spec.partition(":")
    if kind == "const":
        return parse_gauge(spec)
    if kind not in ("pwc", "rank") or not arg:
        raise UsageError(f"bad gauge spec {spec!r}")
    try:
        with open(arg, newline="") as fh:
            rows = [tuple(r[:2]) for r in csv.reader(fh) if r and not r[0].startswith("#")]
    except OSError as e:
        raise UsageError(f"cannot read gauge file: {e}") from e
    return parse_gauge(kind, rows)


# -- subcommands ---------------------------------------------------------


def cmd_eq1(a):
    F = CounterexampleF()
    rows = []
    for n in range(1, a.n_max + 1):
        exact = vn_integral_exact(n, a.r)
        u = cantor.contiguous_interval("L" * (n - 1))
        whole = F.integrate_abs_pow(u, 0, 0, 0, a.r, a.max_width)
        rows.append((n, a.r, exact, whole, OK if whole.lo > exact else FAIL))
    return ("n", "r", "int_v^r", "int_u^r", "status"), rows


def cmd_deltar(a):
    F = CounterexampleF()
    g = ConstantGauge(a.delta) if a.gauge is None else _load_gauge(a.gauge)
    rep = adversarial_report(F, g, a.r, a.l, a.n)
    n, l = rep.params
    bound = paper_bound(n, l, a.r) / (2**l - 1)
    rows = []
    for k, (t, term) in enumerate(zip(rep.division, rep.terms)):
        ok = exceeds_paper_bound(term.lo, n, l, a.r, count=1)
        rows.append((k, fmt_rat(t.seg.left), fmt_rat(t.seg.right), fmt_rat(t.tag), term, bound,
                     OK if ok else FAIL))
    return ("k", "left", "right", "tag", "delta_r", "paper_term_bound", "status"), rows


def cmd_variation(a):
    F = CounterexampleF()
    g = _load_gauge(a.gauge)
    try:
        rep = variation_search(F, g, a.r, a.target, a.l_max, a.stop)
    except Unreachable:
        n, _ = minimal_workable_rank(g)
        return _variation_header(), [(n, "", a.r, 0, "", "", "", g.describe(), FAIL)]
    row = rep.csv_row()
    return _variation_header(), [row + (OK if rep.sum.lo >= a.target else FAIL,)]


def _variation_header():
    return ("n", "l", "r", "k-count", "sum.lo", "sum.hi", "paper_bound", "gauge_descr", "status")


def cmd_hkr_sum(a):
    p = candidate_pair(a.pair)
    g = ConstantGauge(a.delta)
    if a.pair in ("main", "remark-e") and a.l is not None:
        # adversarial division: the sum must beat the closed-form bound
        rep = adversarial_report(p.F, g, a.r, a.l)
        total = hkr_sum(p, rep.division, a.r)
        n, l = rep.params
        ok = exceeds_paper_bound(total.lo, n, l, a.r)
        return ("pair", "delta", "r", "items", "sum", "bound", "status"), [
            (a.pair, a.delta, a.r, len(rep.division), total, paper_bound(n, l, a.r).hi,
             OK if ok else FAIL)]
    d = cousin_division(p.domain, g)
    total = hkr_sum(p, d, a.r)
    if a.pair == "smooth":
        bound, ok = 2 * a.delta, total.hi <= 2 * a.delta
    elif a.pair == "zero":
        bound, ok = Fraction(0), total.hi == 0
    else:
        bound, ok = "", total.lo >= 0
    return ("pair", "delta", "r", "items", "sum", "bound", "status"), [
        (a.pair, a.delta, a.r, len(d), total, bound, OK if ok else FAIL)]


def cmd_hkr_study(a):
    p = candidate_pair(a.pair)
    rows = hkr_refinement_study(p, a.schedule, a.r, a.target, a.l_max)
    out = []
    for row in rows:
        if a.pair == "main":
            ok = row.verdict.startswith("falsified")
        else:
            ok = row.verdict.startswith("consistent")
        out.append((row.delta, row.sum.lo, row.sum.hi, row.verdict, OK if ok else FAIL))
    return ("delta", "sum.lo", "sum.hi", "verdict", "status"), out


def cmd_lr_probe(a):
    p = candidate_pair(a.pair)
    if a.mode == "continuity":
        readings = [omega(p.F, a.x, h, a.r, a.max_width) for h in a.h_list]
        rows = []
        for i, (h, e) in enumerate(zip(a.h_list, readings)):
            ok = i == 0 or e.hi <= readings[i - 1].lo or e.hi == 0
            rows.append((h, e, OK if ok else FAIL))
        return ("h", "omega", "status"), rows
    est, verdict = lr_derivative_estimate(p.F, a.x, a.r, a.h_list)
    rows = [(e.h, e.alpha, e.residual, "o(h)" if verdict else "not o(h)", OK if verdict else FAIL)
            for e in est]
    return ("h", "alpha", "residual", "trend", "status"), rows


def cmd_density(a):
    p = candidate_pair(a.pair)
    inner, _ = s_set(p.F, a.x, a.h, a.r, a.max_width)
    if a.h < 0:
        inner = inner.reflect()
    dens = density_at_zero(inner, a.k_list)
    rows = []
    for i, (k, v) in enumerate(zip(a.k_list, dens)):
        ok = i == 0 or v >= dens[i - 1]
        rows.append((k, v, OK if ok else FAIL))
    return ("k", "inner_density", "status"), rows


def cmd_cantor_table(a):
    rows = []
    for n in range(a.n_max + 1):
        for addr in cantor.extensions("", n):
            segs, gaps = cantor.decompose(addr, a.l)
            seg_len = sum((cantor.rank_segment(s).length for s in segs), Fraction(0))
            gap_len = sum((g.length for g in gaps), Fraction(0))
            parent = cantor.rank_segment(addr).length
            ok = (len(segs) == 2**a.l and len(gaps) == 2**a.l - 1
                  and seg_len + gap_len == parent and seg_len == Fraction(2**a.l, 3 ** (n + a.l)))
            rows.append((addr or "-", n, a.l, len(segs), len(gaps), seg_len, gap_len,
                         OK if ok else FAIL))
    return ("address", "n", "l", "segments", "gaps", "segment_measure", "gap_measure", "status"), rows


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lrgauge", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "md"), default="csv")
    common.add_argument("--approx", action="store_true", help="append decimal renderings")
    common.add_argument("--r", type=_pos_int, default=1)
    common.add_argument("--max-width", type=_rat, default=Fraction(1, 10**9))
    common.add_argument("--seed", type=int, default=None, help="accepted for reproducible runs")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("eq1", parents=[common], help="plateau integral vs whole-gap integral")
    s.add_argument("--n-max", type=_pos_int, default=8)
    s.set_defaults(run=cmd_eq1)

    s = sub.add_parser("deltar", parents=[common], help="per-interval Delta_r on an adversarial division")
    s.add_argument("--n", type=_nonneg_int, default=None)
    s.add_argument("--l", type=_pos_int, default=3)
    s.add_argument("--delta", type=_rat, default=Fraction(1, 5))
    s.add_argument("--gauge", default=None)
    s.set_defaults(run=cmd_deltar)

    s = sub.add_parser("variation", parents=[common], help="grow divisions until the sum passes a target")
    s.add_argument("--gauge", default="const:1/5")
    s.add_argument("--target", type=_rat, default=Fraction(100))
    s.add_argument("--l-max", type=_pos_int, default=24)
    s.add_argument("--stop", choices=("paper", "certified"), default="paper")
    s.set_defaults(run=cmd_variation)

    s = sub.add_parser("hkr-sum", parents=[common], help="Riemann-type sum for one gauge")
    s.add_argument("--pair", choices=("smooth", "zero", "main", "remark-e"), default="smooth")
    s.add_argument("--delta", type=_rat, default=Fraction(1, 10))
    s.add_argument("--l", type=_pos_int, default=None, help="counterexample pairs: use an adversarial division")
    s.set_defaults(run=cmd_hkr_sum)

    s = sub.add_parser("hkr-study", parents=[common], help="sums along a decreasing gauge schedule")
    s.add_argument("--pair", choices=("smooth", "zero", "main", "remark-e"), default="smooth")
    s.add_argument("--schedule", type=_rat_list, default=[Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)])
    s.add_argument("--target", type=_rat, default=Fraction(100))
    s.add_argument("--l-max", type=_pos_int, default=24)
    s.set_defaults(run=cmd_hkr_study)

    s = sub.add_parser("lr-probe", parents=[common], help="L^r continuity or derivative series at a point")
    s.add_argument("--pair", choices=("smooth", "zero", "main", "remark-e"), default="main")
    s.add_argument("--x", type=_rat, default=Fraction(0))
    s.add_argument("--h-list", type=_rat_list, default=[Fraction(1, 3), Fraction(1, 9), Fraction(1, 27)])
    s.add_argument("--mode", choices=("continuity", "derivative"), default="continuity")
    s.set_defaults(run=cmd_lr_probe)

    s = sub.add_parser("density", parents=[common], help="density at 0 of the inner S-set")
    s.add_argument("--pair", choices=("smooth", "zero", "main", "remark-e"), default="main")
    s.add_argument("--x", type=_rat, default=Fraction(0))
    s.add_argument("--h", type=_rat, default=Fraction(1, 3))
    s.add_argument("--k-list", type=_rat_list, default=[Fraction(1, 3**k) for k in range(4, 10)])
    s.set_defaults(run=cmd_density)

    s = sub.add_parser("cantor-table", parents=[common], help="decomposition counts and measures")
    s.add_argument("--n-max", type=_nonneg_int, default=3)
    s.add_argument("--l", type=_pos_int, default=3)
    s.set_defaults(run=cmd_cantor_table)
    return ap


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    if args.seed is not None:
        random.seed(args.seed)
    try:
        header, rows = args.run(args)
    except (UsageError, ValueError) as e:
        print(f"lrgauge: error: {e}", file=sys.stderr)
        return 1
    buf = io.StringIO()
    _emit(header, rows, args.format, args.approx, buf)
    out.write(buf.getvalue())
    return 0 if all(row[-1] == OK for row in rows) else 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
