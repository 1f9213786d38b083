"""Command-line interface: prime tables, identity checks, branch traces and zero tables."""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence, TextIO

from . import explicit_formula as ef
from .arithmetic_oracle import big_f_step, sieve
from .errors import RiemannPCFError, ZeroTableError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .zero_finder import ZeroList, find_zeros_up_to, load_zeros, zero_count_check
from . import zeta_engine as ze

EXIT_OK = 0
EXIT_TOLERANCE = 2
EXIT_USAGE = 64
EXIT_DATA = 65

ZEROS_ENV = "RIEMANN_ZEROS_FILE"
DEFAULT_ZEROS = "compute:100"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    x_values: list[float] = field(default_factory=list)
    zero_source: str = DEFAULT_ZEROS
    tolerances: QuadratureConfig = DEFAULT_CONFIG
    output_format: str = "text"
    output_path: str | None = None

    def __post_init__(self):
        if any(not (math.isfinite(x) and x > 1.0) for x in self.x_values):
            raise UsageError("every x must be a finite number > 1")
        kind, _, arg = self.zero_source.partition(":")
        if kind not in ("compute", "file") or not arg:
            raise UsageError(f"zero source must be compute:T or file:PATH, got {self.zero_source!r}")
        if kind == "compute":
            try:
                height = float(arg)
            except ValueError:
                raise UsageError(f"bad height in {self.zero_source!r}") from None
            if not 0 < height <= ze.MAX_ABS_T:
                raise UsageError(f"compute height must lie in (0, {ze.MAX_ABS_T}]")


def _parse_x_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse x list {text!r}") from None
    if not values:
        raise UsageError("empty x list")
    return values


def _resolve_zeros(source: str, cfg: QuadratureConfig) -> ZeroList:
    kind, _, arg = source.partition(":")
    if kind == "compute":
        return find_zeros_up_to(float(arg), cfg)
    with open(arg, "rb") as fh:
        return load_zeros(fh)


def _open_output(path: str | None) -> TextIO:
    if path is None:
        return sys.stdout
    return open(path, "w", encoding="utf-8", newline="")


def _emit_rows(rows: list[dict], fmt: str, out: TextIO, extra: dict | None = None) -> None:
    if fmt == "json":
        doc = {"rows": rows}
        if extra:
            doc.update(extra)
        json.dump(doc, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        if rows:
            writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    else:
        if rows:
            keys = list(rows[0])
            out.write("  ".join(f"{k:>14}" for k in keys) + "\n")
            for r in rows:
                out.write("  ".join(
                    f"{r[k]:>14.8g}" if isinstance(r[k], float) else f"{r[k]!s:>14}" for k in keys
                ) + "\n")


# ---------------------------------------------------------------------------


def cmd_pi_table(cfg: RunConfig, tolerance: float = 0.35) -> int:
    zeros = _resolve_zeros(cfg.zero_source, cfg.tolerances)
    pt = sieve(max(2, int(max(cfg.x_values)) + 1))
    rows, details = [], []
    breach = False
    for x in cfg.x_values:
        fr = ef.evaluate(x, zeros, "riemann", cfg.tolerances)
        fs = ef.evaluate(x, zeros, "residue", cfg.tolerances)
        big_f = ef.big_f_analytic(x, zeros, cfg.tolerances) if x > 2 else 0.0
        exact = float(big_f_step(x, pt))
        diff = abs(big_f - exact)
        breach |= diff > tolerance
        rows.append({"x": x, "F_analytic": big_f, "pi_sieve": exact, "abs_diff": diff,
                     "f_riemann": fr.total, "f_residue": fs.total, "zeros_used": len(zeros)})
        details.append({"riemann": fr.to_dict(), "residue": fs.to_dict()})
    out = _open_output(cfg.output_path)
    try:
        _emit_rows(rows, cfg.output_format, out, {"breakdowns": details})
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_TOLERANCE if breach else EXIT_OK


def cmd_verify(cfg: RunConfig, tolerance: float = 1e-7) -> int:
    zeros = _resolve_zeros(cfg.zero_source, cfg.tolerances)
    rows = []
    ok = True
    for x in cfg.x_values:
        rep = ef.verify_identity(x, cfg.tolerances)
        fr = ef.evaluate(x, zeros, "riemann", cfg.tolerances)
        fs = ef.evaluate(x, zeros, "residue", cfg.tolerances)
        checks = [
            ("Li+tail vs PV+Gamma sum", rep.lhs, rep.rhs),
            ("E1(2 log x) vs -int du/log u", rep.chain_lhs, rep.chain_rhs),
            ("f riemann vs f residue", fr.total, fs.total),
        ]
        for name, a, b in checks:
            diff = a - b
            passed = abs(diff) <= tolerance
            ok &= passed
            rows.append({"x": x, "check": name, "lhs": a, "rhs": b, "difference": diff,
                         "pass": passed})
    out = _open_output(cfg.output_path)
    try:
        _emit_rows(rows, cfg.output_format, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK if ok else EXIT_TOLERANCE


def _trace_lines(heights: Sequence[float], sigmas: Sequence[float],
                 factors: Sequence[complex]) -> list[ze.BranchTrace]:
    traces = []
    for h in heights:
        verts = [complex(2.0, 0.0), complex(2.0, h)] + [complex(s, h) for s in sorted(sigmas, reverse=True)]
        traces.append(ze.continue_log_zeta(ze.PathPolyline(tuple(verts), 0.1), factors=factors))
    return traces


def cmd_branch_trace(args, cfg: RunConfig) -> int:
    offset = args.offset
    footer: list[str] = []
    factors: tuple[complex, ...] = ()
    if args.kind == "real":
        height = 0.0
        lo, hi = args.sigma_min, args.sigma_max
        jump = ze.measure_cut_jump((lo, hi), 0.0, offset, cfg.tolerances)
        footer.append(f"jump below-above = {jump!r} ({jump / math.pi:.6f} pi)")
    elif args.kind == "critical":
        zeros = _resolve_zeros(cfg.zero_source, cfg.tolerances)
        if not 1 <= args.zero_index <= len(zeros):
            raise UsageError(f"zero index {args.zero_index} outside 1..{len(zeros)}")
        height = zeros[args.zero_index - 1]
        lo, hi = args.sigma_min, min(args.sigma_max, 0.45)
        jump = ze.measure_critical_cut_jump(zeros, args.zero_index, lo, offset, cfg.tolerances)
        footer.append(f"jump below-above at sigma={lo} = {jump!r} ({jump / math.pi:.6f} pi)")
    else:
        height = args.gamma
        factors = (complex(args.r1, height), complex(args.r2, height))
        lo, hi = args.sigma_min, args.sigma_max
        left, between = ze.rogue_experiment(factors[0], factors[1], cfg.tolerances, offset)
        footer.append(f"drop above-below left of both = {left!r} ({left / math.pi:.6f} pi)")
        footer.append(f"drop above-below between = {between!r} ({between / math.pi:.6f} pi)")
    n = max(args.samples, 2)
    sigmas = [lo + (hi - lo) * k / (n - 1) for k in range(n)]
    traces = _trace_lines([height + offset, height - offset], sigmas, factors)
    out = _open_output(cfg.output_path)
    try:
        out.write("sigma,t,re_log,im_log\n")
        writer = csv.writer(out, lineterminator="\n")
        for tr in traces:
            for s, lv in zip(sorted(sigmas, reverse=True), tr.vertex_values[2:]):
                writer.writerow([repr(s), repr(tr.points[-1][0].imag), repr(lv.real), repr(lv.imag)])
        for line in footer:
            out.write(f"# {line}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_zeros(args, cfg: RunConfig) -> int:
    if args.zeros_command == "find":
        if not 0 < args.up_to <= ze.MAX_ABS_T:
            raise UsageError(f"--up-to must lie in (0, {ze.MAX_ABS_T}]")
        zl = find_zeros_up_to(args.up_to, cfg.tolerances)
        out = _open_output(cfg.output_path)
        try:
            out.write(zl.to_text())
        finally:
            if out is not sys.stdout:
                out.close()
        return EXIT_OK
    with open(args.file, "rb") as fh:
        zl = load_zeros(fh, certify=True)
    heights = [h for h in (50.0, 100.0, 200.0) if h <= zl.certified_through] or [zl.certified_through]
    rows = []
    ok = True
    for h in heights:
        count, est = zero_count_check(h, zl)
        band = 2.0 * math.log(h)
        inside = abs(count - est) <= band
        ok &= inside
        rows.append({"T": h, "count": count, "estimate": est, "band": band, "within_band": inside})
    out = _open_output(cfg.output_path)
    try:
        _emit_rows(rows, cfg.output_format, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK if ok else EXIT_TOLERANCE


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--zeros", default=None,
                        help=f"compute:T or file:PATH (default ${ZEROS_ENV} or {DEFAULT_ZEROS})")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--output", default=None)
    common.add_argument("--abs-tol", type=float, default=DEFAULT_CONFIG.abs_tol)
    common.add_argument("--rel-tol", type=float, default=DEFAULT_CONFIG.rel_tol)

    parser = _Parser(prog="riemann-pcf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pi-table", parents=[common], help="analytic vs sieve prime counts")
    p.add_argument("--x", required=True)
    p.add_argument("--tolerance", type=float, default=0.35)

    p = sub.add_parser("verify", parents=[common], help="check the two forms of f(x) agree")
    p.add_argument("--x", required=True)
    p.add_argument("--tolerance", type=float, default=1e-7)

    p = sub.add_parser("branch-trace", parents=[common], help="Im log zeta along lines beside a cut")
    p.add_argument("--kind", choices=("real", "critical", "rogue"), default="real")
    p.add_argument("--offset", type=float, default=0.01)
    p.add_argument("--sigma-min", type=float, default=-1.5)
    p.add_argument("--sigma-max", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=21)
    p.add_argument("--zero-index", type=int, default=1)
    p.add_argument("--gamma", type=float, default=17.578382390253124)
    p.add_argument("--r1", type=float, default=0.1)
    p.add_argument("--r2", type=float, default=0.9)

    p = sub.add_parser("zeros", help="compute or check zero tables")
    zsub = p.add_subparsers(dest="zeros_command", required=True, parser_class=_Parser)
    zf = zsub.add_parser("find", parents=[common])
    zf.add_argument("--up-to", type=float, required=True)
    zc = zsub.add_parser("check", parents=[common])
    zc.add_argument("--file", required=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        source = args.zeros or (f"file:{os.environ[ZEROS_ENV]}" if os.environ.get(ZEROS_ENV)
                                else DEFAULT_ZEROS)
        tolerances = QuadratureConfig(abs_tol=args.abs_tol, rel_tol=args.rel_tol)
        x_values = _parse_x_list(args.x) if hasattr(args, "x") else []
        cfg = RunConfig(args.command, x_values, source, tolerances, args.format, args.output)
        if args.command == "pi-table":
            return cmd_pi_table(cfg, args.tolerance)
        if args.command == "verify":
            return cmd_verify(cfg, args.tolerance)
        if args.command == "branch-trace":
            return cmd_branch_trace(args, cfg)
        return cmd_zeros(args, cfg)
    except UsageError as exc:
        print(f"riemann-pcf: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ZeroTableError, OSError, UnicodeDecodeError) as exc:
        print(f"riemann-pcf: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except RiemannPCFError as exc:
        print(f"riemann-pcf: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
