"""Command-line driver: ``verify | transfer | count | unramified | spherical``.

Exit codes: 0 when every identity checked by the command holds, 1 when one
fails, 2 for usage errors (bad flags, malformed input, unsupported field).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import checks, qsymbolic
from .enumeration import rank_census
from .fields import GF, UnsupportedOperation
from .transfer import (TransferDomainError, TransferInput, transfer_bounds, transfer_eval,
                       transfer_oracle)

SAMPLE_INPUT = Path(__file__).with_name("data") / "sample_transfer.json"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    p_or_q: int | None
    input_path: str | None
    output_format: str
    seed: int
    iterations: int


def _num(x) -> str:
    """Exact rational string when exact, else 15 significant digits."""
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, complex):
        return f"{x.real:.15g}{x.imag:+.15g}j"
    return f"{x:.15g}"


def _emit_rows(header, rows, fmt, out):
    if fmt == "json":
        out.write(json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n")
    else:
        out.write("\t".join(header) + "\n")
        for r in rows:
            out.write("\t".join(str(v) for v in r) + "\n")


def _kv(spec: str) -> dict:
    """Parse ``"q=9 t=1/2"`` (spaces or commas) into a dict of strings."""
    out = {}
    for part in spec.replace(",", " ").split():
        if "=" not in part:
            raise UsageError(f"expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


# verify ---------------------------------------------------------------------------

def cmd_verify(cfg: RunConfig, args, out, err) -> int:
    if cfg.iterations < 0:
        raise UsageError("--iterations must be >= 0")
    ctx = checks.MUTATIONS[args.mutate] if args.mutate else checks.Context()
    if cfg.iterations == 0:
        err.write("warning: --iterations 0, every identity passes vacuously\n")
    only = set(args.only.split(",")) if args.only else None
    results = checks.run_all(cfg.seed, cfg.iterations, ctx, only)
    rows = [(r.name, "pass" if r.passed else "FAIL", r.iterations, r.failures,
             json.dumps(r.counterexample, sort_keys=True) if r.counterexample is not None else "")
            for r in results]
    _emit_rows(("identity", "status", "iterations", "failures", "counterexample"),
               rows, cfg.output_format, out)
    return 0 if all(r.passed for r in results) else 1


# transfer ---------------------------------------------------------------------------

def _load_transfer(path: str):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read {path}: {e}") from e
    try:
        points = [Fraction(a) for a in data.get("points", [])]
        return TransferInput.from_json(data), points
    except TransferDomainError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise UsageError(f"malformed transfer input: {e}") from e


def cmd_transfer(cfg: RunConfig, args, out, err) -> int:
    path = cfg.input_path or str(SAMPLE_INPUT)
    try:
        phi, points = _load_transfer(path)
    except TransferDomainError as e:
        raise UsageError(str(e)) from e
    if args.points:
        try:
            points = [Fraction(a) for a in args.points]
        except (ValueError, ZeroDivisionError) as e:
            raise UsageError(f"bad evaluation point: {e}") from e
    if not points:
        raise UsageError("no evaluation points (pass them as arguments or in 'points')")
    header = ["a", "re", "im", "shells", "certified"]
    if args.with_oracle:
        header.append("oracle_delta")
    rows, worst = [], 0.0
    for a in points:
        if a == 0:
            rows.append([str(a), "error", "error", "-", "a=0"] + (["-"] if args.with_oracle else []))
            continue
        res = transfer_eval(phi, a)
        shells = f"{res.shells_used[0]}..{res.shells_used[1]}" if res.shells_used else "-"
        row = [str(a), _num(res.value.real), _num(res.value.imag), shells,
               str(res.certified_stable).lower()]
        if args.with_oracle:
            b = transfer_bounds(phi.phi, a)
            o, cert = transfer_oracle(phi, a, b["shell_lo"], b["shell_hi"], b["coset_depth"])
            delta = abs(o - res.value)
            worst = max(worst, delta)
            row.append(_num(delta) + ("" if cert else " (uncertified)"))
        rows.append(row)
    _emit_rows(header, rows, cfg.output_format, out)
    return 0 if worst < 1e-9 else 1


# count -------------------------------------------------------------------------------

def cmd_count(cfg: RunConfig, args, out, err) -> int:
    q = cfg.p_or_q or 2
    try:
        vols = qsymbolic.group_orders_volumes(q)
    except ValueError as e:
        raise UsageError(str(e)) from e
    report = {"q": q, "order_F4": vols.order_f4, "order_Spin9": vols.order_spin9,
              "order_ratio": vols.ratio, "vol_K": str(vols.vol_k), "vol_X": str(vols.vol_x)}
    ok = True
    try:
        GF(q)
        if q != 2:
            raise UnsupportedOperation(f"enumeration over GF({q}) is infeasible")
        census = rank_census()
        report["rank_strata"] = {f"rank{r}_trace{t}": census[(r, t)]
                                 for r in range(4) for t in range(2)}
        trace1 = census[(1, 1)]
        report["rank1_trace1"] = trace1
        report["ratio_match"] = trace1 == vols.ratio
        ok = report["ratio_match"]
    except (UnsupportedOperation, ValueError) as e:
        report["enumeration"] = f"refused: {e}; formula-only report"
    if cfg.output_format == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        for k, v in report.items():
            if isinstance(v, dict):
                for k2, v2 in v.items():
                    out.write(f"{k}.{k2}\t{v2}\n")
            else:
                out.write(f"{k}\t{str(v).lower() if isinstance(v, bool) else v}\n")
    return 0 if ok else 1


# unramified / spherical -----------------------------------------------------------------

def _spherical_rows(n: int, q: int):
    table = qsymbolic.SphericalTable.build(q, n)
    bad = table.recursion_failures()
    rows = [(k, table.values[k], "ok" if k not in bad else "FAIL") for k in sorted(table.values)]
    return rows, not bad


def cmd_unramified(cfg: RunConfig, args, out, err) -> int:
    report = qsymbolic.unramified_report()
    ok = report["identity_holds"]
    if args.spot_check:
        kv = _kv(args.spot_check)
        try:
            q, t = Fraction(kv.get("q", "9")), float(Fraction(kv.get("t", "1/2")))
        except (ValueError, ZeroDivisionError) as e:
            raise UsageError(f"bad --spot-check: {e}") from e
        sc = qsymbolic.spot_check(q, t)
        report["spot_check"] = {conv: {k: (_num(v) if not isinstance(v, bool) else v)
                                       for k, v in d.items()} for conv, d in sc.items()}
    if args.spherical:
        kv = _kv(args.spherical)
        rows, good = _spherical_rows(int(kv.get("n", 20)), int(kv.get("q", 3)))
        report["spherical"] = {"rows": [[k, str(v), s] for k, v, s in rows],
                               "recursion_holds": good}
        ok = ok and good
    out.write(json.dumps(report, indent=2) + "\n")
    return 0 if ok else 1


def cmd_spherical(cfg: RunConfig, args, out, err) -> int:
    kv = _kv(args.spherical) if args.spherical else {}
    n = int(kv.get("n", args.n))
    q = int(kv.get("q", cfg.p_or_q or 3))
    if n < 0 or q < 2:
        raise UsageError("need n >= 0 and q >= 2")
    rows, good = _spherical_rows(n, q)
    _emit_rows(("n", "value", "recursion"), rows, cfg.output_format, out)
    return 0 if good else 1


COMMANDS = {"verify": cmd_verify, "transfer": cmd_transfer, "count": cmd_count,
            "unramified": cmd_unramified, "spherical": cmd_spherical}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="residue characteristic")
    common.add_argument("--q", type=int, help="residue field size")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--iterations", type=int, default=1000)
    common.add_argument("--input", help="input JSON path")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("--with-oracle", action="store_true",
                        help="cross-check transfer values against the brute-force oracle")
    common.add_argument("--spot-check", metavar="'q=9 t=1/2'")
    common.add_argument("--spherical", metavar="'n=20 q=3'")

    parser = argparse.ArgumentParser(prog="f4transfer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="randomized identity batteries")
    v.add_argument("--only", help="comma-separated check names or groups")
    v.add_argument("--mutate", choices=sorted(checks.MUTATIONS),
                   help="run against a deliberately corrupted form")
    t = sub.add_parser("transfer", parents=[common], help="evaluate the transfer map")
    t.add_argument("points", nargs="*", help="evaluation points a (rational strings)")
    sub.add_parser("count", parents=[common], help="rank strata over GF(2) and volumes")
    sub.add_parser("unramified", parents=[common], help="unramified identity report")
    s = sub.add_parser("spherical", parents=[common], help="spherical vector table")
    s.add_argument("--n", type=int, default=20)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    cfg = RunConfig(args.command, args.q if args.q is not None else args.p, args.input,
                    args.format, args.seed, args.iterations)
    try:
        return COMMANDS[args.command](cfg, args, out, err)
    except UsageError as e:
        err.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
