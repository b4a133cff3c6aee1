"""Command-line interface: ``unitary-moments <subcommand> [flags]``.

Exact values are printed as ``"num/den"`` strings; floating approximations
live in separate ``approx`` fields.  Exit codes: 0 success, 1 usage error,
2 domain error, 3 internal inconsistency, 4 capacity error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import haar, hypergeom, moments
from .algebra import RatFunc
from .errors import DomainError, MomentsError

log = logging.getLogger("unitary_moments")

SUBCOMMANDS = (
    "m-ratio",
    "m-ratio-limit",
    "ratfunc",
    "v-moment",
    "v-ratfunc",
    "moment-zero",
    "hypergeom",
    "egf-check",
    "mc-verify",
    "selftest",
)


class UsageError(MomentsError):
    exit_code = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def exact(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _ratfunc_fields(f: RatFunc) -> dict[str, Any]:
    return {
        "variable": f.var,
        "num": [exact(c) for c in f.num.coeffs],
        "den": [exact(c) for c in f.den.coeffs],
        "rendered": str(f),
    }


def _range(text: str, flag: str) -> range:
    try:
        lo, _, hi = text.partition(":")
        return range(int(lo), int(hi or lo) + 1)
    except ValueError:
        raise UsageError(f"{flag} expects LO:HI, got {text!r}") from None


def _rationals(text: str | None, flag: str) -> list[Fraction]:
    if not text:
        return []
    try:
        return [Fraction(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated rationals, got {text!r}") from None


def _threads(value: str | None) -> int:
    value = value or os.environ.get("UM_THREADS") or "1"
    if value == "auto":
        return os.cpu_count() or 1
    try:
        n = int(value)
    except ValueError:
        raise UsageError(f"--threads expects a positive integer or 'auto', got {value!r}") from None
    if n < 1:
        raise UsageError("--threads must be at least 1")
    return n


@dataclass
class RunConfig:
    subcommand: str
    k: int | None = None
    r: int | None = None
    h: int | None = None
    N: int | None = None
    r_max: int | None = None
    max_degree: int | None = None
    samples: int = 200_000
    seed: int = 0
    output_format: str = "json"
    threads: int = 1

    def validate(self) -> None:
        """Domain checks run before any required-flag check, so bad values are reported first."""
        for name in ("k", "N"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise DomainError(f"requires {name} >= 1, got {name}={v}")
        for name in ("r", "h", "r_max", "max_degree"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise DomainError(f"requires {name} >= 0, got {name}={v}")
        if self.k is not None:
            if self.r is not None and self.r > 2 * self.k:
                raise DomainError(f"requires r <= 2k, got r={self.r}, k={self.k}")
            if self.r_max is not None and self.r_max > 2 * self.k:
                raise DomainError(f"requires r_max <= 2k, got r_max={self.r_max}, k={self.k}")
            if self.h is not None and self.h > self.k:
                raise DomainError(f"requires h <= k, got h={self.h}, k={self.k}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("--seed must be a 64-bit unsigned integer")
        if self.samples < 1:
            raise DomainError("--samples must be positive")

    def need(self, *names: str) -> None:
        for name in names:
            if getattr(self, name) is None:
                raise UsageError(f"{self.subcommand} requires --{name.replace('_', '-')}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("json", "csv", "plain"), default="json")
    common.add_argument("--threads", default=None, help="worker threads or 'auto' (default: $UM_THREADS or 1)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="unitary-moments", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def add(name: str, help_: str, *flags: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_)
        for flag in flags:
            p.add_argument(f"--{flag}", type=int, default=None, dest=flag.replace("-", "_"))
        return p

    for name in ("m-ratio", "m-ratio-limit"):
        p = add(name, "i-normalized moment ratio", "k", "r", *(["N"] if name == "m-ratio" else []))
        p.add_argument("--k-range", default=None)
        p.add_argument("--r-range", default=None)
    add("ratfunc", "limiting M-ratio as a rational function of k", "r")
    add("v-moment", "finite-N V-moment", "k", "h", "N")
    add("v-ratfunc", "limiting V-ratio as a rational function of k", "h")
    add("moment-zero", "M_N(2k,0), or its limit when --N is omitted", "k", "N")
    p = add("hypergeom", "pFq at a scalar matrix z*Id_N", "N", "max-degree")
    p.add_argument("--upper", default="")
    p.add_argument("--lower", default="")
    p.add_argument("--z", default="1")
    add("egf-check", "EGF of M-ratios vs 1F1(-k;-2k;z Id_N)", "k", "N", "r-max")
    p = add("mc-verify", "Monte Carlo check of one exact moment", "k", "r", "h", "N", "samples")
    p.add_argument("--seed", type=int, default=0)
    add("selftest", "run the exact identity suites")
    return parser


def _emit(rows: list[dict[str, Any]], fmt: str, out, command: str, sweep: bool = False) -> None:
    if fmt == "json":
        payload = {"command": command, "rows": rows} if sweep else rows[0]
        out.write(json.dumps(payload, indent=None if sweep else 2) + "\n")
    elif fmt == "csv":
        fields: list[str] = []
        for row in rows:
            fields += [f for f in row if f not in fields]
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in row.items()})
    else:
        for i, row in enumerate(rows):
            if i:
                out.write("\n")
            for key, value in row.items():
                if isinstance(value, (list, dict)):
                    value = json.dumps(value)
                out.write(f"{key}: {value}\n")


def _value_row(command: str, rec: moments.MomentRecord, **extra: Any) -> dict[str, Any]:
    row: dict[str, Any] = {"command": command, "kind": rec.kind.value, "k": rec.k}
    row.update(extra)
    row["N"] = rec.N
    row["value"] = exact(rec.value)
    row["approx"] = float(rec.value)
    if rec.i_power is not None:
        row["i_power"] = rec.i_power
        row["convention"] = rec.convention
    return row


def _m_ratio(cfg: RunConfig, args) -> tuple[list[dict], bool]:
    kind = moments.MomentKind.M_RATIO_FINITE if cfg.subcommand == "m-ratio" else moments.MomentKind.M_RATIO_LIMIT
    finite = kind is moments.MomentKind.M_RATIO_FINITE
    if args.k_range or args.r_range:
        ks = _range(args.k_range, "--k-range") if args.k_range else [cfg.k]
        rs = _range(args.r_range, "--r-range") if args.r_range else [cfg.r]
        if None in ks:
            cfg.need("k")
        if None in rs:
            cfg.need("r")
        if finite:
            cfg.need("N")
        rows = [
            _value_row(cfg.subcommand, moments.record(kind, k, r, cfg.N), r=r)
            for k in ks
            for r in rs
            if k >= 1 and 0 <= r <= 2 * k
        ]
        return rows, True
    cfg.need("k", "r", *(["N"] if finite else []))
    return [_value_row(cfg.subcommand, moments.record(kind, cfg.k, cfg.r, cfg.N), r=cfg.r)], False


def _mc_verify(cfg: RunConfig) -> dict[str, Any]:
    cfg.need("k", "N")
    if (cfg.r is None) == (cfg.h is None):
        raise UsageError("mc-verify requires exactly one of --r or --h")
    if cfg.r is not None:
        target = moments.m_ratio_finite(cfg.k, cfg.r, cfg.N)
        est = haar.estimate_m_moment(cfg.k, cfg.r, cfg.N, cfg.samples, cfg.seed, cfg.threads)
        head = {"kind": moments.MomentKind.M_RATIO_FINITE.value, "k": cfg.k, "r": cfg.r}
    else:
        target = moments.v_moment_finite(cfg.k, cfg.h, cfg.N)
        est = haar.estimate_v_moment(cfg.k, cfg.h, cfg.N, cfg.samples, cfg.seed, cfg.threads)
        head = {"kind": moments.MomentKind.V_FINITE.value, "k": cfg.k, "h": cfg.h}
    if cfg.k >= 4:
        log.warning("k >= 4: heavy tails make Monte Carlo standard errors unreliable at small N")
    z = est.z_score(float(target))
    imag_ok = abs(est.mean_imag) <= 4 * est.std_error_imag
    return {
        "command": "mc-verify",
        **head,
        "N": cfg.N,
        "exact": exact(target),
        "exact_approx": float(target),
        "mean_real": est.mean_real,
        "mean_imag": est.mean_imag,
        "std_error": est.std_error,
        "std_error_imag": est.std_error_imag,
        "samples": est.samples,
        "seed": est.seed,
        "resampled": est.resampled,
        "z_score": z,
        "within_4se": est.agrees(float(target)) and imag_ok,
    }


def selftest_checks() -> list[tuple[str, Callable[[], bool]]]:
    """Small exact identity suites shared by ``selftest`` and the test suite."""
    from math import factorial

    from . import partitions as P
    from . import schur

    def plancherel() -> bool:
        return all(sum(P.plancherel_weight(l) for l in P.enumerate_partitions(n)) == 1 for n in range(16))

    def rsk() -> bool:
        return all(sum(P.dim_sym(l) ** 2 for l in P.enumerate_partitions(n)) == factorial(n) for n in range(10))

    def small_table() -> bool:
        return (
            all(moments.m_ratio_finite(k, 1, N) == Fraction(N, 2) for k in range(1, 4) for N in range(1, 6))
            and moments.m_ratio_finite(1, 2, 2) == Fraction(1, 3)
            and moments.m_ratio_limit(2, 2) == Fraction(7, 30)
        )

    def zeroth() -> bool:
        return all(moments.moment_zero_finite(k, N) > 0 for k in range(1, 5) for N in range(1, 5))

    def shifted() -> bool:
        for mu in P.partitions_up_to(5):
            for k in range(4):
                for N in range(4):
                    schur.shifted_schur_rect(mu, k, N)
        return True

    def binomial() -> bool:
        pt = [Fraction(1, 2), Fraction(-1, 3), Fraction(2), Fraction(0)]
        return all(schur.binomial_check(k, N, 4, pt) for k in (1, 2) for N in (1, 2))

    def ratfunc() -> bool:
        return all(
            moments.m_ratio_limit_ratfunc(r).is_even()
            and moments.m_ratio_limit_ratfunc(r).limit_at_infinity() == Fraction(1, 2**r)
            for r in range(8)
        )

    def egf() -> bool:
        return all(hypergeom.egf_check(k, N, 2 * k) for k in (1, 2) for N in (1, 2, 3))

    return [
        ("plancherel", plancherel),
        ("rsk", rsk),
        ("small-table", small_table),
        ("zeroth-moments", zeroth),
        ("shifted-schur", shifted),
        ("binomial-theorem", binomial),
        ("ratfunc-properties", ratfunc),
        ("egf-1F1", egf),
    ]


def _selftest() -> tuple[dict[str, Any], bool]:
    checks = []
    ok = True
    for name, fn in selftest_checks():
        t0 = time.perf_counter()
        try:
            passed = bool(fn())
        except MomentsError as exc:
            log.error("%s raised %s", name, exc)
            passed = False
        checks.append({"name": name, "passed": passed, "seconds": round(time.perf_counter() - t0, 3)})
        ok &= passed
    return {"command": "selftest", "passed": ok, "checks": checks}, ok


def run(cfg: RunConfig, args, out) -> int:
    cmd = cfg.subcommand
    sweep = False
    if cmd in ("m-ratio", "m-ratio-limit"):
        rows, sweep = _m_ratio(cfg, args)
    elif cmd == "ratfunc":
        cfg.need("r")
        rows = [{"command": cmd, "kind": "M_ratio_limit", "r": cfg.r, "convention": moments.I_NORMALIZED,
                 **_ratfunc_fields(moments.m_ratio_limit_ratfunc(cfg.r))}]
    elif cmd == "v-ratfunc":
        cfg.need("h")
        rows = [{"command": cmd, "kind": "V_ratio_limit", "h": cfg.h,
                 **_ratfunc_fields(moments.v_ratio_limit_ratfunc(cfg.h))}]
    elif cmd == "v-moment":
        cfg.need("k", "h", "N")
        rec = moments.record(moments.MomentKind.V_FINITE, cfg.k, 2 * cfg.h, cfg.N)
        rows = [_value_row(cmd, rec, h=cfg.h)]
    elif cmd == "moment-zero":
        cfg.need("k")
        kind = moments.MomentKind.M_ZERO_FINITE if cfg.N else moments.MomentKind.M_ZERO_LIMIT
        rows = [_value_row(cmd, moments.record(kind, cfg.k, 0, cfg.N))]
    elif cmd == "hypergeom":
        cfg.need("N", "max_degree")
        upper = _rationals(args.upper, "--upper")
        lower = _rationals(args.lower, "--lower")
        z = _rationals(args.z, "--z")
        if len(z) != 1:
            raise UsageError("--z expects a single rational")
        params = hypergeom.HyperParams(upper, lower, cfg.N, z[0], cfg.max_degree)
        value = hypergeom.hyper_pfq_scalar(params)
        rows = [{
            "command": cmd,
            "upper": [exact(a) for a in params.upper],
            "lower": [exact(b) for b in params.lower],
            "N": cfg.N,
            "z": exact(params.z),
            "max_degree": cfg.max_degree,
            "value": exact(value),
            "approx": float(value),
            "layers": [exact(c) for c in hypergeom.hyper_layers(params)],
        }]
    elif cmd == "egf-check":
        cfg.need("k", "N", "r_max")
        res = hypergeom.egf_check(cfg.k, cfg.N, cfg.r_max)
        rows = [{
            "command": cmd, "k": cfg.k, "N": cfg.N, "r_max": cfg.r_max, "passed": bool(res),
            "degrees": [
                {"r": r, "moment": exact(a), "hyper": exact(b), "equal": a == b, "residual": exact(a - b)}
                for r, (a, b) in enumerate(zip(res.moment_side, res.hyper_side))
            ],
        }]
        if not res:
            _emit(rows, cfg.output_format, out, cmd)
            return 3
    elif cmd == "mc-verify":
        rows = [_mc_verify(cfg)]
    else:
        row, ok = _selftest()
        _emit([row], cfg.output_format, out, cmd)
        return 0 if ok else 3
    _emit(rows, cfg.output_format, out, cmd, sweep)
    return 0


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    handler = logging.StreamHandler(err)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    log.addHandler(handler)
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:  # --help
            return int(exc.code or 0)
        log.setLevel(logging.DEBUG if args.verbose else logging.WARNING)
        cfg = RunConfig(
            subcommand=args.subcommand,
            **{
                name: getattr(args, name, None)
                for name in ("k", "r", "h", "N", "r_max", "max_degree")
            },
            samples=getattr(args, "samples", None) or 200_000,
            seed=getattr(args, "seed", 0),
            output_format=args.output_format,
            threads=_threads(args.threads),
        )
        cfg.validate()
        return run(cfg, args, out)
    except MomentsError as exc:
        err.write(f"error: {exc}\n")
        return exc.exit_code
    except ZeroDivisionError as exc:
        err.write(f"error: {exc}\n")
        return DomainError.exit_code
    finally:
        log.removeHandler(handler)


def main_capture(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run the CLI in-process and capture its output streams."""
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
