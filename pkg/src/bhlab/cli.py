"""Command-line frontend: flag parsing, suite orchestration, deterministic
JSON/CSV emission.

Exit codes: 0 when values were emitted or every check passed, 1 when at
least one check failed, 2 on usage or configuration errors.

Emission is byte-identical for identical inputs: no timestamps, fixed key
order, fixed float formats, results sorted by (check, params).  Wall-clock
timings are measured per check and kept on the in-memory reports, but are
deliberately excluded from the emitted bytes.  Numeric payload values are
serialized as strings (exact rationals as "num/den", p-adic residues as
"r mod p^M") so downstream consumers never round them through floats.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .kl import kl_coset_moment, kl_measure, mazur_measure, verify_KL_interpolation
from .measures import amice_of_measure, periods_from_series
from .oracle import (
    verify_cm_addition,
    verify_cm_period,
    verify_gk_poisson,
    verify_lambda_ratio,
    verify_qexp_identity,
    verify_z_interpolation,
)
from .padic import DomainError, PrimeContext
from .qexp import (
    FamilyParams,
    check_level_zero_gk,
    check_sigma_distribution,
    check_weight_congruence,
    delta_p_series,
    eisenstein_g,
    g0n_series,
    hasse_unit_series,
    p_stabilize,
    phi_series,
    psi_series,
    qseries_congruent,
    sigma_coeff,
    sigma_family_table,
)
from .report import CheckReport, _jsonable
from .zeta import (
    check_exceptional,
    check_interpolation,
    check_limit,
    check_regularity,
    check_residue,
    check_zeta_interpolates,
    zeta_eval,
)

__all__ = ["RunConfig", "Report", "run_command", "main"]

GK_POISSON_TAUS = (0.31 + 1.07j, -0.22 + 1.31j)


class UsageError(Exception):
    """Bad flags or inadmissible configuration; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation.

    n, k, a and tol stay None when not given; suites expand an absent
    n or k into their canonical ranges, while single-value commands
    fall back to the smallest sensible choice or reject the omission.
    """

    command: str
    sub: str | None
    p: int = 5
    prec: int = 8
    qprec: int = 60
    c: int = 2
    N: int = 3
    n: int | None = None
    k: int | None = None
    a: int | None = None
    out: str = "json"
    tol: float | None = None

    def validate(self) -> None:
        if self.p < 2 or self.prec < 1 or self.qprec < 0:
            raise UsageError("need p >= 2, --prec >= 1, --qprec >= 0")
        if self.n is not None and self.n < 0:
            raise UsageError("--n must be >= 0")
        if self.k is not None and self.k < 0:
            raise UsageError("--k must be >= 0")
        # surfaces non-prime p and inadmissible (c, N) before dispatch
        PrimeContext(self.p, self.prec)
        FamilyParams(self.p, self.c, self.N)

    @property
    def fam(self) -> FamilyParams:
        return FamilyParams(self.p, self.c, self.N)

    @property
    def ctx(self) -> PrimeContext:
        return PrimeContext(self.p, self.prec)

    def label(self) -> str:
        return self.command if self.sub is None else f"{self.command} {self.sub}"

    def to_json(self) -> dict:
        return {
            "p": self.p, "prec": self.prec, "qprec": self.qprec,
            "c": self.c, "N": self.N, "n": self.n, "k": self.k, "a": self.a,
            "tol": self.tol,
        }


@dataclass(frozen=True)
class Report:
    """CLI-level check outcome.

    elapsed is wall-clock seconds for the one check; it never reaches the
    emitted bytes (determinism outranks it) but is available to callers.
    """

    check: str
    params: dict
    status: str
    modulus: str
    detail: dict
    witness: dict | None
    elapsed: float

    @classmethod
    def from_check(cls, rep: CheckReport, elapsed: float) -> "Report":
        return cls(check=rep.check, params=rep.params,
                   status="pass" if rep.passed else "fail",
                   modulus=str(rep.modulus), detail=rep.detail,
                   witness=rep.witness, elapsed=elapsed)

    def to_json(self) -> dict:
        out = {"check": self.check, "params": _jsonable(self.params),
               "status": self.status, "modulus": self.modulus}
        for key in ("lhs", "rhs", "rel_error", "tolerance"):
            if key in self.detail:
                out[key] = _jsonable(self.detail[key])
        rest = {k: v for k, v in self.detail.items()
                if k not in ("lhs", "rhs", "rel_error", "tolerance")}
        if rest:
            out["detail"] = _jsonable(rest)
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


def _timed(fn, *args, **kwargs) -> Report:
    t0 = time.monotonic()
    rep = fn(*args, **kwargs)
    return Report.from_check(rep, time.monotonic() - t0)


# ---------------------------------------------------------------------------
# formatting helpers
# ---------------------------------------------------------------------------


def _fmt_exact(v) -> str:
    f = Fraction(v)
    return f"{f.numerator}/{f.denominator}" if f.denominator != 1 \
        else str(f.numerator)


def _modulus_label(p: int, modulus: int) -> str:
    e, m = 0, modulus
    while m % p == 0 and m > 1:
        m //= p
        e += 1
    return f"{p}^{e}" if m == 1 else str(modulus)


def _series_payload(series, p: int) -> dict:
    if series.modulus is None:
        coeffs = [_fmt_exact(c) for c in series.coeffs]
        modulus = "exact"
    else:
        coeffs = [str(int(c) % series.modulus) for c in series.coeffs]
        modulus = _modulus_label(p, series.modulus)
    return {"denom": series.denom, "modulus": modulus, "coefficients": coeffs}


# ---------------------------------------------------------------------------
# value commands
# ---------------------------------------------------------------------------


def _run_sigma(cfg: RunConfig) -> dict:
    n = cfg.n if cfg.n is not None else 1
    k = cfg.k if cfg.k is not None else 0
    q = cfg.p ** n
    labels = [cfg.a % q] if cfg.a is not None else list(range(q))
    rows = []
    for a in labels:
        for m in range(cfg.qprec + 1):
            rows.append({"a": a, "m": m,
                         "value": _fmt_exact(sigma_coeff(cfg.fam, a, n, k, m))})
    return {"level": n, "weight_index": k, "rows": rows}


def _run_qexp(cfg: RunConfig) -> dict:
    fam, p = cfg.fam, cfg.p
    order = cfg.qprec
    if cfg.sub in ("phi", "psi"):
        n = cfg.n if cfg.n is not None else 1
        k = cfg.k if cfg.k is not None else 0
        a = cfg.a if cfg.a is not None else 1
        fn = phi_series if cfg.sub == "phi" else psi_series
        return _series_payload(fn(fam, a, n, k, order), p)
    if cfg.sub in ("gk", "gkstar"):
        if cfg.k is None:
            raise UsageError(f"qexp {cfg.sub} needs --k (the weight)")
        series = eisenstein_g(cfg.k, order)
        if cfg.sub == "gkstar":
            series = p_stabilize(series, p, cfg.k)
        return _series_payload(series, p)
    if cfg.sub == "delta-p":
        return _series_payload(delta_p_series(p, order), p)
    if cfg.sub == "g0n":
        ctx = cfg.ctx
        series = g0n_series(ctx, order, route="divisor")
        if qseries_congruent(series, g0n_series(ctx, order, route="log"),
                             p, ctx.M) is not None:
            raise ArithmeticError("log-series routes disagree")
        payload = _series_payload(series, p)
        payload["self_check"] = "divisor and log routes agree"
        return payload
    if cfg.sub == "an":
        n = cfg.n if cfg.n is not None else 1
        return _series_payload(hasse_unit_series(PrimeContext(p, max(n, 1)),
                                                 n, order), p)
    raise UsageError(f"unknown qexp subcommand {cfg.sub!r}")


def _run_measure(cfg: RunConfig) -> dict:
    ctx = cfg.ctx
    n = cfg.n if cfg.n is not None else 1
    if cfg.sub == "kl":
        table = kl_measure(ctx, cfg.c, cfg.N).table(n)
        return {"level": n, "values": [_fmt_exact(v) for v in table]}
    if cfg.sub == "mazur":
        table = mazur_measure(ctx, cfg.N).table(n)
        return {"level": n, "values": [_fmt_exact(v) for v in table]}
    if cfg.sub == "amice":
        series = amice_of_measure(kl_measure(ctx, cfg.c, cfg.N), cfg.qprec,
                                  precision=ctx.M)
        return {"modulus": f"{ctx.p}^{series.precision}",
                "coefficients": [str(c) for c in series.coeffs]}
    if cfg.sub == "periods":
        # roundtrip through the Amice transform needs phi(p^n) * M terms
        degree = ctx.p ** max(n - 1, 0) * (ctx.p - 1) if n else 1
        order = max(cfg.qprec, degree * ctx.M - 1)
        series = amice_of_measure(kl_measure(ctx, cfg.c, cfg.N), order,
                                  precision=ctx.M)
        vals = [repr(periods_from_series(series, a, n))
                for a in range(ctx.p ** n)]
        return {"level": n, "values": vals}
    raise UsageError(f"unknown measure subcommand {cfg.sub!r}")


def _run_moment(cfg: RunConfig) -> dict:
    n = cfg.n if cfg.n is not None else 1
    k = cfg.k if cfg.k is not None else 0
    q = cfg.p ** n
    labels = [cfg.a % q] if cfg.a is not None else list(range(q))
    values = [_fmt_exact(kl_coset_moment(cfg.p, cfg.c, cfg.N, a, n, k))
              for a in labels]
    return {"level": n, "weight_index": k, "labels": labels, "values": values}


def _run_zeta_eval(cfg: RunConfig) -> dict:
    n = cfg.n if cfg.n is not None else 2
    k = cfg.k if cfg.k is not None else 0
    if k == 1:
        raise UsageError("k = 1 is the exceptional weight; "
                         "use `verify exceptional`")
    val = zeta_eval(cfg.fam, -k, k + 1, n, cfg.qprec)
    payload = _series_payload(val.value, cfg.p)
    payload.update({"s": str(-k), "character_exponent": (k + 1) % (cfg.p - 1),
                    "p_scale": val.p_scale, "pole_order": val.pole_order})
    return payload


# ---------------------------------------------------------------------------
# check suites
# ---------------------------------------------------------------------------


def _choices(explicit: int | None, default: list[int]) -> list[int]:
    return [explicit] if explicit is not None else default


def _run_verify(cfg: RunConfig) -> list[Report]:
    fam = cfg.fam
    order = cfg.qprec
    out: list[Report] = []
    if cfg.sub == "kl-interpolation":
        n = cfg.n if cfg.n is not None else 6
        ctx = PrimeContext(cfg.p, max(cfg.prec, n))
        mu = kl_measure(ctx, cfg.c, cfg.N)
        for k in _choices(cfg.k, [0, 1, 2, 3, 5, 7]):
            out.append(_timed(verify_KL_interpolation, ctx, cfg.c, cfg.N,
                              k, n, mu))
    elif cfg.sub == "weight-congruence":
        for n in _choices(cfg.n, [1, 2, 3]):
            table0 = sigma_family_table(fam, n, 0, order)
            for k in _choices(cfg.k, list(range(9))):
                out.append(_timed(check_weight_congruence, fam, n, k, order,
                                  table0=table0))
    elif cfg.sub == "distribution":
        for t in _choices(cfg.n, [1, 2]):
            for k in _choices(cfg.k, list(range(5))):
                out.append(_timed(check_sigma_distribution, fam, t, k, order))
    elif cfg.sub == "level-zero":
        for k in _choices(cfg.k, list(range(9))):
            out.append(_timed(check_level_zero_gk, fam, k, order))
    elif cfg.sub == "interpolation":
        for n in _choices(cfg.n, [1, 2, 3]):
            for k in _choices(cfg.k, [0, 2, 3, 4, 5, 6]):
                out.append(_timed(check_interpolation, fam, k, n, order))
            if cfg.k is None:
                out.append(_timed(check_regularity, fam, n, order))
                out.append(_timed(check_zeta_interpolates, fam, 2, n, order))
    elif cfg.sub == "exceptional":
        for n in _choices(cfg.n, [2, 3]):
            out.append(_timed(check_exceptional, fam, n, order))
    elif cfg.sub == "residue":
        for n in _choices(cfg.n, [1, 2, 3, 4]):
            out.append(_timed(check_residue, fam, n, order))
    elif cfg.sub == "limit":
        for n in _choices(cfg.n, [2, 3]):
            out.append(_timed(check_limit, fam, n, order))
    else:
        raise UsageError(f"unknown verify subcommand {cfg.sub!r}")
    return out


def _run_oracle(cfg: RunConfig) -> list[Report]:
    out: list[Report] = []
    if cfg.sub == "z-interp":
        out.append(_timed(verify_z_interpolation, c=cfg.c, N=cfg.N,
                          tol=cfg.tol if cfg.tol is not None else 1e-8))
    elif cfg.sub == "lambda-ratio":
        out.append(_timed(verify_lambda_ratio, c=cfg.c, N=cfg.N,
                          tol=cfg.tol if cfg.tol is not None else 1e-7))
    elif cfg.sub == "qexp":
        for k in _choices(cfg.k, [0, 2]):
            out.append(_timed(
                verify_qexp_identity, n=cfg.n if cfg.n is not None else 1,
                k=k, M_q=cfg.qprec, fam=cfg.fam,
                tol=cfg.tol if cfg.tol is not None else 1e-6))
    elif cfg.sub in ("cm-period", "cm-addition"):
        if cfg.p != 5:
            raise UsageError("the split-prime configuration is pinned to "
                             "p = 5; drop --p or pass --p 5")
        tol = cfg.tol if cfg.tol is not None else 1e-6
        if cfg.sub == "cm-period":
            out.append(_timed(verify_cm_period, n=1, M_q=cfg.qprec,
                              fam=cfg.fam, tol=tol))
        else:
            for k in _choices(cfg.k, [0, 3]):
                out.append(_timed(verify_cm_addition, n=1, k=k, fam=cfg.fam,
                                  tol=tol))
    elif cfg.sub == "gk-poisson":
        for tau in GK_POISSON_TAUS:
            for k in _choices(cfg.k, [3, 5, 7]):
                out.append(_timed(
                    verify_gk_poisson, tau=tau, k=k, M_q=max(cfg.qprec, 20),
                    tol=cfg.tol if cfg.tol is not None else 1e-6))
    else:
        raise UsageError(f"unknown oracle subcommand {cfg.sub!r}")
    return out


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------


def _emit_json(cfg: RunConfig, payload: dict) -> str:
    doc = {"command": cfg.label(), "config": _jsonable(cfg.to_json())}
    doc.update(payload)
    return json.dumps(doc, indent=2) + "\n"


def _csv_rows(payload: dict) -> tuple[list[str], list[list[str]]]:
    if "results" in payload:
        header = ["check", "params", "status", "modulus", "rel_error"]
        rows = []
        for rep in payload["results"]:
            rows.append([rep["check"],
                         json.dumps(rep["params"], separators=(",", ":")),
                         rep["status"], str(rep["modulus"]),
                         str(rep.get("rel_error", ""))])
        return header, rows
    if "rows" in payload:
        header = ["a", "m", "value"]
        return header, [[str(r["a"]), str(r["m"]), r["value"]]
                        for r in payload["rows"]]
    if "coefficients" in payload:
        denom = payload.get("denom", 1)
        header = ["exponent", "value", "modulus"]
        mod = payload.get("modulus", "exact")
        rows = [[f"{m}/{denom}" if denom != 1 else str(m), v, str(mod)]
                for m, v in enumerate(payload["coefficients"])]
        return header, rows
    if "values" in payload:
        labels = payload.get("labels", range(len(payload["values"])))
        return ["a", "value"], [[str(a), v] for a, v in
                                zip(labels, payload["values"])]
    raise ValueError("payload has no tabular form")


def _emit_csv(payload: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header, rows = _csv_rows(payload)
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(cfg: RunConfig, payload: dict) -> str:
    if cfg.out == "csv":
        return _emit_csv(payload)
    return _emit_json(cfg, payload)


# ---------------------------------------------------------------------------
# argv handling
# ---------------------------------------------------------------------------

_SUBCOMMANDS = {
    "sigma": None,
    "qexp": ["phi", "psi", "gk", "gkstar", "delta-p", "g0n", "an"],
    "measure": ["kl", "mazur", "amice", "periods"],
    "moment": None,
    "zeta": ["eval", "interpolate"],
    "verify": ["kl-interpolation", "weight-congruence", "distribution",
               "level-zero", "interpolation", "exceptional", "residue",
               "limit"],
    "oracle": ["z-interp", "lambda-ratio", "qexp", "cm-period",
               "cm-addition", "gk-poisson"],
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="bhlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command")
    for name, subnames in _SUBCOMMANDS.items():
        p = sub.add_parser(name)
        if subnames:
            p.add_argument("sub", choices=subnames, metavar="subcommand")
        p.add_argument("--p", type=int, default=None)
        p.add_argument("--prec", type=int, default=None,
                       help="p-adic working precision M")
        p.add_argument("--qprec", type=int, default=None,
                       help="q-series truncation order")
        p.add_argument("--c", type=int, default=None)
        p.add_argument("--N", type=int, default=None)
        p.add_argument("--n", type=int, default=None, help="level exponent")
        p.add_argument("--k", type=int, default=None, help="weight index")
        p.add_argument("--a", type=int, default=None, help="coset label")
        p.add_argument("--out", choices=["json", "csv"], default=None)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--config", default=None,
                       help="JSON file with flag defaults; flags win")
    return parser


_CONFIG_KEYS = ("p", "prec", "qprec", "c", "N", "n", "k", "a", "out", "tol")
_DEFAULTS = {"p": 5, "prec": 8, "qprec": 60, "c": 2, "N": 3, "out": "json"}


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    file_values: dict = {}
    if args.config is not None:
        try:
            with open(args.config) as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file: {exc}")
        unknown = set(file_values) - set(_CONFIG_KEYS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
    resolved = {}
    for key in _CONFIG_KEYS:
        flag = getattr(args, key)
        if flag is not None:
            resolved[key] = flag
        elif key in file_values:
            resolved[key] = file_values[key]
        elif key in _DEFAULTS:
            resolved[key] = _DEFAULTS[key]
        else:
            resolved[key] = None
    return RunConfig(command=args.command, sub=getattr(args, "sub", None),
                     **resolved)


def _dispatch(cfg: RunConfig) -> tuple[dict, int]:
    """Payload dict plus exit code."""
    if cfg.command == "sigma":
        return _run_sigma(cfg), 0
    if cfg.command == "qexp":
        return _run_qexp(cfg), 0
    if cfg.command == "measure":
        return _run_measure(cfg), 0
    if cfg.command == "moment":
        return _run_moment(cfg), 0
    if cfg.command == "zeta" and cfg.sub == "eval":
        return _run_zeta_eval(cfg), 0
    if cfg.command == "zeta" and cfg.sub == "interpolate":
        k = cfg.k if cfg.k is not None else 0
        n = cfg.n if cfg.n is not None else 2
        reports = [_timed(check_zeta_interpolates, cfg.fam, k, n, cfg.qprec)]
    elif cfg.command == "verify":
        reports = _run_verify(cfg)
    elif cfg.command == "oracle":
        reports = _run_oracle(cfg)
    else:
        raise UsageError(f"unknown command {cfg.command!r}")
    reports.sort(key=lambda r: (r.check, json.dumps(_jsonable(r.params))))
    reports = [dataclasses.replace(r, modulus=_modulus_label(cfg.p, int(r.modulus)))
               if r.modulus.isdigit() else r for r in reports]
    all_pass = all(r.status == "pass" for r in reports)
    payload = {"status": "pass" if all_pass else "fail",
               "results": [r.to_json() for r in reports]}
    return payload, 0 if all_pass else 1


def run_command(argv: list[str], stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required (see --help)")
        cfg = _resolve_config(args)
        cfg.validate()
        payload, code = _dispatch(cfg)
    except UsageError as exc:
        print(f"bhlab: error: {exc}", file=stderr)
        return 2
    except DomainError as exc:
        print(f"bhlab: domain error: {exc}", file=stderr)
        return 2
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    stdout.write(_emit(cfg, payload))
    return code


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
