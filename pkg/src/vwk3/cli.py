"""Command-line front end: tabulate, expand, verify, export.

Subcommands
  hilb      Hilbert-scheme Euler characteristics as CSV
  gauss     one lattice Gauss sum, exact value as JSON (plus integer form)
  zfun      any partition function as a pretty table, JSON, or CSV
  verify    main-identity: assembled vs closed form, with coefficient diff
  modcheck  numeric S-rule grid and S-duality prefactor reports

Exit codes: 0 success / verification pass, 1 verification failure,
2 usage error.  Output is deterministic for fixed inputs.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from .eta_hilb import hilb_euler_table
from .lattice_gauss import _PROVIDER_MODES, GaussSumProvider, gauss_sum
from .modular_numeric import check_sduality_prefactor, s_rules_report
from .numth import is_prime
from .vw_partitions import (
    verify_main_identity,
    z_ess,
    z_opt,
    z_opt_prime,
    z_opt_twisted,
    z_prime_assembled,
    z_prime_closed,
    z_total_rho,
    z_trivial,
)

FORMATS = ("pretty", "json", "csv")


class RunConfig:
    """One parsed invocation: command, precision, format, provider, output."""

    __slots__ = ("command", "precision", "fmt", "provider", "output", "params")

    def __init__(self, command, precision=None, fmt="pretty", provider="lattice-computed", output=None, params=None):
        if fmt not in FORMATS:
            raise ValueError("format must be one of %s" % (FORMATS,))
        if provider not in _PROVIDER_MODES:
            raise ValueError("unknown provider %r" % (provider,))
        if precision is not None:
            precision = Fraction(precision)
            if precision < 1:
                raise ValueError("precision must be at least 1")
        self.command = command
        self.precision = precision
        self.fmt = fmt
        self.provider = _PROVIDER_MODES[provider]
        self.output = output
        self.params = dict(params or {})


def _coeff_str(c):
    """Compact comma-free rendering of an exact coefficient."""
    if c.is_rational():
        return str(c.as_rational())
    parts = []
    for k, v in enumerate(c.coeffs):
        if v:
            parts.append("%s*z%d^%d" % (v, c.level, k))
    return "+".join(parts).replace("+-", "-")


def _series_text(series, fmt):
    if fmt == "json":
        return json.dumps(series.to_json())
    rows = [(str(x), _coeff_str(c)) for x, c in sorted(series.terms.items())]
    if fmt == "csv":
        return "\n".join(["exp,coeff"] + ["%s,%s" % row for row in rows])
    head = "den=%d prec=%s" % (series.den, series.prec)
    return "\n".join([head] + ["q^%s: %s" % row for row in rows])


def _default_prec(rank):
    env = os.environ.get("VWD_PREC_DEFAULT")
    if env:
        return Fraction(env)
    return Fraction(rank + 5)


def _parse_tau(text):
    t = text.strip().replace(" ", "").replace("I", "i").replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise ValueError("cannot parse tau %r; expected a+bi" % text) from None


def _ctext(z):
    return repr(complex(z))


def _run_hilb(config):
    if config.params["max"] < 0:
        raise ValueError("--max must be non-negative")
    table = hilb_euler_table(config.params["max"])
    lines = ["n,chi"] + ["%d,%d" % (n, table[n]) for n in range(len(table))]
    return 0, "\n".join(lines)


def _run_gauss(config):
    val = gauss_sum(
        config.params["order"],
        config.params["twist"],
        "exact" if config.params["exact"] else "all",
    )
    lines = [json.dumps(val.to_json())]
    if val.is_rational():
        lines.append(str(val.as_rational()))
    return 0, "\n".join(lines)


def _run_zfun(config):
    p = config.params
    rank = p["rank"]
    prec = config.precision if config.precision is not None else _default_prec(rank)
    kind = p["kind"]
    if kind == "trivial":
        series = z_trivial(rank, prec)
    elif kind == "ess":
        if p["ess_order"] is None:
            raise ValueError("--ess-order is required for kind ess")
        series = z_ess(rank, p["ess_order"], prec)
    elif kind == "opt":
        if p["order"] is None:
            raise ValueError("--order is required for kind opt")
        series = z_opt(rank, p["order"], prec)
    elif kind == "opt-twisted":
        if p["order"] is None:
            raise ValueError("--order is required for kind opt-twisted")
        series = z_opt_twisted(rank, p["order"], p["twist"], prec)
    elif kind == "opt-prime":
        if p["order"] is None:
            raise ValueError("--order is required for kind opt-prime")
        series = z_opt_prime(rank, p["order"], p["twist"], prec)
    elif kind == "zprime-closed":
        series = z_prime_closed(rank, prec)
    elif kind == "zprime-assembled":
        series = z_prime_assembled(rank, prec, GaussSumProvider(config.provider))
    elif kind == "ztotal":
        if p["rho"] is None:
            raise ValueError("--rho is required for kind ztotal")
        series = z_total_rho(rank, p["rho"], prec)
    else:
        raise ValueError("unknown kind %r" % kind)
    return 0, _series_text(series, config.fmt)


def _run_verify(config):
    rank = config.params["rank"]
    prec = config.precision if config.precision is not None else _default_prec(rank)
    report = verify_main_identity(rank, prec, GaussSumProvider(config.provider))
    tag = "main-identity rank=%d prec=%s provider=%s" % (rank, prec, config.provider)
    if report["equal"]:
        return 0, "PASS %s" % tag
    lines = ["MISMATCH %s diffs=%d" % (tag, len(report["diff"]))]
    for x, a, b in report["diff"]:
        lines.append(
            json.dumps({"exp": str(x), "assembled": a.to_json(), "closed": b.to_json()})
        )
    code = 1 if (is_prime(rank) or config.params["strict"]) else 0
    return code, "\n".join(lines)


def _run_modcheck(config):
    p = config.params
    rank = p["rank"]
    tol = p["tol"]
    taus = [_parse_tau(p["tau"])] if p.get("tau") else None
    if p["what"] == "s-rules":
        records = s_rules_report(rank, tol, taus)
        lines = []
        ok = True
        for rec in records:
            ok = ok and rec["pass"]
            lines.append(
                json.dumps(
                    {
                        "rule": rec["rule"],
                        "e": rec["e"],
                        "m": rec["m"],
                        "tau": _ctext(rec["tau"]),
                        "lhs": _ctext(rec["lhs"]),
                        "rhs": _ctext(rec["rhs"]),
                        "rel_err": rec["rel_err"],
                        "pass": rec["pass"],
                    }
                )
            )
        return (0 if ok else 1), "\n".join(lines)
    report = check_sduality_prefactor(rank, tol, taus)
    doc = {
        "rank": report["rank"],
        "sign": report["sign"],
        "r_exponent": report["r_exponent"],
        "tau_exponent": report["tau_exponent"],
        "resolution_residual": report["resolution_residual"],
        "samples": [
            {
                "tau": _ctext(s["tau"]),
                "rel_err": s["rel_err"],
                "nominal_rel_err": s["nominal_rel_err"],
                "pass": s["pass"],
            }
            for s in report["samples"]
        ],
        "pass": report["pass"],
    }
    return (0 if report["pass"] else 1), json.dumps(doc)


_RUNNERS = {
    "hilb": _run_hilb,
    "gauss": _run_gauss,
    "zfun": _run_zfun,
    "verify": _run_verify,
    "modcheck": _run_modcheck,
}


def run(config):
    code, text = _RUNNERS[config.command](config)
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def _build_parser():
    parser = argparse.ArgumentParser(prog="vwk3", description=__doc__.splitlines()[0])
    parser.add_argument("-o", "--output", help="write output to a file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hilb", help="Euler characteristics of Hilb^n(K3) as CSV")
    p.add_argument("--max", type=int, required=True, help="largest n")

    p = sub.add_parser("gauss", help="one lattice Gauss sum")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--twist", type=int, default=0)
    p.add_argument("--exact", action="store_true", help="restrict to elements of exact order")

    p = sub.add_parser("zfun", help="expand a partition function")
    p.add_argument(
        "--kind",
        required=True,
        choices=[
            "trivial",
            "ess",
            "opt",
            "opt-twisted",
            "opt-prime",
            "zprime-closed",
            "zprime-assembled",
            "ztotal",
        ],
    )
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--order", type=int)
    p.add_argument("--ess-order", type=int)
    p.add_argument("--twist", type=int, default=0)
    p.add_argument("--rho", type=int)
    p.add_argument("--prec", help="rational precision bound (default: rank+5 or VWD_PREC_DEFAULT)")
    p.add_argument("--provider", default="lattice", choices=sorted(_PROVIDER_MODES))
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")

    p = sub.add_parser("verify", help="machine verification with coefficient diffs")
    p.add_argument("what", choices=["main-identity"])
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--prec")
    p.add_argument("--provider", default="lattice", choices=sorted(_PROVIDER_MODES))
    p.add_argument("--strict", action="store_true", help="fail on any mismatch, composite ranks included")

    p = sub.add_parser("modcheck", help="numeric modular checks")
    p.add_argument("what", choices=["s-rules", "s-duality"])
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--tau", help="sample point a+bi (default: built-in sample set)")

    return parser


def _config_from_ns(ns):
    fmt = "pretty"
    if getattr(ns, "json", False):
        fmt = "json"
    elif getattr(ns, "csv", False):
        fmt = "csv"
    params = {}
    if ns.command == "hilb":
        params["max"] = ns.max
    elif ns.command == "gauss":
        params = {"order": ns.order, "twist": ns.twist, "exact": ns.exact}
    elif ns.command == "zfun":
        params = {
            "kind": ns.kind,
            "rank": ns.rank,
            "order": ns.order,
            "ess_order": ns.ess_order,
            "twist": ns.twist,
            "rho": ns.rho,
        }
    elif ns.command == "verify":
        params = {"rank": ns.rank, "strict": ns.strict, "what": ns.what}
    elif ns.command == "modcheck":
        params = {"rank": ns.rank, "tol": ns.tol, "tau": ns.tau, "what": ns.what}
    return RunConfig(
        command=ns.command,
        precision=getattr(ns, "prec", None),
        fmt=fmt,
        provider=getattr(ns, "provider", "lattice"),
        output=ns.output,
        params=params,
    )


def main(argv=None):
    ns = _build_parser().parse_args(argv)
    try:
        config = _config_from_ns(ns)
        return run(config)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
