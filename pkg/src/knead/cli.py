"""knead: kneading invariants, Markov partitions and entropy from the command line.

Exit codes: 0 success, 2 numeric or pipeline failure, 3 family not
kneading-eligible, 4 an exact identity failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial

import numpy as np

from . import __version__
from .errors import IneligibleFamilyError, KneadError
from .interval_map import DEFAULT_TOL, TriangularMap
from .pipeline import (
    FAMILIES,
    MapSpec,
    compare_golden,
    entropy_report,
    homology_report,
    kneading_report,
    load_golden,
    markov_report,
    numeric_kneading,
    char_poly_checks,
)
from .symbols import KneadingData

EXIT_OK, EXIT_PIPELINE, EXIT_INELIGIBLE, EXIT_IDENTITY = 0, 2, 3, 4
SIG_DIGITS = 6
PRECISION_FLOOR = 1e-12

COMMANDS = ("itinerary", "kneading", "markov", "homology", "entropy", "verify", "sweep")


class IdentityFailure(Exception):
    def __init__(self, payload: dict, msg: str):
        super().__init__(msg)
        self.payload = payload


@dataclass
class RunConfig:
    command: str
    max_period: int = 64
    tol: float = DEFAULT_TOL
    precision: float = 1e-12
    fmt: str = "json"
    jobs: int = 1

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("--tol must be positive")
        if self.precision <= 0:
            raise ValueError("--precision must be positive")
        self.precision = max(self.precision, PRECISION_FLOOR)
        if self.max_period < 1:
            raise ValueError("--max-period must be >= 1")


# -- output -------------------------------------------------------------------

def _round(x):
    """Floats to 6 significant digits, recursively; everything else unchanged."""
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if not math.isfinite(x) or x == 0 else float(f"{x:.{SIG_DIGITS}g}")
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _flatten(d, prefix=""):
    if isinstance(d, dict):
        for k, v in d.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    else:
        yield prefix, d


def render(payload: dict, fmt: str, text: str | None = None) -> str:
    payload = _round(payload)
    if fmt == "json":
        return json.dumps({"schema": 1, **payload}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in _flatten(payload):
            w.writerow([k, json.dumps(v) if isinstance(v, (list, dict)) else ("" if v is None else v)])
        return buf.getvalue()
    if text is not None:
        return text + "\n"
    return "\n".join(f"{k}: {json.dumps(v)}" for k, v in _flatten(payload)) + "\n"


def _fmt_float(x) -> str:
    return "" if x is None else f"{float(x):.{SIG_DIGITS}g}"


# -- inputs -------------------------------------------------------------------

def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"--param expects k=v, got {item!r}")
        out[key.strip()] = float(value)
    return out


def _map_spec(args) -> MapSpec | None:
    if args.spec:
        spec = MapSpec.from_json(args.spec)
        if args.param:
            spec = MapSpec(spec.family, {**spec.params, **_parse_params(args.param)}, spec.breakpoints, spec.pieces)
        return spec
    if args.family:
        return MapSpec(args.family, _parse_params(args.param))
    return None


def _kneading_inputs(args, cfg: RunConfig) -> tuple[KneadingData, KneadingData | None, dict]:
    """Kneading data from symbol strings if given, else from the numeric pipeline."""
    if args.kneading_data is not None:
        data_x = KneadingData.parse(args.kneading_data)
        data_y = None if args.fiber_kneading_data is None else KneadingData.parse(args.fiber_kneading_data)
        return data_x, data_y, {"source": "symbolic"}
    spec = _map_spec(args)
    if spec is None:
        raise ValueError("give --family/--spec or --kneading-data")
    res = numeric_kneading(spec, cfg.max_period, cfg.tol)
    return res.data_x, res.data_y, {"source": "numeric", "family": spec.family, "params": spec.params,
                                    "orbits": res.to_dict()}


def _data_str(data: KneadingData | None) -> str | None:
    if data is None:
        return None
    return ",".join(data.strings())


# -- commands -----------------------------------------------------------------

def cmd_itinerary(args, cfg: RunConfig):
    spec = _map_spec(args)
    if spec is None:
        raise ValueError("itinerary needs --family or --spec")
    fmap = spec.build()
    if isinstance(fmap, TriangularMap) and not fmap.kneading_eligible:
        if args.kneading:
            raise IneligibleFamilyError(f"family {spec.family} is not kneading-eligible")
        pts = fmap.iterate(args.x0, args.y0, args.steps)
        payload = {"family": spec.family, "params": spec.params, "mode": "iterate",
                   "start": [args.x0, args.y0], "iterates": [list(p) for p in pts]}
        return payload, f"{spec.family}: {len(pts)} iterates from ({args.x0}, {args.y0})"
    res = numeric_kneading(spec, cfg.max_period, cfg.tol)
    payload = {"family": spec.family, "params": spec.params, **res.to_dict()}
    if res.triangular:
        fib = _data_str(res.data_y) or "monotone"
        per_y = ",".join(map(str, res.data_y.periods)) or "-"
        text = (f"basis {_data_str(res.data_x)} ({res.data_x.periods[0]}), fiber {fib} ({per_y}), "
                f"product period {payload['product_period']}")
    else:
        per = ",".join(map(str, res.data_x.periods))
        text = f"period {per}, {_data_str(res.data_x)}" if res.data_x.modality else "no turning point"
    return payload, text


def cmd_kneading(args, cfg: RunConfig):
    data_x, data_y, src = _kneading_inputs(args, cfg)
    return {"input": src, **kneading_report(data_x, data_y)}, None


def cmd_markov(args, cfg: RunConfig):
    data_x, data_y, src = _kneading_inputs(args, cfg)
    return {"input": src, **markov_report(data_x, data_y)}, None


def cmd_homology(args, cfg: RunConfig):
    data_x, data_y, src = _kneading_inputs(args, cfg)
    report, ok = homology_report(data_x, data_y, flip_gamma=args.flip_gamma_sign)
    payload = {"input": src, "valid": ok, **report}
    if not ok:
        raise IdentityFailure(payload, "diagram certificate failed")
    return payload, None


def cmd_entropy(args, cfg: RunConfig):
    data_x, data_y, src = _kneading_inputs(args, cfg)
    rep = entropy_report(data_x, data_y, cfg.precision)
    payload = {"input": src, "entropy": rep.to_dict()}
    text = (f"h_kneading {_fmt_float(rep.h_kneading)}  h_spectral {_fmt_float(rep.h_spectral)}  "
            f"t* {_fmt_float(rep.t_star)}  lambda {_fmt_float(rep.lam)}")
    if rep.h_fiber is not None:
        text += f"\nh(f) {_fmt_float(rep.h_basis)}  h(g_P) {_fmt_float(rep.h_fiber)}  bowen {rep.bowen_ok}"
    return payload, text


def cmd_verify(args, cfg: RunConfig):
    data_x, data_y, src = _kneading_inputs(args, cfg)
    identities = char_poly_checks(data_x, data_y)
    ok = all(v["equal"] for v in identities.values())
    payload = {"input": src, "char_poly_identity": identities}
    if data_x.modality and sum(data_x.periods) > 1 and (data_y is None or data_y.modality and sum(data_y.periods) > 1):
        hom, hom_ok = homology_report(data_x, data_y, flip_gamma=args.flip_gamma_sign)
        payload["homology"] = hom
        ok = ok and hom_ok
    else:
        payload["homology"] = None
    rep = entropy_report(data_x, data_y, cfg.precision)
    payload["entropy"] = rep.to_dict()
    ok = ok and rep.routes_agree and rep.bowen_ok is not False
    if args.golden is not None:
        if data_y is None:
            raise ValueError("golden comparison needs basis and fiber kneading data")
        g = compare_golden(load_golden(args.golden or None), data_x, data_y)
        payload["golden"] = g
        ok = ok and g["ok"]
    payload["ok"] = ok
    if not ok:
        raise IdentityFailure(payload, "exact identity check failed")
    return payload, "all certificates pass"


def _sweep_row(spec_fields: tuple, name: str, value: float, max_period: int, tol: float, precision: float) -> list:
    family, params, bps, pieces = spec_fields
    row = [value, "", "", "", ""]
    try:
        spec = MapSpec(family, {**params, name: value}, bps, pieces)
        res = numeric_kneading(spec, max_period, tol)
        row[1] = ",".join(map(str, res.data_x.periods))
        if res.triangular:
            row[2] = ",".join(map(str, res.data_y.periods))
        rep = entropy_report(res.data_x, res.data_y, precision)
        row[3], row[4] = rep.h_kneading, rep.h_spectral
    except (KneadError, ValueError, ArithmeticError, OverflowError):
        pass
    return row


def cmd_sweep(args, cfg: RunConfig):
    if args.sweep_param is None:
        raise ValueError("sweep needs --sweep-param")
    lo, hi, steps = args.range
    # the swept parameter need not be given with --param
    args.param = [f"{args.sweep_param}={lo}", *(args.param or [])]
    spec = _map_spec(args)
    if spec is None:
        raise ValueError("sweep needs --family or --spec")
    _, required, optional = FAMILIES[spec.family]
    if args.sweep_param not in required and args.sweep_param not in optional:
        raise ValueError(f"family {spec.family} has no parameter {args.sweep_param!r}")
    steps = int(steps)
    values = [] if steps <= 0 else ([lo] if steps == 1 else list(np.linspace(lo, hi, steps)))
    values = [float(v) for v in values]
    row = partial(_sweep_row, (spec.family, spec.params, spec.breakpoints, spec.pieces), args.sweep_param,
                  max_period=cfg.max_period, tol=cfg.tol, precision=cfg.precision)
    if cfg.jobs > 1 and len(values) > 1:
        # map() yields in submission order, so rows come back in parameter order
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            rows = list(ex.map(row, values))
    else:
        rows = [row(v) for v in values]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([args.sweep_param, "basis_period", "fiber_period", "h_kneading", "h_spectral"])
    for r in rows:
        w.writerow([_fmt_float(r[0]), r[1], r[2],
                    *(_fmt_float(x) if x != "" else "" for x in r[3:])])
    return None, buf.getvalue()


HANDLERS = {
    "itinerary": cmd_itinerary, "kneading": cmd_kneading, "markov": cmd_markov,
    "homology": cmd_homology, "entropy": cmd_entropy, "verify": cmd_verify, "sweep": cmd_sweep,
}


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="knead", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"knead {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--family", help="built-in map family")
    p.add_argument("--param", action="append", metavar="K=V", help="family parameter (repeatable)")
    p.add_argument("--spec", help="map spec as inline JSON or a JSON file path")
    p.add_argument("--kneading-data", help="basis kneading data, e.g. RLC or 'RC1,LC2'")
    p.add_argument("--fiber-kneading-data",
                   help="fiber kneading data for a triangular system; '' for a monotone fiber")
    p.add_argument("--max-period", type=int, default=64)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="orbit closure tolerance")
    p.add_argument("--precision", type=float, default=1e-12, help="root-finding precision")
    p.add_argument("--format", dest="fmt", choices=("json", "text", "csv"), default="json")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--kneading", action="store_true", help="require kneading analysis (itinerary)")
    p.add_argument("--x0", type=float, default=0.1, help="start point for iterate-only families")
    p.add_argument("--y0", type=float, default=0.1)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--golden", nargs="?", const="", default=None,
                   help="compare against a golden JSON file (default: the bundled worked-example file)")
    p.add_argument("--flip-gamma-sign", action="store_true", help="corrupt one gamma entry (fault injection)")
    p.add_argument("--sweep-param", help="parameter to sweep")
    p.add_argument("--range", nargs=3, type=float, default=(0.6, 0.87, 28), metavar=("LO", "HI", "STEPS"))
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweep")
    return p


def _emit(out: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.max_period, args.tol, args.precision, args.fmt, args.jobs)
        payload, text = HANDLERS[args.command](args, cfg)
    except IdentityFailure as exc:
        _emit(render({"error": str(exc), **exc.payload}, args.fmt), args.out)
        print(f"knead: identity failure: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    except IneligibleFamilyError as exc:
        print(f"knead: family not kneading-eligible: {exc}", file=sys.stderr)
        return EXIT_INELIGIBLE
    except (KneadError, ValueError, ArithmeticError, OverflowError, OSError, KeyError) as exc:
        print(f"knead: error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    _emit(text if payload is None else render(payload, args.fmt, text if args.fmt == "text" else None), args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
