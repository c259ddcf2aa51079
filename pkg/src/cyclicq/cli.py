"""Command line harness: ``cyclicq verify | weights | show-config``."""
from __future__ import annotations

import argparse
import csv
import json
import os
import platform
import sys
from typing import Optional

import numpy as np

from . import __version__
from . import curve as cv
from . import weights as wt
from .checks import SUITE_FUNCS, Ctx
from .config import SUITES, Config, ConfigError, load

FAMILIES = ("what", "wbar", "w", "wcheck")


def run_suite(cfg: Config) -> dict:
    """Run the selected suites in dependency order and assemble the report."""
    ctx = Ctx(cfg, np.random.default_rng(cfg.seed))
    for name in SUITES:
        if name in cfg.suites:
            SUITE_FUNCS[name](ctx)
    entries = ctx.entries
    asserted = [e for e in entries if e["asserted"]]
    return {
        # output paths are not part of the run, so reports from different destinations compare equal
        "config": {k: v for k, v in cfg.to_dict().items() if k not in ("json_out", "csv_out")},
        "modulus": {"k": [ctx.mod.k.real, ctx.mod.k.imag], "kprime": [ctx.mod.kprime.real, ctx.mod.kprime.imag]},
        "summary": {
            "total": len(entries),
            "asserted": len(asserted),
            "passed": sum(e["pass"] for e in asserted),
            "failed": sum(not e["pass"] for e in asserted),
            "reported_only": len(entries) - len(asserted),
        },
        "environment": {
            "package": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
        },
        "checks": entries,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


def write_checks_csv(report: dict, out_dir: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "checks.csv")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["check_id", "anchor", "residual", "tolerance", "comparison", "pass", "asserted"])
        for e in report["checks"]:
            w.writerow([e["check_id"], e["anchor"], repr(e["residual"]), repr(e["tolerance"]),
                        e["comparison"], e["pass"], e["asserted"]])
    return path


def weight_tables(cfg: Config, r: Optional[cv.CurvePoint] = None, s: Optional[cv.CurvePoint] = None) -> dict:
    ctx = Ctx(cfg, np.random.default_rng(cfg.seed))
    if r is None or s is None:
        r, s = ctx.points(2, shifts=False)
    wh, wb = wt.w_hat(r, s), wt.w_bar(r, s)
    tables = {"what": wh, "wbar": wb, "w": wt.fourier(wh, -1), "wcheck": wt.fourier(wb, 1)}
    return {"r": r, "s": s, "tables": tables}


def export_weights(cfg: Config, out_dir: str, r=None, s=None) -> tuple:
    """Write weights.csv (n, family, re, im) and weights.json into ``out_dir``."""
    data = weight_tables(cfg, r, s)
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "weights.csv")
    json_path = os.path.join(out_dir, "weights.json")
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "family", "re", "im"])
        for fam in FAMILIES:
            for n, v in enumerate(data["tables"][fam].values):
                w.writerow([n, fam, repr(float(v.real)), repr(float(v.imag))])
    doc = {
        "N": cfg.N, "m": cfg.m,
        "r": data["r"].to_dict(), "s": data["s"].to_dict(),
        "tables": {f: [[float(v.real), float(v.imag)] for v in data["tables"][f].values] for f in FAMILIES},
    }
    with open(json_path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
    return csv_path, json_path


def read_weights_csv(path: str) -> dict:
    out = {f: {} for f in FAMILIES}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out[row["family"]][int(row["n"])] = complex(float(row["re"]), float(row["im"]))
    return {f: np.array([d[n] for n in sorted(d)]) for f, d in out.items()}


def read_weights_json(path: str) -> dict:
    with open(path) as fh:
        doc = json.load(fh)
    return {f: np.array([complex(*v) for v in doc["tables"][f]]) for f in FAMILIES}


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config file")
    common.add_argument("--suite", metavar="NAME[,NAME...]", help=f"subset of {','.join(SUITES)}")
    common.add_argument("--seed", type=int)
    common.add_argument("--n", type=int, dest="N", help="order N of the root of unity")
    common.add_argument("--m", type=int, dest="M", help="number of quantum sites M")
    common.add_argument("--root-exponent", type=int, dest="m", help="q = exp(2 pi i m / N)")
    common.add_argument("--alpha", type=float)
    common.add_argument("--draws", type=int)
    common.add_argument("--json-out", metavar="PATH")
    common.add_argument("--csv-out", metavar="DIR")
    common.add_argument("--flip-c0", action="store_true", default=None)
    common.add_argument("--flip-zs", action="store_true", default=None)
    common.add_argument("--tol-rel", type=float)
    p = argparse.ArgumentParser(prog="cyclicq", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)
    sub.add_parser("verify", parents=[common], help="run the certification suites")
    sub.add_parser("weights", parents=[common], help="export the four weight tables")
    sub.add_parser("show-config", parents=[common], help="print the resolved configuration")
    return p


def _config(ns) -> Config:
    over = {k: getattr(ns, k) for k in ("seed", "N", "M", "m", "alpha", "draws", "json_out", "csv_out",
                                        "flip_c0", "flip_zs", "tol_rel")}
    if ns.suite:
        over["suites"] = [s.strip() for s in ns.suite.split(",") if s.strip()]
    return load(ns.config, over)


def main(argv=None) -> int:
    ns = _parser().parse_args(argv)
    try:
        cfg = _config(ns)
    except (ConfigError, OSError, json.JSONDecodeError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if ns.cmd == "show-config":
        print(json.dumps(cfg.to_dict(), indent=2, sort_keys=True))
        return 0
    try:
        if ns.cmd == "weights":
            paths = export_weights(cfg, cfg.csv_out or ".")
            print("\n".join(paths))
            return 0
        report = run_suite(cfg)
    except (cv.ExhaustedDrawsError, cv.DegeneratePointError) as exc:
        print(f"sampling error: {exc}", file=sys.stderr)
        return 3
    text = report_json(report)
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            fh.write(text + "\n")
    if cfg.csv_out:
        write_checks_csv(report, cfg.csv_out)
    for e in report["checks"]:
        tag = "PASS" if e["pass"] else ("FAIL" if e["asserted"] else "INFO")
        print(f"{tag:4}  {e['check_id']:<52} {e['residual']:.3e}  (tol {e['tolerance']:.0e})")
    s = report["summary"]
    print(f"{s['passed']}/{s['asserted']} asserted checks passed, {s['reported_only']} reported only")
    return 0 if s["failed"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
