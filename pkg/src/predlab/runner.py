"""Scenario orchestration: config ingestion, pipeline runs, report files.

A scenario names a density, a size, a precision and an optional list of
verification ids; running it writes the covariance CSV, the trace CSV, a
JSON summary and one JSON+CSV pair per verification.  Output files are
written atomically (temp file + rename) and numbers are formatted at the
declared precision, so identical configs reproduce identical bytes.
"""
from __future__ import annotations

import json
import math
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from mpmath import mp, mpf

from . import rates
from .covariance import covariances_for
from .grammar import SpecParseError, parse_density, parse_factor
from .models import SpectralDensity
from .precision import PrecisionBudgetError, required_precision_bits, validate_bits
from .rates import RateReport
from .toeplitz import levinson

VERIFY_IDS = ("rosenblatt1", "rosenblatt2", "ratio", "davisson", "inoue",
              "table1", "hat-pollaczek", "eigen-rates")

EXIT_PASS = 0
EXIT_VERDICT = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


@dataclass
class Scenario:
    id: str
    density: str
    n_max: int = 100
    precision_bits: int = 256
    factor: str = ""
    verify: tuple = ()
    params: dict = field(default_factory=dict)
    out_dir: str = "."
    override_budget: bool = False

    def validate(self):
        if not self.id:
            raise ValueError("scenario needs an id")
        validate_bits(self.precision_bits)
        if not (1 <= self.n_max <= 5000):
            raise ValueError("n_max must lie in [1, 5000]")
        for v in self.verify:
            if v not in VERIFY_IDS:
                raise ValueError(f"unknown verification id {v!r}; known: {VERIFY_IDS}")


def atomic_write(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def budget_check(f: SpectralDensity, n_max: int, precision_bits: int,
                 override: bool = False):
    """Exponentially decaying scenarios need bits growing linearly in n."""
    if f.support is None:
        return
    from .capacity import tau_arcset
    tau = tau_arcset(f.support)
    rho = float((tau.value if tau.value is not None else tau.bracket[1]) ** 2)
    need = required_precision_bits(n_max, max(rho, 1e-6))
    if precision_bits < need and not override:
        raise PrecisionBudgetError(
            f"resolving n_max={n_max} for this arc-supported density needs "
            f">= {need} precision bits (got {precision_bits}); pass "
            f"override_budget to proceed anyway")


def run_scenario(s: Scenario) -> dict:
    """Execute one scenario; returns the summary dict (also written to disk)."""
    s.validate()
    try:
        f = parse_density(s.density)
    except SpecParseError:
        raise
    budget_check(f, s.n_max, s.precision_bits, s.override_budget)
    out = os.path.join(s.out_dir, s.id)
    cov = covariances_for(f, s.n_max, s.precision_bits)
    trace = levinson(cov, s.n_max)
    atomic_write(os.path.join(out, "covariances.csv"), cov.to_csv())
    atomic_write(os.path.join(out, "trace.csv"), trace.to_csv())

    verdicts = {}
    reports = []
    for vid in s.verify:
        rep = _run_verify(vid, f, s, trace)
        verdicts[vid] = rep.verdict()
        reports.append(rep)
        atomic_write(os.path.join(out, f"rate_{vid}.json"), _json_text(rep.to_json_dict()))
        atomic_write(os.path.join(out, f"rate_{vid}.csv"), rep.to_csv())

    summary = {
        "id": s.id,
        "density": f.spec_string(),
        "n_max": s.n_max,
        "precision_bits": s.precision_bits,
        "trace": trace.summary(),
        "verdicts": verdicts,
        "ok": all(v == "pass" for v in verdicts.values()),
        "degenerate": trace.degenerate_at >= 0,
    }
    atomic_write(os.path.join(out, "summary.json"), _json_text(summary))
    lines = [f"scenario {s.id}: density {f.spec_string()}",
             f"  n_max={s.n_max} precision_bits={s.precision_bits}",
             f"  sigma2[{trace.usable_n}] = {mp.nstr(trace.sigma2[trace.usable_n], 12)}"]
    for vid, v in verdicts.items():
        lines.append(f"  verify {vid}: {v}")
    atomic_write(os.path.join(out, "summary.txt"), "\n".join(lines) + "\n")
    return summary


def _run_verify(vid: str, f: SpectralDensity, s: Scenario, trace) -> RateReport:
    p = s.params
    if vid == "rosenblatt1":
        return rates.verify_rosenblatt1(float(p.get("alpha", math.pi / 2)),
                                        s.n_max, s.precision_bits)
    if vid == "rosenblatt2":
        a = float(p.get("a", getattr(f, "a", 1.0)))
        return rates.verify_rosenblatt2(a, s.n_max, s.precision_bits)
    if vid == "ratio":
        if not s.factor:
            raise ValueError("ratio verification needs a factor spec")
        g = parse_factor(s.factor)
        return rates.verify_ratio_theorem(f, g, s.n_max, s.precision_bits)
    if vid == "davisson":
        return rates.verify_davisson(trace, float(p["alpha"]),
                                     float(p.get("delta", 0.0)))
    if vid == "inoue":
        d = float(p.get("d", getattr(f, "d", 0.25)))
        return rates.verify_inoue(d, s.n_max, s.precision_bits)
    if vid == "table1":
        avals = tuple(p.get("a_values", (0.1, 0.5, 1.0, 2.0, 3.0)))
        return rates.verify_table1(avals, min(s.precision_bits, 224))
    if vid == "hat-pollaczek":
        a = float(p.get("a", getattr(f, "a", 1.0)))
        return rates.verify_hat_pollaczek(a, s.n_max, s.precision_bits)
    if vid == "eigen-rates":
        nv = tuple(p.get("n_values", (25, 50, 100, 200)))
        return rates.verify_eigen_rates(f, nv, s.precision_bits)
    raise ValueError(f"unknown verification id {vid!r}")


def load_config(path: str) -> list:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "scenarios" not in data:
        raise ValueError("config must be a JSON object with a 'scenarios' list")
    out_dir = data.get("out", ".")
    scenarios = []
    seen = set()
    for entry in data["scenarios"]:
        s = Scenario(id=entry["id"], density=entry["density"],
                     n_max=int(entry.get("n_max", 100)),
                     precision_bits=int(entry.get("precision_bits", 256)),
                     factor=entry.get("factor", ""),
                     verify=tuple(entry.get("verify", ())),
                     params=dict(entry.get("params", {})),
                     out_dir=entry.get("out", out_dir),
                     override_budget=bool(entry.get("override_budget", False)))
        if s.id in seen:
            raise ValueError(f"duplicate scenario id {s.id!r}")
        seen.add(s.id)
        scenarios.append(s)
    return scenarios


def run_config(path: str, max_workers: int = 0, overrides: dict = None) -> int:
    """Run every scenario in a config; scenario failures do not stop the
    others.  Command-line overrides (n_max, precision_bits, out_dir) take
    precedence over per-scenario config values.  Returns the aggregate
    exit status."""
    scenarios = load_config(path)
    for s in scenarios:
        for key, val in (overrides or {}).items():
            if val:
                setattr(s, key, val)
    if not scenarios:
        print("warning: config has no scenarios")
        return EXIT_PASS
    scenarios.sort(key=lambda s: s.id)
    results = {}
    workers = max_workers or min(len(scenarios), os.cpu_count() or 1, 4)
    if workers > 1 and len(scenarios) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = {s.id: pool.submit(run_scenario, s) for s in scenarios}
            for sid, fut in futs.items():
                try:
                    results[sid] = fut.result()
                except Exception as exc:
                    results[sid] = {"id": sid, "ok": False, "error": str(exc)}
    else:
        for s in scenarios:
            try:
                results[s.id] = run_scenario(s)
            except Exception as exc:
                results[s.id] = {"id": s.id, "ok": False, "error": str(exc)}
    status = EXIT_PASS
    print(f"{'scenario':<24} {'status':<8} detail")
    for sid in sorted(results):
        r = results[sid]
        if "error" in r:
            print(f"{sid:<24} {'error':<8} {r['error'][:80]}")
            status = max(status, EXIT_DEGENERATE if "degener" in r["error"].lower()
                         else EXIT_VERDICT)
        elif r.get("degenerate"):
            print(f"{sid:<24} {'partial':<8} recursion stopped early")
            status = max(status, EXIT_DEGENERATE)
        elif r["ok"]:
            print(f"{sid:<24} {'pass':<8}")
        else:
            fails = [k for k, v in r.get("verdicts", {}).items() if v != "pass"]
            print(f"{sid:<24} {'fail':<8} {','.join(fails)}")
            status = max(status, EXIT_VERDICT)
    return status
