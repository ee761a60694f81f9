"""Command-line surface: curve checks, root counts, census, hull, mesh, transport.

Exit codes: 0 success or verdict pass, 1 verdict failure (including geometric
rejections), 2 a result could not be certified at working precision, 3 usage
errors.  All randomness is seeded, so reports are reproducible byte for byte.
The OSCULANT_THREADS environment variable caps internal worker threads.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT, Tolerances
from .convexity import check_convex_criterion, check_convex_sampling
from .curves import ParamCurve, build_model, curve_from_spec
from .errors import (GeometryError, OnDiscriminantError, OsculantError,
                     PrecisionError)
from .mesh import export, sample_discriminant
from .projection import project_iterated
from .projective import normalize
from .strata import component_census, hull_center, tangency_data, transport
from .hulls import elliptic_hull, elliptic_hull_membership
from .tangency import count_roots

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_PRECISION = 2
EXIT_USAGE = 3

_MODEL_SHORTHAND = re.compile(r"^(trig_convex|rational_normal):(\d+)$")


@dataclass
class RunConfig:
    """Everything a single CLI invocation needs; seed determines all draws."""

    command: str
    curve_spec: str | None = None
    seed: int = 0
    trials: int = 1000
    samples: int = 2000
    t_steps: int = 96
    ruling_steps: int = 24
    format: str = "csv"
    out: str | None = None
    point: str | None = None
    moments: list = field(default_factory=list)
    curve2: str | None = None
    tol: Tolerances = DEFAULT


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _thread_cap() -> int:
    raw = os.environ.get("OSCULANT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _load_curve(spec: str) -> ParamCurve:
    m = _MODEL_SHORTHAND.match(spec)
    if m:
        return build_model(m.group(1), int(m.group(2)))
    return curve_from_spec(spec)


def _parse_point(raw: str, dim: int) -> np.ndarray:
    parts = raw.strip().strip("()").split(",")
    try:
        v = np.array([float(x) for x in parts])
    except ValueError:
        raise ValueError(f"point {raw!r} is not comma-separated numbers")
    if v.shape != (dim,) or not v.any():
        raise ValueError(f"point needs {dim} homogeneous coordinates, "
                         "not all zero")
    return v


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    return x


def _emit(doc: dict) -> None:
    print(json.dumps(_jsonable(doc), indent=2, sort_keys=True))


def _report(rep) -> dict:
    doc = {"verdict": rep.verdict, "trials": rep.trials, "notes": rep.notes}
    if rep.max_roots_seen is not None:
        doc["max_roots_seen"] = rep.max_roots_seen
    if rep.witness is not None:
        doc["witness"] = rep.witness
    return doc


def _cmd_check_convex(cfg: RunConfig) -> int:
    c = _load_curve(cfg.curve_spec)
    samp = check_convex_sampling(c, trials=cfg.trials,
                                 rng=np.random.default_rng(cfg.seed),
                                 tol=cfg.tol)
    crit = check_convex_criterion(c, samples=cfg.samples,
                                  rng=np.random.default_rng(cfg.seed + 1),
                                  tol=cfg.tol)
    ok = bool(samp) and bool(crit)
    _emit({"verdict": "pass" if ok else "fail",
           "sampling": _report(samp), "criterion": _report(crit)})
    return EXIT_PASS if ok else EXIT_FAIL


def _cmd_roots(cfg: RunConfig) -> int:
    c = _load_curve(cfg.curve_spec)
    p = _parse_point(cfg.point, c.n + 1)
    rc = count_roots(c, p, cfg.tol)
    _emit({"total": rc.total,
           "tangencies": [[t, m] for t, m in rc.tangencies]})
    return EXIT_PASS


def _cmd_project(cfg: RunConfig) -> int:
    c = _load_curve(cfg.curve_spec)
    if not cfg.moments:
        raise ValueError("project needs at least one moment")
    child = project_iterated(c, [float(t) for t in cfg.moments], cfg.tol)
    rep = check_convex_sampling(child.curve, trials=max(100, cfg.trials // 5),
                                rng=np.random.default_rng(cfg.seed),
                                tol=cfg.tol)
    rng = np.random.default_rng(cfg.seed + 1)
    k = len(cfg.moments)
    drops = []
    for _ in range(10):
        # the recursion applies to points of the intersection subspace
        v = child.lift_point(rng.standard_normal(child.curve.n + 1))
        try:
            before = count_roots(c, v, cfg.tol).total
            after = child.count_roots(v, cfg.tol).total
        except OsculantError:
            continue
        drops.append(before - after)
    recursion_ok = bool(drops) and all(d == k for d in drops)
    _emit({"verdict": "pass" if (bool(rep) and recursion_ok) else "fail",
           "child_dimension": child.curve.n,
           "child_convexity": _report(rep),
           "root_drop_checks": drops,
           "expected_drop": k})
    return EXIT_PASS if (bool(rep) and recursion_ok) else EXIT_FAIL


def _cmd_components(cfg: RunConfig) -> int:
    c = _load_curve(cfg.curve_spec)
    _emit(component_census(c, cfg.samples, seed=cfg.seed, tol=cfg.tol))
    return EXIT_PASS


def _cmd_hull(cfg: RunConfig) -> int:
    c = _load_curve(cfg.curve_spec)
    rng = np.random.default_rng(cfg.seed)
    probes = [rng.standard_normal(c.n + 1) for _ in range(20)]
    if c.n % 2 == 0:
        hull = elliptic_hull(c, tol=cfg.tol)
        center = hull.center.coords
    else:
        hull, center = None, None

    def probe(v):
        try:
            return elliptic_hull_membership(c, normalize(v), cfg.tol,
                                            hull=hull)
        except OsculantError:
            return None

    with ThreadPoolExecutor(max_workers=_thread_cap()) as pool:
        verdicts = list(pool.map(probe, probes))
    doc = {"n": c.n, "seed": cfg.seed,
           "probes": [{"point": p, "member": m}
                      for p, m in zip(probes, verdicts)]}
    if center is not None:
        doc["center"] = center
    _emit(doc)
    return EXIT_PASS


def _cmd_mesh(cfg: RunConfig) -> int:
    c = _load_curve(cfg.curve_spec)
    if cfg.out is None:
        raise ValueError("mesh needs --out")
    s = sample_discriminant(c, cfg.t_steps, cfg.ruling_steps, cfg.tol)
    path = export(s, cfg.format, cfg.out)
    _emit({"written": str(path), "resolution": list(s.resolution),
           "format": cfg.format})
    return EXIT_PASS


def _cmd_transport(cfg: RunConfig) -> int:
    c1 = _load_curve(cfg.curve_spec)
    c2 = _load_curve(cfg.curve2)
    p = _parse_point(cfg.point, c1.n + 1)
    d1 = tangency_data(c1, p, cfg.tol)
    q = transport(p, c1, c2, cfg.tol)
    d2 = tangency_data(c2, q.coords, cfg.tol)
    back = transport(q.coords, c2, c1, cfg.tol)
    a = p / np.linalg.norm(p)
    b = back.coords / np.linalg.norm(back.coords)
    rt = float(min(np.linalg.norm(a - b), np.linalg.norm(a + b)))
    ok = d1.index == d2.index and rt <= 1e-5
    _emit({"verdict": "pass" if ok else "fail",
           "transported": q.coords,
           "stratum_before": d1.index, "stratum_after": d2.index,
           "moments_before": list(d1.moments),
           "moments_after": list(d2.moments),
           "roundtrip_error": rt})
    return EXIT_PASS if ok else EXIT_FAIL


_COMMANDS = {
    "check-convex": _cmd_check_convex,
    "roots": _cmd_roots,
    "project": _cmd_project,
    "components": _cmd_components,
    "hull": _cmd_hull,
    "mesh": _cmd_mesh,
    "transport": _cmd_transport,
}


def _build_parser() -> _Parser:
    p = _Parser(prog="osculant",
                description="tangency counting and stratification toolkit")
    sub = p.add_subparsers(dest="command", required=True,
                           parser_class=_Parser)

    def common(sp):
        sp.add_argument("--curve", required=True,
                        help="curve spec JSON path, or model:n shorthand")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--trials", type=int, default=1000)
        sp.add_argument("--samples", type=int, default=2000)
        sp.add_argument("--t-steps", type=int, default=96)
        sp.add_argument("--ruling-steps", type=int, default=24)
        sp.add_argument("--format", default="csv",
                        choices=("obj", "csv", "json"))
        sp.add_argument("--out")
        sp.add_argument("--tol-rank", type=float)
        sp.add_argument("--tol-zero", type=float)

    common(sub.add_parser("check-convex"))
    sp = sub.add_parser("roots")
    common(sp)
    sp.add_argument("point", help="comma-separated homogeneous coordinates")
    sp = sub.add_parser("project")
    common(sp)
    sp.add_argument("moments", nargs="+", type=float)
    common(sub.add_parser("components"))
    common(sub.add_parser("hull"))
    common(sub.add_parser("mesh"))
    sp = sub.add_parser("transport")
    common(sp)
    sp.add_argument("point", help="comma-separated homogeneous coordinates")
    sp.add_argument("curve2", help="target curve spec or shorthand")
    return p


def _config_from_args(ns) -> RunConfig:
    tol = DEFAULT
    overrides = {}
    if ns.tol_rank is not None:
        overrides["rank_rel"] = ns.tol_rank
    if ns.tol_zero is not None:
        overrides["zero_rel"] = ns.tol_zero
    if overrides:
        tol = tol.with_overrides(**overrides)
    return RunConfig(
        command=ns.command, curve_spec=ns.curve, seed=ns.seed,
        trials=ns.trials, samples=ns.samples, t_steps=ns.t_steps,
        ruling_steps=ns.ruling_steps, format=ns.format, out=ns.out,
        point=getattr(ns, "point", None),
        moments=list(getattr(ns, "moments", []) or []),
        curve2=getattr(ns, "curve2", None),
        tol=tol,
    )


def run(cfg: RunConfig) -> int:
    """Dispatch a parsed configuration; returns the process exit code."""
    try:
        return _COMMANDS[cfg.command](cfg)
    except (PrecisionError, OnDiscriminantError) as e:
        print(f"precision: {e}", file=sys.stderr)
        return EXIT_PRECISION
    except OsculantError as e:
        print(f"rejected: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, OSError) as e:
        print(f"usage: {e}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    try:
        ns = _build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    return run(_config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
