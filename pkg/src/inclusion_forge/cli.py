"""Command-line interface: JSON config in, CSV/SVG/JSON diagnostics out.

Subcommands
-----------
solve              run one configuration, write contours/diagnostics/plot
validate           report every violated invariant of a configuration
reproduce-figures  regenerate the bundled sample configurations

Exit codes: 0 valid result, 1 invalid verdict (or unexpected
classification for reproduce-figures), 2 unreadable/invalid input,
3 internal numerical failure.  The environment variable
``INCLUSION_FORGE_TOL`` overrides the boundedness tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import jsonschema
import numpy as np

from . import figures, pipeline
from .mapper import n1_circular_profile
from .model import (
    AT_INFINITY,
    ConfigurationError,
    FreeParameters,
    Loading,
    MaterialSet,
    NumericsConfig,
    SlitConfiguration,
    SolverError,
    validate as validate_model,
)

_COMPLEX_SCHEMA = {
    "type": "object",
    "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
    "required": ["re"],
    "additionalProperties": False,
}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "slits": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "array",
                "items": {"type": "number"},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "zeta_inf": {"oneOf": [{"const": "infinity"}, _COMPLEX_SCHEMA]},
        "loading": {
            "type": "object",
            "properties": {
                "tau1": {"type": "number"},
                "tau2": {"type": "number"},
                "tau1_inf": {"type": "number"},
                "tau2_inf": {"type": "number"},
                "mu": {"type": "number"},
            },
            "required": ["tau1", "tau2", "tau1_inf", "tau2_inf"],
            "additionalProperties": False,
        },
        "kappa": {"type": "array", "items": {"type": "number"}, "minItems": 1},
        "free": {
            "type": "object",
            "properties": {
                "a0": {"type": "number"},
                "rho0": {"type": "number"},
                "c_m1": _COMPLEX_SCHEMA,
                "gamma": _COMPLEX_SCHEMA,
                "beta0": {"type": "number"},
                "antisymmetric": {"type": "boolean"},
            },
            "additionalProperties": False,
        },
        "numerics": {
            "type": "object",
            "properties": {
                "N": {"type": "integer"},
                "M": {"type": "integer"},
                "P": {"type": "integer"},
                "eps_near": {"type": "number"},
                "tol_solve": {"type": "number"},
            },
            "additionalProperties": False,
        },
        "overrides": {
            "type": "object",
            "properties": {
                "a": {"type": "array", "items": {"type": "number"}},
                "rho": {"type": "array", "items": {"type": "number"}},
            },
            "additionalProperties": False,
        },
    },
    "required": ["n", "slits", "zeta_inf", "loading", "kappa"],
    "additionalProperties": False,
}


class CliError(Exception):
    """Input-level failure mapped to exit code 2."""


def _as_complex(obj) -> complex:
    return complex(obj.get("re", 0.0), obj.get("im", 0.0))


def parse_config(doc: dict):
    """Schema-check a config document and build the model objects."""
    try:
        jsonschema.validate(doc, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise CliError(f"config schema violation: {exc.message}") from exc
    if doc["n"] != len(doc["slits"]):
        raise CliError(f"n = {doc['n']} but {len(doc['slits'])} slits given")
    zeta = doc["zeta_inf"]
    zeta_inf = AT_INFINITY if zeta == "infinity" else _as_complex(zeta)
    try:
        cfg = SlitConfiguration(doc["slits"], zeta_inf)
        ld = doc["loading"]
        loading = Loading(
            ld["tau1"], ld["tau2"], ld["tau1_inf"], ld["tau2_inf"], ld.get("mu", 1.0)
        )
        materials = MaterialSet(doc["kappa"])
        fr = doc.get("free", {})
        free = FreeParameters(
            a0=fr.get("a0", 0.0),
            rho0=fr.get("rho0", 0.0),
            c_m1=_as_complex(fr.get("c_m1", {"re": 1.0})),
            gamma=_as_complex(fr.get("gamma", {"re": 0.0})),
            beta0=fr.get("beta0", 0.0),
            antisymmetric=fr.get("antisymmetric", False),
        )
        nu = doc.get("numerics", {})
        tol = float(os.environ.get("INCLUSION_FORGE_TOL", nu.get("tol_solve", 1e-8)))
        numerics = NumericsConfig(
            N=nu.get("N", 64),
            M=nu.get("M", 64),
            P=nu.get("P", 200),
            eps_near=nu.get("eps_near", 1e-3),
            tol_solve=tol,
        )
    except ConfigurationError as exc:
        raise CliError(str(exc)) from exc
    overrides = doc.get("overrides", {})
    return cfg, loading, materials, free, numerics, overrides


def load_config(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read config: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


# -- emitters -------------------------------------------------------------------


def format_float(x: float) -> str:
    """17 significant digits: round-trips IEEE doubles exactly."""
    return format(float(x), ".17g")


def write_contours_csv(result: pipeline.SolveResult, path: str | Path) -> None:
    lines = ["slit_index,bank,xi,re_z,im_z"]
    for p in result.profiles:
        for z, xi, bank in zip(p.points, p.xi, p.bank):
            lines.append(
                f"{p.slit_index},{bank:+d},{format_float(xi)},"
                f"{format_float(z.real)},{format_float(z.imag)}"
            )
    Path(path).write_text("\n".join(lines) + "\n")


def read_contours_csv(path: str | Path) -> dict[int, np.ndarray]:
    """Reconstruct the polylines written by :func:`write_contours_csv`."""
    out: dict[int, list[complex]] = {}
    with open(path) as fh:
        next(fh)
        for line in fh:
            idx, _bank, _xi, re_z, im_z = line.strip().split(",")
            out.setdefault(int(idx), []).append(complex(float(re_z), float(im_z)))
    return {k: np.asarray(v) for k, v in out.items()}


def write_diagnostics_json(result: pipeline.SolveResult, path: str | Path) -> None:
    doc = {
        "diagnostics": result.diagnostics.to_dict(),
        "constants": {
            "a": result.constants.a.tolist(),
            "rho": result.constants.rho.tolist(),
            "rho_prime": result.constants.rho_prime.tolist(),
        },
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def render_svg(
    contours: list[np.ndarray],
    labels: list[str] | None = None,
    width: float = 480.0,
) -> str:
    """Deterministic equal-aspect SVG of closed contours (y axis up)."""
    all_pts = np.concatenate(contours)
    x0, x1 = float(all_pts.real.min()), float(all_pts.real.max())
    y0, y1 = float(all_pts.imag.min()), float(all_pts.imag.max())
    span = max(x1 - x0, y1 - y0, 1e-12)
    pad = 0.05 * span
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    dx, dy = x1 - x0, y1 - y0
    height = width * dy / dx

    def fx(v: float) -> str:
        return format(width * (v - x0) / dx, ".3f")

    def fy(v: float) -> str:
        return format(height * (y1 - v) / dy, ".3f")

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" '
        f'height="{height:.3f}" viewBox="0 0 {width:g} {height:.3f}">',
        f'<rect width="{width:g}" height="{height:.3f}" fill="white"/>',
    ]
    if x0 < 0 < x1:
        parts.append(
            f'<line x1="{fx(0)}" y1="0" x2="{fx(0)}" y2="{height:.3f}" '
            'stroke="#cccccc" stroke-width="1"/>'
        )
    if y0 < 0 < y1:
        parts.append(
            f'<line x1="0" y1="{fy(0)}" x2="{width:g}" y2="{fy(0)}" '
            'stroke="#cccccc" stroke-width="1"/>'
        )
    for i, z in enumerate(contours):
        color = _PALETTE[i % len(_PALETTE)]
        coords = " ".join(f"{fx(p.real)},{fy(p.imag)}" for p in z)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" '
            'stroke-width="1.5"/>'
        )
        if labels:
            parts.append(
                f'<text x="{8 + 90 * i}" y="16" font-size="12" '
                f'fill="{color}">{labels[i]}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(
    result: pipeline.SolveResult,
    path: str | Path,
    extra_contours: list[np.ndarray] | None = None,
    labels: list[str] | None = None,
) -> None:
    contours = [p.points for p in result.profiles] + list(extra_contours or [])
    Path(path).write_text(render_svg(contours, labels))


# -- subcommands ----------------------------------------------------------------


def _apply_flag_overrides(args, numerics: NumericsConfig) -> NumericsConfig:
    if args.nodes is None and args.points is None:
        return numerics
    # --nodes moves the truncation order along with the node count
    N = args.nodes if args.nodes is not None else numerics.N
    M = N if args.nodes is not None else numerics.M
    return NumericsConfig(
        N=N,
        M=M,
        P=args.points if args.points is not None else numerics.P,
        eps_near=numerics.eps_near,
        tol_solve=numerics.tol_solve,
    )


def _parse_vector(text: str | None):
    if text is None:
        return None
    try:
        return [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise CliError(f"bad override vector {text!r}: {exc}") from exc


def cmd_solve(args) -> int:
    doc = load_config(args.config)
    cfg, loading, materials, free, numerics, overrides = parse_config(doc)
    numerics = _apply_flag_overrides(args, numerics)
    override_a = _parse_vector(args.override_a) or overrides.get("a")
    override_rho = _parse_vector(args.override_rho) or overrides.get("rho")
    try:
        result = pipeline.solve(
            cfg, loading, materials, free, numerics,
            override_a=override_a, override_rho=override_rho,
        )
    except ConfigurationError as exc:
        raise CliError(str(exc)) from exc
    if args.out:
        write_contours_csv(result, args.out)
    if args.diag:
        write_diagnostics_json(result, args.diag)
    if args.svg:
        write_svg(result, args.svg)
    print(f"verdict: {result.verdict}")
    for p in result.profiles:
        print(
            f"  contour {p.slit_index}: diameter {p.diameter:.6g}, "
            f"area {p.signed_area:.6g}, closure {p.closure_error:.2e}"
        )
    return 0 if result.valid else 1


def cmd_validate(args) -> int:
    doc = load_config(args.config)
    cfg, loading, materials, free, _numerics, _overrides = parse_config(doc)
    report = validate_model(cfg, loading, materials, free)
    for v in report.violations:
        print(f"violation: {v}")
    for w in report.warnings:
        print(f"warning: {w}")
    if report.ok:
        print("configuration is runnable")
        return 0
    return 2


def cmd_reproduce_figures(args) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    failures = 0
    for case in figures.FIGURE_CASES:
        doc = figures.load_case(case.name)
        cfg, loading, materials, free, numerics, overrides = parse_config(doc)
        try:
            result = pipeline.solve(
                cfg, loading, materials, free, numerics,
                override_a=overrides.get("a"), override_rho=overrides.get("rho"),
            )
        except (ConfigurationError, SolverError) as exc:
            rows.append((case.name, "ERROR", case.expected, str(exc)))
            failures += 1
            continue
        extra, labels = None, None
        if case.overlay_circular:
            phi = np.linspace(0.0, 2.0 * np.pi, numerics.P * 2 + 1)
            extra = [n1_circular_profile(phi, loading, materials, free)]
            labels = ["slit map", "circular map"]
        write_svg(result, outdir / f"{case.name}.svg", extra, labels)
        write_contours_csv(result, outdir / f"{case.name}.csv")
        ok = result.verdict == case.expected
        failures += 0 if ok else 1
        rows.append((case.name, result.verdict, case.expected, "" if ok else "MISMATCH"))
    name_w = max(len(r[0]) for r in rows)
    verdict_w = max(len(r[1]) for r in rows)
    lines = [
        f"{r[0]:<{name_w}}  {r[1]:<{verdict_w}}  expected {r[2]}  {r[3]}".rstrip()
        for r in rows
    ]
    summary = "\n".join(lines) + "\n"
    print(summary, end="")
    (outdir / "summary.txt").write_text(summary)
    (outdir / "summary.json").write_text(
        json.dumps(
            [
                {"case": r[0], "verdict": r[1], "expected": r[2], "note": r[3]}
                for r in rows
            ],
            indent=2,
        )
        + "\n"
    )
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inclusion-forge",
        description="Uniformly stressed inclusion profiles from collinear slit maps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="solve one configuration")
    ps.add_argument("--config", required=True, help="JSON case configuration")
    ps.add_argument("--out", help="contours CSV output path")
    ps.add_argument("--svg", help="contour plot output path")
    ps.add_argument("--diag", help="diagnostics JSON output path")
    ps.add_argument("--nodes", type=int, help="override quadrature node count N")
    ps.add_argument("--points", type=int, help="override contour samples per bank P")
    ps.add_argument("--override-a", help="comma-separated replacement a vector")
    ps.add_argument("--override-rho", help="comma-separated replacement rho vector")
    ps.set_defaults(func=cmd_solve)

    pv = sub.add_parser("validate", help="check a configuration without solving")
    pv.add_argument("--config", required=True)
    pv.set_defaults(func=cmd_validate)

    pf = sub.add_parser(
        "reproduce-figures", help="regenerate the bundled sample configurations"
    )
    pf.add_argument("--outdir", default="figures-out")
    pf.set_defaults(func=cmd_reproduce_figures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SolverError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
