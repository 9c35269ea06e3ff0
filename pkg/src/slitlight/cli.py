"""Command-line front end: scenario runs, random sweeps, fringe tables, audits.

Exit codes: 0 on success with all residuals in tolerance, 1 when an identity
residual exceeds tolerance, 2 on config parse/validation errors, 3 on size
cap violations, 4 on physics-domain errors (vacuum state, dark slits).
All orchestration is single threaded and a fixed seed yields byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .complementarity import (
    RESIDUAL_TOL,
    distinguishability,
    order_n_complementarity,
    single_mode_per_slit,
    slit_photon_numbers,
    total_visibility,
    triality_report,
)
from .config import build_geometry, build_state, parse_scenario, scenario_to_dict
from .correlations import reduced_density_matrix, reduced_density_matrix_oracle
from .errors import CapacityError, ConfigError, PhysicsError
from .fields import FieldGeometry, degree_of_coherence, field_density_matrix, random_geometry
from .fock import CAP_ENV_VAR
from .fringes import fringe_curve
from .states import random_state

REPORT_FORMAT = "slitlight.report"
REPORT_VERSION = 1


def _fmt(value):
    """17 significant digits: round-trip exact for doubles."""
    return format(float(value), ".17g")


def _order_report_dict(report, field_matrix, reduced_matrix):
    def summary(obj):
        normalized = obj.normalized
        eigenvalues = sorted(np.linalg.eigvalsh(normalized).tolist(), reverse=True)
        return {
            "trace": float(obj.trace_value),
            "purity": float(obj.purity),
            "eigenvalues": eigenvalues,
        }

    return {
        "order": report.order,
        "mode_dimension": report.mode_dimension,
        "field_purity": report.field_purity,
        "particle_entropy": report.particle_entropy,
        "complementarity_residual": report.complementarity_residual,
        "distinguishability": report.distinguishability,
        "visibility": report.visibility,
        "coherence": report.coherence,
        "triality_residual": report.triality_residual,
        "regimes": list(report.regimes),
        "warnings": list(report.warnings),
        "field_matrix": summary(field_matrix),
        "reduced_matrix": summary(reduced_matrix),
    }


def run_scenario(text, kappa_override=None):
    """Evaluate one scenario; returns (document, all residuals in tolerance)."""
    config = parse_scenario(text)
    state = build_state(config)
    geometry = build_geometry(config)
    kappa = kappa_override if kappa_override is not None else config.mode_dimension
    if kappa is not None and not 2 <= kappa <= 2 * config.slit_count:
        raise ConfigError(
            f"mode_dimension: must lie in [2, {2 * config.slit_count}], got {kappa}",
            field="mode_dimension",
        )

    order_reports = []
    residuals = []
    for order in config.orders:
        use_triality = (
            order == 1 and config.slit_count == 2 and kappa in (None, 2) and single_mode_per_slit(state)
        )
        if use_triality:
            report = triality_report(state, geometry)
        else:
            report = order_n_complementarity(state, geometry, order, mode_dimension=kappa)
        residuals.append(abs(report.complementarity_residual))
        if report.triality_residual is not None:
            residuals.append(abs(report.triality_residual))
        field_matrix = field_density_matrix(state, geometry, order)
        reduced = reduced_density_matrix(state, order)
        order_reports.append(_order_report_dict(report, field_matrix, reduced))

    max_residual = max(residuals)
    ok = max_residual < RESIDUAL_TOL
    document = {
        "format": REPORT_FORMAT,
        "format_version": REPORT_VERSION,
        "engine_version": __version__,
        "scenario": scenario_to_dict(config),
        "tolerances": {"residual": RESIDUAL_TOL},
        "mean_photon_number": state.mean_photon_number,
        "slit_photon_numbers": _slit_numbers(state),
        "reports": order_reports,
        "max_abs_residual": max_residual,
        "within_tolerance": ok,
    }
    return document, ok


def _slit_numbers(state):
    return [float(v) for v in slit_photon_numbers(state)]


def _cmd_run(args):
    try:
        text = args.config.read_text()
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return 2
    document, ok = run_scenario(text, kappa_override=args.kappa)
    print(json.dumps(document, indent=2))
    return 0 if ok else 1


SWEEP_COLUMNS = (
    "index",
    "slit_count",
    "mean_photons",
    "order",
    "mode_dimension",
    "field_purity",
    "particle_entropy",
    "distinguishability",
    "visibility",
    "coherence",
    "complementarity_residual",
    "triality_residual",
)


def _cmd_sweep(args):
    if args.count < 0:
        print("error: --count must be >= 0", file=sys.stderr)
        return 2
    slit_count = args.slits
    mode_count = 2 * slit_count
    orders = args.orders
    geometry = FieldGeometry(slit_count=slit_count)
    active = tuple(range(0, mode_count, 2)) if args.polarized else None
    support = list(range(1, args.nmax + 1))

    lines = [",".join(SWEEP_COLUMNS)]
    max_fs = 0.0
    max_triality = 0.0
    for i in range(args.count):
        components = 3 if i % 2 else 1
        state = random_state(args.seed + i, mode_count, support, components=components, active_modes=active)
        triality_ok = slit_count == 2 and args.kappa in (None, 2) and single_mode_per_slit(state)
        for order in orders:
            if triality_ok and order == 1:
                report = triality_report(state, geometry)
            else:
                kappa = args.kappa
                report = order_n_complementarity(state, geometry, order, mode_dimension=kappa)
            max_fs = max(max_fs, abs(report.complementarity_residual))
            row = [
                str(i),
                str(slit_count),
                _fmt(report.mean_photon_number),
                str(order),
                str(report.mode_dimension),
                _fmt(report.field_purity),
                _fmt(report.particle_entropy),
                "" if report.distinguishability is None else _fmt(report.distinguishability),
                "" if report.visibility is None else _fmt(report.visibility),
                "" if report.coherence is None else _fmt(report.coherence),
                _fmt(report.complementarity_residual),
                "" if report.triality_residual is None else _fmt(report.triality_residual),
            ]
            if report.triality_residual is not None:
                max_triality = max(max_triality, abs(report.triality_residual))
            lines.append(",".join(row))
    summary = ["summary"] + [""] * 9 + [_fmt(max_fs), _fmt(max_triality)]
    lines.append(",".join(summary))
    print("\n".join(lines))
    return 0 if max(max_fs, max_triality) < RESIDUAL_TOL else 1


def _cmd_fringe(args):
    try:
        text = args.config.read_text()
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return 2
    config = parse_scenario(text)
    if config.slit_count != 2:
        raise ConfigError(f"slit_count: fringe curves need 2 slits, got {config.slit_count}", field="slit_count")
    state = build_state(config)
    geometry = build_geometry(config)
    curve = fringe_curve(state, geometry, samples=args.samples)
    lines = ["delta,s0,s1,s2,s3"]
    for delta, row in zip(curve.phases, curve.stokes):
        lines.append(",".join([_fmt(delta)] + [_fmt(v) for v in row]))
    lines.append(",".join(["visibility"] + [_fmt(v) for v in curve.visibilities]))
    print("\n".join(lines))
    return 0


def _audit_bridge(seed, count):
    worst = 0.0
    for i in range(count):
        slit_count = 1 + i % 2
        state = random_state(seed + i, 2 * slit_count, [1, 2, 3], components=1 + 2 * (i % 2))
        for order in (1, 2):
            a = reduced_density_matrix(state, order)
            b = reduced_density_matrix_oracle(state, order)
            worst = max(worst, float(np.max(np.abs(a.matrix - b.matrix))))
    return worst, 1e-11


def _audit_purity_equality(seed, count):
    worst = 0.0
    for i in range(count):
        state = random_state(seed + 1000 + i, 4, [1, 2], components=1 + 2 * (i % 2))
        geometry = random_geometry(seed + 2000 + i, 2)
        for order in (1, 2):
            field_matrix = field_density_matrix(state, geometry, order)
            reduced = reduced_density_matrix(state, order)
            worst = max(worst, abs(field_matrix.purity - reduced.purity))
    return worst, 1e-11


def _audit_field_particle_sum(seed, count):
    worst = 0.0
    for i in range(count):
        slit_count = 1 + i % 3
        state = random_state(seed + 3000 + i, 2 * slit_count, [1, 2], components=1 + 2 * (i % 2))
        geometry = FieldGeometry(slit_count=slit_count)
        kappa = 2 + (seed + i) % (2 * slit_count - 1)
        report = order_n_complementarity(state, geometry, 1, mode_dimension=kappa)
        worst = max(worst, abs(report.complementarity_residual))
    return worst, RESIDUAL_TOL


def _audit_duality(seed, count):
    worst = 0.0
    geometry = FieldGeometry(slit_count=2)
    for i in range(count):
        state = random_state(seed + 4000 + i, 4, [1, 2], components=1 + 2 * (i % 2), active_modes=(0, 2))
        report = triality_report(state, geometry)
        worst = max(
            worst,
            abs(report.field_purity - report.distinguishability**2 - report.visibility**2),
        )
    return worst, RESIDUAL_TOL


def _audit_triality(seed, count):
    worst = 0.0
    geometry = FieldGeometry(slit_count=2)
    for i in range(count):
        state = random_state(seed + 5000 + i, 4, [1, 2], components=1 + 2 * (i % 2), active_modes=(0, 2))
        report = triality_report(state, geometry)
        worst = max(worst, abs(report.triality_residual))
    return worst, RESIDUAL_TOL


def _audit_gauge_invariance(seed, count):
    worst = 0.0
    state = random_state(seed + 6000, 4, [1, 2], components=3)
    geometry = FieldGeometry(slit_count=2)
    base = (
        order_n_complementarity(state, geometry, 1).field_purity,
        degree_of_coherence(state, geometry, (1, 2)),
        total_visibility(state, geometry),
        distinguishability(state),
    )
    for i in range(count):
        other = random_geometry(seed + 7000 + i, 2)
        values = (
            order_n_complementarity(state, other, 1).field_purity,
            degree_of_coherence(state, other, (1, 2)),
            total_visibility(state, other),
            distinguishability(state),
        )
        for ref, val in zip(base, values):
            worst = max(worst, abs(val - ref) / max(1.0, abs(ref)))
    return worst, 1e-12


AUDIT_CHECKS = (
    ("bridge-identity", _audit_bridge),
    ("purity-equality", _audit_purity_equality),
    ("field-particle-sum", _audit_field_particle_sum),
    ("duality-equality", _audit_duality),
    ("triality-identity", _audit_triality),
    ("gauge-invariance", _audit_gauge_invariance),
)


def _cmd_audit(args):
    all_ok = True
    for name, check in AUDIT_CHECKS:
        residual, tolerance = check(args.seed, args.count)
        ok = residual < tolerance
        all_ok = all_ok and ok
        status = "PASS" if ok else "FAIL"
        print(f"{status} {name} max_residual={_fmt(residual)} tolerance={_fmt(tolerance)}")
    return 0 if all_ok else 1


def _orders_list(text):
    try:
        orders = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"orders must be comma-separated integers, got {text!r}") from None
    if not orders or any(n < 1 for n in orders):
        raise argparse.ArgumentTypeError("orders must be integers >= 1")
    return orders


def build_parser():
    parser = argparse.ArgumentParser(
        prog="slitlight",
        description="Field and photon correlations of quantized light at slit openings.",
        epilog=f"The size cap on matrix/vector element counts can be overridden via {CAP_ENV_VAR}.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="evaluate a scenario file and print a JSON report")
    run_p.add_argument("config", type=Path, help="scenario JSON file")
    run_p.add_argument("--kappa", type=int, default=None, help="mode dimension override (2..2L)")
    run_p.set_defaults(func=_cmd_run)

    sweep_p = sub.add_parser("sweep", help="run seeded random states and print a CSV table")
    sweep_p.add_argument("--seed", type=int, required=True)
    sweep_p.add_argument("--count", type=int, required=True, help="number of random states")
    sweep_p.add_argument("--slits", type=int, default=2)
    sweep_p.add_argument("--nmax", type=int, default=2, help="largest photon number in the support")
    sweep_p.add_argument("--orders", type=_orders_list, default=(1,), help="comma-separated correlation orders")
    sweep_p.add_argument("--kappa", type=int, default=None, help="mode dimension (defaults to 2L)")
    sweep_p.add_argument(
        "--polarized", action="store_true", help="restrict states to polarization 1 (one mode per slit)"
    )
    sweep_p.set_defaults(func=_cmd_sweep)

    fringe_p = sub.add_parser("fringe", help="print the Stokes fringe table of a two-slit scenario")
    fringe_p.add_argument("config", type=Path)
    fringe_p.add_argument("--samples", type=int, default=64)
    fringe_p.set_defaults(func=_cmd_fringe)

    audit_p = sub.add_parser("audit", help="run the identity suite on seeded random states")
    audit_p.add_argument("--seed", type=int, default=0)
    audit_p.add_argument("--count", type=int, default=25, help="random states per identity")
    audit_p.set_defaults(func=_cmd_audit)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except PhysicsError as exc:
        print(f"physics error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
