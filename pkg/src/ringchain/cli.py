"""Command-line front end: every analysis as a reproducible, scriptable run.

Each run writes one table, in CSV (default) or JSON, preceded by metadata
echoing the full configuration and package version so that any output file
identifies the run that produced it.  Numbers are serialized with 17
significant digits (round-trip exact for 64-bit floats); identical
configurations produce byte-identical output.

Exit codes: 0 success, 1 invalid arguments, 2 solver failure, 3 selfcheck
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .asymptotics import (
    large_l_gap_spacing,
    large_l_squeeze,
    lemma_witnesses,
    small_l_lower_band,
    small_l_upper_band,
    solve_negative_edge,
)
from .bands import dispersion, flat_bands, negative_bands, positive_bands
from .crosscheck import match_roots
from .errors import LemmaWitnessError, RingChainError, SolverError
from .measure import gap_certificate, m_ell_membership, spectrum_measure
from .model import ChainSpec, Quasimomentum, make_coupling
from .secular import vertex_scattering

__all__ = ["main"]

_SCHEMA_VERSION = 1
_OUTPUT_DIR_ENV = "RINGCHAIN_OUTPUT_DIR"


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _write_report(args, columns: list[str], rows: list[list], config: dict) -> None:
    config = dict(config)
    config["command"] = args.command
    config["format"] = args.format
    text_rows = [[_fmt(v) for v in row] for row in rows]
    if args.format == "csv":
        lines = [f"# ringchain {__version__}"]
        cfg = " ".join(f"{k}={_fmt(v)}" for k, v in sorted(config.items()))
        lines.append(f"# config: {cfg}")
        lines.append(",".join(columns))
        lines.extend(",".join(r) for r in text_rows)
        payload = "\n".join(lines) + "\n"
    else:
        obj = {
            "schema_version": _SCHEMA_VERSION,
            "version": __version__,
            "config": config,
            "rows": [dict(zip(columns, row)) for row in rows],
        }
        payload = json.dumps(obj, sort_keys=True, indent=2) + "\n"

    if args.output == "-":
        sys.stdout.write(payload)
        return
    path = args.output
    out_dir = os.environ.get(_OUTPUT_DIR_ENV)
    if out_dir and not os.path.isabs(path):
        path = os.path.join(out_dir, path)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(payload)


def _chain_spec(args) -> ChainSpec:
    if getattr(args, "ell_pi", False):
        if args.ell is not None:
            raise ValueError("--ell and --ell-pi are mutually exclusive")
        return ChainSpec(math.pi)
    return ChainSpec(args.ell if args.ell is not None else 0.0)


def _config_common(args, spec: ChainSpec) -> dict:
    return {"ell": spec.link_length, "version": __version__}


# ---------------------------------------------------------------------------
# subcommands


def _cmd_flat(args) -> int:
    spec = _chain_spec(args)
    rows = [
        [fb.energy, fb.embedded, fb.source]
        for fb in flat_bands(spec, args.e_max)
    ]
    cfg = _config_common(args, spec)
    cfg["e_max"] = args.e_max
    _write_report(args, ["energy", "embedded", "source"], rows, cfg)
    return 0


def _band_rows(bands) -> list[list]:
    return [
        [i, b.e_lo, b.e_hi, b.edge_theta_lo, b.edge_theta_hi]
        for i, b in enumerate(bands)
    ]


def _cmd_bands(args) -> int:
    spec = _chain_spec(args)
    bands = positive_bands(spec, args.k_max, resolution=args.resolution)
    cfg = _config_common(args, spec)
    cfg.update(k_max=args.k_max, resolution=args.resolution)
    _write_report(
        args,
        ["band_index", "e_lo", "e_hi", "edge_theta_lo", "edge_theta_hi"],
        _band_rows(bands),
        cfg,
    )
    return 0


def _cmd_negative(args) -> int:
    spec = _chain_spec(args)
    bands = negative_bands(spec)
    cfg = _config_common(args, spec)
    _write_report(
        args,
        ["band_index", "e_lo", "e_hi", "edge_theta_lo", "edge_theta_hi"],
        _band_rows(bands),
        cfg,
    )
    return 0


def _cmd_dispersion(args) -> int:
    spec = _chain_spec(args)
    q = Quasimomentum(args.theta)
    sols = dispersion(spec, q, (args.k_min, args.k_max), resolution=args.resolution)
    rows = [[q.theta, sp.k, sp.energy] for sp in sols]
    cfg = _config_common(args, spec)
    cfg.update(theta=q.theta, k_min=args.k_min, k_max=args.k_max, resolution=args.resolution)
    _write_report(args, ["theta", "k", "energy"], rows, cfg)
    return 0


def _cmd_measure(args) -> int:
    spec = _chain_spec(args)
    rows = []
    for window in args.e_max:
        rep = spectrum_measure(spec, window, resolution=args.resolution)
        rows.append([window, rep.measure, rep.fraction, rep.band_count, rep.gap_count])
    cfg = _config_common(args, spec)
    cfg.update(e_max=",".join(_fmt(w) for w in args.e_max), resolution=args.resolution)
    _write_report(
        args, ["K", "measure", "fraction", "band_count", "gap_count"], rows, cfg
    )
    return 0


def _cmd_certify(args) -> int:
    spec = _chain_spec(args)
    rows = []
    for k in args.k:
        cert = gap_certificate(spec, k)
        joint = m_ell_membership(k, spec.link_length) and m_ell_membership(k, math.pi)
        rows.append([k, cert.value, joint])
    cfg = _config_common(args, spec)
    cfg["k"] = ",".join(_fmt(k) for k in args.k)
    _write_report(args, ["k", "certificate", "joint_m_membership"], rows, cfg)
    return 0


def _cmd_asymptotics(args) -> int:
    spec = _chain_spec(args)
    ell = spec.link_length
    if ell <= 0:
        raise ValueError("asymptotics requires a loose chain (ell > 0)")
    q0 = Quasimomentum(0.0)
    rows = []

    upper = small_l_upper_band(ell, q0)
    if upper.regime_warning:
        print(f"warning: {upper.regime_warning}", file=sys.stderr)
    kap0 = solve_negative_edge(spec, 1.0, "upper")
    kap_pi = solve_negative_edge(spec, -1.0, "upper")
    edge = -(kap0 * kap0)
    rows.append(
        ["upper_band_lower_edge", upper.lower_edge_energy_pred, edge,
         edge / upper.lower_edge_energy_pred]
    )
    width = kap0 * kap0 - kap_pi * kap_pi
    rows.append(["upper_band_width", upper.width_pred, width, width / upper.width_pred])

    lower = small_l_lower_band(ell)
    kap_low = solve_negative_edge(spec, 1.0, "lower")
    rows.append(
        ["lower_band_kappa", lower.kappa_pred, kap_low, kap_low / lower.kappa_pred]
    )

    sq = large_l_squeeze(ell)
    if sq.regime_warning:
        print(f"warning: {sq.regime_warning}", file=sys.stderr)
    bands = negative_bands(spec)
    if len(bands) == 2:
        for name, pred, band in (
            ("squeeze_lower_band_energy", sq.energy_pair[0], bands[0]),
            ("squeeze_upper_band_energy", sq.energy_pair[1], bands[1]),
        ):
            center = 0.5 * (band.e_lo + band.e_hi)
            rows.append([name, pred, center, center / pred])
    for n in (1, 2, 3):
        rows.append([f"gap_spacing_n{n}", large_l_gap_spacing(n, ell), None, None])

    cfg = _config_common(args, spec)
    _write_report(args, ["quantity", "predicted", "solved", "ratio"], rows, cfg)
    return 0


def _cmd_scattering(args) -> int:
    rows = []
    eye = np.eye(args.n)
    for k in args.k:
        s = vertex_scattering(args.n, k)
        rows.append(
            [
                args.n,
                k,
                float(np.linalg.norm(s - eye, 2)),
                float(np.linalg.norm(s.conj().T @ s - eye, 2)),
            ]
        )
    cfg = {"n": args.n, "k": ",".join(_fmt(k) for k in args.k), "version": __version__}
    _write_report(
        args, ["n", "k", "s_minus_i_norm", "unitarity_residual"], rows, cfg
    )
    return 0


def _cmd_selfcheck(args) -> int:
    rng = np.random.default_rng(args.seed)
    rows = []
    failures = 0

    def record(name: str, ok: bool, detail: str) -> None:
        nonlocal failures
        rows.append([name, "pass" if ok else "fail", detail])
        if not ok:
            failures += 1

    try:
        lemma_witnesses()
        record("lemma_witnesses", True, "all reference values reproduced")
    except LemmaWitnessError as exc:
        record("lemma_witnesses", False, str(exc))

    for n in range(2, 9):
        u = make_coupling(n).matrix
        res = float(np.linalg.norm(u.conj().T @ u - np.eye(n)))
        respow = float(np.linalg.norm(np.linalg.matrix_power(u, n) - np.eye(n)))
        record(f"coupling_unitary_n{n}", res < 1e-12 and respow < 1e-12,
               f"unitarity {res:.2e}; U^n - I {respow:.2e}")

    for n in (3, 4):
        ks = rng.uniform(0.01, 100.0, 25)
        worst = max(
            float(np.linalg.norm(vertex_scattering(n, k).conj().T
                                 @ vertex_scattering(n, k) - np.eye(n)))
            for k in ks
        )
        record(f"scattering_unitary_n{n}", worst < 1e-10, f"worst residual {worst:.2e}")

    parity_small = float(np.linalg.norm(vertex_scattering(3, 1e4) - np.eye(3), 2))
    parity_big = float(np.linalg.norm(vertex_scattering(4, 1e4) - np.eye(4), 2))
    record("scattering_parity", parity_small < 1e-3 and parity_big >= 1.0,
           f"odd {parity_small:.2e}; even {parity_big:.2e}")

    for ell in (0.0, 1.0):
        spec = ChainSpec(ell)
        for branch, lo, hi in (("positive", 0.1, 12.0), ("negative", 0.1, 4.0)):
            rep = match_roots(spec, branch, lo, hi, n_brackets=60,
                              seed=int(rng.integers(2**31)))
            record(
                f"oracle_equivalence_ell{ell:g}_{branch}",
                rep.ok,
                f"{rep.matched_roots} roots; worst {rep.worst_distance:.2e}; "
                f"{len(rep.mismatches)} mismatches",
            )

    spec1 = ChainSpec(1.0)
    ks = rng.uniform(0.5, 80.0, 500)
    bad = 0
    from .bands import phi_positive
    from .measure import GapCertificate
    for k in ks:
        if gap_certificate(spec1, float(k)) is GapCertificate.STRONG:
            if abs(float(phi_positive(spec1, float(k)))) <= 1.0:
                bad += 1
    record("certificate_soundness", bad == 0, f"{bad} certified points inside a band")

    n_pi = len(negative_bands(ChainSpec(math.pi)))
    n_one = len(negative_bands(spec1))
    record("negative_band_dichotomy", n_pi == 1 and n_one == 2,
           f"ell=pi: {n_pi} bands; ell=1: {n_one} bands")

    cfg = {"seed": args.seed, "version": __version__}
    _write_report(args, ["check", "status", "detail"], rows, cfg)
    return 3 if failures else 0


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        raise ValueError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ringchain", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ell=True):
        if ell:
            p.add_argument("--ell", type=float, default=None,
                           help="connecting link length (default 0: tight chain)")
            p.add_argument("--ell-pi", action="store_true",
                           help="set the link length to pi exactly")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", default="-",
                       help="output path, or - for standard output; relative "
                            f"paths resolve against ${_OUTPUT_DIR_ENV} when set")
        p.add_argument("--resolution", type=float, default=1e-3,
                       help="scan step in k (default 1e-3)")

    p = sub.add_parser("flat", help="flat bands up to an energy cap")
    common(p)
    p.add_argument("--e-max", type=float, required=True)
    p.set_defaults(func=_cmd_flat)

    p = sub.add_parser("bands", help="positive ac bands up to k_max")
    common(p)
    p.add_argument("--k-max", type=float, required=True)
    p.set_defaults(func=_cmd_bands)

    p = sub.add_parser("negative", help="negative ac bands")
    common(p)
    p.set_defaults(func=_cmd_negative)

    p = sub.add_parser("dispersion", help="roots of Phi(k) = cos(theta)")
    common(p)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--k-min", type=float, default=0.0)
    p.add_argument("--k-max", type=float, required=True)
    p.set_defaults(func=_cmd_dispersion)

    p = sub.add_parser("measure", help="spectral measure in [0, K] windows")
    common(p)
    p.add_argument("--e-max", type=float, nargs="+", required=True,
                   help="one or more window caps K")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("certify", help="sufficient gap certificates at given k")
    common(p)
    p.add_argument("--k", type=float, nargs="+", required=True)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("asymptotics", help="asymptotic predictions vs solved values")
    common(p)
    p.set_defaults(func=_cmd_asymptotics)

    p = sub.add_parser("scattering", help="vertex scattering matrix diagnostics")
    common(p, ell=False)
    p.add_argument("--n", type=int, required=True, help="vertex degree")
    p.add_argument("--k", type=float, nargs="+",
                   default=[1.0, 10.0, 100.0, 1000.0, 10000.0])
    p.set_defaults(func=_cmd_scattering)

    p = sub.add_parser("selfcheck", help="run the built-in validation suite")
    common(p, ell=False)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 2
    except RingChainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
