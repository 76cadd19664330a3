"""Command-line front end.

Subcommands
-----------
``run``           evolve a state through a circuit and emit an amplitude CSV
``entropy-scan``  sweep (phi, theta) and emit entropy/separability rows
``schmidt``       pair normal form of a two-particle state as JSON
``check``         run the fast property suites

Exit codes: 0 success, 2 malformed input, 3 engine/family mismatch,
4 precondition failure, 5 internal invariant breach.  The environment
variable ``ANYONSIM_THREADS`` caps sweep parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .checks import run_all
from .entanglement import is_separable, particle_trace_rdm, slater_decompose, von_neumann_entropy
from .errors import FamilyMismatchError, InvariantBreachError, PreconditionError
from .fastpath import check_family, run_circuit_fastpath
from .optics import Circuit, bs, circuit_from_json_dict, run_circuit
from .presets import PRESETS
from .states import AnyonState, state_from_json_dict, wrap_phi
from .transmute import transmute_state

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_FAMILY = 3
EXIT_PRECONDITION = 4
EXIT_INVARIANT = 5

DEFAULT_PHI_GRID = "0:6.283185307179586:13"
DEFAULT_THETA_GRID = "0:3.141592653589793:9"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _parse_grid(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be 'start:stop:count', got {spec!r}")
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        raise ValueError("grid count must be >= 1")
    return np.linspace(start, stop, count)


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_state(args) -> AnyonState:
    if args.preset is not None:
        try:
            factory = PRESETS[args.preset]
        except KeyError:
            raise ValueError(f"unknown preset {args.preset!r}; available: {', '.join(sorted(PRESETS))}")
        return factory(wrap_phi(args.phi) if getattr(args, "phi", None) is not None else 0.0)
    if args.state is None:
        raise ValueError("either --state or --preset is required")
    return state_from_json_dict(_load_json(args.state))


def _max_workers() -> int:
    raw = os.environ.get("ANYONSIM_THREADS", "").strip()
    if raw:
        return max(1, int(raw))
    return min(4, os.cpu_count() or 1)


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def cmd_run(args) -> int:
    state = _load_state(args)
    if args.circuit is not None:
        circuit = circuit_from_json_dict(_load_json(args.circuit))
    else:
        circuit = Circuit(state.m, state.phi, ())
    if circuit.m != state.m:
        raise PreconditionError(f"circuit is over {circuit.m} modes, state over {state.m}")
    circuit = Circuit(circuit.m, state.phi, circuit.gates)

    engine = args.engine
    if engine == "both":
        try:
            check_family(circuit, allow_pa=True)
        except FamilyMismatchError as exc:
            print(f"warning: {exc}; downgrading engine 'both' to 'dense'", file=sys.stderr)
            engine = "dense"

    dense_out = run_circuit(state, circuit) if engine in ("dense", "both") else None
    fast_out = run_circuit_fastpath(state, circuit) if engine in ("fastpath", "both") else None
    final = dense_out if dense_out is not None else fast_out

    if engine == "both":
        keys = set(dense_out.amplitudes) | set(fast_out.amplitudes)
        delta = max(
            (abs(dense_out.amplitudes.get(k, 0.0) - fast_out.amplitudes.get(k, 0.0)) for k in keys),
            default=0.0,
        )
        print(f"max |dense - fastpath| = {delta:.3e}", file=sys.stderr)
        if delta > args.tol:
            raise InvariantBreachError(f"dense and fast-path amplitudes differ by {delta:.3e} > tol {args.tol:g}")

    out, close = _open_out(args.out)
    try:
        out.write("occ,re,im\n")
        from .states import occ_to_string

        for occ in sorted(final.amplitudes, key=lambda k: occ_to_string(k, final.m)):
            amp = final.amplitudes[occ]
            out.write(f"{occ_to_string(occ, final.m)},{_fmt(amp.real)},{_fmt(amp.imag)}\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def _bind_theta(circuit_data: dict, theta: float, phi: float) -> Circuit:
    gates = []
    for entry in circuit_data["gates"]:
        entry = dict(entry)
        if entry["kind"] in ("PS", "BS", "PA") and entry.get("theta") is None:
            entry["theta"] = theta
        gates.append(entry)
    return circuit_from_json_dict({"m": circuit_data["m"], "phi": phi, "gates": gates})


def cmd_entropy_scan(args) -> int:
    base = _load_state(args)
    circuit_data = _load_json(args.circuit) if args.circuit is not None else None
    phis = _parse_grid(args.phi_grid)
    thetas = _parse_grid(args.theta_grid)
    points = [(pi, pt, ti, tt) for pi, pt in enumerate(phis) for ti, tt in enumerate(thetas)]

    def one(point):
        _, phi, _, theta = point
        sector = wrap_phi(float(phi))
        state = transmute_state(base, sector)
        if circuit_data is not None:
            circ = _bind_theta(circuit_data, float(theta), sector)
        else:
            circ = Circuit(state.m, sector, (bs(1, 2, float(theta)),))
        evolved = run_circuit(state, circ)
        s_x = von_neumann_entropy(particle_trace_rdm(evolved, keep="x"))
        s_y = von_neumann_entropy(particle_trace_rdm(evolved, keep="y"))
        report = is_separable(evolved, tol=args.tol)
        rank = report.slater_rank if report.slater_rank is not None else -1
        return (point[0], point[2], float(phi), float(theta), s_x, s_y, report.e_sp, rank)

    with ThreadPoolExecutor(max_workers=_max_workers()) as pool:
        rows = sorted(pool.map(one, points))

    out, close = _open_out(args.out)
    try:
        out.write("phi,theta,S_x,S_y,E_SP,slater_rank\n")
        for _, _, phi, theta, s_x, s_y, e_sp, rank in rows:
            out.write(f"{_fmt(phi)},{_fmt(theta)},{_fmt(s_x)},{_fmt(s_y)},{_fmt(e_sp)},{rank}\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_schmidt(args) -> int:
    state = _load_state(args)
    dec = slater_decompose(state)
    report = {
        "z": [float(zk) for zk in dec.z],
        "rank": dec.rank,
        "modeBasis": [
            [{"re": float(v.real), "im": float(v.imag)} for v in row] for row in dec.mode_unitary
        ],
    }
    out, close = _open_out(args.out)
    try:
        json.dump(report, out, indent=2)
        out.write("\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_check(args) -> int:
    results = run_all(fast=not args.full)
    failed = False
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        print(f"[{tag}] {res.name} (max error {res.max_error:.3e})")
        failed = failed or not res.passed
    return 1 if failed else EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="anyonsim", description="fermionic-anyon circuit and entanglement toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_state_args(p, with_phi=False):
        p.add_argument("--state", help="path to a state JSON file")
        p.add_argument("--preset", help=f"named preset state ({', '.join(sorted(PRESETS))})")
        if with_phi:
            p.add_argument("--phi", type=float, default=None, help="statistics parameter for preset states")

    p_run = sub.add_parser("run", help="evolve a state through a circuit; emit amplitude CSV")
    add_state_args(p_run, with_phi=True)
    p_run.add_argument("--circuit", help="path to a circuit JSON file")
    p_run.add_argument("--engine", choices=("dense", "fastpath", "both"), default="dense")
    p_run.add_argument("--out", help="output path (default stdout)")
    p_run.add_argument("--tol", type=float, default=1e-10)
    p_run.set_defaults(func=cmd_run)

    p_scan = sub.add_parser("entropy-scan", help="sweep (phi, theta); emit entropy/separability CSV")
    add_state_args(p_scan)
    p_scan.add_argument("--circuit", help="circuit JSON; gates with null theta take the sweep angle")
    p_scan.add_argument("--phi-grid", default=DEFAULT_PHI_GRID, help="phi sweep as start:stop:count")
    p_scan.add_argument("--theta-grid", default=DEFAULT_THETA_GRID, help="theta sweep as start:stop:count")
    p_scan.add_argument("--out", help="output path (default stdout)")
    p_scan.add_argument("--tol", type=float, default=1e-8)
    p_scan.set_defaults(func=cmd_entropy_scan)

    p_schmidt = sub.add_parser("schmidt", help="pair normal form of a two-particle state as JSON")
    add_state_args(p_schmidt, with_phi=True)
    p_schmidt.add_argument("--out", help="output path (default stdout)")
    p_schmidt.set_defaults(func=cmd_schmidt)

    p_check = sub.add_parser("check", help="run the fast property suites")
    p_check.add_argument("--full", action="store_true", help="run the exhaustive variants")
    p_check.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FamilyMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAMILY
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InvariantBreachError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (json.JSONDecodeError, KeyError, ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
