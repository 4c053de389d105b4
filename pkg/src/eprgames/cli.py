"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 data error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import bell, equilibria, ewl, games
from .qcore import Direction, StrategyProfile, TwoQubitState

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3

RENORM_LIMIT = 1e-6
RENORM_QUIET = 1e-12


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


# --- parsing ----------------------------------------------------------------


def parse_angle(text: str) -> float:
    """Radians, or degrees with a trailing 'deg'."""
    t = text.strip().lower()
    try:
        if t.endswith("deg"):
            return math.radians(float(t[:-3]))
        return float(t)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None


def parse_angles(text: str, count: int, name: str) -> list[float]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != count:
        raise UsageError(f"--{name} needs {count} comma-separated angles, got {len(parts)}")
    vals = [parse_angle(p) for p in parts]
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"--{name} angles must be finite")
    return vals


def parse_game(text: str) -> games.GameMatrix:
    try:
        vals = [float(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse game {text!r}") from None
    if len(vals) != 4 or not all(math.isfinite(v) for v in vals):
        raise UsageError("--game needs four finite numbers alpha,beta,gamma,delta")
    return games.GameMatrix(*vals)


def load_state(source: str, warnings: list) -> TwoQubitState:
    """A preset name, or a file of four whitespace-separated `re im` pairs."""
    if source in games.PRESET_STATES:
        return games.PRESET_STATES[source]
    try:
        with open(source) as fh:
            text = fh.read()
    except OSError as exc:
        raise DataError(f"state {source!r} is neither a preset nor a readable file: {exc}") from None
    try:
        nums = [float(x) for x in text.split()]
    except ValueError:
        raise DataError(f"state file {source!r} contains non-numeric data") from None
    if len(nums) != 8 or not all(math.isfinite(x) for x in nums):
        raise DataError(f"state file {source!r} must hold 8 finite numbers, found {len(nums)}")
    amps = np.array(nums[0::2]) + 1j * np.array(nums[1::2])
    norm2 = float(np.sum(np.abs(amps) ** 2))
    off = abs(norm2 - 1.0)
    if off > RENORM_LIMIT:
        raise DataError(f"state file {source!r} has squared norm {norm2!r}; off by more than {RENORM_LIMIT}")
    if off > RENORM_QUIET:
        warnings.append(f"state renormalized (squared norm was {norm2:.17g})")
    return TwoQubitState.normalized(amps)


def _direction(theta, phi, name) -> Direction:
    try:
        return Direction(theta, phi)
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}") from None


def _profile(text, name="profile") -> StrategyProfile:
    ta, pa, tb, pb = parse_angles(text, 4, name)
    return StrategyProfile(_direction(ta, pa, name), _direction(tb, pb, name))


# --- output -----------------------------------------------------------------


def fmt_float(x) -> str:
    return format(float(x), ".17g")


def to_json(obj, indent=0) -> str:
    """Deterministic JSON with every float at 17 significant digits."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return _json_str(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_json_str(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + to_json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _json_str(s: str) -> str:
    out = ['"']
    for ch in s:
        if ch in '"\\':
            out.append("\\" + ch)
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return fmt_float(v) if math.isfinite(v) else "nan"
    return str(v)


def to_csv(rows: list[dict], header=None) -> str:
    header = header or (list(rows[0]) if rows else [])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_cell(row.get(k)) for k in header])
    return buf.getvalue()


class Report:
    """What a command produced: JSON payload plus a flat table for CSV mode."""

    def __init__(self, payload, rows=None, header=None, exit_code=EXIT_OK):
        self.payload = payload
        self.rows = rows if rows is not None else ([payload] if isinstance(payload, dict) else payload)
        self.header = header
        self.exit_code = exit_code


# --- commands ---------------------------------------------------------------


def _quad_record(quad):
    p11, p12, p21, p22 = (float(x) for x in quad)
    return {"p11": p11, "p12": p12, "p21": p21, "p22": p22, "sum": p11 + p12 + p21 + p22}


def cmd_probs(args, state, game):
    ta, pa = parse_angles(args.alice, 2, "alice")
    tb, pb = parse_angles(args.bob, 2, "bob")
    a, b = _direction(ta, pa, "alice"), _direction(tb, pb, "bob")
    quad = games.quad_probabilities(state, a.theta, a.phi, b.theta, b.phi)
    return Report(_quad_record(quad))


def _phi_range(text):
    if text is None:
        return 0.0, 2 * np.pi
    lo, hi = parse_angles(text, 2, "phi-range")
    if not hi > lo:
        raise UsageError("--phi-range needs lo < hi")
    return lo, hi


def cmd_surface(args, state, game):
    res = args.resolution if args.resolution is not None else (21 if args.mode == "classical" else 64)
    if res < 2:
        raise UsageError("--resolution must be at least 2 for surfaces")
    vary = args.vary or ("pq" if args.mode == "classical" else "angles")
    if (args.mode, vary) not in (("classical", "pq"), ("quantum", "angles")):
        raise UsageError("surface supports --mode classical --vary pq or --mode quantum --vary angles")
    rows = []
    if vary == "pq":
        grid = np.linspace(0.0, 1.0, res)
        for p in grid:
            for q in grid:
                pi = games.classical_mixed(game, p, q)
                rows.append({"x": float(p), "y": float(q), "pi_a": pi.pi_a, "pi_b": pi.pi_b})
    else:
        lo, hi = _phi_range(args.phi_range)
        # Cell centres stay off the excluded axes when R is a multiple of 8;
        # otherwise some cells land on one and come out as nan.
        phis = lo + (np.arange(res) + 0.5) * (hi - lo) / res
        pa, pb = np.meshgrid(phis, phis, indexing="ij")
        pi = equilibria.family_payoff_state3(pa, pb, game.delta1, game.delta2)
        for i in range(res):
            for j in range(res):
                v = float(pi[i, j])
                rows.append({"x": float(phis[i]), "y": float(phis[j]), "pi_a": v, "pi_b": v})
    header = ["x", "y", "pi_a", "pi_b"]
    payload = {"mode": args.mode, "vary": vary, "resolution": res, "cells": rows}
    return Report(payload, rows, header)


def _cert_rows(certs):
    return [c.as_dict() for c in certs]


def cmd_nash(args, state, game):
    eps = args.epsilon if args.epsilon is not None else equilibria.DEFAULT_EPSILON
    if eps <= 0:
        raise UsageError("--epsilon must be positive")
    if args.nash_cmd == "classical":
        found = equilibria.classical_nash_2x2(game)
        rows = []
        for ne in found:
            pi = equilibria.classical_payoffs(game, ne)
            rows.append({"p_star": ne.p_star, "q_star": ne.q_star, "pi_a": pi.pi_a, "pi_b": pi.pi_b})
        return Report({"degenerate": found.degenerate, "equilibria": rows}, rows,
                      ["p_star", "q_star", "pi_a", "pi_b"])
    if args.nash_cmd == "family":
        pa, pb = parse_angle(args.phiA), parse_angle(args.phiB)
        try:
            sol = equilibria.ne_family_state3(pa, pb, game)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        res = equilibria.ne_conditions_state3(sol.profile)
        row = {
            "theta_a": sol.theta_a,
            "phi_a": sol.profile.a.phi,
            "theta_b": sol.theta_b,
            "phi_b": sol.profile.b.phi,
            "pi_a": sol.payoffs.pi_a,
            "pi_b": sol.payoffs.pi_b,
            "max_residual": float(max(abs(r) for r in res)),
        }
        return Report(row)
    resolution = args.resolution
    if args.nash_cmd == "certify":
        if args.profile is None:
            raise UsageError("nash certify needs --profile")
        r = resolution if resolution is not None else equilibria.DEFAULT_VERIFY_RESOLUTION
        if r < equilibria.MIN_RESOLUTION:
            raise UsageError(f"--resolution must be >= {equilibria.MIN_RESOLUTION}")
        cert = equilibria.certify_nash(state, game, _profile(args.profile), eps, r)
        rows = _cert_rows([cert])
        return Report(rows, rows)
    coarse = resolution if resolution is not None else equilibria.DEFAULT_SCAN_RESOLUTION
    verify = args.verify_resolution or equilibria.DEFAULT_VERIFY_RESOLUTION
    if min(coarse, verify) < equilibria.MIN_RESOLUTION:
        raise UsageError(f"resolutions must be >= {equilibria.MIN_RESOLUTION}")
    rows = _cert_rows(equilibria.scan_nash(state, game, coarse, eps, verify))
    header = ["theta_a", "phi_a", "theta_b", "phi_b", "pi_a", "pi_b",
              "max_gain_a", "max_gain_b", "epsilon", "resolution", "is_nash"]
    return Report(rows, rows, header)


def cmd_chsh(args, state, game):
    setting = bell.ChshSetting(*[
        _direction(t, p, "dirs")
        for t, p in zip(*[iter(parse_angles(args.dirs, 8, "dirs"))] * 2)
    ])
    lam = bell.chsh_lambda(state, setting)
    return Report({"lambda": lam, "violated": abs(lam) > 2})


def cmd_embed(args, state, game):
    if game.beta != game.gamma:
        raise UsageError("embed needs a game with beta == gamma")
    if args.profile is None:
        raise UsageError("embed needs --profile")
    res = bell.embedding_check_profile(game, state, _profile(args.profile))
    row = res.as_dict()
    return Report(row, [row], ["present", "p", "q", "reason", "discriminant"])


def _ewl_strategy(text, name):
    theta, phi = parse_angles(text, 2, name)
    try:
        return ewl.EwlStrategy(theta, phi)
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}") from None


def cmd_ewl(args, state, game):
    sa = _ewl_strategy(args.alice, "alice")
    sb = _ewl_strategy(args.bob, "bob")
    ent = parse_angle(args.ent)
    try:
        ent = ewl.entanglement(ent)
    except ValueError as exc:
        raise UsageError(f"--ent: {exc}") from None
    pi = ewl.ewl_payoffs(game, sa, sb, ent)
    row = {"pi_a": pi.pi_a, "pi_b": pi.pi_b}
    if args.gains:
        r = args.resolution if args.resolution is not None else 64
        if r < 2:
            raise UsageError("--resolution must be at least 2")
        row["max_gain_a"] = ewl.ewl_best_response_gain(game, (sa, sb), ent, "A", r)
        row["max_gain_b"] = ewl.ewl_best_response_gain(game, (sa, sb), ent, "B", r)
        row["resolution"] = r
    return Report(row)


def cmd_verify(args, state, game):
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    seed = args.seed if args.seed is not None else 0
    found = games.max_term_discrepancies(args.samples, seed, game)
    rows = []
    for state_id, per_term in found.items():
        for term, value in enumerate(per_term, start=1):
            rows.append({"state": state_id, "term": term, "max_discrepancy": float(value),
                         "pass": bool(value < args.tol)})
    ok = all(r["pass"] for r in rows)
    payload = {"samples": args.samples, "seed": seed, "tol": args.tol, "pass": ok, "terms": rows}
    return Report(payload, rows, ["state", "term", "max_discrepancy", "pass"],
                  EXIT_OK if ok else EXIT_VERIFY)


COMMANDS = {
    "probs": cmd_probs,
    "surface": cmd_surface,
    "nash": cmd_nash,
    "chsh": cmd_chsh,
    "embed": cmd_embed,
    "ewl": cmd_ewl,
    "verify": cmd_verify,
}


# --- argparse ---------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--state", default="maxent-i", help="preset name or amplitude file")
    p.add_argument("--game", default="3,0,5,1", help="alpha,beta,gamma,delta")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", "-o", help="write here instead of stdout")
    p.add_argument("--seed", type=int)
    p.add_argument("--resolution", type=int)
    p.add_argument("--epsilon", type=float)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="eprgames", description="Directional quantum games on two qubits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("probs", parents=[common], help="joint outcome probabilities")
    p.add_argument("--alice", required=True, help="theta,phi")
    p.add_argument("--bob", required=True, help="theta,phi")

    p = sub.add_parser("surface", parents=[common], help="payoff grids for plotting")
    p.add_argument("--mode", choices=("classical", "quantum"), default="classical")
    p.add_argument("--vary", choices=("pq", "angles"))
    p.add_argument("--phi-range", help="lo,hi for the angle surface (default 0,2pi)")

    p = sub.add_parser("nash", parents=[common], help="Nash equilibria")
    nsub = p.add_subparsers(dest="nash_cmd", required=True)
    nsub.add_parser("classical", parents=[common])
    n = nsub.add_parser("certify", parents=[common])
    n.add_argument("--profile", help="theta_a,phi_a,theta_b,phi_b")
    n = nsub.add_parser("scan", parents=[common])
    n.add_argument("--verify-resolution", type=int)
    n = nsub.add_parser("family", parents=[common])
    n.add_argument("--phiA", required=True)
    n.add_argument("--phiB", required=True)

    p = sub.add_parser("chsh", parents=[common], help="CHSH statistic")
    p.add_argument("--dirs", required=True, help="eight angles: a, a', b, b' as theta,phi pairs")

    p = sub.add_parser("embed", parents=[common], help="classical mixed-strategy embedding")
    p.add_argument("--profile", help="theta_a,phi_a,theta_b,phi_b")

    p = sub.add_parser("ewl", parents=[common], help="unitary-strategy baseline")
    p.add_argument("--alice", default="0,1.5707963267948966", help="theta,phi (default Q)")
    p.add_argument("--bob", default="0,1.5707963267948966", help="theta,phi (default Q)")
    p.add_argument("--ent", default="1.5707963267948966")
    p.add_argument("--gains", action="store_true", help="also report best-response gains")

    p = sub.add_parser("verify", parents=[common], help="numerical identity checks")
    p.add_argument("what", choices=("appendix",))
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-9)
    return parser


def render(report: Report, fmt: str, warnings: list) -> str:
    if fmt == "csv":
        return to_csv(report.rows, report.header)
    body = {"result": report.payload}
    if warnings:
        body["warnings"] = list(warnings)
    return to_json(body) + "\n"


def run(argv=None) -> tuple[int, str, str | None]:
    """Execute a command; returns (exit code, rendered text, output path)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    warnings: list[str] = []
    try:
        game = parse_game(args.game)
        state = load_state(args.state, warnings)
        report = COMMANDS[args.command](args, state, game)
    except UsageError as exc:
        print(f"eprgames: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, "", None
    except DataError as exc:
        print(f"eprgames: data error: {exc}", file=sys.stderr)
        return EXIT_DATA, "", None
    for w in warnings:
        print(f"eprgames: warning: {w}", file=sys.stderr)
    return report.exit_code, render(report, args.format, warnings), args.output


def main(argv=None) -> int:
    try:
        code, text, output = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
