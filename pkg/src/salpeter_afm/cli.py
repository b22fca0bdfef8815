"""Command-line front end: bound | reference | scan | qtable | verify.

Configuration is a single JSON document; all quantities are GeV-based
natural units.  Exit codes: 0 success, 1 verification failure, 2 domain
error (no bound state / collapse), 3 bad configuration.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import core, reference, verification
from .errors import AfmError, CollapseDetected, NoBoundState, UnsupportedCase
from .oracle import SpectralGrid
from .types import GlobalQ, PowerLawPotential, QuantumState

MODES = ("bound", "reference", "scan", "qtable", "verify")
FORMATS = ("text", "csv", "json")


class ConfigError(ValueError):
    """Raised for malformed or inconsistent run configuration."""


def _require_keys(mapping: dict, allowed: set[str], where: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in {where}")


def _parse_potential(raw) -> PowerLawPotential:
    if not isinstance(raw, list) or not raw:
        raise ConfigError("potential must be a non-empty list of terms")
    terms = []
    for item in raw:
        if not isinstance(item, dict):
            raise ConfigError("each potential term must be an object")
        _require_keys(item, {"alpha", "exponent"}, "potential term")
        try:
            terms.append((float(item["alpha"]), float(item["exponent"])))
        except KeyError as err:
            raise ConfigError(f"potential term missing {err}") from None
    try:
        return PowerLawPotential(tuple(terms))
    except ValueError as err:
        raise ConfigError(str(err)) from None


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration; see README for the JSON schema."""

    mode: str
    masses: tuple[float, float] | None = None
    sigma: float | None = None
    potential: PowerLawPotential | None = None
    state: QuantumState | None = None
    p: float | None = None
    q: float | None = None
    grid_points: int | None = None
    box_radius: float | None = None
    scan: dict | None = None
    qtable: dict | None = None
    suite: str | None = None
    out: str | None = None
    format: str = "text"

    TOP_KEYS = {
        "mode", "masses", "sigma", "potential", "state", "p", "q",
        "grid", "scan", "qtable", "suite", "out", "format",
    }

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        if not isinstance(raw, dict):
            raise ConfigError("configuration must be a JSON object")
        _require_keys(raw, cls.TOP_KEYS, "configuration")
        mode = raw.get("mode")
        if mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {mode!r}")

        masses = None
        if "masses" in raw:
            pair = raw["masses"]
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ConfigError("masses must be a pair [m1, m2]")
            masses = (float(pair[0]), float(pair[1]))
            if min(masses) < 0:
                raise ConfigError("masses must be non-negative")

        state = None
        if "state" in raw:
            _require_keys(raw["state"], {"n", "l"}, "state")
            try:
                state = QuantumState(raw["state"].get("n", 0), raw["state"].get("l", 0))
            except ValueError as err:
                raise ConfigError(str(err)) from None

        potential = _parse_potential(raw["potential"]) if "potential" in raw else None

        grid_points = box_radius = None
        if "grid" in raw:
            _require_keys(raw["grid"], {"points", "box_radius"}, "grid")
            if "points" in raw["grid"]:
                grid_points = int(raw["grid"]["points"])
            if "box_radius" in raw["grid"]:
                box_radius = float(raw["grid"]["box_radius"])

        scan = None
        if "scan" in raw:
            _require_keys(
                raw["scan"],
                {"variable", "values", "start", "stop", "step", "include_reference"},
                "scan",
            )
            scan = dict(raw["scan"])

        qtable = None
        if "qtable" in raw:
            _require_keys(raw["qtable"], {"p_values", "states", "numeric"}, "qtable")
            qtable = dict(raw["qtable"])

        if "p" in raw and "q" in raw:
            raise ConfigError("give either the auxiliary exponent p or an explicit Q, not both")

        fmt = raw.get("format", "text")
        if fmt not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")

        sigma = float(raw["sigma"]) if "sigma" in raw else None
        if sigma is not None and sigma <= 0:
            raise ConfigError("sigma must be positive")

        return cls(
            mode=mode,
            masses=masses,
            sigma=sigma,
            potential=potential,
            state=state,
            p=float(raw["p"]) if "p" in raw else None,
            q=float(raw["q"]) if "q" in raw else None,
            grid_points=grid_points,
            box_radius=box_radius,
            scan=scan,
            qtable=qtable,
            suite=raw.get("suite"),
            out=raw.get("out"),
            format=fmt,
        )

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        try:
            with open(path, encoding="utf-8") as handle:
                raw = json.load(handle)
        except (OSError, json.JSONDecodeError) as err:
            raise ConfigError(f"cannot read configuration {path}: {err}") from None
        return cls.from_dict(raw)

    def to_dict(self) -> dict:
        """Canonical re-emission; parsing the result reproduces this config."""
        out: dict = {"mode": self.mode}
        if self.masses is not None:
            out["masses"] = list(self.masses)
        if self.sigma is not None:
            out["sigma"] = self.sigma
        if self.potential is not None:
            out["potential"] = [
                {"alpha": a, "exponent": lam} for a, lam in self.potential.terms
            ]
        if self.state is not None:
            out["state"] = {"n": self.state.n, "l": self.state.l}
        if self.p is not None:
            out["p"] = self.p
        if self.q is not None:
            out["q"] = self.q
        if self.grid_points is not None or self.box_radius is not None:
            grid = {}
            if self.grid_points is not None:
                grid["points"] = self.grid_points
            if self.box_radius is not None:
                grid["box_radius"] = self.box_radius
            out["grid"] = grid
        if self.scan is not None:
            out["scan"] = self.scan
        if self.qtable is not None:
            out["qtable"] = self.qtable
        if self.suite is not None:
            out["suite"] = self.suite
        if self.out is not None:
            out["out"] = self.out
        if self.format != "text":
            out["format"] = self.format
        return out


# ---------------------------------------------------------------------------
# shared helpers


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _resolve_global_q(config: RunConfig) -> GlobalQ:
    if config.state is None and config.q is None:
        raise ConfigError("a state {n, l} or an explicit q is required")
    if config.q is not None:
        p = config.p
        if p is None and config.potential is not None:
            active = config.potential.active_terms()
            if len(active) == 1:
                p = active[0][1]  # proportional auxiliary choice
        return GlobalQ.explicit(config.q, p)
    if config.p is None:
        raise ConfigError("give the auxiliary exponent p or an explicit q")
    try:
        return core.q_exact(config.p, config.state)
    except UnsupportedCase:
        return core.q_numeric(config.p, config.state)


def _grid_override(config: RunConfig) -> SpectralGrid | None:
    if config.grid_points is None and config.box_radius is None:
        return None
    if config.grid_points is None or config.box_radius is None:
        raise ConfigError("grid overrides need both points and box_radius")
    return SpectralGrid(config.box_radius, config.grid_points)


def _window_hint(config: RunConfig, q: GlobalQ) -> str:
    potential = config.potential
    if potential is None:
        return ""
    active = potential.active_terms()
    if len(active) == 1 and active[0][1] == -1.0 and 0.0 in (config.masses or ()):
        a = active[0][0]
        side = ""
        if q.value >= a:
            side = "no binding: Q >= a; "
        elif q.value <= a / 2.0:
            side = "collapse: Q <= a/2; "
        return f" ({side}heavy-light Coulomb binds only for a/2 < Q < a; here a={a:g}, Q={q.value:g})"
    return ""


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_bound(config: RunConfig) -> int:
    if config.masses is None or config.potential is None:
        raise ConfigError("bound mode needs masses and a potential")
    q = _resolve_global_q(config)
    m1, m2 = config.masses
    try:
        sol = core.solve_afm(m1, m2, config.potential, q)
    except (NoBoundState, CollapseDetected) as err:
        sys.stderr.write(f"error: {err}{_window_hint(config, q)}\n")
        return 2
    res = core.residuals(sol, m1, m2, config.potential, q)
    r1, r2 = core.rotation_radii(sol)
    cert = (
        core.concavity_certificate(config.potential, q.p)
        if q.p is not None
        else None
    )
    reason = cert.reason if cert is not None else "not_certified"
    if config.format == "json":
        record = {
            "mass": sol.mass,
            "r0": sol.r0,
            "p0": sol.p0,
            "nu1": sol.nu1,
            "nu2": sol.nu2,
            "rotation_radii": [r1, r2],
            "q": {"value": q.value, "source": q.source, "p": q.p},
            "certified_upper_bound": sol.certified_upper_bound,
            "certificate_reason": reason,
            "residuals": {"mass": res[0], "q": res[1], "virial": res[2]},
        }
        _emit(json.dumps(record, indent=2) + "\n", config.out)
    else:
        lines = [
            f"mass          M   = {_fmt(sol.mass)} GeV",
            f"mean radius   r0  = {_fmt(sol.r0)} GeV^-1",
            f"mean momentum p0  = {_fmt(sol.p0)} GeV",
            f"einbein       nu1 = {_fmt(sol.nu1)} GeV",
            f"einbein       nu2 = {_fmt(sol.nu2)} GeV",
            f"radii split   r1  = {_fmt(r1)}, r2 = {_fmt(r2)} GeV^-1",
            f"global Q          = {_fmt(q.value)} [{q.describe()}]",
            f"upper bound       = {'yes' if sol.certified_upper_bound else 'no'} ({reason})",
            f"residuals         = mass {res[0]:.2e}, q {res[1]:.2e}, virial {res[2]:.2e}",
        ]
        _emit("\n".join(lines) + "\n", config.out)
    return 0


def cmd_reference(config: RunConfig) -> int:
    if config.masses is None or config.potential is None or config.state is None:
        raise ConfigError("reference mode needs masses, a potential, and a state")
    m1, m2 = config.masses
    problem = reference.SseProblem(
        m1, m2, config.potential, config.state, sigma=config.sigma, grid=_grid_override(config)
    )
    try:
        mass = reference.sse_eigenvalue(problem)
    except (NoBoundState, CollapseDetected) as err:
        sys.stderr.write(f"error: {err}\n")
        return 2
    if config.format == "json":
        _emit(json.dumps({"mass": mass}) + "\n", config.out)
    else:
        _emit(f"reference mass M = {_fmt(mass)} GeV\n", config.out)
    return 0


def _scan_values(section: dict) -> list[float]:
    if "values" in section:
        return [float(v) for v in section["values"]]
    try:
        start, stop, step = (float(section[k]) for k in ("start", "stop", "step"))
    except KeyError:
        raise ConfigError("scan needs either values or start/stop/step") from None
    if step <= 0:
        raise ConfigError("scan step must be positive")
    values = []
    x = start
    while x <= stop + 1e-12 * max(abs(stop), 1.0):
        values.append(round(x, 12))
        x += step
    return values


def _single_term(config: RunConfig, exponent: float, what: str) -> float:
    active = config.potential.active_terms() if config.potential else ()
    if len(active) != 1 or active[0][1] != exponent:
        raise ConfigError(f"{what} requires a single potential term with exponent {exponent:g}")
    return active[0][0]


def cmd_scan(config: RunConfig) -> int:
    if config.scan is None or config.potential is None or config.state is None:
        raise ConfigError("scan mode needs scan, potential, and state sections")
    variable = config.scan.get("variable")
    values = _scan_values(config.scan)
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    if variable == "m":
        _scan_mass(config, values, writer)
    elif variable == "Q":
        _scan_q(config, values, writer)
    else:
        raise ConfigError("scan variable must be 'm' or 'Q'")
    _emit(buffer.getvalue(), config.out)
    return 0


def _scan_mass(config: RunConfig, values: list[float], writer) -> None:
    """Heavy-light linear scan: masses (0, m), both analytic Q choices,
    reference value, and the two expansions."""
    b = _single_term(config, 1.0, "the mass scan")
    state = config.state
    include_ref = bool(config.scan.get("include_reference", True))
    q1 = core.q_exact(1, state) if state.l == 0 else None
    q2 = core.q_exact(2, state)
    writer.writerow(["m", "M_afm_Q1", "M_afm_Q2", "M_ref", "M_ur", "M_nr"])
    for m in values:
        row = [_fmt(m)]
        row.append(_fmt(core.linear_closed(m, b, q1).mass) if q1 is not None else "n/a")
        row.append(_fmt(core.linear_closed(m, b, q2).mass))
        if include_ref:
            try:
                problem = reference.SseProblem(0.0, m, config.potential, state)
                row.append(_fmt(reference.sse_eigenvalue(problem)))
            except AfmError as err:
                row.append(type(err).__name__)
        else:
            row.append("")
        row.append(_fmt(core.linear_ur_expansion(m, b, q2)))
        row.append(_fmt(core.linear_nr_expansion(m, b, q2)) if m > 0 else "n/a")
        writer.writerow(row)


def _scan_q(config: RunConfig, values: list[float], writer) -> None:
    """Heavy-light Coulomb sweep across the binding window, in scaled units:
    radius in a/m, mass in m."""
    a = _single_term(config, -1.0, "the Q sweep")
    if config.masses is None:
        raise ConfigError("the Q sweep needs masses [0, m]")
    m = max(config.masses)
    if m <= 0:
        raise ConfigError("the Q sweep needs one positive mass")
    writer.writerow(["Q", "r0_am", "M_over_m"])
    for qv in values:
        try:
            sol = core.coulomb_closed(m, a, GlobalQ.explicit(qv, -1.0))
            writer.writerow([_fmt(qv), _fmt(sol.r0 * m / a), _fmt(sol.mass / m)])
        except AfmError as err:
            writer.writerow([_fmt(qv), type(err).__name__, type(err).__name__])


def cmd_qtable(config: RunConfig) -> int:
    if config.qtable is None:
        raise ConfigError("qtable mode needs a qtable section")
    try:
        p_values = [float(p) for p in config.qtable["p_values"]]
        states = [QuantumState(int(n), int(l)) for n, l in config.qtable["states"]]
    except (KeyError, TypeError, ValueError) as err:
        raise ConfigError(f"bad qtable section: {err}") from None
    with_numeric = bool(config.qtable.get("numeric", True))
    rows = []
    for p in p_values:
        for state in states:
            analytic = numeric = None
            try:
                analytic = core.q_exact(p, state)
            except UnsupportedCase:
                pass
            if with_numeric or analytic is None:
                numeric = core.q_numeric(p, state)
            best = analytic or numeric
            delta = (
                abs(analytic.value - numeric.value)
                if analytic is not None and numeric is not None
                else None
            )
            rows.append((p, state.n, state.l, best.value, best.describe(), delta))
    if config.format == "json":
        payload = [
            {"p": p, "n": n, "l": l, "q": qv, "source": src, "cross_check": delta}
            for p, n, l, qv, src, delta in rows
        ]
        _emit(json.dumps(payload, indent=2) + "\n", config.out)
    elif config.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerow(["p", "n", "l", "Q", "source", "cross_check"])
        for p, n, l, qv, src, delta in rows:
            writer.writerow([_fmt(p), n, l, _fmt(qv), src, _fmt(delta) if delta is not None else ""])
        _emit(buffer.getvalue(), config.out)
    else:
        lines = [f"{'p':>6} {'n':>3} {'l':>3} {'Q':>14}  {'source':<16} {'cross-check':>12}"]
        for p, n, l, qv, src, delta in rows:
            check = f"{delta:.2e}" if delta is not None else "-"
            lines.append(f"{p:>6g} {n:>3} {l:>3} {qv:>14.8f}  {src:<16} {check:>12}")
        _emit("\n".join(lines) + "\n", config.out)
    return 0


def cmd_verify(config: RunConfig) -> int:
    suite = config.suite or "all"
    try:
        results = verification.run_suite(suite)
    except KeyError as err:
        raise ConfigError(str(err)) from None
    if config.format == "json":
        payload = [
            {
                "name": r.name,
                "passed": r.passed,
                "value": r.value,
                "expected": r.expected,
                "tol": r.tol,
                "detail": r.detail,
            }
            for r in results
        ]
        _emit(json.dumps(payload, indent=2) + "\n", config.out)
    else:
        text = "\n".join(r.line() for r in results)
        n_fail = sum(not r.passed for r in results)
        text += f"\n{len(results) - n_fail}/{len(results)} checks passed\n"
        _emit(text, config.out)
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="salpeter-afm",
        description="Variational upper bounds and reference eigenvalues for the "
        "two-body spinless Salpeter equation (GeV units).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_config in (
        ("bound", True),
        ("reference", True),
        ("scan", True),
        ("qtable", True),
        ("verify", False),
    ):
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", required=needs_config, help="path to a JSON configuration")
        cmd.add_argument("--out", help="write output to this path instead of stdout")
        cmd.add_argument("--format", choices=FORMATS, help="output format")
        cmd.add_argument("--grid-points", type=int, help="override the grid point count")
        cmd.add_argument("--box-radius", type=float, help="override the box radius (GeV^-1)")
        if name == "verify":
            cmd.add_argument("--suite", help="suite name (default: all)")
    return parser


def _apply_overrides(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    updates = {}
    if args.out:
        updates["out"] = args.out
    if args.format:
        updates["format"] = args.format
    if args.grid_points:
        updates["grid_points"] = args.grid_points
    if args.box_radius:
        updates["box_radius"] = args.box_radius
    if getattr(args, "suite", None):
        updates["suite"] = args.suite
    if not updates:
        return config
    from dataclasses import replace

    return replace(config, **updates)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.config:
            config = RunConfig.from_file(args.config)
            if config.mode != args.command:
                raise ConfigError(
                    f"configuration mode {config.mode!r} does not match command {args.command!r}"
                )
        else:
            config = RunConfig(mode=args.command)
        config = _apply_overrides(config, args)
        handler = {
            "bound": cmd_bound,
            "reference": cmd_reference,
            "scan": cmd_scan,
            "qtable": cmd_qtable,
            "verify": cmd_verify,
        }[args.command]
        return handler(config)
    except ConfigError as err:
        sys.stderr.write(f"configuration error: {err}\n")
        return 3
    except (NoBoundState, CollapseDetected) as err:
        sys.stderr.write(f"error: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
