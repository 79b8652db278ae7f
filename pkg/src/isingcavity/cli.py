"""Command-line front end.

The CLI is a thin client of the compute service: every subcommand builds a
request model, dispatches it (in-process by default, over HTTP when
``--server`` points at a running instance) and serializes the response to
CSV/JSON files.  Exit codes: 0 success, 2 configuration problem, 3
numerical failure, 4 SQUID inductance divergence.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click
from pydantic import ValidationError

from .errors import (
    CriticalPointError,
    DomainError,
    InductanceDivergenceError,
    NoBistabilityError,
    RootScanError,
)
from .output import format_value, write_json, write_table
from .presets import PRESETS
from .service import handlers
from .service import schemas as sc

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_DIVERGENCE = 4

_ROUTES = {
    "/steady-states": (handlers.compute_steady_states, sc.SteadyStatesResponse),
    "/scurve": (handlers.compute_scurve, sc.ScurveResponse),
    "/sweep": (handlers.compute_sweep, sc.SweepResponse),
    "/thresholds": (handlers.compute_thresholds, sc.ThresholdsResponse),
    "/fig2": (handlers.compute_fig2, sc.Fig2Response),
    "/circuit/derive": (handlers.compute_circuit, sc.DerivedCouplingsOut),
    "/tfim/observables": (handlers.compute_tfim, sc.TfimResponse),
}


class ConfigError(Exception):
    pass


@dataclass
class CliContext:
    config: dict
    out: Path
    fmt: str
    server: str | None

    def section(self, name: str) -> dict:
        merged = dict(self.config.get("params", {}))
        merged.update(self.config.get(name, {}))
        return merged


def _load_config(preset: str | None, config_path: str | None) -> dict:
    merged: dict = {}
    if preset:
        merged = json.loads(json.dumps(PRESETS[preset]))  # deep copy
    if config_path:
        try:
            with open(config_path, "r", encoding="utf-8") as fh:
                user = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {config_path}: {exc}") from exc
        if not isinstance(user, dict):
            raise ConfigError("config file must hold a JSON object")
        for key, value in user.items():
            if isinstance(value, dict) and isinstance(merged.get(key), dict):
                merged[key].update(value)
            else:
                merged[key] = value
    return merged


def _dispatch(ctx: CliContext, path: str, request):
    handler, response_model = _ROUTES[path]
    if ctx.server is None:
        return handler(request)
    import httpx

    url = ctx.server.rstrip("/") + path
    reply = httpx.post(url, json=request.model_dump(), timeout=600.0)
    if reply.status_code in (400, 422):
        raise ConfigError(f"server rejected request: {reply.text}")
    if reply.status_code == 409:
        raise InductanceDivergenceError(reply.text)
    if reply.status_code != 200:
        raise RootScanError(f"server error {reply.status_code}: {reply.text}")
    return response_model.model_validate(reply.json())


def _run(fn):
    """Map exceptions to the exit-code contract, errors on stderr."""
    try:
        fn()
    except (ConfigError, ValidationError, DomainError, click.ClickException) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    except InductanceDivergenceError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DIVERGENCE)
    except (CriticalPointError, RootScanError, NoBistabilityError,
            ArithmeticError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_NUMERICAL)


def _params_payload(section: dict, kwargs: dict) -> dict:
    payload = {}
    for key in ("J_x", "g", "kappa", "delta_c", "M", "backend"):
        if key in section:
            payload[key] = section[key]
    overrides = {
        "g": kwargs.get("g"), "kappa": kwargs.get("kappa"),
        "delta_c": kwargs.get("delta_c"), "M": kwargs.get("m"),
        "backend": kwargs.get("backend"),
    }
    payload.update({k: v for k, v in overrides.items() if v is not None})
    return payload


def _grid_payload(section: dict, key: str, start, stop, count) -> dict:
    grid = dict(section.get(key, {}))
    if start is not None:
        grid["start"] = start
    if stop is not None:
        grid["stop"] = stop
    if count is not None:
        grid["count"] = count
    if not grid:
        raise ConfigError(f"missing grid specification {key!r}")
    return grid


def _fmt_tag(v: float) -> str:
    return format_value(float(v))


_param_options = [
    click.option("--g", type=float, default=None, help="Qubit-resonator coupling."),
    click.option("--kappa", type=float, default=None, help="Resonator damping rate."),
    click.option("--delta-c", "delta_c", type=float, default=None, help="Drive detuning."),
    click.option("--m", type=int, default=None, help="Chain length M."),
    click.option("--backend", type=click.Choice(["thermodynamic", "finite_free_fermion"]),
                 default=None, help="Magnetization backend."),
]


def _add_options(opts):
    def deco(fn):
        for opt in reversed(opts):
            fn = opt(fn)
        return fn
    return deco


_grid_options = [
    click.option("--eps2-start", type=float, default=None),
    click.option("--eps2-stop", type=float, default=None),
    click.option("--eps2-count", type=int, default=None),
]


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="JSON run configuration; flags override file values.")
@click.option("--out", type=click.Path(file_okay=False), default="out",
              help="Output directory.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              help="Output format for tabular files.")
@click.option("--preset", type=click.Choice(sorted(PRESETS)), default=None,
              help="Named built-in configuration.")
@click.option("--server", default=None,
              help="Base URL of a running isingcavity service; default runs in-process.")
@click.version_option()
@click.pass_context
def main(ctx, config_path, out, fmt, preset, server):
    """Steady states, hysteresis sweeps and phase diagrams of the driven
    resonator + Ising qubit array; thread count for grid scans comes from
    ISINGCAVITY_THREADS (default: all cores)."""
    def build():
        cfg = _load_config(preset, config_path)
        ctx.obj = CliContext(config=cfg, out=Path(out), fmt=fmt, server=server)
    _run(build)


_STATE_COLUMNS = ("eps2", "n_s", "J_eff", "X", "c_s", "stable", "phase")
_JUMP_COLUMNS = ("eps2_at_jump", "n_before", "n_after", "phase_before", "phase_after")


def _state_row(s: sc.SteadyStateOut):
    return (s.eps2, s.n_s, s.J_eff, s.X, s.c_s, s.stable, s.phase)


def _write_sweep(ctx: CliContext, path: Path, reply: sc.SweepResponse) -> None:
    write_table(
        path,
        _STATE_COLUMNS,
        [_state_row(s) for s in reply.points],
        ctx.fmt,
        sections={"jumps": (_JUMP_COLUMNS, [
            (j.eps2_at_jump, j.n_before, j.n_after, j.phase_before, j.phase_after)
            for j in reply.jumps
        ])},
    )


@main.command()
@_add_options(_param_options)
@_add_options(_grid_options)
@click.option("--jx", "jx_values", type=float, multiple=True,
              help="Transverse field(s); repeatable.  Defaults to the config J_x_list.")
@click.pass_obj
def fig1(ctx: CliContext, jx_values, eps2_start, eps2_stop, eps2_count, **kwargs):
    """Full drive curves (all steady-state branches) plus up/down sweeps,
    one file set per transverse field."""
    def run():
        section = ctx.section("fig1")
        jxs = list(jx_values) or list(section.get("J_x_list", []))
        if not jxs:
            raise ConfigError("fig1 needs at least one transverse field (--jx or J_x_list)")
        grid = _grid_payload(section, "eps2_grid", eps2_start, eps2_stop, eps2_count)
        ext = "csv" if ctx.fmt == "csv" else "json"
        for jx in jxs:
            params = _params_payload(section, kwargs) | {"J_x": jx}
            req = sc.ScurveRequest(params=sc.ModelParamsIn(**params), eps2_grid=sc.GridIn(**grid))
            curve = _dispatch(ctx, "/scurve", req)
            tag = _fmt_tag(jx)
            write_table(
                ctx.out / f"fig1_scurve_Jx{tag}.{ext}",
                ("eps2", "n_s", "branch_id", "stable", "c_s", "J_eff", "X", "phase"),
                [(r.eps2, r.n_s, r.branch_id, r.stable, r.c_s, r.J_eff, r.X, r.phase)
                 for r in curve.rows],
                ctx.fmt,
            )
            for direction in ("up", "down"):
                sreq = sc.SweepRequest(params=sc.ModelParamsIn(**params),
                                       eps2_grid=sc.GridIn(**grid), direction=direction)
                reply = _dispatch(ctx, "/sweep", sreq)
                _write_sweep(ctx, ctx.out / f"fig1_sweep_{direction}_Jx{tag}.{ext}", reply)
        click.echo(f"wrote fig1 outputs for {len(jxs)} field value(s) to {ctx.out}")
    _run(run)


@main.command()
@_add_options(_param_options)
@_add_options(_grid_options)
@click.option("--jx-start", type=float, default=None)
@click.option("--jx-stop", type=float, default=None)
@click.option("--jx-count", type=int, default=None)
@click.pass_obj
def fig2(ctx: CliContext, jx_start, jx_stop, jx_count,
         eps2_start, eps2_stop, eps2_count, **kwargs):
    """Effective fields at switching, energy jumps, and the region grid."""
    def run():
        section = ctx.section("fig2")
        jgrid = _grid_payload(section, "J_grid", jx_start, jx_stop, jx_count)
        egrid = _grid_payload(section, "eps2_grid", eps2_start, eps2_stop, eps2_count)
        params = _params_payload(section, kwargs) | {"J_x": 0.0}
        req = sc.Fig2Request(params=sc.ModelParamsIn(**params),
                             J_grid=sc.GridIn(**jgrid), eps2_grid=sc.GridIn(**egrid))
        reply = _dispatch(ctx, "/fig2", req)
        ext = "csv" if ctx.fmt == "csv" else "json"
        write_table(
            ctx.out / f"fig2_effective_field.{ext}",
            ("J_x", "eps1_sq", "eps2_sq", "J_eff_before_up", "J_eff_after_up",
             "J_eff_before_down", "J_eff_after_down"),
            [(r.J_x, r.eps1_sq, r.eps2_sq, r.J_eff_before_up, r.J_eff_after_up,
              r.J_eff_before_down, r.J_eff_after_down) for r in reply.switch_fields],
            ctx.fmt,
        )
        write_table(
            ctx.out / f"fig2_energy_jump.{ext}",
            ("J_x", "dE_up", "dE_down"),
            [(r.J_x, r.dE_up, r.dE_down) for r in reply.energy_jumps],
            ctx.fmt,
        )
        write_table(
            ctx.out / f"fig2_regions.{ext}",
            ("J_x", "eps2", "region"),
            [(r.J_x, r.eps2, r.region) for r in reply.regions],
            ctx.fmt,
        )
        click.echo(f"wrote fig2 outputs to {ctx.out}")
    _run(run)


@main.command()
@_add_options(_param_options)
@_add_options(_grid_options)
@click.option("--jx", type=float, default=None, help="Transverse field.")
@click.option("--direction", type=click.Choice(["up", "down"]), default=None)
@click.pass_obj
def sweep(ctx: CliContext, jx, direction, eps2_start, eps2_stop, eps2_count, **kwargs):
    """One hysteresis sweep with its jump events."""
    def run():
        section = ctx.section("sweep")
        jx_val = jx if jx is not None else section.get("J_x")
        if jx_val is None:
            raise ConfigError("sweep needs a transverse field (--jx)")
        dir_val = direction or section.get("direction", "up")
        grid = _grid_payload(section, "eps2_grid", eps2_start, eps2_stop, eps2_count)
        params = _params_payload(section, kwargs) | {"J_x": jx_val}
        req = sc.SweepRequest(params=sc.ModelParamsIn(**params),
                              eps2_grid=sc.GridIn(**grid), direction=dir_val)
        reply = _dispatch(ctx, "/sweep", req)
        ext = "csv" if ctx.fmt == "csv" else "json"
        path = ctx.out / f"sweep_{dir_val}_Jx{_fmt_tag(jx_val)}.{ext}"
        _write_sweep(ctx, path, reply)
        click.echo(f"wrote {path} ({len(reply.jumps)} jump event(s))")
    _run(run)


@main.command()
@click.option("--spec", "spec_path", type=click.Path(), default=None,
              help="CircuitSpec JSON file (SI units).")
@click.option("--ferro-hz", type=float, default=None, help="Energy unit in Hz.")
@click.option("--kappa-hz", type=float, default=None, help="Resonator damping in Hz.")
@click.option("--detuning-hz", type=float, default=None, help="Drive detuning in Hz.")
@click.pass_obj
def circuit(ctx: CliContext, spec_path, ferro_hz, kappa_hz, detuning_hz):
    """Map an SI circuit description to couplings and dimensionless
    parameters; prints the derived JSON document."""
    def run():
        section = ctx.section("circuit")
        spec = dict(section.get("spec", {}))
        if spec_path:
            try:
                with open(spec_path, "r", encoding="utf-8") as fh:
                    spec.update(json.load(fh))
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read circuit spec {spec_path}: {exc}") from exc
        if not spec:
            raise ConfigError("circuit needs a spec (--spec or config section)")
        payload = {
            "spec": spec,
            "ferro_coupling_Hz": ferro_hz if ferro_hz is not None
            else section.get("ferro_coupling_Hz", 2e9),
            "kappa_Hz": kappa_hz if kappa_hz is not None else section.get("kappa_Hz", 6e7),
            "detuning_Hz": detuning_hz if detuning_hz is not None
            else section.get("detuning_Hz", 0.0),
        }
        req = sc.CircuitRequest(**payload)
        reply = _dispatch(ctx, "/circuit/derive", req)
        doc = reply.model_dump()
        click.echo(json.dumps(doc, indent=2))
        write_json(ctx.out / "circuit_derived.json", doc)
    _run(run)


@main.command()
@click.option("--j", "j_value", type=float, default=None, help="Transverse field J.")
@click.option("--backend", type=click.Choice(["thermodynamic", "finite_free_fermion"]),
              default="thermodynamic")
@click.option("--m", type=int, default=None, help="Chain length for the finite backend.")
@click.pass_obj
def tfim(ctx: CliContext, j_value, backend, m):
    """Direct chain-kernel evaluation: J -> energy density, x, x'."""
    def run():
        section = ctx.section("tfim")
        jv = j_value if j_value is not None else section.get("J")
        if jv is None:
            raise ConfigError("tfim needs a field value (--j)")
        req = sc.TfimRequest(J=jv, backend=backend, M=m if m is not None else 4096)
        reply = _dispatch(ctx, "/tfim/observables", req)
        if ctx.fmt == "json":
            click.echo(reply.model_dump_json(indent=2))
        else:
            header = ("J", "energy_per_site", "x_per_site", "x_derivative_per_site")
            values = (reply.J, reply.energy_per_site, reply.x_per_site,
                      reply.x_derivative_per_site)
            click.echo(",".join(header))
            click.echo(",".join(format_value(v) for v in values))
        if reply.note:
            click.echo(f"note: {reply.note}", err=True)
    _run(run)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
