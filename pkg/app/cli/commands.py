"""
Command-line interface: simulate, preset and oracle
"""
import logging
from dataclasses import replace

import click

from app import configure_logging
from app.cli.config_loader import dump_config, load_config
from app.cli.csv_writer import emit_csv
from app.cli.presets import CROSSING_TARGETS, get_available_presets, preset as build_preset
from app.config import config as profiles
from app.exceptions import SimulationError
from app.services.montecarlo_service import MonteCarloService

logger = logging.getLogger(__name__)


def _service(profile, workers=None) -> MonteCarloService:
    return MonteCarloService(
        workers=workers or profile.WORKERS,
        chunk_size=profile.TRIAL_CHUNK_SIZE,
        progress_every=profile.PROGRESS_EVERY
    )


def _log_crossings(estimates, target: float) -> None:
    by_scheme = {}
    for estimate in estimates:
        by_scheme.setdefault(estimate.scheme, []).append(estimate)

    for scheme, points in by_scheme.items():
        value = MonteCarloService.crossing_point(points, target)
        if value is None:
            logger.info(f"[MonteCarlo] {scheme}: outage never crosses {target:g}")
        else:
            logger.info(f"[MonteCarlo] {scheme}: outage {target:g} at {points[0].sweep_variable}={value:.3f}")


@click.group()
@click.option('--profile', type=click.Choice(sorted(profiles)), default='default', show_default=True,
              help='Runtime profile (workers, chunk size, log level, preset trials).')
@click.option('--log-level', default=None, help='Override the profile log level.')
@click.pass_context
def cli(ctx, profile, log_level):
    """Outage simulator for a wireless-powered two-way cognitive relay network."""
    selected = profiles[profile]
    configure_logging(log_level or selected.LOG_LEVEL)
    ctx.obj = {'profile': selected}


@cli.command()
@click.option('--config', 'config_path', required=True, type=click.Path(dir_okay=False),
              help='key=value simulation config file.')
@click.option('--trials', type=click.IntRange(min=1), default=None, help='Trials per sweep point.')
@click.option('--seed', type=click.IntRange(min=0), default=None, help='Master seed.')
@click.option('--output', default=None, help='CSV output path.')
@click.option('--workers', type=click.IntRange(min=1), default=None, help='Worker processes.')
@click.pass_context
def simulate(ctx, config_path, trials, seed, output, workers):
    """Run the sweep described by a config file and write the CSV."""
    try:
        sim_config = load_config(config_path)
        overrides = {key: value for key, value in
                     (('trials', trials), ('seed', seed), ('output', output)) if value is not None}
        sim_config = replace(sim_config, **overrides).validate()

        estimates = _service(ctx.obj['profile'], workers).sweep(sim_config)
        path = emit_csv(estimates, sim_config.output)
    except SimulationError as e:
        raise click.ClickException(str(e))

    click.echo(f"Wrote {len(estimates)} estimates to {path}")


@cli.command()
@click.argument('name', type=click.Choice(get_available_presets(), case_sensitive=False))
@click.option('--output', default=None, help='CSV output path (default results/<name>.csv).')
@click.option('--trials', type=click.IntRange(min=1), default=None,
              help='Trials per point (default from the profile).')
@click.option('--seed', type=click.IntRange(min=0), default=None, help='Master seed (default from the profile).')
@click.option('--workers', type=click.IntRange(min=1), default=None, help='Worker processes.')
@click.option('--save-config', type=click.Path(dir_okay=False), default=None,
              help='Also write the preset as a config file for `simulate`.')
@click.pass_context
def preset(ctx, name, output, trials, seed, workers, save_config):
    """Run one of the figure sweeps (fig2, fig3, fig4, fig5)."""
    profile = ctx.obj['profile']
    try:
        sim_config = build_preset(
            name,
            trials=trials or profile.TRIALS,
            seed=profile.SEED if seed is None else seed,
            output=output
        )
        if save_config:
            dump_config(sim_config, save_config)

        estimates = _service(profile, workers).sweep(sim_config)
        path = emit_csv(estimates, sim_config.output)
    except SimulationError as e:
        raise click.ClickException(str(e))

    target = CROSSING_TARGETS.get(name.lower())
    if target is not None:
        _log_crossings(estimates, target)

    click.echo(f"Wrote {len(estimates)} estimates to {path}")


@cli.command()
@click.option('--config', 'config_path', required=True, type=click.Path(dir_okay=False),
              help='key=value simulation config file.')
@click.option('--grid', type=click.IntRange(min=11), required=True, help='Grid points per axis.')
@click.option('--realizations', type=click.IntRange(min=1), default=100, show_default=True)
@click.option('--seed', type=click.IntRange(min=0), default=None, help='Seed (default from the config).')
def oracle(config_path, grid, realizations, seed):
    """Check the closed-form power step against a brute-force grid search."""
    try:
        sim_config = load_config(config_path)
        report = MonteCarloService.oracle_check(
            sim_config.system_parameters(),
            sim_config.topology(),
            grid,
            realizations,
            sim_config.seed if seed is None else seed
        )
    except SimulationError as e:
        raise click.ClickException(str(e))

    click.echo(f"realizations: {report.realizations}")
    click.echo(f"infeasible: {report.infeasible}")
    click.echo(f"mismatches: {report.mismatches}")
    click.echo(f"max deviation: {report.max_deviation:.6e}")

    if not report.passed:
        raise click.ClickException(f"closed form deviates from the grid optimum by more than {2.0 / grid:.3e}")
