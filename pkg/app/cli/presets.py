"""
Figure presets: the four standard outage sweeps
"""
from dataclasses import replace
from typing import Optional

from app.cli.config_loader import SimConfig
from app.exceptions import ConfigError
from app.schemes import SchemeFactory

# name -> (sweep variable, sweep values)
PRESETS = {
    'fig2': ('gamma_th_db', tuple(float(x) for x in range(-4, 9))),
    'fig3': ('p_rs_dbm', tuple(float(x) for x in range(10, 31, 2))),
    'fig4': ('n_su', tuple(float(x) for x in range(2, 9))),
    'fig5': ('r_a_rs', tuple(round(0.1 * k, 1) for k in range(1, 10)))
}

# Outage level at which `preset` reports each scheme's crossing point
CROSSING_TARGETS = {
    'fig3': 1e-3,
    'fig4': 1e-4
}


def get_available_presets() -> list:
    return sorted(PRESETS)


def preset(name: str, trials: Optional[int] = None, seed: Optional[int] = None,
           output: Optional[str] = None) -> SimConfig:
    """
    Build the SimConfig of a figure sweep

    Non-swept parameters stay at the baseline defaults and every scheme is
    enabled.

    Args:
        name: fig2, fig3, fig4 or fig5
        trials: Trials per point (default: SimConfig default)
        seed: Master seed (default: SimConfig default)
        output: CSV path (default: results/<name>.csv)

    Returns:
        Validated SimConfig

    Raises:
        ConfigError: If the preset name is unknown
    """
    key = name.strip().lower()
    if key not in PRESETS:
        raise ConfigError('preset', f"unknown preset '{name}', available: {', '.join(get_available_presets())}")

    variable, values = PRESETS[key]
    config = SimConfig(
        schemes=SchemeFactory.DEFAULT_SCHEMES,
        sweep_variable=variable,
        sweep_values=values,
        output=output or f'results/{key}.csv'
    )

    overrides = {}
    if trials is not None:
        overrides['trials'] = trials
    if seed is not None:
        overrides['seed'] = seed

    return replace(config, **overrides).validate()
