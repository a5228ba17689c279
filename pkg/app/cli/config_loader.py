"""
Simulation config files: flat key=value documents
"""
import logging
import os
from dataclasses import dataclass, fields, replace
from typing import Optional, Tuple

from dotenv import dotenv_values

from app.config import Config
from app.exceptions import ConfigError, InvalidGeometryError, InvalidParameterError
from app.models.parameters import SystemParameters, db_to_linear, dbm_to_linear
from app.models.topology import Topology
from app.schemes import SchemeFactory
from app.services.montecarlo_service import SWEEP_VARIABLES

logger = logging.getLogger(__name__)

INT_KEYS = ('n_a', 'n_b', 'n_rs', 'n_p1', 'n_p2', 'n_rp', 'd', 'max_outer', 'max_inner', 'trials', 'seed')
LIST_KEYS = ('schemes', 'sweep_values')
STRING_KEYS = ('sweep_variable', 'output')

# SystemParameters field -> config key, where the names differ
FIELD_KEYS = {
    'gamma_th': 'gamma_th_db',
    'p_rs': 'p_rs_dbm',
    'p_p1': 'p_p1_dbm',
    'p_p2': 'p_p2_dbm',
    'p_rp': 'p_rp_dbm',
    'max_outer_iters': 'max_outer',
    'max_inner_iters': 'max_inner',
    'inner_tolerance': 'inner_tol'
}


@dataclass(frozen=True)
class SimConfig:
    """Everything one `simulate` run needs, in config-file units (dB, dBm, meters)"""

    tau: float = Config.TAU
    eta: float = Config.ETA
    gamma_th_db: float = Config.GAMMA_TH_DB
    p_rs_dbm: float = Config.P_RS_DBM
    p_p1_dbm: float = Config.P_P1_DBM
    p_p2_dbm: float = Config.P_P2_DBM
    p_rp_dbm: float = Config.P_RP_DBM
    n_a: int = Config.ANTENNAS
    n_b: int = Config.ANTENNAS
    n_rs: int = Config.ANTENNAS
    n_p1: int = Config.ANTENNAS
    n_p2: int = Config.ANTENNAS
    n_rp: int = Config.ANTENNAS
    d: int = Config.STREAMS
    max_outer: int = Config.MAX_OUTER_ITERS
    max_inner: int = Config.MAX_INNER_ITERS
    inner_tol: float = Config.INNER_TOLERANCE
    r_a_rs: float = Config.R_A_RS
    r_rs_b: float = Config.R_RS_B
    r_rs_rp: float = Config.R_RS_RP
    r_p1_rp: float = Config.R_P1_RP
    r_rp_p2: float = Config.R_RP_P2
    schemes: Tuple[str, ...] = SchemeFactory.DEFAULT_SCHEMES
    sweep_variable: str = 'gamma_th_db'
    sweep_values: Tuple[float, ...] = (Config.GAMMA_TH_DB,)
    trials: int = Config.TRIALS
    seed: int = Config.SEED
    output: str = Config.OUTPUT

    def system_parameters(self) -> SystemParameters:
        """Physical parameters in linear units"""
        return SystemParameters(
            tau=self.tau,
            eta=self.eta,
            gamma_th=db_to_linear(self.gamma_th_db),
            p_rs=dbm_to_linear(self.p_rs_dbm),
            p_p1=dbm_to_linear(self.p_p1_dbm),
            p_p2=dbm_to_linear(self.p_p2_dbm),
            p_rp=dbm_to_linear(self.p_rp_dbm),
            n_a=self.n_a,
            n_b=self.n_b,
            n_rs=self.n_rs,
            n_p1=self.n_p1,
            n_p2=self.n_p2,
            n_rp=self.n_rp,
            d=self.d,
            max_outer_iters=self.max_outer,
            max_inner_iters=self.max_inner,
            inner_tolerance=self.inner_tol
        )

    def topology(self) -> Topology:
        return Topology.derive(self.r_a_rs, self.r_rs_b, self.r_rs_rp, self.r_p1_rp, self.r_rp_p2)

    def sweep_origin(self) -> float:
        """Current value of the swept quantity"""
        origins = {
            'gamma_th_db': self.gamma_th_db,
            'p_rs_dbm': self.p_rs_dbm,
            'n_su': float(self.n_a),
            'r_a_rs': self.r_a_rs
        }
        if self.sweep_variable not in origins:
            raise ConfigError('sweep_variable', f"unknown sweep variable '{self.sweep_variable}', "
                                                f"expected one of {', '.join(SWEEP_VARIABLES)}")
        return origins[self.sweep_variable]

    def point_config(self, value: float) -> 'SimConfig':
        """
        This config with the sweep variable set to value

        n_su sets N_A = N_B; r_a_rs keeps r_a_rs + r_rs_b fixed.

        Args:
            value: Sweep value

        Returns:
            SimConfig of the sweep point
        """
        if self.sweep_variable == 'gamma_th_db':
            return replace(self, gamma_th_db=value)
        if self.sweep_variable == 'p_rs_dbm':
            return replace(self, p_rs_dbm=value)
        if self.sweep_variable == 'n_su':
            if int(value) != value:
                raise ConfigError('sweep_values', f"antenna counts must be integers, got {value}")
            return replace(self, n_a=int(value), n_b=int(value))
        if self.sweep_variable == 'r_a_rs':
            return replace(self, r_a_rs=value, r_rs_b=(self.r_a_rs + self.r_rs_b) - value)
        raise ConfigError('sweep_variable', f"unknown sweep variable '{self.sweep_variable}'")

    def at_sweep_point(self, value: float) -> Tuple[SystemParameters, Topology]:
        point = self.point_config(value)
        return point.system_parameters(), point.topology()

    def validate(self) -> 'SimConfig':
        """
        Check every sweep point against the model invariants

        Returns:
            self

        Raises:
            ConfigError: Naming the offending key
        """
        if self.trials < 1:
            raise ConfigError('trials', f"must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise ConfigError('seed', f"must be >= 0, got {self.seed}")
        if not self.schemes:
            raise ConfigError('schemes', "at least one scheme is required")
        for name in self.schemes:
            try:
                SchemeFactory.create(name)
            except ValueError as e:
                raise ConfigError('schemes', str(e))

        if self.sweep_variable not in SWEEP_VARIABLES:
            raise ConfigError('sweep_variable', f"unknown sweep variable '{self.sweep_variable}', "
                                                f"expected one of {', '.join(SWEEP_VARIABLES)}")
        values = self.sweep_values
        if not values or any(b <= a for a, b in zip(values, values[1:])):
            raise ConfigError('sweep_values', "must be non-empty and strictly increasing")

        for value in values:
            try:
                self.at_sweep_point(value)
            except (InvalidParameterError, InvalidGeometryError) as e:
                key = FIELD_KEYS.get(e.field, e.field or 'config')
                raise ConfigError(key, str(e))

        return self


def _parse_value(key: str, raw: str):
    if key in LIST_KEYS:
        items = [item.strip() for item in raw.split(',') if item.strip()]
        if key == 'schemes':
            return tuple(item.lower() for item in items)
        try:
            return tuple(float(item) for item in items)
        except ValueError:
            raise ConfigError(key, f"expected comma-separated numbers, got '{raw}'")

    if key in STRING_KEYS:
        return raw.strip()

    if key in INT_KEYS:
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(key, f"expected an integer, got '{raw}'")

    try:
        return float(raw)
    except ValueError:
        raise ConfigError(key, f"expected a number, got '{raw}'")


def parse_config(values: dict) -> SimConfig:
    """
    Build a validated SimConfig from raw key/value strings

    Args:
        values: Mapping key -> raw string (None for a bare key)

    Returns:
        SimConfig with missing keys at their defaults

    Raises:
        ConfigError: Unknown key, unparsable value or invariant violation
    """
    known = {f.name for f in fields(SimConfig)}
    parsed = {}

    for key, raw in values.items():
        key = key.strip().lower()
        if key not in known:
            raise ConfigError(key, "unknown configuration key")
        if raw is None or not raw.strip():
            raise ConfigError(key, "missing value")
        parsed[key] = _parse_value(key, raw)

    config = SimConfig(**parsed)
    if 'sweep_values' not in parsed:
        config = replace(config, sweep_values=(config.sweep_origin(),))
    return config.validate()


def load_config(path: str) -> SimConfig:
    """
    Read a simulation config file

    Args:
        path: Path of a key=value file (# comments allowed)

    Returns:
        Validated SimConfig

    Raises:
        ConfigError: If the file is missing or any key is invalid
    """
    if not os.path.isfile(path):
        raise ConfigError('config', f"file not found: {path}")

    try:
        values = dotenv_values(path)
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigError('config', f"could not read {path}: {e}")

    config = parse_config(values)
    logger.debug(f"[Config] loaded {path}: sweep {config.sweep_variable} over {len(config.sweep_values)} points")
    return config


def _format(value) -> str:
    if isinstance(value, tuple):
        return ','.join(_format(item) for item in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dump_config(config: SimConfig, path: Optional[str] = None) -> str:
    """
    Serialize a SimConfig so that load_config reproduces it exactly

    Args:
        config: Config to write
        path: File to write (None only returns the text)

    Returns:
        The file contents
    """
    lines = []
    for f in fields(SimConfig):
        value = getattr(config, f.name)
        if f.name == 'output':
            lines.append(f"{f.name}='{value}'")
        else:
            lines.append(f"{f.name}={_format(value)}")
    text = '\n'.join(lines) + '\n'

    if path is not None:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(text)
        logger.info(f"[Config] wrote {path}")

    return text
