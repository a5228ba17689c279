"""
CSV emission of outage estimates
"""
import csv
import logging
import os
from typing import Sequence

from app.exceptions import ResultsWriteError
from app.models.outcome import OutageEstimate

logger = logging.getLogger(__name__)

CSV_HEADER = ('scheme', 'sweep_variable', 'sweep_value', 'trials', 'outages',
              'outage_prob', 'ci_low', 'ci_high', 'seed')


def estimate_row(estimate: OutageEstimate) -> list:
    """One CSV row; floats use repr so identical runs give identical bytes"""
    return [
        estimate.scheme,
        estimate.sweep_variable,
        repr(float(estimate.sweep_value)),
        estimate.trials,
        estimate.outage_count,
        repr(float(estimate.probability)),
        repr(float(estimate.ci_low)),
        repr(float(estimate.ci_high)),
        estimate.master_seed
    ]


def emit_csv(estimates: Sequence[OutageEstimate], path: str) -> str:
    """
    Write estimates as plot data

    Args:
        estimates: Non-empty list of estimates
        path: Output file (parent directories are created)

    Returns:
        The path written

    Raises:
        ValueError: If estimates is empty
        ResultsWriteError: If the path cannot be written
    """
    if not estimates:
        raise ValueError("no estimates to write")

    rows = sorted(estimates, key=lambda estimate: (estimate.scheme, estimate.sweep_value))

    try:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', newline='', encoding='utf-8') as handle:
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerow(CSV_HEADER)
            for estimate in rows:
                writer.writerow(estimate_row(estimate))
    except OSError as e:
        raise ResultsWriteError(f"could not write {path}: {e}")

    logger.info(f"[Results] wrote {len(rows)} rows to {path}")
    return path
