"""
Wireless-powered cognitive relay outage simulator
"""
import logging

__version__ = '1.0.0'

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s %(message)s'

_configured = False


def configure_logging(level: str = 'INFO') -> None:
    """
    Install the root log handler once and set the package log level

    Args:
        level: Logging level name (DEBUG, INFO, WARNING, ...)
    """
    global _configured

    if not _configured:
        logging.basicConfig(format=LOG_FORMAT)
        _configured = True

    logging.getLogger('app').setLevel(level.upper())
