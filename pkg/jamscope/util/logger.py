import os
import sys
import logging

from pythonjsonlogger import jsonlogger

_configured = set()


def _truthy(s):
    if s is None:
        return False
    return s.lower() in ['true', '1', 't', 'y', 'yes']


def get_logger(name):
    """Returns a logger writing to stderr.

    export JAMSCOPE_LOG_JSON=1 to emit one JSON object per line,
    JAMSCOPE_LOG_LEVEL=DEBUG for more detail.
    """
    logger = logging.getLogger(name)
    if name in _configured:
        return logger
    handler = logging.StreamHandler(sys.stderr)
    if _truthy(os.getenv("JAMSCOPE_LOG_JSON")):
        handler.setFormatter(jsonlogger.JsonFormatter("%(asctime)s %(name)s %(levelname)s %(message)s"))
    else:
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(os.getenv("JAMSCOPE_LOG_LEVEL", "INFO").upper())
    logger.propagate = False
    _configured.add(name)
    return logger
