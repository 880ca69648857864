import sys
import argparse

from jamscope.util.errors import ConfigError, UnknownCaseError, JamscopeError


def positive_int(value):
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{value!r} is not an integer")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def run_command(func, *args, **kwargs):
    """Runs a script function and maps failures to exit codes: 2 usage/config, 1 runtime."""
    try:
        func(*args, **kwargs)
    except (ConfigError, UnknownCaseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (JamscopeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0
