import os
import sys
from dotenv import load_dotenv, set_key, dotenv_values

from .errors import ConfigError

DATA_ENV_VAR = 'JAMSCOPE_DATA'


def get_data_dir():
    load_dotenv(os.path.join(os.getcwd(), '.env'))
    DATA_DIR = os.getenv(DATA_ENV_VAR)
    if DATA_DIR is None:
        print(f"""{DATA_ENV_VAR} environment variable not set. Please set it to the directory where you want to store simulation runs and results.
e.g.: export {DATA_ENV_VAR}=~/jamscope-data  (or run js-init ~/jamscope-data)""")
        sys.exit(1)
    DATA_DIR = os.path.expanduser(DATA_DIR)
    if not os.path.exists(DATA_DIR):
        os.makedirs(DATA_DIR)
    return DATA_DIR


def update_data_dir(directory, env_file=".env"):
    # Load existing .env file, or create one if it doesn't exist
    load_dotenv(env_file)
    if not directory:
        directory = os.getenv(DATA_ENV_VAR)
        if not directory:
            print("ERROR: Please specify a directory")
            return
        else:
            print("No directory specified, current directory is:", directory)
    if "~" in directory:
        directory = os.path.expanduser(directory)
    set_key(env_file, DATA_ENV_VAR, directory)
    # Update the environment variable for the current process
    os.environ[DATA_ENV_VAR] = directory
    if not os.path.exists(directory):
        os.makedirs(directory)
    return directory


def get_key(key, env_file=".env"):
    load_dotenv(env_file)
    return os.getenv(key)


def read_config_file(path):
    """Reads a `key = value` file into an ordered dict of strings.

    Same syntax as .env files: `#` comments and blank lines are ignored.
    """
    if not os.path.exists(path):
        raise ConfigError(None, f"config file not found: {path}")
    values = dotenv_values(path)
    for key, value in values.items():
        if value is None:
            raise ConfigError(key, f"missing value for '{key}' in {path}")
    return dict(values)


def write_config_file(path, values, header=None):
    """Writes a mapping as `key = value` lines, keys in insertion order."""
    directory = os.path.dirname(path)
    if directory and not os.path.exists(directory):
        os.makedirs(directory)
    with open(path, "w") as f:
        if header:
            for line in header.splitlines():
                f.write(f"# {line}\n")
        for key, value in values.items():
            f.write(f"{key} = {format_config_value(value)}\n")
    return path


def format_config_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, "value"):
        # enums
        return str(value.value)
    return str(value)


def parse_bool(key, raw):
    s = str(raw).strip().lower()
    if s in ['true', '1', 't', 'y', 'yes']:
        return True
    if s in ['false', '0', 'f', 'n', 'no']:
        return False
    raise ConfigError(key, f"invalid boolean for '{key}': {raw!r}")


def coerce_value(key, raw, kind):
    """Parses the string `raw` into `kind` (bool, int, float, str or an Enum)."""
    if kind is bool:
        return parse_bool(key, raw)
    try:
        if kind is int:
            return int(str(raw).strip())
        if kind is float:
            return float(str(raw).strip())
        if kind is str:
            return str(raw).strip()
        return kind(str(raw).strip())
    except (TypeError, ValueError):
        raise ConfigError(key, f"invalid value for '{key}': {raw!r}")
