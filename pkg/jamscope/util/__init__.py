from .configuration import get_data_dir, update_data_dir, get_key, read_config_file, write_config_file, coerce_value
from .logger import get_logger
from .errors import (
    JamscopeError, ConfigError, DomainError, ShapeError, UnderdeterminedError,
    ConditioningError, UndefinedInputError, StratificationError, UnknownCaseError, DatasetError,
)
