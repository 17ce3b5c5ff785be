# validation_checks.py
from pathlib import Path

from kuniform.tools.errors import GraphFormatError, KUniformError


class ArgumentError(KUniformError, ValueError):
    """Command-line argument outside its allowed range."""


def validate_paths(**paths):
    """
    The validate function where it checks that every input path exists.
    "-" stands for stdin and is always accepted.
    """
    for name, path in paths.items():
        if path is None or path == '-':
            continue
        if not Path(path).exists():
            raise GraphFormatError(f"{name.replace('_', ' ')} not found; location checked: {path}")


def validate_output_path(path):
    """The parent directory of an output file must exist."""
    if path is None or path == '-':
        return
    parent = Path(path).resolve().parent
    if not parent.is_dir():
        raise ArgumentError(f"output directory not found; location checked: {parent}")


def validate_positive(**values):
    for name, value in values.items():
        if value is not None and value < 1:
            raise ArgumentError(f"--{name} must be a positive integer, got {value}")
