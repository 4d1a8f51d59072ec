import csv
import logging
import os
import pkg_resources

from dataclasses import asdict, dataclass, fields, replace
from .exceptions import SpreadError

ORDERS = ["degrevlex", "lex", "deglex"]

# Environment variables that may override the resource guards
ENV_OVERRIDES = {
    "HKSPREAD_MAX_GB_STEPS": "max_gb_steps",
    "HKSPREAD_MAX_BASIS_SIZE": "max_basis_size",
    "HKSPREAD_MAX_EXPONENT": "max_exponent",
}

# Keys accepted in a config TSV, mapped to Config fields
CONFIG_KEYS = {
    "Order": "order",
    "Max GB Steps": "max_gb_steps",
    "Max Basis Size": "max_basis_size",
    "Max Exponent": "max_exponent",
    "E Max": "e_max",
    "Q0 Cap": "q0_cap",
    "Tolerance": "tolerance",
}


@dataclass(frozen=True)
class Config:
    """Settings shared by every command of a session."""

    order: str = "degrevlex"
    max_gb_steps: int = 500000
    max_basis_size: int = 10000
    max_exponent: int = 65536
    e_max: int = 3
    q0_cap: int = 3
    tolerance: float = 0.05

    def limits(self):
        from .poly import ResourceLimits

        return ResourceLimits(
            max_gb_steps=self.max_gb_steps,
            max_basis_size=self.max_basis_size,
            max_exponent=self.max_exponent,
        )

    def to_dict(self):
        return asdict(self)


def _coerce(name, value):
    """Convert a raw config value to the type of the named Config field."""
    for f in fields(Config):
        if f.name != name:
            continue
        try:
            if f.type in ("int", int):
                value = int(value)
            elif f.type in ("float", float):
                value = float(value)
            else:
                value = str(value).strip().lower()
        except ValueError:
            raise SpreadError(f"Invalid value '{value}' for configuration key '{name}'")
        if name == "order" and value not in ORDERS:
            raise SpreadError(f"Unknown monomial order: {value}")
        if isinstance(value, int) and value < 0:
            raise SpreadError(f"Configuration key '{name}' must be nonnegative")
        return value
    raise SpreadError(f"Unknown configuration key '{name}'")


def get_config(path=None, **overrides):
    """Get the configuration for a session. Values are layered: defaults, then the Key/Value TSV
    at path, then environment overrides for the resource guards, then keyword overrides (flags).
    Overrides that are None are ignored."""
    values = {}
    if path:
        with open(path, "r") as f:
            reader = csv.reader(f, delimiter="\t", lineterminator="\n")
            for row in reader:
                if not row or row[0] in ("Key", "") or row[0].startswith("#"):
                    continue
                if row[0] not in CONFIG_KEYS:
                    raise SpreadError(f"Unknown configuration key '{row[0]}' in {path}")
                if len(row) < 2:
                    raise SpreadError(f"Configuration key '{row[0]}' in {path} has no value")
                name = CONFIG_KEYS[row[0]]
                values[name] = _coerce(name, row[1])
    for env, name in ENV_OVERRIDES.items():
        if os.environ.get(env):
            logging.info(f"using {env}={os.environ[env]}")
            values[name] = _coerce(name, os.environ[env])
    for name, value in overrides.items():
        if value is not None:
            values[name] = _coerce(name, value)
    return replace(Config(), **values)


def get_version():
    try:
        return pkg_resources.require("hkspread")[0].version
    except pkg_resources.DistributionNotFound:
        return "developer-version"


def set_logging(verbose):
    """Set logging for hkspread based on -v/--verbose."""
    if verbose:
        logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
    else:
        logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
