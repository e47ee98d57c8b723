"""Exact spectral-data invariants for Cartan and parabolic branes in the Hitchin system."""

from .curve_model import (
    Component,
    Node,
    SpectralConfig,
    arithmetic_genus,
    build_cartan_config,
    build_parabolic_config,
    config_from_mapping,
    delta,
    moduli_dimensions,
)
from .errors import ConfigError, IdentityViolation

__version__ = "0.1.0"
