"""Critical rotational free boundary annuli and their Steklov spectra."""

from ._core import (
    AnnulusLabError,
    ConfigurationError,
    CriticalAnnulus,
    NoFreeBoundaryError,
    NumericError,
    ParameterRangeError,
    UnachievableRadiusError,
    mesh_json,
    nodal,
    oracle_sigmas,
    solve,
    spectrum,
    spectrum_csv,
    thread_limit,
    verify,
)

__all__ = [
    "AnnulusLabError",
    "ConfigurationError",
    "CriticalAnnulus",
    "NoFreeBoundaryError",
    "NumericError",
    "ParameterRangeError",
    "UnachievableRadiusError",
    "mesh_json",
    "nodal",
    "oracle_sigmas",
    "solve",
    "spectrum",
    "spectrum_csv",
    "thread_limit",
    "verify",
]
