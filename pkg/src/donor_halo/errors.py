"""Exception hierarchy.

Usage errors (bad names, malformed registry files, inconsistent inputs)
and numerical failures (bracket or convergence problems) are kept apart
so the command-line driver can map them to distinct exit codes.
"""


class DonorHaloError(Exception):
    """Base class for all package errors."""


class MaterialError(DonorHaloError):
    """Malformed registry file, unknown record, or invalid parameter set."""


class MissingParameterError(MaterialError):
    """An operation needs a nullable record field that was not supplied."""


class NumericalError(DonorHaloError):
    """A numerical procedure failed (bracketing, convergence, regime)."""


class BracketError(NumericalError):
    """A root finder could not bracket a sign change."""


class NonPerturbativeRegimeError(NumericalError):
    """Perturbative level matching requested outside its validity range."""
