"""Linearized shallow water equations on a rectangle."""

from ._swerect import (
    PhysicalConstants,
    SweRectError,
    boundary_form_min,
    classify,
    cli,
    coefficient_matrices,
    from_primitive_mode,
    incoming_counts,
    kappa,
    mms_convergence,
    positivity_probe,
    run_free,
    verify_diagonalization,
)

__all__ = [
    "PhysicalConstants",
    "SweRectError",
    "boundary_form_min",
    "classify",
    "cli",
    "coefficient_matrices",
    "from_primitive_mode",
    "incoming_counts",
    "kappa",
    "mms_convergence",
    "positivity_probe",
    "run_free",
    "verify_diagonalization",
]
