"""Executable Backlund-transformation machinery.

Closed-form solution generators for the classical transformation pairs
(Cauchy-Riemann, Liouville, sine-Gordon), conjugate electromagnetic
plane-wave construction in vacuum, linear media, and conductors, a
recursion operator for matrix chiral-field symmetries, and a
finite-difference verification layer that certifies every generated
object against the PDE it claims to solve.
"""

from .chiral_recursion import (
    ConstantField,
    ExpSeedField,
    MatrixField,
    Potential,
    SymmetryCharacteristic,
    TabulatedField,
    chiral_defect_samples,
    chiral_residual,
    hierarchy,
    potential,
    recursion_step,
    symmetry_residual,
)
from .classic_bts import (
    ScalarField2D,
    XYMatchResult,
    bt_residual_cr,
    bt_residual_liouville,
    bt_residual_sine_gordon,
    harmonic_conjugate_match,
    harmonic_conjugate_quadratic,
    harmonic_quadratic,
    laplace_residual,
    liouville_from_trivial,
    liouville_residual,
    monomial_xy,
    sine_gordon_from_vacuum,
    sine_gordon_residual,
    xy_family_match,
    zero_field,
)
from .errors import (
    BtkitError,
    EmptyDomainError,
    IntegrabilityError,
    InvalidGridError,
    InvalidParameterError,
    NonCommutingError,
    NormalizationError,
    PathDependenceError,
    SingularMatrixError,
    SingularPointError,
    TransversalityError,
)
from .maxwell_conductor import (
    ConductorWavePair,
    DispersionSolution,
    conjugate_conducting,
    dispersion_solve,
    modified_wave_residual,
    real_fields_conducting,
)
from .maxwell_vacuum import (
    FieldPair,
    VacuumWaveSpec,
    WavePair,
    conjugate_vacuum,
    maxwell_residual,
    plane_wave,
    real_fields_vacuum,
    wave_residual,
)
from .media import CONSTANTS, EPSILON0, MU0, VACUUM, MediumParams, PhysicalConstants
from .verify import (
    DEFAULT_STEP,
    FieldDerivatives,
    Grid2D,
    Grid4D,
    ResidualReport,
    mixed_derivative,
    partial_derivative,
    report_from_values,
    residual_scan,
    second_derivative,
    vector_ops,
)

__all__ = [
    "BtkitError",
    "CONSTANTS",
    "ConductorWavePair",
    "ConstantField",
    "DEFAULT_STEP",
    "DispersionSolution",
    "EPSILON0",
    "EmptyDomainError",
    "ExpSeedField",
    "FieldDerivatives",
    "FieldPair",
    "Grid2D",
    "Grid4D",
    "IntegrabilityError",
    "InvalidGridError",
    "InvalidParameterError",
    "MU0",
    "MatrixField",
    "MediumParams",
    "NonCommutingError",
    "NormalizationError",
    "PathDependenceError",
    "PhysicalConstants",
    "Potential",
    "ResidualReport",
    "ScalarField2D",
    "SingularMatrixError",
    "SingularPointError",
    "SymmetryCharacteristic",
    "TabulatedField",
    "TransversalityError",
    "VACUUM",
    "VacuumWaveSpec",
    "WavePair",
    "XYMatchResult",
    "bt_residual_cr",
    "bt_residual_liouville",
    "bt_residual_sine_gordon",
    "chiral_defect_samples",
    "chiral_residual",
    "conjugate_conducting",
    "conjugate_vacuum",
    "dispersion_solve",
    "harmonic_conjugate_match",
    "harmonic_conjugate_quadratic",
    "harmonic_quadratic",
    "hierarchy",
    "laplace_residual",
    "liouville_from_trivial",
    "liouville_residual",
    "maxwell_residual",
    "mixed_derivative",
    "modified_wave_residual",
    "monomial_xy",
    "partial_derivative",
    "plane_wave",
    "potential",
    "real_fields_conducting",
    "real_fields_vacuum",
    "recursion_step",
    "report_from_values",
    "residual_scan",
    "second_derivative",
    "sine_gordon_from_vacuum",
    "sine_gordon_residual",
    "symmetry_residual",
    "vector_ops",
    "wave_residual",
    "xy_family_match",
    "zero_field",
]
