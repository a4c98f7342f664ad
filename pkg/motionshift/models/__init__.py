"""
Models package: basis, Hamiltonians, propagation, closed forms and peak location
"""

from .basis import (
    BareIndex,
    BasisSpec,
    Internal,
    PhysicalParams,
    PulseSchedule,
    Scheme,
    StateVector,
    lamb_dicke_parameter,
    make_params,
)
from .hamiltonian import (
    BareLevels,
    HermitianOperator,
    bare_hamiltonian,
    displacement_element,
    displacement_matrix,
    energy_levels,
    full_hamiltonian,
    ld_hamiltonian,
    semidressed_split,
)
from .propagation import (
    EigenDecomposition,
    SpectrumPoint,
    certify_truncation,
    evolve,
    excited_probability_derivative,
    fidelity_pi_half,
    rabi_pulse,
    ramsey_sequence,
    spectrum,
)
from .shift import (
    ShiftResult,
    ShiftSource,
    carrier_shift,
    locate_carrier_peak,
    locate_peak_analytic_derivative,
    n0_independence_check,
    scaling_exponent,
    shift_curve_rabi,
    shift_curve_ramsey,
)

__all__ = [
    'BareIndex', 'BasisSpec', 'Internal', 'PhysicalParams', 'PulseSchedule', 'Scheme',
    'StateVector', 'lamb_dicke_parameter', 'make_params',
    'BareLevels', 'HermitianOperator', 'bare_hamiltonian', 'displacement_element',
    'displacement_matrix', 'energy_levels', 'full_hamiltonian', 'ld_hamiltonian',
    'semidressed_split',
    'EigenDecomposition', 'SpectrumPoint', 'certify_truncation', 'evolve',
    'excited_probability_derivative', 'fidelity_pi_half', 'rabi_pulse', 'ramsey_sequence',
    'spectrum',
    'ShiftResult', 'ShiftSource', 'carrier_shift', 'locate_carrier_peak',
    'locate_peak_analytic_derivative', 'n0_independence_check', 'scaling_exponent',
    'shift_curve_rabi', 'shift_curve_ramsey',
]
