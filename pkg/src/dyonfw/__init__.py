"""Exact operator algebra for the low-energy expansion of Dirac-type dyon
Hamiltonians, plus the classical spin-precession dynamics it is checked
against."""

from .algebra import Expression, commutator, anticommutator, mul
from .clifford import BasisElement, basis_mul, beta_grade, to_numeric
from .hamiltonians import (ParticleParams, build_dirac_hamiltonian,
                           build_dirac_pauli_hamiltonian)
from .fw import (FWOrderReport, FWRunResult, bch_conjugate, extract_order,
                 fw_run, split_even_odd)
from .catalog import ReferenceCatalog
from .reduction import (effective_dipoles, match_tbmt, pauli_extra_terms,
                        reduce_to_physical, series_check)
from .series import SeriesPoly
from .dynamics import (FieldConfig, PhaseState, Trajectory, boost_dipole,
                       boost_dipole_integrated, fw_effective_field, integrate,
                       orbit_rhs, spin_rhs, thomas_F, thomas_F_dual)

__version__ = "0.1.0"

__all__ = [
    "Expression", "commutator", "anticommutator", "mul",
    "BasisElement", "basis_mul", "beta_grade", "to_numeric",
    "ParticleParams", "build_dirac_hamiltonian", "build_dirac_pauli_hamiltonian",
    "FWOrderReport", "FWRunResult", "bch_conjugate", "extract_order", "fw_run",
    "split_even_odd", "ReferenceCatalog",
    "effective_dipoles", "match_tbmt", "pauli_extra_terms",
    "reduce_to_physical", "series_check", "SeriesPoly",
    "FieldConfig", "PhaseState", "Trajectory", "boost_dipole",
    "boost_dipole_integrated", "fw_effective_field", "integrate",
    "orbit_rhs", "spin_rhs", "thomas_F", "thomas_F_dual",
    "__version__",
]
