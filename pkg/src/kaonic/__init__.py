"""Neutral kaons as decaying qubits: oscillation, entangled pairs, Bell tests,
complementarity and quantum-eraser Monte Carlo."""

from .errors import (
    ConfigurationError,
    DegenerateParameterError,
    InvalidArgumentError,
    KaonError,
    SurvivalUnderflowError,
)
from .states import (
    K0,
    K0BAR,
    CPWeights,
    EffectiveHamiltonian,
    KaonState,
    PhysParams,
    cp_eigenstates,
    effective_hamiltonian,
    mass_eigenstates,
    quasi_spin_state,
)

__version__ = "0.1.0"
