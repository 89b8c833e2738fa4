"""Basis-dependent coherence of qubit channels and its uncertainty relations."""
from .bases import BasisOverlap, QubitBasis, computational, from_bloch, named_basis, overlap, plus_minus
from .bounds import (
    UncertaintyReport,
    check_relation,
    l1_unitary_bound,
    lemma1_check,
    lemma2_check,
    minimize_g_bruteforce,
    rel_entropy_bound,
    saturation_condition,
)
from .channels import (
    ChoiState,
    KrausChannel,
    bit_flip,
    choi,
    identity,
    pauli_x,
    phase_damping,
    rotation,
    unitary,
    validate_cptp,
)
from .coherence import CoherenceValue, Measure, l1_coherence, rel_entropy_coherence, unitary_l1_closed_form
from .numerics import binary_entropy, hermitian_eigenvalues, von_neumann_entropy
from .verify import VerificationReport, run_falsification

__version__ = "0.1.0"
