"""
Multilevel momentum-space models

Symmetric/antisymmetric Bragg basis, lab-frame and interaction-picture
Hamiltonians with Doppler couplings, the bare-order mapping, and the
five-level / N-level model tiers used by the propagators.
"""

from .basis import (
    FewLevelState,
    MomentumBasis,
    Picture,
    antisymmetric_index,
    bare_amplitudes,
    symmetric_index,
)
from .hamiltonians import (
    asymmetry_energy_defect,
    build_interaction_hamiltonian,
    build_lab_hamiltonian,
    doppler_shift,
    interaction_matrices,
    lab_matrices,
)
from .models import InteractionPictureModel, LabFrameModel

__all__ = [
    'FewLevelState',
    'MomentumBasis',
    'Picture',
    'antisymmetric_index',
    'bare_amplitudes',
    'symmetric_index',
    'asymmetry_energy_defect',
    'build_interaction_hamiltonian',
    'build_lab_hamiltonian',
    'doppler_shift',
    'interaction_matrices',
    'lab_matrices',
    'InteractionPictureModel',
    'LabFrameModel',
]
