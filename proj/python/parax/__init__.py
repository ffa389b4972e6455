"""Paraxial beam modes as exact scalar-field states."""

from ._core import (
    CarrierComb,
    DispersionMap,
    TransverseGrid,
    completeness_roundtrip,
    consistency_residual,
    eta_map,
    family_map,
    forward_transform,
    inverse_transform,
    make_map,
    mode_envelope,
    paraxial_inner_product,
    positive_frequency_residual,
    propagate_paraxial,
    pulse_compare,
    quantum_inner_product,
    synthesize,
    uniqueness_sweep,
    unitarity_defect,
    unitarity_weight,
    wave_residual_spectral,
    weight_sweep,
)

__all__ = [
    "CarrierComb",
    "DispersionMap",
    "TransverseGrid",
    "completeness_roundtrip",
    "consistency_residual",
    "eta_map",
    "family_map",
    "forward_transform",
    "inverse_transform",
    "make_map",
    "mode_envelope",
    "paraxial_inner_product",
    "positive_frequency_residual",
    "propagate_paraxial",
    "pulse_compare",
    "quantum_inner_product",
    "synthesize",
    "uniqueness_sweep",
    "unitarity_defect",
    "unitarity_weight",
    "wave_residual_spectral",
    "weight_sweep",
]
