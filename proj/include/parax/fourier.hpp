#pragma once

#include "parax/grid.hpp"

namespace parax {

// Discrete surrogate of F(q) = (1/2pi) * int d^2 s Xi(s) e^{-i q.s}.
// Round-trips with inverse_transform to machine precision and satisfies
// Parseval against l2_inner_product on both sides.
SpectralAmplitude forward_transform(const SampledEnvelope& env);

// Discrete surrogate of Xi(s) = int (d^2 q / 2pi) F(q) e^{i q.s}.
// The station is metadata attached to the output envelope.
SampledEnvelope inverse_transform(const SpectralAmplitude& amp, double station = 0.0);

// Riemann-sum L2 inner products, conjugate-linear in the first slot.
// Position side carries the cell measure (L/n)^2, spectral side (2pi/L)^2.
cplx l2_inner_product(const SampledEnvelope& a, const SampledEnvelope& b);
cplx l2_inner_product(const SpectralAmplitude& a, const SpectralAmplitude& b);

}  // namespace parax
