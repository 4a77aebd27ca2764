#pragma once

#include "nls/homsub.hpp"
#include "nls/rng.hpp"
#include "nls/spectral_field.hpp"

namespace nls {

/// Unit-norm random field in the degree-k eigenspace (complex Gaussian over
/// the orders, normalized).
SpectralField random_eigenspace_field(int k, Rng& rng);

/// Random field with equal per-band contributions to the B^{1/4} norm:
/// ||P_k u|| = amp / ((K+1) <mu_k>^{1/4}), random direction within each band.
/// The B^{1/4} norm equals amp exactly.
SpectralField random_b14_field(int K, double amp, Rng& rng);

/// Random homogeneous state with smooth decay, rescaled so the H^{1/4} norm
/// equals amp.
HomState random_hom_state(int K, double amp, Rng& rng);

}  // namespace nls
