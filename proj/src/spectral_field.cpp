#include "nls/spectral_field.hpp"

namespace nls {

SpectralField project_band(const SpectralField& f, int k) {
  if (k < 0) throw std::invalid_argument("project_band: negative degree");
  SpectralField out(f.band_limit());
  if (k <= f.band_limit()) out.band(k) = f.band(k);
  return out;
}

SpectralField highest_harmonic(int k) {
  SpectralField out(k);
  out.at(k, k) = 1.0;
  return out;
}

double highest_harmonic_raw_norm(int k) { return std::sqrt(2.0 * kPi * wallis(2 * k + 1)); }

SpectralField raw_highest_harmonic(int k) {
  // sin^k(theta) e^{ik phi} = (-1)^k nu_k Y_k^k with the Condon-Shortley phase.
  SpectralField out(k);
  const double sign = (k & 1) ? -1.0 : 1.0;
  out.at(k, k) = sign * highest_harmonic_raw_norm(k);
  return out;
}

VectorXd laplacian_symbol(int K) {
  VectorXd out((K + 1) * (K + 1));
  for (int k = 0; k <= K; ++k) out.segment(static_cast<Eigen::Index>(k) * k, 2 * k + 1).setConstant(mu_squared(k));
  return out;
}

}  // namespace nls
