#include "nls/samplers.hpp"

namespace nls {

SpectralField random_eigenspace_field(int k, Rng& rng) {
  SpectralField f(k);
  for (int m = -k; m <= k; ++m) f.at(k, m) = rng.cnormal();
  f.coeffs() /= f.l2_norm();
  return f;
}

SpectralField random_b14_field(int K, double amp, Rng& rng) {
  SpectralField f(K);
  for (int k = 0; k <= K; ++k) {
    for (int m = -k; m <= k; ++m) f.at(k, m) = rng.cnormal();
    const double target = amp / ((K + 1) * std::pow(bracket(mu(k)), 0.25));
    f.band(k) *= target / f.band(k).norm();
  }
  return f;
}

HomState random_hom_state(int K, double amp, Rng& rng) {
  HomState u{VectorXcd::Zero(K + 1)};
  for (int k = 0; k <= K; ++k) u.a[k] = rng.cnormal() * std::pow(bracket(mu(k)), -1.0);
  const double nrm = hom_sobolev_norm(u, 0.25);
  u.a *= amp / nrm;
  return u;
}

}  // namespace nls
