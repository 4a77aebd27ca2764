#include "nls/norms.hpp"

#include <cmath>
#include <limits>

#include "nls/transform.hpp"

namespace nls {

BandNormProfile band_norm_profile(const SpectralField& u) { return {u.band_norms()}; }

double sobolev_norm(const BandNormProfile& p, double s) {
  double acc = 0.0;
  for (int k = 0; k <= p.band_limit(); ++k) {
    const double w = std::pow(bracket(mu(k)), 2.0 * s);
    acc += w * p.per_band[k] * p.per_band[k];
  }
  return std::sqrt(acc);
}

double sobolev_norm(const SpectralField& u, double s) { return sobolev_norm(band_norm_profile(u), s); }

double modulation_norm(const BandNormProfile& p, double s) {
  double acc = 0.0;
  for (int k = 0; k <= p.band_limit(); ++k) acc += std::pow(bracket(mu(k)), s) * p.per_band[k];
  return acc;
}

double modulation_norm(const SpectralField& u, double s) { return modulation_norm(band_norm_profile(u), s); }

int dyadic_block(int k) {
  int j = 0;
  while ((2 << j) - 1 <= k) ++j;  // smallest j with k < 2^{j+1} - 1
  return j;
}

double besov_norm(const SpectralField& u, double s, double p, double q, const GridPtr& grid) {
  if (p < 1.0 || q < 1.0) throw std::invalid_argument("besov_norm: need p, q >= 1");
  const int K = u.band_limit();
  const int j_max = dyadic_block(K);

  std::vector<double> blocks(static_cast<size_t>(j_max) + 1, 0.0);
  if (p == 2.0) {
    const VectorXd bn = u.band_norms();
    for (int k = 0; k <= K; ++k) blocks[static_cast<size_t>(dyadic_block(k))] += bn[k] * bn[k];
    for (auto& b : blocks) b = std::sqrt(b);
  } else {
    if (!grid) throw std::invalid_argument("besov_norm: p != 2 needs a quadrature grid");
    if (grid->exact_degree() < K) throw std::invalid_argument("besov_norm: grid too coarse");
    for (int j = 0; j <= j_max; ++j) {
      SpectralField blk(K);
      for (int k = (1 << j) - 1; k < (2 << j) - 1 && k <= K; ++k) blk.band(k) = u.band(k);
      blocks[static_cast<size_t>(j)] = lp_norm(synthesize(blk, grid), p);
    }
  }

  const bool qinf = std::isinf(q);
  double acc = 0.0;
  for (int j = 0; j <= j_max; ++j) {
    const double term = std::pow(2.0, j * s) * blocks[static_cast<size_t>(j)];
    if (qinf)
      acc = std::max(acc, term);
    else
      acc += std::pow(term, q);
  }
  return qinf ? acc : std::pow(acc, 1.0 / q);
}

double xts_norm(const TrajectoryProfile& traj, double s) {
  if (traj.times.empty()) throw std::invalid_argument("xts_norm: empty trajectory");
  double acc = 0.0;
  for (int k = 0; k <= traj.band_limit(); ++k)
    acc += std::pow(bracket(mu(k)), s) * traj.per_band.row(k).maxCoeff();
  return acc;
}

double lp_norm(const GridField& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: need p >= 1");
  const auto& g = *f.grid;
  if (std::isinf(p)) return f.values.cwiseAbs().maxCoeff();
  double acc = 0.0;
  for (int i = 0; i < g.n_theta(); ++i)
    acc += g.weights()[i] * f.values.row(i).cwiseAbs().array().pow(p).sum();
  return std::pow(acc * g.phi_weight(), 1.0 / p);
}

}  // namespace nls
