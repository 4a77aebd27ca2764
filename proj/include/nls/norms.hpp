#pragma once

#include <vector>

#include "nls/grid.hpp"
#include "nls/spectral_field.hpp"

namespace nls {

/// Per-band L^2 norms ||P_k u||, the building block of every norm here.
struct BandNormProfile {
  VectorXd per_band;  // size K + 1, entries >= 0

  int band_limit() const { return static_cast<int>(per_band.size()) - 1; }
  double l2() const { return per_band.norm(); }
};

BandNormProfile band_norm_profile(const SpectralField& u);

/// Sampled per-band norms along a trajectory; column t of per_band holds the
/// profile at times[t]. Times strictly increasing.
struct TrajectoryProfile {
  std::vector<double> times;
  MatrixXd per_band;  // (K+1) x n_times

  int band_limit() const { return static_cast<int>(per_band.rows()) - 1; }
};

/// H^s norm: (sum_k <mu_k>^{2s} ||P_k u||^2)^{1/2}.
double sobolev_norm(const SpectralField& u, double s);
double sobolev_norm(const BandNormProfile& p, double s);

/// B^s norm: sum_k <mu_k>^s ||P_k u|| (l^1 over bands).
double modulation_norm(const SpectralField& u, double s);
double modulation_norm(const BandNormProfile& p, double s);

/// Dyadic block index: j such that 2^j - 1 <= k < 2^{j+1} - 1. The blocks
/// [2^j - 1, 2^{j+1} - 1) partition the degrees.
int dyadic_block(int k);

/// Besov norm B^s_{p,q} over dyadic blocks. p = 2 is evaluated spectrally;
/// p != 2 needs a grid fine enough to synthesize u (throws otherwise).
/// q = inf is the sup over blocks.
double besov_norm(const SpectralField& u, double s, double p, double q, const GridPtr& grid = nullptr);

/// X_T^s norm: sum_k <mu_k>^s sup over sampled times of ||P_k u(t)||.
double xts_norm(const TrajectoryProfile& traj, double s);

/// Quadrature L^p norm; p = inf is the max over nodes.
double lp_norm(const GridField& f, double p);

}  // namespace nls
