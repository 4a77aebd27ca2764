#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nls/grid.hpp"
#include "nls/spectral_field.hpp"

namespace nls {

/// Least-squares fit of log(y) against log(x) on positive data.
struct ExponentFit {
  VectorXd xs, ys;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of log-residuals
};

/// Fit using only points with x >= x_min (bracket effects pollute small
/// degrees).
ExponentFit fit_loglog(const VectorXd& xs, const VectorXd& ys, double x_min = 8.0);

struct RatioEntry {
  int k1 = 0;
  int k2 = 0;  // unused (0) for single-degree measurements
  double ratio = 0.0;
  std::string candidate;
};

struct SoggeResult {
  double p = 2.0;
  std::vector<RatioEntry> table;  // per (k, candidate type)
  ExponentFit fit;                // max ratio per degree
  ExponentFit fit_random;         // random candidates only
  ExponentFit fit_structured;     // max of zonal / highest per degree
  ExponentFit fit_zonal;          // zonal candidates only
};

/// L^p/L^2 growth over the eigenspaces H_k: max over seeded random unit
/// fields and the two structured candidates Y_k^0, Y_k^k. Even finite p uses
/// a quadrature-exact grid; p = inf (or non-even) uses a dense sampling grid
/// and the grid max.
SoggeResult measure_sogge(double p, const std::vector<int>& ks, int trials, std::uint64_t seed);

struct BilinearResult {
  std::vector<RatioEntry> table;  // per pair: max ratio and its candidate
  ExponentFit fit;                // vs min(<k1>, <k2>)
};

/// ||P_{k1} f P_{k2} g||_{L^2} / (||f|| ||g||) over random eigenspace pairs
/// plus the structured pair (highest, highest).
BilinearResult measure_bilinear(const std::vector<std::pair<int, int>>& pairs, int trials,
                                std::uint64_t seed);

struct RestrictionResult {
  std::vector<int> ks;
  VectorXd l4_ratio;     // ||psi_k~||_{L^4} / ||psi_k~||_{L^2}, Wallis-exact
  ExponentFit fit;       // expected growth exponent 1/8
  MatrixXd four_norms;   // rows: H^{1/4}, B^{1/4}, B^{1/4}_{2,1}, B^{1/4}_{2,inf} of the raw (x1+ix2)^k
  double band_min = 0.0; // extremes of all four norms over ks
  double band_max = 0.0;
};

/// Growth of the highest-harmonic family and the four norms that stay in a
/// bounded band at s = 1/4.
RestrictionResult restriction_counterexample(const std::vector<int>& ks);

}  // namespace nls
