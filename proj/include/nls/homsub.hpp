#pragma once

#include <cstdint>
#include <vector>

#include "nls/spectral_field.hpp"

namespace nls {

/// Coefficient vector in the homogeneous-harmonic algebra
/// span{ w_k = sin^k(theta) e^{i k phi} }. The w_k are mutually orthogonal
/// (distinct longitude frequencies) with ||w_k|| = nu_k = sqrt(2 pi W_{2k+1}),
/// and each is an exact Laplacian eigenfunction (w_k is proportional to Y_k^k).
struct HomState {
  VectorXcd a;

  int band_limit() const { return static_cast<int>(a.size()) - 1; }
};

/// nu_k for k = 0..K.
VectorXd hom_basis_norms(int K);

double hom_l2_norm(const HomState& u);
double hom_sobolev_norm(const HomState& u, double s);

/// Exact coefficients of u^3: (u^3)_m = sum_{k1+k2+k3=m} a_{k1} a_{k2} a_{k3},
/// band limit 3K (direct triple convolution).
HomState hom_cube(const HomState& u);

/// Embedding into the full spherical basis: w_m = (-1)^m nu_m Y_m^m.
SpectralField hom_to_spectral(const HomState& u);
HomState spectral_to_hom(const SpectralField& f);

/// Trajectory on a uniform time grid t_i = t0 + i dt; column i of a holds the
/// coefficients at t_i.
struct HomTrajectory {
  double t0 = 0.0;
  double dt = 0.0;
  MatrixXcd a;  // (K+1) x n_times

  int band_limit() const { return static_cast<int>(a.rows()) - 1; }
  int n_times() const { return static_cast<int>(a.cols()); }
  double time(int i) const { return t0 + i * dt; }
  double span() const { return dt * (n_times() - 1); }
};

/// Smooth bump: exp(1 - 1/(1 - t^2)) on |t| < 1, zero outside. theta = 1 at 0.
double bump(double t);

/// Multiply the trajectory by bump((t - center)/half_width).
HomTrajectory apply_bump(const HomTrajectory& traj, double center, double half_width);

/// Lawson(RK4) integration of i a' - mu^2 a = (u^3), Galerkin-truncated at
/// K_keep; the diagonal linear flow is exact. Throws on blow-up.
HomTrajectory hom_evolve(const HomState& u0, double T, double dt, int K_keep, double guard_threshold = 1e6);

/// Discrete X^{s,b} norm: windows the trajectory (centered bump over its
/// span; pass window = false for pre-windowed data), applies an 8x
/// zero-padded DFT in t, and sums nu_k^2 <tau + mu_k^2>^{2b} <mu_k>^{2s}
/// |a_hat_k(tau)|^2 dtau over the tau grid. Also serves negative b.
/// Throws when the sampling rate cannot resolve the dispersion surface.
double xsb_norm(const HomTrajectory& traj, double s, double b, bool window = true);

/// Coefficients of the pointwise product (convolution in k at each time).
HomTrajectory hom_product(const HomTrajectory& f, const HomTrajectory& g);

struct BilinearReport {
  int K = 0;
  double b = 0;
  int trials = 0;
  double max_ratio = 0;      // LHS over the smaller (harder) weight placement
  double max_ratio_fixed = 0;  // LHS over the larger placement
  std::vector<double> ratios;
};

/// Empirical check of ||f1 f2||_{L^2_{t,x}} <= C ||f1||_{X^{0,b}}
/// ||f2||_{X^{s2,b}} over random homogeneous pairs; the left side uses the
/// exact Wallis reduction. s2 defaults to 1/4; both placements of the weight
/// are measured and the ratio against the smaller right side is reported as
/// max_ratio. Requires b > 3/8.
BilinearReport verify_bilinear_xsb(int trials, int K, double b, std::uint64_t seed, double s2 = 0.25);

/// sup over tau and m <= m_max of the reduced kernel sum
/// sum_{k1 <= m} <tau - mu_{k1}^2 - mu_{m-k1}^2>^{-4b+1}, returned as its
/// square root. Empty tau_grid means peak-anchored candidates per m.
double compute_M(const std::vector<double>& tau_grid, int m_max, double b);

struct TrilinearReport {
  int K = 0;
  double b = 0, b_prime = 0;
  int trials = 0;
  double max_ratio = 0;
  std::vector<double> ratios;
};

/// Empirical check of ||f1 f2 f3||_{X^{1/4,b'-1}} <= C prod ||f_j||_{X^{s2,b}}
/// over random homogeneous triples. Requires 3/8 < b, b' < 5/8.
TrilinearReport verify_trilinear(int trials, int K, double b, double b_prime, std::uint64_t seed,
                                 double s2 = 0.25);

struct PicardResult {
  HomTrajectory trajectory;       // last iterate
  std::vector<double> diffs;      // successive differences in X^{1/4,b}
  std::vector<double> ratios;     // diffs[i+1] / diffs[i]
  bool contracted = false;        // every ratio from the second on <= 1/2
  int iterations = 0;
};

/// Picard iteration of the Duhamel map u -> e^{itL} u0 - i int e^{i(t-t')L}
/// u^3(t') dt' on a uniform grid; the propagator is exact and the integral
/// uses 4th-order cumulative quadrature. Geometric decay of the successive
/// X^{1/4,b} differences certifies the contraction.
PicardResult picard_solve(const HomState& u0, double T, double b, int max_iter, double dt = 1e-3);

}  // namespace nls
