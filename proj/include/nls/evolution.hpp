#pragma once

#include <string>
#include <vector>

#include "nls/norms.hpp"
#include "nls/resonance.hpp"
#include "nls/transform.hpp"

namespace nls {

enum class Nonlinearity {
  GaugeCubic,  // |u|^2 u
  PlainCubic,  // u^3
};

struct EvolutionConfig {
  int K = 16;
  double dt = 1e-3;
  double T = 1.0;
  double delta = 0.1;       // resonance parameter attached to diagnostics
  double s = 0.25;          // monitoring regularity
  int sample_stride = 10;   // steps per recorded snapshot
  int sign = +1;            // +1 defocusing, -1 focusing
  Nonlinearity nl = Nonlinearity::GaugeCubic;
  double guard_threshold = 1e6;  // abort if ||u||_{H^1} exceeds this

  bool valid() const { return K >= 0 && dt > 0 && T > 0 && delta > 0 && delta < 1 && sample_stride > 0; }
};

/// Interaction-picture state: v_{k,m}(t) = e^{+i t mu_k^2} c_{k,m}(t) where c
/// are the coefficients of the physical solution. Per-band norms of v and of
/// the physical field coincide.
struct State {
  double t = 0.0;
  SpectralField v;
};

State make_state(const SpectralField& u0, double t = 0.0);
SpectralField physical(const State& s);

/// Band-limited projection of the cubic nonlinearity, computed
/// pseudo-spectrally (synthesize, pointwise product, analyze). Exact for the
/// grid sizing rule since the integrand is a quadruple product of
/// band-limited fields. Throws if the grid cannot hold the band limit.
SpectralField cubic_term(const SpectralField& u, const GridPtr& grid,
                         Nonlinearity nl = Nonlinearity::GaugeCubic);

/// One step of the Lawson(RK4) integrator: classical RK4 on the interaction
/// picture variable, with the linear flow applied exactly through the
/// band-wise phases.
State step(const State& s, const EvolutionConfig& cfg, const GridPtr& grid);

struct RunRecord {
  EvolutionConfig cfg;
  std::vector<double> times;
  std::vector<VectorXcd> snapshots;  // physical coefficients at sample times
  std::vector<double> mass;          // ||u(t)||_{L^2}^2
  std::vector<double> energy;        // int |grad u|^2 + (sign/2) int |u|^4
  bool guard_tripped = false;
  double guard_time = 0.0;
  std::string guard_reason;

  int band_limit() const { return cfg.K; }
};

RunRecord evolve(const SpectralField& u0, const EvolutionConfig& cfg);

TrajectoryProfile trajectory(const RunRecord& rec);

/// Conserved energy functional of the truncated flow.
double field_energy(const SpectralField& u, const GridPtr& grid, int sign);

struct AprioriReport {
  double J1 = 0, J2 = 0, J3 = 0, J4 = 0, J5 = 0;
  double xts = 0;            // ||u||_{X_T^{1/4}} over the sample grid
  double b14_initial = 0;    // ||u_0||_{B^{1/4}}
  double residual_ratio = 0; // xts / min_delta [b14 + (sqrt(T/d)+d^{1/4}) xts^2 + sqrt(T) xts^3]
  double delta_opt = 0;
  double j1_constant = 0;    // J1 / ((T/delta) xts^3) at the table's delta
  // per-snapshot integrands of the time integrals (J2 has none)
  std::vector<double> j1_series, j3_series, j4_series, j5_series;
};

/// Discrete J1..J5 and the a priori inequality residual, evaluated on the
/// stored snapshots (time integrals by the trapezoid rule).
AprioriReport apriori_diagnostics(const RunRecord& rec, const ResonanceParams& p);

struct DifferenceReport {
  double diff_xts = 0;
  double initial_diff_b14 = 0;
  double lipschitz_ratio = 0;  // diff_xts / initial_diff_b14
  double M = 0;                // max of the two X_T^{1/4} norms
  double absorbed_ratio = 0;    // diff_xts / (initial + (f(d) M + sqrt(T) M^2) diff_xts), min over d
  double delta_opt = 0;
};

/// Two-solution difference tracking; requires matching configurations.
DifferenceReport difference_diagnostics(const RunRecord& a, const RunRecord& b);

struct ContinuityEntry {
  double t1, t2;
  double increment;  // ||u(t1) - u(t2)||_{B^s}
  double bound;      // min over delta of (sqrt(dt/d)+d^{1/4}) X^2 + sqrt(dt) X^3
  double ratio;
};

struct ContinuityReport {
  std::vector<ContinuityEntry> entries;
  double worst_ratio = 0;
};

/// Time modulus of continuity against the two-parameter bound, every snapshot
/// pair, bound optimized over delta.
ContinuityReport continuity_modulus(const RunRecord& rec, double s);

}  // namespace nls
