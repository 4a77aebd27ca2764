#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nls/types.hpp"

namespace nls {

/// Interaction indices (k; k1, k2, k3) of one cubic mode coupling.
struct PhaseQuadruple {
  int k = 0, k1 = 0, k2 = 0, k3 = 0;

  bool valid() const { return k >= 0 && k1 >= 0 && k2 >= 0 && k3 >= 0; }
};

struct ResonanceParams {
  double delta = 0.1;  // in (0, 1)
  double eps = 0.1;    // kernel exponent, any positive value

  bool valid() const { return delta > 0.0 && delta < 1.0 && eps > 0.0; }
};

/// phi = mu_k^2 - mu_{k1}^2 + mu_{k2}^2 - mu_{k3}^2. Integer valued (each
/// mu^2 = k(k+1)), exact in double for desk-scale degrees.
double phase(const PhaseQuadruple& q);

/// mu_{k1}^2 - mu_{k2}^2 + mu_{k3}^2, the radicand of the resonance root.
double radicand(const PhaseQuadruple& q);

/// Membership in sigma_k: mu_k <= 1/delta, or the radicand is >= 0 and
/// |mu_k - sqrt(radicand)| <= 1. A negative radicand never satisfies the
/// root clause.
bool in_resonant_set(const PhaseQuadruple& q, const ResonanceParams& p);

/// Reciprocal kernel 1 / (<mu_k - sqrt(r)> <mu_k>^eps) of the non-resonant
/// sums; falls back to <mu_k>^{-1-eps} when the radicand is negative.
/// Throws std::domain_error on resonant quadruples.
double nonresonant_weight(const PhaseQuadruple& q, double eps, const ResonanceParams& p);

/// Kernel value without the membership gate (used by precomputed tables and
/// reports, where resonant entries are skipped by construction).
double nonresonant_kernel(const PhaseQuadruple& q, double eps);

/// One serializable audit record.
struct QuadrupleRecord {
  int k, k1, k2, k3;
  double phase;
  bool member;
  double weight;  // 0 for members
};

QuadrupleRecord make_record(const PhaseQuadruple& q, const ResonanceParams& p);

/// A triple claimed by the resonant sets of two well-separated degrees.
struct DisjointnessViolation {
  int k, k_prime, k1, k2, k3;
};

struct DisjointnessReport {
  int K;
  double delta;
  std::size_t pairs_in_hypothesis = 0;
  std::size_t triples_checked = 0;
  std::vector<std::pair<int, int>> out_of_hypothesis;  // pairs the claim does not cover
  std::vector<DisjointnessViolation> violations;
};

/// Exhaustive check that sigma_k and sigma_k' share no triple whenever
/// |k - k'| > 2 and min(mu_k, mu_k') > 2/delta, over all indices <= K.
DisjointnessReport audit_disjointness(int K, const ResonanceParams& p);

struct PhaseAuditReport {
  int K;
  double delta;
  std::size_t quadruples_checked = 0;
  std::size_t resonant_skipped = 0;
  std::vector<QuadrupleRecord> violations;
};

/// Exhaustive check that phi != 0 outside the resonant sets, all indices <= K.
PhaseAuditReport audit_nonvanishing_phase(int K, const ResonanceParams& p);

/// gamma exponent of the 1D convolution bound for given (alpha, beta, eps).
double convolution_gamma(double alpha, double beta, double eps);

/// Evaluates int dt / (<t-a>^alpha <t-b>^beta) by adaptive quadrature over
/// |t| <= 1e6 plus an analytic tail bound, and returns the ratio of the
/// integral to <a-b>^{-gamma}. Requires 0 < alpha <= beta, alpha + beta > 1,
/// eps > 0.
double convolution_lemma_check(double a, double b, double alpha, double beta, double eps);

/// Per-triple kernel sums over the output degree, precomputed once per
/// (K, params) and reused by the trajectory diagnostics. Triple (k1,k2,k3)
/// sits at flat index (k1*(K+1) + k2)*(K+1) + k3.
struct ResonanceTable {
  int K;
  ResonanceParams params;
  VectorXd sigma_count;      // #{k <= K : triple in sigma_k}
  VectorXd nonres_kernel;    // sum_{k <= K, not in sigma_k} kernel(k, triple)
  VectorXd kernel_k_ge_k1;   // same sum restricted to k >= k1, divided by <mu_{k1}>^{3/4-eps}
  VectorXd kernel_k_lt_k1;   // sum over k < k1 of 1/(<mu_k - sqrt(r)> <mu_k>^{3/4})

  Eigen::Index triple_index(int k1, int k2, int k3) const {
    return (static_cast<Eigen::Index>(k1) * (K + 1) + k2) * (K + 1) + k3;
  }
};

ResonanceTable build_resonance_table(int K, const ResonanceParams& p);

}  // namespace nls
