#include "nls/resonance.hpp"

#include <algorithm>
#include <cmath>

namespace nls {

double phase(const PhaseQuadruple& q) {
  return mu_squared(q.k) - mu_squared(q.k1) + mu_squared(q.k2) - mu_squared(q.k3);
}

double radicand(const PhaseQuadruple& q) {
  return mu_squared(q.k1) - mu_squared(q.k2) + mu_squared(q.k3);
}

bool in_resonant_set(const PhaseQuadruple& q, const ResonanceParams& p) {
  if (!q.valid() || !p.valid()) throw std::invalid_argument("in_resonant_set: invalid input");
  if (mu(q.k) <= 1.0 / p.delta) return true;
  const double r = radicand(q);
  if (r < 0.0) return false;
  return std::abs(mu(q.k) - std::sqrt(r)) <= 1.0;
}

double nonresonant_kernel(const PhaseQuadruple& q, double eps) {
  const double r = radicand(q);
  const double gap = (r >= 0.0) ? mu(q.k) - std::sqrt(r) : mu(q.k);
  return 1.0 / (bracket(gap) * std::pow(bracket(mu(q.k)), eps));
}

double nonresonant_weight(const PhaseQuadruple& q, double eps, const ResonanceParams& p) {
  if (in_resonant_set(q, p)) throw std::domain_error("nonresonant_weight: quadruple is resonant");
  return nonresonant_kernel(q, eps);
}

QuadrupleRecord make_record(const PhaseQuadruple& q, const ResonanceParams& p) {
  const bool member = in_resonant_set(q, p);
  return {q.k, q.k1, q.k2, q.k3, phase(q), member, member ? 0.0 : nonresonant_kernel(q, p.eps)};
}

DisjointnessReport audit_disjointness(int K, const ResonanceParams& p) {
  DisjointnessReport rep;
  rep.K = K;
  rep.delta = p.delta;

  // Pairs the hypothesis covers, plus the excluded ones for the record.
  std::vector<std::pair<int, int>> pairs;
  for (int k = 0; k <= K; ++k)
    for (int kp = k + 1; kp <= K; ++kp) {
      if (kp - k > 2 && std::min(mu(k), mu(kp)) > 2.0 / p.delta)
        pairs.emplace_back(k, kp);
      else
        rep.out_of_hypothesis.emplace_back(k, kp);
    }
  rep.pairs_in_hypothesis = pairs.size();

  std::vector<int> members;
  members.reserve(static_cast<size_t>(K) + 1);
  for (int k1 = 0; k1 <= K; ++k1)
    for (int k2 = 0; k2 <= K; ++k2)
      for (int k3 = 0; k3 <= K; ++k3) {
        ++rep.triples_checked;
        members.clear();
        for (int k = 0; k <= K; ++k)
          if (in_resonant_set({k, k1, k2, k3}, p)) members.push_back(k);
        for (size_t a = 0; a < members.size(); ++a)
          for (size_t b = a + 1; b < members.size(); ++b) {
            const int k = members[a], kp = members[b];
            if (kp - k > 2 && std::min(mu(k), mu(kp)) > 2.0 / p.delta)
              rep.violations.push_back({k, kp, k1, k2, k3});
          }
      }
  return rep;
}

PhaseAuditReport audit_nonvanishing_phase(int K, const ResonanceParams& p) {
  PhaseAuditReport rep;
  rep.K = K;
  rep.delta = p.delta;
  for (int k = 0; k <= K; ++k)
    for (int k1 = 0; k1 <= K; ++k1)
      for (int k2 = 0; k2 <= K; ++k2)
        for (int k3 = 0; k3 <= K; ++k3) {
          const PhaseQuadruple q{k, k1, k2, k3};
          if (in_resonant_set(q, p)) {
            ++rep.resonant_skipped;
            continue;
          }
          ++rep.quadruples_checked;
          if (phase(q) == 0.0) rep.violations.push_back(make_record(q, p));
        }
  return rep;
}

double convolution_gamma(double alpha, double beta, double eps) {
  if (beta < 1.0) return alpha + beta - 1.0;
  if (beta == 1.0) return alpha - eps;
  return alpha;
}

namespace {

double peak_integrand(double t, double a, double b, double alpha, double beta) {
  return std::pow(bracket(t - a), -alpha) * std::pow(bracket(t - b), -beta);
}

double adaptive_simpson(double lo, double hi, double flo, double fmid, double fhi, double whole, double tol,
                        int depth, double a, double b, double alpha, double beta) {
  const double mid = 0.5 * (lo + hi);
  const double lmid = 0.5 * (lo + mid);
  const double rmid = 0.5 * (mid + hi);
  const double fl = peak_integrand(lmid, a, b, alpha, beta);
  const double fr = peak_integrand(rmid, a, b, alpha, beta);
  const double left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid);
  const double right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(lo, mid, flo, fl, fmid, left, 0.5 * tol, depth - 1, a, b, alpha, beta) +
         adaptive_simpson(mid, hi, fmid, fr, fhi, right, 0.5 * tol, depth - 1, a, b, alpha, beta);
}

double integrate_segment(double lo, double hi, double a, double b, double alpha, double beta, double tol) {
  const double flo = peak_integrand(lo, a, b, alpha, beta);
  const double fhi = peak_integrand(hi, a, b, alpha, beta);
  const double fmid = peak_integrand(0.5 * (lo + hi), a, b, alpha, beta);
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  return adaptive_simpson(lo, hi, flo, fmid, fhi, whole, tol, 48, a, b, alpha, beta);
}

}  // namespace

double convolution_lemma_check(double a, double b, double alpha, double beta, double eps) {
  if (!(alpha > 0.0 && alpha <= beta && alpha + beta > 1.0 && eps > 0.0))
    throw std::invalid_argument("convolution_lemma_check: exponent hypotheses violated");

  const double R = 1e6;
  const double A = std::max(std::abs(a), std::abs(b));
  if (A > 0.5 * R) throw std::invalid_argument("convolution_lemma_check: |a|, |b| too large for the truncation");

  // Split at the two peaks so the adaptive rule resolves them.
  std::vector<double> cuts = {-R, a - 16.0, a - 1.0, a, a + 1.0, a + 16.0,
                              b - 16.0, b - 1.0, b, b + 1.0, b + 16.0, R};
  std::sort(cuts.begin(), cuts.end());
  double integral = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = std::max(cuts[i], -R), hi = std::min(cuts[i + 1], R);
    if (hi > lo) integral += integrate_segment(lo, hi, a, b, alpha, beta, 1e-10);
  }
  // Analytic tail: |t| > R with <t - c> >= |t| - A.
  integral += 2.0 * std::pow(R - A, 1.0 - alpha - beta) / (alpha + beta - 1.0);

  return integral * std::pow(bracket(a - b), convolution_gamma(alpha, beta, eps));
}

ResonanceTable build_resonance_table(int K, const ResonanceParams& p) {
  ResonanceTable t;
  t.K = K;
  t.params = p;
  const Eigen::Index n = static_cast<Eigen::Index>(K + 1) * (K + 1) * (K + 1);
  t.sigma_count = VectorXd::Zero(n);
  t.nonres_kernel = VectorXd::Zero(n);
  t.kernel_k_ge_k1 = VectorXd::Zero(n);
  t.kernel_k_lt_k1 = VectorXd::Zero(n);

  for (int k1 = 0; k1 <= K; ++k1) {
    const double inv_mu1 = std::pow(bracket(mu(k1)), -(0.75 - p.eps));
    for (int k2 = 0; k2 <= K; ++k2)
      for (int k3 = 0; k3 <= K; ++k3) {
        const Eigen::Index idx = t.triple_index(k1, k2, k3);
        for (int k = 0; k <= K; ++k) {
          const PhaseQuadruple q{k, k1, k2, k3};
          if (in_resonant_set(q, p)) {
            t.sigma_count[idx] += 1.0;
            continue;
          }
          const double w = nonresonant_kernel(q, p.eps);
          t.nonres_kernel[idx] += w;
          if (k >= k1) t.kernel_k_ge_k1[idx] += w * inv_mu1;
          if (k < k1) {
            const double r = radicand(q);
            const double gap = (r >= 0.0) ? mu(k) - std::sqrt(r) : mu(k);
            t.kernel_k_lt_k1[idx] += 1.0 / (bracket(gap) * std::pow(bracket(mu(k)), 0.75));
          }
        }
      }
  }
  return t;
}

}  // namespace nls
