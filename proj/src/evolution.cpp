#include "nls/evolution.hpp"

#include <cmath>

namespace nls {

namespace {

VectorXcd band_phases(int K, double tau) {
  const VectorXd sym = laplacian_symbol(K);
  VectorXcd out(sym.size());
  for (Eigen::Index i = 0; i < sym.size(); ++i) out[i] = std::polar(1.0, -sym[i] * tau);
  return out;
}

inline double trapezoid_weight(const std::vector<double>& t, size_t i) {
  if (t.size() < 2) return 0.0;
  if (i == 0) return 0.5 * (t[1] - t[0]);
  if (i + 1 == t.size()) return 0.5 * (t[i] - t[i - 1]);
  return 0.5 * (t[i + 1] - t[i - 1]);
}

// min over delta in (0,1) of sqrt(T/delta) + delta^{1/4}, on a fixed grid.
double optimize_delta(double T, double& delta_opt) {
  double best = std::numeric_limits<double>::infinity();
  delta_opt = 0.5;
  for (int i = 1; i <= 99; ++i) {
    const double d = i / 100.0;
    const double val = std::sqrt(T / d) + std::pow(d, 0.25);
    if (val < best) {
      best = val;
      delta_opt = d;
    }
  }
  return best;
}

}  // namespace

State make_state(const SpectralField& u0, double t) {
  State s;
  s.t = t;
  s.v = u0;
  if (t != 0.0) s.v.coeffs() = band_phases(u0.band_limit(), -t).cwiseProduct(u0.coeffs());
  return s;
}

SpectralField physical(const State& s) {
  SpectralField u = s.v;
  if (s.t != 0.0) u.coeffs() = band_phases(u.band_limit(), s.t).cwiseProduct(u.coeffs());
  return u;
}

SpectralField cubic_term(const SpectralField& u, const GridPtr& grid, Nonlinearity nl) {
  if (grid->exact_degree() < u.band_limit())
    throw std::invalid_argument("cubic_term: grid too coarse for dealiased products");
  GridField w = synthesize(u, grid);
  if (nl == Nonlinearity::GaugeCubic)
    w.values = w.values.cwiseProduct(w.values.cwiseAbs2().cast<Complex>());
  else
    w.values = w.values.cwiseProduct(w.values.cwiseProduct(w.values));
  return analyze(w, u.band_limit());
}

State step(const State& s, const EvolutionConfig& cfg, const GridPtr& grid) {
  if (!cfg.valid()) throw std::invalid_argument("step: invalid config");
  if (!s.v.coeffs().allFinite()) throw std::runtime_error("step: nonfinite state");
  const int K = s.v.band_limit();
  const double h = cfg.dt;
  const Complex minus_i(0.0, -1.0);
  const double sg = cfg.sign;

  const VectorXcd ph = band_phases(K, 0.5 * h);   // e^{-i mu^2 h/2}
  const VectorXcd phc = ph.conjugate();
  const VectorXcd ph1 = ph.cwiseProduct(ph);      // e^{-i mu^2 h}
  const VectorXcd ph1c = ph1.conjugate();

  auto nonlinear = [&](const VectorXcd& c) {
    SpectralField u(K);
    u.coeffs() = c;
    return (minus_i * sg * cubic_term(u, grid, cfg.nl).coeffs()).eval();
  };

  const VectorXcd c = physical(s).coeffs();
  const VectorXcd k1 = nonlinear(c);
  const VectorXcd k2 = phc.cwiseProduct(nonlinear(ph.cwiseProduct(c + 0.5 * h * k1)));
  const VectorXcd k3 = phc.cwiseProduct(nonlinear(ph.cwiseProduct(c + 0.5 * h * k2)));
  const VectorXcd k4 = ph1c.cwiseProduct(nonlinear(ph1.cwiseProduct(c + h * k3)));

  SpectralField u_next(K);
  u_next.coeffs() = ph1.cwiseProduct(c + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  return make_state(u_next, s.t + h);
}

double field_energy(const SpectralField& u, const GridPtr& grid, int sign) {
  const double kinetic = laplacian_symbol(u.band_limit()).dot(u.coeffs().cwiseAbs2());
  const GridField w = synthesize(u, grid);
  double quartic = 0.0;
  for (int i = 0; i < grid->n_theta(); ++i)
    quartic += grid->weights()[i] * w.values.row(i).cwiseAbs2().cwiseAbs2().sum();
  quartic *= grid->phi_weight();
  return kinetic + 0.5 * sign * quartic;
}

RunRecord evolve(const SpectralField& u0, const EvolutionConfig& cfg) {
  if (!cfg.valid()) throw std::invalid_argument("evolve: invalid config");
  if (u0.band_limit() != cfg.K) throw std::invalid_argument("evolve: initial data band limit mismatch");
  const GridPtr grid = QuadratureGrid::make(cfg.K);

  RunRecord rec;
  rec.cfg = cfg;
  const long n_steps = std::lround(cfg.T / cfg.dt);

  State s = make_state(u0);
  auto record = [&](const State& st) {
    const SpectralField u = physical(st);
    rec.times.push_back(st.t);
    rec.snapshots.push_back(u.coeffs());
    rec.mass.push_back(u.coeffs().squaredNorm());
    rec.energy.push_back(field_energy(u, grid, cfg.sign));
  };
  record(s);

  for (long n = 1; n <= n_steps; ++n) {
    s = step(s, cfg, grid);
    if (!s.v.coeffs().allFinite() || sobolev_norm(physical(s), 1.0) > cfg.guard_threshold) {
      rec.guard_tripped = true;
      rec.guard_time = s.t;
      rec.guard_reason = s.v.coeffs().allFinite() ? "H^1 norm above guard threshold" : "nonfinite values";
      return rec;
    }
    if (n % cfg.sample_stride == 0 || n == n_steps) record(s);
  }
  return rec;
}

TrajectoryProfile trajectory(const RunRecord& rec) {
  TrajectoryProfile tp;
  tp.times = rec.times;
  tp.per_band.resize(rec.cfg.K + 1, static_cast<Eigen::Index>(rec.times.size()));
  for (size_t j = 0; j < rec.snapshots.size(); ++j) {
    SpectralField u(rec.cfg.K);
    u.coeffs() = rec.snapshots[j];
    tp.per_band.col(static_cast<Eigen::Index>(j)) = u.band_norms();
  }
  return tp;
}

AprioriReport apriori_diagnostics(const RunRecord& rec, const ResonanceParams& p) {
  const int K = rec.cfg.K;
  const size_t nt = rec.times.size();
  const ResonanceTable table = build_resonance_table(K, p);
  const GridPtr grid = QuadratureGrid::make(K);

  // B(k,t) = <mu_k>^{1/4} ||P_k u(t)||, q(k,t) = ||P_k(|u|^2 u)(t)||.
  MatrixXd B(K + 1, nt), Q(K + 1, nt);
  VectorXd quarter_weight(K + 1), inv_34(K + 1);
  for (int k = 0; k <= K; ++k) {
    quarter_weight[k] = std::pow(bracket(mu(k)), 0.25);
    inv_34[k] = std::pow(bracket(mu(k)), -(0.75 - p.eps));
  }
  for (size_t j = 0; j < nt; ++j) {
    SpectralField u(K);
    u.coeffs() = rec.snapshots[j];
    B.col(static_cast<Eigen::Index>(j)) = quarter_weight.cwiseProduct(u.band_norms());
    Q.col(static_cast<Eigen::Index>(j)) = cubic_term(u, grid, Nonlinearity::GaugeCubic).band_norms();
  }

  AprioriReport out;
  for (size_t j = 0; j < nt; ++j) {
    const double wt = trapezoid_weight(rec.times, j);
    const auto Bc = B.col(static_cast<Eigen::Index>(j));
    const auto Qc = Q.col(static_cast<Eigen::Index>(j));
    double j1 = 0, j4 = 0, j5 = 0;
    for (int k1 = 0; k1 <= K; ++k1)
      for (int k2 = 0; k2 <= K; ++k2)
        for (int k3 = 0; k3 <= K; ++k3) {
          const Eigen::Index idx = table.triple_index(k1, k2, k3);
          const double prod23 = Bc[k2] * Bc[k3];
          j1 += table.sigma_count[idx] * Bc[k1] * prod23;
          j4 += table.kernel_k_ge_k1[idx] * Qc[k1] * prod23;
          j5 += table.kernel_k_lt_k1[idx] * Qc[k1] * prod23;
        }
    const double j3 = inv_34.dot(Qc);
    out.j1_series.push_back(j1);
    out.j3_series.push_back(j3);
    out.j4_series.push_back(j4);
    out.j5_series.push_back(j5);
    out.J1 += wt * j1;
    out.J3 += wt * j3;
    out.J4 += wt * j4;
    out.J5 += wt * j5;
  }

  const VectorXd supB = B.rowwise().maxCoeff();
  for (int k1 = 0; k1 <= K; ++k1)
    for (int k2 = 0; k2 <= K; ++k2)
      for (int k3 = 0; k3 <= K; ++k3)
        out.J2 += table.nonres_kernel[table.triple_index(k1, k2, k3)] * supB[k1] * supB[k2] * supB[k3];

  out.xts = supB.sum();
  out.b14_initial = B.col(0).sum();

  const double T = rec.times.back();
  const double f = optimize_delta(T, out.delta_opt);
  const double denom = out.b14_initial + f * out.xts * out.xts + std::sqrt(T) * out.xts * out.xts * out.xts;
  out.residual_ratio = (denom > 0.0) ? out.xts / denom : 0.0;
  const double j1_scale = (T / p.delta) * out.xts * out.xts * out.xts;
  out.j1_constant = (j1_scale > 0.0) ? out.J1 / j1_scale : 0.0;
  return out;
}

DifferenceReport difference_diagnostics(const RunRecord& a, const RunRecord& b) {
  if (a.cfg.K != b.cfg.K || a.cfg.dt != b.cfg.dt || a.cfg.T != b.cfg.T ||
      a.cfg.sample_stride != b.cfg.sample_stride || a.cfg.sign != b.cfg.sign || a.cfg.nl != b.cfg.nl ||
      a.times.size() != b.times.size())
    throw std::invalid_argument("difference_diagnostics: mismatched configs");
  const int K = a.cfg.K;

  TrajectoryProfile diff;
  diff.times = a.times;
  diff.per_band.resize(K + 1, static_cast<Eigen::Index>(a.times.size()));
  for (size_t j = 0; j < a.times.size(); ++j) {
    SpectralField d(K);
    d.coeffs() = a.snapshots[j] - b.snapshots[j];
    diff.per_band.col(static_cast<Eigen::Index>(j)) = d.band_norms();
  }

  DifferenceReport out;
  out.diff_xts = xts_norm(diff, 0.25);
  SpectralField d0(K);
  d0.coeffs() = a.snapshots[0] - b.snapshots[0];
  out.initial_diff_b14 = modulation_norm(d0, 0.25);
  out.M = std::max(xts_norm(trajectory(a), 0.25), xts_norm(trajectory(b), 0.25));
  out.lipschitz_ratio = (out.initial_diff_b14 > 0.0) ? out.diff_xts / out.initial_diff_b14 : 0.0;

  const double T = a.times.back();
  const double f = optimize_delta(T, out.delta_opt);
  const double denom = out.initial_diff_b14 + (f * out.M + std::sqrt(T) * out.M * out.M) * out.diff_xts;
  out.absorbed_ratio = (denom > 0.0) ? out.diff_xts / denom : 0.0;
  return out;
}

ContinuityReport continuity_modulus(const RunRecord& rec, double s) {
  if (rec.times.size() < 2) throw std::invalid_argument("continuity_modulus: need at least two snapshots");
  const int K = rec.cfg.K;
  const double X = xts_norm(trajectory(rec), s);

  ContinuityReport out;
  for (size_t i = 0; i < rec.times.size(); ++i)
    for (size_t j = i + 1; j < rec.times.size(); ++j) {
      SpectralField d(K);
      d.coeffs() = rec.snapshots[j] - rec.snapshots[i];
      const double inc = modulation_norm(d, s);
      const double dt = rec.times[j] - rec.times[i];
      double d_opt = 0.0;
      const double bound = optimize_delta(dt, d_opt) * X * X + std::sqrt(dt) * X * X * X;
      const double ratio = (inc > 0.0 && bound > 0.0) ? inc / bound : 0.0;
      out.entries.push_back({rec.times[j], rec.times[i], inc, bound, ratio});
      out.worst_ratio = std::max(out.worst_ratio, ratio);
    }
  return out;
}

}  // namespace nls
