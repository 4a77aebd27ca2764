#include "nls/estimates.hpp"

#include <cmath>

#include "nls/norms.hpp"
#include "nls/samplers.hpp"
#include "nls/transform.hpp"

namespace nls {

ExponentFit fit_loglog(const VectorXd& xs, const VectorXd& ys, double x_min) {
  ExponentFit fit;
  fit.xs = xs;
  fit.ys = ys;
  std::vector<double> lx, ly;
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    if (xs[i] < x_min) continue;
    if (!(ys[i] > 0.0)) throw std::invalid_argument("fit_loglog: nonpositive data");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  const auto n = static_cast<Eigen::Index>(lx.size());
  if (n < 2) throw std::invalid_argument("fit_loglog: fewer than two points above x_min");
  Eigen::Map<VectorXd> X(lx.data(), n), Y(ly.data(), n);
  const double mx = X.mean(), my = Y.mean();
  const VectorXd dx = X.array() - mx;
  fit.slope = dx.dot(Y.array().matrix() - VectorXd::Constant(n, my)) / dx.squaredNorm();
  fit.intercept = my - fit.slope * mx;
  fit.residual = std::sqrt((Y.array() - (fit.intercept + fit.slope * X.array())).square().mean());
  return fit;
}

namespace {

ExponentFit fit_from_table(const std::vector<RatioEntry>& table, auto&& keep) {
  std::vector<double> xs, ys;
  // collapse to the max ratio per degree
  std::vector<std::pair<int, double>> best;
  for (const auto& e : table) {
    if (!keep(e)) continue;
    bool found = false;
    for (auto& [k, r] : best)
      if (k == e.k1) {
        r = std::max(r, e.ratio);
        found = true;
      }
    if (!found) best.emplace_back(e.k1, e.ratio);
  }
  for (const auto& [k, r] : best) {
    xs.push_back(k);
    ys.push_back(r);
  }
  if (xs.size() < 2) return {};
  Eigen::Map<VectorXd> X(xs.data(), static_cast<Eigen::Index>(xs.size()));
  Eigen::Map<VectorXd> Y(ys.data(), static_cast<Eigen::Index>(ys.size()));
  return fit_loglog(X, Y);
}

}  // namespace

SoggeResult measure_sogge(double p, const std::vector<int>& ks, int trials, std::uint64_t seed) {
  if (p < 2.0) throw std::invalid_argument("measure_sogge: need p >= 2");
  const int k_max = *std::max_element(ks.begin(), ks.end());

  // Even p: quadrature integrates |f|^p exactly. Otherwise sample densely and
  // rely on the grid max / direct quadrature.
  const bool exact = std::isfinite(p) && std::floor(p) == p && static_cast<long>(p) % 2 == 0;
  GridPtr grid;
  if (exact)
    grid = QuadratureGrid::make(std::max(k_max, (static_cast<int>(p) * k_max + 3) / 4), true);
  else
    // Sup norms concentrate at the poles for zonal data; the node gap of a
    // coarse Gauss-Legendre set would bias the growth fit downward.
    grid = QuadratureGrid::make(std::max(288, 2 * k_max), false);

  Rng rng(seed);
  SoggeResult res;
  res.p = p;
  for (const int k : ks) {
    SpectralField zonal_field(k);
    zonal_field.at(k, 0) = 1.0;
    const double zonal = lp_norm(synthesize(zonal_field, grid), p);
    res.table.push_back({k, 0, zonal, "zonal"});
    const double highest = lp_norm(synthesize(highest_harmonic(k), grid), p);
    res.table.push_back({k, 0, highest, "highest"});
    double best_random = 0.0;
    for (int t = 0; t < trials; ++t)
      best_random = std::max(best_random, lp_norm(synthesize(random_eigenspace_field(k, rng), grid), p));
    res.table.push_back({k, 0, best_random, "random"});
  }
  res.fit = fit_from_table(res.table, [](const RatioEntry&) { return true; });
  res.fit_random = fit_from_table(res.table, [](const RatioEntry& e) { return e.candidate == "random"; });
  res.fit_structured =
      fit_from_table(res.table, [](const RatioEntry& e) { return e.candidate != "random"; });
  res.fit_zonal = fit_from_table(res.table, [](const RatioEntry& e) { return e.candidate == "zonal"; });
  return res;
}

BilinearResult measure_bilinear(const std::vector<std::pair<int, int>>& pairs, int trials,
                                std::uint64_t seed) {
  // |fg|^2 has degree 2(k1+k2); the factors themselves need K_exact >= k.
  int k_need = 0;
  for (const auto& [k1, k2] : pairs) k_need = std::max({k_need, k1, k2, (k1 + k2 + 1) / 2});
  const GridPtr grid = QuadratureGrid::make(k_need, true);

  Rng rng(seed);
  BilinearResult res;
  for (const auto& [k1, k2] : pairs) {
    double best = 0.0;
    std::string which = "random";
    for (int t = 0; t < trials; ++t) {
      const GridField f = synthesize(random_eigenspace_field(k1, rng), grid);
      const GridField g = synthesize(random_eigenspace_field(k2, rng), grid);
      GridField prod = f;
      prod.values = f.values.cwiseProduct(g.values);
      best = std::max(best, lp_norm(prod, 2.0));
    }
    {
      const GridField f = synthesize(highest_harmonic(k1), grid);
      const GridField g = synthesize(highest_harmonic(k2), grid);
      GridField prod = f;
      prod.values = f.values.cwiseProduct(g.values);
      const double r = lp_norm(prod, 2.0);
      if (r > best) {
        best = r;
        which = "highest";
      }
    }
    res.table.push_back({k1, k2, best, which});
  }

  if (res.table.size() >= 2) {
    std::vector<double> xs, ys;
    for (const auto& e : res.table) {
      xs.push_back(bracket(std::min(e.k1, e.k2)));
      ys.push_back(e.ratio);
    }
    Eigen::Map<VectorXd> X(xs.data(), static_cast<Eigen::Index>(xs.size()));
    Eigen::Map<VectorXd> Y(ys.data(), static_cast<Eigen::Index>(ys.size()));
    res.fit = fit_loglog(X, Y, 0.0);
  }
  return res;
}

RestrictionResult restriction_counterexample(const std::vector<int>& ks) {
  RestrictionResult res;
  res.ks = ks;
  const auto n = static_cast<Eigen::Index>(ks.size());
  res.l4_ratio.resize(n);
  res.four_norms.resize(4, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int k = ks[static_cast<size_t>(i)];
    const double nu = highest_harmonic_raw_norm(k);
    // L^4 norm of the unit-normalized family, exact through Wallis integrals.
    res.l4_ratio[i] = std::pow(2.0 * kPi * wallis(4 * k + 1), 0.25) / nu;
    const SpectralField raw = raw_highest_harmonic(k);
    res.four_norms(0, i) = sobolev_norm(raw, 0.25);
    res.four_norms(1, i) = modulation_norm(raw, 0.25);
    res.four_norms(2, i) = besov_norm(raw, 0.25, 2.0, 1.0);
    res.four_norms(3, i) = besov_norm(raw, 0.25, 2.0, std::numeric_limits<double>::infinity());
  }
  VectorXd xs(n);
  for (Eigen::Index i = 0; i < n; ++i) xs[i] = ks[static_cast<size_t>(i)];
  res.fit = fit_loglog(xs, res.l4_ratio);
  res.band_min = res.four_norms.minCoeff();
  res.band_max = res.four_norms.maxCoeff();
  return res;
}

}  // namespace nls
