#include "nls/grid.hpp"

#include "nls/legendre.hpp"

namespace nls {

std::shared_ptr<const QuadratureGrid> QuadratureGrid::make(int K_exact, bool build_table) {
  if (K_exact < 0) throw std::invalid_argument("QuadratureGrid: negative degree");
  auto g = std::shared_ptr<QuadratureGrid>(new QuadratureGrid());
  g->K_exact_ = K_exact;
  gauss_legendre(2 * K_exact + 1, g->x_, g->w_);
  const int n_phi = 4 * K_exact + 2;
  g->phi_.resize(n_phi);
  for (int j = 0; j < n_phi; ++j) g->phi_[j] = 2.0 * kPi * j / n_phi;
  if (build_table) {
    g->table_.reserve(static_cast<size_t>(K_exact) + 1);
    for (int m = 0; m <= K_exact; ++m) g->table_.push_back(normalized_legendre_block(m, K_exact, g->x_));
  }
  return g;
}

Complex integral(const GridField& f) {
  const auto& g = *f.grid;
  Complex acc = 0.0;
  for (int i = 0; i < g.n_theta(); ++i) acc += g.weights()[i] * f.values.row(i).sum();
  return acc * g.phi_weight();
}

Complex inner(const GridField& f, const GridField& g) {
  if (f.grid != g.grid) throw std::invalid_argument("inner: fields live on different grids");
  const auto& q = *f.grid;
  Complex acc = 0.0;
  for (int i = 0; i < q.n_theta(); ++i)
    acc += q.weights()[i] * f.values.row(i).cwiseProduct(g.values.row(i).conjugate()).sum();
  return acc * q.phi_weight();
}

}  // namespace nls
