#pragma once

#include <memory>
#include <vector>

#include "nls/types.hpp"

namespace nls {

/// Gauss-Legendre x uniform-longitude quadrature grid.
///
/// Sized so that any product of four fields band-limited to degree K_exact is
/// integrated exactly: n_theta = 2 K_exact + 1 Gauss-Legendre nodes in
/// cos(theta) (exact for polynomials of degree 4 K_exact + 1) and
/// n_phi = 4 K_exact + 2 equispaced longitudes (exact for e^{i M phi},
/// |M| <= 4 K_exact). Immutable after construction.
class QuadratureGrid {
 public:
  static std::shared_ptr<const QuadratureGrid> make(int K_exact, bool build_table = true);

  int exact_degree() const { return K_exact_; }
  int n_theta() const { return static_cast<int>(x_.size()); }
  int n_phi() const { return static_cast<int>(phi_.size()); }

  const VectorXd& nodes() const { return x_; }        // x_i = cos(theta_i), ascending
  const VectorXd& weights() const { return w_; }      // Gauss-Legendre weights, sum 2
  const VectorXd& phis() const { return phi_; }       // phi_j = 2 pi j / n_phi
  double phi_weight() const { return 2.0 * kPi / n_phi(); }

  bool has_table() const { return !table_.empty(); }
  /// Cached normalized Legendre block for order m: row (k - m), col i holds
  /// Pbar_k^m(x_i), k = m .. K_exact. Only valid when has_table().
  const MatrixXd& legendre_table(int m) const { return table_.at(static_cast<size_t>(m)); }

 private:
  QuadratureGrid() = default;

  int K_exact_ = 0;
  VectorXd x_, w_, phi_;
  std::vector<MatrixXd> table_;  // indexed by m = 0 .. K_exact
};

using GridPtr = std::shared_ptr<const QuadratureGrid>;

/// Complex samples at the grid nodes; values(i, j) = f(theta_i, phi_j).
struct GridField {
  GridPtr grid;
  MatrixXcd values;  // n_theta x n_phi

  GridField() = default;
  explicit GridField(GridPtr g) : grid(std::move(g)) {
    values = MatrixXcd::Zero(grid->n_theta(), grid->n_phi());
  }
};

/// Quadrature of f over S^2.
Complex integral(const GridField& f);

/// Discrete L^2(S^2) inner product <f, g> = int f conj(g).
Complex inner(const GridField& f, const GridField& g);

}  // namespace nls
