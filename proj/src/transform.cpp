#include "nls/transform.hpp"

#include "nls/legendre.hpp"

namespace nls {

namespace {

// Real matrix times complex vector.
VectorXcd apply_real(const MatrixXd& A, const VectorXcd& v) {
  VectorXcd out(A.rows());
  out.real() = A * v.real();
  out.imag() = A * v.imag();
  return out;
}

VectorXcd weighted(const VectorXd& w, const VectorXcd& v) {
  VectorXcd out(v.size());
  out.real() = w.cwiseProduct(v.real());
  out.imag() = w.cwiseProduct(v.imag());
  return out;
}

// Longitude phase matrix E(K+m, j) = e^{i m phi_j}, m = -K..K.
MatrixXcd phase_matrix(int K, const VectorXd& phi) {
  MatrixXcd E(2 * K + 1, phi.size());
  for (Eigen::Index j = 0; j < phi.size(); ++j) {
    const Complex w = std::polar(1.0, phi[j]);
    Complex p = 1.0;
    E(K, j) = 1.0;
    for (int m = 1; m <= K; ++m) {
      p *= w;
      E(K + m, j) = p;
      E(K - m, j) = std::conj(p);
    }
  }
  return E;
}

// Legendre block for order m up to degree K: cached table when present.
MatrixXd order_block(const QuadratureGrid& g, int m, int K) {
  if (g.has_table() && K <= g.exact_degree()) return g.legendre_table(m).topRows(K - m + 1);
  return normalized_legendre_block(m, K, g.nodes());
}

}  // namespace

GridField synthesize(const SpectralField& u, const GridPtr& grid) {
  const int K = u.band_limit();
  if (K > grid->exact_degree())
    throw std::invalid_argument("synthesize: grid too coarse for band limit");
  const auto& g = *grid;
  const int nt = g.n_theta();

  // Per-order theta sums G(i, K+m) = sum_k c_{k,m} Pbar_k^m(x_i), then the
  // longitude sum as one dense product with the phase matrix.
  MatrixXcd G = MatrixXcd::Zero(nt, 2 * K + 1);
  for (int m = 0; m <= K; ++m) {
    const MatrixXd block = order_block(g, m, K);
    const int r = K - m + 1;
    VectorXcd cm(r);
    for (int k = m; k <= K; ++k) cm[k - m] = u.at(k, m);
    G.col(K + m) = apply_real(block.transpose(), cm);
    if (m > 0) {
      // Pbar_k^{-m} = (-1)^m Pbar_k^m (Condon-Shortley).
      const double sign = (m & 1) ? -1.0 : 1.0;
      VectorXcd cneg(r);
      for (int k = m; k <= K; ++k) cneg[k - m] = sign * u.at(k, -m);
      G.col(K - m) = apply_real(block.transpose(), cneg);
    }
  }

  GridField out(grid);
  out.values = G * phase_matrix(K, g.phis());
  return out;
}

SpectralField analyze(const GridField& f, int K) {
  const auto& g = *f.grid;
  if (K > g.exact_degree()) throw std::invalid_argument("analyze: grid too coarse for requested band limit");
  if (f.values.rows() != g.n_theta() || f.values.cols() != g.n_phi())
    throw std::invalid_argument("analyze: value array does not match grid");

  // Longitude quadrature first: H(i, K+m) = dphi sum_j f(i,j) e^{-i m phi_j}.
  const MatrixXcd H = g.phi_weight() * (f.values * phase_matrix(K, g.phis()).adjoint());

  SpectralField out(K);
  for (int m = 0; m <= K; ++m) {
    const MatrixXd block = order_block(g, m, K);
    const VectorXcd cm = apply_real(block, weighted(g.weights(), H.col(K + m)));
    for (int k = m; k <= K; ++k) out.at(k, m) = cm[k - m];
    if (m > 0) {
      const double sign = (m & 1) ? -1.0 : 1.0;
      const VectorXcd cn = apply_real(block, weighted(g.weights(), H.col(K - m)));
      for (int k = m; k <= K; ++k) out.at(k, -m) = sign * cn[k - m];
    }
  }
  return out;
}

GridField eval_harmonic(Mode mode, const GridPtr& grid) {
  if (!mode.valid()) throw std::invalid_argument("eval_harmonic: invalid mode");
  const auto& g = *grid;
  const int ma = std::abs(mode.m);
  VectorXd col(g.n_theta());
  for (int i = 0; i < g.n_theta(); ++i) col[i] = normalized_legendre(mode.k, ma, g.nodes()[i]);
  if (mode.m < 0 && (ma & 1)) col = -col;

  GridField out(grid);
  for (int j = 0; j < g.n_phi(); ++j) {
    const Complex e = std::polar(1.0, mode.m * g.phis()[j]);
    out.values.col(j) = col.cast<Complex>() * e;
  }
  return out;
}

}  // namespace nls
