#include "nls/legendre.hpp"

#include <cmath>

namespace nls {

namespace {

// Pbar_m^m(x) = (-1)^m sqrt((2m+1)/(4pi) * prod_{i=1..m} (2i-1)/(2i)) (1-x^2)^{m/2}.
// The product is accumulated together with the (1-x^2) powers so nothing
// overflows before the square root.
double pbar_mm(int m, double x) {
  double pmm = 1.0;
  if (m > 0) {
    const double omx2 = (1.0 - x) * (1.0 + x);
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= omx2 * fact / (fact + 1.0);
      fact += 2.0;
    }
  }
  pmm = std::sqrt((2.0 * m + 1.0) * pmm / kFourPi);
  return (m & 1) ? -pmm : pmm;
}

// alpha_k^m = sqrt((4k^2-1)/(k^2-m^2)), the degree-recurrence coefficient.
inline double alpha(int k, int m) {
  const double k2 = static_cast<double>(k) * k;
  const double m2 = static_cast<double>(m) * m;
  return std::sqrt((4.0 * k2 - 1.0) / (k2 - m2));
}

}  // namespace

double normalized_legendre(int k, int m, double x) {
  if (m < 0 || m > k) throw std::invalid_argument("normalized_legendre: need 0 <= m <= k");
  if (std::abs(x) > 1.0) throw std::invalid_argument("normalized_legendre: |x| > 1");

  double pmm = pbar_mm(m, x);
  if (k == m) return pmm;
  double pmmp1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
  if (k == m + 1) return pmmp1;
  double pkk = 0.0;
  double a_prev = std::sqrt(2.0 * m + 3.0);
  for (int kk = m + 2; kk <= k; ++kk) {
    const double a = alpha(kk, m);
    pkk = a * (x * pmmp1 - pmm / a_prev);
    a_prev = a;
    pmm = pmmp1;
    pmmp1 = pkk;
  }
  return pkk;
}

VectorXd normalized_legendre_column(int m, int k_max, double x) {
  if (m < 0 || m > k_max) throw std::invalid_argument("normalized_legendre_column: need 0 <= m <= k_max");
  VectorXd out(k_max - m + 1);
  out[0] = pbar_mm(m, x);
  if (k_max == m) return out;
  out[1] = x * std::sqrt(2.0 * m + 3.0) * out[0];
  double a_prev = std::sqrt(2.0 * m + 3.0);
  for (int k = m + 2; k <= k_max; ++k) {
    const double a = alpha(k, m);
    out[k - m] = a * (x * out[k - m - 1] - out[k - m - 2] / a_prev);
    a_prev = a;
  }
  return out;
}

MatrixXd normalized_legendre_block(int m, int k_max, const VectorXd& x) {
  MatrixXd block(k_max - m + 1, x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) block.col(i) = normalized_legendre_column(m, k_max, x[i]);
  return block;
}

void gauss_legendre(int n, VectorXd& nodes, VectorXd& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  nodes.resize(n);
  weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * x * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;  // ascending order
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

}  // namespace nls
