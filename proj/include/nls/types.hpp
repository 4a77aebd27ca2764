#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace nls {

using Real = double;
using Complex = std::complex<double>;

using Eigen::ArrayXd;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kFourPi = 4.0 * kPi;

/// Eigenspace index pair addressing the harmonic Y_k^m.
struct Mode {
  int k = 0;  // degree, k >= 0
  int m = 0;  // order, -k <= m <= k

  bool valid() const { return k >= 0 && m >= -k && m <= k; }
};

/// mu_k^2 = k(k+1), the (negated) Laplacian eigenvalue on degree k.
inline double mu_squared(int k) { return static_cast<double>(k) * (k + 1); }

/// mu_k = sqrt(k(k+1)).
inline double mu(int k) {
  if (k < 0) throw std::invalid_argument("mu: negative degree");
  return std::sqrt(mu_squared(k));
}

/// Japanese bracket <a> = (1 + a^2)^{1/2}.
inline double bracket(double a) { return std::sqrt(1.0 + a * a); }

/// Exact Wallis integral W_n = int_0^pi sin^n(theta) dtheta via the
/// recursion n W_n = (n-1) W_{n-2}, W_0 = pi, W_1 = 2.
inline double wallis(int n) {
  if (n < 0) throw std::invalid_argument("wallis: negative order");
  double even = kPi;  // W_0
  double odd = 2.0;   // W_1
  for (int j = 2; j <= n; ++j) {
    if (j % 2 == 0)
      even *= static_cast<double>(j - 1) / j;
    else
      odd *= static_cast<double>(j - 1) / j;
  }
  return (n % 2 == 0) ? even : odd;
}

}  // namespace nls
