#pragma once

#include "nls/types.hpp"

namespace nls {

/// Band-limited function on S^2 stored as coefficients over the orthonormal
/// basis Y_k^m, 0 <= k <= K, |m| <= k. Coefficient of mode (k, m) sits at
/// flat index k^2 + k + m, so band k occupies the contiguous segment
/// [k^2, k^2 + 2k]. Parseval holds with constant 1: ||u||_{L^2}^2 = |c|^2.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(int K) : K_(K), c_(VectorXcd::Zero((K + 1) * (K + 1))) {
    if (K < 0) throw std::invalid_argument("SpectralField: negative band limit");
  }

  int band_limit() const { return K_; }
  Eigen::Index size() const { return c_.size(); }

  static Eigen::Index index(int k, int m) { return static_cast<Eigen::Index>(k) * k + k + m; }

  Complex& at(int k, int m) { return c_[index(k, m)]; }
  Complex at(int k, int m) const { return (k > K_) ? Complex(0.0) : c_[index(k, m)]; }

  VectorXcd& coeffs() { return c_; }
  const VectorXcd& coeffs() const { return c_; }

  auto band(int k) { return c_.segment(static_cast<Eigen::Index>(k) * k, 2 * k + 1); }
  auto band(int k) const { return c_.segment(static_cast<Eigen::Index>(k) * k, 2 * k + 1); }

  double l2_norm() const { return c_.norm(); }

  /// ||P_k u||_{L^2} for every band, size K + 1.
  VectorXd band_norms() const {
    VectorXd out(K_ + 1);
    for (int k = 0; k <= K_; ++k) out[k] = band(k).norm();
    return out;
  }

  /// Copy re-banded to a new limit (zero fill or truncation).
  SpectralField with_band_limit(int K_new) const {
    SpectralField out(K_new);
    const int kc = std::min(K_, K_new);
    out.c_.head((kc + 1) * (kc + 1)) = c_.head((kc + 1) * (kc + 1));
    return out;
  }

 private:
  int K_ = 0;
  VectorXcd c_ = VectorXcd::Zero(1);
};

inline SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  if (a.band_limit() != b.band_limit()) throw std::invalid_argument("SpectralField +: band limits differ");
  SpectralField out = a;
  out.coeffs() += b.coeffs();
  return out;
}

inline SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  if (a.band_limit() != b.band_limit()) throw std::invalid_argument("SpectralField -: band limits differ");
  SpectralField out = a;
  out.coeffs() -= b.coeffs();
  return out;
}

inline SpectralField operator*(Complex s, const SpectralField& a) {
  SpectralField out = a;
  out.coeffs() *= s;
  return out;
}

/// Orthogonal projection P_k: zero outside band k. k > K returns the zero
/// field (same band limit).
SpectralField project_band(const SpectralField& f, int k);

/// Unit-normalized highest harmonic: the field proportional to
/// (x_1 + i x_2)^k = sin^k(theta) e^{i k phi}, i.e. a single coefficient 1 at
/// mode (k, k).
SpectralField highest_harmonic(int k);

/// L^2 norm of the raw polynomial sin^k(theta) e^{i k phi}:
/// nu_k = sqrt(2 pi W_{2k+1}).
double highest_harmonic_raw_norm(int k);

/// The raw polynomial (x_1 + i x_2)^k as a spectral field (norm nu_k).
SpectralField raw_highest_harmonic(int k);

/// mu_k^2 at each flat coefficient index, size (K+1)^2. The Laplacian acts as
/// multiplication by -mu_k^2 on band k.
VectorXd laplacian_symbol(int K);

}  // namespace nls
