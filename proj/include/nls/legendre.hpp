#pragma once

#include "nls/types.hpp"

namespace nls {

/// Fully normalized associated Legendre function Pbar_k^m(x), defined so that
/// Y_k^m(theta,phi) = Pbar_k^m(cos theta) e^{i m phi} is orthonormal on S^2.
/// Includes the Condon-Shortley phase (-1)^m. Requires 0 <= m <= k, |x| <= 1.
double normalized_legendre(int k, int m, double x);

/// Column of normalized values Pbar_k^m(x) for k = m .. k_max (size k_max-m+1).
/// Three-term recurrence upward in degree; stable for k well beyond the band
/// limits used here.
VectorXd normalized_legendre_column(int m, int k_max, double x);

/// Block of normalized values over a set of nodes: row (k - m), column i holds
/// Pbar_k^m(x_i) for k = m .. k_max.
MatrixXd normalized_legendre_block(int m, int k_max, const VectorXd& x);

/// Gauss-Legendre nodes (ascending in x = cos theta) and weights on [-1, 1].
/// Newton iteration on P_n; weights sum to 2.
void gauss_legendre(int n, VectorXd& nodes, VectorXd& weights);

}  // namespace nls
