#pragma once

#include "nls/grid.hpp"
#include "nls/spectral_field.hpp"

namespace nls {

/// Evaluate u = sum c_{k,m} Y_k^m at the grid nodes. Exact sampling; uses the
/// grid's Legendre table when available (requires K <= K_exact), otherwise
/// evaluates the recurrence on the fly.
GridField synthesize(const SpectralField& u, const GridPtr& grid);

/// Forward transform: c_{k,m} = quadrature of f conj(Y_k^m), k <= K.
/// Exact on data band-limited to the grid's K_exact. Throws if K > K_exact.
SpectralField analyze(const GridField& f, int K);

/// Sample a single orthonormal harmonic Y_k^m on the grid.
GridField eval_harmonic(Mode mode, const GridPtr& grid);

}  // namespace nls
