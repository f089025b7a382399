#pragma once

#include "hbvp/expression.hpp"

#include <span>
#include <vector>

namespace hbvp {

/// Normalized forward transform: X_k = (1/n) Σ_j x_j e^{−2πijk/n}.
std::vector<cplx> dft(std::span<const cplx> x);

/// Unnormalized inverse: x_j = Σ_k X_k e^{2πijk/n}.
std::vector<cplx> idft(std::span<const cplx> coefficients);

}  // namespace hbvp
