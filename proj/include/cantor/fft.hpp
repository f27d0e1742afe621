#pragma once

#include <complex>
#include <vector>

namespace cantor {

/// Unnormalized forward DFT: X_k = sum_j x_j e^{-2 pi i jk / G}.
std::vector<std::complex<double>> dft_forward(std::vector<std::complex<double>> x);

/// Unnormalized inverse DFT: x_j = sum_k X_k e^{+2 pi i jk / G}.
std::vector<std::complex<double>> dft_backward(std::vector<std::complex<double>> x);

}  // namespace cantor
