#pragma once

#include <complex>
#include <vector>

namespace twinterf::detail {

/// In-place unnormalized DFT, X_m = sum_n x_n exp(-2 pi i m n / N).
void dft_forward(std::vector<std::complex<double>>& data);
/// In-place unnormalized inverse DFT, x_n = sum_m X_m exp(+2 pi i m n / N).
void dft_backward(std::vector<std::complex<double>>& data);

}  // namespace twinterf::detail
