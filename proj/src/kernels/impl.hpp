#pragma once

#include <cstddef>

#include "rdsize/kernels.hpp"

namespace rdsize::kernels {

namespace scalar {
double sum_log_ratio(const double* s, std::size_t len, double delta);
double gamma_diff_sum(GammaFn fn, double shift, const double* hi, const double* lo, std::size_t len);
}  // namespace scalar

#if defined(RDSIZE_HAVE_AVX2)
namespace avx2 {
double sum_log_ratio(const double* s, std::size_t len, double delta);
double gamma_diff_sum(GammaFn fn, double shift, const double* hi, const double* lo, std::size_t len);
}  // namespace avx2
#endif

}  // namespace rdsize::kernels
