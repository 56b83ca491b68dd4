#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops of the sampler. Every kernel has a scalar
// reference implementation; wider variants are selected once at runtime and
// are tested for equivalence against the reference.
namespace rdsize::kernels {

enum class Isa { scalar, avx2 };

enum class GammaFn { log_gamma, digamma, trigamma };

struct KernelTable {
  Isa isa;
  // sum_k log((s[k] + delta) / s[k]). Requires s[k] > 0 and s[k] + delta >= 0;
  // returns -inf if any numerator is zero.
  double (*sum_log_ratio)(const double* s, std::size_t len, double delta);
  // sum_k f(shift + hi[k]) - f(shift + lo[k]). All arguments must be > 0.
  double (*gamma_diff_sum)(GammaFn fn, double shift, const double* hi, const double* lo, std::size_t len);
};

const KernelTable& scalar_table() noexcept;
bool isa_available(Isa isa) noexcept;
// Throws std::invalid_argument if `isa` is not available on this machine/build.
const KernelTable& table(Isa isa);

// The table used by the library. Chosen on first use: the widest available
// ISA, unless RDSIZE_ISA=scalar|avx2 is set in the environment.
const KernelTable& active() noexcept;

std::string_view isa_name(Isa isa) noexcept;

inline double sum_log_ratio(std::span<const double> s, double delta) {
  return active().sum_log_ratio(s.data(), s.size(), delta);
}

inline double gamma_diff_sum(GammaFn fn, double shift, std::span<const double> hi, std::span<const double> lo) {
  return active().gamma_diff_sum(fn, shift, hi.data(), lo.data(), hi.size());
}

}  // namespace rdsize::kernels
