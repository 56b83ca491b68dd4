#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kernels/impl.hpp"

namespace rdsize::kernels {
namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::sum_log_ratio, &scalar::gamma_diff_sum};

#if defined(RDSIZE_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::sum_log_ratio, &avx2::gamma_diff_sum};
#endif

const KernelTable& select_default() {
  if (const char* env = std::getenv("RDSIZE_ISA")) {
    const std::string_view want(env);
    if (want == "scalar") return kScalar;
    if (want == "avx2" && isa_available(Isa::avx2)) return table(Isa::avx2);
  }
  if (isa_available(Isa::avx2)) return table(Isa::avx2);
  return kScalar;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(RDSIZE_HAVE_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument("kernel ISA not available: " + std::string(isa_name(isa)));
#if defined(RDSIZE_HAVE_AVX2)
  if (isa == Isa::avx2) return kAvx2;
#endif
  return kScalar;
}

const KernelTable& active() noexcept {
  static const KernelTable& chosen = select_default();
  return chosen;
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace rdsize::kernels
