#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "rdsize/kernels.hpp"
#include "rdsize/special.hpp"

using namespace rdsize;
using kernels::GammaFn;
using kernels::Isa;

namespace {

double reference_log_ratio(const std::vector<double>& s, double delta) {
  long double acc = 0.0L;
  for (double v : s) acc += std::log((static_cast<long double>(v) + delta) / v);
  return static_cast<double>(acc);
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar table is always available and is the fallback") {
    CHECK(kernels::isa_available(Isa::scalar));
    CHECK(kernels::table(Isa::scalar).isa == Isa::scalar);
    if (!kernels::isa_available(Isa::avx2)) CHECK_THROWS_AS(kernels::table(Isa::avx2), std::invalid_argument);
  }

  TEST_CASE("sum_log_ratio: every table matches a long-double reference") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> count(1, 3000);
    for (Isa isa : {Isa::scalar, Isa::avx2}) {
      if (!kernels::isa_available(isa)) continue;
      const auto& t = kernels::table(isa);
      for (std::size_t len : {0, 1, 3, 4, 5, 31, 32, 33, 64, 100, 257, 1000}) {
        for (double delta : {-2.0, -1.0, 1.0, 2.0}) {
          std::vector<double> s(len);
          for (auto& v : s) v = count(rng) + 2.0;
          const double ref = reference_log_ratio(s, delta);
          const double got = t.sum_log_ratio(s.data(), s.size(), delta);
          CHECK_MESSAGE(std::abs(got - ref) <= 1e-13 * (1.0 + std::abs(ref)) + 1e-15 * len,
                        kernels::isa_name(isa) << " len=" << len << " delta=" << delta);
        }
      }
    }
  }

  TEST_CASE("sum_log_ratio hits -inf when a count would drop to zero") {
    for (Isa isa : {Isa::scalar, Isa::avx2}) {
      if (!kernels::isa_available(isa)) continue;
      for (std::size_t pos : {0, 3, 17, 40}) {
        std::vector<double> s(45, 5.0);
        s[pos] = 1.0;
        CHECK(kernels::table(isa).sum_log_ratio(s.data(), s.size(), -1.0) == -INFINITY);
      }
    }
  }

  TEST_CASE("gamma_diff_sum: vector variants agree with the scalar reference") {
    if (!kernels::isa_available(Isa::avx2)) return;
    const auto& ref = kernels::scalar_table();
    const auto& vec = kernels::table(Isa::avx2);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> expo(-3.0, 7.0);
    for (GammaFn fn : {GammaFn::log_gamma, GammaFn::digamma, GammaFn::trigamma}) {
      for (std::size_t len : {1, 2, 4, 7, 8, 9, 50, 501}) {
        for (double shift : {0.0, 37.5, 1e4, 1e7}) {
          std::vector<double> hi(len), lo(len);
          double scale = 0.0;
          for (std::size_t k = 0; k < len; ++k) {
            lo[k] = std::pow(10.0, expo(rng));
            hi[k] = lo[k] + std::pow(10.0, expo(rng) / 2);
            auto f = [&](double x) {
              switch (fn) {
                case GammaFn::log_gamma: return special::log_gamma(x);
                case GammaFn::digamma: return special::digamma(x);
                default: return special::trigamma(x);
              }
            };
            scale += std::abs(f(shift + hi[k])) + std::abs(f(shift + lo[k]));
          }
          const double a = ref.gamma_diff_sum(fn, shift, hi.data(), lo.data(), len);
          const double b = vec.gamma_diff_sum(fn, shift, hi.data(), lo.data(), len);
          CHECK_MESSAGE(std::abs(a - b) <= 1e-13 * scale + 1e-300,
                        "fn=" << static_cast<int>(fn) << " len=" << len << " shift=" << shift);
        }
      }
    }
  }

  TEST_CASE("active table honours the ISA names") {
    CHECK(kernels::isa_name(Isa::scalar) == "scalar");
    CHECK(kernels::isa_name(Isa::avx2) == "avx2");
    const auto& a = kernels::active();
    CHECK(kernels::isa_available(a.isa));
  }
}
