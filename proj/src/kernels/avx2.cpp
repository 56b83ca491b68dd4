// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the dispatcher has checked CPU support.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kernels/impl.hpp"
#include "rdsize/special.hpp"

namespace rdsize::kernels::avx2 {
namespace {

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// Natural log for positive normal doubles. Splits x = m * 2^e with m in
// [sqrt(1/2), sqrt(2)) and sums the atanh series of z = (m-1)/(m+1) (|z| < 0.172,
// truncation error below 1e-18).
inline __m256d log_pd(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i mantissa_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);  // 2^52

  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mantissa_mask), one_bits));
  const __m256i biased = _mm256_srli_epi64(bits, 52);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(biased, magic)), splat(4503599627370496.0 + 1023.0));

  const __m256d above = _mm256_cmp_pd(m, splat(1.41421356237309504880), _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, splat(0.5)), above);
  e = _mm256_add_pd(e, _mm256_and_pd(above, splat(1.0)));

  const __m256d one = splat(1.0);
  const __m256d z = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d z2 = _mm256_mul_pd(z, z);
  __m256d p = splat(1.0 / 21);
  p = _mm256_fmadd_pd(p, z2, splat(1.0 / 19));
  p = _mm256_fmadd_pd(p, z2, splat(1.0 / 17));
  p = _mm256_fmadd_pd(p, z2, splat(1.0 / 15));
  p = _mm256_fmadd_pd(p, z2, splat(1.0 / 13));
  p = _mm256_fmadd_pd(p, z2, splat(1.0 / 11));
  p = _mm256_fmadd_pd(p, z2, splat(1.0 / 9));
  p = _mm256_fmadd_pd(p, z2, splat(1.0 / 7));
  p = _mm256_fmadd_pd(p, z2, splat(1.0 / 5));
  p = _mm256_fmadd_pd(p, z2, splat(1.0 / 3));
  p = _mm256_fmadd_pd(p, z2, one);
  const __m256d log_m = _mm256_mul_pd(_mm256_add_pd(z, z), p);

  constexpr double kLn2Hi = 6.93147180369123816490e-01;
  constexpr double kLn2Lo = 1.90821492927058770002e-10;
  return _mm256_fmadd_pd(e, splat(kLn2Hi), _mm256_fmadd_pd(e, splat(kLn2Lo), log_m));
}

// Horner evaluation of sum_k c[k] r2^k.
template <std::size_t K>
inline __m256d horner(__m256d r2, const double (&c)[K]) {
  __m256d p = splat(c[K - 1]);
  for (std::size_t k = K - 1; k-- > 0;) p = _mm256_fmadd_pd(p, r2, splat(c[k]));
  return p;
}

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;
constexpr double kStirling[] = {1.0 / 12, -1.0 / 360, 1.0 / 1260, -1.0 / 1680, 1.0 / 1188, -691.0 / 360360, 1.0 / 156};
constexpr double kDigamma[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132, -691.0 / 32760, 1.0 / 12};
constexpr double kTrigamma[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};

inline __m256d lift_mask(__m256d x) { return _mm256_cmp_pd(x, splat(special::kAsymptoticFrom), _CMP_LT_OQ); }

inline __m256d log_gamma_pd(__m256d x) {
  __m256d prod = splat(1.0);
  for (__m256d mask = lift_mask(x); _mm256_movemask_pd(mask) != 0; mask = lift_mask(x)) {
    prod = _mm256_mul_pd(prod, _mm256_blendv_pd(splat(1.0), x, mask));
    x = _mm256_add_pd(x, _mm256_and_pd(mask, splat(1.0)));
  }
  const __m256d r = _mm256_div_pd(splat(1.0), x);
  const __m256d corr = _mm256_mul_pd(r, horner(_mm256_mul_pd(r, r), kStirling));
  const __m256d main = _mm256_fmsub_pd(_mm256_sub_pd(x, splat(0.5)), log_pd(x), x);
  return _mm256_sub_pd(_mm256_add_pd(_mm256_add_pd(main, splat(kHalfLog2Pi)), corr), log_pd(prod));
}

inline __m256d digamma_pd(__m256d x) {
  __m256d shift = _mm256_setzero_pd();
  for (__m256d mask = lift_mask(x); _mm256_movemask_pd(mask) != 0; mask = lift_mask(x)) {
    shift = _mm256_add_pd(shift, _mm256_and_pd(mask, _mm256_div_pd(splat(1.0), x)));
    x = _mm256_add_pd(x, _mm256_and_pd(mask, splat(1.0)));
  }
  const __m256d r = _mm256_div_pd(splat(1.0), x);
  const __m256d r2 = _mm256_mul_pd(r, r);
  const __m256d tail = _mm256_mul_pd(r2, horner(r2, kDigamma));
  const __m256d asym = _mm256_sub_pd(_mm256_fnmadd_pd(splat(0.5), r, log_pd(x)), tail);
  return _mm256_sub_pd(asym, shift);
}

inline __m256d trigamma_pd(__m256d x) {
  __m256d shift = _mm256_setzero_pd();
  for (__m256d mask = lift_mask(x); _mm256_movemask_pd(mask) != 0; mask = lift_mask(x)) {
    const __m256d r = _mm256_div_pd(splat(1.0), x);
    shift = _mm256_add_pd(shift, _mm256_and_pd(mask, _mm256_mul_pd(r, r)));
    x = _mm256_add_pd(x, _mm256_and_pd(mask, splat(1.0)));
  }
  const __m256d r = _mm256_div_pd(splat(1.0), x);
  const __m256d r2 = _mm256_mul_pd(r, r);
  const __m256d tail = _mm256_mul_pd(_mm256_mul_pd(r2, r), horner(r2, kTrigamma));
  const __m256d asym = _mm256_add_pd(_mm256_fmadd_pd(splat(0.5), r2, r), tail);
  return _mm256_add_pd(asym, shift);
}

template <__m256d (*F)(__m256d), double (*Scalar)(double)>
double diff_sum(double shift, const double* hi, const double* lo, std::size_t len) {
  const __m256d base = splat(shift);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) {
    const __m256d a = _mm256_add_pd(base, _mm256_loadu_pd(hi + k));
    const __m256d b = _mm256_add_pd(base, _mm256_loadu_pd(lo + k));
    acc = _mm256_add_pd(acc, _mm256_sub_pd(F(a), F(b)));
  }
  double total = hsum(acc);
  for (; k < len; ++k) total += Scalar(shift + hi[k]) - Scalar(shift + lo[k]);
  return total;
}

}  // namespace

double sum_log_ratio(const double* s, std::size_t len, double delta) {
  // Ratios are multiplied in blocks of 8 per lane before one vector log, so
  // a block product stays within (1 + |delta|)^{+-8}.
  constexpr std::size_t kDepth = 8;
  constexpr std::size_t kBlock = 4 * kDepth;
  const __m256d d = splat(delta);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + kBlock <= len; k += kBlock) {
    __m256d num = splat(1.0);
    __m256d den = splat(1.0);
    for (std::size_t r = 0; r < kDepth; ++r) {
      const __m256d x = _mm256_loadu_pd(s + k + 4 * r);
      num = _mm256_mul_pd(num, _mm256_add_pd(x, d));
      den = _mm256_mul_pd(den, x);
    }
    const __m256d q = _mm256_div_pd(num, den);
    if (_mm256_movemask_pd(_mm256_cmp_pd(q, _mm256_setzero_pd(), _CMP_LE_OQ)) != 0)
      return -std::numeric_limits<double>::infinity();
    acc = _mm256_add_pd(acc, log_pd(q));
  }
  for (; k + 4 <= len; k += 4) {
    const __m256d x = _mm256_loadu_pd(s + k);
    const __m256d q = _mm256_div_pd(_mm256_add_pd(x, d), x);
    if (_mm256_movemask_pd(_mm256_cmp_pd(q, _mm256_setzero_pd(), _CMP_LE_OQ)) != 0)
      return -std::numeric_limits<double>::infinity();
    acc = _mm256_add_pd(acc, log_pd(q));
  }
  double total = hsum(acc);
  for (; k < len; ++k) total += std::log((s[k] + delta) / s[k]);
  return total;
}

double gamma_diff_sum(GammaFn fn, double shift, const double* hi, const double* lo, std::size_t len) {
  switch (fn) {
    case GammaFn::log_gamma:
      return diff_sum<log_gamma_pd, special::log_gamma>(shift, hi, lo, len);
    case GammaFn::digamma:
      return diff_sum<digamma_pd, special::digamma>(shift, hi, lo, len);
    case GammaFn::trigamma:
      return diff_sum<trigamma_pd, special::trigamma>(shift, hi, lo, len);
  }
  return 0.0;
}

}  // namespace rdsize::kernels::avx2
