// AVX2 variant of the batched mutual-information kernels. Four lanes per
// iteration, same operation order as the scalar reference; the remainder goes
// through the reference. Built with -mavx2 and only called after a CPU check.

#include "gielab/kernels/mi_batch.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace gielab::kernels::avx2 {

namespace {

struct V2 {
  __m256d s00, s01, s11;
};

inline __m256d mul(__m256d a, __m256d b) { return _mm256_mul_pd(a, b); }
inline __m256d sub(__m256d a, __m256d b) { return _mm256_sub_pd(a, b); }
inline __m256d add(__m256d a, __m256d b) { return _mm256_add_pd(a, b); }

// Writes det B / det S per lane, or NaN where A or S is not positive definite.
inline void two_mode_ratio(__m256d a00, __m256d a01, __m256d a11, __m256d b00, __m256d b01, __m256d b11,
                           __m256d c00, __m256d c01, __m256d c10, __m256d c11, double* dst) {
  const __m256d det_a = sub(mul(a00, a11), mul(a01, a01));
  const __m256d m00 = sub(mul(a11, c00), mul(a01, c10));
  const __m256d m01 = sub(mul(a11, c01), mul(a01, c11));
  const __m256d m10 = sub(mul(a00, c10), mul(a01, c00));
  const __m256d m11 = sub(mul(a00, c11), mul(a01, c01));
  const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), det_a);
  const __m256d s00 = sub(b00, mul(add(mul(c00, m00), mul(c10, m10)), inv));
  const __m256d s01 = sub(b01, mul(add(mul(c00, m01), mul(c10, m11)), inv));
  const __m256d s11 = sub(b11, mul(add(mul(c01, m01), mul(c11, m11)), inv));
  const __m256d det_s = sub(mul(s00, s11), mul(s01, s01));
  const __m256d det_b = sub(mul(b00, b11), mul(b01, b01));

  const __m256d zero = _mm256_setzero_pd();
  __m256d ok = _mm256_and_pd(_mm256_cmp_pd(det_a, zero, _CMP_GT_OQ), _mm256_cmp_pd(a00, zero, _CMP_GT_OQ));
  ok = _mm256_and_pd(ok, _mm256_cmp_pd(det_s, zero, _CMP_GT_OQ));
  ok = _mm256_and_pd(ok, _mm256_cmp_pd(s00, zero, _CMP_GT_OQ));
  const __m256d ratio = _mm256_div_pd(det_b, det_s);
  const __m256d nan = _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN());
  _mm256_storeu_pd(dst, _mm256_blendv_pd(nan, ratio, ok));
}

inline void finish(double* out, const double* ratio, std::size_t lanes) {
  for (std::size_t k = 0; k < lanes; ++k) out[k] = std::isnan(ratio[k]) ? ratio[k] : 0.5 * std::log(ratio[k]);
}

}  // namespace

void mi_batch_ab(const double* g, Sym2Soa ga, Sym2Soa gb, std::size_t n, double* out) {
  const __m256d g00 = _mm256_set1_pd(g[0]), g01 = _mm256_set1_pd(g[1]), g11 = _mm256_set1_pd(g[5]);
  const __m256d h00 = _mm256_set1_pd(g[10]), h01 = _mm256_set1_pd(g[11]), h11 = _mm256_set1_pd(g[15]);
  const __m256d c00 = _mm256_set1_pd(g[2]), c01 = _mm256_set1_pd(g[3]);
  const __m256d c10 = _mm256_set1_pd(g[6]), c11 = _mm256_set1_pd(g[7]);
  alignas(32) double ratio[4];
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    two_mode_ratio(add(g00, _mm256_loadu_pd(ga.xx + i)), add(g01, _mm256_loadu_pd(ga.xp + i)),
                   add(g11, _mm256_loadu_pd(ga.pp + i)), add(h00, _mm256_loadu_pd(gb.xx + i)),
                   add(h01, _mm256_loadu_pd(gb.xp + i)), add(h11, _mm256_loadu_pd(gb.pp + i)), c00, c01, c10, c11,
                   ratio);
    finish(out + i, ratio, 4);
  }
  if (i < n) {
    scalar::mi_batch_ab(g, {ga.xx + i, ga.xp + i, ga.pp + i}, {gb.xx + i, gb.xp + i, gb.pp + i}, n - i, out + i);
  }
}

void mi_batch_e1(const double* alpha, const double* beta, double nu, Sym2Soa ge, std::size_t n, double* out) {
  __m256d al[4][4], b0[4], b1[4];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) al[r][c] = _mm256_set1_pd(alpha[4 * r + c]);
    b0[r] = _mm256_set1_pd(beta[2 * r]);
    b1[r] = _mm256_set1_pd(beta[2 * r + 1]);
  }
  const __m256d vnu = _mm256_set1_pd(nu);
  alignas(32) double ratio[4];
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d n00 = add(vnu, _mm256_loadu_pd(ge.xx + i));
    const __m256d n01 = _mm256_loadu_pd(ge.xp + i);
    const __m256d n11 = add(vnu, _mm256_loadu_pd(ge.pp + i));
    const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), sub(mul(n00, n11), mul(n01, n01)));
    __m256d p0[4], p1[4];
    for (int r = 0; r < 4; ++r) {
      p0[r] = sub(mul(b0[r], n11), mul(b1[r], n01));
      p1[r] = sub(mul(b1[r], n00), mul(b0[r], n01));
    }
    auto s = [&](int r, int c) { return sub(al[r][c], mul(add(mul(p0[r], b0[c]), mul(p1[r], b1[c])), inv)); };
    two_mode_ratio(s(0, 0), s(0, 1), s(1, 1), s(2, 2), s(2, 3), s(3, 3), s(0, 2), s(0, 3), s(1, 2), s(1, 3), ratio);
    finish(out + i, ratio, 4);
  }
  if (i < n) scalar::mi_batch_e1(alpha, beta, nu, {ge.xx + i, ge.xp + i, ge.pp + i}, n - i, out + i);
}

}  // namespace gielab::kernels::avx2
