#include "gielab/kernels/mi_batch.hpp"

#include <cmath>
#include <limits>

namespace gielab::kernels::scalar {

namespace {

// 1/2 ln(det B / det(B - C^T A^{-1} C)) with A, B symmetric 2x2 and C = [[c00, c01], [c10, c11]].
inline double two_mode_mi(double a00, double a01, double a11, double b00, double b01, double b11, double c00,
                          double c01, double c10, double c11) {
  const double det_a = a00 * a11 - a01 * a01;
  // adj(A) C
  const double m00 = a11 * c00 - a01 * c10;
  const double m01 = a11 * c01 - a01 * c11;
  const double m10 = a00 * c10 - a01 * c00;
  const double m11 = a00 * c11 - a01 * c01;
  const double inv = 1.0 / det_a;
  const double s00 = b00 - (c00 * m00 + c10 * m10) * inv;
  const double s01 = b01 - (c00 * m01 + c10 * m11) * inv;
  const double s11 = b11 - (c01 * m01 + c11 * m11) * inv;
  const double det_s = s00 * s11 - s01 * s01;
  const double det_b = b00 * b11 - b01 * b01;
  if (!(det_a > 0.0 && a00 > 0.0 && det_s > 0.0 && s00 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return 0.5 * std::log(det_b / det_s);
}

}  // namespace

void mi_batch_ab(const double* g, Sym2Soa ga, Sym2Soa gb, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = two_mode_mi(g[0] + ga.xx[i], g[1] + ga.xp[i], g[5] + ga.pp[i],
                         g[10] + gb.xx[i], g[11] + gb.xp[i], g[15] + gb.pp[i],
                         g[2], g[3], g[6], g[7]);
  }
}

void mi_batch_e1(const double* alpha, const double* beta, double nu, Sym2Soa ge, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double n00 = nu + ge.xx[i], n01 = ge.xp[i], n11 = nu + ge.pp[i];
    const double inv = 1.0 / (n00 * n11 - n01 * n01);
    // beta adj(N), one row per quadrature of A and B
    double p0[4], p1[4];
    for (int r = 0; r < 4; ++r) {
      p0[r] = beta[2 * r] * n11 - beta[2 * r + 1] * n01;
      p1[r] = beta[2 * r + 1] * n00 - beta[2 * r] * n01;
    }
    auto s = [&](int r, int c) { return alpha[4 * r + c] - (p0[r] * beta[2 * c] + p1[r] * beta[2 * c + 1]) * inv; };
    out[i] = two_mode_mi(s(0, 0), s(0, 1), s(1, 1), s(2, 2), s(2, 3), s(3, 3), s(0, 2), s(0, 3), s(1, 2), s(1, 3));
  }
}

}  // namespace gielab::kernels::scalar
