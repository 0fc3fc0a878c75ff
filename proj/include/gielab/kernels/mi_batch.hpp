#pragma once

// Batched Gaussian mutual-information kernels for two single-mode parties.
//
// Both kernels evaluate f = 1/2 ln(det s_B / det(s_B - s_AB^T s_A^{-1} s_AB)) for a
// 4x4 CCM s assembled per lane. Single-mode 2x2 symmetric matrices are passed as
// structure-of-arrays (xx, xp, pp). Lanes whose CCM is not positive definite
// produce NaN.
//
// A scalar reference and an AVX2 variant exist; the dispatching entry points pick
// one at runtime (GIE_LAB_SIMD=scalar forces the reference).

#include <cstddef>
#include <string_view>

namespace gielab::kernels {

struct Sym2Soa {
  const double* xx;
  const double* xp;
  const double* pp;
};

/// s = gamma_c + Gamma_A[i] (+) Gamma_B[i]. gamma_c is 4x4 row-major.
void mi_batch_ab(const double* gamma_c, Sym2Soa gamma_a, Sym2Soa gamma_b, std::size_t n, double* out);

/// s = alpha - beta (nu 1 + Gamma_E[i])^{-1} beta^T. alpha 4x4 and beta 4x2 row-major.
void mi_batch_e1(const double* alpha, const double* beta, double nu, Sym2Soa gamma_e, std::size_t n, double* out);

enum class Isa { Scalar, Avx2 };

/// Selected at first use from CPU features and GIE_LAB_SIMD.
Isa active_isa();
std::string_view isa_name(Isa isa);
/// Whether the variant was compiled in and the CPU supports it.
bool isa_available(Isa isa);

namespace scalar {
void mi_batch_ab(const double* gamma_c, Sym2Soa gamma_a, Sym2Soa gamma_b, std::size_t n, double* out);
void mi_batch_e1(const double* alpha, const double* beta, double nu, Sym2Soa gamma_e, std::size_t n, double* out);
}  // namespace scalar

namespace avx2 {
void mi_batch_ab(const double* gamma_c, Sym2Soa gamma_a, Sym2Soa gamma_b, std::size_t n, double* out);
void mi_batch_e1(const double* alpha, const double* beta, double nu, Sym2Soa gamma_e, std::size_t n, double* out);
}  // namespace avx2

}  // namespace gielab::kernels
