#include "gielab/kernels/mi_batch.hpp"

#include <cstdlib>
#include <string>

namespace gielab::kernels {

#ifndef GIELAB_HAVE_AVX2
namespace avx2 {
// Not compiled for this target; isa_available() keeps these unreachable.
void mi_batch_ab(const double* g, Sym2Soa a, Sym2Soa b, std::size_t n, double* out) {
  scalar::mi_batch_ab(g, a, b, n, out);
}
void mi_batch_e1(const double* al, const double* be, double nu, Sym2Soa e, std::size_t n, double* out) {
  scalar::mi_batch_e1(al, be, nu, e, n, out);
}
}  // namespace avx2
#endif

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(GIELAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa active_isa() {
  static const Isa chosen = [] {
    if (const char* env = std::getenv("GIE_LAB_SIMD")) {
      if (std::string(env) == "scalar") return Isa::Scalar;
    }
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  }();
  return chosen;
}

void mi_batch_ab(const double* g, Sym2Soa a, Sym2Soa b, std::size_t n, double* out) {
  if (active_isa() == Isa::Avx2) {
    avx2::mi_batch_ab(g, a, b, n, out);
  } else {
    scalar::mi_batch_ab(g, a, b, n, out);
  }
}

void mi_batch_e1(const double* al, const double* be, double nu, Sym2Soa e, std::size_t n, double* out) {
  if (active_isa() == Isa::Avx2) {
    avx2::mi_batch_e1(al, be, nu, e, n, out);
  } else {
    scalar::mi_batch_e1(al, be, nu, e, n, out);
  }
}

}  // namespace gielab::kernels
