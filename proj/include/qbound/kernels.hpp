#pragma once

// Dense inner-loop kernels with a scalar reference implementation and an
// AVX2/FMA variant. The variant is chosen once at runtime from CPU support
// (override with QBOUND_ISA=scalar|avx2 or select_isa()); both must agree to
// within reassociation roundoff, which tests/test_kernels.cpp checks.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qbound::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y = M x for row-major M (rows x cols).
  void (*matvec)(const double* m, const double* x, double* y, std::size_t rows, std::size_t cols);
  void (*cmatvec)(const cplx* m, const cplx* x, cplx* y, std::size_t rows, std::size_t cols);
  /// sum_k conj(a_k) b_k
  cplx (*cdotc)(const cplx* a, const cplx* b, std::size_t n);
  double (*l1_distance)(const double* a, const double* b, std::size_t n);
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void matvec(const double* m, const double* x, double* y, std::size_t rows, std::size_t cols);
void cmatvec(const cplx* m, const cplx* x, cplx* y, std::size_t rows, std::size_t cols);
cplx cdotc(const cplx* a, const cplx* b, std::size_t n);
double l1_distance(const double* a, const double* b, std::size_t n);
}  // namespace scalar

#if defined(QBOUND_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void matvec(const double* m, const double* x, double* y, std::size_t rows, std::size_t cols);
void cmatvec(const cplx* m, const cplx* x, cplx* y, std::size_t rows, std::size_t cols);
cplx cdotc(const cplx* a, const cplx* b, std::size_t n);
double l1_distance(const double* a, const double* b, std::size_t n);
}  // namespace avx2
#endif

bool isa_supported(Isa isa);
std::string_view to_string(Isa isa);

/// Table for a specific ISA; throws DomainError when the ISA is unavailable.
const KernelTable& table(Isa isa);
const KernelTable& active();
Isa active_isa();
void select_isa(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double l1_distance(std::span<const double> a, std::span<const double> b) {
  return active().l1_distance(a.data(), b.data(), a.size());
}

inline cplx cdotc(std::span<const cplx> a, std::span<const cplx> b) {
  return active().cdotc(a.data(), b.data(), a.size());
}

}  // namespace qbound::kernels
