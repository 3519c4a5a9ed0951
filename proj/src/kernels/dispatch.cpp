#include <atomic>
#include <cstdlib>
#include <string>

#include "qbound/errors.hpp"
#include "qbound/kernels.hpp"

namespace qbound::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar,  scalar::dot,   scalar::matvec,
                              scalar::cmatvec, scalar::cdotc, scalar::l1_distance};

#if defined(QBOUND_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2,    avx2::dot,   avx2::matvec,
                            avx2::cmatvec, avx2::cdotc, avx2::l1_distance};
#endif

bool cpu_has_avx2() {
#if defined(QBOUND_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  Isa wanted = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  if (const char* env = std::getenv("QBOUND_ISA")) {
    std::string value(env);
    if (value == "scalar") wanted = Isa::scalar;
    else if (value == "avx2" && cpu_has_avx2()) wanted = Isa::avx2;
  }
  return &table(wanted);
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{initial_table()};
  return ptr;
}

}  // namespace

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
  return cpu_has_avx2();
}

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const KernelTable& table(Isa isa) {
  if (isa == Isa::scalar) return kScalar;
#if defined(QBOUND_HAVE_AVX2)
  if (cpu_has_avx2()) return kAvx2;
#endif
  throw DomainError("kernel ISA not available on this CPU: " + std::string(to_string(isa)));
}

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

Isa active_isa() { return active().isa; }

void select_isa(Isa isa) { current().store(&table(isa), std::memory_order_relaxed); }

}  // namespace qbound::kernels
