#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qbound/kernels.hpp"

using namespace qbound::kernels;

namespace {

std::vector<double> random_reals(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

std::vector<cplx> random_complex(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (cplx& x : v) x = {u(rng), u(rng)};
  return v;
}

}  // namespace

TEST_CASE("scalar kernels match hand computations") {
  const std::vector<double> a{1, 2, 3}, b{4, -5, 6};
  CHECK(scalar::dot(a.data(), b.data(), 3) == doctest::Approx(12.0));
  CHECK(scalar::l1_distance(a.data(), b.data(), 3) == doctest::Approx(3 + 7 + 3));
  const std::vector<double> m{1, 2, 3, 4, 5, 6};  // 2 x 3
  std::vector<double> y(2);
  scalar::matvec(m.data(), a.data(), y.data(), 2, 3);
  CHECK(y[0] == doctest::Approx(14));
  CHECK(y[1] == doctest::Approx(32));
  const std::vector<cplx> c{{1, 1}, {0, 2}}, d{{2, 0}, {1, -1}};
  // conj(1+i)*2 + conj(2i)*(1-i) = (2-2i) + (-2i)(1-i) = (2-2i) + (-2-2i) = -4i
  const cplx r = scalar::cdotc(c.data(), d.data(), 2);
  CHECK(r.real() == doctest::Approx(0.0));
  CHECK(r.imag() == doctest::Approx(-4.0));
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!isa_supported(Isa::avx2)) {
    MESSAGE("avx2 unavailable; skipping equivalence");
    return;
  }
  const KernelTable& s = table(Isa::scalar);
  const KernelTable& v = table(Isa::avx2);
  std::mt19937_64 rng(42);
  // Lengths straddle the vector width so every tail path runs.
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 100u, 257u}) {
    CAPTURE(n);
    const auto a = random_reals(n, rng), b = random_reals(n, rng);
    CHECK(v.dot(a.data(), b.data(), n) == doctest::Approx(s.dot(a.data(), b.data(), n)).epsilon(1e-12));
    CHECK(v.l1_distance(a.data(), b.data(), n) ==
          doctest::Approx(s.l1_distance(a.data(), b.data(), n)).epsilon(1e-12));

    const auto ca = random_complex(n, rng), cb = random_complex(n, rng);
    const cplx cs = s.cdotc(ca.data(), cb.data(), n), cv = v.cdotc(ca.data(), cb.data(), n);
    CHECK(std::abs(cs - cv) <= 1e-12 * (1.0 + std::abs(cs)));

    for (std::size_t rows : {1u, 3u, 6u}) {
      const auto m = random_reals(rows * n, rng);
      std::vector<double> ys(rows), yv(rows);
      s.matvec(m.data(), a.data(), ys.data(), rows, n);
      v.matvec(m.data(), a.data(), yv.data(), rows, n);
      for (std::size_t r = 0; r < rows; ++r) CHECK(std::abs(ys[r] - yv[r]) <= 1e-12 * (1.0 + std::abs(ys[r])));

      const auto cm = random_complex(rows * n, rng);
      std::vector<cplx> cys(rows), cyv(rows);
      s.cmatvec(cm.data(), ca.data(), cys.data(), rows, n);
      v.cmatvec(cm.data(), ca.data(), cyv.data(), rows, n);
      for (std::size_t r = 0; r < rows; ++r) CHECK(std::abs(cys[r] - cyv[r]) <= 1e-12 * (1.0 + std::abs(cys[r])));
    }
  }
}

TEST_CASE("isa selection round-trips") {
  const Isa before = active_isa();
  select_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  CHECK(active().isa == Isa::scalar);
  if (isa_supported(Isa::avx2)) {
    select_isa(Isa::avx2);
    CHECK(active_isa() == Isa::avx2);
  }
  select_isa(before);
  CHECK(to_string(Isa::scalar) == "scalar");
}
