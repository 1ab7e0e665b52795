#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>

#include "qscreen/contamination.hpp"
#include "qscreen/indicator.hpp"
#include "qscreen/kernels.hpp"
#include "reference_designs.hpp"

using namespace qscreen;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

struct BackendGuard {
  kernels::Backend saved = kernels::active();
  ~BackendGuard() { kernels::select(saved); }
};

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(kernels::available(kernels::Backend::scalar));
  const auto all = kernels::available_backends();
  CHECK(std::find(all.begin(), all.end(), kernels::Backend::scalar) != all.end());
  CHECK(kernels::parse_backend("scalar") == kernels::Backend::scalar);
  CHECK_THROWS_AS(kernels::parse_backend("sse9"), std::invalid_argument);
}

TEST_CASE("every available backend matches naive loops") {
  std::mt19937_64 rng(12345);
  for (auto b : kernels::available_backends()) {
    CAPTURE(kernels::name(b));
    const auto& k = kernels::table(b);
    for (std::size_t n = 0; n <= 67; ++n) {
      const auto x = random_vector(rng, n), y = random_vector(rng, n);
      double s = 0.0, d = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        s += x[i];
        d += x[i] * y[i];
      }
      CHECK(k.sum(x.data(), n) == doctest::Approx(s).epsilon(1e-13).scale(1.0));
      CHECK(k.dot(x.data(), y.data(), n) == doctest::Approx(d).epsilon(1e-13).scale(1.0));

      const std::vector<double> table{0.5, -1.25, 2.0, 3.5};
      std::vector<int> levels(n);
      for (std::size_t i = 0; i < n; ++i) levels[i] = static_cast<int>(rng() % 4);
      std::vector<double> out(n, 99.0);
      k.scale_gather(x.data(), table.data(), levels.data(), out.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(bits(out[i]) == bits(x[i] * table[levels[i]]));

      std::vector<double> acc = y;
      k.axpy_neg(0.75, x.data(), acc.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(bits(acc[i]) == bits(y[i] - 0.75 * x[i]));
    }
  }
}

TEST_CASE("dot with ones is bitwise equal to sum within each backend") {
  std::mt19937_64 rng(99);
  for (auto b : kernels::available_backends()) {
    CAPTURE(kernels::name(b));
    const auto& k = kernels::table(b);
    for (std::size_t n : {1u, 3u, 4u, 7u, 18u, 27u, 81u, 1000u}) {
      const auto x = random_vector(rng, n);
      const std::vector<double> ones(n, 1.0);
      CHECK(bits(k.dot(ones.data(), x.data(), n)) == bits(k.sum(x.data(), n)));
    }
  }
}

TEST_CASE("patterns agree across backends") {
  BackendGuard guard;
  const Design d = refdesign::d2();
  kernels::select(kernels::Backend::scalar);
  const auto ref_beta = beta_pattern(d);
  const auto ref_lambda = contamination_pattern(d);
  for (auto b : kernels::available_backends()) {
    CAPTURE(kernels::name(b));
    kernels::select(b);
    CHECK(kernels::active() == b);
    const auto beta = beta_pattern(d);
    const auto lambda = contamination_pattern(d);
    for (int k = 1; k <= 8; ++k) CHECK(beta(k) == doctest::Approx(ref_beta(k)).epsilon(1e-12).scale(1.0));
    for (int k = 2; k <= 8; ++k) CHECK(lambda(k) == doctest::Approx(ref_lambda(k)).epsilon(1e-12).scale(1.0));
    const auto mean = mean_contamination(d);
    for (int k = 1; k <= 8; ++k) CHECK(std::abs(mean(k) - beta(k)) <= 1e-12);
  }
}

TEST_CASE("selecting an unavailable backend throws") {
  for (auto b : {kernels::Backend::avx2, kernels::Backend::neon}) {
    if (!kernels::available(b)) {
      CHECK_THROWS_AS(kernels::select(b), std::invalid_argument);
      CHECK_THROWS_AS(kernels::table(b), std::invalid_argument);
    }
  }
}
