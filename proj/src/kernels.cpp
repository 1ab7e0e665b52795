#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_internal.hpp"

namespace qscreen::kernels {

namespace {

constexpr Table kScalar{scalar::sum, scalar::dot, scalar::scale_gather, scalar::axpy_neg};
#if defined(QSCREEN_HAVE_AVX2)
constexpr Table kAvx2{avx2::sum, avx2::dot, avx2::scale_gather, avx2::axpy_neg};
#endif
#if defined(QSCREEN_HAVE_NEON)
constexpr Table kNeon{neon::sum, neon::dot, neon::scale_gather, neon::axpy_neg};
#endif

Backend widest() {
  if (available(Backend::avx2)) return Backend::avx2;
  if (available(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

Backend initial() {
  if (const char* env = std::getenv("QSCREEN_KERNEL"); env != nullptr && *env != '\0') {
    const Backend b = parse_backend(env);
    if (available(b)) return b;
  }
  return widest();
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{initial()};
  return b;
}

const Table& active_table() { return table(current().load(std::memory_order_relaxed)); }

void check_same(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernel operand length mismatch");
}

}  // namespace

std::string_view name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

Backend parse_backend(std::string_view text) {
  if (text == "scalar") return Backend::scalar;
  if (text == "avx2") return Backend::avx2;
  if (text == "neon") return Backend::neon;
  throw std::invalid_argument("unknown kernel backend '" + std::string(text) + "'");
}

bool available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(QSCREEN_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
#if defined(QSCREEN_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
    if (available(b)) out.push_back(b);
  }
  return out;
}

Backend active() { return current().load(std::memory_order_relaxed); }

void select(Backend b) {
  if (!available(b)) throw std::invalid_argument("kernel backend '" + std::string(name(b)) + "' unavailable");
  current().store(b, std::memory_order_relaxed);
}

const Table& table(Backend b) {
  if (!available(b)) throw std::invalid_argument("kernel backend '" + std::string(name(b)) + "' unavailable");
  switch (b) {
#if defined(QSCREEN_HAVE_AVX2)
    case Backend::avx2:
      return kAvx2;
#endif
#if defined(QSCREEN_HAVE_NEON)
    case Backend::neon:
      return kNeon;
#endif
    default:
      return kScalar;
  }
}

double sum(std::span<const double> x) { return active_table().sum(x.data(), x.size()); }

double dot(std::span<const double> a, std::span<const double> b) {
  check_same(a.size(), b.size());
  return active_table().dot(a.data(), b.data(), a.size());
}

void scale_gather(std::span<const double> prefix, std::span<const double> table, std::span<const int> levels,
                  std::span<double> out) {
  check_same(prefix.size(), levels.size());
  check_same(prefix.size(), out.size());
  for (int v : levels) {
    if (v < 0 || static_cast<std::size_t>(v) >= table.size()) throw std::out_of_range("level outside table");
  }
  active_table().scale_gather(prefix.data(), table.data(), levels.data(), out.data(), out.size());
}

void axpy_neg(double alpha, std::span<const double> x, std::span<double> y) {
  check_same(x.size(), y.size());
  active_table().axpy_neg(alpha, x.data(), y.data(), y.size());
}

}  // namespace qscreen::kernels
