#pragma once

// Arithmetic inner loops behind the contrast sweep. Every kernel has a scalar
// reference version; vector backends are picked at runtime from CPU features
// and are tested for equivalence against the scalar path.
//
// Summation order is fixed per backend, so results are bit-reproducible for a
// given backend. sum(x) and dot(ones, x) share one reduction order within a
// backend and agree bitwise.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace qscreen::kernels {

enum class Backend { scalar, avx2, neon };

std::string_view name(Backend b);
/// Parses "scalar", "avx2" or "neon"; throws std::invalid_argument otherwise.
Backend parse_backend(std::string_view text);

/// Compiled in and supported by the running CPU.
bool available(Backend b);
std::vector<Backend> available_backends();

/// Backend used by the dispatching entry points. Initialised from the
/// QSCREEN_KERNEL environment variable if set, else the widest available.
Backend active();
/// Throws std::invalid_argument if `b` is not available.
void select(Backend b);

double sum(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);
/// out[i] = prefix[i] * table[levels[i]]
void scale_gather(std::span<const double> prefix, std::span<const double> table, std::span<const int> levels,
                  std::span<double> out);
/// y[i] -= alpha * x[i]
void axpy_neg(double alpha, std::span<const double> x, std::span<double> y);

/// Per-backend entry points, for equivalence testing.
struct Table {
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*scale_gather)(const double* prefix, const double* table, const int* levels, double* out, std::size_t n);
  void (*axpy_neg)(double alpha, const double* x, double* y, std::size_t n);
};

/// Throws std::invalid_argument if `b` is not available.
const Table& table(Backend b);

namespace scalar {
double sum(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void scale_gather(const double* prefix, const double* table, const int* levels, double* out, std::size_t n);
void axpy_neg(double alpha, const double* x, double* y, std::size_t n);
}  // namespace scalar

}  // namespace qscreen::kernels
