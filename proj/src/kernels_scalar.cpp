#include "qscreen/kernels.hpp"

namespace qscreen::kernels::scalar {

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void scale_gather(const double* prefix, const double* table, const int* levels, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = prefix[i] * table[levels[i]];
}

void axpy_neg(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] -= alpha * x[i];
}

}  // namespace qscreen::kernels::scalar
