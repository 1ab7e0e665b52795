#pragma once

#include "qscreen/kernels.hpp"

namespace qscreen::kernels {

#if defined(QSCREEN_HAVE_AVX2)
namespace avx2 {
double sum(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void scale_gather(const double* prefix, const double* table, const int* levels, double* out, std::size_t n);
void axpy_neg(double alpha, const double* x, double* y, std::size_t n);
}  // namespace avx2
#endif

#if defined(QSCREEN_HAVE_NEON)
namespace neon {
double sum(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void scale_gather(const double* prefix, const double* table, const int* levels, double* out, std::size_t n);
void axpy_neg(double alpha, const double* x, double* y, std::size_t n);
}  // namespace neon
#endif

}  // namespace qscreen::kernels
