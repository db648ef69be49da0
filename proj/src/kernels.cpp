#include "raman/kernels.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <string>

#include "raman/errors.hpp"

namespace raman {

void csr_matvec_serial(const CsrMatrix& A, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < A.rows; ++r) {
    cplx acc = 0.0;
    for (std::size_t k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k) acc += A.val[k] * x[A.col[k]];
    y[r] = acc;
  }
}

void csr_matvec_openmp(const CsrMatrix& A, const cplx* x, cplx* y) {
  const auto rows = static_cast<std::ptrdiff_t>(A.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    cplx acc = 0.0;
    for (std::size_t k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k) acc += A.val[k] * x[A.col[k]];
    y[r] = acc;
  }
}

void csr_matvec(Backend b, const CsrMatrix& A, const cplx* x, cplx* y) {
  if (b == Backend::openmp) csr_matvec_openmp(A, x, y);
  else csr_matvec_serial(A, x, y);
}

cplx dot_serial(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

cplx dot_openmp(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  const auto len = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) reduction(+ : re, im)
  for (std::ptrdiff_t i = 0; i < len; ++i) {
    const cplx p = std::conj(x[i]) * y[i];
    re += p.real();
    im += p.imag();
  }
  return {re, im};
}

cplx dot(Backend b, const cplx* x, const cplx* y, std::size_t n) {
  return b == Backend::openmp ? dot_openmp(x, y, n) : dot_serial(x, y, n);
}

int configured_threads() {
  const char* env = std::getenv("RAMAN_THREADS");
  if (env == nullptr || *env == '\0') return omp_get_max_threads();
  int n = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, n);
  if (ec != std::errc{} || ptr != end || n < 1)
    throw ConfigError("must be a positive integer, got \"" + std::string(env) + "\"", "RAMAN_THREADS");
  return n;
}

void apply_thread_env() { omp_set_num_threads(configured_threads()); }

}  // namespace raman
