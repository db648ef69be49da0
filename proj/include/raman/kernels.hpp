#pragma once

#include <vector>

#include "raman/fock.hpp"

namespace raman {

enum class Backend { serial, openmp };

// y = A x
void csr_matvec_serial(const CsrMatrix& A, const cplx* x, cplx* y);
void csr_matvec_openmp(const CsrMatrix& A, const cplx* x, cplx* y);
void csr_matvec(Backend b, const CsrMatrix& A, const cplx* x, cplx* y);

// <x, y> with x conjugated.
cplx dot_serial(const cplx* x, const cplx* y, std::size_t n);
cplx dot_openmp(const cplx* x, const cplx* y, std::size_t n);
cplx dot(Backend b, const cplx* x, const cplx* y, std::size_t n);

// Honours RAMAN_THREADS when set.
int configured_threads();
void apply_thread_env();

}  // namespace raman
