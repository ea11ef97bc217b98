#pragma once

// Pointwise kernels shared by the transforms, the fixed-point map and the
// split-step solver. `parallel` is what the library calls; `serial` is the
// plain reference kept for tests and the benchmark.

#include <span>

#include "modwave/types.hpp"

namespace modwave::kernels {

namespace serial {

/// out[k] = exp(-i t xi_k^2 / 2) in[k]
void multiply_chirp(std::span<const cplx> in, std::span<const double> xi, double t, std::span<cplx> out);
/// out = |in|^2 in
void cubic(std::span<const cplx> in, std::span<cplx> out);
/// out = |a+b|^2 (a+b) - |a|^2 a through the five-term expansion.
void cubic_difference(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
/// u *= exp(-i angle |u|^2)
void rotate_phase(std::span<cplx> u, double angle);
double sum_abs2(std::span<const cplx> v);
double max_abs(std::span<const cplx> v);

}  // namespace serial

namespace parallel {

void multiply_chirp(std::span<const cplx> in, std::span<const double> xi, double t, std::span<cplx> out);
void cubic(std::span<const cplx> in, std::span<cplx> out);
void cubic_difference(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void rotate_phase(std::span<cplx> u, double angle);
/// Chunked reduction; the chunking does not depend on the thread count, so the
/// result is bit-identical for any number of threads.
double sum_abs2(std::span<const cplx> v);
double max_abs(std::span<const cplx> v);

}  // namespace parallel

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();
/// Caps the OpenMP team size for the calling thread.
void set_threads(int n);

}  // namespace modwave::kernels
