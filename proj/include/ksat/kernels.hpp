#pragma once

#include "ksat/matrix.hpp"

namespace ksat::kernels {

// Parallel kernels. Each output element is produced by exactly one loop
// iteration with a fixed inner accumulation order, so results are bitwise
// identical to the serial reference for any OMP thread count.

// C = A * B
Matrix matmul(const Matrix& a, const Matrix& b);
// C = A * B^T
Matrix matmul_nt(const Matrix& a, const Matrix& b);
// C = A^T * B
Matrix matmul_tn(const Matrix& a, const Matrix& b);
// Gram matrix G * G^T
Matrix gram(const Matrix& g);
// C = A + B
Matrix add(const Matrix& a, const Matrix& b);
// A += alpha * B
void axpy(Matrix& a, double alpha, const Matrix& b);

namespace serial {
// Reference implementations: plain triple loops, no pragmas. Kept for
// the kernel equivalence tests and the benchmark target.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_nt(const Matrix& a, const Matrix& b);
Matrix matmul_tn(const Matrix& a, const Matrix& b);
Matrix gram(const Matrix& g);
}  // namespace serial

}  // namespace ksat::kernels
