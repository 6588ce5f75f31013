#include "ksat/kernels.hpp"

#include <cstdint>

namespace ksat::kernels {

namespace {
void check_inner(std::size_t ak, std::size_t bk, const char* op) {
    if (ak != bk)
        throw DomainError(std::string(op) + ": inner dimensions differ, " +
                          std::to_string(ak) + " vs " + std::to_string(bk));
}
}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    check_inner(a.cols(), b.rows(), "matmul");
    Matrix c(a.rows(), b.cols());
    const std::int64_t m = static_cast<std::int64_t>(a.rows());
    const std::size_t n = b.cols(), kk = a.cols();
#pragma omp parallel for schedule(static) if (m > 1)
    for (std::int64_t i = 0; i < m; ++i) {
        const double* ai = a.row(static_cast<std::size_t>(i));
        double* ci = c.row(static_cast<std::size_t>(i));
        for (std::size_t k = 0; k < kk; ++k) {
            const double aik = ai[k];
            const double* bk = b.row(k);
            for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    check_inner(a.cols(), b.cols(), "matmul_nt");
    Matrix c(a.rows(), b.rows());
    const std::int64_t m = static_cast<std::int64_t>(a.rows());
    const std::size_t n = b.rows(), kk = a.cols();
#pragma omp parallel for schedule(static) if (m > 1)
    for (std::int64_t i = 0; i < m; ++i) {
        const double* ai = a.row(static_cast<std::size_t>(i));
        double* ci = c.row(static_cast<std::size_t>(i));
        for (std::size_t j = 0; j < n; ++j) {
            const double* bj = b.row(j);
            double s = 0.0;
            for (std::size_t k = 0; k < kk; ++k) s += ai[k] * bj[k];
            ci[j] = s;
        }
    }
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    check_inner(a.rows(), b.rows(), "matmul_tn");
    Matrix c(a.cols(), b.cols());
    const std::int64_t m = static_cast<std::int64_t>(a.cols());
    const std::size_t n = b.cols(), kk = a.rows();
#pragma omp parallel for schedule(static) if (m > 1)
    for (std::int64_t i = 0; i < m; ++i) {
        double* ci = c.row(static_cast<std::size_t>(i));
        for (std::size_t k = 0; k < kk; ++k) {
            const double aki = a(k, static_cast<std::size_t>(i));
            const double* bk = b.row(k);
            for (std::size_t j = 0; j < n; ++j) ci[j] += aki * bk[j];
        }
    }
    return c;
}

Matrix gram(const Matrix& g) { return matmul_nt(g, g); }

Matrix add(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b, "add");
    Matrix c(a.rows(), a.cols());
    const std::int64_t n = static_cast<std::int64_t>(a.size());
    const double* pa = a.data();
    const double* pb = b.data();
    double* pc = c.data();
#pragma omp parallel for schedule(static) if (n > 4096)
    for (std::int64_t i = 0; i < n; ++i) pc[i] = pa[i] + pb[i];
    return c;
}

void axpy(Matrix& a, double alpha, const Matrix& b) {
    check_same_shape(a, b, "axpy");
    const std::int64_t n = static_cast<std::int64_t>(a.size());
    double* pa = a.data();
    const double* pb = b.data();
#pragma omp parallel for schedule(static) if (n > 4096)
    for (std::int64_t i = 0; i < n; ++i) pa[i] += alpha * pb[i];
}

namespace serial {

Matrix matmul(const Matrix& a, const Matrix& b) {
    check_inner(a.cols(), b.rows(), "matmul");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    check_inner(a.cols(), b.cols(), "matmul_nt");
    Matrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(j, k);
            c(i, j) = s;
        }
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    check_inner(a.rows(), b.rows(), "matmul_tn");
    Matrix c(a.cols(), b.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t k = 0; k < a.rows(); ++k) {
            const double aki = a(k, i);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aki * b(k, j);
        }
    return c;
}

Matrix gram(const Matrix& g) { return matmul_nt(g, g); }

}  // namespace serial

}  // namespace ksat::kernels
