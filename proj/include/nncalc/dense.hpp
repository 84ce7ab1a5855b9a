#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nncalc {

// Row-major dense matrix of IEEE doubles. An entry participates in the
// nonzero count iff it compares unequal to 0.0, so -0.0 counts as zero.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const double& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    bool same_shape(const DenseMatrix& o) const { return rows == o.rows && cols == o.cols; }
};

using DenseVector = std::vector<double>;

std::int64_t norm0(const DenseMatrix& a);
std::int64_t norm0(const DenseVector& v);

DenseMatrix transpose(const DenseMatrix& a);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseVector matvec(const DenseMatrix& a, const DenseVector& x);
DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scale(const DenseMatrix& a, double s);

double dot(const DenseVector& a, const DenseVector& b);
double norm2(const DenseVector& v);

// Frobenius norm; cheap upper-bound companion to the spectral norm.
double frobenius_norm(const DenseMatrix& a);

// Column-major flattening of a matrix and its inverse at a fixed shape.
DenseVector vectorize(const DenseMatrix& a);
DenseMatrix matricize(const DenseVector& v, std::size_t k, std::size_t l);

// Dense symmetric-positive-definite solve (Cholesky). Throws on non-SPD input.
DenseVector solve_spd(const DenseMatrix& b, const DenseVector& f);
DenseMatrix invert_spd(const DenseMatrix& b);

// General dense solve via partial-pivot LU, used as the direct-inverse oracle.
DenseMatrix invert(const DenseMatrix& a);

} // namespace nncalc
