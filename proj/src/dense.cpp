#include "nncalc/dense.hpp"

#include <cmath>

namespace nncalc {

std::int64_t norm0(const DenseMatrix& a) {
    std::int64_t n = 0;
    for (double x : a.data)
        if (x != 0.0) ++n;
    return n;
}

std::int64_t norm0(const DenseVector& v) {
    std::int64_t n = 0;
    for (double x : v)
        if (x != 0.0) ++n;
    return n;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dimensions differ");
    DenseMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

DenseVector matvec(const DenseMatrix& a, const DenseVector& x) {
    if (a.cols != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
    DenseVector y(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("add: shape mismatch");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
    return c;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("subtract: shape mismatch");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] -= b.data[i];
    return c;
}

DenseMatrix scale(const DenseMatrix& a, double s) {
    DenseMatrix c = a;
    for (double& x : c.data) x *= s;
    return c;
}

double dot(const DenseVector& a, const DenseVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const DenseVector& v) { return std::sqrt(dot(v, v)); }

double frobenius_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (double x : a.data) s += x * x;
    return std::sqrt(s);
}

DenseVector vectorize(const DenseMatrix& a) {
    DenseVector v(a.rows * a.cols);
    std::size_t p = 0;
    for (std::size_t j = 0; j < a.cols; ++j)
        for (std::size_t i = 0; i < a.rows; ++i) v[p++] = a(i, j);
    return v;
}

DenseMatrix matricize(const DenseVector& v, std::size_t k, std::size_t l) {
    if (v.size() != k * l) throw std::invalid_argument("matricize: length does not match shape");
    DenseMatrix a(k, l);
    std::size_t p = 0;
    for (std::size_t j = 0; j < l; ++j)
        for (std::size_t i = 0; i < k; ++i) a(i, j) = v[p++];
    return a;
}

namespace {

// Lower-triangular Cholesky factor; throws if a pivot is not positive.
DenseMatrix cholesky(const DenseMatrix& b) {
    if (b.rows != b.cols) throw std::invalid_argument("cholesky: matrix not square");
    std::size_t n = b.rows;
    DenseMatrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = b(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            if (i == j) {
                if (s <= 0.0) throw std::invalid_argument("cholesky: matrix not positive definite");
                l(i, i) = std::sqrt(s);
            } else {
                l(i, j) = s / l(j, j);
            }
        }
    }
    return l;
}

DenseVector solve_with_factor(const DenseMatrix& l, const DenseVector& f) {
    std::size_t n = l.rows;
    DenseVector y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = f[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
        x[ii] = s / l(ii, ii);
    }
    return x;
}

} // namespace

DenseVector solve_spd(const DenseMatrix& b, const DenseVector& f) {
    if (b.rows != f.size()) throw std::invalid_argument("solve_spd: dimension mismatch");
    return solve_with_factor(cholesky(b), f);
}

DenseMatrix invert_spd(const DenseMatrix& b) {
    DenseMatrix l = cholesky(b);
    std::size_t n = b.rows;
    DenseMatrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        DenseVector e(n, 0.0);
        e[j] = 1.0;
        DenseVector x = solve_with_factor(l, e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i];
    }
    return inv;
}

DenseMatrix invert(const DenseMatrix& a) {
    if (a.rows != a.cols) throw std::invalid_argument("invert: matrix not square");
    std::size_t n = a.rows;
    DenseMatrix m = a;
    DenseMatrix inv = DenseMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(m(r, col)) > std::fabs(m(piv, col))) piv = r;
        if (m(piv, col) == 0.0) throw std::invalid_argument("invert: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(piv, j), m(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        double d = m(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            m(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = m(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

} // namespace nncalc
