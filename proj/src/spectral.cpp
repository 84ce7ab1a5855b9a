#include "nncalc/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace nncalc {

bool is_symmetric(const DenseMatrix& a) {
    if (a.rows != a.cols) return false;
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = i + 1; j < a.cols; ++j)
            if (a(i, j) != a(j, i)) return false;
    return true;
}

std::vector<double> symmetric_eigenvalues(const DenseMatrix& a) {
    if (!is_symmetric(a)) throw std::invalid_argument("symmetric_eigenvalues: matrix not symmetric");
    std::size_t n = a.rows;
    DenseMatrix m = a;

    auto off_diagonal = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += m(i, j) * m(i, j);
        return std::sqrt(s);
    };

    double scale = frobenius_norm(m);
    if (scale == 0.0) return std::vector<double>(n, 0.0);

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_diagonal() > 1e-14 * scale; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = m(p, q);
                if (apq == 0.0) continue;
                double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double spectral_norm(const DenseMatrix& a) {
    if (a.rows == 0 || a.cols == 0) return 0.0;
    if (is_symmetric(a)) {
        double best = 0.0;
        for (double l : symmetric_eigenvalues(a)) best = std::max(best, std::fabs(l));
        return best;
    }

    if (frobenius_norm(a) == 0.0) return 0.0;

    // Power iteration on A^T A; the iterate stays deterministic.
    DenseMatrix at = transpose(a);
    std::size_t n = a.cols;
    DenseVector v(n, 1.0);
    v[0] += 0.5; // break symmetry against vectors orthogonal to the ones vector
    double nv = norm2(v);
    for (double& x : v) x /= nv;

    double lambda = 0.0;
    const int cap = 100000;
    for (int it = 0; it < cap; ++it) {
        DenseVector w = matvec(at, matvec(a, v));
        double nw = norm2(w);
        if (nw == 0.0) return 0.0; // v fell into the null space; norm reached zero numerically
        for (double& x : w) x /= nw;
        double next = nw;
        bool settled = std::fabs(next - lambda) <= 1e-12 * std::max(1.0, next);
        lambda = next;
        v = std::move(w);
        if (settled && it > 2) return std::sqrt(lambda);
    }
    throw std::runtime_error("spectral_norm: power iteration did not settle within the iteration cap");
}

} // namespace nncalc
