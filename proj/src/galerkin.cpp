#include "nncalc/galerkin.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "nncalc/spectral.hpp"

namespace nncalc {

namespace {

double simpson(const std::function<double(double)>& g, double a, double b, int panels) {
    double h = (b - a) / panels;
    double s = g(a) + g(b);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
    return s * h / 3.0;
}

} // namespace

GalerkinProblem assemble_poisson_1d(std::size_t d, const std::function<double(double)>& f) {
    if (d == 0) throw std::invalid_argument("assemble_poisson_1d: dimension must be positive");
    GalerkinProblem p;
    double h = 1.0 / static_cast<double>(d + 1);
    p.mesh_width = h;
    p.stiffness = DenseMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        p.stiffness(i, i) = 2.0 / h;
        if (i + 1 < d) {
            p.stiffness(i, i + 1) = -1.0 / h;
            p.stiffness(i + 1, i) = -1.0 / h;
        }
    }

    p.load.assign(d, 0.0);
    const int panels = 64;
    for (std::size_t i = 0; i < d; ++i) {
        double xl = h * static_cast<double>(i);
        double xc = h * static_cast<double>(i + 1);
        double xr = h * static_cast<double>(i + 2);
        auto rising = [&](double x) { return f(x) * (x - xl) / h; };
        auto falling = [&](double x) { return f(x) * (xr - x) / h; };
        p.load[i] = simpson(rising, xl, xc, panels) + simpson(falling, xc, xr, panels);
    }

    double n1 = static_cast<double>(d + 1);
    p.lambda_min = (2.0 / h) * (1.0 - std::cos(M_PI / n1));
    p.lambda_max = (2.0 / h) * (1.0 - std::cos(static_cast<double>(d) * M_PI / n1));
    return p;
}

SpdContraction spd_contraction_params(const DenseMatrix& b, std::optional<double> alpha) {
    if (b.rows != b.cols) throw std::invalid_argument("spd_contraction_params: matrix not square");
    if (!is_symmetric(b)) {
        // Allow roundoff-level asymmetry but nothing more.
        DenseMatrix diff = subtract(b, transpose(b));
        if (frobenius_norm(diff) > 1e-12 * std::max(1.0, frobenius_norm(b)))
            throw std::invalid_argument("spd_contraction_params: matrix not symmetric");
    }
    std::vector<double> eig = symmetric_eigenvalues(b);
    double lo = eig.front(), hi = eig.back();
    if (lo <= 0.0) throw std::invalid_argument("spd_contraction_params: matrix not positive definite");

    SpdContraction c;
    if (alpha) {
        if (*alpha <= 0.0 || *alpha > 1.0 / hi)
            throw std::invalid_argument("spd_contraction_params: alpha must lie in (0, 1/lambda_max]");
        c.alpha = *alpha;
        c.delta = 1.0 - *alpha * lo;
    } else {
        c.alpha = 2.0 / (lo + hi);
        c.delta = (hi - lo) / (hi + lo);
    }
    return c;
}

DenseMatrix neumann_inverse_oracle(const DenseMatrix& b, double alpha, int terms) {
    if (b.rows != b.cols) throw std::invalid_argument("neumann_inverse_oracle: matrix not square");
    if (terms < 0) throw std::invalid_argument("neumann_inverse_oracle: terms must be nonnegative");
    std::size_t d = b.rows;
    DenseMatrix a = subtract(DenseMatrix::identity(d), scale(b, alpha));
    if (spectral_norm(a) >= 1.0)
        throw std::invalid_argument("neumann_inverse_oracle: ||I - alpha B|| >= 1, series diverges");
    DenseMatrix sum = DenseMatrix::identity(d);
    DenseMatrix power = DenseMatrix::identity(d);
    for (int k = 1; k <= terms; ++k) {
        power = matmul(power, a);
        sum = add(sum, power);
    }
    return scale(sum, alpha);
}

GalerkinSolution galerkin_solve(const GalerkinProblem& problem, double eps, SolveMethod method,
                                const SolveOptions& options) {
    const DenseMatrix& b = problem.stiffness;
    const DenseVector& f = problem.load;
    std::size_t d = b.rows;

    auto t0 = std::chrono::steady_clock::now();
    GalerkinSolution sol;
    sol.method = method;
    sol.eps = eps;

    DenseVector direct = solve_spd(b, f);

    switch (method) {
        case SolveMethod::Direct: {
            sol.mu = direct;
            sol.notes = "dense symmetric factorization";
            break;
        }
        case SolveMethod::Neumann: {
            SpdContraction c = spd_contraction_params(b);
            int terms = 0;
            if (c.delta > 0.0) {
                // smallest T with alpha * delta^(T+1) / (1 - delta) <= eps
                double t = std::log(eps * (1.0 - c.delta) / c.alpha) / std::log(c.delta) - 1.0;
                terms = std::max(0, static_cast<int>(std::ceil(t - 1e-12)));
            }
            DenseMatrix approx_inv = neumann_inverse_oracle(b, c.alpha, terms);
            sol.mu = matvec(approx_inv, f);
            std::ostringstream n;
            n << "truncated geometric series, " << terms << " correction terms, alpha=" << c.alpha
              << ", delta=" << c.delta;
            sol.notes = n.str();
            break;
        }
        case SolveMethod::NeuralNet: {
            if (eps <= 0.0 || eps >= 0.25)
                throw std::invalid_argument("galerkin_solve: eps must lie in (0, 1/4) for the network method");
            if (d > options.max_network_dim)
                throw std::invalid_argument("galerkin_solve: dimension " + std::to_string(d) +
                                            " exceeds the network-method cap of " +
                                            std::to_string(options.max_network_dim) +
                                            " (set NNCALC_MAX_DIM or SolveOptions::max_network_dim)");
            SpdContraction c = spd_contraction_params(b);
            InversionPlan plan(d, eps, c.alpha, c.delta);
            DenseMatrix approx_inv = plan.evaluate(b);
            sol.mu = matvec(approx_inv, f);
            SizeReport sizes = plan.sizes();
            sol.network_weights = sizes.weights;
            sol.network_layers = sizes.layers;
            std::ostringstream n;
            n << "inversion network, alpha=" << c.alpha << ", delta=" << c.delta
              << ", stages=" << plan.schedule().big_n << ", depth_param=" << plan.schedule().little_n
              << ", claimed inverse error <= " << eps;
            sol.notes = n.str();
            break;
        }
    }

    DenseVector res = matvec(b, sol.mu);
    for (std::size_t i = 0; i < res.size(); ++i) res[i] -= f[i];
    sol.residual = norm2(res);

    DenseVector diff = sol.mu;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= direct[i];
    sol.error_vs_direct = norm2(diff);

    sol.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return sol;
}

} // namespace nncalc
