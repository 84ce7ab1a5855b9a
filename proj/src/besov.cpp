#include "nncalc/besov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace nncalc {

namespace {

double relu_pow(double x, int r) {
    if (x <= 0.0) return 0.0;
    double y = x;
    for (int i = 1; i < r; ++i) y *= x;
    return y;
}

double binom(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Ramp of degree r: 0 below 0, 1 above r, monotone in between; its
// derivative is the degree r-1 spline.
double spline_ramp(int r, double x) {
    double s = 0.0;
    for (int k = 0; k <= r; ++k) s += binom(r, k) * (k % 2 ? -1.0 : 1.0) * relu_pow(x - k, r);
    return s / factorial(r);
}

struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

} // namespace

double sawtooth(int m, double x) {
    if (m < 1) throw std::invalid_argument("sawtooth: m must be at least 1");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("sawtooth: x must lie in [0,1]");
    double t = std::ldexp(x, m - 1);
    double frac = t - std::floor(t);
    return std::min(2.0 * frac, 2.0 - 2.0 * frac);
}

double sawtooth_recursive(int m, double x) {
    if (m < 1) throw std::invalid_argument("sawtooth_recursive: m must be at least 1");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("sawtooth_recursive: x must lie in [0,1]");
    double v = x;
    for (int i = 0; i < m; ++i) v = std::min(2.0 * v, 2.0 - 2.0 * v);
    return v;
}

double square_interpolant(int m, double x) {
    if (m < 0) throw std::invalid_argument("square_interpolant: m must be nonnegative");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("square_interpolant: x must lie in [0,1]");
    double scale = std::ldexp(1.0, m);
    double node = std::floor(scale * x) / scale;
    return (2.0 * node + 1.0 / scale) * (x - node) + node * node;
}

double bspline(int r, double x) {
    if (r < 0) throw std::invalid_argument("bspline: degree must be nonnegative");
    if (r == 0) return (x > 0.0 && x <= 1.0) ? 1.0 : 0.0;
    double s = 0.0;
    for (int k = 0; k <= r + 1; ++k) s += binom(r + 1, k) * (k % 2 ? -1.0 : 1.0) * relu_pow(x - k, r);
    return s / factorial(r);
}

double bspline_tensor(int r, int d, int k, const std::vector<int>& j, const DenseVector& x) {
    if (r < 1) throw std::invalid_argument("bspline_tensor: r must be at least 1");
    if (j.size() != static_cast<std::size_t>(d) || x.size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("bspline_tensor: dimension mismatch");
    double prod = 1.0;
    double scale = std::ldexp(1.0, k);
    for (int t = 0; t < d; ++t) prod *= bspline(r - 1, scale * x[t] - j[t]);
    return prod;
}

ErrorCertificate bspline_convolution_check(int r) {
    if (r < 0 || r > 6) throw std::invalid_argument("bspline_convolution_check: r must lie in [0, 6]");

    // 5-point Gauss-Legendre nodes on [-1, 1]; exact through degree 9.
    static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                 0.9061798459386640};
    static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};

    auto convolved = [&](double x) {
        // integral over y in [0,1] of beta^(r)(x - y), split at the knots.
        std::vector<double> cuts{0.0, 1.0};
        for (int k = 0; k <= r + 1; ++k) {
            double y = x - k;
            if (y > 0.0 && y < 1.0) cuts.push_back(y);
        }
        std::sort(cuts.begin(), cuts.end());
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double a = cuts[i], b = cuts[i + 1];
            double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int g = 0; g < 5; ++g) total += gw[g] * half * bspline(r, x - (mid + half * gx[g]));
        }
        return total;
    };

    double worst = 0.0;
    const int points = 1200;
    double lo = -0.5, hi = r + 2.5;
    for (int i = 0; i <= points; ++i) {
        double x = lo + (hi - lo) * i / points;
        worst = std::max(worst, std::fabs(bspline(r + 1, x) - convolved(x)));
    }
    ErrorCertificate cert;
    cert.claimed_bound = 1e-8;
    cert.measured_error = worst;
    std::ostringstream desc;
    desc << (points + 1) << " grid points on [" << lo << ", " << hi << "], degree " << r;
    cert.sample_description = desc.str();
    return cert;
}

ErrorCertificate partition_of_unity_check(int r, int d, int k, int samples, std::uint64_t seed) {
    if (r < 1) throw std::invalid_argument("partition_of_unity_check: r must be at least 1");
    if (d < 1 || k < 0) throw std::invalid_argument("partition_of_unity_check: bad dimension or scale");
    Rng rng(seed);
    double scale = std::ldexp(1.0, k);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        DenseVector x(static_cast<std::size_t>(d));
        for (double& t : x) t = rng.uniform();
        // Only shifts whose support window [0, r] covers 2^k x_t contribute.
        double sum = 0.0;
        std::vector<int> j(static_cast<std::size_t>(d), 0);
        std::vector<std::pair<int, int>> range(static_cast<std::size_t>(d));
        for (int t = 0; t < d; ++t) {
            double c = scale * x[static_cast<std::size_t>(t)];
            range[static_cast<std::size_t>(t)] = {static_cast<int>(std::floor(c)) - r,
                                                  static_cast<int>(std::ceil(c)) + 1};
        }
        std::function<void(int, double)> walk = [&](int t, double acc) {
            if (t == d) {
                sum += acc;
                return;
            }
            for (int jt = range[static_cast<std::size_t>(t)].first; jt <= range[static_cast<std::size_t>(t)].second;
                 ++jt) {
                double v = bspline(r - 1, scale * x[static_cast<std::size_t>(t)] - jt);
                if (v != 0.0) walk(t + 1, acc * v);
            }
        };
        walk(0, 1.0);
        worst = std::max(worst, std::fabs(sum - 1.0));
    }
    ErrorCertificate cert;
    cert.claimed_bound = 1e-10;
    cert.measured_error = worst;
    std::ostringstream desc;
    desc << samples << " uniform samples in [0,1]^" << d << ", degree " << (r - 1) << ", scale 2^" << k;
    cert.sample_description = desc.str();
    cert.seed = seed;
    return cert;
}

double bump(int r, int d, double delta, const DenseVector& x) {
    if (r < 1) throw std::invalid_argument("bump: r must be at least 1");
    if (delta <= 0.0 || delta >= 0.5) throw std::invalid_argument("bump: delta must lie in (0, 1/2)");
    if (x.size() != static_cast<std::size_t>(d)) throw std::invalid_argument("bump: dimension mismatch");
    double s = 0.0;
    for (double t : x)
        s += spline_ramp(r, r * t / delta) - spline_ramp(r, r * (t + delta - 1.0) / delta);
    return spline_ramp(r, r * (s - d + 1.0));
}

NeuralNetwork build_bump(int r, int d, double delta) {
    if (r < 1) throw std::invalid_argument("build_bump: r must be at least 1");
    if (delta <= 0.0 || delta >= 0.5) throw std::invalid_argument("build_bump: delta must lie in (0, 1/2)");
    std::size_t dd = static_cast<std::size_t>(d);
    std::size_t per_coord = 2 * static_cast<std::size_t>(r + 1);

    // Layer 1: shifted rectified powers feeding both ramps of every coordinate.
    DenseMatrix a1(per_coord * dd, dd);
    DenseVector b1(per_coord * dd, 0.0);
    double slope = static_cast<double>(r) / delta;
    for (std::size_t t = 0; t < dd; ++t) {
        for (int k = 0; k <= r; ++k) {
            std::size_t row_plus = t * per_coord + static_cast<std::size_t>(k);
            std::size_t row_minus = t * per_coord + static_cast<std::size_t>(r + 1 + k);
            a1(row_plus, t) = slope;
            b1[row_plus] = -static_cast<double>(k);
            a1(row_minus, t) = slope;
            b1[row_minus] = static_cast<double>(r) * (delta - 1.0) / delta - static_cast<double>(k);
        }
    }

    // Layer 2: the outer ramp argument r*(sum_t psi(x_t) - d + 1), again in
    // shifted rectified powers.
    std::size_t width2 = static_cast<std::size_t>(r + 1);
    DenseMatrix a2(width2, per_coord * dd);
    DenseVector b2(width2, 0.0);
    double rf = factorial(r);
    for (std::size_t kp = 0; kp < width2; ++kp) {
        for (std::size_t t = 0; t < dd; ++t) {
            for (int k = 0; k <= r; ++k) {
                double coef = static_cast<double>(r) * binom(r, k) * (k % 2 ? -1.0 : 1.0) / rf;
                a2(kp, t * per_coord + static_cast<std::size_t>(k)) = coef;
                a2(kp, t * per_coord + static_cast<std::size_t>(r + 1 + k)) = -coef;
            }
        }
        b2[kp] = static_cast<double>(r) * (1.0 - d) - static_cast<double>(kp);
    }

    DenseMatrix a3(1, width2);
    for (std::size_t kp = 0; kp < width2; ++kp)
        a3(0, kp) = binom(r, static_cast<int>(kp)) * (kp % 2 ? -1.0 : 1.0) / rf;

    return from_weights_strict({{a1, b1}, {a2, b2}, {a3, DenseVector{0.0}}}, r);
}

double modulus_of_smoothness(const std::function<double(double)>& f, double a, double b, int r, double p,
                             double t) {
    if (r < 1) throw std::invalid_argument("modulus_of_smoothness: r must be at least 1");
    if (!(p > 0.0) || std::isinf(p)) throw std::invalid_argument("modulus_of_smoothness: p must lie in (0, inf)");
    if (t <= 0.0 || b <= a) throw std::invalid_argument("modulus_of_smoothness: bad interval or radius");

    const int shifts = 129;
    const int panels = 1 << 12;
    double width = b - a;
    double dx = width / panels;
    double best = 0.0;
    for (int s = 1; s <= shifts; ++s) {
        double h = t * s / shifts;
        double acc = 0.0;
        for (int i = 0; i < panels; ++i) {
            double x = a + (i + 0.5) * dx;
            if (x + r * h > b) continue; // difference leaves the domain
            double diff = 0.0;
            for (int k = 0; k <= r; ++k)
                diff += binom(r, k) * (((r - k) % 2) ? -1.0 : 1.0) * f(x + k * h);
            acc += std::pow(std::fabs(diff), p) * dx;
        }
        best = std::max(best, std::pow(acc, 1.0 / p));
    }
    return best;
}

BesovEstimate besov_seminorm_discrete(const std::function<double(double)>& f, double alpha, double p, double q,
                                      int k_max) {
    if (alpha <= 0.0) throw std::invalid_argument("besov_seminorm_discrete: alpha must be positive");
    if (k_max < 1) throw std::invalid_argument("besov_seminorm_discrete: k_max must be at least 1");
    int r = std::max(1, static_cast<int>(std::ceil(alpha - 1e-12)));
    BesovEstimate est;
    bool sup_mode = std::isinf(q);
    double acc = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        double term =
            std::pow(2.0, alpha * k) * modulus_of_smoothness(f, 0.0, 1.0, r, p, std::ldexp(1.0, -k));
        if (k == k_max) est.last_term = term;
        if (sup_mode)
            acc = std::max(acc, term);
        else
            acc += std::pow(term, q);
    }
    est.value = sup_mode ? acc : std::pow(acc, 1.0 / q);
    return est;
}

QuasiNormResult approximation_quasinorm(const std::vector<double>& errors, const QuasiNormParams& params,
                                        TailMode tail) {
    if (params.alpha <= 0.0) throw std::invalid_argument("approximation_quasinorm: alpha must be positive");
    if (!(params.q > 0.0)) throw std::invalid_argument("approximation_quasinorm: q must be positive");
    for (double e : errors)
        if (e < 0.0) throw std::invalid_argument("approximation_quasinorm: negative error entry");

    QuasiNormResult res;
    res.tail = tail;
    bool sup_mode = std::isinf(params.q);
    double acc = 0.0;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        double n = static_cast<double>(i + 1);
        double term = std::pow(n, params.alpha) * errors[i];
        if (sup_mode)
            acc = std::max(acc, term);
        else
            acc += std::pow(term, params.q) / n;
    }
    res.value = sup_mode ? acc : std::pow(acc, 1.0 / params.q);
    return res;
}

double sparse_best_approx_error(const SparseApproxInstance& inst, std::size_t n) {
    if (!(inst.p > 0.0) || std::isinf(inst.p))
        throw std::invalid_argument("sparse_best_approx_error: p must lie in (0, inf)");
    std::size_t d = inst.x.size();
    if (n >= d) return 0.0;
    std::vector<double> mags(d);
    for (std::size_t i = 0; i < d; ++i) mags[i] = std::fabs(inst.x[i]);
    std::sort(mags.begin(), mags.end());
    double acc = 0.0;
    for (std::size_t i = 0; i < d - n; ++i) acc += std::pow(mags[i], inst.p);
    return std::pow(acc, 1.0 / inst.p);
}

TriangleReport triangle_violation_demo(double p, double q, double alpha) {
    if (p < 1.0) throw std::invalid_argument("triangle_violation_demo: p must be at least 1");
    if (!(q > 0.0)) throw std::invalid_argument("triangle_violation_demo: q must be positive");
    if (alpha <= 0.0) throw std::invalid_argument("triangle_violation_demo: alpha must be positive");

    TriangleReport rep;
    rep.p = p;
    rep.q = q;
    rep.alpha = alpha;

    // Unit coordinate vectors: both have quasi-norm 1; the error sequence of
    // their sum is (2^(1/p), 1, 0, ...).
    std::vector<double> sum_errors{std::pow(2.0, 1.0 / p), 1.0};
    rep.norm_of_sum = approximation_quasinorm(sum_errors, {alpha, q}).value;
    rep.violated = rep.norm_of_sum > rep.sum_of_norms;
    rep.gap = rep.norm_of_sum - rep.sum_of_norms;
    if (!std::isinf(q)) rep.beta_q = (1.0 + std::log2(std::pow(2.0, q) - 1.0)) / q;
    return rep;
}

} // namespace nncalc
