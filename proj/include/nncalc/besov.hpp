#pragma once

#include <functional>

#include "nncalc/approx.hpp"
#include "nncalc/dense.hpp"
#include "nncalc/network.hpp"

namespace nncalc {

// ---- sawtooth and the square interpolant -----------------------------------

// m-fold composition of the tent map g(x) = min(2x, 2-2x) on [0,1], closed
// form g(2^(m-1) x - floor(2^(m-1) x)).
double sawtooth(int m, double x);

// Reference evaluator: literal m-fold composition.
double sawtooth_recursive(int m, double x);

// Piecewise-linear interpolation of x^2 at the dyadic nodes k/2^m.
double square_interpolant(int m, double x);

// ---- cardinal B-splines -----------------------------------------------------

// Degree-r spline from rectified powers; r = 0 is the indicator of (0, 1].
double bspline(int r, double x);

// Tensor spline beta^(r-1)(2^k x_1 - j_1) * ... * beta^(r-1)(2^k x_d - j_d).
double bspline_tensor(int r, int d, int k, const std::vector<int>& j, const DenseVector& x);

// max over a grid of |beta^(r+1) - beta^(r) * indicator|, quadrature split at
// the spline knots. Claimed bound 1e-8; valid for 0 <= r <= 6.
ErrorCertificate bspline_convolution_check(int r);

// Sum over all overlapping shifts equals one; claimed bound 1e-10.
ErrorCertificate partition_of_unity_check(int r, int d, int k, int samples, std::uint64_t seed = 1);

// ---- smoothed indicator -----------------------------------------------------

// Value of the degree-r bump: 1 on [delta, 1-delta]^d, 0 outside [0,1]^d.
double bump(int r, int d, double delta, const DenseVector& x);

// Three-layer strict ReLU^r network realizing the same bump.
NeuralNetwork build_bump(int r, int d, double delta);

// ---- moduli of smoothness and Besov quantities ------------------------------

// Grid lower bound for sup_{|h| <= t} ||Delta_h^r f||_{L^p(a,b)}: 129 shift
// values, composite midpoint rule with 2^12 panels; differences leaving the
// interval count as zero.
double modulus_of_smoothness(const std::function<double(double)>& f, double a, double b, int r, double p,
                             double t);

struct BesovEstimate {
    double value = 0.0;
    double last_term = 0.0; // magnitude of the k_max summand, truncation indicator
};

// Truncated dyadic sum (sum_k [2^(alpha k) omega_r(2^-k)]^q)^(1/q) on (0,1),
// r = ceil(alpha); q may be infinity.
BesovEstimate besov_seminorm_discrete(const std::function<double(double)>& f, double alpha, double p, double q,
                                      int k_max);

struct QuasiNormParams {
    double alpha = 1.0;
    double q = 1.0; // may be infinity
};

enum class TailMode { Zero, Unknown };

struct QuasiNormResult {
    double value = 0.0;
    TailMode tail = TailMode::Zero; // Zero: entries past the list are zero;
                                    // Unknown: the value is a lower bound
};

// errors[n-1] holds the best-approximation error from the (n-1)-term class.
QuasiNormResult approximation_quasinorm(const std::vector<double>& errors, const QuasiNormParams& params,
                                        TailMode tail = TailMode::Zero);

struct SparseApproxInstance {
    DenseVector x;
    double p = 2.0;
};

// l^p norm of the d-n smallest-magnitude entries.
double sparse_best_approx_error(const SparseApproxInstance& inst, std::size_t n);

struct TriangleReport {
    double p = 0.0, q = 0.0, alpha = 0.0;
    double sum_of_norms = 2.0; // ||e1|| + ||e2||
    double norm_of_sum = 0.0;  // ||e1 + e2||
    bool violated = false;
    double gap = 0.0;
    double beta_q = 0.0; // threshold rate: violation for all p >= 1 iff alpha >= beta_q
};

// Two coordinate vectors under the n-sparse approximation classes: reports
// whether the quasi-norm violates the triangle inequality at (p, q, alpha).
TriangleReport triangle_violation_demo(double p, double q, double alpha);

} // namespace nncalc
