#pragma once

#include <cstdint>
#include <string>

#include "nncalc/detail/weight_list.hpp"
#include "nncalc/network.hpp"

namespace nncalc {

// Verification record: a claimed bound next to what a sweep actually
// measured, with enough description to reproduce the sweep.
struct ErrorCertificate {
    double claimed_bound = 0.0;
    double measured_error = 0.0;
    std::string sample_description;
    std::uint64_t seed = 0;

    bool passed() const { return measured_error <= claimed_bound + 1e-9; }
};

std::string certificate_to_json(const ErrorCertificate& cert);

// ---- squaring -------------------------------------------------------------

// Strict ReLU network on [0,1] interpolating x^2 at the dyadic nodes of
// scale 2^-(m-1). Exact sizes: L = m, M = 10 + 15(m-2), M_1 = 6, M_L = 4,
// interior layers 15.
NeuralNetwork build_square(int m);

// Sup error of build_square(m) against x^2 over the dyadic grid k/2^m,
// which contains every interpolation node and every interval midpoint; the
// piecewise-linear error attains its sup there. Valid for 2 <= m <= 24.
ErrorCertificate square_error(int m);

// ---- scalar product -------------------------------------------------------

// Depth parameter for the product network: smallest m with
// C^2 * 2^(-2m) <= eps, C = max(1, bound), clamped to at least 2.
int scalar_mult_depth(double eps, double bound);

// |x*y - R(net)(x,y)| <= eps on [-bound, bound]^2.
// Exact sizes: dim_in 2, dim_out 1, M = 30m - 28, L = m + 1, M_1 = M_L = 8.
NeuralNetwork build_scalar_mult(double eps, double bound);

ErrorCertificate verify_scalar_mult(double eps, double bound, int grid_points_per_axis = 201);

// ---- matrix product -------------------------------------------------------

int matrix_mult_depth(std::size_t d, std::size_t n, std::size_t l, double eps, double bound);

// Input (vect(A), vect(B)) with A d x n, B n x l; output vect(AB).
// Spectral error <= eps whenever both factors have spectral norm <= bound.
NeuralNetwork build_matrix_mult(std::size_t d, std::size_t n, std::size_t l, double eps, double bound);

ErrorCertificate verify_matrix_mult(std::size_t d, std::size_t n, std::size_t l, double eps, double bound,
                                    int samples, std::uint64_t seed);

// ---- Neumann partial sums and inversion -----------------------------------

struct InversionSchedule {
    double eps = 0.0;   // target spectral error
    double alpha = 0.0; // scaling of the admissible set
    double delta = 0.0; // contraction radius, in [0, 1)
    std::size_t dim = 0;
    std::int64_t big_n = 1;   // doubling stages: the sum reaches 2^big_n terms
    std::int64_t little_n = 2; // depth parameter of the product sub-networks
};

// Stage and depth counts for the inversion network. delta == 0 uses the
// one-stage limit convention; delta beyond 1 - 1e-12 is rejected, as are
// schedules whose power normalization would leave double range.
InversionSchedule inversion_schedule(std::size_t d, double eps, double alpha, double delta);

// Partial-sum network: for any A with ||A||_2 <= 1, the realization maps
// vect(A) to within eps of vect(sum_{k=0}^{2^stages - 1} A^k) in spectral
// norm. Requires eps in (0, 1/4).
NeuralNetwork build_neumann_partial(std::size_t d, int stages, double eps);

// The doubling chain underlying the partial-sum network; outputs the pair
// (vect(P), vect(s)) where P tracks (A/2)^(2^stages) and s the rescaled
// partial sum. Exposed so the recursion invariants can be checked directly.
detail::WeightList neumann_power_chain(std::size_t d, int stages, double eps);

// Assembled inversion network plan: evaluation works blockwise at any size,
// materialization is gated by the dense-entry limit.
class InversionPlan {
  public:
    InversionPlan(std::size_t d, double eps, double alpha, double delta);

    const InversionSchedule& schedule() const { return sched_; }
    const detail::WeightList& weight_list() const { return wl_; }

    // mat(R(net)(vect(B))): approximate inverse of any B with
    // ||I - alpha*B||_2 <= delta.
    DenseMatrix evaluate(const DenseMatrix& b) const;

    SizeReport sizes() const { return detail::wl_size_report(wl_); }
    std::int64_t weight_bound() const;  // stated bound on M
    std::int64_t layer_bound() const;   // stated bound on L
    NeuralNetwork materialize(std::size_t max_dense_entries = (std::size_t{1} << 27)) const;

  private:
    InversionSchedule sched_;
    detail::WeightList wl_;
};

NeuralNetwork build_inversion(std::size_t d, double eps, double alpha, double delta);

ErrorCertificate verify_inversion(std::size_t d, double eps, double alpha, double delta, int samples,
                                  std::uint64_t seed);

ErrorCertificate verify_neumann_partial(std::size_t d, int stages, double eps, int samples, std::uint64_t seed);

} // namespace nncalc
