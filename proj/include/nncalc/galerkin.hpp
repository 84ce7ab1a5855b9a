#pragma once

#include <functional>
#include <optional>
#include <string>

#include "nncalc/approx.hpp"
#include "nncalc/dense.hpp"

namespace nncalc {

// Discrete form of the model problem -u'' = f on (0,1) with zero boundary
// values, hat-function basis on a uniform mesh of width 1/(d+1).
struct GalerkinProblem {
    DenseMatrix stiffness;  // d x d, tridiagonal, symmetric positive definite
    DenseVector load;       // d
    double mesh_width = 0.0;
    std::string basis = "hat functions, uniform mesh";
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

// Contraction parameters for a symmetric positive definite matrix:
// delta = ||I - alpha*B||_2 < 1.
struct SpdContraction {
    double alpha = 0.0;
    double delta = 0.0;
};

// Assembles the stiffness matrix and the load vector; the load integrals use
// composite Simpson quadrature with 64 panels per element.
GalerkinProblem assemble_poisson_1d(std::size_t d, const std::function<double(double)>& f);

// Default picks alpha = 2/(lambda_min + lambda_max), which minimizes delta.
// Passing alpha in (0, 1/lambda_max] gives the one-sided choice with
// delta = 1 - alpha*lambda_min.
SpdContraction spd_contraction_params(const DenseMatrix& b, std::optional<double> alpha = std::nullopt);

// alpha * sum_{k=0}^{terms} (I - alpha*B)^k; error against the true inverse
// is at most alpha * delta^(terms+1) / (1 - delta).
DenseMatrix neumann_inverse_oracle(const DenseMatrix& b, double alpha, int terms);

enum class SolveMethod { Direct, Neumann, NeuralNet };

struct SolveOptions {
    std::size_t max_network_dim = 16; // guard for SolveMethod::NeuralNet
    std::uint64_t seed = 0;
};

struct GalerkinSolution {
    DenseVector mu;
    SolveMethod method = SolveMethod::Direct;
    double eps = 0.0;
    double error_vs_direct = 0.0; // ||mu_method - mu_direct||_2
    double residual = 0.0;        // ||B mu - F||_2
    std::int64_t network_weights = -1;
    std::int64_t network_layers = -1;
    double runtime_ms = 0.0;
    std::string notes;
};

GalerkinSolution galerkin_solve(const GalerkinProblem& problem, double eps, SolveMethod method,
                                const SolveOptions& options = {});

} // namespace nncalc
