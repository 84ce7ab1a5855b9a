// Command-line front end: build the approximation networks, inspect and
// evaluate them, run the verification sweeps, and drive the model-problem
// solver. Exit codes: 0 success, 1 verification failure, 2 usage or input
// error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "nncalc/approx.hpp"
#include "nncalc/besov.hpp"
#include "nncalc/calculus.hpp"
#include "nncalc/galerkin.hpp"
#include "nncalc/json_io.hpp"
#include "nncalc/spectral.hpp"

using namespace nncalc;

namespace {

int g_exit = 0;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text << "\n";
}

void emit_certificate(const ErrorCertificate& cert, const std::string& out_path) {
    std::cout << "claimed  " << cert.claimed_bound << "\n"
              << "measured " << cert.measured_error << "\n"
              << "samples  " << cert.sample_description << "\n"
              << (cert.passed() ? "PASS" : "FAIL") << "\n";
    if (!out_path.empty()) write_text(out_path, certificate_to_json(cert));
    if (!cert.passed()) g_exit = 1;
}

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stod(item));
    }
    return values;
}

std::function<double(double)> named_function(const std::string& name) {
    if (name == "x") return [](double x) { return x; };
    if (name == "square") return [](double x) { return x * x; };
    if (name == "sinpi") return [](double x) { return std::sin(M_PI * x); };
    if (name == "sqrt") return [](double x) { return std::sqrt(std::fabs(x)); };
    if (name == "step") return [](double x) { return x >= 0.5 ? 1.0 : 0.0; };
    throw CLI::ValidationError("--fn", "unknown function name \"" + name + "\"");
}

std::size_t network_dim_cap(std::size_t flag_value) {
    if (const char* env = std::getenv("NNCALC_MAX_DIM")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return flag_value;
}

void print_sizes(const SizeReport& rep) {
    std::cout << "layers L       " << rep.layers << "\n"
              << "neurons N      " << rep.neurons << "\n"
              << "weights M      " << rep.weights << "\n"
              << "connectivity C " << rep.connectivity << "\n"
              << "dim_in         " << rep.dim_in << "\n"
              << "dim_out        " << rep.dim_out << "\n"
              << "per-layer M_l  ";
    for (std::size_t i = 0; i < rep.per_layer_weights.size(); ++i)
        std::cout << (i ? " " : "") << rep.per_layer_weights[i];
    std::cout << "\n";
}

double poisson_forcing(double x) { return M_PI * M_PI * std::sin(M_PI * x); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructive network calculus: builders, verification sweeps, model-problem solver"};
    app.require_subcommand(1);

    // ---- build -------------------------------------------------------------
    auto* build = app.add_subcommand("build", "construct a network and write it as JSON");
    build->require_subcommand(1);
    struct {
        int m = 5;
        double eps = 1e-2;
        double bound = 1.0;
        std::size_t d = 2, n = 2, l = 2;
        double alpha = 1.0, delta = 0.0;
        int r = 2;
        std::string out;
    } b;

    auto* b_square = build->add_subcommand("square", "squaring network on [0,1]");
    b_square->add_option("--m", b.m, "depth parameter (>= 2)");
    b_square->add_option("-o,--out", b.out, "output path")->required();
    b_square->callback([&] { save_network(build_square(b.m), b.out); });

    auto* b_mult = build->add_subcommand("mult", "scalar product network on [-bound,bound]^2");
    b_mult->add_option("--eps", b.eps, "target error");
    b_mult->add_option("--bound", b.bound, "argument bound");
    b_mult->add_option("-o,--out", b.out)->required();
    b_mult->callback([&] { save_network(build_scalar_mult(b.eps, b.bound), b.out); });

    auto* b_matmul = build->add_subcommand("matmul", "matrix product network");
    b_matmul->add_option("--d", b.d, "rows of the left factor");
    b_matmul->add_option("--n", b.n, "inner dimension");
    b_matmul->add_option("--l", b.l, "columns of the right factor");
    b_matmul->add_option("--eps", b.eps, "spectral error target");
    b_matmul->add_option("--bound", b.bound, "spectral norm bound on the factors");
    b_matmul->add_option("-o,--out", b.out)->required();
    b_matmul->callback([&] { save_network(build_matrix_mult(b.d, b.n, b.l, b.eps, b.bound), b.out); });

    auto* b_invert = build->add_subcommand("invert", "approximate-inverse network");
    b_invert->add_option("--d", b.d, "matrix dimension");
    b_invert->add_option("--eps", b.eps, "spectral error target, in (0, 1/4)");
    b_invert->add_option("--alpha", b.alpha, "scaling of the admissible set");
    b_invert->add_option("--delta", b.delta, "contraction radius, in [0,1)");
    b_invert->add_option("-o,--out", b.out)->required();
    b_invert->callback([&] { save_network(build_inversion(b.d, b.eps, b.alpha, b.delta), b.out); });

    auto* b_neumann = build->add_subcommand("neumann", "geometric partial-sum network");
    b_neumann->add_option("--d", b.d, "matrix dimension");
    b_neumann->add_option("--n", b.m, "doubling stages: the sum reaches 2^n terms");
    b_neumann->add_option("--eps", b.eps, "spectral error target, in (0, 1/4)");
    b_neumann->add_option("-o,--out", b.out)->required();
    b_neumann->callback([&] { save_network(build_neumann_partial(b.d, b.m, b.eps), b.out); });

    auto* b_bump = build->add_subcommand("bump", "smoothed indicator of the unit cube");
    b_bump->add_option("--r", b.r, "activation power (>= 1)");
    b_bump->add_option("--d", b.d, "dimension");
    b_bump->add_option("--delta", b.delta, "transition width, in (0, 1/2)")->required();
    b_bump->add_option("-o,--out", b.out)->required();
    b_bump->callback([&] { save_network(build_bump(b.r, static_cast<int>(b.d), b.delta), b.out); });

    // ---- info / eval ---------------------------------------------------------
    std::string net_path, input_text;
    auto* info = app.add_subcommand("info", "print the exact size report of a stored network");
    info->add_option("network", net_path, "network JSON path")->required();
    info->callback([&] { print_sizes(validate(load_network(net_path))); });

    auto* eval = app.add_subcommand("eval", "evaluate a stored network");
    eval->add_option("network", net_path)->required();
    eval->add_option("--input", input_text, "comma-separated input vector")->required();
    eval->callback([&] {
        NeuralNetwork net = load_network(net_path);
        DenseVector out = realize(net, parse_numbers(input_text));
        for (std::size_t i = 0; i < out.size(); ++i) std::cout << (i ? " " : "") << out[i];
        std::cout << "\n";
    });

    // ---- verify ----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "measure a builder against its claimed bound");
    verify->require_subcommand(1);
    struct {
        int m = 3;
        double eps = 1e-2;
        double bound = 1.0;
        std::size_t d = 2, n = 2, l = 2;
        double alpha = 1.0, delta = 0.5;
        int grid = 201, samples = 20;
        std::uint64_t seed = 1;
        std::string out;
    } v;

    auto* v_square = verify->add_subcommand("square", "sup error over the dyadic grid");
    v_square->add_option("--m", v.m);
    v_square->add_option("-o,--out", v.out);
    v_square->callback([&] { emit_certificate(square_error(v.m), v.out); });

    auto* v_mult = verify->add_subcommand("mult");
    v_mult->add_option("--eps", v.eps);
    v_mult->add_option("--bound", v.bound);
    v_mult->add_option("--grid", v.grid, "grid points per axis");
    v_mult->add_option("-o,--out", v.out);
    v_mult->callback([&] { emit_certificate(verify_scalar_mult(v.eps, v.bound, v.grid), v.out); });

    auto* v_matmul = verify->add_subcommand("matmul");
    v_matmul->add_option("--d", v.d);
    v_matmul->add_option("--n", v.n);
    v_matmul->add_option("--l", v.l);
    v_matmul->add_option("--eps", v.eps);
    v_matmul->add_option("--bound", v.bound);
    v_matmul->add_option("--samples", v.samples);
    v_matmul->add_option("--seed", v.seed);
    v_matmul->add_option("-o,--out", v.out);
    v_matmul->callback(
        [&] { emit_certificate(verify_matrix_mult(v.d, v.n, v.l, v.eps, v.bound, v.samples, v.seed), v.out); });

    auto* v_invert = verify->add_subcommand("invert");
    v_invert->add_option("--d", v.d);
    v_invert->add_option("--eps", v.eps);
    v_invert->add_option("--alpha", v.alpha);
    v_invert->add_option("--delta", v.delta);
    v_invert->add_option("--samples", v.samples);
    v_invert->add_option("--seed", v.seed);
    v_invert->add_option("-o,--out", v.out);
    v_invert->callback(
        [&] { emit_certificate(verify_inversion(v.d, v.eps, v.alpha, v.delta, v.samples, v.seed), v.out); });

    auto* v_neumann = verify->add_subcommand("neumann");
    v_neumann->add_option("--d", v.d);
    v_neumann->add_option("--n", v.m, "doubling stages");
    v_neumann->add_option("--eps", v.eps);
    v_neumann->add_option("--samples", v.samples);
    v_neumann->add_option("--seed", v.seed);
    v_neumann->add_option("-o,--out", v.out);
    v_neumann->callback(
        [&] { emit_certificate(verify_neumann_partial(v.d, v.m, v.eps, v.samples, v.seed), v.out); });

    // ---- galerkin -----------------------------------------------------------------
    auto* galerkin = app.add_subcommand("galerkin", "model-problem runs");
    galerkin->require_subcommand(1);
    struct {
        std::size_t d = 15;
        double eps = 0.1;
        std::string method = "direct";
        std::string report;
        std::string out;
    } g;
    auto* g_poisson = galerkin->add_subcommand(
        "poisson1d", "assemble and solve -u'' = pi^2 sin(pi x) on (0,1), zero boundary");
    g_poisson->add_option("--d", g.d, "interior mesh nodes");
    g_poisson->add_option("--eps", g.eps, "target solver accuracy");
    g_poisson->add_option("--method", g.method)->check(CLI::IsMember({"direct", "neumann", "nn"}));
    g_poisson->add_option("--report", g.report, "append a CSV row (with header when new)");
    g_poisson->add_option("-o,--out", g.out, "write the problem and solution as JSON");
    g_poisson->callback([&] {
        GalerkinProblem problem = assemble_poisson_1d(g.d, poisson_forcing);
        SolveMethod method = g.method == "direct"  ? SolveMethod::Direct
                             : g.method == "neumann" ? SolveMethod::Neumann
                                                     : SolveMethod::NeuralNet;
        SolveOptions opts;
        opts.max_network_dim = network_dim_cap(16);
        GalerkinSolution sol = galerkin_solve(problem, g.eps, method, opts);

        double nodal = 0.0;
        for (std::size_t i = 0; i < g.d; ++i) {
            double x = problem.mesh_width * static_cast<double>(i + 1);
            nodal = std::max(nodal, std::fabs(sol.mu[i] - std::sin(M_PI * x)));
        }
        std::cout << "method            " << g.method << "\n"
                  << "d                 " << g.d << "\n"
                  << "error_vs_direct   " << sol.error_vs_direct << "\n"
                  << "nodal_error       " << nodal << "\n"
                  << "residual          " << sol.residual << "\n"
                  << "runtime_ms        " << sol.runtime_ms << "\n"
                  << "notes             " << sol.notes << "\n";
        if (!g.report.empty()) {
            bool fresh = !std::ifstream(g.report).good();
            std::ofstream csv(g.report, std::ios::app);
            if (!csv) throw std::runtime_error("cannot open " + g.report);
            if (fresh) csv << "method,d,eps,error_vs_direct,nodal_error,M,L,runtime_ms\n";
            csv << g.method << "," << g.d << "," << g.eps << "," << sol.error_vs_direct << "," << nodal << ","
                << sol.network_weights << "," << sol.network_layers << "," << sol.runtime_ms << "\n";
        }
        if (!g.out.empty()) {
            nlohmann::json stiffness = nlohmann::json::array();
            for (std::size_t i = 0; i < g.d; ++i) {
                nlohmann::json row = nlohmann::json::array();
                for (std::size_t j = 0; j < g.d; ++j) row.push_back(problem.stiffness(i, j));
                stiffness.push_back(std::move(row));
            }
            nlohmann::json j{{"d", g.d},
                             {"mesh_width", problem.mesh_width},
                             {"basis", problem.basis},
                             {"stiffness", std::move(stiffness)},
                             {"load", problem.load},
                             {"lambda_min", problem.lambda_min},
                             {"lambda_max", problem.lambda_max},
                             {"method", g.method},
                             {"eps", g.eps},
                             {"mu", sol.mu},
                             {"error_vs_direct", sol.error_vs_direct},
                             {"nodal_error", nodal},
                             {"notes", sol.notes}};
            write_text(g.out, j.dump());
        }
    });

    // ---- spline --------------------------------------------------------------------
    auto* spline = app.add_subcommand("spline", "cardinal spline utilities");
    spline->require_subcommand(1);
    struct {
        int r = 2, d = 1, k = 0, samples = 200;
        double x = 0.5;
        std::uint64_t seed = 1;
        std::string out;
    } s;
    auto* s_eval = spline->add_subcommand("eval", "evaluate the degree-r spline");
    s_eval->add_option("--r", s.r)->required();
    s_eval->add_option("--x", s.x)->required();
    s_eval->callback([&] { std::cout << bspline(s.r, s.x) << "\n"; });

    auto* s_conv = spline->add_subcommand("check-conv", "degree step as a sliding average");
    s_conv->add_option("--r", s.r);
    s_conv->add_option("-o,--out", s.out);
    s_conv->callback([&] { emit_certificate(bspline_convolution_check(s.r), s.out); });

    auto* s_part = spline->add_subcommand("check-partition", "shifted splines sum to one");
    s_part->add_option("--r", s.r);
    s_part->add_option("--d", s.d);
    s_part->add_option("--k", s.k, "dyadic scale");
    s_part->add_option("--samples", s.samples);
    s_part->add_option("--seed", s.seed);
    s_part->add_option("-o,--out", s.out);
    s_part->callback([&] { emit_certificate(partition_of_unity_check(s.r, s.d, s.k, s.samples, s.seed), s.out); });

    // ---- besov ----------------------------------------------------------------------
    auto* besov = app.add_subcommand("besov", "smoothness and approximation-class utilities");
    besov->require_subcommand(1);
    struct {
        std::string errors_path, fn = "x", tail = "zero", out;
        double alpha = 1.0, q = 1.0, p = 2.0, t = 0.1, a = 0.0, bnd = 1.0;
        int r = 1, kmax = 8;
    } be;

    auto* be_quasi = besov->add_subcommand("quasinorm", "approximation-class quasi-norm of an error sequence");
    be_quasi->add_option("--errors", be.errors_path, "CSV file, one error per line")->required();
    be_quasi->add_option("--alpha", be.alpha);
    be_quasi->add_option("--q", be.q, "summability index; use inf for the sup form");
    be_quasi->add_option("--tail", be.tail)->check(CLI::IsMember({"zero", "unknown"}));
    be_quasi->add_option("-o,--out", be.out);
    be_quasi->callback([&] {
        std::ifstream in(be.errors_path);
        if (!in) throw std::runtime_error("cannot open " + be.errors_path);
        std::vector<double> errors;
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) errors.push_back(std::stod(line));
        TailMode tail = be.tail == "zero" ? TailMode::Zero : TailMode::Unknown;
        QuasiNormResult res = approximation_quasinorm(errors, {be.alpha, be.q}, tail);
        std::cout << "value " << res.value << (tail == TailMode::Unknown ? " (lower bound: tail unknown)" : "")
                  << "\n";
        if (!be.out.empty()) {
            nlohmann::json j{{"alpha", be.alpha},
                             {"q", be.q},
                             {"terms", errors.size()},
                             {"value", res.value},
                             {"tail", be.tail}};
            write_text(be.out, j.dump());
        }
    });

    auto* be_mod = besov->add_subcommand("modulus", "grid estimate of the smoothness modulus");
    be_mod->add_option("--fn", be.fn, "one of x, square, sinpi, sqrt, step");
    be_mod->add_option("--r", be.r, "difference order");
    be_mod->add_option("--p", be.p);
    be_mod->add_option("--t", be.t, "shift radius");
    be_mod->add_option("--a", be.a, "interval start");
    be_mod->add_option("--b", be.bnd, "interval end");
    be_mod->callback([&] {
        std::cout << modulus_of_smoothness(named_function(be.fn), be.a, be.bnd, be.r, be.p, be.t) << "\n";
    });

    auto* be_tri = besov->add_subcommand("triangle-demo", "quasi-norm triangle-inequality violation report");
    be_tri->add_option("--p", be.p);
    be_tri->add_option("--q", be.q);
    be_tri->add_option("--alpha", be.alpha);
    be_tri->add_option("-o,--out", be.out);
    be_tri->callback([&] {
        TriangleReport rep = triangle_violation_demo(be.p, be.q, be.alpha);
        std::cout << "||e1|| + ||e2|| = " << rep.sum_of_norms << "\n"
                  << "||e1 + e2||     = " << rep.norm_of_sum << "\n"
                  << (rep.violated ? "violated" : "not violated") << " (gap " << rep.gap << ")\n";
        if (!be.out.empty()) {
            nlohmann::json j{{"p", rep.p},         {"q", rep.q},   {"alpha", rep.alpha},
                             {"sum_of_norms", rep.sum_of_norms},   {"norm_of_sum", rep.norm_of_sum},
                             {"violated", rep.violated},           {"gap", rep.gap}};
            write_text(be.out, j.dump());
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return g_exit;
}
