#include "nncalc/approx.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "nncalc/spectral.hpp"

namespace nncalc {

using detail::BlockRepeat;
using detail::WeightList;
using detail::WEntry;
using detail::WLayer;

namespace {

// splitmix64; platform-independent sampling so certificates reproduce.
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

double pow2(int e) { return std::ldexp(1.0, e); }

int ceil_half_log2(double x) {
    return static_cast<int>(std::ceil(0.5 * std::log2(x) - 1e-12));
}

int floor_half_log2(double x) {
    return static_cast<int>(std::floor(0.5 * std::log2(x) + 1e-12));
}

} // namespace

std::string certificate_to_json(const ErrorCertificate& cert) {
    nlohmann::json j{{"claimed", cert.claimed_bound},
                     {"measured", cert.measured_error},
                     {"samples", cert.sample_description},
                     {"seed", cert.seed}};
    return j.dump();
}

// ---- squaring -------------------------------------------------------------

NeuralNetwork build_square(int m) {
    if (m < 2) throw std::invalid_argument("build_square: m must be at least 2");

    DenseMatrix first(4, 1);
    for (std::size_t i = 0; i < 4; ++i) first(i, 0) = 1.0;
    DenseVector thresholds{0.0, -0.5, -1.0, 0.0};

    auto interior = [](int k) {
        DenseMatrix a(4, 4);
        for (std::size_t r = 0; r < 3; ++r) {
            a(r, 0) = 2.0;
            a(r, 1) = -4.0;
            a(r, 2) = 2.0;
        }
        a(3, 0) = -pow2(3 - 2 * k);
        a(3, 1) = pow2(4 - 2 * k);
        a(3, 2) = -pow2(3 - 2 * k);
        a(3, 3) = 1.0;
        return a;
    };

    DenseMatrix last(1, 4);
    last(0, 0) = -pow2(3 - 2 * m);
    last(0, 1) = pow2(4 - 2 * m);
    last(0, 2) = -pow2(3 - 2 * m);
    last(0, 3) = 1.0;

    std::vector<WeightPair> w;
    w.emplace_back(first, thresholds);
    for (int k = 2; k <= m - 1; ++k) w.emplace_back(interior(k), thresholds);
    w.emplace_back(last, DenseVector{0.0});
    return from_weights_strict(w, 1);
}

ErrorCertificate square_error(int m) {
    if (m < 2 || m > 24) throw std::invalid_argument("square_error: m must lie in [2, 24]");
    NeuralNetwork net = build_square(m);
    double worst = 0.0;
    std::int64_t points = (std::int64_t{1} << m) + 1;
    for (std::int64_t k = 0; k < points; ++k) {
        double x = std::ldexp(static_cast<double>(k), -m);
        double err = std::fabs(x * x - realize(net, {x})[0]);
        worst = std::max(worst, err);
    }
    ErrorCertificate cert;
    cert.claimed_bound = pow2(-2 * m);
    cert.measured_error = worst;
    std::ostringstream desc;
    desc << "dyadic grid k/2^" << m << ", k = 0.." << (points - 1) << " (nodes and interval midpoints)";
    cert.sample_description = desc.str();
    return cert;
}

// ---- scalar product -------------------------------------------------------

int scalar_mult_depth(double eps, double bound) {
    double c = std::max(1.0, bound);
    return std::max(2, ceil_half_log2(c * c / eps));
}

namespace {

// Layer patterns of one product block with internal depth m and scale cap C.
// Local layout: input (x, y); first layer the four half-sum/half-difference
// rectifications; then two four-channel branches, one per squared argument.
// Channel 3 of each branch is the running sum; it is seeded one layer after
// the branch state is created, which keeps the second layer at 8 weights per
// branch and the whole block at exactly 30m - 28 weights.
struct ScalarBlock {
    std::vector<WEntry> first;                               // 4 x 2
    std::vector<WEntry> second;                              // 8 x 4
    std::vector<std::pair<std::int64_t, double>> second_bias;
    struct Mid {
        std::vector<WEntry> entries;                         // 8 x 8
        std::vector<std::pair<std::int64_t, double>> bias;
    };
    std::vector<Mid> mids;                                   // layers 3..m
    std::vector<WEntry> last;                                // 1 x 8
};

ScalarBlock scalar_block(int m, double bound) {
    double cap = std::max(1.0, bound);
    double h = 1.0 / (2.0 * cap);
    ScalarBlock blk;

    blk.first = {{0, 0, h},  {0, 1, h},  {1, 0, -h}, {1, 1, -h},
                 {2, 0, h},  {2, 1, -h}, {3, 0, -h}, {3, 1, h}};

    for (std::int64_t b = 0; b < 2; ++b) {
        std::int64_t r0 = 4 * b, c0 = 2 * b;
        for (std::int64_t r = 0; r < 3; ++r) {
            blk.second.push_back({r0 + r, c0, 1.0});
            blk.second.push_back({r0 + r, c0 + 1, 1.0});
        }
        blk.second_bias.emplace_back(r0 + 1, -0.5);
        blk.second_bias.emplace_back(r0 + 2, -1.0);
    }

    for (int k = 2; k <= m - 1; ++k) {
        ScalarBlock::Mid mid;
        for (std::int64_t b = 0; b < 2; ++b) {
            std::int64_t base = 4 * b;
            for (std::int64_t r = 0; r < 3; ++r) {
                mid.entries.push_back({base + r, base + 0, 2.0});
                mid.entries.push_back({base + r, base + 1, -4.0});
                mid.entries.push_back({base + r, base + 2, 2.0});
            }
            mid.bias.emplace_back(base + 1, -0.5);
            mid.bias.emplace_back(base + 2, -1.0);
            if (k == 2) {
                // Seed the running sum: t - g(t)/4 folded over the state.
                mid.entries.push_back({base + 3, base + 0, 0.5});
                mid.entries.push_back({base + 3, base + 1, 1.0});
                mid.entries.push_back({base + 3, base + 2, -0.5});
                mid.entries.push_back({base + 3, base + 3, 1.0});
            } else {
                mid.entries.push_back({base + 3, base + 0, -pow2(3 - 2 * k)});
                mid.entries.push_back({base + 3, base + 1, pow2(4 - 2 * k)});
                mid.entries.push_back({base + 3, base + 2, -pow2(3 - 2 * k)});
                mid.entries.push_back({base + 3, base + 3, 1.0});
            }
        }
        blk.mids.push_back(std::move(mid));
    }

    double c2 = cap * cap;
    for (std::int64_t b = 0; b < 2; ++b) {
        std::int64_t base = 4 * b;
        double s = (b == 0) ? c2 : -c2;
        if (m == 2) {
            blk.last.push_back({0, base + 0, s * 0.5});
            blk.last.push_back({0, base + 1, s});
            blk.last.push_back({0, base + 2, s * -0.5});
            blk.last.push_back({0, base + 3, s});
        } else {
            blk.last.push_back({0, base + 0, s * -pow2(3 - 2 * m)});
            blk.last.push_back({0, base + 1, s * pow2(4 - 2 * m)});
            blk.last.push_back({0, base + 2, s * -pow2(3 - 2 * m)});
            blk.last.push_back({0, base + 3, s});
        }
    }
    return blk;
}

WeightList scalar_mult_wl(int m, double bound) {
    ScalarBlock blk = scalar_block(m, bound);
    WeightList wl;
    wl.layers.push_back(detail::affine_layer(4, 2, blk.first));
    wl.layers.push_back(detail::affine_layer(8, 4, blk.second, blk.second_bias));
    for (auto& mid : blk.mids) wl.layers.push_back(detail::affine_layer(8, 8, mid.entries, mid.bias));
    wl.layers.push_back(detail::affine_layer(1, 8, blk.last));
    return wl;
}

} // namespace

NeuralNetwork build_scalar_mult(double eps, double bound) {
    if (bound <= 0.0) throw std::invalid_argument("build_scalar_mult: bound must be positive");
    if (eps <= 0.0 || eps >= bound * bound)
        throw std::invalid_argument("build_scalar_mult: eps must lie in (0, bound^2)");
    return detail::to_network(scalar_mult_wl(scalar_mult_depth(eps, bound), bound));
}

ErrorCertificate verify_scalar_mult(double eps, double bound, int grid_points_per_axis) {
    NeuralNetwork net = build_scalar_mult(eps, bound);
    int g = std::max(2, grid_points_per_axis);
    double worst = 0.0;
    for (int i = 0; i < g; ++i) {
        double x = -bound + 2.0 * bound * i / (g - 1);
        for (int j = 0; j < g; ++j) {
            double y = -bound + 2.0 * bound * j / (g - 1);
            double err = std::fabs(x * y - realize(net, {x, y})[0]);
            worst = std::max(worst, err);
        }
    }
    ErrorCertificate cert;
    cert.claimed_bound = eps;
    cert.measured_error = worst;
    std::ostringstream desc;
    desc << "uniform " << g << "x" << g << " grid on [-" << bound << ", " << bound << "]^2";
    cert.sample_description = desc.str();
    return cert;
}

// ---- matrix product -------------------------------------------------------

int matrix_mult_depth(std::size_t d, std::size_t n, std::size_t l, double eps, double bound) {
    double cap = std::max(1.0, bound);
    double needed = static_cast<double>(n) * std::sqrt(static_cast<double>(d * l)) * cap * cap / eps;
    return std::max(2, ceil_half_log2(needed));
}

namespace {

// Product network over vect(A), vect(B): one scalar block per entry product
// a_ij * b_jk, the last layer summing each row-column family.
WeightList matmul_wl(std::size_t d, std::size_t n, std::size_t l, int m, double bound) {
    std::int64_t dd = static_cast<std::int64_t>(d);
    std::int64_t nn = static_cast<std::int64_t>(n);
    std::int64_t ll = static_cast<std::int64_t>(l);
    std::int64_t blocks = dd * ll * nn;
    std::int64_t in_width = nn * (dd + ll);
    ScalarBlock blk = scalar_block(m, bound);

    WeightList wl;

    std::vector<WEntry> first;
    first.reserve(static_cast<std::size_t>(8 * blocks));
    for (std::int64_t beta = 0; beta < blocks; ++beta) {
        std::int64_t j = beta % nn;
        std::int64_t ik = beta / nn;
        std::int64_t i = ik % dd;
        std::int64_t k = ik / dd;
        std::int64_t col_a = j * dd + i;
        std::int64_t col_b = dd * nn + k * nn + j;
        for (const WEntry& e : blk.first) {
            std::int64_t col = (e.c == 0) ? col_a : col_b;
            first.push_back({4 * beta + e.r, col, e.v});
        }
    }
    wl.layers.push_back(detail::affine_layer(4 * blocks, in_width, std::move(first)));

    auto repeated = [&](std::int64_t rows_per_block, std::int64_t cols_per_block,
                        const std::vector<WEntry>& pattern,
                        const std::vector<std::pair<std::int64_t, double>>& bias_pattern) {
        WLayer layer;
        layer.rows = rows_per_block * blocks;
        layer.cols = cols_per_block * blocks;
        BlockRepeat br;
        br.row_stride = rows_per_block;
        br.col_stride = cols_per_block;
        br.count = blocks;
        br.pattern = pattern;
        br.bias_pattern = bias_pattern;
        layer.repeats.push_back(std::move(br));
        return layer;
    };

    wl.layers.push_back(repeated(8, 4, blk.second, blk.second_bias));
    for (const auto& mid : blk.mids) wl.layers.push_back(repeated(8, 8, mid.entries, mid.bias));

    std::vector<WEntry> last;
    last.reserve(static_cast<std::size_t>(8 * blocks));
    for (std::int64_t beta = 0; beta < blocks; ++beta) {
        std::int64_t ik = beta / nn;
        for (const WEntry& e : blk.last) last.push_back({ik, 8 * beta + e.c, e.v});
    }
    wl.layers.push_back(detail::affine_layer(dd * ll, 8 * blocks, std::move(last)));
    return wl;
}

} // namespace

NeuralNetwork build_matrix_mult(std::size_t d, std::size_t n, std::size_t l, double eps, double bound) {
    if (d == 0 || n == 0 || l == 0) throw std::invalid_argument("build_matrix_mult: dimensions must be positive");
    if (eps <= 0.0 || bound <= 0.0)
        throw std::invalid_argument("build_matrix_mult: eps and bound must be positive");
    return detail::to_network(matmul_wl(d, n, l, matrix_mult_depth(d, n, l, eps, bound), bound));
}

namespace {

DenseMatrix random_matrix_with_norm_cap(Rng& rng, std::size_t rows, std::size_t cols, double cap) {
    // Rejection sampling against the spectral norm; the proposal is scaled
    // so acceptance stays high.
    while (true) {
        DenseMatrix a(rows, cols);
        double s = cap / std::sqrt(static_cast<double>(std::max(rows, cols)));
        for (double& x : a.data) x = rng.uniform(-s, s);
        if (spectral_norm(a) <= cap) return a;
    }
}

} // namespace

ErrorCertificate verify_matrix_mult(std::size_t d, std::size_t n, std::size_t l, double eps, double bound,
                                    int samples, std::uint64_t seed) {
    NeuralNetwork net = build_matrix_mult(d, n, l, eps, bound);
    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        DenseMatrix a = random_matrix_with_norm_cap(rng, d, n, bound);
        DenseMatrix b = random_matrix_with_norm_cap(rng, n, l, bound);
        DenseVector in = vectorize(a);
        DenseVector vb = vectorize(b);
        in.insert(in.end(), vb.begin(), vb.end());
        DenseMatrix approx = matricize(realize(net, in), d, l);
        worst = std::max(worst, spectral_norm(subtract(matmul(a, b), approx)));
    }
    ErrorCertificate cert;
    cert.claimed_bound = eps;
    cert.measured_error = worst;
    std::ostringstream desc;
    desc << samples << " factor pairs rejection-sampled with spectral norm <= " << bound;
    cert.sample_description = desc.str();
    cert.seed = seed;
    return cert;
}

// ---- Neumann partial sums and inversion -----------------------------------

InversionSchedule inversion_schedule(std::size_t d, double eps, double alpha, double delta) {
    if (d == 0) throw std::invalid_argument("inversion_schedule: dimension must be positive");
    if (eps <= 0.0 || eps >= 0.25) throw std::invalid_argument("inversion_schedule: eps must lie in (0, 1/4)");
    if (alpha <= 0.0) throw std::invalid_argument("inversion_schedule: alpha must be positive");
    if (delta < 0.0 || delta >= 1.0) throw std::invalid_argument("inversion_schedule: delta must lie in [0, 1)");
    if (delta > 1.0 - 1e-12)
        throw std::invalid_argument("inversion_schedule: delta too close to 1 for a finite schedule");

    InversionSchedule sched;
    sched.eps = eps;
    sched.alpha = alpha;
    sched.delta = delta;
    sched.dim = d;

    double eps_scaled = eps / alpha;
    std::int64_t stages = 1;
    if (delta > 0.0) {
        double ratio = std::log2((1.0 - delta) * eps_scaled) / std::log2(delta);
        double arg = std::max(ratio, 2.0);
        stages = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::log2(arg) - 1e-12)));
    }
    if (stages > 9)
        throw std::runtime_error("inversion_schedule: conditioning needs " + std::to_string(stages) +
                                 " doubling stages; the power normalization would leave double range");
    sched.big_n = stages;

    double dd = static_cast<double>(d) * static_cast<double>(d);
    std::int64_t tail = std::max(0, floor_half_log2(dd / eps_scaled));
    sched.little_n = (std::int64_t{1} << (stages - 1)) + 1 + tail;
    return sched;
}

namespace {

WeightList phi_block(std::size_t d, int m) {
    std::int64_t dd = static_cast<std::int64_t>(d) * static_cast<std::int64_t>(d);
    WeightList pi = matmul_wl(d, d, d, m, 1.0);

    std::vector<WEntry> halve;
    for (std::int64_t p = 0; p < dd; ++p) {
        halve.push_back({p, p, 0.5});
        halve.push_back({dd + p, p, 0.5});
    }
    WeightList top = detail::bullet(pi, detail::single_layer(detail::affine_layer(2 * dd, dd, std::move(halve))));

    std::vector<WEntry> sc;
    std::vector<std::pair<std::int64_t, double>> sc_bias;
    for (std::int64_t p = 0; p < dd; ++p) sc.push_back({p, p, 0.375});
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(d); ++j)
        sc_bias.emplace_back(j * static_cast<std::int64_t>(d) + j, 0.375);
    WeightList bot =
        detail::bullet(detail::single_layer(detail::affine_layer(dd, dd, std::move(sc), std::move(sc_bias))),
                       detail::identity_chain(dd, m + 1));

    return detail::stack_shared({top, bot});
}

WeightList psi_block(std::size_t d, int m, int k) {
    std::int64_t dd = static_cast<std::int64_t>(d) * static_cast<std::int64_t>(d);
    double shift = std::ldexp(1.0, -(1 << k));

    std::vector<WEntry> sel1;
    for (std::int64_t p = 0; p < dd; ++p) {
        sel1.push_back({p, p, 1.0});
        sel1.push_back({dd + p, p, 1.0});
    }
    WeightList br1 = detail::bullet(matmul_wl(d, d, d, m, 1.0),
                                    detail::single_layer(detail::affine_layer(2 * dd, 2 * dd, std::move(sel1))));

    std::vector<WEntry> sel2;
    std::vector<std::pair<std::int64_t, double>> sel2_bias;
    for (std::int64_t p = 0; p < dd; ++p) {
        sel2.push_back({p, p, 1.0});
        sel2.push_back({dd + p, dd + p, 1.0});
    }
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(d); ++j)
        sel2_bias.emplace_back(j * static_cast<std::int64_t>(d) + j, shift);
    WeightList br2 =
        detail::bullet(matmul_wl(d, d, d, m, 1.0),
                       detail::single_layer(detail::affine_layer(2 * dd, 2 * dd, std::move(sel2), std::move(sel2_bias))));

    return detail::stack_shared({br1, br2});
}

WeightList psi_tilde_block(std::size_t d, int m, int stages) {
    std::int64_t dd = static_cast<std::int64_t>(d) * static_cast<std::int64_t>(d);
    double shift = std::ldexp(1.0, -(1 << (stages - 1)));
    double unscale = std::ldexp(1.0, (1 << stages) + 1) / 3.0;

    std::vector<WEntry> sel;
    std::vector<std::pair<std::int64_t, double>> sel_bias;
    for (std::int64_t p = 0; p < 2 * dd; ++p) sel.push_back({p, p, 1.0});
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(d); ++j)
        sel_bias.emplace_back(j * static_cast<std::int64_t>(d) + j, shift);
    WeightList core =
        detail::bullet(matmul_wl(d, d, d, m, 1.0),
                       detail::single_layer(detail::affine_layer(2 * dd, 2 * dd, std::move(sel), std::move(sel_bias))));

    std::vector<WEntry> out_scale;
    for (std::int64_t p = 0; p < dd; ++p) out_scale.push_back({p, p, unscale});
    return detail::bullet(detail::single_layer(detail::affine_layer(dd, dd, std::move(out_scale))), core);
}

// Partial-sum network for 2^stages terms with product depth n_param.
WeightList sigma_wl(std::size_t d, int stages, std::int64_t n_param) {
    std::int64_t dd = static_cast<std::int64_t>(d) * static_cast<std::int64_t>(d);
    if (stages == 1) {
        std::vector<WEntry> eye;
        std::vector<std::pair<std::int64_t, double>> ones;
        for (std::int64_t p = 0; p < dd; ++p) eye.push_back({p, p, 1.0});
        for (std::int64_t j = 0; j < static_cast<std::int64_t>(d); ++j)
            ones.emplace_back(j * static_cast<std::int64_t>(d) + j, 1.0);
        return detail::single_layer(detail::affine_layer(dd, dd, std::move(eye), std::move(ones)));
    }
    int m_phi = static_cast<int>(n_param);
    WeightList chain = phi_block(d, m_phi);
    for (int k = 1; k <= stages - 2; ++k) chain = detail::sparse_concat(psi_block(d, m_phi + 1, k), chain);
    return detail::sparse_concat(psi_tilde_block(d, m_phi, stages), chain);
}

WeightList upsilon_wl(const InversionSchedule& sched) {
    std::size_t d = sched.dim;
    std::int64_t dd = static_cast<std::int64_t>(d) * static_cast<std::int64_t>(d);
    WeightList sigma = sigma_wl(d, static_cast<int>(sched.big_n), sched.little_n);

    std::vector<WEntry> pre;
    std::vector<std::pair<std::int64_t, double>> pre_bias;
    for (std::int64_t p = 0; p < dd; ++p) pre.push_back({p, p, -sched.alpha});
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(d); ++j)
        pre_bias.emplace_back(j * static_cast<std::int64_t>(d) + j, 1.0);
    WeightList with_input =
        detail::bullet(sigma, detail::single_layer(detail::affine_layer(dd, dd, std::move(pre), std::move(pre_bias))));

    std::vector<WEntry> post;
    for (std::int64_t p = 0; p < dd; ++p) post.push_back({p, p, sched.alpha});
    return detail::bullet(detail::single_layer(detail::affine_layer(dd, dd, std::move(post))), with_input);
}

} // namespace

detail::WeightList neumann_power_chain(std::size_t d, int stages, double eps) {
    if (stages < 1) throw std::invalid_argument("neumann_power_chain: stages must be at least 1");
    if (eps <= 0.0 || eps >= 0.25) throw std::invalid_argument("neumann_power_chain: eps must lie in (0, 1/4)");
    double dd = static_cast<double>(d) * static_cast<double>(d);
    int m_phi = std::max(2, ceil_half_log2(dd / eps));
    WeightList chain = phi_block(d, m_phi);
    for (int k = 1; k <= stages - 1; ++k) chain = detail::sparse_concat(psi_block(d, m_phi + 1, k), chain);
    return chain;
}

NeuralNetwork build_neumann_partial(std::size_t d, int stages, double eps) {
    if (stages < 1) throw std::invalid_argument("build_neumann_partial: stages must be at least 1");
    if (stages > 9) throw std::invalid_argument("build_neumann_partial: stage count exceeds double range");
    if (eps <= 0.0 || eps >= 0.25)
        throw std::invalid_argument("build_neumann_partial: eps must lie in (0, 1/4)");
    double dd = static_cast<double>(d) * static_cast<double>(d);
    std::int64_t n_param = (std::int64_t{1} << (stages - 1)) + 1 + std::max(0, floor_half_log2(dd / eps));
    return detail::to_network(sigma_wl(d, stages, n_param));
}

InversionPlan::InversionPlan(std::size_t d, double eps, double alpha, double delta)
    : sched_(inversion_schedule(d, eps, alpha, delta)), wl_(upsilon_wl(sched_)) {}

DenseMatrix InversionPlan::evaluate(const DenseMatrix& b) const {
    if (b.rows != sched_.dim || b.cols != sched_.dim)
        throw std::invalid_argument("InversionPlan::evaluate: matrix dimension mismatch");
    return matricize(detail::wl_realize(wl_, vectorize(b)), sched_.dim, sched_.dim);
}

std::int64_t InversionPlan::weight_bound() const {
    std::int64_t d = static_cast<std::int64_t>(sched_.dim);
    std::int64_t d2 = d * d, d3 = d2 * d;
    std::int64_t n = sched_.little_n, big = sched_.big_n;
    return n * (60 * d3 * (big - 1) + 2 * d2) + d3 * (12 * big - 2) + 4 * d2 + 2 * d;
}

std::int64_t InversionPlan::layer_bound() const { return sched_.big_n * (sched_.little_n + 2) - 2; }

NeuralNetwork InversionPlan::materialize(std::size_t max_dense_entries) const {
    return detail::to_network(wl_, max_dense_entries);
}

NeuralNetwork build_inversion(std::size_t d, double eps, double alpha, double delta) {
    return InversionPlan(d, eps, alpha, delta).materialize();
}

ErrorCertificate verify_inversion(std::size_t d, double eps, double alpha, double delta, int samples,
                                  std::uint64_t seed) {
    InversionPlan plan(d, eps, alpha, delta);
    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        // Random symmetric member of the admissible set: eigenvalues in
        // [(1-delta)/alpha, (1+delta)/alpha] under a random orthogonal frame.
        DenseMatrix q = DenseMatrix::identity(d);
        for (std::size_t t = 0; t < d; ++t) {
            DenseVector v(d);
            for (double& x : v) x = rng.uniform(-1.0, 1.0);
            double nv = norm2(v);
            if (nv < 1e-8) continue;
            for (double& x : v) x /= nv;
            DenseMatrix h = DenseMatrix::identity(d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) h(i, j) -= 2.0 * v[i] * v[j];
            q = matmul(h, q);
        }
        DenseVector lambda(d);
        for (double& x : lambda) x = rng.uniform((1.0 - delta) / alpha, (1.0 + delta) / alpha);
        DenseMatrix lam(d, d);
        for (std::size_t i = 0; i < d; ++i) lam(i, i) = lambda[i];
        DenseMatrix b = matmul(matmul(q, lam), transpose(q));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) b(j, i) = b(i, j);

        DenseMatrix diff = subtract(invert(b), plan.evaluate(b));
        worst = std::max(worst, spectral_norm(diff));
    }
    ErrorCertificate cert;
    cert.claimed_bound = eps;
    cert.measured_error = worst;
    std::ostringstream desc;
    desc << samples << " random symmetric matrices with spectrum in [" << (1.0 - delta) / alpha << ", "
         << (1.0 + delta) / alpha << "]";
    cert.sample_description = desc.str();
    cert.seed = seed;
    return cert;
}

ErrorCertificate verify_neumann_partial(std::size_t d, int stages, double eps, int samples, std::uint64_t seed) {
    NeuralNetwork net = build_neumann_partial(d, stages, eps);
    Rng rng(seed);
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        DenseMatrix a = random_matrix_with_norm_cap(rng, d, d, 0.95);
        // Partial sum by repeated doubling: S_{t+1} = S_t + A^(2^t) S_t.
        DenseMatrix sum = add(DenseMatrix::identity(d), a);
        DenseMatrix power = a;
        for (int t = 1; t < stages; ++t) {
            power = matmul(power, power);
            sum = add(sum, matmul(power, sum));
        }
        DenseMatrix approx = matricize(realize(net, vectorize(a)), d, d);
        worst = std::max(worst, spectral_norm(subtract(sum, approx)));
    }
    ErrorCertificate cert;
    cert.claimed_bound = eps;
    cert.measured_error = worst;
    std::ostringstream desc;
    desc << samples << " random matrices with spectral norm <= 0.95, partial sums of 2^" << stages << " terms";
    cert.sample_description = desc.str();
    cert.seed = seed;
    return cert;
}

} // namespace nncalc
