#include "decosim/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "decosim/measure.hpp"

namespace decosim::oracle {

namespace {

constexpr double k_series_tail = 1.0e-14;
constexpr double k_error_floor = 1.0e-13;
constexpr double k_enumerate_limit = 1.0e7;

// 2x2 evolution under H = a sigma_x + b sigma_z for time t, applied to rho
// (computational basis): U = cos(w t) I - i sin(w t) (a sigma_x + b sigma_z)/w.
void evolve_sector(double a, double b, double t, const Complex rho[2][2], Complex out[2][2]) {
    const double w = std::hypot(a, b);
    Complex u[2][2];
    if (w == 0.0) {
        u[0][0] = u[1][1] = 1.0;
        u[0][1] = u[1][0] = 0.0;
    } else {
        const double c = std::cos(w * t);
        const double s = std::sin(w * t) / w;
        u[0][0] = Complex{c, -s * b};
        u[1][1] = Complex{c, s * b};
        u[0][1] = Complex{0.0, -s * a};
        u[1][0] = Complex{0.0, -s * a};
    }
    Complex tmp[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            tmp[i][j] = u[i][0] * rho[0][j] + u[i][1] * rho[1][j];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out[i][j] = tmp[i][0] * std::conj(u[j][0]) + tmp[i][1] * std::conj(u[j][1]);
}

struct Accumulator {
    // Pairwise block reduction keeps the sum independent of accumulation
    // chunking to ~1e-14.
    std::vector<std::array<Complex, 4>> blocks;
    std::array<Complex, 4> current{};
    long in_current = 0;
    static constexpr long k_block = 4096;

    void add(const Complex m[2][2], double weight) {
        current[0] += weight * m[0][0];
        current[1] += weight * m[0][1];
        current[2] += weight * m[1][0];
        current[3] += weight * m[1][1];
        if (++in_current == k_block) flush();
    }

    void flush() {
        if (in_current > 0) {
            blocks.push_back(current);
            current = {};
            in_current = 0;
        }
    }

    std::array<Complex, 4> reduce() {
        flush();
        std::vector<std::array<Complex, 4>> level = blocks;
        if (level.empty()) return {};
        while (level.size() > 1) {
            std::vector<std::array<Complex, 4>> next;
            next.reserve((level.size() + 1) / 2);
            for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
                std::array<Complex, 4> merged;
                for (int k = 0; k < 4; ++k) merged[k] = level[i][k] + level[i + 1][k];
                next.push_back(merged);
            }
            if (level.size() % 2 == 1) next.push_back(level.back());
            level.swap(next);
        }
        return level.front();
    }
};

// Portable uniform in [0, 1) from the top 53 bits of the generator output.
double canonical_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Inverse-CDF draw from P(n) = (1 - q) q^n.
long geometric_draw(double log_q, std::mt19937_64& rng) {
    const double u = canonical_uniform(rng);
    if (u <= 0.0) return 0;
    const double r = std::log1p(-u) / log_q;
    const long n = static_cast<long>(std::ceil(r)) - 1;
    return std::max(0L, n);
}

} // namespace

const char* to_string(SamplerMode m) {
    return m == SamplerMode::enumerate_sectors ? "enumerate" : "monte_carlo";
}

SamplerMode sampler_mode_from_string(const char* s) {
    if (std::strcmp(s, "enumerate") == 0) return SamplerMode::enumerate_sectors;
    if (std::strcmp(s, "monte_carlo") == 0) return SamplerMode::monte_carlo;
    throw std::domain_error("oracle mode must be 'enumerate' or 'monte_carlo'");
}

Complex bath_factor_series(double omega, double g_prime, double beta, int chi_diff, double t,
                           long n_max) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::domain_error("bath_factor_series: beta must be positive");
    if (!(omega > 0.0)) throw std::domain_error("bath_factor_series: omega must be positive");
    if (!std::isfinite(t)) throw std::domain_error("bath_factor_series: time must be finite");

    const double bw = beta * omega;
    const long needed = static_cast<long>(std::ceil(-std::log(k_series_tail) / bw)) + 1;
    n_max = std::max(n_max, needed);

    const double phi = g_prime * static_cast<double>(chi_diff) * t;
    const double weight0 = -std::expm1(-bw);
    std::complex<long double> acc{0.0L, 0.0L};
    for (long n = 0; n <= n_max; ++n) {
        const double w = weight0 * std::exp(-bw * static_cast<double>(n));
        const Complex term = std::polar(w, phi * static_cast<double>(n));
        acc += std::complex<long double>(term.real(), term.imag());
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

ExactDensityResult exact_reduced_density(const prop::Context& ctx,
                                         const qubit::DensityMatrix2& rho0, double t,
                                         const SectorSampler& sampler) {
    const auto& modes = ctx.bath_spec.modes;
    const double beta = ctx.bath_spec.beta;
    const std::size_t num_modes = modes.size();

    // Work in the eigenbasis throughout: the sector Hamiltonian
    // H = -(b_x/2) sigma_x + (G - b_z/2) sigma_z is rotated once per sector.
    const Eigen::Matrix2cd v = ctx.eig.basis_matrix();
    const Eigen::Matrix2cd rho_c = v * rho0.matrix() * v.adjoint();
    const double a = -0.5 * ctx.qubit_params.b_x;
    const double b0 = -0.5 * ctx.qubit_params.b_z;

    const auto evolve_in_eigenbasis = [&](double g_total, Complex out[2][2]) {
        const Complex rho_in[2][2] = {{rho_c(0, 0), rho_c(0, 1)}, {rho_c(1, 0), rho_c(1, 1)}};
        Complex evolved[2][2];
        evolve_sector(a, b0 + g_total, t, rho_in, evolved);
        Eigen::Matrix2cd m;
        m << evolved[0][0], evolved[0][1], evolved[1][0], evolved[1][1];
        const Eigen::Matrix2cd back = v.adjoint() * m * v;
        out[0][0] = back(0, 0);
        out[0][1] = back(0, 1);
        out[1][0] = back(1, 0);
        out[1][1] = back(1, 1);
    };

    ExactDensityResult result;

    if (sampler.mode == SamplerMode::enumerate_sectors) {
        if (sampler.n_max < 0) throw std::domain_error("exact_reduced_density: n_max must be >= 0");
        const double configs =
            std::pow(static_cast<double>(sampler.n_max) + 1.0, static_cast<double>(num_modes));
        if (configs > k_enumerate_limit)
            throw std::domain_error(
                "exact_reduced_density: (n_max+1)^modes = " + std::to_string(configs) +
                " exceeds the enumeration limit of 1e7; use monte_carlo");

        std::vector<long> occ(num_modes, 0);
        Accumulator acc;
        while (true) {
            double weight = 1.0;
            double g_total = 0.0;
            for (std::size_t j = 0; j < num_modes; ++j) {
                const double bw = beta * modes[j].omega;
                weight *= -std::expm1(-bw) * std::exp(-bw * static_cast<double>(occ[j]));
                g_total += modes[j].g_prime * static_cast<double>(occ[j]);
            }
            Complex evolved[2][2];
            evolve_in_eigenbasis(g_total, evolved);
            acc.add(evolved, weight);

            std::size_t j = 0;
            for (; j < num_modes; ++j) {
                if (occ[j] < sampler.n_max) {
                    ++occ[j];
                    break;
                }
                occ[j] = 0;
            }
            if (j == num_modes) break;
        }
        const auto mean = acc.reduce();
        result.rho.rho00 = mean[0].real();
        result.rho.rho11 = mean[3].real();
        result.rho.rho10 = 0.5 * (mean[2] + std::conj(mean[1]));
        return result;
    }

    if (sampler.samples < 1000)
        throw std::domain_error("exact_reduced_density: monte_carlo requires samples >= 1e3");

    std::vector<double> log_q(num_modes);
    for (std::size_t j = 0; j < num_modes; ++j) log_q[j] = -beta * modes[j].omega;

    std::mt19937_64 rng(sampler.seed);
    Accumulator acc;
    std::array<double, 4> sq_sum{};  // rho00, rho11, Re rho10, Im rho10
    const double inv_m = 1.0 / static_cast<double>(sampler.samples);
    for (long s = 0; s < sampler.samples; ++s) {
        double g_total = 0.0;
        for (std::size_t j = 0; j < num_modes; ++j)
            g_total += modes[j].g_prime * static_cast<double>(geometric_draw(log_q[j], rng));
        Complex evolved[2][2];
        evolve_in_eigenbasis(g_total, evolved);
        acc.add(evolved, inv_m);
        const Complex r10 = 0.5 * (evolved[1][0] + std::conj(evolved[0][1]));
        sq_sum[0] += evolved[0][0].real() * evolved[0][0].real();
        sq_sum[1] += evolved[1][1].real() * evolved[1][1].real();
        sq_sum[2] += r10.real() * r10.real();
        sq_sum[3] += r10.imag() * r10.imag();
    }
    const auto mean = acc.reduce();
    result.sampled = true;
    result.rho.rho00 = mean[0].real();
    result.rho.rho11 = mean[3].real();
    result.rho.rho10 = 0.5 * (mean[2] + std::conj(mean[1]));

    const auto standard_error = [&](double sum_sq, double mean_value) {
        const double var = std::max(0.0, sum_sq * inv_m - mean_value * mean_value);
        return std::sqrt(var * inv_m);
    };
    result.se_rho00 = standard_error(sq_sum[0], result.rho.rho00);
    result.se_rho11 = standard_error(sq_sum[1], result.rho.rho11);
    result.se_rho10_re = standard_error(sq_sum[2], result.rho.rho10.real());
    result.se_rho10_im = standard_error(sq_sum[3], result.rho.rho10.imag());
    return result;
}

OrderFit trotter_order_fit(const prop::Context& ctx, const qubit::DensityMatrix2& rho0,
                           std::span<const double> t_values, const SectorSampler& sampler) {
    if (t_values.size() < 4)
        throw std::domain_error("trotter_order_fit: need at least 4 time values");
    const auto [mn, mx] = std::minmax_element(t_values.begin(), t_values.end());
    if (!(*mn > 0.0) || *mx / *mn < 99.0)
        throw std::domain_error("trotter_order_fit: time grid must span at least two decades");

    std::vector<double> log_t;
    std::vector<double> log_e;
    for (const double t : t_values) {
        const qubit::DensityMatrix2 split = prop::reduced_density(ctx, rho0, t);
        const qubit::DensityMatrix2 exact = exact_reduced_density(ctx, rho0, t, sampler).rho;
        const double err = measure::lambda_norm(measure::deviation(split, exact));
        if (err > k_error_floor) {
            log_t.push_back(std::log(t));
            log_e.push_back(std::log(err));
        }
    }

    OrderFit fit;
    fit.points_used = static_cast<int>(log_t.size());
    if (fit.points_used < 4) return fit;

    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
        mean_x += log_t[i];
        mean_y += log_e[i];
    }
    mean_x /= static_cast<double>(log_t.size());
    mean_y /= static_cast<double>(log_t.size());
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
        sxx += (log_t[i] - mean_x) * (log_t[i] - mean_x);
        sxy += (log_t[i] - mean_x) * (log_e[i] - mean_y);
    }
    fit.conclusive = sxx > 0.0;
    fit.slope = fit.conclusive ? sxy / sxx : 0.0;
    return fit;
}

} // namespace decosim::oracle
