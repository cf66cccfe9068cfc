#include "pathcross/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "pathcross/rng.hpp"

namespace pathcross {

namespace {

std::mutex fftw_plan_mutex; // FFTW plan creation is not thread-safe

std::vector<double> cumulative_path_times(std::size_t n, double horizon) {
    std::vector<double> times(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        times[i] = horizon * static_cast<double>(i) / static_cast<double>(n);
    return times;
}

SampledPath path_from_increments(const std::vector<double>& inc, double horizon,
                                 PathMode mode) {
    std::vector<double> values(inc.size() + 1);
    values[0] = 0.0;
    for (std::size_t i = 0; i < inc.size(); ++i) values[i + 1] = values[i] + inc[i];
    return SampledPath(cumulative_path_times(inc.size(), horizon), std::move(values), mode);
}

} // namespace

std::string to_string(ProcessKind kind) {
    switch (kind) {
    case ProcessKind::Bm: return "bm";
    case ProcessKind::Fbm: return "fbm";
    case ProcessKind::Stable: return "stable";
    case ProcessKind::Rosenblatt: return "rosenblatt";
    }
    return "?";
}

ProcessKind process_kind_from_string(const std::string& name) {
    if (name == "bm") return ProcessKind::Bm;
    if (name == "fbm") return ProcessKind::Fbm;
    if (name == "stable") return ProcessKind::Stable;
    if (name == "rosenblatt") return ProcessKind::Rosenblatt;
    throw parse_error("unknown process '" + name + "' (bm|fbm|stable|rosenblatt)");
}

double ProcessSpec::beta() const {
    switch (kind) {
    case ProcessKind::Bm: return 0.5;
    case ProcessKind::Fbm: return hurst;
    case ProcessKind::Stable: return 1.0 / alpha;
    case ProcessKind::Rosenblatt: return hurst;
    }
    return 0.5;
}

void ProcessSpec::validate() const {
    if (n_samples < 1) throw domain_error("process needs n_samples >= 1");
    if (!(horizon > 0.0)) throw domain_error("process needs horizon > 0");
    switch (kind) {
    case ProcessKind::Bm:
        break;
    case ProcessKind::Fbm:
        if (!(hurst > 0.0 && hurst < 1.0)) throw domain_error("fBm needs H in (0,1)");
        break;
    case ProcessKind::Stable:
        if (!(alpha > 1.0 && alpha <= 2.0))
            throw domain_error("stable process needs alpha in (1,2]");
        break;
    case ProcessKind::Rosenblatt:
        if (!(hurst > 0.5 && hurst < 1.0))
            throw domain_error("Rosenblatt needs H in (1/2,1)");
        if (approx_grid < 8) throw domain_error("Rosenblatt needs approx_grid >= 8");
        break;
    }
}

double FbmEngine::exact_autocovariance(double hurst, double dt, std::size_t lag) {
    double h2 = 2.0 * hurst;
    double k = static_cast<double>(lag);
    double scale = std::pow(dt, h2);
    return 0.5 * scale *
           (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(std::abs(k - 1.0), h2));
}

FbmEngine::FbmEngine(double hurst, std::size_t n_increments, double dt)
    : hurst_(hurst), dt_(dt), n_(n_increments) {
    if (!(hurst > 0.0 && hurst < 1.0)) throw domain_error("fBm needs H in (0,1)");
    if (n_ == 0) throw domain_error("fBm needs at least one increment");

    m_ = 1;
    while (m_ < n_) m_ <<= 1;
    const std::size_t M = 2 * m_;

    std::vector<double> circ(M);
    for (std::size_t j = 0; j <= m_; ++j) circ[j] = exact_autocovariance(hurst_, dt_, j);
    for (std::size_t j = 1; j < m_; ++j) circ[M - j] = circ[j];

    std::vector<std::complex<double>> in(M), out(M);
    for (std::size_t j = 0; j < M; ++j) in[j] = circ[j];
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(M),
                                       reinterpret_cast<fftw_complex*>(in.data()),
                                       reinterpret_cast<fftw_complex*>(out.data()),
                                       FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_execute(p);
        fftw_destroy_plan(p);
    }

    double max_eig = 0.0, min_eig = 0.0;
    for (const auto& z : out) {
        max_eig = std::max(max_eig, z.real());
        min_eig = std::min(min_eig, z.real());
    }
    if (min_eig < -1e-9 * std::max(1.0, max_eig)) {
        // embedding not nonnegative definite at this (H, n); dense fallback
        if (n_ > 2048)
            throw capacity_error("circulant embedding failed and n is too large for "
                                 "the dense covariance fallback (limit 2048)");
        use_cholesky_ = true;
        std::vector<double> cov(n_ * n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                cov[i * n_ + j] = exact_autocovariance(hurst_, dt_, i - j);
        chol_.assign(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double s = cov[i * n_ + j];
                for (std::size_t k = 0; k < j; ++k) s -= chol_[i * n_ + k] * chol_[j * n_ + k];
                if (i == j) {
                    if (s <= 0.0) throw capacity_error("covariance not positive definite");
                    chol_[i * n_ + i] = std::sqrt(s);
                } else {
                    chol_[i * n_ + j] = s / chol_[j * n_ + j];
                }
            }
        }
        return;
    }

    sqrt_eig_.resize(M);
    for (std::size_t j = 0; j < M; ++j) sqrt_eig_[j] = std::sqrt(std::max(out[j].real(), 0.0));

    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        plan_ = fftw_plan_dft_1d(static_cast<int>(M),
                                 reinterpret_cast<fftw_complex*>(in.data()),
                                 reinterpret_cast<fftw_complex*>(out.data()),
                                 FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
}

FbmEngine::~FbmEngine() {
    if (plan_) {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    }
}

std::vector<double> FbmEngine::autocovariance() const {
    std::vector<double> out(m_ + 1);
    for (std::size_t j = 0; j <= m_; ++j) out[j] = exact_autocovariance(hurst_, dt_, j);
    return out;
}

std::vector<double> FbmEngine::increments(std::uint64_t seed, std::uint64_t path_index) const {
    auto rng = make_stream(seed, path_index);
    std::normal_distribution<double> normal(0.0, 1.0);

    if (use_cholesky_) {
        std::vector<double> z(n_), inc(n_, 0.0);
        for (auto& v : z) v = normal(rng);
        for (std::size_t i = 0; i < n_; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j <= i; ++j) s += chol_[i * n_ + j] * z[j];
            inc[i] = s;
        }
        return inc;
    }

    const std::size_t M = 2 * m_;
    std::vector<std::complex<double>> z(M), y(M);
    z[0] = sqrt_eig_[0] * normal(rng);
    z[m_] = sqrt_eig_[m_] * normal(rng);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 1; k < m_; ++k) {
        double a = normal(rng), b = normal(rng);
        std::complex<double> xi(a * inv_sqrt2, b * inv_sqrt2);
        z[k] = sqrt_eig_[k] * xi;
        z[M - k] = std::conj(z[k]);
    }
    fftw_execute_dft(static_cast<fftw_plan>(plan_),
                     reinterpret_cast<fftw_complex*>(z.data()),
                     reinterpret_cast<fftw_complex*>(y.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(M));
    std::vector<double> inc(n_);
    for (std::size_t i = 0; i < n_; ++i) inc[i] = y[i].real() * scale;
    return inc;
}

namespace {

std::vector<double> gaussian_increments(std::size_t n, double sd, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, sd);
    std::vector<double> inc(n);
    for (auto& v : inc) v = normal(rng);
    return inc;
}

// symmetric strictly alpha-stable increment, unit scale
double stable_draw(double alpha, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(-std::numbers::pi / 2.0,
                                                std::numbers::pi / 2.0);
    std::exponential_distribution<double> expo(1.0);
    double u = unif(rng);
    double w = expo(rng);
    if (alpha == 2.0) return 2.0 * std::sin(u) * std::sqrt(w);
    double s = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
    double tail = std::pow(std::cos(u - alpha * u) / w, (1.0 - alpha) / alpha);
    return s * tail;
}

SampledPath simulate_rosenblatt(const ProcessSpec& spec, std::uint64_t path_index) {
    // Discretized double Wiener integral with the off-diagonal kernel
    // (s-u1)_+^{-(2-H)/2} (s-u2)_+^{-(2-H)/2}; approximate, demo quality.
    const double T = spec.horizon;
    const double H = spec.hurst;
    const double expo = -(2.0 - H) / 2.0;
    const std::size_t M = static_cast<std::size_t>(spec.approx_grid);
    const double u_lo = -T, u_hi = T;
    const double du = (u_hi - u_lo) / static_cast<double>(M);

    auto rng = make_stream(spec.seed, path_index);
    std::normal_distribution<double> normal(0.0, std::sqrt(du));
    std::vector<double> xi(M), u(M);
    for (std::size_t i = 0; i < M; ++i) {
        u[i] = u_lo + (static_cast<double>(i) + 0.5) * du;
        xi[i] = normal(rng);
    }

    auto kernel = [&](double s, double ui) {
        double d = s - ui;
        return d > 0.0 ? std::pow(d, expo) : 0.0;
    };

    // variance of the discrete quadratic form at horizon, for normalization
    const std::size_t q_nodes = 256;
    std::vector<double> a_final(M * M, 0.0);
    for (std::size_t q = 0; q < q_nodes; ++q) {
        double s = T * (static_cast<double>(q) + 0.5) / static_cast<double>(q_nodes);
        double w = T / static_cast<double>(q_nodes);
        for (std::size_t i = 0; i < M; ++i) {
            double fi = kernel(s, u[i]);
            if (fi == 0.0) continue;
            for (std::size_t j = 0; j < i; ++j) {
                double fj = kernel(s, u[j]);
                a_final[i * M + j] += w * fi * fj;
            }
        }
    }
    double var = 0.0;
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            double a = a_final[i * M + j];
            var += 4.0 * a * a * du * du;
        }
    const double k_norm = std::pow(T, H) / std::sqrt(std::max(var, 1e-300));

    const std::size_t n = spec.n_samples;
    std::vector<double> values(n + 1, 0.0);
    double acc = 0.0;
    const double dt = T / static_cast<double>(n);
    for (std::size_t step = 0; step < n; ++step) {
        double s = (static_cast<double>(step) + 0.5) * dt;
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < M; ++i) {
            double f = kernel(s, u[i]);
            double fx = f * xi[i];
            s1 += fx;
            s2 += fx * fx;
        }
        acc += dt * (s1 * s1 - s2);
        values[step + 1] = k_norm * acc;
    }
    return SampledPath(cumulative_path_times(n, T), std::move(values),
                       PathMode::PiecewiseLinear);
}

} // namespace

SampledPath simulate(const ProcessSpec& spec, std::uint64_t path_index) {
    spec.validate();
    const double dt = spec.horizon / static_cast<double>(spec.n_samples);
    switch (spec.kind) {
    case ProcessKind::Bm: {
        auto rng = make_stream(spec.seed, path_index);
        auto inc = gaussian_increments(spec.n_samples, std::sqrt(dt), rng);
        return path_from_increments(inc, spec.horizon, PathMode::PiecewiseLinear);
    }
    case ProcessKind::Fbm: {
        if (spec.hurst == 0.5) {
            auto rng = make_stream(spec.seed, path_index);
            auto inc = gaussian_increments(spec.n_samples, std::sqrt(dt), rng);
            return path_from_increments(inc, spec.horizon, PathMode::PiecewiseLinear);
        }
        FbmEngine engine(spec.hurst, spec.n_samples, dt);
        auto inc = engine.increments(spec.seed, path_index);
        return path_from_increments(inc, spec.horizon, PathMode::PiecewiseLinear);
    }
    case ProcessKind::Stable: {
        auto rng = make_stream(spec.seed, path_index);
        const double scale = std::pow(dt, 1.0 / spec.alpha);
        std::vector<double> inc(spec.n_samples);
        for (auto& v : inc) v = scale * stable_draw(spec.alpha, rng);
        return path_from_increments(inc, spec.horizon, PathMode::StepCadlag);
    }
    case ProcessKind::Rosenblatt:
        return simulate_rosenblatt(spec, path_index);
    }
    throw domain_error("unreachable process kind");
}

} // namespace pathcross
