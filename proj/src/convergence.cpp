#include "pathcross/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "pathcross/crossings.hpp"
#include "pathcross/occupation.hpp"
#include "pathcross/parallel.hpp"
#include "pathcross/variation.hpp"

namespace pathcross {

double resolution_floor(const ProcessSpec& spec) {
    return kResolutionFactor *
           std::pow(spec.horizon / static_cast<double>(spec.n_samples), spec.beta());
}

namespace {

void check_c_grid(std::span<const double> c_grid) {
    if (c_grid.empty()) throw domain_error("empty c grid");
    for (std::size_t i = 0; i < c_grid.size(); ++i) {
        if (!(c_grid[i] > 0.0)) throw domain_error("c grid must be positive");
        if (i > 0 && !(c_grid[i] < c_grid[i - 1]))
            throw domain_error("c grid must be strictly decreasing");
    }
}

void enforce_floor(const ProcessSpec& spec, std::span<const double> c_grid) {
    double floor = resolution_floor(spec);
    for (double c : c_grid)
        if (c < floor) {
            char buf[256];
            std::snprintf(buf, sizeof buf,
                          "c = %g below the resolution floor %g = %g*(T/n)^beta "
                          "(T = %g, n = %zu, beta = %g); refine the sampling or raise c",
                          c, floor, kResolutionFactor, spec.horizon, spec.n_samples,
                          spec.beta());
            throw capacity_error(buf);
        }
}

} // namespace

ScalingCurve tv_scaling_curve(const ProcessSpec& spec, std::span<const double> c_grid,
                              double t, int n_paths, int threads) {
    spec.validate();
    check_c_grid(c_grid);
    if (n_paths < 1) throw domain_error("tv_scaling_curve needs n_paths >= 1");
    if (!(t > 0.0) || t > spec.horizon) throw domain_error("t outside process horizon");
    enforce_floor(spec, c_grid);

    ScalingCurve curve;
    curve.c_grid.assign(c_grid.begin(), c_grid.end());
    curve.n_paths = static_cast<std::size_t>(n_paths);
    curve.n_samples = spec.n_samples;
    curve.t = t;
    curve.beta = spec.beta();
    curve.normalization = "c^{1/beta-1}";
    curve.floor = resolution_floor(spec);
    curve.per_path.assign(c_grid.size(), std::vector<double>(curve.n_paths, 0.0));

    const double expo = 1.0 / curve.beta - 1.0;
    parallel_for(curve.n_paths, threads, [&](std::size_t p) {
        SampledPath x = simulate(spec, p);
        for (std::size_t ci = 0; ci < curve.c_grid.size(); ++ci) {
            double c = curve.c_grid[ci];
            VariationResult r = truncated_variation(x, c, 0.0, t);
            curve.per_path[ci][p] = std::pow(c, expo) * r.tv;
        }
    });

    for (std::size_t ci = 0; ci < curve.c_grid.size(); ++ci) {
        auto ms = mean_stderr(curve.per_path[ci]);
        curve.stat_mean.push_back(ms.mean);
        curve.stat_stderr.push_back(ms.stderr_);
    }
    return curve;
}

ScalingCurve example_scaling_curve(const SampledPath& path, std::span<const double> c_grid,
                                   double t) {
    check_c_grid(c_grid);
    if (!(t > 0.0) || t > path.horizon()) throw domain_error("t outside path domain");

    ScalingCurve curve;
    curve.c_grid.assign(c_grid.begin(), c_grid.end());
    curve.n_paths = 1;
    curve.n_samples = path.size();
    curve.t = t;
    curve.beta = 0.0;
    curve.normalization = "phi";
    curve.per_path.assign(c_grid.size(), std::vector<double>(1, 0.0));
    for (std::size_t ci = 0; ci < curve.c_grid.size(); ++ci) {
        double c = curve.c_grid[ci];
        double phi = normalization_phi(path, c);
        double stat = phi * truncated_variation(path, c, 0.0, t).tv;
        curve.per_path[ci][0] = stat;
        curve.stat_mean.push_back(stat);
        curve.stat_stderr.push_back(0.0);
    }
    return curve;
}

std::vector<CBracket> estimate_C(const ProcessSpec& spec, int n_max, int n_paths,
                                 std::size_t steps_per_unit, int threads) {
    if (n_max < 2) throw domain_error("estimate_C needs n_max >= 2");
    if (n_paths < 2) throw domain_error("estimate_C needs n_paths >= 2");
    if (steps_per_unit < 16) throw domain_error("estimate_C needs steps_per_unit >= 16");

    ProcessSpec run = spec;
    run.horizon = static_cast<double>(n_max);
    run.n_samples = steps_per_unit * static_cast<std::size_t>(n_max);

    std::vector<std::vector<double>> tv_at_n(static_cast<std::size_t>(n_max),
                                             std::vector<double>(n_paths, 0.0));
    parallel_for(static_cast<std::size_t>(n_paths), threads, [&](std::size_t p) {
        SampledPath x = simulate(run, p);
        VariationScan scan(1.0);
        const auto& values = x.values();
        std::size_t i = 0;
        for (int n = 1; n <= n_max; ++n) {
            std::size_t stop = steps_per_unit * static_cast<std::size_t>(n);
            while (i <= stop) scan.feed(values[i++]);
            tv_at_n[static_cast<std::size_t>(n - 1)][p] = scan.tv();
        }
    });

    std::vector<CBracket> out;
    for (int n = 1; n <= n_max; ++n) {
        auto ms = mean_stderr(tv_at_n[static_cast<std::size_t>(n - 1)]);
        CBracket b;
        b.n = n;
        b.n_paths = n_paths;
        b.lower = ms.mean / n;
        b.upper = b.lower + 1.0 / n;
        b.stderr_ = ms.stderr_ / n;
        out.push_back(b);
    }
    return out;
}

std::vector<WeakGapRow> deterministic_weak_rows(const SampledPath& path,
                                                std::span<const double> c_grid,
                                                const TestFunction& g, double t,
                                                const std::function<double(double)>& reference) {
    check_c_grid(c_grid);
    std::vector<WeakGapRow> rows;
    double ref = reference(t);
    for (double c : c_grid) {
        WeakGapRow row;
        row.c = c;
        double phi = normalization_phi(path, c);
        row.value = crossing_measure_integral(path, t, c, phi, g);
        row.reference = ref;
        row.gap = std::abs(row.value - ref);
        rows.push_back(row);
    }
    return rows;
}

std::vector<WeakGapRow> process_weak_rows(const ProcessSpec& spec,
                                          std::span<const double> c_grid,
                                          const TestFunction& g, double t, int n_paths,
                                          int threads) {
    spec.validate();
    check_c_grid(c_grid);
    if (n_paths < 1) throw domain_error("process_weak_rows needs n_paths >= 1");
    enforce_floor(spec, c_grid);

    const double expo = 1.0 / spec.beta() - 1.0;
    std::vector<std::vector<double>> values(c_grid.size(), std::vector<double>(n_paths));
    std::vector<std::vector<double>> refs(c_grid.size(), std::vector<double>(n_paths));
    std::vector<std::vector<double>> gaps(c_grid.size(), std::vector<double>(n_paths));
    parallel_for(static_cast<std::size_t>(n_paths), threads, [&](std::size_t p) {
        SampledPath x = simulate(spec, p);
        double ref = occupation_integral(x, t, g);
        for (std::size_t ci = 0; ci < c_grid.size(); ++ci) {
            double c = c_grid[ci];
            double v = std::pow(c, expo) * indicatrix_integral(x, c, g, 0.0, t);
            values[ci][p] = v;
            refs[ci][p] = ref;
            gaps[ci][p] = std::abs(v - ref);
        }
    });

    std::vector<WeakGapRow> rows;
    for (std::size_t ci = 0; ci < c_grid.size(); ++ci) {
        WeakGapRow row;
        row.c = c_grid[ci];
        row.value = mean_stderr(values[ci]).mean;
        row.reference = mean_stderr(refs[ci]).mean;
        row.gap = mean_stderr(gaps[ci]).mean;
        rows.push_back(row);
    }
    return rows;
}

std::vector<L1Row> l1_counterexample(const ExampleSpec& spec, std::span<const double> c_grid) {
    if (spec.which != ExampleKind::Ex3)
        throw domain_error("the L1 counterexample runs on example 3");
    check_c_grid(c_grid);
    ExampleSpec run = spec;
    run.min_tooth = std::min(run.min_tooth, c_grid.back() / 2.0);
    SampledPath path = example_path(run);

    auto bands = ex3_image_bands(run);
    std::vector<std::pair<double, double>> complement;
    double cursor = 0.0;
    for (const auto& b : bands) {
        if (b.first > cursor) complement.emplace_back(cursor, std::min(b.first, 1.0));
        cursor = std::max(cursor, b.second);
        if (cursor >= 1.0) break;
    }
    if (cursor < 1.0) complement.emplace_back(cursor, 1.0);
    double comp_measure = 0.0;
    for (const auto& iv : complement) comp_measure += iv.second - iv.first;

    const double bound = 1.0 - ex3_band_sum(run);
    std::vector<L1Row> rows;
    for (double c : c_grid) {
        L1Row row;
        row.c = c;
        double phi = normalization_phi(path, c);
        auto prof = indicatrix(path, c, 0.0, 1.0);
        row.integral_off_bands = phi * profile_integral_over(prof, complement);
        row.complement_measure = comp_measure;
        row.bound = bound;
        rows.push_back(row);
    }
    return rows;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw domain_error("KS needs non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        double fa = static_cast<double>(i) / na;
        double fb = static_cast<double>(j) / nb;
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

double ks_critical(double alpha, std::size_t n, std::size_t m) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw domain_error("KS level must be in (0,1)");
    double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return c * std::sqrt((nn + mm) / (nn * mm));
}

} // namespace pathcross
