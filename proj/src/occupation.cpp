#include "pathcross/occupation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pathcross/crossings.hpp"

namespace pathcross {

namespace {

void check_edges(std::span<const double> edges) {
    if (edges.size() < 2) throw domain_error("occupation bins need at least two edges");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (!(edges[i] < edges[i + 1]))
            throw domain_error("occupation bin edges must be strictly increasing");
}

// time spent (duration) with a linear traversal a -> b inside [lo, hi)
double segment_time_in_band(double a, double b, double dur, double lo, double hi) {
    if (a == b) return (a >= lo && a < hi) ? dur : 0.0;
    double vmin = std::min(a, b), vmax = std::max(a, b);
    double omin = std::max(vmin, lo), omax = std::min(vmax, hi);
    if (omax <= omin) return 0.0;
    return dur * (omax - omin) / (vmax - vmin);
}

} // namespace

LocalTimeEstimate occupation_density(const SampledPath& path, double t,
                                     std::span<const double> bin_edges) {
    check_edges(bin_edges);
    if (!(t > 0.0) || t > path.horizon())
        throw domain_error("occupation horizon outside path domain");
    auto restricted = path.restrict_to(0.0, t);
    double lo = restricted.min_value(), hi = restricted.max_value();
    if (bin_edges.front() > lo || bin_edges.back() < hi)
        throw domain_error("occupation bins must cover the path range");

    LocalTimeEstimate est;
    est.t = t;
    est.bin_edges.assign(bin_edges.begin(), bin_edges.end());
    est.density.assign(bin_edges.size() - 1, 0.0);

    const auto& times = restricted.times();
    const auto& values = restricted.values();
    const std::size_t nb = est.density.size();
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        double dur = times[i + 1] - times[i];
        if (dur <= 0.0) continue;
        if (restricted.mode() == PathMode::StepCadlag) {
            double v = values[i];
            auto it = std::upper_bound(est.bin_edges.begin(), est.bin_edges.end(), v);
            std::size_t b = static_cast<std::size_t>(it - est.bin_edges.begin());
            b = (b == 0) ? 0 : b - 1;
            if (b >= nb) b = nb - 1; // value at the top edge goes to the last bin
            est.density[b] += dur;
        } else {
            double a = values[i], b = values[i + 1];
            double vmin = std::min(a, b), vmax = std::max(a, b);
            auto first = std::upper_bound(est.bin_edges.begin(), est.bin_edges.end(), vmin);
            std::size_t k = first == est.bin_edges.begin()
                                ? 0
                                : static_cast<std::size_t>(first - est.bin_edges.begin()) - 1;
            for (; k < nb && est.bin_edges[k] <= vmax; ++k) {
                double cell_hi =
                    (k + 1 == nb) ? std::nextafter(est.bin_edges[k + 1],
                                                   std::numeric_limits<double>::infinity())
                                  : est.bin_edges[k + 1];
                est.density[k] += segment_time_in_band(a, b, dur, est.bin_edges[k], cell_hi);
            }
        }
    }
    for (std::size_t k = 0; k < nb; ++k)
        est.density[k] /= est.bin_edges[k + 1] - est.bin_edges[k];
    return est;
}

double occupation_integral(const SampledPath& path, double t, const TestFunction& g) {
    if (!(t > 0.0) || t > path.horizon())
        throw domain_error("occupation horizon outside path domain");
    auto restricted = path.restrict_to(0.0, t);
    const auto& times = restricted.times();
    const auto& values = restricted.values();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        double dur = times[i + 1] - times[i];
        if (dur <= 0.0) continue;
        double a = values[i], b = values[i + 1];
        if (restricted.mode() == PathMode::StepCadlag || a == b) {
            acc += dur * g(a);
        } else {
            acc += dur * g.integral(a, b) / (b - a);
        }
    }
    return acc;
}

double crossing_measure_integral(const SampledPath& path, double t, double c,
                                 double phi_of_c, const TestFunction& g) {
    if (!(phi_of_c > 0.0)) throw domain_error("normalization phi(c) must be > 0");
    return phi_of_c * indicatrix_integral(path, c, g, 0.0, t);
}

double weak_gap(const SampledPath& path, std::span<const double> t_grid, double c,
                double phi_of_c, const TestFunction& g,
                const std::function<double(double)>& reference) {
    double worst = 0.0;
    for (double t : t_grid) {
        double v = crossing_measure_integral(path, t, c, phi_of_c, g);
        worst = std::max(worst, std::abs(v - reference(t)));
    }
    return worst;
}

} // namespace pathcross
