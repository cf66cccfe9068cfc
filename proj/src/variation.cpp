#include "pathcross/variation.hpp"

#include <algorithm>
#include <cmath>

namespace pathcross {

double upward_variation_of_values(std::span<const double> values, double c) {
    if (c < 0.0) throw domain_error("truncation parameter c must be >= 0");
    if (values.size() < 2) return 0.0;
    // "unlimited transactions with fee c": best value with an open leg /
    // with all legs closed, scanned left to right.
    double best_open = -values[0];
    double closed = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        double x = values[i];
        best_open = std::max(best_open, closed - x);
        closed = std::max(closed, best_open + x - c);
    }
    return closed;
}

namespace {

std::vector<double> negated(std::span<const double> v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
    return out;
}

std::vector<double> interval_values(const SampledPath& path, double s, double t) {
    return path.values_on(s, t);
}

double oracle_upward(std::span<const double> v, double c) {
    // f[j] = best total over non-overlapping pairs within indices 0..j,
    // where a pair may share its endpoints with neighbours.
    const std::size_t n = v.size();
    std::vector<double> f(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        f[j] = f[j - 1];
        for (std::size_t i = 0; i < j; ++i) {
            double gain = v[j] - v[i] - c;
            double cand = f[i] + std::max(gain, 0.0);
            f[j] = std::max(f[j], cand);
        }
    }
    return f[n - 1];
}

} // namespace

double upward_truncated_variation(const SampledPath& path, double c) {
    return upward_variation_of_values(path.values(), c);
}

double upward_truncated_variation(const SampledPath& path, double c, double s, double t) {
    auto v = interval_values(path, s, t);
    return upward_variation_of_values(v, c);
}

double downward_truncated_variation(const SampledPath& path, double c) {
    auto v = negated(path.values());
    return upward_variation_of_values(v, c);
}

double downward_truncated_variation(const SampledPath& path, double c, double s, double t) {
    auto v = negated(interval_values(path, s, t));
    return upward_variation_of_values(v, c);
}

VariationResult truncated_variation(const SampledPath& path, double c) {
    if (path.size() == 1) {
        if (c < 0.0) throw domain_error("truncation parameter c must be >= 0");
        return VariationResult{c, 0.0, 0.0, 0.0, 0.0, 0.0};
    }
    return truncated_variation(path, c, 0.0, path.horizon());
}

VariationResult truncated_variation(const SampledPath& path, double c, double s, double t) {
    VariationResult r;
    r.c = c;
    r.from_time = s;
    r.to_time = t;
    auto v = interval_values(path, s, t);
    r.utv = upward_variation_of_values(v, c);
    auto nv = negated(v);
    r.dtv = upward_variation_of_values(nv, c);
    r.tv = r.utv + r.dtv;
    return r;
}

VariationResult truncated_variation_oracle(const SampledPath& path, double c) {
    if (path.size() == 1) {
        if (c < 0.0) throw domain_error("truncation parameter c must be >= 0");
        return VariationResult{c, 0.0, 0.0, 0.0, 0.0, 0.0};
    }
    return truncated_variation_oracle(path, c, 0.0, path.horizon());
}

VariationResult truncated_variation_oracle(const SampledPath& path, double c,
                                           double s, double t) {
    if (c < 0.0) throw domain_error("truncation parameter c must be >= 0");
    auto v = interval_values(path, s, t);
    if (v.size() > 2000)
        throw capacity_error("oracle is quadratic; interval holds " +
                             std::to_string(v.size()) + " samples, limit 2000");
    VariationResult r;
    r.c = c;
    r.from_time = s;
    r.to_time = t;
    r.utv = oracle_upward(v, c);
    auto nv = negated(v);
    r.dtv = oracle_upward(nv, c);
    r.tv = r.utv + r.dtv;
    return r;
}

std::vector<std::vector<VariationResult>>
truncated_variation_profile(const SampledPath& path, std::span<const double> c_grid,
                            std::span<const double> t_grid) {
    if (c_grid.empty() || t_grid.empty())
        throw domain_error("profile needs non-empty c and t grids");
    for (double t : t_grid)
        if (t < 0.0 || t > path.horizon())
            throw domain_error("profile t outside path domain");
    std::vector<std::vector<VariationResult>> out(c_grid.size());
    const auto& times = path.times();
    const auto& values = path.values();
    for (std::size_t ci = 0; ci < c_grid.size(); ++ci) {
        double c = c_grid[ci];
        VariationScan scan(c);
        std::size_t i = 0;
        out[ci].reserve(t_grid.size());
        for (double t : t_grid) {
            while (i < times.size() && times[i] <= t) scan.feed(values[i++]);
            VariationScan at_t = scan;
            if (i > 0 && times[i - 1] != t) at_t.feed(path.eval(t));
            VariationResult r;
            r.c = c;
            r.from_time = 0.0;
            r.to_time = t;
            r.utv = at_t.utv();
            r.dtv = at_t.dtv();
            r.tv = at_t.tv();
            out[ci].push_back(r);
        }
    }
    return out;
}

double normalization_phi(const SampledPath& path, double c) {
    if (!(c > 0.0)) throw domain_error("normalization needs c > 0");
    if (path.horizon() < 1.0)
        throw domain_error("normalization needs the path domain to cover [0, 1]");
    VariationResult r = truncated_variation(path, c, 0.0, 1.0);
    return 1.0 / (1.0 + r.tv);
}

VariationScan::VariationScan(double c) : c_(c) {
    if (c < 0.0) throw domain_error("truncation parameter c must be >= 0");
}

void VariationScan::feed(double value) {
    if (!started_) {
        started_ = true;
        up_open_ = -value;
        down_open_ = value;
        return;
    }
    up_open_ = std::max(up_open_, up_closed_ - value);
    up_closed_ = std::max(up_closed_, up_open_ + value - c_);
    down_open_ = std::max(down_open_, down_closed_ + value);
    down_closed_ = std::max(down_closed_, down_open_ - value - c_);
}

} // namespace pathcross
