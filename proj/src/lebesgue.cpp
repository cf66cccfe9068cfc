#include "pathcross/lebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pathcross {

PsiSpec PsiSpec::power(double p) {
    if (!(p >= 1.0)) throw domain_error("psi power needs p >= 1");
    PsiSpec s;
    s.p_ = p;
    s.is_power_ = true;
    return s;
}

PsiSpec PsiSpec::custom(std::vector<double> us, std::vector<double> psis) {
    if (us.size() != psis.size() || us.size() < 2)
        throw domain_error("custom psi needs matching u/psi tables of length >= 2");
    if (us.front() != 0.0 || psis.front() != 0.0)
        throw domain_error("custom psi must start at (0, 0)");
    for (std::size_t i = 1; i < us.size(); ++i)
        if (!(us[i] > us[i - 1]) || psis[i] < psis[i - 1])
            throw domain_error("custom psi table must be increasing in u, non-decreasing in psi");
    PsiSpec s;
    s.is_power_ = false;
    s.p_ = std::numeric_limits<double>::quiet_NaN();
    s.us_ = std::move(us);
    s.psis_ = std::move(psis);
    return s;
}

double PsiSpec::operator()(double u) const {
    if (u < 0.0) throw domain_error("psi argument must be >= 0");
    if (is_power_) return std::pow(u, p_);
    auto it = std::upper_bound(us_.begin(), us_.end(), u);
    std::size_t hi = static_cast<std::size_t>(it - us_.begin());
    if (hi == us_.size()) hi = us_.size() - 1; // extrapolate last slope
    std::size_t lo = hi - 1;
    double w = (u - us_[lo]) / (us_[hi] - us_[lo]);
    return psis_[lo] + w * (psis_[hi] - psis_[lo]);
}

namespace {

constexpr double kSnap = 1e-12;

void check_partition_args(const SampledPath& path, double c, double r, double horizon) {
    if (path.mode() != PathMode::PiecewiseLinear)
        throw domain_error("Lebesgue partitions are defined for continuous "
                           "(PIECEWISE_LINEAR) paths");
    if (!(c > 0.0)) throw domain_error("grid pitch c must be > 0");
    if (!(r >= 0.0 && r < c)) throw domain_error("grid shift r must lie in [0, c)");
    if (!(horizon > 0.0) || horizon > path.horizon())
        throw domain_error("partition horizon outside path domain");
}

double grid_value(long p, double c, double r) { return static_cast<double>(p) * c + r; }

} // namespace

void walk_partition(const SampledPath& path, double c, double r, double horizon,
                    const std::function<void(double, double)>& visit) {
    check_partition_args(path, c, r, horizon);
    const auto& times = path.times();
    const auto& values = path.values();

    const double x0 = values[0];
    double snap0 = kSnap * std::max(1.0, std::abs(x0));
    // flanking grid indices of the current (excluded) value
    long lo_idx, hi_idx;
    double q = std::floor((x0 - r) / c);
    long p = static_cast<long>(q);
    while (grid_value(p + 1, c, r) <= x0) ++p;
    while (grid_value(p, c, r) > x0) --p;
    if (std::abs(grid_value(p, c, r) - x0) <= snap0) {
        lo_idx = p - 1;
        hi_idx = p + 1;
    } else if (std::abs(grid_value(p + 1, c, r) - x0) <= snap0) {
        lo_idx = p;
        hi_idx = p + 2;
    } else {
        lo_idx = p;
        hi_idx = p + 1;
    }

    std::size_t seg = 0; // segment [times[seg], times[seg+1]]
    double cur_t = 0.0, cur_v = x0;
    while (seg + 1 < times.size() && cur_t < horizon) {
        double t1 = std::min(times[seg + 1], horizon);
        double v1 = (t1 == times[seg + 1])
                        ? values[seg + 1]
                        : path.eval(t1);
        for (;;) {
            if (v1 > cur_v) { // rising toward grid_value(hi_idx)
                double target = grid_value(hi_idx, c, r);
                double snap = kSnap * std::max(1.0, std::abs(target));
                if (v1 >= target - snap) {
                    double hit_t;
                    if (v1 >= target) {
                        double w = (target - cur_v) / (v1 - cur_v);
                        hit_t = cur_t + w * (t1 - cur_t);
                    } else {
                        hit_t = t1; // snapped grazing touch at the segment end
                    }
                    if (hit_t > horizon) break;
                    visit(hit_t, target);
                    cur_t = hit_t;
                    cur_v = target;
                    lo_idx = hi_idx - 1;
                    hi_idx = hi_idx + 1;
                    if (cur_t >= t1 || cur_v >= v1) break;
                    continue;
                }
            } else if (v1 < cur_v) { // falling toward grid_value(lo_idx)
                double target = grid_value(lo_idx, c, r);
                double snap = kSnap * std::max(1.0, std::abs(target));
                if (v1 <= target + snap) {
                    double hit_t;
                    if (v1 <= target) {
                        double w = (target - cur_v) / (v1 - cur_v);
                        hit_t = cur_t + w * (t1 - cur_t);
                    } else {
                        hit_t = t1;
                    }
                    if (hit_t > horizon) break;
                    visit(hit_t, target);
                    cur_t = hit_t;
                    cur_v = target;
                    hi_idx = lo_idx + 1;
                    lo_idx = lo_idx - 1;
                    if (cur_t >= t1 || cur_v <= v1) break;
                    continue;
                }
            }
            break; // flat or no further grid line inside this segment
        }
        cur_t = t1;
        cur_v = v1;
        ++seg;
    }
}

LebesguePartition build_partition(const SampledPath& path, double c, double r,
                                  double horizon) {
    LebesguePartition part;
    part.c = c;
    part.r = r;
    part.taus.push_back(0.0);
    part.tau_values.push_back(path.values()[0]);
    walk_partition(path, c, r, horizon, [&part](double t, double v) {
        part.taus.push_back(t);
        part.tau_values.push_back(v);
    });
    return part;
}

long k_count(const LebesguePartition& partition, double t) {
    if (t < 0.0) throw domain_error("k_count needs t >= 0");
    auto it = std::upper_bound(partition.taus.begin(), partition.taus.end(), t);
    return static_cast<long>(it - partition.taus.begin()) - 1;
}

double psi_variation(const SampledPath& path, const LebesguePartition& partition,
                     const PsiSpec& psi, double t) {
    if (t < 0.0 || t > path.horizon()) throw domain_error("psi_variation t outside domain");
    if (t == 0.0) return 0.0;
    long k = k_count(partition, t);
    double acc = 0.0;
    for (long i = 1; i <= k; ++i)
        acc += psi(std::abs(partition.tau_values[i] - partition.tau_values[i - 1]));
    double tail = std::abs(path.eval(t) - partition.tau_values[k]);
    if (tail > 0.0) acc += psi(tail);
    return acc;
}

double mean_psi_variation(const SampledPath& path, double c, const PsiSpec& psi,
                          double t, int n_shifts) {
    if (n_shifts < 8) throw domain_error("mean_psi_variation needs n_shifts >= 8");
    double acc = 0.0;
    for (int j = 0; j < n_shifts; ++j) {
        double gamma = (j + 0.5) / n_shifts;
        auto part = build_partition(path, c, gamma * c, t);
        acc += psi_variation(path, part, psi, t);
    }
    return acc / n_shifts;
}

std::vector<double> pvar_along_lebesgue(const SampledPath& path, int p, double gamma,
                                        std::span<const double> b_seq, double t) {
    if (p < 2) throw domain_error("pvar_along_lebesgue needs integer p >= 2");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw domain_error("gamma must lie in [0, 1)");
    std::vector<double> out;
    out.reserve(b_seq.size());
    const double x_t = path.eval(t);
    for (double c : b_seq) {
        double acc = 0.0;
        double prev = path.values()[0];
        walk_partition(path, c, gamma * c, t, [&](double, double v) {
            acc += std::pow(std::abs(v - prev), static_cast<double>(p));
            prev = v;
        });
        double tail = std::abs(x_t - prev);
        if (tail > 0.0) acc += std::pow(tail, static_cast<double>(p));
        out.push_back(acc);
    }
    return out;
}

} // namespace pathcross
