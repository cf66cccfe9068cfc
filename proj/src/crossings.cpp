#include "pathcross/crossings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pathcross {

long downcross_count_values(std::span<const double> values, double lo, double hi) {
    bool armed = false; // armed once the upper barrier was hit
    long count = 0;
    for (double v : values) {
        if (!armed) {
            if (v >= hi) armed = true;
        } else if (v < lo) {
            ++count;
            armed = false;
        }
    }
    return count;
}

long upcross_count_values(std::span<const double> values, double lo, double hi) {
    // u^{y,c}(x) = d^{-y,c}(-x): arm at v <= lo, count at v > hi
    bool armed = false;
    long count = 0;
    for (double v : values) {
        if (!armed) {
            if (v <= lo) armed = true;
        } else if (v > hi) {
            ++count;
            armed = false;
        }
    }
    return count;
}

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

void check_c(double c) {
    if (!(c > 0.0)) throw domain_error("interval crossings need c > 0");
}

// Static min/max index over a value sequence answering "first index >= i
// whose value satisfies a one-sided threshold" in O(log n).
class ValueIndex {
public:
    explicit ValueIndex(std::span<const double> values) {
        n_ = 1;
        while (n_ < values.size()) n_ <<= 1;
        maxt_.assign(2 * n_, -std::numeric_limits<double>::infinity());
        mint_.assign(2 * n_, std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < values.size(); ++i) {
            maxt_[n_ + i] = values[i];
            mint_[n_ + i] = values[i];
        }
        for (std::size_t i = n_ - 1; i >= 1; --i) {
            maxt_[i] = std::max(maxt_[2 * i], maxt_[2 * i + 1]);
            mint_[i] = std::min(mint_[2 * i], mint_[2 * i + 1]);
        }
        size_ = values.size();
    }

    std::size_t first_ge(std::size_t from, double thr) const {
        return search(maxt_, from, [thr](double agg) { return agg >= thr; });
    }
    std::size_t first_gt(std::size_t from, double thr) const {
        return search(maxt_, from, [thr](double agg) { return agg > thr; });
    }
    std::size_t first_le(std::size_t from, double thr) const {
        return search(mint_, from, [thr](double agg) { return agg <= thr; });
    }
    std::size_t first_lt(std::size_t from, double thr) const {
        return search(mint_, from, [thr](double agg) { return agg < thr; });
    }

private:
    template <class Pred>
    std::size_t search(const std::vector<double>& tree, std::size_t from, Pred pred) const {
        if (from >= size_) return npos;
        std::size_t l = from + n_, r = 2 * n_;
        std::size_t left_nodes[64], right_nodes[64];
        int nl = 0, nr = 0;
        while (l < r) {
            if (l & 1) left_nodes[nl++] = l++;
            if (r & 1) right_nodes[nr++] = --r;
            l >>= 1;
            r >>= 1;
        }
        std::size_t hit = npos;
        for (int k = 0; k < nl && hit == npos; ++k)
            if (pred(tree[left_nodes[k]])) hit = left_nodes[k];
        for (int k = nr - 1; k >= 0 && hit == npos; --k)
            if (pred(tree[right_nodes[k]])) hit = right_nodes[k];
        if (hit == npos) return npos;
        while (hit < n_) hit = pred(tree[2 * hit]) ? 2 * hit : 2 * hit + 1;
        return hit - n_;
    }

    std::size_t n_ = 1;
    std::size_t size_ = 0;
    std::vector<double> maxt_, mint_;
};

long downcross_count_indexed(const ValueIndex& vi, double lo, double hi) {
    long count = 0;
    std::size_t pos = 0;
    for (;;) {
        pos = vi.first_ge(pos, hi);
        if (pos == npos) break;
        pos = vi.first_lt(pos, lo);
        if (pos == npos) break;
        ++count;
    }
    return count;
}

long upcross_count_indexed(const ValueIndex& vi, double lo, double hi) {
    long count = 0;
    std::size_t pos = 0;
    for (;;) {
        pos = vi.first_le(pos, lo);
        if (pos == npos) break;
        pos = vi.first_gt(pos, hi);
        if (pos == npos) break;
        ++count;
    }
    return count;
}

} // namespace

long downcrossings(const SampledPath& path, double y, double c) {
    check_c(c);
    return downcross_count_values(path.values(), y - c / 2.0, y + c / 2.0);
}

long downcrossings(const SampledPath& path, double y, double c, double s, double t) {
    check_c(c);
    auto v = path.values_on(s, t);
    return downcross_count_values(v, y - c / 2.0, y + c / 2.0);
}

long upcrossings(const SampledPath& path, double y, double c) {
    check_c(c);
    return upcross_count_values(path.values(), y - c / 2.0, y + c / 2.0);
}

long upcrossings(const SampledPath& path, double y, double c, double s, double t) {
    check_c(c);
    auto v = path.values_on(s, t);
    return upcross_count_values(v, y - c / 2.0, y + c / 2.0);
}

CrossingRecord crossings(const SampledPath& path, double y, double c) {
    return crossings(path, y, c, 0.0, path.horizon());
}

CrossingRecord crossings(const SampledPath& path, double y, double c, double s, double t) {
    check_c(c);
    auto v = path.values_on(s, t);
    CrossingRecord r;
    r.y = y;
    r.c = c;
    r.from_time = s;
    r.to_time = t;
    r.up = upcross_count_values(v, y - c / 2.0, y + c / 2.0);
    r.down = downcross_count_values(v, y - c / 2.0, y + c / 2.0);
    r.total = r.up + r.down;
    return r;
}

long level_upcrossings(const SampledPath& path, double y) {
    bool armed = false;
    long count = 0;
    for (double v : path.values()) {
        if (!armed) {
            if (v < y) armed = true;
        } else if (v > y) {
            ++count;
            armed = false;
        }
    }
    return count;
}

long level_upcrossings(const SampledPath& path, double y, double s, double t) {
    auto vals = path.values_on(s, t);
    bool armed = false;
    long count = 0;
    for (double v : vals) {
        if (!armed) {
            if (v < y) armed = true;
        } else if (v > y) {
            ++count;
            armed = false;
        }
    }
    return count;
}

long level_downcrossings(const SampledPath& path, double y) {
    bool armed = false;
    long count = 0;
    for (double v : path.values()) {
        if (!armed) {
            if (v > y) armed = true;
        } else if (v < y) {
            ++count;
            armed = false;
        }
    }
    return count;
}

long level_downcrossings(const SampledPath& path, double y, double s, double t) {
    auto vals = path.values_on(s, t);
    bool armed = false;
    long count = 0;
    for (double v : vals) {
        if (!armed) {
            if (v > y) armed = true;
        } else if (v < y) {
            ++count;
            armed = false;
        }
    }
    return count;
}

IndicatrixProfile indicatrix(const SampledPath& path, double c) {
    return indicatrix(path, c, 0.0, path.horizon());
}

IndicatrixProfile indicatrix(const SampledPath& path, double c, double s, double t) {
    check_c(c);
    auto values = path.values_on(s, t);

    std::vector<double> distinct(values);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::vector<double> bps;
    bps.reserve(2 * distinct.size());
    for (double v : distinct) bps.push_back(v - c / 2.0);
    for (double v : distinct) bps.push_back(v + c / 2.0);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    IndicatrixProfile prof;
    prof.c = c;
    prof.from_time = s;
    prof.to_time = t;
    prof.breakpoints = std::move(bps);
    if (prof.breakpoints.size() < 2) return prof;

    const std::size_t pieces = prof.breakpoints.size() - 1;
    prof.counts.resize(pieces, 0);

    const bool use_index = pieces * values.size() > (1u << 22);
    if (use_index) {
        ValueIndex vi(values);
        for (std::size_t i = 0; i < pieces; ++i) {
            double y = 0.5 * (prof.breakpoints[i] + prof.breakpoints[i + 1]);
            double lo = y - c / 2.0, hi = y + c / 2.0;
            prof.counts[i] = upcross_count_indexed(vi, lo, hi) +
                             downcross_count_indexed(vi, lo, hi);
        }
    } else {
        for (std::size_t i = 0; i < pieces; ++i) {
            double y = 0.5 * (prof.breakpoints[i] + prof.breakpoints[i + 1]);
            double lo = y - c / 2.0, hi = y + c / 2.0;
            prof.counts[i] = upcross_count_values(values, lo, hi) +
                             downcross_count_values(values, lo, hi);
        }
    }
    return prof;
}

double profile_integral(const IndicatrixProfile& profile, const TestFunction& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i < profile.counts.size(); ++i) {
        if (profile.counts[i] == 0) continue;
        acc += static_cast<double>(profile.counts[i]) *
               g.integral(profile.breakpoints[i], profile.breakpoints[i + 1]);
    }
    return acc;
}

double profile_integral_over(const IndicatrixProfile& profile,
                             std::span<const std::pair<double, double>> intervals) {
    double acc = 0.0;
    std::size_t k = 0; // first interval that can still overlap the current piece
    for (std::size_t i = 0; i < profile.counts.size(); ++i) {
        if (profile.counts[i] == 0) continue;
        double a = profile.breakpoints[i], b = profile.breakpoints[i + 1];
        while (k < intervals.size() && intervals[k].second <= a) ++k;
        for (std::size_t j = k; j < intervals.size() && intervals[j].first < b; ++j) {
            double lo = std::max(a, intervals[j].first);
            double hi = std::min(b, intervals[j].second);
            if (hi > lo) acc += static_cast<double>(profile.counts[i]) * (hi - lo);
        }
    }
    return acc;
}

double indicatrix_integral(const SampledPath& path, double c, const TestFunction& g) {
    return profile_integral(indicatrix(path, c), g);
}

double indicatrix_integral(const SampledPath& path, double c, const TestFunction& g,
                           double s, double t) {
    return profile_integral(indicatrix(path, c, s, t), g);
}

namespace {

struct Stroke {
    double from;
    double to;
};

// Maximal rising (or falling) strokes of the value sequence; for step paths
// each jump is its own stroke, for linear paths consecutive same-direction
// segments merge.
std::vector<Stroke> rising_strokes(std::span<const double> v, bool merge) {
    std::vector<Stroke> out;
    std::size_t i = 1;
    while (i < v.size()) {
        if (v[i] > v[i - 1]) {
            double a = v[i - 1];
            std::size_t j = i;
            if (merge)
                while (j + 1 < v.size() && v[j + 1] >= v[j]) ++j;
            out.push_back({a, v[j]});
            i = j + 1;
        } else {
            ++i;
        }
    }
    return out;
}

} // namespace

BanachVitaliResult banach_vitali_upcross(const SampledPath& path, const TestFunction& g,
                                         double t) {
    auto v = path.values_on(0.0, t);
    BanachVitaliResult r;
    for (const auto& s : rising_strokes(v, path.mode() == PathMode::PiecewiseLinear))
        r.lhs += g.integral(s.from, s.to);
    if (path.mode() == PathMode::StepCadlag) {
        for (std::size_t i = 1; i < v.size(); ++i) {
            double d = v[i] - v[i - 1];
            if (d <= 0.0) continue;
            r.rhs += g(v[i - 1]) * d;                             // atom of dUTV at the jump
            r.rhs += g.integral(v[i - 1], v[i]) - g(v[i - 1]) * d; // jump correction
        }
    } else {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] > v[i - 1]) r.rhs += g.integral(v[i - 1], v[i]); // dUTV = dx on rises
    }
    return r;
}

BanachVitaliResult banach_vitali_downcross(const SampledPath& path, const TestFunction& g,
                                           double t) {
    auto v = path.values_on(0.0, t);
    std::vector<double> neg(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    BanachVitaliResult r;
    for (const auto& s : rising_strokes(neg, path.mode() == PathMode::PiecewiseLinear))
        r.lhs += g.integral(-s.to, -s.from);
    if (path.mode() == PathMode::StepCadlag) {
        for (std::size_t i = 1; i < v.size(); ++i) {
            double d = v[i] - v[i - 1];
            if (d >= 0.0) continue;
            r.rhs += g(v[i - 1]) * (-d);
            r.rhs += g.integral(v[i], v[i - 1]) - g(v[i - 1]) * (-d);
        }
    } else {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] < v[i - 1]) r.rhs += g.integral(v[i], v[i - 1]);
    }
    return r;
}

} // namespace pathcross
