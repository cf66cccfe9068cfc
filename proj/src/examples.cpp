#include "pathcross/examples.hpp"

#include <algorithm>
#include <cmath>

namespace pathcross {

SequenceRule SequenceRule::parse(const std::string& spec) {
    SequenceRule r;
    if (spec == "harmonic") {
        r.kind = Kind::Harmonic;
        return r;
    }
    if (spec == "pow2") {
        r.kind = Kind::Pow2;
        return r;
    }
    if (spec.rfind("invpow:", 0) == 0) {
        r.kind = Kind::InvPow;
        r.param = std::stod(spec.substr(7));
        if (!(r.param > 0.0 && r.param <= 1.0)) throw parse_error("invpow:t needs t in (0,1]");
        return r;
    }
    if (spec.rfind("pow2floor:", 0) == 0) {
        r.kind = Kind::Pow2Floor;
        r.param = std::stod(spec.substr(10));
        if (!(r.param >= 1.0)) throw parse_error("pow2floor:p needs p >= 1");
        return r;
    }
    if (spec.rfind("geom:", 0) == 0) {
        r.kind = Kind::Geometric;
        r.param = std::stod(spec.substr(5));
        if (!(r.param > 0.0 && r.param < 1.0)) throw parse_error("geom:q needs q in (0,1)");
        return r;
    }
    throw parse_error("unknown sequence rule '" + spec +
                      "' (harmonic|invpow:t|pow2|pow2floor:p|geom:q)");
}

std::string SequenceRule::spec() const {
    switch (kind) {
    case Kind::Harmonic: return "harmonic";
    case Kind::InvPow: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "invpow:%.17g", param);
        return buf;
    }
    case Kind::Pow2: return "pow2";
    case Kind::Pow2Floor: return "pow2floor:" + std::to_string(static_cast<long>(param));
    case Kind::Geometric: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "geom:%.17g", param);
        return buf;
    }
    }
    return "?";
}

double SequenceRule::operator()(long n) const {
    if (n < 0) throw domain_error("sequence index must be >= 0");
    switch (kind) {
    case Kind::Harmonic: return 1.0 / static_cast<double>(n + 1);
    case Kind::InvPow: return std::pow(static_cast<double>(n + 1), -param);
    case Kind::Pow2: return std::ldexp(1.0, static_cast<int>(-std::min<long>(n, 1060)));
    case Kind::Pow2Floor: {
        long p = static_cast<long>(param);
        return std::ldexp(1.0, static_cast<int>(-std::min<long>(n / p, 1060)));
    }
    case Kind::Geometric: return std::pow(param, static_cast<double>(n));
    }
    return 0.0;
}

bool SequenceRule::plain_sum_diverges() const {
    return kind == Kind::Harmonic || kind == Kind::InvPow;
}

bool SequenceRule::weighted_sum_diverges() const {
    switch (kind) {
    case Kind::Harmonic: return true;
    case Kind::InvPow: return true;
    case Kind::Pow2: return true;
    case Kind::Pow2Floor: return true;
    case Kind::Geometric: return 2.0 * param >= 1.0;
    }
    return false;
}

std::string to_string(ExampleKind kind) {
    switch (kind) {
    case ExampleKind::Ex1: return "1";
    case ExampleKind::Ex2: return "2";
    case ExampleKind::Ex3: return "3";
    case ExampleKind::Cantor: return "cantor";
    }
    return "?";
}

ExampleKind example_kind_from_string(const std::string& name) {
    if (name == "1" || name == "ex1") return ExampleKind::Ex1;
    if (name == "2" || name == "ex2") return ExampleKind::Ex2;
    if (name == "3" || name == "ex3") return ExampleKind::Ex3;
    if (name == "cantor") return ExampleKind::Cantor;
    throw parse_error("unknown example '" + name + "' (1|2|3|cantor)");
}

namespace {

// zigzag node times t_k = k/(k+1), strictly increasing to 1
double zig_time(long k) {
    return static_cast<double>(k) / static_cast<double>(k + 1);
}

std::vector<double> pow3_inverse(int depth) {
    std::vector<double> p3(static_cast<std::size_t>(depth) + 3);
    p3[0] = 1.0;
    for (std::size_t i = 1; i < p3.size(); ++i) p3[i] = p3[i - 1] / 3.0;
    return p3;
}

struct PathBuilder {
    std::vector<double> times, values;
    std::size_t capacity;

    void add(double t, double v) {
        if (times.size() >= capacity)
            throw capacity_error("example path exceeds the sample budget (" +
                                 std::to_string(capacity) + ")");
        times.push_back(t);
        values.push_back(v);
    }
};

long ex3_m_of(long m_scale, int n) {
    double m = static_cast<double>(m_scale) * std::ldexp(1.0, n) *
               static_cast<double>(n + 1) * static_cast<double>(n + 2);
    if (m > 4.6e18) throw capacity_error("EX3 m_n overflows at depth " + std::to_string(n));
    return static_cast<long>(m) - 1;
}

double ex3_band_sum_full(const ExampleSpec& spec) {
    if (spec.a_rule.kind == SequenceRule::Kind::Harmonic)
        return 1.0 / static_cast<double>(spec.m_scale); // telescoping sum
    double acc = 0.0, prev = 1e300;
    for (int n = 0; n < 256; ++n) {
        double term = std::ldexp(1.0, n) * spec.a_rule(ex3_m_of(spec.m_scale, n));
        if (term >= prev && term > 1e-18)
            throw domain_error("cannot certify sum 2^n a_{m_n} < 1 for this a rule");
        acc += term;
        prev = term;
        if (term < 1e-18) break;
    }
    return acc;
}

SampledPath build_ex1(const ExampleSpec& spec) {
    if (spec.depth < 1) throw domain_error("EX1 needs depth >= 1");
    PathBuilder b{{}, {}, spec.capacity};
    b.add(0.0, 0.0);
    for (int n = 0; n < spec.depth; ++n) {
        double a = spec.a_rule(n);
        b.add(zig_time(2 * n + 1), a);
        b.add(zig_time(2 * n + 2), 0.0);
    }
    if (b.times.back() < 1.0) b.add(1.0, 0.0);
    return SampledPath(std::move(b.times), std::move(b.values), PathMode::PiecewiseLinear);
}

void build_ex2_rec(int n, double prefix, const ExampleSpec& spec,
                   const std::vector<double>& p3, PathBuilder& b) {
    double a = prefix + p3[static_cast<std::size_t>(n) + 1];
    double gap_end = prefix + 2.0 * p3[static_cast<std::size_t>(n) + 1];
    if (n < spec.depth) build_ex2_rec(n + 1, prefix, spec, p3, b);
    double h = spec.b_rule(n);
    if (h >= spec.min_tent) {
        b.add(a, 0.0);
        b.add(0.5 * (a + gap_end), h);
        b.add(gap_end, 0.0);
    }
    if (n < spec.depth)
        build_ex2_rec(n + 1, prefix + 2.0 * p3[static_cast<std::size_t>(n) + 1], spec, p3, b);
}

SampledPath build_ex2(const ExampleSpec& spec) {
    if (spec.depth < 0) throw domain_error("EX2 needs depth >= 0");
    auto p3 = pow3_inverse(spec.depth);
    PathBuilder b{{}, {}, spec.capacity};
    b.add(0.0, 0.0);
    build_ex2_rec(0, 0.0, spec, p3, b);
    if (b.times.back() < 1.0) b.add(1.0, 0.0);
    return SampledPath(std::move(b.times), std::move(b.values), PathMode::PiecewiseLinear);
}

void build_ex3_gap(int n, double a, double gap_end, double plateau, const ExampleSpec& spec,
                   PathBuilder& b) {
    long m_n = ex3_m_of(spec.m_scale, n);
    double width = gap_end - a;
    b.add(a, plateau);
    // teeth below min_tooth cannot cross any tested band; drop them
    for (long l = 0; l < spec.max_teeth_per_gap; ++l) {
        double h = spec.a_rule(m_n + l);
        if (h <= spec.min_tooth) break;
        b.add(a + width * zig_time(2 * l + 1), plateau + h);
        b.add(a + width * zig_time(2 * l + 2), plateau);
    }
    b.add(gap_end, plateau);
}

void build_ex3_rec(int n, double prefix, double zeta_prefix, const ExampleSpec& spec,
                   const std::vector<double>& p3, PathBuilder& b) {
    double a = prefix + p3[static_cast<std::size_t>(n) + 1];
    double gap_end = prefix + 2.0 * p3[static_cast<std::size_t>(n) + 1];
    double plateau = zeta_prefix + std::ldexp(1.0, -(n + 1));
    if (n < spec.depth) build_ex3_rec(n + 1, prefix, zeta_prefix, spec, p3, b);
    build_ex3_gap(n, a, gap_end, plateau, spec, b);
    if (n < spec.depth)
        build_ex3_rec(n + 1, prefix + 2.0 * p3[static_cast<std::size_t>(n) + 1],
                      zeta_prefix + std::ldexp(1.0, -(n + 1)), spec, p3, b);
}

SampledPath build_ex3(const ExampleSpec& spec) {
    if (spec.depth < 0) throw domain_error("EX3 needs depth >= 0");
    if (!(spec.min_tooth > 0.0)) throw domain_error("EX3 needs min_tooth > 0");
    if (spec.m_scale < 2) throw domain_error("EX3 needs m_scale >= 2");
    double band_sum = ex3_band_sum_full(spec);
    if (!(band_sum < 1.0))
        throw domain_error("EX3 requires sum 2^n a_{m_n} < 1; rule gives " +
                           std::to_string(band_sum));
    auto p3 = pow3_inverse(spec.depth);
    PathBuilder b{{}, {}, spec.capacity};
    b.add(0.0, 0.0);
    build_ex3_rec(0, 0.0, 0.0, spec, p3, b);
    b.add(1.0, 1.0);
    return SampledPath(std::move(b.times), std::move(b.values), PathMode::PiecewiseLinear);
}

void build_cantor_rec(int n, double prefix, double zeta_prefix, int depth,
                      const std::vector<double>& p3, PathBuilder& b) {
    double a = prefix + p3[static_cast<std::size_t>(n) + 1];
    double gap_end = prefix + 2.0 * p3[static_cast<std::size_t>(n) + 1];
    double plateau = zeta_prefix + std::ldexp(1.0, -(n + 1));
    if (n < depth) build_cantor_rec(n + 1, prefix, zeta_prefix, depth, p3, b);
    b.add(a, plateau);
    b.add(gap_end, plateau);
    if (n < depth)
        build_cantor_rec(n + 1, prefix + 2.0 * p3[static_cast<std::size_t>(n) + 1],
                         zeta_prefix + std::ldexp(1.0, -(n + 1)), depth, p3, b);
}

SampledPath build_cantor(const ExampleSpec& spec) {
    if (spec.depth < 0) throw domain_error("cantor path needs depth >= 0");
    auto p3 = pow3_inverse(spec.depth);
    PathBuilder b{{}, {}, spec.capacity};
    b.add(0.0, 0.0);
    build_cantor_rec(0, 0.0, 0.0, spec.depth, p3, b);
    b.add(1.0, 1.0);
    return SampledPath(std::move(b.times), std::move(b.values), PathMode::PiecewiseLinear);
}

} // namespace

SampledPath example_path(const ExampleSpec& spec) {
    switch (spec.which) {
    case ExampleKind::Ex1: return build_ex1(spec);
    case ExampleKind::Ex2: return build_ex2(spec);
    case ExampleKind::Ex3: return build_ex3(spec);
    case ExampleKind::Cantor: return build_cantor(spec);
    }
    throw domain_error("unreachable example kind");
}

double cantor_function(double t, int depth) {
    if (t < 0.0 || t > 1.0) throw domain_error("cantor function needs t in [0,1]");
    if (depth < 1) throw domain_error("cantor function needs depth >= 1");
    if (t == 1.0) return 1.0;
    double x = t, acc = 0.0, half = 0.5;
    for (int i = 0; i < depth; ++i) {
        double scaled = 3.0 * x;
        int d = static_cast<int>(scaled);
        if (d > 2) d = 2;
        if (d == 1) {
            acc += half;
            return acc;
        }
        if (d == 2) acc += half;
        x = scaled - static_cast<double>(d);
        half *= 0.5;
    }
    return acc;
}

std::pair<double, double> cantor_gap_bounds(int n, long k) {
    if (n < 0 || n > 60 || k < 0 || k >= (1L << n))
        throw domain_error("cantor gap index outside range");
    auto p3 = pow3_inverse(n);
    double prefix = 0.0;
    for (int i = 1; i <= n; ++i) {
        long bit = (k >> (n - i)) & 1L;
        if (bit) prefix += 2.0 * p3[static_cast<std::size_t>(i)];
    }
    double lo = prefix + p3[static_cast<std::size_t>(n) + 1];
    double hi = prefix + 2.0 * p3[static_cast<std::size_t>(n) + 1];
    return {lo, hi};
}

double cantor_gap_value(int n, long k) {
    if (n < 0 || n > 60 || k < 0 || k >= (1L << n))
        throw domain_error("cantor gap index outside range");
    return (2.0 * static_cast<double>(k) + 1.0) * std::ldexp(1.0, -(n + 1));
}

long k_n_count(double t, int n) {
    if (t < 0.0 || t > 1.0) throw domain_error("k_n needs t in [0,1]");
    if (n < 0 || n > 40) throw domain_error("k_n supports depth 0..40");
    long lo = 0, hi = 1L << n; // first k with gap end > t
    while (lo < hi) {
        long mid = lo + (hi - lo) / 2;
        if (cantor_gap_bounds(n, mid).second <= t)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

double ex1_tv_closed_form(const SequenceRule& a_rule, long depth, double c) {
    if (c < 0.0) throw domain_error("c must be >= 0");
    double acc = 0.0;
    for (long n = 0; n < depth; ++n) acc += 2.0 * std::max(a_rule(n) - c, 0.0);
    return acc;
}

double ex1_tail(const SequenceRule& a_rule, long depth, double c) {
    if (!(c > 0.0)) throw domain_error("tail needs c > 0");
    double acc = 0.0;
    for (long n = depth; n < depth + 100000000L; ++n) {
        double e = a_rule(n) - c;
        if (e <= 0.0) return acc;
        acc += 2.0 * e;
    }
    throw capacity_error("EX1 tail did not converge within the iteration budget");
}

double ex2_tv_closed_form(const SequenceRule& b_rule, int depth, double c) {
    if (c < 0.0) throw domain_error("c must be >= 0");
    double acc = 0.0;
    for (int n = 0; n <= depth; ++n)
        acc += std::ldexp(2.0, n) * std::max(b_rule(n) - c, 0.0);
    return acc;
}

double ex2_tail(const SequenceRule& b_rule, int depth, double c) {
    if (!(c > 0.0)) throw domain_error("tail needs c > 0");
    double acc = 0.0;
    for (int n = depth + 1; n < depth + 4096; ++n) {
        double e = b_rule(n) - c;
        if (e <= 0.0) return acc;
        acc += std::ldexp(2.0, n) * e;
    }
    throw capacity_error("EX2 tail did not converge within the iteration budget");
}

long ex3_m_index(const ExampleSpec& spec, int n) { return ex3_m_of(spec.m_scale, n); }

std::vector<std::pair<double, double>> ex3_image_bands(const ExampleSpec& spec) {
    std::vector<std::pair<double, double>> bands;
    for (int n = 0; n <= spec.depth; ++n) {
        double h = spec.a_rule(ex3_m_of(spec.m_scale, n));
        for (long k = 0; k < (1L << n); ++k) {
            double p = cantor_gap_value(n, k);
            bands.emplace_back(p, p + h);
        }
    }
    std::sort(bands.begin(), bands.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& b : bands) {
        if (!merged.empty() && b.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, b.second);
        else
            merged.push_back(b);
    }
    return merged;
}

double ex3_band_sum(const ExampleSpec& spec) {
    double acc = 0.0;
    for (int n = 0; n <= spec.depth; ++n)
        acc += std::ldexp(1.0, n) * spec.a_rule(ex3_m_of(spec.m_scale, n));
    return acc;
}

} // namespace pathcross
