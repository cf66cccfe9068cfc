#include "doctest.h"

#include <cmath>
#include <random>

#include "pathcross/crossings.hpp"
#include "pathcross/examples.hpp"
#include "pathcross/lebesgue.hpp"
#include "pathcross/variation.hpp"

using namespace pathcross;

namespace {

SampledPath random_zigzag(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> unif(-1.5, 1.5);
    std::vector<double> t(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        t[static_cast<std::size_t>(i)] = i;
        v[static_cast<std::size_t>(i)] = unif(rng);
    }
    return SampledPath(std::move(t), std::move(v), PathMode::PiecewiseLinear);
}

} // namespace

TEST_CASE("partition of the unit zigzag") {
    SampledPath zig({0, 1, 2}, {0, 1, 0}, PathMode::PiecewiseLinear);
    auto part = build_partition(zig, 0.5, 0.0, 2.0);
    REQUIRE(part.taus.size() == 5);
    CHECK(part.taus[1] == doctest::Approx(0.5));
    CHECK(part.taus[2] == doctest::Approx(1.0));
    CHECK(part.taus[3] == doctest::Approx(1.5));
    CHECK(part.taus[4] == doctest::Approx(2.0));
    CHECK(part.tau_values[2] == doctest::Approx(1.0));
    CHECK(k_count(part, 2.0) == 4);
    CHECK(k_count(part, 0.4) == 0);
    CHECK(k_count(part, 1.0) == 2);
}

TEST_CASE("partition with a coarse grid never leaves the start") {
    SampledPath zig({0, 1, 2}, {0, 1, 0}, PathMode::PiecewiseLinear);
    auto part = build_partition(zig, 2.0, 0.0, 2.0);
    CHECK(part.taus.size() == 1);
    CHECK(k_count(part, 2.0) == 0);
}

TEST_CASE("shifted grid hits on a ramp") {
    SampledPath ramp({0, 1}, {0, 1}, PathMode::PiecewiseLinear);
    auto part = build_partition(ramp, 0.25, 0.1, 1.0);
    REQUIRE(part.taus.size() == 5);
    CHECK(part.tau_values[1] == doctest::Approx(0.1));
    CHECK(part.tau_values[2] == doctest::Approx(0.35));
    CHECK(part.tau_values[3] == doctest::Approx(0.6));
    CHECK(part.tau_values[4] == doctest::Approx(0.85));
}

TEST_CASE("partition rejects step paths and bad shifts") {
    SampledPath st({0, 1}, {0, 1}, PathMode::StepCadlag);
    CHECK_THROWS_AS(build_partition(st, 0.5, 0.0, 1.0), domain_error);
    SampledPath zig({0, 1}, {0, 1}, PathMode::PiecewiseLinear);
    CHECK_THROWS_AS(build_partition(zig, 0.5, 0.5, 1.0), domain_error);
    CHECK_THROWS_AS(build_partition(zig, 0.0, 0.0, 1.0), domain_error);
}

TEST_CASE("grid-step property on random zigzags") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        auto p = random_zigzag(rng, 40);
        double c = 0.17;
        std::uniform_real_distribution<double> rdist(0.0, c * 0.999);
        auto part = build_partition(p, c, rdist(rng), p.horizon());
        for (std::size_t k = 2; k < part.tau_values.size(); ++k)
            CHECK(std::abs(std::abs(part.tau_values[k] - part.tau_values[k - 1]) - c) <=
                  1e-12);
        for (std::size_t k = 1; k < part.taus.size(); ++k)
            CHECK(part.taus[k] > part.taus[k - 1]);
    }
}

TEST_CASE("psi variation of the zigzag") {
    SampledPath zig({0, 1, 2}, {0, 1, 0}, PathMode::PiecewiseLinear);
    auto part = build_partition(zig, 0.5, 0.0, 2.0);
    auto psi2 = PsiSpec::power(2.0);
    CHECK(psi_variation(zig, part, psi2, 2.0) == doctest::Approx(1.0));
    CHECK(psi_variation(zig, part, psi2, 0.0) == 0.0);
    // psi = POWER(1): V <= (k+1) c
    auto psi1 = PsiSpec::power(1.0);
    double v1 = psi_variation(zig, part, psi1, 2.0);
    CHECK(v1 <= (k_count(part, 2.0) + 1) * 0.5 + 1e-12);
}

TEST_CASE("bracket (k-1)psi(c) <= V <= (k+1)psi(c)") {
    std::mt19937_64 rng(5);
    auto psi = PsiSpec::power(2.0);
    for (int rep = 0; rep < 50; ++rep) {
        auto p = random_zigzag(rng, 30);
        double c = 0.23, r = 0.11;
        auto part = build_partition(p, c, r, p.horizon());
        for (double t : {p.horizon() * 0.3, p.horizon() * 0.7, p.horizon()}) {
            double v = psi_variation(p, part, psi, t);
            double k = static_cast<double>(k_count(part, t));
            double pc = psi(c);
            CHECK(v >= (k - 1.0) * pc - 1e-12);
            CHECK(v <= (k + 1.0) * pc + 1e-12);
        }
    }
}

TEST_CASE("crossing counts bracket the hit count") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        auto p = random_zigzag(rng, 24);
        double c = 0.31, r = 0.05;
        double t = p.horizon();
        auto part = build_partition(p, c, r, t);
        long k = k_count(part, t);
        // sum over bands [pc + r, (p+1)c + r]
        long pmin = static_cast<long>(std::floor((p.min_value() - r) / c)) - 2;
        long pmax = static_cast<long>(std::ceil((p.max_value() - r) / c)) + 2;
        long upper = 0, lower = 0;
        double c0 = c * 0.98;
        for (long band = pmin; band <= pmax; ++band) {
            double y = static_cast<double>(band) * c + c / 2.0 + r;
            upper += crossings(p, y, c).total;
            lower += crossings(p, y, c0).total;
        }
        CHECK(upper <= k);
        CHECK(lower >= k - 1);
    }
}

TEST_CASE("custom psi tables") {
    auto psi = PsiSpec::custom({0.0, 1.0, 2.0}, {0.0, 3.0, 4.0});
    CHECK(psi(0.0) == 0.0);
    CHECK(psi(0.5) == doctest::Approx(1.5));
    CHECK(psi(1.5) == doctest::Approx(3.5));
    CHECK(psi(3.0) == doctest::Approx(5.0)); // extrapolated last slope
    CHECK_THROWS_AS(PsiSpec::custom({0.0, 1.0}, {1.0, 2.0}), domain_error);
    CHECK_THROWS_AS(PsiSpec::power(0.5), domain_error);
}

TEST_CASE("mean psi variation sandwich on an oscillating path") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> step(0.0, 0.1);
    std::vector<double> t, v;
    t.push_back(0.0);
    v.push_back(0.0);
    for (int i = 1; i <= 512; ++i) {
        t.push_back(i / 512.0);
        v.push_back(v.back() + step(rng));
    }
    SampledPath p(std::move(t), std::move(v), PathMode::PiecewiseLinear);
    double c = 0.12, horizon = 1.0;
    auto psi = PsiSpec::power(2.0);
    double mean = mean_psi_variation(p, c, psi, horizon, 32);
    double tv = truncated_variation(p, c, 0.0, horizon).tv;
    double pc = psi(c);
    double slack = pc; // midpoint-rule shift quadrature allowance
    CHECK(mean >= (pc / c) * tv - pc - slack);
    CHECK(mean <= (pc / c) * tv + 2.0 * pc + slack);
    CHECK_THROWS_AS(mean_psi_variation(p, c, psi, horizon, 4), domain_error);
}

TEST_CASE("mean psi variation of a constant path is zero") {
    auto p = SampledPath::constant(1.0, 2.0, PathMode::PiecewiseLinear);
    CHECK(mean_psi_variation(p, 0.3, PsiSpec::power(2.0), 2.0, 8) == 0.0);
}

TEST_CASE("pth variation along dyadic Lebesgue partitions of the tent path") {
    // dyadic tent heights; the p = 2 limits are 4 (interior shift) and 12
    // (zero shift)
    ExampleSpec spec;
    spec.which = ExampleKind::Ex2;
    spec.b_rule = SequenceRule::parse("pow2floor:2");
    const int N = 12;
    spec.depth = N + 2;
    auto x2 = example_path(spec);
    std::vector<double> b_seq{std::ldexp(1.0, -(N / 2))};
    auto v_half = pvar_along_lebesgue(x2, 2, 0.5, b_seq, 1.0);
    REQUIRE(v_half.size() == 1);
    CHECK(v_half[0] == doctest::Approx(4.0).epsilon(0.10));
    auto v_zero = pvar_along_lebesgue(x2, 2, 0.0, b_seq, 1.0);
    CHECK(v_zero[0] == doctest::Approx(12.0).epsilon(0.10));
}

TEST_CASE("pvar input validation") {
    SampledPath zig({0, 1, 2}, {0, 1, 0}, PathMode::PiecewiseLinear);
    std::vector<double> b{0.5};
    CHECK_THROWS_AS(pvar_along_lebesgue(zig, 1, 0.5, b, 2.0), domain_error);
    CHECK_THROWS_AS(pvar_along_lebesgue(zig, 2, 1.0, b, 2.0), domain_error);
}
