#include "doctest.h"

#include <random>

#include "pathcross/occupation.hpp"
#include "pathcross/variation.hpp"

using namespace pathcross;

TEST_CASE("occupation density of the unit ramp") {
    SampledPath ramp({0, 1}, {0, 1}, PathMode::PiecewiseLinear);
    std::vector<double> edges{0.0, 1.0};
    auto est = occupation_density(ramp, 1.0, edges);
    REQUIRE(est.density.size() == 1);
    CHECK(est.density[0] == doctest::Approx(1.0));
}

TEST_CASE("occupation density of a constant step path") {
    SampledPath flat({0, 2}, {0.7, 0.7}, PathMode::StepCadlag);
    std::vector<double> edges{0.0, 0.5, 1.0};
    auto est = occupation_density(flat, 2.0, edges);
    CHECK(est.density[0] == 0.0);
    CHECK(est.density[1] == doctest::Approx(4.0)); // 2 time units / width 0.5
}

TEST_CASE("occupation density of the zigzag") {
    SampledPath zig({0, 1, 2}, {0, 1, 0}, PathMode::PiecewiseLinear);
    std::vector<double> edges{0.0, 0.5, 1.0};
    auto est = occupation_density(zig, 2.0, edges);
    CHECK(est.density[0] == doctest::Approx(2.0));
    CHECK(est.density[1] == doctest::Approx(2.0));
}

TEST_CASE("density conserves total time") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        int n = 2 + static_cast<int>(rng() % 40);
        std::vector<double> t(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            t[static_cast<std::size_t>(i)] = i;
            v[static_cast<std::size_t>(i)] = unif(rng);
        }
        PathMode mode = (rep % 2) ? PathMode::StepCadlag : PathMode::PiecewiseLinear;
        SampledPath p(std::move(t), std::move(v), mode);
        std::vector<double> edges;
        for (int e = 0; e <= 37; ++e)
            edges.push_back(-2.1 + 4.3 * e / 37.0);
        double horizon = p.horizon() * 0.83;
        auto est = occupation_density(p, horizon, edges);
        double total = 0.0;
        for (std::size_t i = 0; i < est.density.size(); ++i)
            total += est.density[i] * (est.bin_edges[i + 1] - est.bin_edges[i]);
        CHECK(total == doctest::Approx(horizon).epsilon(1e-9));
    }
}

TEST_CASE("density rejects bad bins") {
    SampledPath ramp({0, 1}, {0, 1}, PathMode::PiecewiseLinear);
    std::vector<double> unsorted{0.0, -1.0, 1.0};
    CHECK_THROWS_AS(occupation_density(ramp, 1.0, unsorted), domain_error);
    std::vector<double> short_cover{0.2, 1.0};
    CHECK_THROWS_AS(occupation_density(ramp, 1.0, short_cover), domain_error);
}

TEST_CASE("occupation integral closed forms") {
    SampledPath ramp({0, 1}, {0, 1}, PathMode::PiecewiseLinear);
    CHECK(occupation_integral(ramp, 1.0, TestFunction::polynomial({0.0, 1.0})) ==
          doctest::Approx(0.5));
    CHECK(occupation_integral(ramp, 1.0, TestFunction::polynomial({1.0})) ==
          doctest::Approx(1.0));
    SampledPath zig({0, 1, 2}, {0, 1, 0}, PathMode::PiecewiseLinear);
    CHECK(occupation_integral(zig, 2.0, TestFunction::polynomial({0.0, 0.0, 1.0})) ==
          doctest::Approx(2.0 / 3.0));
    // step path: dwell times weight the values
    SampledPath st({0, 1, 3}, {2.0, 5.0, 1.0}, PathMode::StepCadlag);
    CHECK(occupation_integral(st, 3.0, TestFunction::polynomial({0.0, 1.0})) ==
          doctest::Approx(2.0 + 2.0 * 5.0));
}

TEST_CASE("occupation integral matches the binned density in the limit") {
    SampledPath zig({0, 0.5, 1.2, 2}, {0, 0.9, -0.4, 0.6}, PathMode::PiecewiseLinear);
    auto g = TestFunction::polynomial({0.3, -1.0, 0.5});
    double exact = occupation_integral(zig, 2.0, g);
    double prev_gap = 1e100;
    for (int bins : {20, 200, 2000}) {
        std::vector<double> edges;
        for (int e = 0; e <= bins; ++e)
            edges.push_back(-0.45 + (0.95 + 0.45) * e / bins);
        auto est = occupation_density(zig, 2.0, edges);
        double acc = 0.0;
        for (std::size_t i = 0; i < est.density.size(); ++i) {
            double mid = 0.5 * (est.bin_edges[i] + est.bin_edges[i + 1]);
            acc += g(mid) * est.density[i] * (est.bin_edges[i + 1] - est.bin_edges[i]);
        }
        double gap = std::abs(acc - exact);
        CHECK(gap <= prev_gap + 1e-12);
        prev_gap = gap;
    }
    CHECK(prev_gap < 1e-4);
}

TEST_CASE("crossing measure integral with unit g recovers phi tv") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> t{0}, v{0};
    for (int i = 1; i <= 64; ++i) {
        t.push_back(i / 64.0);
        v.push_back(unif(rng));
    }
    SampledPath p(std::move(t), std::move(v), PathMode::PiecewiseLinear);
    auto g1 = TestFunction::polynomial({1.0});
    for (double c : {0.5, 0.1}) {
        double phi = normalization_phi(p, c);
        double lhs = crossing_measure_integral(p, 1.0, c, phi, g1);
        double rhs = phi * truncated_variation(p, c, 0.0, 1.0).tv;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("weak gap against itself is zero and against a ramp reference") {
    SampledPath ramp({0, 1}, {0, 1}, PathMode::PiecewiseLinear);
    auto g1 = TestFunction::polynomial({1.0});
    std::vector<double> ts{0.25, 0.5, 1.0};
    double c = 0.01;
    double self_gap = weak_gap(ramp, ts, c, 1.0, g1, [&](double t) {
        return crossing_measure_integral(ramp, t, c, 1.0, g1);
    });
    CHECK(self_gap == 0.0);
    // for the ramp, int n^{y,c} dy = TV^c = (t - c)_+ exactly
    double gap = weak_gap(ramp, ts, c, 1.0, g1,
                          [&](double t) { return std::max(t - c, 0.0); });
    CHECK(gap <= 1e-12);
}
