#include "doctest.h"

#include <random>

#include "pathcross/crossings.hpp"
#include "pathcross/skorohod.hpp"
#include "pathcross/variation.hpp"

using namespace pathcross;

namespace {

SampledPath step_values(std::vector<double> v) {
    std::vector<double> t(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) t[i] = static_cast<double>(i);
    return SampledPath(std::move(t), std::move(v), PathMode::StepCadlag);
}

SampledPath random_path(std::mt19937_64& rng, int max_n = 64) {
    std::uniform_int_distribution<int> len(2, max_n);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    std::bernoulli_distribution mode(0.5);
    int n = len(rng);
    std::vector<double> t(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        t[static_cast<std::size_t>(i)] = i;
        v[static_cast<std::size_t>(i)] = unif(rng);
    }
    return SampledPath(std::move(t), std::move(v),
                       mode(rng) ? PathMode::StepCadlag : PathMode::PiecewiseLinear);
}

} // namespace

TEST_CASE("skorohod map hand example") {
    auto x = step_values({0, 1, 0.2});
    auto sol = skorohod_map(x, -0.25, 0.25, 0.0);
    CHECK(sol.phi.values()[0] == 0.0);
    CHECK(sol.phi.values()[1] == doctest::Approx(0.25));
    CHECK(sol.phi.values()[2] == doctest::Approx(-0.25));
    CHECK(sol.regularization.values()[0] == doctest::Approx(0.0));
    CHECK(sol.regularization.values()[1] == doctest::Approx(0.75));
    CHECK(sol.regularization.values()[2] == doctest::Approx(0.45));
    CHECK_THROWS_AS(skorohod_map(x, 0.5, 0.5, 0.5), domain_error);
    CHECK_THROWS_AS(skorohod_map(x, -0.25, 0.25, 0.3), domain_error);
}

TEST_CASE("no reflection when increments stay inside the band") {
    auto x = step_values({0, 0.1, -0.1, 0.05});
    auto sol = skorohod_map(x, -0.5, 0.5, 0.0);
    CHECK(sol.eta_d.values().back() == 0.0);
    CHECK(sol.eta_u.values().back() == 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(sol.phi.values()[i] == doctest::Approx(x.values()[i]));
}

TEST_CASE("monotone path: upper push equals the truncated rise") {
    auto x = step_values({0, 0.5, 1.2, 2.0});
    double c = 0.5;
    auto sol = regularize_full(x, c);
    CHECK(sol.eta_u.values().back() ==
          doctest::Approx(upward_truncated_variation(x, c)).epsilon(1e-12));
    CHECK(sol.eta_d.values().back() == doctest::Approx(0.0));
}

TEST_CASE("pushes reproduce the truncated variations at every prefix") {
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 100; ++rep) {
        auto x = random_path(rng, 40);
        for (double c : {0.2, 0.7, 1.8}) {
            auto sol = regularize_full(x, c);
            for (std::size_t i = 1; i < x.size(); ++i) {
                double t = x.times()[i];
                CHECK(sol.eta_u.values()[i] ==
                      doctest::Approx(upward_truncated_variation(x, c, 0.0, t))
                          .epsilon(1e-9));
                CHECK(sol.eta_d.values()[i] ==
                      doctest::Approx(downward_truncated_variation(x, c, 0.0, t))
                          .epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("telescoping: x^c increment equals UTV^c - DTV^c") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 200; ++rep) {
        auto x = random_path(rng);
        for (double c : {0.3, 0.9, 2.5}) {
            auto xc = regularize(x, c);
            auto r = truncated_variation(x, c);
            CHECK(xc.values().back() - xc.values().front() ==
                  doctest::Approx(r.utv - r.dtv).epsilon(1e-9));
        }
    }
}

TEST_CASE("complementarity: pushes only at the touched barrier") {
    std::mt19937_64 rng(44);
    for (int rep = 0; rep < 100; ++rep) {
        auto x = random_path(rng);
        double c = 0.6;
        auto sol = regularize_full(x, c);
        for (std::size_t i = 1; i < x.size(); ++i) {
            double dd = sol.eta_d.values()[i] - sol.eta_d.values()[i - 1];
            double du = sol.eta_u.values()[i] - sol.eta_u.values()[i - 1];
            if (dd > 0.0) CHECK(sol.phi.values()[i] == doctest::Approx(sol.alpha).epsilon(1e-12));
            if (du > 0.0) CHECK(sol.phi.values()[i] == doctest::Approx(sol.beta).epsilon(1e-12));
            CHECK(!(dd > 0.0 && du > 0.0));
        }
    }
}

TEST_CASE("uniform closeness of the regularization") {
    std::mt19937_64 rng(45);
    for (int rep = 0; rep < 100; ++rep) {
        auto x = random_path(rng);
        double c = 0.8;
        auto xc = regularize(x, c);
        for (std::size_t i = 0; i < x.size(); ++i)
            CHECK(std::abs(x.values()[i] - xc.values()[i]) <= c / 2.0 + 1e-12);
    }
}

TEST_CASE("constant path regularizes to a constant") {
    auto x = SampledPath::constant(2.0, 3.0);
    auto xc = regularize(x, 0.5);
    for (double v : xc.values()) CHECK(v == doctest::Approx(xc.values()[0]));
    CHECK_THROWS_AS(regularize(x, 0.0), domain_error);
}

TEST_CASE("total variation of x^c vs UTV bound") {
    // [0,1,0,1] with c = 0.5: x^c has total variation TV^c = 1.5
    SampledPath x({0, 1, 2, 3}, {0, 1, 0, 1}, PathMode::StepCadlag);
    double c = 0.5;
    auto xc = regularize(x, c);
    auto total = truncated_variation(xc, 0.0);
    CHECK(total.tv == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(total.utv <= upward_truncated_variation(x, c) + c + 1e-12);
}

TEST_CASE("UTV of the regularization is at most UTV^c + c") {
    std::mt19937_64 rng(46);
    for (int rep = 0; rep < 200; ++rep) {
        auto x = random_path(rng);
        for (double c : {0.25, 0.75, 1.5}) {
            auto xc = regularize(x, c);
            CHECK(upward_truncated_variation(xc, 0.0) <=
                  upward_truncated_variation(x, c) + c + 1e-12);
        }
    }
}

TEST_CASE("crossing transfer between x and its regularization") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> level(-2.2, 2.2);
    for (int rep = 0; rep < 100; ++rep) {
        auto x = random_path(rng);
        for (double c : {0.3, 1.1}) {
            auto xc = regularize(x, c);
            for (int k = 0; k < 8; ++k) {
                double z = level(rng);
                long a = upcrossings(x, z, c);
                long b = level_upcrossings(xc, z);
                CHECK(std::abs(a - b) <= 1);
            }
        }
    }
}
