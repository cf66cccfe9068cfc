#include "doctest.h"

#include <random>

#include "pathcross/examples.hpp"
#include "pathcross/variation.hpp"

using namespace pathcross;

namespace {

SampledPath step_values(std::vector<double> v) {
    std::vector<double> t(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) t[i] = static_cast<double>(i);
    return SampledPath(std::move(t), std::move(v), PathMode::StepCadlag);
}

SampledPath random_step(std::mt19937_64& rng, int max_n = 64) {
    std::uniform_int_distribution<int> len(1, max_n);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    int n = len(rng);
    std::vector<double> t(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        t[static_cast<std::size_t>(i)] = i;
        v[static_cast<std::size_t>(i)] = unif(rng);
    }
    return SampledPath(std::move(t), std::move(v), PathMode::StepCadlag);
}

} // namespace

TEST_CASE("upward truncated variation examples") {
    CHECK(upward_truncated_variation(step_values({0, 1, 0.2, 1.2}), 0.5) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(upward_truncated_variation(step_values({0, 1, 2, 3}), 0.5) ==
          doctest::Approx(2.5));
    // c at least the range kills every increment
    CHECK(upward_truncated_variation(step_values({0, 1, 0.2, 1.2}), 1.5) == 0.0);
    CHECK_THROWS_AS(upward_truncated_variation(step_values({0, 1}), -0.1), domain_error);
}

TEST_CASE("downward truncated variation examples") {
    CHECK(downward_truncated_variation(step_values({0, 1, 0.2, 1.2}), 0.5) ==
          doctest::Approx(0.3).epsilon(1e-13));
    CHECK(downward_truncated_variation(step_values({0, 1, 2, 3}), 0.5) == 0.0);
}

TEST_CASE("mirror symmetry dtv(x) = utv(-x)") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 100; ++rep) {
        auto p = random_step(rng);
        std::vector<double> neg(p.values());
        for (auto& x : neg) x = -x;
        SampledPath q(p.times(), std::move(neg), PathMode::StepCadlag);
        for (double c : {0.0, 0.3, 1.0})
            CHECK(downward_truncated_variation(p, c) ==
                  doctest::Approx(upward_truncated_variation(q, c)).epsilon(1e-14));
    }
}

TEST_CASE("tv examples and the decomposition") {
    auto r0 = truncated_variation(step_values({0, 1, 0, 1}), 0.0);
    CHECK(r0.tv == doctest::Approx(3.0));
    auto r1 = truncated_variation(step_values({0, 1, 0, 1}), 0.5);
    CHECK(r1.tv == doctest::Approx(1.5));
    CHECK(r1.tv == r1.utv + r1.dtv);
}

TEST_CASE("single sample and two sample oracle cases") {
    auto one = truncated_variation_oracle(SampledPath({0.0}, {4.0}, PathMode::StepCadlag), 0.5);
    CHECK(one.tv == 0.0);
    auto two = truncated_variation_oracle(step_values({0, 0.9}), 0.5);
    CHECK(two.utv == doctest::Approx(0.4));
    CHECK(two.dtv == 0.0);
}

TEST_CASE("oracle equivalence on random paths") {
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 200; ++rep) {
        auto p = random_step(rng);
        for (double c = 0.0; c <= 2.0; c += 0.25) {
            auto fast = truncated_variation(p, c);
            auto slow = truncated_variation_oracle(p, c);
            CHECK(std::abs(fast.utv - slow.utv) <= 1e-12);
            CHECK(std::abs(fast.dtv - slow.dtv) <= 1e-12);
        }
    }
}

TEST_CASE("oracle capacity guard") {
    std::vector<double> t(2501), v(2501, 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i);
    SampledPath big(std::move(t), std::move(v), PathMode::StepCadlag);
    CHECK_THROWS_AS(truncated_variation_oracle(big, 0.5), capacity_error);
}

TEST_CASE("superadditivity and near subadditivity over split points") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> cdist(0.05, 1.5);
    for (int rep = 0; rep < 200; ++rep) {
        auto p = random_step(rng, 40);
        if (p.size() < 5) continue;
        double c = cdist(rng);
        double u = p.horizon();
        double mid = p.times()[p.size() / 2];
        if (mid <= 0.0 || mid >= u) continue;
        double whole = truncated_variation(p, c, 0.0, u).tv;
        double left = truncated_variation(p, c, 0.0, mid).tv;
        double right = truncated_variation(p, c, mid, u).tv;
        CHECK(whole >= left + right - 1e-12);
        CHECK(whole <= left + right + c + 1e-12);
    }
}

TEST_CASE("tv is Lipschitz in c with constant n") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 50; ++rep) {
        auto p = random_step(rng, 48);
        double n = static_cast<double>(p.size());
        double prev = truncated_variation(p, 0.0).tv;
        for (double c = 0.02; c <= 1.0; c += 0.02) {
            double cur = truncated_variation(p, c).tv;
            CHECK(prev - cur <= n * 0.02 + 1e-12);
            CHECK(cur <= prev + 1e-12); // non-increasing in c
            prev = cur;
        }
    }
}

TEST_CASE("scaling equivariance TV^{Ac}(Ax) = A TV^c(x)") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> adist(0.1, 5.0);
    for (int rep = 0; rep < 50; ++rep) {
        auto p = random_step(rng, 32);
        double c = 0.4;
        // A = 2 is exact in floating point
        std::vector<double> scaled(p.values());
        for (auto& x : scaled) x *= 2.0;
        SampledPath p2(p.times(), std::move(scaled), PathMode::StepCadlag);
        CHECK(truncated_variation(p2, 2.0 * c).tv == 2.0 * truncated_variation(p, c).tv);

        double a = adist(rng);
        std::vector<double> scaled_a(p.values());
        for (auto& x : scaled_a) x *= a;
        SampledPath pa(p.times(), std::move(scaled_a), PathMode::StepCadlag);
        CHECK(truncated_variation(pa, a * c).tv ==
              doctest::Approx(a * truncated_variation(p, c).tv).epsilon(1e-12));
    }
}

TEST_CASE("profile grid and monotonicity") {
    auto p = step_values({0, 1, 0, 1, 0, 1});
    std::vector<double> cg{1.0, 0.5, 0.25};
    std::vector<double> tg{1.0, 3.0, 5.0};
    auto prof = truncated_variation_profile(p, cg, tg);
    REQUIRE(prof.size() == 3);
    REQUIRE(prof[0].size() == 3);
    for (std::size_t ci = 0; ci + 1 < cg.size(); ++ci)
        for (std::size_t ti = 0; ti < tg.size(); ++ti)
            CHECK(prof[ci][ti].tv <= prof[ci + 1][ti].tv + 1e-12); // smaller c, larger tv
    for (std::size_t ci = 0; ci < cg.size(); ++ci)
        for (std::size_t ti = 0; ti + 1 < tg.size(); ++ti)
            CHECK(prof[ci][ti].tv <= prof[ci][ti + 1].tv + 1e-12);
    CHECK(prof[1][2].tv == doctest::Approx(truncated_variation(p, 0.5, 0.0, 5.0).tv));
    CHECK_THROWS_AS(truncated_variation_profile(p, {}, tg), domain_error);
}

TEST_CASE("example 2 profile value matches the closed form") {
    ExampleSpec spec;
    spec.which = ExampleKind::Ex2;
    spec.b_rule = SequenceRule::parse("pow2");
    spec.depth = 12;
    auto x2 = example_path(spec);
    double tv = truncated_variation(x2, 0.25, 0.0, 1.0).tv;
    CHECK(tv == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(ex2_tv_closed_form(spec.b_rule, spec.depth, 0.25) == doctest::Approx(2.5));
}

TEST_CASE("normalization phi") {
    auto flat = SampledPath::constant(3.0, 2.0);
    CHECK(normalization_phi(flat, 0.5) == doctest::Approx(1.0));
    SampledPath p({0, 0.25, 0.5, 1.0}, {0, 1, 0, 1}, PathMode::StepCadlag);
    CHECK(normalization_phi(p, 0.5) == doctest::Approx(0.4));
    // horizon 3: the [0,1] window only sees the first rise
    auto long_p = step_values({0, 1, 0, 1});
    CHECK(normalization_phi(long_p, 0.5) == doctest::Approx(1.0 / 1.5));
    CHECK_THROWS_AS(normalization_phi(SampledPath::constant(0.0, 0.5), 0.5), domain_error);
}

TEST_CASE("phi times tv stays in [0,1)") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        auto p = random_step(rng, 32);
        if (p.horizon() < 1.0) continue;
        for (double c : {0.1, 0.5, 1.0}) {
            double phi = normalization_phi(p, c);
            double prod = phi * truncated_variation(p, c, 0.0, 1.0).tv;
            CHECK(prod >= 0.0);
            CHECK(prod < 1.0);
        }
    }
}
