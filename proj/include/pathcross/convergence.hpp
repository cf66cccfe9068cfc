#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pathcross/examples.hpp"
#include "pathcross/simulate.hpp"
#include "pathcross/test_functions.hpp"

namespace pathcross {

// Smallest c for which per-path statistics are reported: coarser sampling
// under-resolves the band exits, so c >= k_res * (horizon/n)^beta with
// k_res = 8.
double resolution_floor(const ProcessSpec& spec);
inline constexpr double kResolutionFactor = 8.0;

struct ScalingCurve {
    std::vector<double> c_grid;
    std::vector<double> stat_mean;
    std::vector<double> stat_stderr;
    std::vector<std::vector<double>> per_path; // per c, raw normalized statistics
    std::size_t n_paths = 0;
    std::size_t n_samples = 0;
    double t = 0.0;
    double beta = 0.0;
    std::string normalization; // "c^{1/beta-1}" or "phi"
    double floor = 0.0;
};

// Mean/stderr of c^{1/beta-1} * TV^c(X, [0,t]) over seeded Monte Carlo paths.
ScalingCurve tv_scaling_curve(const ProcessSpec& spec, std::span<const double> c_grid,
                              double t, int n_paths, int threads);

// Deterministic variant: phi(c) * TV^c(x, [0,t]) with the self-normalization
// phi(c) = 1/(1 + TV^c(x, [0,1])); no Monte Carlo, no resolution floor.
ScalingCurve example_scaling_curve(const SampledPath& path, std::span<const double> c_grid,
                                   double t);

struct CBracket {
    int n = 0;
    double lower = 0.0;   // mean TV^1(X,[0,n]) / n
    double upper = 0.0;   // lower + 1/n
    double stderr_ = 0.0; // Monte Carlo error of lower
    int n_paths = 0;
};

// Bracket sequence for the scaling constant via E TV^1(X,[0,n])/n.
std::vector<CBracket> estimate_C(const ProcessSpec& spec, int n_max, int n_paths,
                                 std::size_t steps_per_unit, int threads);

struct WeakGapRow {
    double c = 0.0;
    double value = 0.0;     // normalized crossing-measure integral (mean over paths)
    double reference = 0.0; // limit candidate (mean over paths)
    double gap = 0.0;       // |value - reference| (mean over paths)
};

// Deterministic weak-convergence table: per c, phi(c)-normalized crossing
// integral at horizon t against a closed-form reference.
std::vector<WeakGapRow> deterministic_weak_rows(const SampledPath& path,
                                                std::span<const double> c_grid,
                                                const TestFunction& g, double t,
                                                const std::function<double(double)>& reference);

// Stochastic variant: per c, mean over paths of
// |c^{1/beta-1} int n^{y,c} g dy - int_0^t g(X_s) ds|.
std::vector<WeakGapRow> process_weak_rows(const ProcessSpec& spec,
                                          std::span<const double> c_grid,
                                          const TestFunction& g, double t, int n_paths,
                                          int threads);

struct L1Row {
    double c = 0.0;
    double integral_off_bands = 0.0; // phi(c) int_{[0,1]\B} n^{y,c} dy
    double complement_measure = 0.0; // |[0,1] \ B|
    double bound = 0.0;              // 1 - sum 2^n a_{m_n} (truncated)
};

std::vector<L1Row> l1_counterexample(const ExampleSpec& spec, std::span<const double> c_grid);

// Two-sample Kolmogorov-Smirnov machinery for the self-similarity checks.
double ks_statistic(std::vector<double> a, std::vector<double> b);
double ks_critical(double alpha, std::size_t n, std::size_t m);

} // namespace pathcross
