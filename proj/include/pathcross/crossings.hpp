#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pathcross/path.hpp"
#include "pathcross/test_functions.hpp"

namespace pathcross {

struct CrossingRecord {
    double y = 0.0;
    double c = 0.0;
    double from_time = 0.0;
    double to_time = 0.0;
    long up = 0;
    long down = 0;
    long total = 0; // up + down
};

// Interval crossings of the band [y - c/2, y + c/2] with the stopping-time
// convention: the upper barrier test is inclusive (>=), the lower strict (<).
long downcrossings(const SampledPath& path, double y, double c);
long downcrossings(const SampledPath& path, double y, double c, double s, double t);
long upcrossings(const SampledPath& path, double y, double c);
long upcrossings(const SampledPath& path, double y, double c, double s, double t);
CrossingRecord crossings(const SampledPath& path, double y, double c);
CrossingRecord crossings(const SampledPath& path, double y, double c, double s, double t);

// c -> 0 limits: strict sign-change passages across the level y.
long level_upcrossings(const SampledPath& path, double y);
long level_upcrossings(const SampledPath& path, double y, double s, double t);
long level_downcrossings(const SampledPath& path, double y);
long level_downcrossings(const SampledPath& path, double y, double s, double t);

// Raw machines on a value sequence (time order). Down: arm at v >= hi,
// count at v < lo. Up: arm at v <= lo', count at v > hi'.
long downcross_count_values(std::span<const double> values, double lo, double hi);
long upcross_count_values(std::span<const double> values, double lo, double hi);

// Exact piecewise-constant profile of y -> n^{y,c}: counts[i] is the crossing
// number for every y in (breakpoints[i], breakpoints[i+1]); zero outside.
struct IndicatrixProfile {
    double c = 0.0;
    double from_time = 0.0;
    double to_time = 0.0;
    std::vector<double> breakpoints;
    std::vector<long> counts; // size = breakpoints.size() - 1, empty profile allowed
};

IndicatrixProfile indicatrix(const SampledPath& path, double c);
IndicatrixProfile indicatrix(const SampledPath& path, double c, double s, double t);

double profile_integral(const IndicatrixProfile& profile, const TestFunction& g);
// Lebesgue integral of the profile over a union of disjoint level intervals.
double profile_integral_over(const IndicatrixProfile& profile,
                             std::span<const std::pair<double, double>> intervals);

double indicatrix_integral(const SampledPath& path, double c, const TestFunction& g);
double indicatrix_integral(const SampledPath& path, double c, const TestFunction& g,
                           double s, double t);

// Both sides of the indicatrix/variation decomposition for piecewise
// monotone paths: lhs integrates g against the level (up|down)crossing
// counts, rhs combines the Lebesgue-Stieltjes measure of the one-sided
// variation with the jump correction terms.
struct BanachVitaliResult {
    double lhs = 0.0;
    double rhs = 0.0;
};

BanachVitaliResult banach_vitali_upcross(const SampledPath& path, const TestFunction& g,
                                         double t);
BanachVitaliResult banach_vitali_downcross(const SampledPath& path, const TestFunction& g,
                                           double t);

} // namespace pathcross
