#pragma once

#include <span>
#include <vector>

#include "pathcross/path.hpp"

namespace pathcross {

struct VariationResult {
    double c = 0.0;
    double utv = 0.0;
    double dtv = 0.0;
    double tv = 0.0; // always utv + dtv
    double from_time = 0.0;
    double to_time = 0.0;
};

// Single-pass upward truncated variation of a value sequence:
// sup over non-overlapping index pairs u < v of sums of (x_v - x_u - c)_+.
double upward_variation_of_values(std::span<const double> values, double c);

double upward_truncated_variation(const SampledPath& path, double c);
double upward_truncated_variation(const SampledPath& path, double c, double s, double t);
double downward_truncated_variation(const SampledPath& path, double c);
double downward_truncated_variation(const SampledPath& path, double c, double s, double t);

VariationResult truncated_variation(const SampledPath& path, double c);
VariationResult truncated_variation(const SampledPath& path, double c, double s, double t);

// Quadratic-time dynamic program over all index pairs; independent check of
// the single-pass recurrence. Capacity-limited to 2000 samples.
VariationResult truncated_variation_oracle(const SampledPath& path, double c);
VariationResult truncated_variation_oracle(const SampledPath& path, double c,
                                           double s, double t);

// TV^c(x, [0, t]) for every (c, t) in the given grids. Row i corresponds to
// c_grid[i], column j to t_grid[j].
std::vector<std::vector<VariationResult>>
truncated_variation_profile(const SampledPath& path, std::span<const double> c_grid,
                            std::span<const double> t_grid);

// phi(c) = 1 / (1 + TV^c(x, [0,1])), the self-normalization for paths with
// diverging total variation on [0,1].
double normalization_phi(const SampledPath& path, double c);

// Incremental scan exposing UTV/DTV of every prefix of a value stream.
class VariationScan {
public:
    explicit VariationScan(double c);
    void feed(double value);
    double utv() const { return up_closed_; }
    double dtv() const { return down_closed_; }
    double tv() const { return up_closed_ + down_closed_; }

private:
    double c_;
    bool started_ = false;
    double up_open_ = 0.0, up_closed_ = 0.0;
    double down_open_ = 0.0, down_closed_ = 0.0;
};

} // namespace pathcross
