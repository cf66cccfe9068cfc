#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pathcross/errors.hpp"

namespace pathcross {

enum class PathMode { StepCadlag, PiecewiseLinear };

std::string to_string(PathMode mode);
PathMode path_mode_from_string(const std::string& name);

struct JumpRecord {
    double time;
    double delta; // x_s - x_{s-}, nonzero
};

// Immutable finite-sample real path on [0, horizon]. STEP_CADLAG paths are
// constant on [t_i, t_{i+1}) with value v_i; PIECEWISE_LINEAR paths
// interpolate the samples and are continuous.
class SampledPath {
public:
    SampledPath(std::vector<double> times, std::vector<double> values, PathMode mode);

    static SampledPath constant(double value, double horizon,
                                PathMode mode = PathMode::StepCadlag);

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }
    PathMode mode() const { return mode_; }
    std::size_t size() const { return times_.size(); }
    double horizon() const { return times_.back(); }

    double eval(double t) const;
    double left_limit(double t) const;
    std::vector<JumpRecord> jumps() const;
    SampledPath restrict_to(double s, double t) const;

    // Sample values seen on [s, t] in time order, including the interpolated
    // boundary values. This is the value sequence of restrict_to(s, t).
    std::vector<double> values_on(double s, double t) const;

    double min_value() const;
    double max_value() const;

    // Largest i with times[i] <= t. Requires t in [0, horizon].
    std::size_t index_at(double t) const;

private:
    std::vector<double> times_;
    std::vector<double> values_;
    PathMode mode_;
};

// CSV format: header "t,x", one sample per line, 17 significant digits.
// The interpolation mode travels out-of-band (flag or JSON sidecar).
SampledPath read_path_csv(const std::string& file, PathMode mode);
void write_path_csv(const SampledPath& path, const std::string& file);

// Sidecar "<csv file>.json" holding {"mode":"step"|"linear"}.
std::string sidecar_name(const std::string& csv_file);
std::optional<PathMode> read_mode_sidecar(const std::string& csv_file);
void write_mode_sidecar(const SampledPath& path, const std::string& csv_file);

} // namespace pathcross
