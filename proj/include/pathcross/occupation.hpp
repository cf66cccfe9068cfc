#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pathcross/path.hpp"
#include "pathcross/test_functions.hpp"

namespace pathcross {

// Binned occupation-measure density over a level grid at horizon t:
// density[i] * (bin_edges[i+1] - bin_edges[i]) is the time spent with the
// path value in bin i; densities sum-integrate back to t.
struct LocalTimeEstimate {
    double t = 0.0;
    std::vector<double> bin_edges;
    std::vector<double> density;
};

LocalTimeEstimate occupation_density(const SampledPath& path, double t,
                                     std::span<const double> bin_edges);

// Exact int_0^t g(x_s) ds via closed-form integration over steps/segments.
double occupation_integral(const SampledPath& path, double t, const TestFunction& g);

// phi(c) * int_R n^{y,c}(x, [0,t]) g(y) dy, the normalized crossing-measure
// integral whose c -> 0 behaviour the convergence experiments track.
double crossing_measure_integral(const SampledPath& path, double t, double c,
                                 double phi_of_c, const TestFunction& g);

// Max over the t grid of |crossing measure integral - reference(t)|.
double weak_gap(const SampledPath& path, std::span<const double> t_grid, double c,
                double phi_of_c, const TestFunction& g,
                const std::function<double(double)>& reference);

} // namespace pathcross
