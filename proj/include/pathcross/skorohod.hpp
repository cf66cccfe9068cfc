#pragma once

#include "pathcross/path.hpp"

namespace pathcross {

// Solution of the two-sided Skorohod problem on constant barriers
// [alpha, beta]: phi stays inside the band, eta_d/eta_u are the
// non-decreasing pushes at the lower/upper barrier, and
// phi = x + (eta_d - eta_u) + (phi0 - x_0) at every sample time.
// regularization = x - phi, the bounded-variation companion of x.
struct SkorohodSolution {
    SampledPath phi;
    SampledPath eta_d;
    SampledPath eta_u;
    SampledPath regularization;
    double alpha;
    double beta;
    double phi0;
};

SkorohodSolution skorohod_map(const SampledPath& path, double alpha, double beta,
                              double phi0);

// Starting deviation phi0 for barriers [-c/2, c/2] such that the pushes
// reproduce the truncated variations exactly: eta_u(t) = UTV^c(x,[0,t]) and
// eta_d(t) = DTV^c(x,[0,t]) at every sample time.
double matched_start(const SampledPath& path, double c);

SkorohodSolution regularize_full(const SampledPath& path, double c);
SampledPath regularize(const SampledPath& path, double c);

} // namespace pathcross
