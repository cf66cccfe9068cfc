#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pathcross/path.hpp"

namespace pathcross {

// Hitting times of the shifted grid c*Z + r by a continuous path, together
// with the grid values attained. tau_values[k] lies on the grid for k >= 1;
// consecutive values differ by exactly c from the second hit on.
struct LebesguePartition {
    double c = 0.0;
    double r = 0.0;
    std::vector<double> taus;       // taus[0] = 0
    std::vector<double> tau_values; // tau_values[0] = x_0
};

// psi: [0, inf) -> [0, inf), psi(0) = 0, non-decreasing, continuous at 0.
class PsiSpec {
public:
    static PsiSpec power(double p);
    static PsiSpec custom(std::vector<double> points_u, std::vector<double> points_psi);
    double operator()(double u) const;
    double power_exponent() const { return p_; } // NaN for custom tables

private:
    double p_ = 2.0;
    bool is_power_ = true;
    std::vector<double> us_, psis_;
};

LebesguePartition build_partition(const SampledPath& path, double c, double r,
                                  double horizon);

// k^{c,r}(t): index of the last hitting time <= t.
long k_count(const LebesguePartition& partition, double t);

double psi_variation(const SampledPath& path, const LebesguePartition& partition,
                     const PsiSpec& psi, double t);

// Midpoint-rule average of psi-variations over the shifts r = gamma*c,
// gamma = (j + 1/2) / n_shifts.
double mean_psi_variation(const SampledPath& path, double c, const PsiSpec& psi,
                          double t, int n_shifts);

// V^{b_N, gamma*b_N}_p(x, [0, t]) for every pitch in b_seq.
std::vector<double> pvar_along_lebesgue(const SampledPath& path, int p, double gamma,
                                        std::span<const double> b_seq, double t);

// Streaming form: invokes visit(tau, value) for each hit in time order,
// excluding the seed (0, x_0). Used by the heavier sweeps.
void walk_partition(const SampledPath& path, double c, double r, double horizon,
                    const std::function<void(double, double)>& visit);

} // namespace pathcross
