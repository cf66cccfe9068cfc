#include "pathcross/skorohod.hpp"

#include <algorithm>
#include <cmath>

namespace pathcross {

SkorohodSolution skorohod_map(const SampledPath& path, double alpha, double beta,
                              double phi0) {
    if (!(beta - alpha > 0.0)) throw domain_error("skorohod barriers need beta > alpha");
    if (phi0 < alpha || phi0 > beta)
        throw domain_error("skorohod start phi0 must lie in [alpha, beta]");

    const auto& times = path.times();
    const auto& values = path.values();
    const std::size_t n = path.size();

    std::vector<double> phi(n), ed(n, 0.0), eu(n, 0.0), reg(n);
    phi[0] = phi0;
    reg[0] = values[0] - phi0;
    for (std::size_t i = 1; i < n; ++i) {
        double tentative = phi[i - 1] + (values[i] - values[i - 1]);
        ed[i] = ed[i - 1];
        eu[i] = eu[i - 1];
        if (tentative < alpha) {
            ed[i] += alpha - tentative;
            tentative = alpha;
        } else if (tentative > beta) {
            eu[i] += tentative - beta;
            tentative = beta;
        }
        phi[i] = tentative;
        reg[i] = values[i] - phi[i];
    }

    SkorohodSolution sol{
        SampledPath(times, std::move(phi), path.mode()),
        SampledPath(times, std::move(ed), path.mode()),
        SampledPath(times, std::move(eu), path.mode()),
        SampledPath(times, std::move(reg), path.mode()),
        alpha, beta, phi0};
    return sol;
}

double matched_start(const SampledPath& path, double c) {
    if (!(c > 0.0)) throw domain_error("regularization needs c > 0");
    const auto& v = path.values();
    double run_min = v[0], run_max = v[0];
    for (std::size_t i = 1; i < v.size(); ++i) {
        double x = v[i];
        run_min = std::min(run_min, x);
        run_max = std::max(run_max, x);
        if (x - run_min > c) {
            // first oscillation beyond c is upward
            return (v[0] - run_min) - c / 2.0;
        }
        if (run_max - x > c) {
            // downward first
            return (v[0] - run_max) + c / 2.0;
        }
    }
    // oscillation never exceeds c: centre phi so no barrier is touched
    return v[0] - (run_max + run_min) / 2.0;
}

SkorohodSolution regularize_full(const SampledPath& path, double c) {
    return skorohod_map(path, -c / 2.0, c / 2.0, matched_start(path, c));
}

SampledPath regularize(const SampledPath& path, double c) {
    return regularize_full(path, c).regularization;
}

} // namespace pathcross
