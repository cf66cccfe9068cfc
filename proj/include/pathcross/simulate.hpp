#pragma once

#include <cstdint>
#include <vector>

#include "pathcross/path.hpp"

namespace pathcross {

enum class ProcessKind { Bm, Fbm, Stable, Rosenblatt };

std::string to_string(ProcessKind kind);
ProcessKind process_kind_from_string(const std::string& name);

struct ProcessSpec {
    ProcessKind kind = ProcessKind::Bm;
    double hurst = 0.5;     // FBM / ROSENBLATT, in (0,1) resp. (1/2,1)
    double alpha = 2.0;     // STABLE, in (1,2]
    int approx_grid = 64;   // ROSENBLATT kernel discretization
    std::size_t n_samples = 1024; // number of increments on [0, horizon]
    double horizon = 1.0;
    std::uint64_t seed = 0;

    double beta() const; // self-similarity index
    void validate() const;
};

// Equally spaced samples, X_0 = 0. Continuous-path processes come back
// PIECEWISE_LINEAR, stable paths STEP_CADLAG. Deterministic in
// (spec, path_index).
SampledPath simulate(const ProcessSpec& spec, std::uint64_t path_index = 0);

// Stationary-increment fractional Gaussian noise generator with the
// circulant embedding precomputed once; cheap per-path sampling.
// Var(increment over dt) = dt^{2H}.
class FbmEngine {
public:
    FbmEngine(double hurst, std::size_t n_increments, double dt);
    ~FbmEngine();
    FbmEngine(const FbmEngine&) = delete;
    FbmEngine& operator=(const FbmEngine&) = delete;

    std::vector<double> increments(std::uint64_t seed, std::uint64_t path_index) const;
    bool uses_cholesky() const { return use_cholesky_; }

    // Embedding autocovariance round trip, for verification.
    std::vector<double> autocovariance() const;
    static double exact_autocovariance(double hurst, double dt, std::size_t lag);

private:
    double hurst_;
    double dt_;
    std::size_t n_;
    std::size_t m_ = 0; // half circulant size (power of two)
    std::vector<double> sqrt_eig_;
    bool use_cholesky_ = false;
    std::vector<double> chol_; // row-major lower triangle when falling back
    void* plan_ = nullptr;     // fftw plan for the synthesis transform
};

} // namespace pathcross
