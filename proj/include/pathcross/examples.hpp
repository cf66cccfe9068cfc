#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pathcross/path.hpp"

namespace pathcross {

// Closed-form parameter sequences for the deterministic constructions.
//   harmonic      a_n = 1/(n+1)
//   invpow:t      a_n = (n+1)^{-t}, t in (0, 1]
//   pow2          b_n = 2^{-n}
//   pow2floor:p   b_n = 2^{-floor(n/p)}
//   geom:q        a_n = q^n
struct SequenceRule {
    enum class Kind { Harmonic, InvPow, Pow2, Pow2Floor, Geometric };
    Kind kind = Kind::Harmonic;
    double param = 2.0;

    static SequenceRule parse(const std::string& spec);
    std::string spec() const;
    double operator()(long n) const;
    bool plain_sum_diverges() const;    // sum a_n
    bool weighted_sum_diverges() const; // sum 2^n a_n
};

enum class ExampleKind { Ex1, Ex2, Ex3, Cantor };

std::string to_string(ExampleKind kind);
ExampleKind example_kind_from_string(const std::string& name);

struct ExampleSpec {
    ExampleKind which = ExampleKind::Ex2;
    SequenceRule a_rule{SequenceRule::Kind::Harmonic, 0.0}; // EX1/EX3 peaks
    SequenceRule b_rule{SequenceRule::Kind::Pow2, 0.0};     // EX2 tent heights
    long m_scale = 4;     // EX3: m_n = m_scale * 2^n (n+1)(n+2) - 1
    int depth = 12;       // teeth count (EX1) or gap depth (EX2/EX3/Cantor)
    double min_tent = 0.0;   // EX2: omit tents below this height (0 keeps all)
    double min_tooth = 1e-4; // EX3: stop a gap's teeth below this height
    long max_teeth_per_gap = 1 << 20;
    std::size_t capacity = 80u << 20; // sample budget guard
};

SampledPath example_path(const ExampleSpec& spec);

// Devil's staircase via ternary digits, truncated at depth.
double cantor_function(double t, int depth);

// Number of depth-n removed gaps entirely inside [0, t].
long k_n_count(double t, int n);

// Open interval (a^{n,k}, b^{n,k}) of the k-th removed gap at depth n,
// and the staircase value on it.
std::pair<double, double> cantor_gap_bounds(int n, long k);
double cantor_gap_value(int n, long k);

// Truncated-depth closed forms for the truncated variations and the exact
// residual tails dropped by the truncation.
double ex1_tv_closed_form(const SequenceRule& a_rule, long depth, double c);
double ex1_tail(const SequenceRule& a_rule, long depth, double c);
double ex2_tv_closed_form(const SequenceRule& b_rule, int depth, double c);
double ex2_tail(const SequenceRule& b_rule, int depth, double c);

// EX3 support: m_n, the image bands B = union over gaps of
// [plateau, plateau + a_{m_n}] (merged), and sum 2^n a_{m_n} over the
// built depth.
long ex3_m_index(const ExampleSpec& spec, int n);
std::vector<std::pair<double, double>> ex3_image_bands(const ExampleSpec& spec);
double ex3_band_sum(const ExampleSpec& spec);

} // namespace pathcross
