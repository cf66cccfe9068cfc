#include "pathcross/test_functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pathcross {

namespace {

std::vector<double> parse_numbers(const std::string& s, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw parse_error("bad number '" + tok + "' in " + what);
        }
    }
    if (out.empty()) throw parse_error("no parameters in " + what);
    return out;
}

} // namespace

TestFunction TestFunction::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw domain_error("polynomial needs at least one coefficient");
    TestFunction g;
    g.kind_ = Kind::Poly;
    g.coeffs_ = std::move(coeffs);
    return g;
}

TestFunction TestFunction::indicator(double a, double b) {
    if (!(a <= b)) throw domain_error("indicator needs a <= b");
    TestFunction g;
    g.kind_ = Kind::Indicator;
    g.a_ = a;
    g.b_ = b;
    return g;
}

TestFunction TestFunction::gauss(double mu, double sigma) {
    if (!(sigma > 0.0)) throw domain_error("gauss needs sigma > 0");
    TestFunction g;
    g.kind_ = Kind::Gauss;
    g.mu_ = mu;
    g.sigma_ = sigma;
    return g;
}

TestFunction TestFunction::parse(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw parse_error("g spec '" + spec + "' needs the form kind:params");
    std::string kind = spec.substr(0, colon);
    std::string params = spec.substr(colon + 1);
    auto nums = parse_numbers(params, "g spec '" + spec + "'");
    if (kind == "poly") return polynomial(nums);
    if (kind == "indicator") {
        if (nums.size() != 2) throw parse_error("indicator:a,b needs two numbers");
        return indicator(nums[0], nums[1]);
    }
    if (kind == "gauss") {
        if (nums.size() != 2) throw parse_error("gauss:mu,sigma needs two numbers");
        return gauss(nums[0], nums[1]);
    }
    throw parse_error("unknown g kind '" + kind + "' (poly|indicator|gauss)");
}

double TestFunction::operator()(double y) const {
    switch (kind_) {
    case Kind::Poly: {
        double acc = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * y + coeffs_[k];
        return acc;
    }
    case Kind::Indicator:
        return (y >= a_ && y <= b_) ? 1.0 : 0.0;
    case Kind::Gauss: {
        double z = (y - mu_) / sigma_;
        return std::exp(-0.5 * z * z);
    }
    }
    return 0.0;
}

double TestFunction::antiderivative(double y) const {
    switch (kind_) {
    case Kind::Poly: {
        double acc = 0.0;
        for (std::size_t k = coeffs_.size(); k-- > 0;)
            acc = acc * y + coeffs_[k] / static_cast<double>(k + 1);
        return acc * y;
    }
    case Kind::Indicator:
        return std::clamp(y, a_, b_) - a_;
    case Kind::Gauss: {
        static const double root_half_pi = std::sqrt(std::acos(-1.0) / 2.0);
        double z = (y - mu_) / (sigma_ * std::sqrt(2.0));
        double z0 = (-mu_) / (sigma_ * std::sqrt(2.0));
        return sigma_ * root_half_pi * (std::erf(z) - std::erf(z0));
    }
    }
    return 0.0;
}

double TestFunction::integral(double a, double b) const {
    return antiderivative(b) - antiderivative(a);
}

std::string TestFunction::spec() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
    case Kind::Poly:
        os << "poly:";
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) os << ',';
            os << coeffs_[i];
        }
        break;
    case Kind::Indicator:
        os << "indicator:" << a_ << ',' << b_;
        break;
    case Kind::Gauss:
        os << "gauss:" << mu_ << ',' << sigma_;
        break;
    }
    return os.str();
}

} // namespace pathcross
