#include "pathcross/path.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pathcross {

std::string to_string(PathMode mode) {
    return mode == PathMode::StepCadlag ? "step" : "linear";
}

PathMode path_mode_from_string(const std::string& name) {
    if (name == "step") return PathMode::StepCadlag;
    if (name == "linear") return PathMode::PiecewiseLinear;
    throw parse_error("unknown path mode '" + name + "' (expected step|linear)");
}

SampledPath::SampledPath(std::vector<double> times, std::vector<double> values, PathMode mode)
    : times_(std::move(times)), values_(std::move(values)), mode_(mode) {
    if (times_.empty() || times_.size() != values_.size())
        throw domain_error("path needs equally many times and values, at least one sample");
    if (times_.front() != 0.0)
        throw domain_error("path must start at time 0");
    for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
        if (!(times_[i] < times_[i + 1]))
            throw domain_error("sample times must be strictly increasing (duplicate or "
                               "decreasing time at index " + std::to_string(i + 1) + ")");
    }
    for (double v : times_)
        if (!std::isfinite(v)) throw domain_error("non-finite sample time");
    for (double v : values_)
        if (!std::isfinite(v)) throw domain_error("non-finite sample value");
}

SampledPath SampledPath::constant(double value, double horizon, PathMode mode) {
    if (!(horizon > 0.0)) throw domain_error("constant path needs a positive horizon");
    return SampledPath({0.0, horizon}, {value, value}, mode);
}

std::size_t SampledPath::index_at(double t) const {
    if (t < 0.0 || t > horizon())
        throw domain_error("time " + std::to_string(t) + " outside path domain [0, " +
                           std::to_string(horizon()) + "]");
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    return static_cast<std::size_t>(it - times_.begin()) - 1;
}

double SampledPath::eval(double t) const {
    std::size_t i = index_at(t);
    if (mode_ == PathMode::StepCadlag || times_[i] == t || i + 1 == size())
        return values_[i];
    double w = (t - times_[i]) / (times_[i + 1] - times_[i]);
    return values_[i] + w * (values_[i + 1] - values_[i]);
}

double SampledPath::left_limit(double t) const {
    if (!(t > 0.0) || t > horizon())
        throw domain_error("left limit needs t in (0, horizon]");
    if (mode_ == PathMode::PiecewiseLinear) return eval(t);
    std::size_t i = index_at(t);
    if (times_[i] == t) return values_[i - 1]; // i >= 1 since t > 0
    return values_[i];
}

std::vector<JumpRecord> SampledPath::jumps() const {
    std::vector<JumpRecord> out;
    if (mode_ == PathMode::PiecewiseLinear) return out;
    for (std::size_t i = 1; i < size(); ++i) {
        double d = values_[i] - values_[i - 1];
        if (d != 0.0) out.push_back({times_[i], d});
    }
    return out;
}

SampledPath SampledPath::restrict_to(double s, double t) const {
    if (!(0.0 <= s && s < t && t <= horizon()))
        throw domain_error("restrict needs 0 <= s < t <= horizon");
    std::vector<double> rt, rv;
    rt.push_back(0.0);
    rv.push_back(eval(s));
    std::size_t i = index_at(s) + 1;
    for (; i < size() && times_[i] < t; ++i) {
        rt.push_back(times_[i] - s);
        rv.push_back(values_[i]);
    }
    // keep the full domain width [0, t - s]
    if (rt.back() != t - s) {
        rt.push_back(t - s);
        rv.push_back(eval(t));
    }
    return SampledPath(std::move(rt), std::move(rv), mode_);
}

std::vector<double> SampledPath::values_on(double s, double t) const {
    if (!(0.0 <= s && s < t && t <= horizon()))
        throw domain_error("values_on needs 0 <= s < t <= horizon");
    std::vector<double> out;
    out.push_back(eval(s));
    std::size_t i = index_at(s) + 1;
    double last_time = s;
    for (; i < size() && times_[i] <= t; ++i) {
        out.push_back(values_[i]);
        last_time = times_[i];
    }
    if (mode_ == PathMode::PiecewiseLinear && last_time != t)
        out.push_back(eval(t));
    return out;
}

double SampledPath::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

double SampledPath::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

SampledPath read_path_csv(const std::string& file, PathMode mode) {
    std::ifstream in(file);
    if (!in) throw parse_error("cannot open path file '" + file + "'");
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty path file '" + file + "'");
    // tolerate an optional BOM and whitespace around the header
    if (line.find("t") == std::string::npos || line.find("x") == std::string::npos)
        throw parse_error("path file '" + file + "' missing 't,x' header");
    std::vector<double> times, values;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b))
            throw parse_error(file + ":" + std::to_string(lineno) + ": expected 't,x' row");
        try {
            times.push_back(std::stod(a));
            values.push_back(std::stod(b));
        } catch (const std::exception&) {
            throw parse_error(file + ":" + std::to_string(lineno) + ": bad number");
        }
    }
    return SampledPath(std::move(times), std::move(values), mode);
}

void write_path_csv(const SampledPath& path, const std::string& file) {
    std::ofstream out(file);
    if (!out) throw parse_error("cannot write path file '" + file + "'");
    out << "t,x\n";
    char buf[64];
    for (std::size_t i = 0; i < path.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", path.times()[i], path.values()[i]);
        out << buf;
    }
}

std::string sidecar_name(const std::string& csv_file) { return csv_file + ".json"; }

std::optional<PathMode> read_mode_sidecar(const std::string& csv_file) {
    std::ifstream in(sidecar_name(csv_file));
    if (!in) return std::nullopt;
    nlohmann::json j;
    in >> j;
    if (!j.contains("mode")) return std::nullopt;
    return path_mode_from_string(j["mode"].get<std::string>());
}

void write_mode_sidecar(const SampledPath& path, const std::string& csv_file) {
    std::ofstream out(sidecar_name(csv_file));
    if (!out) throw parse_error("cannot write sidecar for '" + csv_file + "'");
    nlohmann::json j;
    j["mode"] = to_string(path.mode());
    out << j.dump() << "\n";
}

} // namespace pathcross
