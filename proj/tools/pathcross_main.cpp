#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pathcross/convergence.hpp"
#include "pathcross/crossings.hpp"
#include "pathcross/examples.hpp"
#include "pathcross/lebesgue.hpp"
#include "pathcross/occupation.hpp"
#include "pathcross/parallel.hpp"
#include "pathcross/rng.hpp"
#include "pathcross/simulate.hpp"
#include "pathcross/skorohod.hpp"
#include "pathcross/test_functions.hpp"
#include "pathcross/variation.hpp"

using json = nlohmann::json;
using namespace pathcross;

namespace {

constexpr const char* kVersion = "pathcross 0.1.0";

std::string fnv1a_digest(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) return "missing";
    std::uint64_t h = 1469598103934665603ULL;
    char buf[65536];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
        if (!in) break;
    }
    char out[32];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

// Records every parameter and file digest of a run; rerunning the same
// command line must reproduce outputs byte for byte.
class Manifest {
public:
    Manifest(std::string subcommand) { j_["subcommand"] = std::move(subcommand); }

    template <class T>
    void param(const std::string& key, const T& value) {
        j_["params"][key] = value;
    }
    void input(const std::string& file) { j_["inputs"][file] = fnv1a_digest(file); }
    void output(const std::string& file) { outputs_.push_back(file); }

    void write(const std::string& explicit_path) {
        j_["version"] = kVersion;
        for (const auto& f : outputs_) j_["outputs"][f] = fnv1a_digest(f);
        std::string dest = explicit_path;
        if (dest.empty() && !outputs_.empty()) dest = outputs_.front() + ".manifest.json";
        if (dest.empty()) return;
        std::ofstream out(dest);
        out << j_.dump(2) << "\n";
    }

private:
    json j_;
    std::vector<std::string> outputs_;
};

PathMode resolve_mode(const std::string& flag, const std::string& in_file) {
    if (!flag.empty()) return path_mode_from_string(flag);
    if (!in_file.empty()) {
        auto sidecar = read_mode_sidecar(in_file);
        if (sidecar) return *sidecar;
    }
    throw parse_error("interpolation mode unknown: pass --mode step|linear or provide a "
                      "sidecar " +
                      sidecar_name(in_file));
}

SampledPath load_path(const std::string& file, const std::string& mode_flag) {
    std::ifstream probe(file);
    if (!probe) throw parse_error("cannot open path file '" + file + "'");
    return read_path_csv(file, resolve_mode(mode_flag, file));
}

std::vector<double> parse_c_grid(const std::string& spec) {
    // dyadic:a:b -> 2^-a, 2^-a-1, ..., 2^-b ; otherwise a comma list
    if (spec.rfind("dyadic:", 0) == 0) {
        auto rest = spec.substr(7);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw parse_error("dyadic grid needs the form dyadic:lo:hi");
        int a = std::stoi(rest.substr(0, colon));
        int b = std::stoi(rest.substr(colon + 1));
        if (b < a) std::swap(a, b);
        std::vector<double> out;
        for (int k = a; k <= b; ++k) out.push_back(std::ldexp(1.0, -k));
        return out;
    }
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

std::vector<double> parse_grid(const std::string& spec) {
    if (spec.rfind("linspace:", 0) == 0) {
        auto rest = spec.substr(9);
        double lo, hi;
        int n;
        if (std::sscanf(rest.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1)
            throw parse_error("linspace grid needs linspace:lo:hi:n");
        std::vector<double> out;
        for (int i = 0; i < n; ++i)
            out.push_back(lo + (hi - lo) * (n == 1 ? 1.0 : static_cast<double>(i) /
                                                              (n - 1)));
        return out;
    }
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

PsiSpec parse_psi(const std::string& spec) {
    if (spec.rfind("pow:", 0) == 0) return PsiSpec::power(std::stod(spec.substr(4)));
    throw parse_error("unknown psi spec '" + spec + "' (pow:p)");
}

ProcessSpec build_process(const std::string& process, double hurst, double alpha,
                          int approx_grid, std::size_t n, double horizon,
                          std::uint64_t seed) {
    ProcessSpec spec;
    spec.kind = process_kind_from_string(process);
    spec.hurst = hurst;
    spec.alpha = alpha;
    spec.approx_grid = approx_grid;
    spec.n_samples = n;
    spec.horizon = horizon;
    spec.seed = seed;
    spec.validate();
    return spec;
}

ExampleSpec build_example(const std::string& which, const std::string& rule, int depth,
                          long m_scale, double min_tooth, double min_tent) {
    ExampleSpec spec;
    spec.which = example_kind_from_string(which);
    if (!rule.empty()) {
        if (rule.rfind("a:", 0) == 0)
            spec.a_rule = SequenceRule::parse(rule.substr(2));
        else if (rule.rfind("b:", 0) == 0)
            spec.b_rule = SequenceRule::parse(rule.substr(2));
        else
            throw parse_error("rule needs an a: or b: prefix, e.g. b:pow2");
    }
    spec.depth = depth;
    spec.m_scale = m_scale;
    spec.min_tooth = min_tooth;
    spec.min_tent = min_tent;
    if ((spec.which == ExampleKind::Ex1 || spec.which == ExampleKind::Ex3) &&
        !spec.a_rule.plain_sum_diverges())
        std::cerr << "warning: sum a_n converges; the construction's closed forms still "
                     "hold but the normalized limits degenerate\n";
    if (spec.which == ExampleKind::Ex2 && !spec.b_rule.weighted_sum_diverges())
        std::cerr << "warning: sum 2^n b_n converges; the staircase limit degenerates\n";
    return spec;
}

void write_csv(const std::string& file, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(file);
    if (!out) throw parse_error("cannot write '" + file + "'");
    out << header << "\n";
    char buf[64];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << buf << (i + 1 < row.size() ? "," : "");
        }
        out << "\n";
    }
}

int run_verify(const std::string& suite, int trials, std::uint64_t seed, int threads);

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kVersion) +
                 " - truncated variations, crossings and occupation measures of "
                 "sampled paths"};
    app.require_subcommand(1);

    std::string manifest_path;
    app.add_option("--manifest", manifest_path, "explicit manifest destination")
        ->capture_default_str();
    int threads = default_threads();
    app.add_option("--threads", threads, "worker threads (default: cores or "
                                         "PATHCROSS_THREADS)");

    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "sample a seeded stochastic process");
    std::string sim_process = "bm";
    double sim_hurst = 0.5, sim_alpha = 2.0, sim_t = 1.0;
    int sim_grid = 64;
    std::size_t sim_n = 1024;
    std::uint64_t sim_seed = 0, sim_index = 0;
    std::string sim_out;
    sim->add_option("--process", sim_process, "bm|fbm|stable|rosenblatt")->required();
    sim->add_option("--hurst", sim_hurst, "Hurst index for fbm/rosenblatt");
    sim->add_option("--alpha", sim_alpha, "stability index in (1,2]");
    sim->add_option("--approx-grid", sim_grid, "rosenblatt kernel grid");
    sim->add_option("--n", sim_n, "number of increments")->required();
    sim->add_option("--t", sim_t, "horizon");
    sim->add_option("--seed", sim_seed, "stream seed");
    sim->add_option("--path-index", sim_index, "path index within the stream");
    sim->add_option("--out", sim_out, "output CSV")->required();

    // ---- example ----
    auto* exa = app.add_subcommand("example", "construct a deterministic example path");
    std::string exa_which, exa_rule, exa_out;
    int exa_depth = 12;
    long exa_mscale = 4;
    double exa_min_tooth = 1e-4, exa_min_tent = 0.0;
    exa->add_option("--which", exa_which, "1|2|3|cantor")->required();
    exa->add_option("--rule", exa_rule, "a:<rule> or b:<rule>, e.g. b:pow2");
    exa->add_option("--depth", exa_depth, "construction depth");
    exa->add_option("--m-scale", exa_mscale, "EX3 band scale (m_n = s 2^n (n+1)(n+2) - 1)");
    exa->add_option("--min-tooth", exa_min_tooth, "EX3: drop teeth below this height");
    exa->add_option("--min-tent", exa_min_tent, "EX2: drop tents below this height");
    exa->add_option("--out", exa_out, "output CSV")->required();

    // ---- tv ----
    auto* tvc = app.add_subcommand("tv", "truncated variation of a path");
    std::string tv_in, tv_mode, tv_out;
    double tv_c = 0.0, tv_from = 0.0, tv_to = -1.0;
    tvc->add_option("--in", tv_in, "input CSV")->required();
    tvc->add_option("--mode", tv_mode, "step|linear");
    tvc->add_option("--c", tv_c, "truncation parameter")->required();
    tvc->add_option("--from", tv_from, "interval start");
    tvc->add_option("--to", tv_to, "interval end (default horizon)");
    tvc->add_option("--out", tv_out, "write the JSON result here too");

    // ---- tv-profile ----
    auto* tvp = app.add_subcommand("tv-profile", "TV^c over a (c, t) grid");
    std::string tvp_in, tvp_mode, tvp_cgrid, tvp_tgrid, tvp_out;
    tvp->add_option("--in", tvp_in)->required();
    tvp->add_option("--mode", tvp_mode, "step|linear");
    tvp->add_option("--c-grid", tvp_cgrid, "dyadic:a:b or comma list")->required();
    tvp->add_option("--t-grid", tvp_tgrid, "linspace:lo:hi:n or comma list")->required();
    tvp->add_option("--out", tvp_out)->required();

    // ---- regularize ----
    auto* reg = app.add_subcommand("regularize", "Skorohod regularization x^c");
    std::string reg_in, reg_mode, reg_out;
    double reg_c = 0.0;
    reg->add_option("--in", reg_in)->required();
    reg->add_option("--mode", reg_mode, "step|linear");
    reg->add_option("--c", reg_c)->required();
    reg->add_option("--out", reg_out, "output CSV for x^c")->required();

    // ---- crossings ----
    auto* cro = app.add_subcommand("crossings", "interval crossing counts");
    std::string cro_in, cro_mode;
    double cro_y = 0.0, cro_c = 0.0, cro_from = 0.0, cro_to = -1.0;
    cro->add_option("--in", cro_in)->required();
    cro->add_option("--mode", cro_mode, "step|linear");
    cro->add_option("--y", cro_y, "level")->required();
    cro->add_option("--c", cro_c, "band width")->required();
    cro->add_option("--from", cro_from);
    cro->add_option("--to", cro_to);

    // ---- indicatrix ----
    auto* ind = app.add_subcommand("indicatrix", "level profile of crossing counts");
    std::string ind_in, ind_mode, ind_g = "poly:1", ind_out;
    double ind_c = 0.0, ind_from = 0.0, ind_to = -1.0;
    ind->add_option("--in", ind_in)->required();
    ind->add_option("--mode", ind_mode, "step|linear");
    ind->add_option("--c", ind_c)->required();
    ind->add_option("--g", ind_g, "poly:a0,a1,... | indicator:a,b | gauss:mu,sigma");
    ind->add_option("--from", ind_from);
    ind->add_option("--to", ind_to);
    ind->add_option("--out", ind_out, "profile CSV");

    // ---- lebesgue ----
    auto* leb = app.add_subcommand("lebesgue", "Lebesgue partition and psi-variation");
    std::string leb_in, leb_mode, leb_psi = "pow:2", leb_out;
    double leb_c = 0.0, leb_r = 0.0, leb_t = -1.0;
    int leb_shifts = 0;
    leb->add_option("--in", leb_in)->required();
    leb->add_option("--mode", leb_mode, "step|linear");
    leb->add_option("--c", leb_c, "grid pitch")->required();
    leb->add_option("--r", leb_r, "grid shift in [0, c)");
    leb->add_option("--psi", leb_psi, "pow:p");
    leb->add_option("--t", leb_t, "horizon (default path horizon)");
    leb->add_option("--mean-shifts", leb_shifts,
                    "average the psi-variation over this many shifts");
    leb->add_option("--out", leb_out, "hitting times CSV");

    // ---- pvar ----
    auto* pva = app.add_subcommand("pvar", "p-th variation along dyadic Lebesgue pitches");
    int pva_example = 2, pva_p = 2, pva_depth = 16;
    double pva_gamma = 0.5, pva_t = 1.0;
    std::string pva_rule, pva_out;
    pva->add_option("--example", pva_example, "deterministic example id (2)");
    pva->add_option("--p", pva_p, "variation order >= 2");
    pva->add_option("--gamma", pva_gamma, "grid shift fraction in [0,1)");
    pva->add_option("--depth", pva_depth, "largest pitch index N");
    pva->add_option("--rule", pva_rule, "height rule, default b:pow2floor:p");
    pva->add_option("--t", pva_t);
    pva->add_option("--out", pva_out);

    // ---- localtime ----
    auto* loc = app.add_subcommand("localtime", "binned occupation density");
    std::string loc_in, loc_mode, loc_out;
    double loc_t = -1.0;
    int loc_bins = 200;
    loc->add_option("--in", loc_in)->required();
    loc->add_option("--mode", loc_mode, "step|linear");
    loc->add_option("--t", loc_t, "horizon (default path horizon)");
    loc->add_option("--bins", loc_bins);
    loc->add_option("--out", loc_out)->required();

    // ---- weakgap ----
    auto* wga = app.add_subcommand("weakgap", "normalized crossing integrals vs reference");
    std::string wga_in, wga_mode, wga_g = "poly:1", wga_phi = "auto", wga_ref = "occupation";
    std::string wga_cgrid, wga_out;
    double wga_t = -1.0;
    wga->add_option("--in", wga_in)->required();
    wga->add_option("--mode", wga_mode, "step|linear");
    wga->add_option("--c-grid", wga_cgrid)->required();
    wga->add_option("--g", wga_g);
    wga->add_option("--phi", wga_phi, "auto (1/(1+TV^c)) or c^a");
    wga->add_option("--ref", wga_ref, "occupation | const:<value>");
    wga->add_option("--t", wga_t);
    wga->add_option("--out", wga_out);

    // ---- converge ----
    auto* con = app.add_subcommand("converge", "Monte Carlo scaling curves");
    std::string con_process, con_cgrid, con_out, con_example, con_rule;
    double con_hurst = 0.5, con_alpha = 2.0, con_t = 1.0;
    std::size_t con_n = 1 << 16;
    int con_paths = 100, con_depth = 14, con_grid = 64;
    std::uint64_t con_seed = 0;
    con->add_option("--process", con_process, "bm|fbm|stable|rosenblatt");
    con->add_option("--example", con_example, "1|2|3 (deterministic curve)");
    con->add_option("--rule", con_rule, "example rule override");
    con->add_option("--depth", con_depth, "example depth");
    con->add_option("--hurst", con_hurst);
    con->add_option("--alpha", con_alpha);
    con->add_option("--approx-grid", con_grid);
    con->add_option("--paths", con_paths);
    con->add_option("--n", con_n, "increments per path");
    con->add_option("--c-grid", con_cgrid)->required();
    con->add_option("--t", con_t);
    con->add_option("--seed", con_seed);
    con->add_option("--out", con_out)->required();

    // ---- estimate-c ----
    auto* est = app.add_subcommand("estimate-c", "bracket the scaling constant");
    std::string est_process = "bm", est_out;
    double est_hurst = 0.5, est_alpha = 2.0;
    int est_nmax = 16, est_paths = 200;
    std::size_t est_steps = 1 << 16;
    std::uint64_t est_seed = 0;
    est->add_option("--process", est_process);
    est->add_option("--hurst", est_hurst);
    est->add_option("--alpha", est_alpha);
    est->add_option("--nmax", est_nmax);
    est->add_option("--paths", est_paths);
    est->add_option("--steps-per-unit", est_steps);
    est->add_option("--seed", est_seed);
    est->add_option("--out", est_out);

    // ---- counterexample ----
    auto* cex = app.add_subcommand("counterexample",
                                   "off-band crossing integrals vs the occupation bound");
    std::string cex_cgrid = "dyadic:4:10", cex_out;
    int cex_depth = 8;
    long cex_mscale = 4;
    cex->add_option("--depth", cex_depth);
    cex->add_option("--m-scale", cex_mscale);
    cex->add_option("--c-grid", cex_cgrid);
    cex->add_option("--out", cex_out)->required();

    // ---- verify ----
    auto* ver = app.add_subcommand("verify", "run the bundled property suites");
    std::string ver_suite = "all";
    int ver_trials = 200;
    std::uint64_t ver_seed = 7;
    ver->add_option("--suite", ver_suite, "all|oracle|banach|skorohod|sandwich|examples");
    ver->add_option("--trials", ver_trials);
    ver->add_option("--seed", ver_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*sim) {
            Manifest m("simulate");
            auto spec = build_process(sim_process, sim_hurst, sim_alpha, sim_grid, sim_n,
                                      sim_t, sim_seed);
            auto path = simulate(spec, sim_index);
            write_path_csv(path, sim_out);
            write_mode_sidecar(path, sim_out);
            m.param("process", sim_process);
            m.param("hurst", sim_hurst);
            m.param("alpha", sim_alpha);
            m.param("approx_grid", sim_grid);
            m.param("n", sim_n);
            m.param("t", sim_t);
            m.param("seed", sim_seed);
            m.param("path_index", sim_index);
            m.output(sim_out);
            m.output(sidecar_name(sim_out));
            m.write(manifest_path);
        } else if (*exa) {
            Manifest m("example");
            auto spec = build_example(exa_which, exa_rule, exa_depth, exa_mscale,
                                      exa_min_tooth, exa_min_tent);
            auto path = example_path(spec);
            write_path_csv(path, exa_out);
            write_mode_sidecar(path, exa_out);
            m.param("which", exa_which);
            m.param("rule", exa_rule);
            m.param("depth", exa_depth);
            m.param("m_scale", exa_mscale);
            m.param("min_tooth", exa_min_tooth);
            m.param("min_tent", exa_min_tent);
            m.output(exa_out);
            m.output(sidecar_name(exa_out));
            m.write(manifest_path);
        } else if (*tvc) {
            Manifest m("tv");
            auto path = load_path(tv_in, tv_mode);
            double to = tv_to < 0.0 ? path.horizon() : tv_to;
            auto r = truncated_variation(path, tv_c, tv_from, to);
            json j{{"c", r.c},   {"utv", r.utv},        {"dtv", r.dtv},
                   {"tv", r.tv}, {"from", r.from_time}, {"to", r.to_time}};
            std::cout << j.dump() << "\n";
            m.input(tv_in);
            m.param("c", tv_c);
            m.param("from", tv_from);
            m.param("to", to);
            if (!tv_out.empty()) {
                std::ofstream out(tv_out);
                out << j.dump() << "\n";
                m.output(tv_out);
            }
            m.write(manifest_path);
        } else if (*tvp) {
            Manifest m("tv-profile");
            auto path = load_path(tvp_in, tvp_mode);
            auto cg = parse_c_grid(tvp_cgrid);
            auto tg = parse_grid(tvp_tgrid);
            auto grid = truncated_variation_profile(path, cg, tg);
            std::vector<std::vector<double>> rows;
            for (std::size_t ci = 0; ci < cg.size(); ++ci)
                for (std::size_t ti = 0; ti < tg.size(); ++ti)
                    rows.push_back({cg[ci], tg[ti], grid[ci][ti].utv, grid[ci][ti].dtv,
                                    grid[ci][ti].tv});
            write_csv(tvp_out, "c,t,utv,dtv,tv", rows);
            m.input(tvp_in);
            m.param("c_grid", tvp_cgrid);
            m.param("t_grid", tvp_tgrid);
            m.output(tvp_out);
            m.write(manifest_path);
        } else if (*reg) {
            Manifest m("regularize");
            auto path = load_path(reg_in, reg_mode);
            auto sol = regularize_full(path, reg_c);
            write_path_csv(sol.regularization, reg_out);
            write_mode_sidecar(sol.regularization, reg_out);
            json j{{"eta_u_total", sol.eta_u.values().back()},
                   {"eta_d_total", sol.eta_d.values().back()},
                   {"phi0", sol.phi0}};
            std::cout << j.dump() << "\n";
            m.input(reg_in);
            m.param("c", reg_c);
            m.output(reg_out);
            m.output(sidecar_name(reg_out));
            m.write(manifest_path);
        } else if (*cro) {
            Manifest m("crossings");
            auto path = load_path(cro_in, cro_mode);
            double to = cro_to < 0.0 ? path.horizon() : cro_to;
            auto r = crossings(path, cro_y, cro_c, cro_from, to);
            json j{{"y", r.y},       {"c", r.c},         {"up", r.up},
                   {"down", r.down}, {"total", r.total}, {"from", r.from_time},
                   {"to", r.to_time}};
            std::cout << j.dump() << "\n";
            m.input(cro_in);
            m.param("y", cro_y);
            m.param("c", cro_c);
            m.write(manifest_path);
        } else if (*ind) {
            Manifest m("indicatrix");
            auto path = load_path(ind_in, ind_mode);
            double to = ind_to < 0.0 ? path.horizon() : ind_to;
            auto prof = indicatrix(path, ind_c, ind_from, to);
            auto g = TestFunction::parse(ind_g);
            double integral = profile_integral(prof, g);
            double tv = truncated_variation(path, ind_c, ind_from, to).tv;
            json j{{"c", ind_c}, {"g", ind_g}, {"integral", integral}, {"tv", tv}};
            std::cout << j.dump() << "\n";
            if (!ind_out.empty()) {
                std::vector<std::vector<double>> rows;
                for (std::size_t i = 0; i < prof.counts.size(); ++i)
                    rows.push_back({prof.breakpoints[i], prof.breakpoints[i + 1],
                                    static_cast<double>(prof.counts[i])});
                write_csv(ind_out, "y_lo,y_hi,count", rows);
                m.output(ind_out);
            }
            m.input(ind_in);
            m.param("c", ind_c);
            m.param("g", ind_g);
            m.write(manifest_path);
        } else if (*leb) {
            Manifest m("lebesgue");
            auto path = load_path(leb_in, leb_mode);
            double t = leb_t < 0.0 ? path.horizon() : leb_t;
            auto psi = parse_psi(leb_psi);
            json j{{"c", leb_c}, {"r", leb_r}, {"t", t}, {"psi", leb_psi}};
            if (leb_shifts > 0) {
                j["mean_psi_variation"] =
                    mean_psi_variation(path, leb_c, psi, t, leb_shifts);
                j["shifts"] = leb_shifts;
            } else {
                auto part = build_partition(path, leb_c, leb_r, t);
                j["k"] = k_count(part, t);
                j["psi_variation"] = psi_variation(path, part, psi, t);
                if (!leb_out.empty()) {
                    std::vector<std::vector<double>> rows;
                    for (std::size_t k = 0; k < part.taus.size(); ++k)
                        rows.push_back({part.taus[k], part.tau_values[k]});
                    write_csv(leb_out, "tau,value", rows);
                    m.output(leb_out);
                }
            }
            std::cout << j.dump() << "\n";
            m.input(leb_in);
            m.param("c", leb_c);
            m.param("r", leb_r);
            m.param("t", t);
            m.write(manifest_path);
        } else if (*pva) {
            Manifest m("pvar");
            if (pva_example != 2)
                throw domain_error("pvar sweeps are built on example 2");
            std::string rule = pva_rule.empty()
                                   ? "b:pow2floor:" + std::to_string(pva_p)
                                   : pva_rule;
            std::vector<std::vector<double>> rows;
            for (int N = 0; N <= pva_depth; ++N) {
                ExampleSpec spec = build_example("2", rule, 0, 4, 1e-4, 0.0);
                double pitch = spec.b_rule(N);
                spec.depth = N + pva_p;
                spec.min_tent = pva_gamma > 0.0 ? pva_gamma * pitch * (1.0 + 1e-9)
                                                : pitch * (1.0 - 1e-9);
                spec.capacity = 1u << 26;
                auto x2 = example_path(spec);
                std::vector<double> pitches{pitch};
                double v = pvar_along_lebesgue(x2, pva_p, pva_gamma, pitches, pva_t)[0];
                rows.push_back({static_cast<double>(N), pitch, v});
            }
            json j{{"p", pva_p},
                   {"gamma", pva_gamma},
                   {"t", pva_t},
                   {"final", rows.back()[2]}};
            std::cout << j.dump() << "\n";
            if (!pva_out.empty()) {
                write_csv(pva_out, "N,pitch,pvar", rows);
                m.output(pva_out);
            }
            m.param("p", pva_p);
            m.param("gamma", pva_gamma);
            m.param("depth", pva_depth);
            m.param("rule", rule);
            m.write(manifest_path);
        } else if (*loc) {
            Manifest m("localtime");
            auto path = load_path(loc_in, loc_mode);
            double t = loc_t < 0.0 ? path.horizon() : loc_t;
            if (loc_bins < 1) throw domain_error("localtime needs bins >= 1");
            auto restricted = path.restrict_to(0.0, t);
            double lo = restricted.min_value(), hi = restricted.max_value();
            double pad = 1e-9 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
            std::vector<double> edges;
            for (int i = 0; i <= loc_bins; ++i)
                edges.push_back(lo - pad +
                                (hi - lo + 2 * pad) * static_cast<double>(i) / loc_bins);
            auto est = occupation_density(path, t, edges);
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < est.density.size(); ++i)
                rows.push_back({est.bin_edges[i], est.bin_edges[i + 1], est.density[i]});
            write_csv(loc_out, "y_lo,y_hi,density", rows);
            m.input(loc_in);
            m.param("t", t);
            m.param("bins", loc_bins);
            m.output(loc_out);
            m.write(manifest_path);
        } else if (*wga) {
            Manifest m("weakgap");
            auto path = load_path(wga_in, wga_mode);
            double t = wga_t < 0.0 ? std::min(1.0, path.horizon()) : wga_t;
            auto g = TestFunction::parse(wga_g);
            auto cg = parse_c_grid(wga_cgrid);
            std::function<double(double)> reference;
            if (wga_ref == "occupation")
                reference = [&](double tt) { return occupation_integral(path, tt, g); };
            else if (wga_ref.rfind("const:", 0) == 0) {
                double v = std::stod(wga_ref.substr(6));
                reference = [v](double) { return v; };
            } else {
                throw parse_error("unknown --ref (occupation | const:<v>)");
            }

            std::vector<std::vector<double>> rows;
            for (double c : cg) {
                double phi;
                if (wga_phi == "auto")
                    phi = normalization_phi(path, c);
                else if (wga_phi.rfind("c^", 0) == 0)
                    phi = std::pow(c, std::stod(wga_phi.substr(2)));
                else
                    throw parse_error("unknown --phi (auto | c^a)");
                double v = crossing_measure_integral(path, t, c, phi, g);
                rows.push_back({c, v, reference(t), std::abs(v - reference(t))});
            }
            if (!wga_out.empty()) {
                write_csv(wga_out, "c,value,reference,gap", rows);
                m.output(wga_out);
            } else {
                for (auto& r : rows)
                    std::cout << json{{"c", r[0]},
                                      {"value", r[1]},
                                      {"reference", r[2]},
                                      {"gap", r[3]}}
                                     .dump()
                              << "\n";
            }
            m.input(wga_in);
            m.param("g", wga_g);
            m.param("phi", wga_phi);
            m.param("ref", wga_ref);
            m.param("t", t);
            m.write(manifest_path);
        } else if (*con) {
            Manifest m("converge");
            auto cg = parse_c_grid(con_cgrid);
            std::vector<std::vector<double>> rows;
            if (!con_process.empty()) {
                auto spec = build_process(con_process, con_hurst, con_alpha, con_grid,
                                          con_n, std::max(con_t, 1.0), con_seed);
                auto curve = tv_scaling_curve(spec, cg, con_t, con_paths, threads);
                for (std::size_t i = 0; i < cg.size(); ++i)
                    rows.push_back({cg[i], curve.stat_mean[i], curve.stat_stderr[i]});
                m.param("process", con_process);
                m.param("hurst", con_hurst);
                m.param("alpha", con_alpha);
                m.param("n", con_n);
                m.param("paths", con_paths);
                m.param("seed", con_seed);
                m.param("floor", curve.floor);
            } else if (!con_example.empty()) {
                auto spec = build_example(con_example, con_rule, con_depth, 4, 1e-4, 0.0);
                auto path = example_path(spec);
                auto curve = example_scaling_curve(path, cg, con_t);
                for (std::size_t i = 0; i < cg.size(); ++i)
                    rows.push_back({cg[i], curve.stat_mean[i], 0.0});
                m.param("example", con_example);
                m.param("depth", con_depth);
            } else {
                throw parse_error("converge needs --process or --example");
            }
            write_csv(con_out, "c,mean,stderr", rows);
            m.param("c_grid", con_cgrid);
            m.param("t", con_t);
            m.output(con_out);
            m.write(manifest_path);
        } else if (*est) {
            Manifest m("estimate-c");
            auto spec = build_process(est_process, est_hurst, est_alpha, 64, 1024, 1.0,
                                      est_seed);
            auto brackets = estimate_C(spec, est_nmax, est_paths, est_steps, threads);
            std::vector<std::vector<double>> rows;
            for (const auto& b : brackets)
                rows.push_back({static_cast<double>(b.n), b.lower, b.upper, b.stderr_});
            if (!est_out.empty()) {
                write_csv(est_out, "n,lower,upper,stderr", rows);
                m.output(est_out);
            }
            const auto& fin = brackets.back();
            std::cout << json{{"n", fin.n},
                              {"lower", fin.lower},
                              {"upper", fin.upper},
                              {"stderr", fin.stderr_}}
                             .dump()
                      << "\n";
            m.param("process", est_process);
            m.param("nmax", est_nmax);
            m.param("paths", est_paths);
            m.param("steps_per_unit", est_steps);
            m.param("seed", est_seed);
            m.write(manifest_path);
        } else if (*cex) {
            Manifest m("counterexample");
            ExampleSpec spec;
            spec.which = ExampleKind::Ex3;
            spec.depth = cex_depth;
            spec.m_scale = cex_mscale;
            auto cg = parse_c_grid(cex_cgrid);
            spec.min_tooth = cg.back() / 2.0;
            auto rows_data = l1_counterexample(spec, cg);
            std::vector<std::vector<double>> rows;
            for (const auto& r : rows_data)
                rows.push_back({r.c, r.integral_off_bands, r.complement_measure, r.bound});
            write_csv(cex_out, "c,crossing_integral_off_bands,complement_measure,bound",
                      rows);
            m.param("depth", cex_depth);
            m.param("m_scale", cex_mscale);
            m.param("c_grid", cex_cgrid);
            m.output(cex_out);
            m.write(manifest_path);
        } else if (*ver) {
            return run_verify(ver_suite, ver_trials, ver_seed, threads);
        }
    } catch (const capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

namespace {

struct SuiteResult {
    std::string name;
    bool pass;
    std::string detail;
};

SampledPath verify_random_path(std::mt19937_64& rng, int max_n) {
    std::uniform_int_distribution<int> len(2, max_n);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    std::bernoulli_distribution pick(0.5);
    int n = len(rng);
    std::vector<double> t(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        t[static_cast<std::size_t>(i)] = i;
        v[static_cast<std::size_t>(i)] = unif(rng);
    }
    return SampledPath(std::move(t), std::move(v),
                       pick(rng) ? PathMode::StepCadlag : PathMode::PiecewiseLinear);
}

SuiteResult verify_oracle(int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        auto p = verify_random_path(rng, 64);
        for (double c = 0.0; c <= 2.0; c += 0.25) {
            auto a = truncated_variation(p, c);
            auto b = truncated_variation_oracle(p, c);
            worst = std::max(worst, std::abs(a.tv - b.tv));
        }
    }
    return {"oracle", worst <= 1e-12, "max |tv - oracle| = " + std::to_string(worst)};
}

SuiteResult verify_banach(int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed + 1);
    auto g1 = TestFunction::polynomial({1.0});
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        auto p = verify_random_path(rng, 128);
        for (double c : {1.0, 0.1, 0.01}) {
            double tv = truncated_variation(p, c).tv;
            double in = indicatrix_integral(p, c, g1);
            double rel = std::abs(in - tv) / std::max(1.0, std::abs(tv));
            worst = std::max(worst, rel);
        }
    }
    return {"banach", worst <= 1e-9, "max relative gap = " + std::to_string(worst)};
}

SuiteResult verify_skorohod(int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed + 2);
    double worst = 0.0;
    bool comp_ok = true;
    for (int i = 0; i < trials; ++i) {
        auto p = verify_random_path(rng, 64);
        for (double c : {0.3, 0.9}) {
            auto sol = regularize_full(p, c);
            auto r = truncated_variation(p, c);
            const auto& xc = sol.regularization.values();
            worst = std::max(worst,
                             std::abs((xc.back() - xc.front()) - (r.utv - r.dtv)));
            for (std::size_t k = 1; k < p.size(); ++k) {
                double dd = sol.eta_d.values()[k] - sol.eta_d.values()[k - 1];
                double du = sol.eta_u.values()[k] - sol.eta_u.values()[k - 1];
                if (dd > 0.0 && std::abs(sol.phi.values()[k] - sol.alpha) > 1e-12)
                    comp_ok = false;
                if (du > 0.0 && std::abs(sol.phi.values()[k] - sol.beta) > 1e-12)
                    comp_ok = false;
            }
        }
    }
    return {"skorohod", comp_ok && worst <= 1e-9,
            "telescoping worst = " + std::to_string(worst) +
                (comp_ok ? "" : ", complementarity violated")};
}

SuiteResult verify_sandwich(int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed + 3);
    std::normal_distribution<double> stepd(0.0, 0.15);
    bool ok = true;
    int runs = std::max(4, trials / 25);
    for (int i = 0; i < runs; ++i) {
        std::vector<double> t{0.0}, v{0.0};
        for (int k = 1; k <= 256; ++k) {
            t.push_back(k / 256.0);
            v.push_back(v.back() + stepd(rng));
        }
        SampledPath p(std::move(t), std::move(v), PathMode::PiecewiseLinear);
        double c = 0.1;
        auto psi = PsiSpec::power(2.0);
        double mean = mean_psi_variation(p, c, psi, 1.0, 16);
        double tv = truncated_variation(p, c, 0.0, 1.0).tv;
        double pc = c * c;
        if (mean < (pc / c) * tv - pc - pc || mean > (pc / c) * tv + 2 * pc + pc)
            ok = false;
    }
    return {"sandwich", ok, ok ? "bracketed" : "bracket violated"};
}

SuiteResult verify_examples(int, std::uint64_t) {
    bool ok = true;
    std::string detail;
    {
        ExampleSpec spec;
        spec.which = ExampleKind::Ex2;
        spec.depth = 12;
        auto x2 = example_path(spec);
        double tv = truncated_variation(x2, 0.25, 0.0, 1.0).tv;
        if (std::abs(tv - 2.5) > 1e-9) {
            ok = false;
            detail += "ex2 tv(1/4) = " + std::to_string(tv) + " ";
        }
    }
    {
        ExampleSpec spec;
        spec.which = ExampleKind::Ex1;
        spec.depth = 4096;
        auto x1 = example_path(spec);
        double tv = truncated_variation(x1, 0.5, 0.0, 1.0).tv;
        if (std::abs(tv - 1.0) > 1e-9) {
            ok = false;
            detail += "ex1 tv(1/2) = " + std::to_string(tv) + " ";
        }
    }
    if (std::abs(cantor_function(0.5, 40) - 0.5) > 1e-15) ok = false;
    return {"examples", ok, detail.empty() ? "closed forms match" : detail};
}

int run_verify(const std::string& suite, int trials, std::uint64_t seed, int) {
    std::vector<SuiteResult> results;
    auto want = [&suite](const char* name) { return suite == "all" || suite == name; };
    if (want("oracle")) results.push_back(verify_oracle(trials, seed));
    if (want("banach")) results.push_back(verify_banach(std::max(1, trials / 4), seed));
    if (want("skorohod")) results.push_back(verify_skorohod(trials, seed));
    if (want("sandwich")) results.push_back(verify_sandwich(trials, seed));
    if (want("examples")) results.push_back(verify_examples(trials, seed));
    if (results.empty()) {
        std::cerr << "error: unknown suite '" << suite << "'\n";
        return 2;
    }
    bool all = true;
    for (const auto& r : results) {
        std::printf("%-10s %s  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

} // namespace
