#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "qreduce/codes.hpp"
#include "qreduce/config.hpp"
#include "qreduce/decode.hpp"
#include "qreduce/noise.hpp"
#include "qreduce/opi.hpp"
#include "qreduce/qsim.hpp"
#include "qreduce/rng.hpp"
#include "qreduce/selfcheck.hpp"
#include "qreduce/serialize.hpp"
#include "qreduce/thresholds.hpp"

namespace qreduce::cli {
namespace {

/// Input problems that should exit with the usage code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::uint64_t seed = 1;
    std::size_t budget = kDefaultAmplitudeBudget;
    Tolerances tolerances = default_tolerances();
    std::string format;  // empty: command default
    std::string out_path;
};

std::string num(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string join(const std::vector<Residue>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

std::vector<Residue> parse_residues(const std::string& s) {
    std::vector<Residue> out;
    for (const auto& p : split(s, ',')) {
        if (p.empty()) throw UsageError("empty entry in list '" + s + "'");
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(p, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != p.size()) throw UsageError("not a residue: '" + p + "'");
        out.push_back(static_cast<Residue>(v));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t budget_from_env(std::size_t fallback) {
    const char* env = std::getenv(kBudgetEnvVar);
    if (!env || !*env) return fallback;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used);
        if (used != std::string(env).size() || v == 0) throw std::invalid_argument("");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw UsageError(std::string(kBudgetEnvVar) + " must be a positive integer, got '" + env + "'");
    }
}

void apply_tolerances(RunConfig& cfg, const std::vector<std::string>& overrides) {
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw UsageError("tolerance override must be name=value, got '" + o + "'");
        double v = 0.0;
        try {
            std::size_t used = 0;
            v = std::stod(o.substr(eq + 1), &used);
            if (used != o.size() - eq - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw UsageError("bad tolerance value in '" + o + "'");
        }
        try {
            cfg.tolerances.set(o.substr(0, eq), v);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
}

std::string resolve_format(const RunConfig& cfg, const std::string& fallback,
                           std::initializer_list<const char*> allowed) {
    const std::string f = cfg.format.empty() ? fallback : cfg.format;
    for (const char* a : allowed)
        if (f == a) return f;
    throw UsageError("format '" + f + "' is not available for this command");
}

// --- thresholds --------------------------------------------------------------

std::string table1_text(const std::vector<ThresholdRow>& rows) {
    std::string s = "      R    rho  classical*     bw     gs     kv  comment\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%7.3f %6.3f %10.3f %6.3f %6.3f %6.3f  %s\n", r.rate, r.rho, r.classical,
                      r.bw, r.gs, r.kv, r.label.c_str());
        s += buf;
    }
    s += "* reconstructed baseline rho + R(1 - rho)\n";
    return s;
}

std::string table1_csv(const std::vector<ThresholdRow>& rows) {
    std::string s = "R,rho,tau_classical,tau_bw,tau_gs,tau_kv,comment\n";
    for (const auto& r : rows)
        s += num(r.rate) + "," + num(r.rho) + "," + num(r.classical) + "," + num(r.bw) + "," + num(r.gs) + "," +
             num(r.kv) + "," + r.label + "\n";
    return s;
}

Json rows_json(const std::vector<ThresholdRow>& rows) {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    return arr;
}

// --- simulate -----------------------------------------------------------------

std::vector<std::vector<Residue>> parse_sets(const std::string& spec, std::uint32_t q, std::size_t n, Rng& rng) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "interval") {
        const auto z = arg.empty() ? (q >= 5 ? 1u : 0u) : parse_residues(arg).at(0);
        try {
            return std::vector<std::vector<Residue>>(n, centered_interval(q, z));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (kind == "random") {
        const auto size = arg.empty() ? std::max<Residue>(1, q / 2) : parse_residues(arg).at(0);
        if (size < 1 || size >= q) throw UsageError("random set size must lie in [1, q)");
        std::vector<std::vector<Residue>> sets;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Residue> pool(q);
            for (Residue a = 0; a < q; ++a) pool[a] = a;
            for (std::size_t j = 0; j < size; ++j) std::swap(pool[j], pool[j + uniform_below(rng, q - j)]);
            std::vector<Residue> s(pool.begin(), pool.begin() + size);
            std::sort(s.begin(), s.end());
            sets.push_back(std::move(s));
        }
        return sets;
    }
    // Explicit: "0,1" for every coordinate or "0,1/0,2/…" with n sets.
    std::vector<std::vector<Residue>> sets;
    for (const auto& part : split(spec, '/')) sets.push_back(parse_residues(part));
    if (sets.size() == 1) sets.assign(n, sets.front());
    if (sets.size() != n) throw UsageError("--sets needs one set or n sets separated by '/'");
    return sets;
}

struct SimulateArgs {
    std::uint32_t q = 3;
    std::size_t n = 0;
    std::size_t k = 1;
    std::string code = "auto";
    std::string decoder = "nearest";
    double tau = 0.8;
    double ttilde = 0.6;
    std::string sets = "interval";
    std::string u = "all";
    std::size_t samples = 4;
    std::string symmetrize = "auto";
};

int cmd_simulate(const SimulateArgs& a, const RunConfig& cfg, std::string& out) {
    const auto format = resolve_format(cfg, "text", {"text", "json", "csv"});
    const std::size_t n = a.n ? a.n : a.q;
    if (!is_prime(a.q)) throw UsageError("q must be prime");
    if (a.k < 1 || a.k >= n) throw UsageError("need 1 <= k < n");

    // Budget before any allocation.
    const auto need = checked_power(a.q, n + 2 * a.k);
    if (need > cfg.budget)
        throw BudgetExceeded("reduction state A x B x C", need, cfg.budget);

    auto code_rng = make_rng(cfg.seed, "cli.code");
    const bool rs = a.code == "rs" || (a.code == "auto" && n == a.q);
    if (a.code != "auto" && a.code != "rs" && a.code != "random") throw UsageError("--code must be auto, rs or random");
    if (rs && n != a.q) throw UsageError("full-support RS codes need n = q");
    const LinearCode code = rs ? rs_code(a.q, a.k) : random_code(a.q, n, a.k, code_rng);

    DecoderKind kind;
    try {
        kind = parse_decoder_kind(a.decoder);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Decoder decoder = [&] {
        switch (kind) {
            case DecoderKind::berlekamp_welch:
                if (!rs) throw UsageError("Berlekamp-Welch needs a full-support RS code");
                return Decoder::berlekamp_welch(code);
            case DecoderKind::brute_force_list:
                return Decoder::brute_force_list(code, johnson_radius(n, a.k));
            default: return Decoder::brute_force_nearest(code);
        }
    }();

    auto set_rng = make_rng(cfg.seed, "cli.sets");
    const ErrorProfile profile(a.q, parse_sets(a.sets, a.q, n, set_rng), a.tau);
    if (a.ttilde > a.tau) throw UsageError("--ttilde must not exceed --tau");
    const ConstraintSet T(profile, a.ttilde);

    ReductionOptions opt;
    opt.budget = cfg.budget;
    opt.tolerances = cfg.tolerances;
    if (a.symmetrize == "on") opt.symmetrize = true;
    else if (a.symmetrize == "off") opt.symmetrize = false;
    else if (a.symmetrize != "auto") throw UsageError("--symmetrize must be auto, on or off");

    const ReductionSimulator sim(code, profile, decoder, T, opt);
    const std::size_t messages = checked_power(a.q, a.k);
    std::vector<FieldVector> us;
    bool exhaustive = false;
    if (a.u == "all") {
        exhaustive = true;
        for (std::size_t i = 0; i < messages; ++i) us.push_back(vector_at(i, a.q, a.k));
    } else if (a.u == "random") {
        auto rng = make_rng(cfg.seed, "cli.u");
        for (std::size_t i = 0; i < a.samples; ++i) us.push_back(vector_at(uniform_below(rng, messages), a.q, a.k));
    } else {
        const auto v = parse_residues(a.u);
        if (v.size() != a.k) throw UsageError("--u needs k entries");
        for (auto x : v)
            if (x >= a.q) throw UsageError("--u entry outside F_q");
        us.emplace_back(a.q, v);
    }

    std::vector<ReductionOutcome> outs;
    double mean = 0.0;
    for (const auto& u : us) {
        outs.push_back(sim.run(u));
        mean += outs.back().p_u;
    }
    mean /= static_cast<double>(outs.size());
    const double bound = theorem1_bound(sim.p_dec(), sim.eta());
    const double slack = mean - bound;
    const bool gated = exhaustive;
    const bool passed = !gated || slack >= -cfg.tolerances.bound_slack;

    if (format == "json") {
        Json j;
        j["q"] = a.q;
        j["n"] = n;
        j["k"] = a.k;
        j["code"] = rs ? "rs" : "random";
        j["generator"] = to_json(code.generator());
        j["decoder"] = decoder.name();
        j["profile"] = to_json(profile);
        j["ttilde"] = a.ttilde;
        j["seed"] = cfg.seed;
        j["symmetrized"] = sim.symmetrized();
        j["outcomes"] = Json::array();
        for (const auto& o : outs) j["outcomes"].push_back(to_json(o));
        j["mean_p_u"] = mean;
        j["p_dec"] = sim.p_dec();
        j["eta"] = sim.eta();
        j["bound"] = bound;
        j["slack"] = slack;
        j["exhaustive"] = exhaustive;
        j["passed"] = passed;
        out = j.dump(2) + "\n";
    } else if (format == "csv") {
        out = "u,p_u,post_select_prob,p_dec,eta,bound,lemma_p_u\n";
        for (const auto& o : outs)
            out += join(o.u.raw(), " ") + "," + num(o.p_u, 12) + "," + num(o.post_select_prob, 12) + "," +
                   num(o.p_dec, 12) + "," + num(o.eta, 12) + "," + num(o.bound, 12) + "," + num(o.lemma_p_u, 12) +
                   "\n";
    } else {
        out = "code " + std::string(rs ? "RS" : "random") + " [" + std::to_string(n) + ", " + std::to_string(a.k) +
              "] over F_" + std::to_string(a.q) + ", decoder " + decoder.name() +
              (sim.symmetrized() ? " (symmetrized)" : "") + "\n";
        out += "tau " + num(a.tau) + ", ttilde " + num(a.ttilde) + ", seed " + std::to_string(cfg.seed) + "\n";
        for (const auto& o : outs)
            out += "u=(" + join(o.u.raw()) + ")  p_u " + num(o.p_u, 9) + "  accept " + num(o.post_select_prob, 9) +
                   "\n";
        out += "mean p_u " + num(mean, 9) + "\n";
        out += "P_dec    " + num(sim.p_dec(), 9) + "\n";
        out += "eta      " + num(sim.eta(), 9) + "\n";
        out += "bound    " + num(bound, 9) + "\n";
        out += "slack    " + num(slack, 9) + (gated ? (passed ? "  ok" : "  FAILED") : "  (sampled u, not gated)") +
               "\n";
    }
    return passed ? kOk : kCheckFailed;
}

// --- opi ------------------------------------------------------------------------

OPIInstance load_instance(const std::string& path) {
    try {
        return opi_instance_from_json(parse_json(read_file(path), path));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// --- selfcheck ----------------------------------------------------------------

int cmd_selfcheck(const std::vector<std::string>& only, const RunConfig& cfg, std::string& out) {
    const auto format = resolve_format(cfg, "text", {"text", "json"});
    std::vector<SuiteResult> results;
    try {
        results = run_selfcheck(cfg.tolerances, cfg.seed, only);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    bool ok = true;
    Json j = Json::array();
    out.clear();
    for (const auto& r : results) {
        ok = ok && r.passed;
        out += std::string(r.passed ? "PASS " : "FAIL ") + r.name + "  " + r.detail + "\n";
        j.push_back({{"suite", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    if (format == "json") out = j.dump(2) + "\n";
    return ok ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum reduction toolkit: decoding thresholds, exact reduction simulation, OPI tools"};
    app.name("qreduce");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::optional<std::size_t> budget;
    std::vector<std::string> tolerance_overrides;
    app.add_option("--out", cfg.out_path, "Write data to this file instead of stdout");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--seed", cfg.seed, "Root seed for every random stream");
    app.add_option("--budget", budget, "Maximum dense amplitudes (overrides $" + std::string(kBudgetEnvVar) + ")");
    app.add_option("--tolerance", tolerance_overrides, "Override a tolerance, name=value (repeatable)");

    // thresholds
    auto* th = app.add_subcommand("thresholds", "Decoder threshold tables and curves");
    th->require_subcommand(1);
    auto* th_table = th->add_subcommand("table1", "The six reference rows");
    auto* th_curves = th->add_subcommand("curves", "tau_max for every rate of a grid");
    double curve_rho = 0.5;
    std::string curve_grid = "0.05:0.95:0.05";
    std::optional<std::uint32_t> kv_prime;
    th_curves->add_option("--rho", curve_rho, "Set density rho")->check(CLI::Range(0.0, 1.0));
    th_curves->add_option("--grid", curve_grid, "Rate grid a:b:step");
    th_curves->add_option("--kv-prime", kv_prime, "Evaluate kv on intervals of this prime instead of continuous rho");
    auto* th_point = th->add_subcommand("tau-max", "Largest feasible tau for one condition");
    std::string point_kind = "bw";
    double point_rate = 0.5, point_rho = 0.5;
    std::optional<std::uint32_t> point_q, point_z;
    th_point->add_option("--kind", point_kind, "classical, bw, gs or kv");
    th_point->add_option("--R", point_rate, "Rate k/n")->required();
    th_point->add_option("--rho", point_rho, "Set density");
    th_point->add_option("--q", point_q, "Prime for the kv interval bound");
    th_point->add_option("--z", point_z, "Interval radius for the kv bound");
    auto* th_opt = th->add_subcommand("optimize", "Best (R, rho) at a fixed classical threshold");
    std::string opt_kind = "bw";
    double opt_target = 0.55;
    th_opt->add_option("--kind", opt_kind, "bw, gs or kv");
    th_opt->add_option("--target", opt_target, "Classical threshold rho + R(1 - rho)");

    // simulate
    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "Exact dense simulation of the reduction");
    sim->add_option("--q", sa.q, "Field size (prime)");
    sim->add_option("--n", sa.n, "Code length (default q)");
    sim->add_option("--k", sa.k, "Code dimension");
    sim->add_option("--code", sa.code, "auto, rs or random");
    sim->add_option("--decoder", sa.decoder, "bw, nearest or list");
    sim->add_option("--tau", sa.tau, "Profile mass on the sets")->check(CLI::Range(0.0, 1.0));
    sim->add_option("--ttilde", sa.ttilde, "Constraint threshold")->check(CLI::Range(0.0, 1.0));
    sim->add_option("--sets", sa.sets, "interval[:z], random[:size] or explicit a,b/c,d/...");
    sim->add_option("--u", sa.u, "all, random or explicit comma list");
    sim->add_option("--samples", sa.samples, "Number of syndromes for --u random");
    sim->add_option("--symmetrize", sa.symmetrize, "auto, on or off");

    // opi
    auto* opi = app.add_subcommand("opi", "Optimal polynomial interpolation instances");
    opi->require_subcommand(1);
    auto* opi_gen = opi->add_subcommand("gen", "Random instance");
    std::uint32_t gen_q = 5;
    std::size_t gen_k = 2, gen_size = 2;
    double gen_tau = 0.6;
    opi_gen->add_option("--q", gen_q, "Field size (prime)");
    opi_gen->add_option("--k", gen_k, "Polynomials of degree < k");
    opi_gen->add_option("--tau", gen_tau, "Target fraction")->check(CLI::Range(0.0, 1.0));
    opi_gen->add_option("--set-size", gen_size, "|S_i|");
    std::string inst_path, sol_path;
    auto* opi_solve = opi->add_subcommand("solve-bruteforce", "Best polynomial by exhaustive search");
    opi_solve->add_option("--instance", inst_path, "Instance JSON")->required();
    auto* opi_verify = opi->add_subcommand("verify", "Satisfied count of a solution");
    opi_verify->add_option("--instance", inst_path, "Instance JSON")->required();
    opi_verify->add_option("--solution", sol_path, "Solution JSON")->required();
    auto* opi_convert = opi->add_subcommand("convert", "ICC form of an instance");
    opi_convert->add_option("--instance", inst_path, "Instance JSON")->required();
    bool convert_solve = false;
    opi_convert->add_flag("--solve", convert_solve, "Also solve the ICC instance by brute force and map it back");

    // selfcheck
    auto* sc = app.add_subcommand("selfcheck", "Invariant suites at fixed small parameters");
    std::vector<std::string> suites;
    sc->add_option("--suite", suites, "Run only these suites (repeatable)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    std::string data;
    int code = kOk;
    try {
        cfg.budget = budget ? *budget : budget_from_env(kDefaultAmplitudeBudget);
        if (cfg.budget == 0) throw UsageError("--budget must be positive");
        apply_tolerances(cfg, tolerance_overrides);

        if (th->parsed()) {
            if (th_table->parsed()) {
                const auto f = resolve_format(cfg, "csv", {"csv", "json", "text"});
                const auto rows = table1();
                if (f == "json") {
                    Json j;
                    j["rows"] = rows_json(rows);
                    j["classical_baseline"] = "reconstructed: rho + R(1 - rho)";
                    j["kv_bound"] = "continuous-rho fourth-power bound";
                    data = j.dump(2) + "\n";
                } else {
                    data = f == "csv" ? table1_csv(rows) : table1_text(rows);
                }
            } else if (th_curves->parsed()) {
                const auto f = resolve_format(cfg, "csv", {"csv", "json"});
                std::vector<double> grid;
                try {
                    grid = parse_grid(curve_grid);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
                for (double r : grid)
                    if (!(r > 0.0 && r < 1.0)) throw UsageError("grid rates must lie in (0, 1)");
                if (!(curve_rho > 0.0 && curve_rho < 1.0)) throw UsageError("--rho must lie in (0, 1)");
                const auto rows = figure1_curves(curve_rho, grid, kv_prime);
                data = f == "csv" ? curves_csv(rows) : rows_json(rows).dump(2) + "\n";
            } else if (th_point->parsed()) {
                const auto f = resolve_format(cfg, "text", {"text", "json"});
                ThresholdQuery query;
                try {
                    query.kind = parse_threshold_kind(point_kind);
                    query.rate = point_rate;
                    query.rho = point_rho;
                    if (point_q || point_z) {
                        if (!point_q || !point_z) throw std::invalid_argument("--q and --z go together");
                        query = ThresholdQuery::interval(point_rate, *point_q, *point_z);
                    }
                    query.validate();
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
                double tau = 0.0;
                try {
                    tau = tau_max(query);
                } catch (const std::domain_error& e) {
                    err << "error: " << e.what() << "\n";
                    return kCheckFailed;
                }
                if (f == "json") {
                    data = Json{{"kind", to_string(query.kind)}, {"R", query.rate}, {"rho", query.rho},
                                {"tau_max", tau}, {"saturated", tau >= 1.0}}
                               .dump(2) +
                           "\n";
                } else {
                    data = num(tau, 9) + "\n";
                }
            } else {
                const auto f = resolve_format(cfg, "text", {"text", "json"});
                ThresholdKind kind;
                try {
                    kind = parse_threshold_kind(opt_kind);
                    if (kind == ThresholdKind::classical) throw std::invalid_argument("nothing to optimize for classical");
                    if (!(opt_target > 0.0 && opt_target < 1.0)) throw std::invalid_argument("--target must lie in (0, 1)");
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
                const auto best = optimize_over_rho(kind, opt_target);
                if (f == "json")
                    data = Json{{"kind", to_string(kind)}, {"R", best.rate}, {"rho", best.rho}, {"tau", best.tau}}
                               .dump(2) +
                           "\n";
                else
                    data = "R " + num(best.rate) + "  rho " + num(best.rho) + "  tau " + num(best.tau) + "\n";
            }
        } else if (sim->parsed()) {
            code = cmd_simulate(sa, cfg, data);
        } else if (opi->parsed()) {
            const auto f = resolve_format(cfg, "json", {"json", "text"});
            if (opi_gen->parsed()) {
                OPIInstance inst;
                try {
                    inst = generate_opi(gen_q, gen_k, gen_tau, gen_size, cfg.seed);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
                data = to_json(inst).dump(2) + "\n";
            } else if (opi_solve->parsed()) {
                const auto inst = load_instance(inst_path);
                require_within_budget("OPI brute force", inst.q, inst.k, kDefaultEnumerationBudget);
                const auto sol = solve_opi_bruteforce(inst);
                data = f == "json" ? to_json(sol).dump(2) + "\n"
                                   : "coeffs " + join(sol.coeffs) + "  count " + std::to_string(sol.count) + "\n";
            } else if (opi_verify->parsed()) {
                const auto inst = load_instance(inst_path);
                OPIVerification v;
                try {
                    v = verify(inst, opi_solution_from_json(parse_json(read_file(sol_path), sol_path)));
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
                data = f == "json" ? Json{{"count", v.count}, {"required", v.required}, {"meets", v.meets}}.dump(2) +
                                         "\n"
                                   : "count " + std::to_string(v.count) + "  required " + std::to_string(v.required) +
                                         "  meets " + (v.meets ? "true" : "false") + "\n";
                code = v.meets ? kOk : kCheckFailed;
            } else {
                const auto inst = load_instance(inst_path);
                const auto icc = opi_to_icc(inst);
                Json j = to_json(icc);
                if (convert_solve) {
                    const auto y = solve_icc_bruteforce(icc);
                    const auto sol = icc_to_opi(inst, y);
                    const bool in_coset = syndrome(icc.code, y, Side::primal) == icc.u;
                    j["solution"] = {{"y", y.raw()},
                                     {"in_coset", in_coset},
                                     {"in_T", icc.constraint.contains(y)},
                                     {"count", icc.constraint.count(y.values())},
                                     {"opi", to_json(sol)}};
                    if (!in_coset) code = kCheckFailed;
                }
                data = j.dump(2) + "\n";
            }
        } else if (sc->parsed()) {
            code = cmd_selfcheck(suites, cfg, data);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kCheckFailed;
    }

    if (cfg.out_path.empty()) {
        out << data;
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << cfg.out_path << "'\n";
            return kUsageError;
        }
        file << data;
    }
    return code;
}

}  // namespace qreduce::cli
