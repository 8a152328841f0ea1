// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qreduce/codes.hpp"
#include "qreduce/decode.hpp"
#include "qreduce/noise.hpp"
#include "qreduce/opi.hpp"
#include "qreduce/qsim.hpp"
#include "qreduce/rng.hpp"
#include "qreduce/selfcheck.hpp"
#include "qreduce/thresholds.hpp"

using namespace qreduce;

namespace {

struct Verdict {
    bool passed;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Verdict table1_criterion() {
    const auto t0 = Clock::now();
    const auto rows = table1();
    const double elapsed = seconds_since(t0);
    const double dev = table1_max_deviation(rows);
    return {dev <= 5e-4 && elapsed < 5.0, fmt("max deviation %.2e over 24 cells, %.2f s", dev, elapsed)};
}

Verdict saturation_criterion() {
    const double bw = tau_max(ThresholdKind::bw, 0.1, 0.5);
    const double gs = tau_max(ThresholdKind::gs, 0.75, 0.5);
    const double kv = tau_max(ThresholdKind::kv, 2.0 / 3.0, 0.5);
    // GS condition at τ = 1: center probability 1/2, squared 1/4 = 1 − 3/4.
    const double c = center_probability(1.0, 0.5);
    const bool gs_equal = std::abs(c * c - 0.25) < 1e-15;
    const double u = fourth_power_bound(1.0, 0.5);
    const bool ok = std::abs(bw - 0.71794) <= 1e-4 && gs == 1.0 && gs_equal && kv == 1.0 && u >= 1.0 / 3.0 - 1e-9 &&
                    std::abs(u - 1.0 / 3.0) < 1e-14;
    return {ok, fmt("bw %.5f, gs %.0f, kv %.0f", bw, gs, kv) + fmt(", U(1,1/2) = %.15f", u)};
}

Verdict binary_criterion() {
    const double t = 6350.0 / 50000.0;
    const double tau = binary_threshold(t);
    // Same value from the one-coordinate profile f = (√(1−t), √t).
    auto f = ComplexFunction::zeros(2, 1);
    f[0] = std::sqrt(1 - t);
    f[1] = std::sqrt(t);
    const double direct = std::norm(fourier_transform(f)[0]);
    return {std::abs(tau - 0.833) <= 5e-4 && std::abs(direct - tau) < 1e-12, fmt("tau %.6f, |f^(0)|^2 %.6f", tau, direct)};
}

struct ReductionCase {
    std::string name;
    LinearCode code;
    DecoderKind decoder;
    std::vector<double> thresholds;
};

struct SuiteStats {
    std::size_t instances = 0, failures = 0, acceptance_failures = 0, tail_failures = 0;
    double min_slack = 1e9, worst_acceptance = 0, worst_tail_identity = 0;
    std::string first_failure;
};

SuiteStats& reduction_stats() {
    static SuiteStats stats;
    return stats;
}

std::vector<ReductionCase> reduction_matrix() {
    auto rng = make_rng(2024, "acceptance.codes");
    std::vector<ReductionCase> cases;
    const std::vector<double> all{0.4, 0.6, 0.8};
    cases.push_back({"RS_1/F2 bw", rs_code(2, 1), DecoderKind::berlekamp_welch, all});
    cases.push_back({"[4,2]/F2 nearest", random_code(2, 4, 2, rng), DecoderKind::brute_force_nearest, all});
    cases.push_back({"[5,2]/F2 nearest", random_code(2, 5, 2, rng), DecoderKind::brute_force_nearest, all});
    cases.push_back({"RS_1/F3 bw", rs_code(3, 1), DecoderKind::berlekamp_welch, all});
    cases.push_back({"RS_1/F3 nearest", rs_code(3, 1), DecoderKind::brute_force_nearest, all});
    cases.push_back({"RS_2/F3 bw", rs_code(3, 2), DecoderKind::berlekamp_welch, all});
    cases.push_back({"[4,2]/F3 nearest", random_code(3, 4, 2, rng), DecoderKind::brute_force_nearest, all});
    cases.push_back({"[5,2]/F3 nearest", random_code(3, 5, 2, rng), DecoderKind::brute_force_nearest, all});
    cases.push_back({"RS_1/F5 bw", rs_code(5, 1), DecoderKind::berlekamp_welch, all});
    cases.push_back({"RS_1/F5 nearest", rs_code(5, 1), DecoderKind::brute_force_nearest, all});
    cases.push_back({"[4,2]/F5 nearest", random_code(5, 4, 2, rng), DecoderKind::brute_force_nearest, all});
    cases.push_back({"RS_2/F5 nearest", rs_code(5, 2), DecoderKind::brute_force_nearest, all});
    // Symmetrized over 25 branches; the costliest instance by far.
    cases.push_back({"RS_2/F5 bw", rs_code(5, 2), DecoderKind::berlekamp_welch, all});
    return cases;
}

Decoder make_decoder(const LinearCode& code, DecoderKind kind) {
    return kind == DecoderKind::berlekamp_welch ? Decoder::berlekamp_welch(code) : Decoder::brute_force_nearest(code);
}

Verdict theorem1_criterion() {
    const auto t0 = Clock::now();
    auto& stats = reduction_stats();
    auto set_rng = make_rng(2024, "acceptance.sets");
    for (const auto& c : reduction_matrix()) {
        const std::uint32_t q = c.code.q();
        const std::size_t n = c.code.n();
        const auto interval = centered_interval(q, q >= 5 ? 1 : 0);
        std::vector<std::vector<Residue>> random_sets;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Residue> s;
            while (s.size() < interval.size()) {
                const auto a = static_cast<Residue>(uniform_below(set_rng, q));
                if (std::find(s.begin(), s.end(), a) == s.end()) s.push_back(a);
            }
            random_sets.push_back(std::move(s));
        }
        for (const auto& sets : {std::vector<std::vector<Residue>>(n, interval), random_sets})
            for (double tt : c.thresholds) {
                const double tau = std::min(1.0, tt + 0.15);
                const ErrorProfile profile(q, sets, tau);
                const ConstraintSet T(profile, tt);
                const ReductionSimulator sim(c.code, profile, make_decoder(c.code, c.decoder), T);
                const auto outs = sim.run_all();
                const auto rep = verify_bound(outs, sim.p_dec(), sim.eta(), outs.size(), 1e-9);
                ++stats.instances;
                stats.min_slack = std::min(stats.min_slack, rep.slack);
                if (!rep.passed) {
                    ++stats.failures;
                    if (stats.first_failure.empty()) stats.first_failure = c.name;
                }
                for (const auto& o : outs) {
                    const double d = std::abs(o.post_select_prob - sim.p_dec());
                    stats.worst_acceptance = std::max(stats.worst_acceptance, d);
                    if (d > 1e-9) ++stats.acceptance_failures;
                }
                // Criterion 10 data: the simulator's η is the brute-force sum over y ∉ T.
                const auto tail = tail_mass(profile, tt);
                stats.worst_tail_identity = std::max(stats.worst_tail_identity, std::abs(tail.exact - sim.eta()));
                if (!(tail.exact <= tail.hoeffding) || std::abs(tail.exact - sim.eta()) > 1e-10) ++stats.tail_failures;
            }
    }
    const double elapsed = seconds_since(t0);
    const bool ok = stats.failures == 0 && stats.acceptance_failures == 0 && elapsed < 600.0;
    std::string detail = std::to_string(stats.instances) + " instances, min slack " + fmt("%.3e", stats.min_slack) +
                         ", worst |accept - P_Dec| " + fmt("%.1e", stats.worst_acceptance) + fmt(", %.1f s", elapsed);
    if (!stats.first_failure.empty()) detail += ", first failure " + stats.first_failure;
    return {ok, detail};
}

Verdict symmetrization_criterion() {
    const LinearCode code(Matrix(2, {{1, 1, 1}}));
    const auto profile = build_profile(2, 3, {0}, 0.9);
    // Decodes everything to message 0: p_0 = 1, p_1 = 0.
    const auto dec = Decoder::from_function(code, "constant", [](const FieldVector&) { return std::optional<Message>(Message{0}); });
    const DecoderUnitary U(dec);
    const auto before = diagonal_gamma(U, code, profile);
    const auto after = diagonal_gamma(SymmetrizedUnitary(U, code), code, profile);
    const auto ps = per_message_success(dec, profile);
    const double target = std::sqrt((ps[0] + ps[1]) / 2.0);
    double worst = 0;
    for (double g : after) worst = std::max(worst, std::abs(g - target));
    return {worst <= 1e-10 && std::abs(after[0] - after[1]) <= 1e-10 && std::abs(before[0] - before[1]) > 0.5,
            fmt("gamma before (%.3f, %.3f)", before[0], before[1]) + fmt(", after (%.12f, %.12f)", after[0], after[1]) +
                fmt(", sqrt(mean p_s) %.12f", target)};
}

Verdict decoder_criterion() {
    const std::uint32_t q = 7;
    const auto code = rs_code(q, 3);
    const std::size_t t = unique_decoding_radius(q, 3);
    const auto cws = code.codewords();
    std::vector<FieldVector> patterns;
    for (std::size_t e = 0; e < checked_power(q, q); ++e) {
        auto v = vector_at(e, q, q);
        if (v.weight() <= t) patterns.push_back(std::move(v));
    }
    std::size_t words = 0, mismatches = 0;
    for (std::size_t m = 0; m < cws.size(); ++m)
        for (const auto& e : patterns) {
            const auto y = cws[m] + e;
            const auto bw = berlekamp_welch(code, y);
            // Nearest codeword by scanning the codebook.
            std::size_t best = 0, best_d = q + 1;
            for (std::size_t c = 0; c < cws.size(); ++c) {
                const auto d = (cws[c] - y).weight();
                if (d < best_d) best_d = d, best = c;
            }
            const bool same = bw && index_of(*bw, q) == best && best == m;
            mismatches += !same;
            ++words;
        }
    return {mismatches == 0 && patterns.size() == 799,
            std::to_string(words) + " received words (" + std::to_string(patterns.size()) + " patterns), " +
                std::to_string(mismatches) + " mismatches"};
}

Verdict algebra_criterion() {
    Tolerances tol;
    for (const char* name : {"parseval", "round_trip", "orthogonality"}) tol.set(name, 1e-9);
    const auto results = run_selfcheck(tol, 7, {"characters", "parseval", "code_fourier", "rs_duality"});
    bool ok = results.size() == 4;
    std::string detail;
    for (const auto& r : results) {
        ok = ok && r.passed;
        detail += (detail.empty() ? "" : "; ") + r.name + (r.passed ? " ok" : " FAILED") + " (" + r.detail + ")";
    }
    return {ok, detail};
}

Verdict appendix_b_criterion() {
    std::size_t points = 0, bad = 0;
    double worst_rel = 0, min_gap = 1e9;
    for (std::uint32_t q : {11u, 13u, 17u})
        for (std::uint32_t z = 0; 2 * z + 1 < q; ++z)
            for (double tau : {0.6, 0.8, 1.0}) {
                const auto s = fourth_power_sum(q, z, tau);
                const double rel = std::abs(s.convolution_sum - q * s.exact) / (q * s.exact);
                worst_rel = std::max(worst_rel, rel);
                min_gap = std::min(min_gap, s.exact - s.bound);
                bad += !(s.exact >= s.bound - 1e-10) || rel > 1e-9;
                ++points;
            }
    return {bad == 0, std::to_string(points) + " grid points, min(sum|u|^4 - U) " + fmt("%.3e", min_gap) +
                          ", worst convolution rel. error " + fmt("%.1e", worst_rel)};
}

Verdict claim5_criterion() {
    std::size_t instances = 0, mismatches = 0;
    for (std::size_t size = 1; size <= 4; ++size)
        for (double tau : {0.4, 0.6, 0.8})
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                const auto inst = generate_opi(5, 2, tau, size, derive_seed(seed, "acceptance.opi") + size);
                const auto direct = solve_opi_bruteforce(inst);
                const auto icc = opi_to_icc(inst);
                const auto y = solve_icc_bruteforce(icc);
                const auto via = icc_to_opi(inst, y);
                const bool in_coset = syndrome(icc.code, y, Side::primal) == icc.u;
                mismatches += !(in_coset && via.count == direct.count && verify(inst, via).count == via.count);
                ++instances;
            }
    return {mismatches == 0, std::to_string(instances) + " instances, " + std::to_string(mismatches) + " mismatches"};
}

Verdict tail_criterion() {
    const auto& stats = reduction_stats();
    // Extra profiles beyond the reduction matrix, with longer codes.
    std::size_t extra = 0, bad = stats.tail_failures;
    double worst = stats.worst_tail_identity;
    for (std::uint32_t q : {2u, 3u, 5u})
        for (std::size_t n : {4ul, 6ul})
            for (double tt : {0.4, 0.6, 0.8}) {
                const double tau = std::min(1.0, tt + 0.15);
                const auto p = build_profile(q, n, {0}, tau);
                const ConstraintSet T(p, tt);
                const auto fh = p.fourier_side();
                double outside = 0;
                for (std::size_t y = 0; y < fh.size(); ++y)
                    if (!T.contains_index(y)) outside += std::norm(fh[y]);
                const auto tail = tail_mass(p, tt);
                worst = std::max(worst, std::abs(tail.exact - outside));
                bad += !(tail.exact <= tail.hoeffding) || std::abs(tail.exact - outside) > 1e-10;
                ++extra;
            }
    return {bad == 0 && stats.instances > 0,
            std::to_string(stats.instances + extra) + " profiles, worst |exact - brute force| " + fmt("%.1e", worst)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"Table-1 reproduction", table1_criterion},
        {"Saturation points", saturation_criterion},
        {"Binary corollary", binary_criterion},
        {"Theorem-1 bound", theorem1_criterion},
        {"Symmetrization", symmetrization_criterion},
        {"Decoder oracle equivalence", decoder_criterion},
        {"Fourier/algebra suites", algebra_criterion},
        {"Appendix-B bound", appendix_b_criterion},
        {"Claim-5 equivalence", claim5_criterion},
        {"Tail bounds", tail_criterion},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v{false, ""};
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.passed;
        std::printf("%s %2zu  %-28s %s\n", v.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
