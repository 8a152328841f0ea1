#include "qreduce/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "qreduce/codes.hpp"
#include "qreduce/decode.hpp"
#include "qreduce/galois.hpp"
#include "qreduce/noise.hpp"
#include "qreduce/opi.hpp"
#include "qreduce/qsim.hpp"
#include "qreduce/rng.hpp"
#include "qreduce/thresholds.hpp"

namespace qreduce {
namespace {

struct Check {
    bool passed = true;
    double worst = 0.0;
    std::string note;

    void within(double deviation, double tol) {
        worst = std::max(worst, deviation);
        if (!(deviation <= tol)) passed = false;
    }
    void require(bool ok, const std::string& what) {
        if (!ok && passed) note = what;
        passed = passed && ok;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

ComplexFunction random_function(std::uint32_t q, std::size_t n, Rng& rng) {
    auto f = ComplexFunction::zeros(q, n);
    for (auto& a : f.amplitudes()) a = Complex(uniform_unit(rng) - 0.5, uniform_unit(rng) - 0.5);
    return f;
}

Check field_suite(const Tolerances&, std::uint64_t) {
    Check c;
    for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u}) {
        const PrimeField F(q);
        for (Residue a = 1; a < q; ++a) c.require(F.mul(a, F.inv(a)) == 1, "inverse failed");
        for (Residue a = 0; a < q; ++a)
            for (Residue b = 0; b < q; ++b) {
                c.require(F.sub(F.add(a, b), b) == a, "add/sub failed");
                for (Residue d = 0; d < q; ++d)
                    c.require(F.mul(a, F.add(b, d)) == F.add(F.mul(a, b), F.mul(a, d)), "distributivity failed");
            }
    }
    return c;
}

Check characters_suite(const Tolerances& tol, std::uint64_t) {
    Check c;
    for (std::uint32_t q : {2u, 3u, 5u}) {
        const std::size_t n = 2, N = checked_power(q, n);
        for (std::size_t yi = 0; yi < N; ++yi)
            for (std::size_t zi = 0; zi < N; ++zi) {
                Complex sum = 0.0;
                const auto y = vector_at(yi, q, n), z = vector_at(zi, q, n);
                for (std::size_t xi = 0; xi < N; ++xi) {
                    const auto x = vector_at(xi, q, n);
                    sum += character(y, x) * std::conj(character(z, x));
                }
                c.within(std::abs(sum - Complex(yi == zi ? static_cast<double>(N) : 0.0)) / N, tol.orthogonality);
            }
    }
    return c;
}

Check parseval_suite(const Tolerances& tol, std::uint64_t seed) {
    Check c;
    auto rng = make_rng(seed, "selfcheck.parseval");
    double round_trip = 0.0;
    for (auto [q, n] : {std::pair{3u, 4ul}, {5u, 3ul}, {7u, 2ul}}) {
        const auto f = random_function(q, n, rng);
        const auto fh = fourier_transform(f);
        c.within(std::abs(f.norm() - fh.norm()), tol.parseval);
        const auto back = inverse_fourier_transform(fh);
        for (std::size_t i = 0; i < f.size(); ++i) round_trip = std::max(round_trip, std::abs(back[i] - f[i]));
    }
    c.require(round_trip <= tol.round_trip, "round trip error " + fmt(round_trip));
    return c;
}

Check code_fourier_suite(const Tolerances& tol, std::uint64_t seed) {
    Check c;
    auto rng = make_rng(seed, "selfcheck.codes");
    for (std::uint32_t q : {2u, 3u, 5u}) {
        const auto code = random_code(q, 4, 2, rng);
        const auto& G = code.generator();
        const std::size_t N = checked_power(q, 4);
        for (std::size_t yi = 0; yi < N; ++yi) {
            const auto y = vector_at(yi, q, 4);
            const auto gy = G.apply(y);
            for (std::size_t xi = 0; xi < checked_power(q, 2); ++xi) {
                const auto x = vector_at(xi, q, 2);
                c.within(std::abs(character(y, code.encode(x.values())) - character(gy, x)), tol.orthogonality);
            }
            // Σ_{c∈C} χ_y(c) = q^k·[y ∈ C⊥].
            const auto expected = gy.is_zero() ? static_cast<double>(q * q) : 0.0;
            c.within(std::abs(code_character_sum(code, y) - Complex(expected)) / (q * q), tol.orthogonality);
        }
    }
    return c;
}

Check rs_duality_suite(const Tolerances&, std::uint64_t) {
    Check c;
    for (std::uint32_t q : {2u, 3u, 5u, 7u})
        for (std::size_t k = 1; k < q; ++k)
            c.require(dual(rs_code(q, k)).same_code(rs_code(q, q - k)),
                      "dual of RS_" + std::to_string(k) + " over F_" + std::to_string(q));
    return c;
}

Check noise_suite(const Tolerances& tol, std::uint64_t seed) {
    Check c;
    auto rng = make_rng(seed, "selfcheck.noise");
    // Tail mass against direct enumeration of |f̂|² outside T.
    for (std::uint32_t q : {3u, 5u}) {
        std::vector<std::vector<Residue>> sets;
        for (int i = 0; i < 4; ++i) sets.push_back({static_cast<Residue>(uniform_below(rng, q))});
        const ErrorProfile p(q, sets, 0.8);
        c.within(std::abs(p.product_function().norm_squared() - 1.0), tol.unit_norm);
        const ConstraintSet T(p, 0.5);
        const auto fh = p.fourier_side();
        double outside = 0.0;
        for (std::size_t y = 0; y < fh.size(); ++y)
            if (!T.contains_index(y)) outside += std::norm(fh[y]);
        const auto tail = tail_mass(p, 0.5);
        c.within(std::abs(tail.exact - outside), tol.product);
        c.require(tail.exact <= tail.hoeffding, "exact tail exceeds Hoeffding");
        const auto f = p.product_function();
        const auto ft = fourier_transform(f);
        double diff = 0.0;
        for (std::size_t y = 0; y < ft.size(); ++y) diff = std::max(diff, std::abs(ft[y] - fh[y]));
        c.within(diff, tol.product);
    }
    for (std::uint32_t z = 0; 2 * z + 1 < 11; ++z)
        for (double tau : {0.6, 0.8, 1.0}) {
            const auto s = fourth_power_sum(11, z, tau);
            c.require(s.exact >= s.bound - tol.fourth_power, "fourth-power bound violated");
            c.within(std::abs(s.convolution_sum - 11.0 * s.exact) / (11.0 * s.exact), tol.convolution_rel);
        }
    return c;
}

Check decoders_suite(const Tolerances&, std::uint64_t seed) {
    Check c;
    auto rng = make_rng(seed, "selfcheck.decode");
    const std::uint32_t q = 7;
    const auto code = rs_code(q, 3);
    const std::size_t t = unique_decoding_radius(q, 3);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Residue> m(3), e(q, 0);
        for (auto& v : m) v = static_cast<Residue>(uniform_below(rng, q));
        for (std::size_t j = 0; j < t; ++j) e[uniform_below(rng, q)] = static_cast<Residue>(uniform_below(rng, q));
        const auto y = code.encode(m) + FieldVector(q, e);
        const auto bw = berlekamp_welch(code, y);
        const auto list = brute_force_list(code, y, t);
        c.require(bw && list.size() == 1 && *bw == list.front() && *bw == m, "BW disagrees with brute force");
    }
    return c;
}

Check reduction_suite(const Tolerances& tol, std::uint64_t) {
    Check c;
    const auto code = rs_code(3, 1);
    const auto profile = build_profile(3, 3, {0}, 0.8);
    const ConstraintSet T(profile, 0.6);
    for (const auto& dec : {Decoder::brute_force_nearest(code), Decoder::berlekamp_welch(code)}) {
        ReductionOptions opt;
        opt.tolerances = tol;
        const ReductionSimulator sim(code, profile, dec, T, opt);
        const auto outs = sim.run_all();
        const auto rep = verify_bound(outs, sim.p_dec(), sim.eta(), outs.size(), tol.bound_slack);
        c.require(rep.passed, "mean p_u below the bound");
        for (const auto& o : outs) {
            c.within(std::abs(o.post_select_prob - sim.p_dec()), tol.probability);
            c.within(std::abs(o.p_u - o.lemma_p_u), tol.probability);
            c.within(o.max_norm_drift, tol.state_norm);
        }
    }
    return c;
}

Check symmetrization_suite(const Tolerances& tol, std::uint64_t) {
    Check c;
    const LinearCode code(Matrix(2, {{1, 1, 1}}));
    const auto profile = build_profile(2, 3, {0}, 0.9);
    const auto dec = Decoder::from_function(code, "zero", [](const FieldVector&) { return std::optional<Message>(Message{0}); });
    const DecoderUnitary U(dec);
    const SymmetrizedUnitary S(U, code);
    const auto g = diagonal_gamma(S, code, profile);
    const auto ps = per_message_success(dec, profile);
    double mean = 0.0;
    for (double p : ps) mean += p / static_cast<double>(ps.size());
    for (double v : g) c.within(std::abs(v - std::sqrt(mean)), tol.uniformity);
    return c;
}

Check thresholds_suite(const Tolerances&, std::uint64_t) {
    Check c;
    c.within(table1_max_deviation(table1()), 5e-4);
    c.within(std::abs(tau_max(ThresholdKind::bw, 0.1, 0.5) - 0.71794), 1e-4);
    c.within(std::abs(binary_threshold(6350.0 / 50000.0) - 0.833), 5e-4);
    return c;
}

Check opi_suite(const Tolerances&, std::uint64_t seed) {
    Check c;
    for (std::uint64_t i = 0; i < 3; ++i) {
        const auto inst = generate_opi(5, 2, 0.6, 2, derive_seed(seed, "selfcheck.opi") + i);
        const auto direct = solve_opi_bruteforce(inst);
        const auto icc = opi_to_icc(inst);
        const auto y = solve_icc_bruteforce(icc);
        const auto via = icc_to_opi(inst, y);
        c.require(direct.count == via.count, "OPI and ICC optima differ");
        c.require(via.count == icc.constraint.count(y.values()), "satisfied counts differ");
    }
    return c;
}

using SuiteFn = std::function<Check(const Tolerances&, std::uint64_t)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites{
        {"field", field_suite},
        {"characters", characters_suite},
        {"parseval", parseval_suite},
        {"code_fourier", code_fourier_suite},
        {"rs_duality", rs_duality_suite},
        {"noise", noise_suite},
        {"decoders", decoders_suite},
        {"reduction", reduction_suite},
        {"symmetrization", symmetrization_suite},
        {"thresholds", thresholds_suite},
        {"opi", opi_suite},
    };
    return suites;
}

}  // namespace

std::vector<std::string> selfcheck_suites() {
    std::vector<std::string> names;
    for (const auto& s : registry()) names.push_back(s.first);
    return names;
}

std::vector<SuiteResult> run_selfcheck(const Tolerances& tol, std::uint64_t seed, const std::vector<std::string>& only) {
    for (const auto& name : only) {
        const auto& r = registry();
        if (std::none_of(r.begin(), r.end(), [&](const auto& s) { return s.first == name; }))
            throw std::invalid_argument("unknown suite '" + name + "'");
    }
    std::vector<SuiteResult> out;
    for (const auto& [name, fn] : registry()) {
        if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
        SuiteResult r{name, false, {}};
        try {
            const auto c = fn(tol, seed);
            r.passed = c.passed;
            r.detail = c.note.empty() ? "max deviation " + fmt(c.worst) : c.note;
        } catch (const std::exception& e) {
            r.detail = std::string("error: ") + e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace qreduce
