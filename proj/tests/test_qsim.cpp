#include <doctest.h>

#include "oracles.hpp"
#include "qreduce/qsim.hpp"
#include "qreduce/rng.hpp"

using namespace qreduce;

namespace {
void fill_random(QuantumState& st, std::uint64_t seed) {
    auto rng = make_rng(seed, "test.state");
    double norm = 0;
    for (auto& a : st.amplitudes()) {
        a = Complex(uniform_unit(rng) - 0.5, uniform_unit(rng) - 0.5);
        norm += std::norm(a);
    }
    for (auto& a : st.amplitudes()) a /= std::sqrt(norm);
}
}  // namespace

TEST_CASE("register layout and budget") {
    QuantumState st(3, {2, 1});
    CHECK(st.size() == 27);
    CHECK(st.index({4, 2}) == 14);
    CHECK(st.value(14, 0) == 4);
    CHECK(st.value(14, 1) == 2);
    CHECK(st.with_value(14, 1, 0) == 12);
    CHECK_THROWS_AS(QuantumState(5, {10, 10}, 1 << 20), BudgetExceeded);
}

TEST_CASE("Fourier on one register matches the naive transform slice by slice") {
    QuantumState st(3, {2, 1});
    fill_random(st, 1);
    const std::vector<Complex> before(st.amplitudes().begin(), st.amplitudes().end());
    st.fourier(0);
    CHECK(st.norm_squared() == doctest::Approx(1.0).epsilon(1e-13));
    for (std::size_t b = 0; b < 3; ++b) {
        std::vector<oracle::C> slice(9);
        for (std::size_t a = 0; a < 9; ++a) slice[a] = before[a * 3 + b];
        const auto expect = oracle::naive_dft(slice, 3, 2);
        for (std::size_t a = 0; a < 9; ++a) CHECK(std::abs(st[st.index({a, b})] - expect[a]) < 1e-12);
    }
    st.fourier(0, true);
    for (std::size_t i = 0; i < st.size(); ++i) CHECK(std::abs(st[i] - before[i]) < 1e-12);
}

TEST_CASE("register subtraction, projection and marginals") {
    QuantumState st(5, {1, 1});
    st[st.index({2, 4})] = std::sqrt(0.5);
    st[st.index({3, 3})] = std::sqrt(0.5);
    st.subtract_register(1, 0);  // b − a
    CHECK(std::abs(st[st.index({2, 2})]) == doctest::Approx(std::sqrt(0.5)));
    CHECK(std::abs(st[st.index({3, 0})]) == doctest::Approx(std::sqrt(0.5)));
    st.add_register(1, 0);
    CHECK(std::abs(st[st.index({2, 4})]) == doctest::Approx(std::sqrt(0.5)));
    st.subtract_register(1, 0);
    CHECK(st.project_zero(1) == doctest::Approx(0.5));
    const auto m = st.marginal(0);
    CHECK(m[3] == doctest::Approx(0.5));
    CHECK(m[2] == doctest::Approx(0.0));
}

TEST_CASE("error state is the product function") {
    const ErrorProfile p(3, {{0}, {1}, {2}}, 0.8);
    const auto st = prepare_error_state(p);
    const auto f = p.product_function();
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(st[i] - f[i]) < 1e-15);
}

TEST_CASE("decoder unitary is a permutation inverted by its adjoint") {
    const auto code = rs_code(3, 1);
    const DecoderUnitary U(Decoder::berlekamp_welch(code));
    QuantumState st(3, {3, 1});
    fill_random(st, 2);
    const std::vector<Complex> before(st.amplitudes().begin(), st.amplitudes().end());
    U.apply(st, 0, 1);
    for (std::size_t y = 0; y < 27; ++y)
        for (std::size_t b = 0; b < 3; ++b)
            CHECK(st[st.index({y, (b + U.decode_index(y)) % 3})] == before[y * 3 + b]);
    U.apply_adjoint(st, 0, 1);
    for (std::size_t i = 0; i < st.size(); ++i) CHECK(st[i] == before[i]);
}

TEST_CASE("literal symmetrized unitary splits into shifted branches") {
    const LinearCode code(Matrix(3, {{1, 1, 1}}));
    std::vector<std::uint32_t> table(27);
    for (std::size_t y = 0; y < 27; ++y) table[y] = static_cast<std::uint32_t>(y % 2);  // arbitrary
    const DecoderUnitary base(3, 3, 1, table);
    const SymmetrizedUnitary S(base, code);
    REQUIRE(S.branch_count() == 3);
    for (std::size_t t = 0; t < 3; ++t) {
        const auto tG = index_of(code.encode(std::vector<Residue>{static_cast<Residue>(t)}).values(), 3);
        const IndexArithmetic arith(3, 3);
        for (std::size_t y = 0; y < 27; ++y)
            CHECK(S.branch(t).decode_index(y) == (table[arith.add(y, tG)] + 3 - t) % 3);
    }
    QuantumState st(3, {3, 1, 1});
    for (std::size_t y = 0; y < 27; ++y) st[st.index({y, 1, 0})] = 1.0 / std::sqrt(27.0);
    S.apply(st, 0, 1, 2);
    CHECK(st.norm_squared() == doctest::Approx(1.0).epsilon(1e-13));
    for (std::size_t y = 0; y < 27; ++y)
        for (std::size_t t = 0; t < 3; ++t) {
            const auto b = (1 + S.branch(t).decode_index(y)) % 3;
            CHECK(std::abs(st[st.index({y, b, t})] - Complex(1.0 / std::sqrt(81.0))) < 1e-12);
        }
    S.apply_adjoint(st, 0, 1, 2);
    for (std::size_t y = 0; y < 27; ++y) CHECK(std::abs(st[st.index({y, 1, 0})] - 1.0 / std::sqrt(27.0)) < 1e-12);
}

TEST_CASE("symmetrization equalizes the diagonal amplitudes") {
    const LinearCode code(Matrix(2, {{1, 1, 1}}));
    const auto profile = build_profile(2, 3, {0}, 0.9);
    const auto dec = Decoder::from_function(code, "zero", [](const FieldVector&) { return std::optional<Message>(Message{0}); });
    const DecoderUnitary U(dec);
    const auto g = diagonal_gamma(U, code, profile);
    CHECK(g[0] == doctest::Approx(1.0));
    CHECK(g[1] == doctest::Approx(0.0));
    const auto gs = diagonal_gamma(SymmetrizedUnitary(U, code), code, profile);
    CHECK(std::abs(gs[0] - gs[1]) < 1e-10);
    CHECK(std::abs(gs[0] - std::sqrt(0.5)) < 1e-10);
}

TEST_CASE("Fourier image of the coset superposition") {
    const auto code = rs_code(5, 2);
    const auto profile = build_profile(5, 5, centered_interval(5, 1), 0.75);
    for (std::size_t ui = 0; ui < 25; ui += 6) CHECK(fourier_image_residual(code, profile, vector_at(ui, 5, 2)) < 1e-12);
}

TEST_CASE("reduction: acceptance equals P_Dec, closed form equals simulation, bound holds") {
    const auto code = rs_code(3, 1);
    for (double tau : {0.6, 0.9}) {
        const ErrorProfile profile(3, {{0}, {2}, {1}}, tau);
        const ConstraintSet T(profile, 0.5);
        for (const auto& dec : {Decoder::berlekamp_welch(code), Decoder::brute_force_nearest(code)}) {
            const ReductionSimulator sim(code, profile, dec, T);
            CHECK(sim.amplitude_count() == 243);
            const auto outs = sim.run_all();
            REQUIRE(outs.size() == 3);
            for (const auto& o : outs) {
                CHECK(std::abs(o.post_select_prob - sim.p_dec()) < 1e-12);
                CHECK(std::abs(o.p_u - o.lemma_p_u) < 1e-12);
                CHECK(o.max_norm_drift < 1e-12);
                CHECK(o.p_u <= o.coset_mass + 1e-12);
            }
            CHECK(sim.eta() == doctest::Approx(tail_mass(profile, 0.5).exact).epsilon(1e-12));
            const auto rep = verify_bound(outs, sim.p_dec(), sim.eta(), 3);
            CHECK(rep.passed);
            CHECK(rep.bound == doctest::Approx(theorem1_bound(sim.p_dec(), sim.eta())));
        }
    }
}

TEST_CASE("BW with failures is symmetrized, nearest decoding is not") {
    const auto code = rs_code(3, 1);
    const auto profile = build_profile(3, 3, {0}, 0.8);
    const ConstraintSet T(profile, 0.6);
    CHECK(ReductionSimulator(code, profile, Decoder::berlekamp_welch(code), T).symmetrized());
    CHECK_FALSE(ReductionSimulator(code, profile, Decoder::brute_force_nearest(code), T).symmetrized());
    ReductionOptions off;
    off.symmetrize = false;
    CHECK_FALSE(ReductionSimulator(code, profile, Decoder::berlekamp_welch(code), T, off).symmetrized());
}

TEST_CASE("perfect decoding with no constraint gives p_u = 1") {
    // τ = ρ makes û flat, so f is the delta at 0 and every decoder succeeds.
    const auto code = rs_code(3, 1);
    const auto profile = build_profile(3, 3, {0}, 1.0 / 3.0);
    const ConstraintSet T(profile, 0.0);
    const ReductionSimulator sim(code, profile, Decoder::brute_force_nearest(code), T);
    CHECK(sim.p_dec() == doctest::Approx(1.0));
    CHECK(sim.eta() == doctest::Approx(0.0));
    for (const auto& o : sim.run_all()) CHECK(o.p_u == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simulator input checks") {
    const auto code = rs_code(3, 1);
    const auto profile = build_profile(3, 3, {0}, 0.8);
    const ConstraintSet T(profile, 0.6);
    const ReductionSimulator sim(code, profile, Decoder::brute_force_nearest(code), T);
    CHECK_THROWS_AS(sim.run(FieldVector(3, {0, 0})), std::invalid_argument);
    CHECK_THROWS_AS(verify_bound(sim.run_all(), sim.p_dec(), sim.eta(), 4), std::invalid_argument);
    auto dup = sim.run_all();
    dup[1] = dup[0];
    CHECK_THROWS_AS(verify_bound(dup, sim.p_dec(), sim.eta(), 3), std::invalid_argument);
    ReductionOptions tiny;
    tiny.budget = 100;
    CHECK_THROWS_AS(ReductionSimulator(code, profile, Decoder::brute_force_nearest(code), T, tiny), BudgetExceeded);
    CHECK_THROWS_AS(ReductionSimulator(code, build_profile(3, 2, {0}, 0.8), Decoder::brute_force_nearest(code), T),
                    std::invalid_argument);
}
