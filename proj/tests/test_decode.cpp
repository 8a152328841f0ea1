#include <doctest.h>

#include "oracles.hpp"
#include "qreduce/decode.hpp"

using namespace qreduce;

TEST_CASE("decoding radii") {
    CHECK(unique_decoding_radius(7, 3) == 2);
    CHECK(unique_decoding_radius(5, 2) == 1);
    CHECK(johnson_radius(7, 3) == 2);    // 7 − √21 ≈ 2.42
    CHECK(johnson_radius(3, 1) == 1);
    CHECK(johnson_radius(16, 4) == 7);   // exactly 8 on the bound, so one less
}

TEST_CASE("decoder names") {
    CHECK(parse_decoder_kind("bw") == DecoderKind::berlekamp_welch);
    CHECK(parse_decoder_kind("nearest") == DecoderKind::brute_force_nearest);
    CHECK(parse_decoder_kind("brute_force_list") == DecoderKind::brute_force_list);
    CHECK_THROWS_AS(parse_decoder_kind("gs"), std::invalid_argument);
    CHECK(to_string(DecoderKind::berlekamp_welch) == "berlekamp_welch");
}

TEST_CASE("Berlekamp-Welch corrects up to (n-d)/2 errors and agrees with brute force") {
    const std::uint32_t q = 7;
    const auto code = rs_code(q, 3);
    const std::size_t t = unique_decoding_radius(q, 3);
    const std::vector<std::vector<Residue>> messages{{0, 0, 0}, {1, 2, 3}, {6, 5, 4}, {3, 0, 1}};
    std::size_t checked = 0;
    for (const auto& m : messages)
        for (std::size_t ei = 0; ei < oracle::power(q, q); ++ei) {
            auto e = oracle::digits(ei, q, q);
            if (oracle::hamming(e, std::vector<Residue>(q, 0)) > t) continue;
            const auto y = code.encode(m) + FieldVector(q, e);
            const auto bw = berlekamp_welch(code, y);
            REQUIRE(bw);
            CHECK(*bw == m);
            const auto list = brute_force_list(code, y, t);
            REQUIRE(list.size() == 1);
            CHECK(list.front() == m);
            ++checked;
        }
    CHECK(checked == messages.size() * (1 + 7 * 6 + 21 * 36));
}

TEST_CASE("Berlekamp-Welch reports failure beyond the radius instead of a wrong far word") {
    const auto code = rs_code(5, 3);  // t = 1
    std::size_t failures = 0;
    for (std::size_t yi = 0; yi < 3125; ++yi) {
        const auto y = vector_at(yi, 5, 5);
        const auto out = berlekamp_welch(code, y);
        if (!out) {
            ++failures;
            continue;
        }
        CHECK((code.encode(*out) - y).weight() <= 1);
    }
    // 125 codewords with balls of size 1 + 5·4 = 21 cover 2625 words.
    CHECK(failures == 3125 - 125 * 21);
    CHECK_THROWS_AS(berlekamp_welch(LinearCode(Matrix(5, {{1, 1, 1, 1, 1}, {0, 1, 1, 1, 1}})), vector_at(0, 5, 5)),
                    std::invalid_argument);
}

TEST_CASE("list decoding returns every codeword in the ball") {
    const auto code = rs_code(5, 2);
    const auto cws = code.codewords();
    for (std::size_t yi = 0; yi < 3125; yi += 17) {
        const auto y = vector_at(yi, 5, 5);
        for (std::size_t r : {1ul, 2ul, 3ul}) {
            const auto list = brute_force_list(code, y, r);
            std::size_t expected = 0;
            for (const auto& c : cws) expected += oracle::hamming(c.raw(), y.raw()) <= r;
            CHECK(list.size() == expected);
            for (std::size_t i = 1; i < list.size(); ++i) {
                const auto d0 = (code.encode(list[i - 1]) - y).weight(), d1 = (code.encode(list[i]) - y).weight();
                CHECK((d0 < d1 || (d0 == d1 && list[i - 1] < list[i])));
            }
        }
    }
}

TEST_CASE("nearest-codeword decoding is shift equivariant") {
    const auto code = rs_code(3, 1);
    const auto dec = Decoder::brute_force_nearest(code);
    for (std::size_t yi = 0; yi < 27; ++yi) {
        const auto y = vector_at(yi, 3, 3);
        const auto m0 = dec.decode(y);
        for (Residue s = 0; s < 3; ++s) {
            const auto shifted = dec.decode(y + code.encode(std::vector<Residue>{s}));
            CHECK(shifted[0] == (m0[0] + s) % 3);
        }
    }
}

TEST_CASE("exact success probability against a direct channel sum") {
    const auto code = rs_code(5, 2);
    const auto profile = build_profile(5, 5, centered_interval(5, 1), 0.7);
    const auto f = profile.product_function();
    for (const auto& dec : {Decoder::berlekamp_welch(code), Decoder::brute_force_nearest(code)}) {
        const auto rep = success_probability(dec, profile);
        double total = 0, correct = 0, fail = 0;
        for (std::size_t m = 0; m < 25; ++m) {
            const auto msg = oracle::digits(m, 5, 2);
            const auto c = code.encode(msg);
            for (std::size_t e = 0; e < f.size(); ++e) {
                const double w = std::norm(f[e]) / 25.0;
                const auto y = c + vector_at(e, 5, 5);
                const auto out = dec.try_decode(y);
                if (!out) fail += w;
                if (out && *out == msg) correct += w;
                if (dec.decode(y) == msg) total += w;
            }
        }
        CHECK(rep.p_dec == doctest::Approx(total).epsilon(1e-12));
        CHECK(rep.p_correct == doctest::Approx(correct).epsilon(1e-12));
        CHECK(rep.p_fail == doctest::Approx(fail).epsilon(1e-12));
        CHECK(rep.p_dec == doctest::Approx(rep.p_correct + rep.p_fail / 25.0).epsilon(1e-12));
    }
    CHECK(success_probability(Decoder::berlekamp_welch(code), profile).p_correct ==
          doctest::Approx(bw_correct_probability(profile, 2)).epsilon(1e-12));
}

TEST_CASE("message-dependent decoder uses the full enumeration") {
    const LinearCode code(Matrix(2, {{1, 1, 1}}));
    const auto profile = build_profile(2, 3, {0}, 0.9);
    const auto dec = Decoder::from_function(code, "zero", [](const FieldVector&) { return std::optional<Message>(Message{0}); });
    CHECK_FALSE(dec.shift_equivariant());
    const auto ps = per_message_success(dec, profile);
    CHECK(ps[0] == doctest::Approx(1.0));
    CHECK(ps[1] == doctest::Approx(0.0));
    CHECK(success_probability(dec, profile).p_dec == doctest::Approx(0.5));
}

TEST_CASE("Monte Carlo estimate is seeded and covers the exact value") {
    const auto code = rs_code(5, 2);
    const auto profile = build_profile(5, 5, centered_interval(5, 1), 0.7);
    const auto dec = Decoder::berlekamp_welch(code);
    const auto exact = success_probability(dec, profile);
    const auto a = success_probability_monte_carlo(dec, profile, 20000, 42);
    const auto b = success_probability_monte_carlo(dec, profile, 20000, 42);
    CHECK(a.p_dec == b.p_dec);
    CHECK(a.mode == EvaluationMode::monte_carlo);
    CHECK(a.samples == 20000);
    CHECK(std::abs(a.p_dec - exact.p_dec) < 4 * a.std_error + 1e-12);
    CHECK(a.ci_half_width == doctest::Approx(1.96 * a.std_error));
}
