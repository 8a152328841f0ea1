#include "qreduce/decode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qreduce {

std::size_t unique_decoding_radius(std::size_t n, std::size_t d) {
    if (d > n) throw std::invalid_argument("dimension exceeds length");
    return (n - d) / 2;
}

std::size_t johnson_radius(std::size_t n, std::size_t d) {
    if (d > n) throw std::invalid_argument("dimension exceeds length");
    const double nd = static_cast<double>(n);
    const double r = std::ceil(nd - std::sqrt(nd * static_cast<double>(d)) - 1e-12);
    return r >= 1.0 ? static_cast<std::size_t>(r) - 1 : 0;
}

// --- Berlekamp–Welch --------------------------------------------------------

namespace {

// Long division of `num` by monic `den` (both low degree first). Returns the
// quotient; the remainder is left in `num`'s low coefficients.
std::vector<Residue> divide_monic(std::vector<Residue>& num, const std::vector<Residue>& den, const PrimeField& f) {
    const std::size_t dd = den.size() - 1;
    if (num.size() < den.size()) return {};
    std::vector<Residue> quot(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
        const Residue c = num[i];
        if (c == 0) continue;
        quot[i - dd] = c;
        for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] = f.sub(num[i - dd + j], f.mul(c, den[j]));
    }
    return quot;
}

std::size_t distance(std::span<const Residue> a, std::span<const Residue> b) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
    return d;
}

}  // namespace

std::optional<Message> berlekamp_welch(const LinearCode& code, const FieldVector& y) {
    if (!is_standard_rs(code)) throw std::invalid_argument("Berlekamp-Welch requires a full-support RS code");
    if (y.size() != code.n()) throw std::invalid_argument("received word has the wrong length");
    const PrimeField f(code.q());
    const std::size_t n = code.n();
    const std::size_t d = code.k();
    const std::size_t t = unique_decoding_radius(n, d);

    // Unknowns: e_0..e_{t−1} then q_0..q_{d+t−1}.
    //   Σ_j e_j y_i α^j − Σ_j q_j α^j = −y_i α^t
    Matrix sys(code.q(), n, t + d + t);
    std::vector<Residue> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Residue a = static_cast<Residue>(i);
        Residue p = 1;
        for (std::size_t j = 0; j < d + t; ++j) {
            if (j < t) sys(i, j) = f.mul(y[i], p);
            if (j < d + t) sys(i, t + j) = f.neg(p);
            if (j == t) rhs[i] = f.neg(f.mul(y[i], p));
            p = f.mul(p, a);
        }
    }
    const auto sol = sys.solve(FieldVector(code.q(), std::move(rhs)));
    if (!sol) return std::nullopt;

    std::vector<Residue> E(t + 1, 1);
    for (std::size_t j = 0; j < t; ++j) E[j] = (*sol)[j];
    std::vector<Residue> Q(d + t);
    for (std::size_t j = 0; j < d + t; ++j) Q[j] = (*sol)[t + j];

    auto quotient = divide_monic(Q, E, f);
    if (std::any_of(Q.begin(), Q.end(), [](Residue c) { return c != 0; })) return std::nullopt;
    quotient.resize(d, 0);
    const auto c = code.encode(quotient);
    if (distance(c.values(), y.values()) > t) return std::nullopt;
    return quotient;
}

// --- brute force --------------------------------------------------------------

namespace {

struct CodeBook {
    std::vector<Message> messages;
    std::vector<FieldVector> words;
};

std::shared_ptr<const CodeBook> make_codebook(const LinearCode& code, std::size_t budget) {
    auto book = std::make_shared<CodeBook>();
    const std::size_t count = code.codeword_count(budget);
    book->messages.reserve(count);
    book->words.reserve(count);
    for (std::size_t m = 0; m < count; ++m) {
        Message msg(code.k());
        digits_of(m, code.q(), msg);
        book->words.push_back(code.encode(msg));
        book->messages.push_back(std::move(msg));
    }
    return book;
}

// Index of the nearest codeword, ties broken by the smallest y − c.
std::size_t nearest_index(const CodeBook& book, const FieldVector& y, std::size_t* best_distance) {
    std::size_t best = 0;
    std::size_t best_d = SIZE_MAX;
    std::optional<FieldVector> best_e;
    for (std::size_t i = 0; i < book.words.size(); ++i) {
        const std::size_t dist = distance(book.words[i].values(), y.values());
        if (dist > best_d) continue;
        auto e = y - book.words[i];
        if (dist < best_d || e < *best_e) {
            best = i;
            best_d = dist;
            best_e = std::move(e);
        }
    }
    if (best_distance) *best_distance = best_d;
    return best;
}

}  // namespace

std::vector<Message> brute_force_list(const LinearCode& code, const FieldVector& y, std::size_t radius,
                                      std::size_t budget) {
    if (y.size() != code.n()) throw std::invalid_argument("received word has the wrong length");
    const std::size_t count = code.codeword_count(budget);
    std::vector<std::pair<std::size_t, Message>> hits;
    for (std::size_t m = 0; m < count; ++m) {
        Message msg(code.k());
        digits_of(m, code.q(), msg);
        const std::size_t dist = distance(code.encode(msg).values(), y.values());
        if (dist <= radius) hits.emplace_back(dist, std::move(msg));
    }
    std::sort(hits.begin(), hits.end());
    std::vector<Message> out;
    out.reserve(hits.size());
    for (auto& h : hits) out.push_back(std::move(h.second));
    return out;
}

// --- Decoder ------------------------------------------------------------------

std::string to_string(DecoderKind kind) {
    switch (kind) {
        case DecoderKind::berlekamp_welch: return "berlekamp_welch";
        case DecoderKind::brute_force_nearest: return "brute_force_nearest";
        case DecoderKind::brute_force_list: return "brute_force_list";
        case DecoderKind::custom: return "custom";
    }
    return "custom";
}

DecoderKind parse_decoder_kind(const std::string& name) {
    if (name == "bw" || name == "berlekamp_welch") return DecoderKind::berlekamp_welch;
    if (name == "nearest" || name == "brute_force_nearest" || name == "bruteforce") return DecoderKind::brute_force_nearest;
    if (name == "list" || name == "brute_force_list") return DecoderKind::brute_force_list;
    throw std::invalid_argument("unknown decoder '" + name + "' (expected bw, nearest or list)");
}

Decoder::Decoder(DecoderKind kind, std::string name, std::shared_ptr<const LinearCode> code, std::size_t radius,
                 Function fn)
    : kind_(kind), name_(std::move(name)), code_(std::move(code)), radius_(radius), fn_(std::move(fn)) {}

Decoder Decoder::berlekamp_welch(const LinearCode& code) {
    if (!is_standard_rs(code)) throw std::invalid_argument("Berlekamp-Welch requires a full-support RS code");
    auto shared = std::make_shared<const LinearCode>(code);
    const auto* raw = shared.get();
    return {DecoderKind::berlekamp_welch, "berlekamp_welch", shared, unique_decoding_radius(code.n(), code.k()),
            [raw](const FieldVector& y) { return qreduce::berlekamp_welch(*raw, y); }};
}

Decoder Decoder::brute_force_nearest(const LinearCode& code, std::size_t budget) {
    auto book = make_codebook(code, budget);
    return {DecoderKind::brute_force_nearest, "brute_force_nearest", std::make_shared<const LinearCode>(code),
            code.n(), [book](const FieldVector& y) -> std::optional<Message> {
                return book->messages[nearest_index(*book, y, nullptr)];
            }};
}

Decoder Decoder::brute_force_list(const LinearCode& code, std::size_t radius, std::size_t budget) {
    auto book = make_codebook(code, budget);
    return {DecoderKind::brute_force_list, "brute_force_list", std::make_shared<const LinearCode>(code), radius,
            [book, radius](const FieldVector& y) -> std::optional<Message> {
                std::size_t dist = 0;
                const auto i = nearest_index(*book, y, &dist);
                if (dist > radius) return std::nullopt;
                return book->messages[i];
            }};
}

Decoder Decoder::from_function(const LinearCode& code, std::string name, Function fn) {
    return {DecoderKind::custom, std::move(name), std::make_shared<const LinearCode>(code), 0, std::move(fn)};
}

Message Decoder::decode(const FieldVector& y) const {
    auto m = fn_(y);
    if (!m) return Message(code_->k(), 0);
    if (m->size() != code_->k()) throw std::logic_error("decoder returned a message of the wrong length");
    return *m;
}

// --- success probability -------------------------------------------------------

namespace {

void check_profile(const Decoder& decoder, const ErrorProfile& profile) {
    if (profile.n() != decoder.code().n() || profile.q() != decoder.code().q())
        throw std::invalid_argument("profile does not match the code (length " + std::to_string(profile.n()) +
                                    " vs " + std::to_string(decoder.code().n()) + ")");
}

std::vector<double> error_probabilities(const ErrorProfile& profile, std::size_t budget) {
    const auto f = profile.product_function(budget);
    std::vector<double> p(f.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(f[i]);
    return p;
}

bool is_zero_message(const Message& m) {
    return std::all_of(m.begin(), m.end(), [](Residue v) { return v == 0; });
}

struct Tally {
    std::vector<double> per_message;
    double correct = 0.0;
    double fail = 0.0;
};

// Exhaustive loop over messages and errors.
Tally exhaustive(const Decoder& decoder, const ErrorProfile& profile, std::size_t budget) {
    const auto& code = decoder.code();
    const std::uint32_t q = code.q();
    require_within_budget("decoder evaluation over messages and errors", q, code.n() + code.k(), budget);
    const auto probs = error_probabilities(profile, budget);
    const std::size_t messages = checked_power(q, code.k());
    Tally t;
    t.per_message.assign(messages, 0.0);
    Message s(code.k());
    std::vector<Residue> e(code.n());
    for (std::size_t si = 0; si < messages; ++si) {
        digits_of(si, q, s);
        const auto c = code.encode(s);
        for (std::size_t ei = 0; ei < probs.size(); ++ei) {
            if (probs[ei] == 0.0) continue;
            digits_of(ei, q, e);
            const auto out = decoder.try_decode(c + FieldVector(q, e));
            if (!out) {
                t.fail += probs[ei];
                if (is_zero_message(s)) t.per_message[si] += probs[ei];
            } else if (*out == s) {
                t.correct += probs[ei];
                t.per_message[si] += probs[ei];
            }
        }
    }
    t.correct /= static_cast<double>(messages);
    t.fail /= static_cast<double>(messages);
    return t;
}

}  // namespace

std::vector<double> per_message_success(const Decoder& decoder, const ErrorProfile& profile, std::size_t budget) {
    check_profile(decoder, profile);
    return exhaustive(decoder, profile, budget).per_message;
}

DecoderReport success_probability(const Decoder& decoder, const ErrorProfile& profile, std::size_t budget) {
    check_profile(decoder, profile);
    const auto& code = decoder.code();
    const double messages = static_cast<double>(checked_power(code.q(), code.k()));
    DecoderReport r;
    r.mode = EvaluationMode::exact;
    if (decoder.shift_equivariant()) {
        // Pr[D(sG + e) = s] only depends on e, except for the sentinel credit at s = 0.
        const auto probs = error_probabilities(profile, budget);
        std::vector<Residue> e(code.n());
        for (std::size_t ei = 0; ei < probs.size(); ++ei) {
            if (probs[ei] == 0.0) continue;
            digits_of(ei, code.q(), e);
            const auto out = decoder.try_decode(FieldVector(code.q(), e));
            if (!out)
                r.p_fail += probs[ei];
            else if (is_zero_message(*out))
                r.p_correct += probs[ei];
        }
        r.p_dec = r.p_correct + r.p_fail / messages;
    } else {
        const auto t = exhaustive(decoder, profile, budget);
        r.p_correct = t.correct;
        r.p_fail = t.fail;
        for (double p : t.per_message) r.p_dec += p;
        r.p_dec /= messages;
    }
    return r;
}

DecoderReport success_probability_monte_carlo(const Decoder& decoder, const ErrorProfile& profile,
                                              std::size_t samples, std::uint64_t seed) {
    check_profile(decoder, profile);
    if (samples == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
    const auto& code = decoder.code();
    const std::uint32_t q = code.q();
    std::vector<std::vector<double>> cdf(profile.n(), std::vector<double>(q));
    for (std::size_t i = 0; i < profile.n(); ++i) {
        double acc = 0.0;
        for (Residue a = 0; a < q; ++a) cdf[i][a] = (acc += std::norm(profile.u(i)[a]));
    }
    auto rng = make_rng(seed, "decode.monte_carlo");
    std::size_t hits = 0, correct = 0, fails = 0;
    Message s(code.k());
    std::vector<Residue> e(code.n());
    for (std::size_t it = 0; it < samples; ++it) {
        for (auto& v : s) v = static_cast<Residue>(uniform_below(rng, q));
        for (std::size_t i = 0; i < code.n(); ++i) {
            const double r = uniform_unit(rng) * cdf[i].back();
            e[i] = static_cast<Residue>(std::upper_bound(cdf[i].begin(), cdf[i].end(), r) - cdf[i].begin());
            if (e[i] >= q) e[i] = q - 1;
        }
        const auto out = decoder.try_decode(code.encode(s) + FieldVector(q, e));
        if (!out) {
            ++fails;
            hits += is_zero_message(s);
        } else if (*out == s) {
            ++correct;
            ++hits;
        }
    }
    const double N = static_cast<double>(samples);
    DecoderReport r;
    r.mode = EvaluationMode::monte_carlo;
    r.samples = samples;
    r.seed = seed;
    r.p_dec = static_cast<double>(hits) / N;
    r.p_correct = static_cast<double>(correct) / N;
    r.p_fail = static_cast<double>(fails) / N;
    r.std_error = std::sqrt(r.p_dec * (1.0 - r.p_dec) / N);
    r.ci_half_width = 1.96 * r.std_error;
    return r;
}

double bw_correct_probability(const ErrorProfile& profile, std::size_t d) {
    const std::size_t t = unique_decoding_radius(profile.n(), d);
    const double nonzero = 1.0 - center_probability(profile);
    return binomial_lower_tail(profile.n(), nonzero, t + 1);
}

}  // namespace qreduce
