#include "qreduce/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qreduce {

// --- IndexArithmetic --------------------------------------------------------

namespace {
constexpr std::size_t kTableLimit = 1024;
}

IndexArithmetic::IndexArithmetic(std::uint32_t q, std::size_t digits)
    : q_(q), digits_(digits), dim_(checked_power(q, digits)) {
    if (dim_ <= kTableLimit) {
        add_.resize(dim_ * dim_);
        sub_.resize(dim_ * dim_);
        for (std::size_t a = 0; a < dim_; ++a)
            for (std::size_t b = 0; b < dim_; ++b) {
                add_[a * dim_ + b] = static_cast<std::uint32_t>(combine(a, b, false));
                sub_[a * dim_ + b] = static_cast<std::uint32_t>(combine(a, b, true));
            }
    }
}

std::size_t IndexArithmetic::combine(std::size_t a, std::size_t b, bool subtract) const {
    std::size_t out = 0, scale = 1;
    for (std::size_t d = 0; d < digits_; ++d) {
        const std::size_t x = a % q_, y = b % q_;
        const std::size_t r = subtract ? (x + q_ - y) % q_ : (x + y) % q_;
        out += r * scale;
        scale *= q_;
        a /= q_;
        b /= q_;
    }
    return out;
}

std::size_t IndexArithmetic::add(std::size_t a, std::size_t b) const {
    return add_.empty() ? combine(a, b, false) : add_[a * dim_ + b];
}

std::size_t IndexArithmetic::sub(std::size_t a, std::size_t b) const {
    return sub_.empty() ? combine(a, b, true) : sub_[a * dim_ + b];
}

// --- QuantumState -----------------------------------------------------------

QuantumState::QuantumState(std::uint32_t q, std::vector<std::size_t> register_digits, std::size_t budget)
    : q_(PrimeField(q).q()), digits_(std::move(register_digits)) {
    total_digits_ = 0;
    for (auto d : digits_) total_digits_ += d;
    const std::size_t size = require_within_budget("quantum state", q_, total_digits_, budget);
    std::size_t offset = 0;
    for (auto d : digits_) {
        dim_.push_back(checked_power(q_, d));
        offset_.push_back(offset);
        stride_.push_back(checked_power(q_, total_digits_ - offset - d));
        offset += d;
    }
    amps_.assign(size, Complex(0.0));
}

std::size_t QuantumState::index(std::initializer_list<std::size_t> values) const {
    if (values.size() != digits_.size()) throw std::invalid_argument("one value per register expected");
    std::size_t idx = 0, r = 0;
    for (auto v : values) idx += v * stride_[r++];
    return idx;
}

double QuantumState::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

void QuantumState::fourier(std::size_t r, bool inverse) {
    fourier_digits(amps_, q_, total_digits_, offset_.at(r), digits_.at(r), inverse);
}

namespace {
void require_same_width(const QuantumState& s, std::size_t a, std::size_t b) {
    if (s.register_digits(a) != s.register_digits(b))
        throw std::invalid_argument("register arithmetic needs registers of equal width");
}
}  // namespace

void QuantumState::subtract_register(std::size_t target, std::size_t source) {
    require_same_width(*this, target, source);
    const IndexArithmetic arith(q_, digits_[target]);
    permute([&](std::size_t i) { return with_value(i, target, arith.sub(value(i, target), value(i, source))); });
}

void QuantumState::add_register(std::size_t target, std::size_t source) {
    require_same_width(*this, target, source);
    const IndexArithmetic arith(q_, digits_[target]);
    permute([&](std::size_t i) { return with_value(i, target, arith.add(value(i, target), value(i, source))); });
}

double QuantumState::project_zero(std::size_t r) {
    double kept = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (value(i, r) != 0)
            amps_[i] = 0.0;
        else
            kept += std::norm(amps_[i]);
    }
    return kept;
}

std::vector<double> QuantumState::marginal(std::size_t r) const {
    std::vector<double> m(dim_.at(r), 0.0);
    for (std::size_t i = 0; i < amps_.size(); ++i) m[value(i, r)] += std::norm(amps_[i]);
    return m;
}

QuantumState prepare_error_state(const ErrorProfile& profile, std::size_t budget) {
    QuantumState state(profile.q(), {profile.n()}, budget);
    const auto f = profile.product_function(budget);
    std::copy(f.amplitudes().begin(), f.amplitudes().end(), state.amplitudes().begin());
    return state;
}

// --- decoder unitaries ------------------------------------------------------

DecoderUnitary::DecoderUnitary(std::uint32_t q, std::size_t n, std::size_t k, std::vector<std::uint32_t> table)
    : n_(n), messages_(q, k), table_(std::move(table)) {
    if (table_.size() != checked_power(q, n)) throw std::invalid_argument("decoder table must cover F_q^n");
    for (auto m : table_)
        if (m >= messages_.dim()) throw std::invalid_argument("decoder table entry outside F_q^k");
}

namespace {
std::vector<std::uint32_t> tabulate(const Decoder& decoder, std::size_t budget) {
    const auto& code = decoder.code();
    const std::size_t size = require_within_budget("decoder table", code.q(), code.n(), budget);
    std::vector<std::uint32_t> table(size);
    for (std::size_t y = 0; y < size; ++y)
        table[y] = static_cast<std::uint32_t>(index_of(decoder.decode(vector_at(y, code.q(), code.n())), code.q()));
    return table;
}
}  // namespace

DecoderUnitary::DecoderUnitary(const Decoder& decoder, std::size_t budget)
    : DecoderUnitary(decoder.code().q(), decoder.code().n(), decoder.code().k(), tabulate(decoder, budget)) {}

void DecoderUnitary::act(QuantumState& state, std::size_t a, std::size_t b, bool adjoint) const {
    if (state.q() != q() || state.register_digits(a) != n_ || state.register_digits(b) != k())
        throw std::invalid_argument("decoder unitary does not match the register layout");
    state.permute([&](std::size_t i) {
        const std::size_t m = table_[state.value(i, a)];
        const std::size_t bv = state.value(i, b);
        return state.with_value(i, b, adjoint ? messages_.sub(bv, m) : messages_.add(bv, m));
    });
}

void DecoderUnitary::apply(QuantumState& state, std::size_t a, std::size_t b) const { act(state, a, b, false); }
void DecoderUnitary::apply_adjoint(QuantumState& state, std::size_t a, std::size_t b) const { act(state, a, b, true); }

namespace {
std::vector<std::size_t> codeword_indices(const LinearCode& code) {
    const std::size_t count = checked_power(code.q(), code.k());
    std::vector<std::size_t> out(count);
    std::vector<Residue> msg(code.k());
    for (std::size_t t = 0; t < count; ++t) {
        digits_of(t, code.q(), msg);
        out[t] = index_of(code.encode(msg).values(), code.q());
    }
    return out;
}
}  // namespace

SymmetrizedUnitary::SymmetrizedUnitary(const DecoderUnitary& base, const LinearCode& code)
    : base_(base), words_(code.q(), code.n()), codeword_index_(codeword_indices(code)) {
    if (code.q() != base.q() || code.n() != base.n() || code.k() != base.k())
        throw std::invalid_argument("code does not match the decoder unitary");
    const auto& msgs = base.messages();
    branches_.reserve(codeword_index_.size());
    for (std::size_t t = 0; t < codeword_index_.size(); ++t) {
        std::vector<std::uint32_t> table(base.table().size());
        for (std::size_t y = 0; y < table.size(); ++y)
            table[y] = static_cast<std::uint32_t>(msgs.sub(base.decode_index(words_.add(y, codeword_index_[t])), t));
        branches_.emplace_back(base.q(), base.n(), base.k(), std::move(table));
    }
}

void SymmetrizedUnitary::shift_and_decode(QuantumState& state, std::size_t a, std::size_t b, std::size_t anc,
                                          bool adjoint) const {
    auto shift = [&](bool back) {
        state.permute([&](std::size_t i) {
            const std::size_t cw = codeword_index_[state.value(i, anc)];
            const std::size_t y = state.value(i, a);
            return state.with_value(i, a, back ? words_.sub(y, cw) : words_.add(y, cw));
        });
    };
    if (!adjoint) {
        state.fourier(anc);
        shift(false);
        base_.apply(state, a, b);
        shift(true);
        state.subtract_register(b, anc);
    } else {
        state.add_register(b, anc);
        shift(false);
        base_.apply_adjoint(state, a, b);
        shift(true);
        state.fourier(anc, /*inverse=*/true);
    }
}

void SymmetrizedUnitary::apply(QuantumState& state, std::size_t a, std::size_t b, std::size_t anc) const {
    shift_and_decode(state, a, b, anc, false);
}

void SymmetrizedUnitary::apply_adjoint(QuantumState& state, std::size_t a, std::size_t b, std::size_t anc) const {
    shift_and_decode(state, a, b, anc, true);
}

// --- amplitude extraction ---------------------------------------------------

std::vector<Complex> code_state(const LinearCode& code, const ErrorProfile& profile, std::size_t s,
                                std::size_t budget) {
    if (profile.n() != code.n() || profile.q() != code.q()) throw std::invalid_argument("profile does not match code");
    const auto f = profile.product_function(budget);
    const IndexArithmetic words(code.q(), code.n());
    std::vector<Residue> msg(code.k());
    digits_of(s, code.q(), msg);
    const std::size_t cw = index_of(code.encode(msg).values(), code.q());
    std::vector<Complex> psi(f.size());
    for (std::size_t e = 0; e < f.size(); ++e) psi[words.add(cw, e)] = f[e];
    return psi;
}

std::vector<double> diagonal_gamma(const DecoderUnitary& U, const LinearCode& code, const ErrorProfile& profile,
                                   std::size_t budget) {
    const std::size_t messages = checked_power(code.q(), code.k());
    std::vector<double> gamma(messages);
    for (std::size_t s = 0; s < messages; ++s) {
        QuantumState st(code.q(), {code.n(), code.k()}, budget);
        const auto psi = code_state(code, profile, s, budget);
        for (std::size_t y = 0; y < psi.size(); ++y) st[st.index({y, 0})] = psi[y];
        U.apply(st, 0, 1);
        double mass = 0.0;
        for (std::size_t i = 0; i < st.size(); ++i)
            if (st.value(i, 1) == s) mass += std::norm(st[i]);
        gamma[s] = std::sqrt(mass);
    }
    return gamma;
}

std::vector<double> diagonal_gamma(const SymmetrizedUnitary& U, const LinearCode& code, const ErrorProfile& profile,
                                   std::size_t budget) {
    const std::size_t messages = checked_power(code.q(), code.k());
    std::vector<double> gamma(messages);
    for (std::size_t s = 0; s < messages; ++s) {
        QuantumState st(code.q(), {code.n(), code.k(), code.k()}, budget);
        const auto psi = code_state(code, profile, s, budget);
        for (std::size_t y = 0; y < psi.size(); ++y) st[st.index({y, 0, 0})] = psi[y];
        U.apply(st, 0, 1, 2);
        double mass = 0.0;
        for (std::size_t i = 0; i < st.size(); ++i)
            if (st.value(i, 1) == s) mass += std::norm(st[i]);
        gamma[s] = std::sqrt(mass);
    }
    return gamma;
}

namespace {
// χ_{−u}(s) for message index s.
Complex minus_character(const FieldVector& u, std::size_t s) {
    const auto sv = vector_at(s, u.q(), u.size());
    return std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(u.dot(sv)) / u.q());
}

std::vector<std::uint32_t> dual_syndromes(const LinearCode& code) {
    const std::size_t size = checked_power(code.q(), code.n());
    std::vector<std::uint32_t> out(size);
    for (std::size_t y = 0; y < size; ++y)
        out[y] = static_cast<std::uint32_t>(
            index_of(syndrome(code, vector_at(y, code.q(), code.n()), Side::dual).values(), code.q()));
    return out;
}
}  // namespace

double fourier_image_residual(const LinearCode& code, const ErrorProfile& profile, const FieldVector& u,
                              std::size_t budget) {
    if (u.size() != code.k()) throw std::invalid_argument("dual syndrome must have length k");
    const std::size_t messages = checked_power(code.q(), code.k());
    std::vector<Complex> acc(checked_power(code.q(), code.n()));
    for (std::size_t s = 0; s < messages; ++s) {
        auto psi = code_state(code, profile, s, budget);
        fourier_digits(psi, code.q(), code.n(), 0, code.n());
        const Complex w = minus_character(u, s);
        for (std::size_t y = 0; y < psi.size(); ++y) acc[y] += w * psi[y];
    }
    const auto fhat = profile.fourier_side(budget);
    const auto syn = dual_syndromes(code);
    const std::size_t ui = index_of(u.values(), u.q());
    double worst = 0.0;
    for (std::size_t y = 0; y < acc.size(); ++y) {
        const Complex expect = syn[y] == ui ? static_cast<double>(messages) * fhat[y] : Complex(0.0);
        worst = std::max(worst, std::abs(acc[y] - expect));
    }
    return worst;
}

double theorem1_bound(double p_dec, double eta) {
    return p_dec * (1.0 - eta) - 2.0 * std::sqrt(std::max(0.0, eta * p_dec * (1.0 - p_dec)));
}

// --- reduction ----------------------------------------------------------------

ReductionSimulator::ReductionSimulator(const LinearCode& code, const ErrorProfile& profile, const Decoder& decoder,
                                       const ConstraintSet& constraint, ReductionOptions options)
    : code_(code), profile_(profile), constraint_(constraint), options_(std::move(options)) {
    if (profile.q() != code.q() || profile.n() != code.n())
        throw std::invalid_argument("profile does not match the decoding code");
    if (constraint.q() != code.q() || constraint.n() != code.n())
        throw std::invalid_argument("constraint set does not match the decoding code");
    if (decoder.code().q() != code.q() || decoder.code().n() != code.n() || decoder.code().k() != code.k())
        throw std::invalid_argument("decoder targets a different code");

    const std::uint32_t q = code.q();
    const std::size_t n = code.n(), k = code.k();
    amplitudes_ = require_within_budget("reduction state A x B x C", q, n + 2 * k, options_.budget);

    const auto f = profile.product_function(options_.budget);
    f_.assign(f.amplitudes().begin(), f.amplitudes().end());
    const std::size_t words = f_.size();
    const std::size_t messages = checked_power(q, k);

    const IndexArithmetic arith(q, n);
    const auto cw = codeword_indices(code);
    shifted_.assign(messages, std::vector<std::uint32_t>(words));
    for (std::size_t s = 0; s < messages; ++s)
        for (std::size_t e = 0; e < words; ++e) shifted_[s][e] = static_cast<std::uint32_t>(arith.add(cw[s], e));

    dual_syndrome_ = dual_syndromes(code);
    in_T_.resize(words);
    for (std::size_t y = 0; y < words; ++y) in_T_[y] = constraint.contains_index(y);

    const auto fhat = profile.fourier_side(options_.budget);
    double inside = 0.0;
    for (std::size_t y = 0; y < words; ++y)
        if (in_T_[y]) inside += std::norm(fhat[y]);
    eta_ = std::max(0.0, 1.0 - inside);

    DecoderUnitary base(decoder, options_.budget);
    p_s_.assign(messages, 0.0);
    for (std::size_t s = 0; s < messages; ++s)
        for (std::size_t e = 0; e < words; ++e)
            if (base.decode_index(shifted_[s][e]) == s) p_s_[s] += std::norm(f_[e]);
    p_dec_ = success_probability(decoder, profile, options_.budget).p_dec;

    const auto [lo, hi] = std::minmax_element(p_s_.begin(), p_s_.end());
    symmetrize_ = options_.symmetrize.value_or(*hi - *lo > options_.tolerances.uniformity);
    if (symmetrize_) {
        SymmetrizedUnitary sym(base, code);
        for (std::size_t t = 0; t < sym.branch_count(); ++t) branches_.push_back(sym.branch(t));
    } else {
        branches_.push_back(std::move(base));
    }
    if (options_.lemma_check) prepare_lemma();
}

ReductionOutcome ReductionSimulator::run(const FieldVector& u) const {
    if (u.size() != code_.k() || u.q() != code_.q())
        throw std::invalid_argument("dual syndrome must have length " + std::to_string(code_.k()));
    const std::uint32_t q = code_.q();
    const std::size_t n = code_.n(), k = code_.k();
    const std::size_t words = f_.size();
    const std::size_t messages = checked_power(q, k);
    const double weight = 1.0 / static_cast<double>(branches_.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(messages));

    std::vector<Complex> phase(messages);
    for (std::size_t s = 0; s < messages; ++s) phase[s] = minus_character(u, s);

    ReductionOutcome out{u};
    out.symmetrized = symmetrize_;
    std::vector<double> final_mass(words, 0.0);
    double accepted = 0.0;
    QuantumState st(q, {n, k, k}, options_.budget);
    QuantumState ab(q, {n, k}, options_.budget);
    for (const auto& U : branches_) {
        st.clear();
        // Step 1: q^{−k/2} Σ_s χ_{−u}(s)|ψ_s⟩|0⟩|s⟩.
        for (std::size_t s = 0; s < messages; ++s)
            for (std::size_t e = 0; e < words; ++e)
                if (f_[e] != Complex(0.0)) st[st.index({shifted_[s][e], 0, s})] = scale * phase[s] * f_[e];
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(st.norm_squared() - 1.0));
        // Step 2: U on (A, B), then C −= B.
        U.apply(st, 0, 1);
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(st.norm_squared() - 1.0));
        st.subtract_register(2, 1);
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(st.norm_squared() - 1.0));
        // Step 3: keep C = 0, then discard C.
        accepted += weight * st.project_zero(2);
        for (std::size_t i = 0; i < ab.size(); ++i) ab[i] = st[i * messages];
        // Step 4: U† on (A, B).
        U.apply_adjoint(ab, 0, 1);
        // Step 5: Fourier on A; the outcome distribution marginalizes B.
        ab.fourier(0);
        const auto m = ab.marginal(0);
        for (std::size_t y = 0; y < words; ++y) final_mass[y] += weight * m[y];
    }

    out.post_select_prob = accepted;
    const std::size_t ui = index_of(u.values(), q);
    if (accepted > 0.0) {
        for (std::size_t y = 0; y < words; ++y) {
            if (dual_syndrome_[y] != ui) continue;
            out.coset_mass += final_mass[y] / accepted;
            if (in_T_[y]) out.p_u += final_mass[y] / accepted;
        }
    }
    out.p_dec = p_dec_;
    out.eta = eta_;
    out.bound = theorem1_bound(p_dec_, eta_);
    out.slack = out.p_u - out.bound;
    out.lemma_p_u = options_.lemma_check ? lemma_p_u(u) : std::nan("");
    return out;
}

// |Z_s⟩ is the normalized residual of U†(|ψ̃_{s,s}⟩|s⟩) orthogonal to
// |ψ_s⟩, carried over the branch register; ẑ_s(·, t) is its Fourier image
// on A. Independent of u, so computed once.
void ReductionSimulator::prepare_lemma() {
    const std::uint32_t q = code_.q();
    const std::size_t n = code_.n();
    const std::size_t words = f_.size();
    const std::size_t messages = shifted_.size();
    const std::size_t B = branches_.size();
    const double w = 1.0 / static_cast<double>(B);

    double P = 0.0;
    for (std::size_t s = 0; s < messages; ++s)
        for (const auto& U : branches_)
            for (std::size_t e = 0; e < words; ++e)
                if (U.decode_index(shifted_[s][e]) == s) P += w * std::norm(f_[e]);
    lemma_P_ = P / static_cast<double>(messages);
    const auto fhat = profile_.fourier_side(options_.budget);
    fhat_.assign(fhat.amplitudes().begin(), fhat.amplitudes().end());

    const double gamma = std::sqrt(lemma_P_);
    const double rest = std::sqrt(std::max(0.0, 1.0 - lemma_P_));
    z_hat_.clear();
    if (gamma <= 0.0 || rest <= 1e-12) return;
    z_hat_.assign(messages * B, std::vector<Complex>(words));
    for (std::size_t s = 0; s < messages; ++s)
        for (std::size_t t = 0; t < B; ++t) {
            auto& z = z_hat_[s * B + t];
            for (std::size_t e = 0; e < words; ++e) {
                const std::size_t y = shifted_[s][e];
                const Complex W = branches_[t].decode_index(y) == s ? std::sqrt(w) * f_[e] / gamma : Complex(0.0);
                z[y] = (W - gamma * std::sqrt(w) * f_[e]) / rest;
            }
            fourier_digits(z, q, n, 0, n);
        }
}

// p_u = Σ_{y ∈ C⊥_u ∩ T} Σ_t |√P √q^k f̂(y) √w_t + √((1−P)/q^k) Σ_s χ_{−u}(s) ẑ_s(y, t)|².
double ReductionSimulator::lemma_p_u(const FieldVector& u) const {
    if (lemma_P_ <= 0.0) return 0.0;
    const std::uint32_t q = code_.q();
    const std::size_t words = f_.size();
    const std::size_t messages = shifted_.size();
    const std::size_t B = branches_.size();
    const double w = 1.0 / static_cast<double>(B);
    const double qk = static_cast<double>(messages);
    const double gamma = std::sqrt(lemma_P_);
    const double rest = std::sqrt(std::max(0.0, 1.0 - lemma_P_));

    std::vector<Complex> phase(messages);
    for (std::size_t s = 0; s < messages; ++s) phase[s] = minus_character(u, s);
    const std::size_t ui = index_of(u.values(), q);
    double p = 0.0;
    for (std::size_t y = 0; y < words; ++y) {
        if (dual_syndrome_[y] != ui || !in_T_[y]) continue;
        for (std::size_t t = 0; t < B; ++t) {
            Complex residual = 0.0;
            if (!z_hat_.empty())
                for (std::size_t s = 0; s < messages; ++s) residual += phase[s] * z_hat_[s * B + t][y];
            const Complex ideal = gamma * std::sqrt(qk) * fhat_[y] * std::sqrt(w);
            p += std::norm(ideal + rest / std::sqrt(qk) * residual);
        }
    }
    return p;
}

std::vector<ReductionOutcome> ReductionSimulator::run_all() const {
    const std::size_t messages = checked_power(code_.q(), code_.k());
    std::vector<ReductionOutcome> out;
    out.reserve(messages);
    for (std::size_t ui = 0; ui < messages; ++ui) out.push_back(run(vector_at(ui, code_.q(), code_.k())));
    return out;
}

ReductionOutcome run_reduction(const LinearCode& code, const ErrorProfile& profile, const Decoder& decoder,
                               const FieldVector& u, const ConstraintSet& constraint, ReductionOptions options) {
    return ReductionSimulator(code, profile, decoder, constraint, std::move(options)).run(u);
}

BoundReport verify_bound(const std::vector<ReductionOutcome>& outcomes, double p_dec, double eta,
                         std::size_t expected_count, double tolerance) {
    if (outcomes.size() != expected_count)
        throw std::invalid_argument("bound verification needs all " + std::to_string(expected_count) +
                                    " syndromes, got " + std::to_string(outcomes.size()));
    std::vector<FieldVector> seen;
    for (const auto& o : outcomes) seen.push_back(o.u);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("bound verification received a repeated syndrome");

    BoundReport r;
    r.count = outcomes.size();
    for (const auto& o : outcomes) r.mean_p_u += o.p_u;
    r.mean_p_u /= static_cast<double>(std::max<std::size_t>(1, r.count));
    r.p_dec = p_dec;
    r.eta = eta;
    r.bound = theorem1_bound(p_dec, eta);
    r.slack = r.mean_p_u - r.bound;
    r.passed = r.slack >= -tolerance;
    return r;
}

}  // namespace qreduce
