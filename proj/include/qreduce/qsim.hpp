#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qreduce/codes.hpp"
#include "qreduce/config.hpp"
#include "qreduce/decode.hpp"
#include "qreduce/noise.hpp"

namespace qreduce {

/// Arithmetic on mixed-radix indices of F_q^d (coordinate 0 most significant).
class IndexArithmetic {
public:
    IndexArithmetic(std::uint32_t q, std::size_t digits);
    std::uint32_t q() const noexcept { return q_; }
    std::size_t digits() const noexcept { return digits_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t add(std::size_t a, std::size_t b) const;
    std::size_t sub(std::size_t a, std::size_t b) const;

private:
    std::size_t combine(std::size_t a, std::size_t b, bool subtract) const;
    std::uint32_t q_;
    std::size_t digits_;
    std::size_t dim_;
    std::vector<std::uint32_t> add_;  // dense tables for small dims
    std::vector<std::uint32_t> sub_;
};

/// Dense state on a product of registers, register r being F_q^{d_r}.
/// Registers are laid out in order, register 0 most significant.
class QuantumState {
public:
    QuantumState(std::uint32_t q, std::vector<std::size_t> register_digits,
                 std::size_t budget = kDefaultAmplitudeBudget);

    std::uint32_t q() const noexcept { return q_; }
    std::size_t registers() const noexcept { return digits_.size(); }
    std::size_t register_digits(std::size_t r) const { return digits_.at(r); }
    std::size_t register_dim(std::size_t r) const { return dim_.at(r); }
    std::size_t total_digits() const noexcept { return total_digits_; }
    std::size_t size() const noexcept { return amps_.size(); }

    std::span<Complex> amplitudes() noexcept { return amps_; }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    Complex& operator[](std::size_t i) { return amps_[i]; }
    Complex operator[](std::size_t i) const { return amps_[i]; }

    /// Value of register r within basis index `index`.
    std::size_t value(std::size_t index, std::size_t r) const { return (index / stride_[r]) % dim_[r]; }
    /// Basis index with register r replaced by v.
    std::size_t with_value(std::size_t index, std::size_t r, std::size_t v) const {
        return index + (v - value(index, r)) * stride_[r];
    }
    /// Basis index from one value per register.
    std::size_t index(std::initializer_list<std::size_t> values) const;

    double norm_squared() const;
    /// Sets every amplitude to zero, keeping the allocation.
    void clear() { std::fill(amps_.begin(), amps_.end(), Complex(0.0)); }

    /// Fourier transform (or its inverse) on every digit of register r.
    void fourier(std::size_t r, bool inverse = false);
    /// |…, a, …, b, …⟩ ↦ |…, a, …, b − a, …⟩ (target −= source).
    void subtract_register(std::size_t target, std::size_t source);
    /// target += source.
    void add_register(std::size_t target, std::size_t source);
    /// Zeroes every amplitude whose register r is nonzero; returns the kept mass.
    double project_zero(std::size_t r);
    /// Probability distribution of register r.
    std::vector<double> marginal(std::size_t r) const;

    /// Out-of-place basis permutation: amplitude at i moves to f(i).
    template <class F>
    void permute(F&& f) {
        scratch_.assign(amps_.size(), Complex(0.0));
        for (std::size_t i = 0; i < amps_.size(); ++i)
            if (amps_[i] != Complex(0.0)) scratch_[f(i)] = amps_[i];
        amps_.swap(scratch_);
    }

private:
    std::uint32_t q_;
    std::vector<std::size_t> digits_;
    std::vector<std::size_t> dim_;
    std::vector<std::size_t> stride_;
    std::vector<std::size_t> offset_;
    std::size_t total_digits_;
    std::vector<Complex> amps_;
    std::vector<Complex> scratch_;
};

/// Σ_e f(e)|e⟩ on a single register F_q^n.
QuantumState prepare_error_state(const ErrorProfile& profile, std::size_t budget = kDefaultAmplitudeBudget);

/// |y⟩_A|b⟩_B ↦ |y⟩_A|b + D(y)⟩_B for a total classical decoder D, stored as
/// a table of message indices over F_q^n.
class DecoderUnitary {
public:
    explicit DecoderUnitary(const Decoder& decoder, std::size_t budget = kDefaultAmplitudeBudget);
    DecoderUnitary(std::uint32_t q, std::size_t n, std::size_t k, std::vector<std::uint32_t> table);

    std::uint32_t q() const noexcept { return messages_.q(); }
    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return messages_.digits(); }
    std::size_t decode_index(std::size_t y) const { return table_[y]; }
    const std::vector<std::uint32_t>& table() const noexcept { return table_; }
    const IndexArithmetic& messages() const noexcept { return messages_; }

    void apply(QuantumState& state, std::size_t a, std::size_t b) const;
    void apply_adjoint(QuantumState& state, std::size_t a, std::size_t b) const;

private:
    void act(QuantumState& state, std::size_t a, std::size_t b, bool adjoint) const;
    std::size_t n_;
    IndexArithmetic messages_;
    std::vector<std::uint32_t> table_;
};

/// The uniformized decoder on A × B × Anc (Anc ≅ F_q^k):
///   prepare Anc uniformly, shift A by tG, apply U, shift back, B −= t.
/// On a basis state this is |y, b, t⟩ ↦ |y, b + D(y + tG) − t, t⟩ after the
/// Anc preparation. Because Anc is only ever read, the map splits into q^k
/// orthogonal branches t, each an ordinary decoder unitary for
/// D_t(y) = D(y + tG) − t with weight 1/q^k.
class SymmetrizedUnitary {
public:
    SymmetrizedUnitary(const DecoderUnitary& base, const LinearCode& code);

    std::size_t branch_count() const noexcept { return branches_.size(); }
    const DecoderUnitary& branch(std::size_t t) const { return branches_.at(t); }

    /// Literal three-step construction on registers (a, b, anc), anc starting in |0⟩.
    void apply(QuantumState& state, std::size_t a, std::size_t b, std::size_t anc) const;
    void apply_adjoint(QuantumState& state, std::size_t a, std::size_t b, std::size_t anc) const;

private:
    void shift_and_decode(QuantumState& state, std::size_t a, std::size_t b, std::size_t anc, bool adjoint) const;
    DecoderUnitary base_;
    IndexArithmetic words_;
    std::vector<std::size_t> codeword_index_;  // tG by t
    std::vector<DecoderUnitary> branches_;
};

/// |ψ_s⟩ = Σ_e f(e)|sG + e⟩ as a dense vector over F_q^n.
std::vector<Complex> code_state(const LinearCode& code, const ErrorProfile& profile, std::size_t s,
                                std::size_t budget = kDefaultAmplitudeBudget);

/// |γ_{s,s}| for every message s, by applying U to |ψ_s⟩|0⟩ and projecting B onto s.
std::vector<double> diagonal_gamma(const DecoderUnitary& U, const LinearCode& code, const ErrorProfile& profile,
                                   std::size_t budget = kDefaultAmplitudeBudget);
/// |γ′_{s,s}| for the uniformized map, extracted from the literal dense construction.
std::vector<double> diagonal_gamma(const SymmetrizedUnitary& U, const LinearCode& code,
                                   const ErrorProfile& profile, std::size_t budget = kDefaultAmplitudeBudget);

/// max_y |Σ_s χ_{−u}(s) ψ̂_s(y) − q^k·1[Gyᵀ = u]·f̂(y)|.
double fourier_image_residual(const LinearCode& code, const ErrorProfile& profile, const FieldVector& u,
                              std::size_t budget = kDefaultAmplitudeBudget);

/// P(1 − η) − 2√(ηP(1 − P)).
double theorem1_bound(double p_dec, double eta);

struct ReductionOptions {
    std::size_t budget = kDefaultAmplitudeBudget;
    Tolerances tolerances = default_tolerances();
    /// Force (true) or forbid (false) the uniformized decoder; by default it
    /// is used only when the per-message success probabilities differ.
    std::optional<bool> symmetrize;
    /// Also evaluate p_u through the γ / z_{s,y} decomposition.
    bool lemma_check = true;
};

struct ReductionOutcome {
    FieldVector u;
    double p_u = 0.0;               ///< mass of C⊥_u ∩ T in the final measurement
    double coset_mass = 0.0;        ///< mass of C⊥_u regardless of T
    double post_select_prob = 0.0;  ///< step-3 acceptance
    double p_dec = 0.0;
    double eta = 0.0;
    double bound = 0.0;
    double slack = 0.0;             ///< p_u − bound (per syndrome; informational)
    double lemma_p_u = 0.0;         ///< same quantity through the closed form, if requested
    double max_norm_drift = 0.0;    ///< largest |‖ψ‖² − 1| before post-selection
    bool symmetrized = false;
};

/// Exact dense simulation of the reduction for one or all dual syndromes.
/// Precomputes decoder tables, error amplitudes and η once.
class ReductionSimulator {
public:
    ReductionSimulator(const LinearCode& code, const ErrorProfile& profile, const Decoder& decoder,
                       const ConstraintSet& constraint, ReductionOptions options = {});

    ReductionOutcome run(const FieldVector& u) const;
    std::vector<ReductionOutcome> run_all() const;

    double p_dec() const noexcept { return p_dec_; }
    double eta() const noexcept { return eta_; }
    bool symmetrized() const noexcept { return symmetrize_; }
    const std::vector<double>& per_message_success() const noexcept { return p_s_; }
    /// q^{n+2k}, the amplitude count of the A × B × C register.
    std::size_t amplitude_count() const noexcept { return amplitudes_; }

private:
    void prepare_lemma();
    double lemma_p_u(const FieldVector& u) const;

    LinearCode code_;
    ErrorProfile profile_;
    ConstraintSet constraint_;
    ReductionOptions options_;
    std::size_t amplitudes_;
    std::vector<DecoderUnitary> branches_;
    std::vector<Complex> f_;                     // f over F_q^n
    std::vector<std::vector<std::uint32_t>> shifted_;  // [s][e] → index of sG + e
    std::vector<std::uint32_t> dual_syndrome_;   // y → index of G yᵀ
    std::vector<bool> in_T_;
    std::vector<double> p_s_;
    double p_dec_ = 0.0;
    double eta_ = 0.0;
    bool symmetrize_ = false;
    double lemma_P_ = 0.0;
    std::vector<Complex> fhat_;
    std::vector<std::vector<Complex>> z_hat_;  // [s·branches + t][y]
};

ReductionOutcome run_reduction(const LinearCode& code, const ErrorProfile& profile, const Decoder& decoder,
                               const FieldVector& u, const ConstraintSet& constraint, ReductionOptions options = {});

struct BoundReport {
    std::size_t count = 0;
    double mean_p_u = 0.0;
    double p_dec = 0.0;
    double eta = 0.0;
    double bound = 0.0;
    double slack = 0.0;
    bool passed = false;
};

/// Averages p_u over the outcomes, which must cover all `expected_count`
/// syndromes exactly once; fails when mean − bound < −tolerance.
BoundReport verify_bound(const std::vector<ReductionOutcome>& outcomes, double p_dec, double eta,
                         std::size_t expected_count, double tolerance = default_tolerances().bound_slack);

}  // namespace qreduce
