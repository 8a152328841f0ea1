#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qreduce/codes.hpp"
#include "qreduce/noise.hpp"

namespace qreduce {

using Message = std::vector<Residue>;

/// ⌊(n − d)/2⌋: errors always corrected by unique decoding of an [n, d] MDS code.
std::size_t unique_decoding_radius(std::size_t n, std::size_t d);
/// ⌈n − √(n·d)⌉ − 1 for an [n, d] RS code: largest integer radius strictly
/// inside the Guruswami–Sudan (Johnson) radius n − √(n·d).
std::size_t johnson_radius(std::size_t n, std::size_t d);

/// Berlekamp–Welch for a full-support RS_d code. Solves
///   y_i·E(α_i) = Q(α_i),  E monic of degree t₀ = ⌊(n−d)/2⌋,  deg Q < d + t₀,
/// divides Q by E and checks the result lies within t₀ of y. Returns the
/// message (coefficients of P, low degree first) or nullopt on failure.
/// Throws std::invalid_argument when `code` is not a standard RS code.
std::optional<Message> berlekamp_welch(const LinearCode& code, const FieldVector& y);

/// All messages whose codewords lie within Hamming distance `radius` of y,
/// ordered by distance and then lexicographically by message.
std::vector<Message> brute_force_list(const LinearCode& code, const FieldVector& y, std::size_t radius,
                                      std::size_t budget = kDefaultEnumerationBudget);

enum class DecoderKind { berlekamp_welch, brute_force_nearest, brute_force_list, custom };

std::string to_string(DecoderKind kind);
/// Accepts "bw", "berlekamp_welch", "nearest", "brute_force_nearest", "list",
/// "brute_force_list".
DecoderKind parse_decoder_kind(const std::string& name);

/// A total deterministic decoder y ↦ message. `try_decode` exposes failure;
/// `decode` maps failure to the all-zeros message, which is what the
/// coherent decoder unitary consumes.
class Decoder {
public:
    using Function = std::function<std::optional<Message>(const FieldVector&)>;

    static Decoder berlekamp_welch(const LinearCode& code);
    /// Nearest codeword; ties broken by the lexicographically smallest error
    /// pattern y − c, which keeps the decoder equivariant under codeword shifts.
    static Decoder brute_force_nearest(const LinearCode& code, std::size_t budget = kDefaultEnumerationBudget);
    /// Nearest codeword provided it is within `radius`, else failure. With the
    /// Johnson radius this is the list-decoding oracle collapsed to one output.
    static Decoder brute_force_list(const LinearCode& code, std::size_t radius,
                                    std::size_t budget = kDefaultEnumerationBudget);
    /// Arbitrary decoder. Not assumed to commute with codeword shifts.
    static Decoder from_function(const LinearCode& code, std::string name, Function fn);

    DecoderKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    const LinearCode& code() const noexcept { return *code_; }
    std::size_t radius() const noexcept { return radius_; }
    /// D(y + c) = D(y) + m(c) for every codeword c (up to failure).
    bool shift_equivariant() const noexcept { return kind_ != DecoderKind::custom; }

    std::optional<Message> try_decode(const FieldVector& y) const { return fn_(y); }
    Message decode(const FieldVector& y) const;

private:
    Decoder(DecoderKind kind, std::string name, std::shared_ptr<const LinearCode> code, std::size_t radius,
            Function fn);

    DecoderKind kind_;
    std::string name_;
    std::shared_ptr<const LinearCode> code_;
    std::size_t radius_;
    Function fn_;
};

enum class EvaluationMode { exact, monte_carlo };

/// Success statistics of a decoder on the channel y = sG + e, e ~ |f|².
///   p_dec     = (1/q^k) Σ_s Pr[decode(sG + e) = s], for the total decoder.
///               This is the quantity the coherent reduction accepts with.
///   p_correct = Pr[try_decode(sG + e) = s] averaged over s (no sentinel credit).
///   p_fail    = Pr[try_decode fails].
/// For shift-equivariant decoders p_dec = p_correct + p_fail / q^k.
struct DecoderReport {
    double p_dec = 0.0;
    double p_correct = 0.0;
    double p_fail = 0.0;
    EvaluationMode mode = EvaluationMode::exact;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double std_error = 0.0;
    double ci_half_width = 0.0;  ///< 95% normal interval, Monte Carlo only
};

/// Exact evaluation by enumerating F_q^n (and all messages for decoders that
/// are not shift-equivariant).
DecoderReport success_probability(const Decoder& decoder, const ErrorProfile& profile,
                                  std::size_t budget = kDefaultAmplitudeBudget);

/// Seeded Monte Carlo: s uniform, e_i ~ |u_i|² independently.
DecoderReport success_probability_monte_carlo(const Decoder& decoder, const ErrorProfile& profile,
                                              std::size_t samples, std::uint64_t seed);

/// p_s = Pr[decode(sG + e) = s] for every message s, by index.
std::vector<double> per_message_success(const Decoder& decoder, const ErrorProfile& profile,
                                        std::size_t budget = kDefaultAmplitudeBudget);

/// Pr[wt(e) ≤ ⌊(n−d)/2⌋] from the binomial law of the error weight; each
/// coordinate is nonzero with probability 1 − |u_i(0)|², the same for all i.
double bw_correct_probability(const ErrorProfile& profile, std::size_t d);

}  // namespace qreduce
