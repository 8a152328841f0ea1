#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "qreduce/codes.hpp"
#include "qreduce/noise.hpp"

namespace qreduce {

/// Find P with deg P < k such that P(i) + x_i ∈ S_i for at least ⌈τq⌉ of
/// the points i ∈ F_q.
struct OPIInstance {
    std::uint32_t q = 0;
    std::size_t k = 0;
    double tau = 0.0;
    std::vector<std::vector<Residue>> sets;  ///< S_i, one per evaluation point i = 0..q−1
    std::vector<Residue> x;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on a malformed instance.
    void validate() const;
    /// ⌈τq⌉.
    std::size_t required() const;
};

struct OPISolution {
    std::vector<Residue> coeffs;  ///< low degree first, length k
    std::size_t count = 0;
};

/// Random instance: each S_i a uniform subset of the given size, x uniform.
OPIInstance generate_opi(std::uint32_t q, std::size_t k, double tau, std::size_t set_size, std::uint64_t seed);

/// #{i : P(i) + x_i ∈ S_i}.
std::size_t satisfied_count(const OPIInstance& instance, const std::vector<Residue>& coeffs);

struct OPIVerification {
    std::size_t count = 0;
    std::size_t required = 0;
    bool meets = false;
};

/// Throws std::invalid_argument("degree violation") when more than k coefficients are given.
OPIVerification verify(const OPIInstance& instance, const OPISolution& solution);

/// Best polynomial by exhaustive search over all q^k candidates; ties go to
/// the smallest message index.
OPISolution solve_opi_bruteforce(const OPIInstance& instance, std::size_t budget = kDefaultEnumerationBudget);

/// ICC(RS_k, T) with u = H_k xᵀ. The decoding side of the reduction works on
/// RS_{q−k}, whose generator maps the same coset to `dual_syndrome`.
struct ICCInstance {
    LinearCode code;
    FieldVector u;
    ConstraintSet constraint;
    LinearCode decoding_code;
    FieldVector dual_syndrome;
};

ICCInstance opi_to_icc(const OPIInstance& instance);

/// Interpolates P through (i, y_i − x_i). Throws std::invalid_argument("not a
/// coset solution") when y − x ∉ RS_k.
OPISolution icc_to_opi(const OPIInstance& instance, const FieldVector& y);

using OPISolver = std::function<OPISolution(const OPIInstance&)>;

/// Reverse direction: x uniform in C_u, y = x + (P(i))_i for the solver's P.
FieldVector icc_from_opi_solver(const LinearCode& code, const FieldVector& u,
                                const std::vector<std::vector<Residue>>& sets, double tau,
                                const OPISolver& solver, Rng& rng);

/// Element of the coset maximizing #{i : y_i ∈ S_i}; ties go to the smallest codeword index.
FieldVector solve_icc_bruteforce(const ICCInstance& icc, std::size_t budget = kDefaultEnumerationBudget);

/// Coefficients m with m·G = c for c ∈ RS_k (interpolation), or nullopt when c ∉ RS_k.
std::optional<std::vector<Residue>> interpolate(const LinearCode& rs, const FieldVector& c);

}  // namespace qreduce
