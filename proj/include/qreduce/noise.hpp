#pragma once

#include <cstddef>
#include <vector>

#include "qreduce/galois.hpp"

namespace qreduce {

/// Product error function f = ⊗ u_i whose Fourier side is flat on each S_i
/// (total mass τ) and flat off it (mass 1 − τ):
///   û_i(α) = √(τ/|S_i|) on S_i,  √((1−τ)/(q−|S_i|)) elsewhere,
/// and u_i is the inverse transform of û_i. All |S_i| are equal.
class ErrorProfile {
public:
    /// `sets` holds one subset of F_q per coordinate (n = sets.size()).
    /// Throws std::invalid_argument for ragged sizes, empty or full sets,
    /// residues outside F_q, or τ ∉ (0, 1].
    ErrorProfile(std::uint32_t q, std::vector<std::vector<Residue>> sets, double tau);

    std::uint32_t q() const noexcept { return q_; }
    std::size_t n() const noexcept { return sets_.size(); }
    double tau() const noexcept { return tau_; }
    std::size_t set_size() const noexcept { return sets_.front().size(); }
    double rho() const noexcept { return static_cast<double>(set_size()) / q_; }

    const std::vector<Residue>& set(std::size_t i) const { return sets_.at(i); }
    const std::vector<std::vector<Residue>>& sets() const noexcept { return sets_; }
    bool in_set(std::size_t i, Residue a) const { return member_[i * q_ + a]; }

    double hat_in() const noexcept { return hat_in_; }
    double hat_out() const noexcept { return hat_out_; }
    /// û_i as a length-q real vector.
    std::vector<double> hat(std::size_t i) const;
    /// u_i as a length-q complex vector.
    const std::vector<Complex>& u(std::size_t i) const { return u_.at(i); }

    /// f(e) = Π u_i(e_i) for a mixed-radix index e.
    Complex amplitude(std::size_t index) const;
    /// |u_i(0)|² from the numerically computed u_i.
    double center_probability_numeric(std::size_t i) const;

    /// Dense f on F_q^n (budget-checked).
    ComplexFunction product_function(std::size_t budget = kDefaultAmplitudeBudget) const;
    /// Dense f̂ = ⊗ û_i (budget-checked).
    ComplexFunction fourier_side(std::size_t budget = kDefaultAmplitudeBudget) const;

private:
    std::uint32_t q_;
    std::vector<std::vector<Residue>> sets_;
    std::vector<bool> member_;
    double tau_;
    double hat_in_;
    double hat_out_;
    std::vector<std::vector<Complex>> u_;
};

/// Same-set convenience: S_i = set for every coordinate.
ErrorProfile build_profile(std::uint32_t q, std::size_t n, const std::vector<Residue>& set, double tau);
ErrorProfile build_profile(std::uint32_t q, std::vector<std::vector<Residue>> sets, double tau);

/// ⟦−z, z⟧ as residues, ascending.
std::vector<Residue> centered_interval(std::uint32_t q, std::uint32_t z);

/// τ = τ̃ + n^{−1/3}, capped at 1.
double tau_from_threshold(double threshold, std::size_t n);

/// (√(τρ) + √((1−τ)(1−ρ)))²: the mass |u_i(0)|² of the profile's error
/// function at zero.
double center_probability(double tau, double rho);
double center_probability(const ErrorProfile& profile);

/// T = { y : #{i : y_i ∈ S_i} ≥ τ̃·n }.
class ConstraintSet {
public:
    ConstraintSet(std::uint32_t q, std::vector<std::vector<Residue>> sets, double threshold);
    ConstraintSet(const ErrorProfile& profile, double threshold);

    std::uint32_t q() const noexcept { return q_; }
    std::size_t n() const noexcept { return n_; }
    double threshold() const noexcept { return threshold_; }
    /// ⌈τ̃·n⌉, robust to round-off in the product.
    std::size_t required_count() const noexcept { return required_; }

    std::size_t count(std::span<const Residue> y) const;
    bool contains(std::span<const Residue> y) const { return count(y) >= required_; }
    bool contains(const FieldVector& y) const { return contains(y.values()); }
    bool contains_index(std::size_t index) const;
    bool in_set(std::size_t i, Residue a) const { return member_[i * q_ + a]; }

private:
    std::uint32_t q_;
    std::size_t n_;
    std::vector<bool> member_;
    double threshold_;
    std::size_t required_;
};

std::size_t required_count(double threshold, std::size_t n);

struct TailMass {
    double exact;      ///< 1 − Σ_{y∈T} |f̂(y)|², from the binomial law of #{i : y_i ∈ S_i}
    double hoeffding;  ///< 2·exp(−2n(τ − τ̃)²)
};

/// Throws std::invalid_argument when τ̃ > τ.
TailMass tail_mass(const ErrorProfile& profile, double threshold);

/// P[Binomial(n, p) < m], by dynamic programming over the count.
double binomial_lower_tail(std::size_t n, double p, std::size_t m);

struct FourthPowerSum {
    double exact;             ///< Σ_α |u(α)|⁴ computed from the profile
    double convolution_sum;   ///< Σ_α (û⋆û)(α)²
    double bound;             ///< U(τ, ρ)
    double rho;               ///< (2z+1)/q
};

/// u built on S = ⟦−z, z⟧ with 2z+1 < q.
FourthPowerSum fourth_power_sum(std::uint32_t q, std::uint32_t z, double tau);

/// U(τ, ρ) evaluated literally from q and z with A, B, Γ and l = q − (2z+1).
double fourth_power_bound(std::uint32_t q, std::uint32_t z, double tau);

/// The same quantity written in terms of ρ alone. Substituting |S| = ρq
/// removes every q from the closed form (in the ρ ≥ 1/2 branch the middle
/// factor collapses to ρ²q²), so real ρ ∈ (0, 1) is allowed.
double fourth_power_bound(double tau, double rho);

}  // namespace qreduce
