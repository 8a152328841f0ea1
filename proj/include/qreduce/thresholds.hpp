#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qreduce/config.hpp"

namespace qreduce {

enum class ThresholdKind { classical, bw, gs, kv };

std::string to_string(ThresholdKind kind);
/// "classical", "bw", "gs", "kv".
ThresholdKind parse_threshold_kind(const std::string& name);

/// One decoder condition at rate R = k/n and set density ρ = |S|/q.
/// For kv, either ρ alone (continuous bound U(τ, ρ)) or a prime q with an
/// interval radius z, in which case ρ must equal (2z + 1)/q.
struct ThresholdQuery {
    ThresholdKind kind = ThresholdKind::bw;
    double rate = 0.0;
    double rho = 0.0;
    std::optional<std::uint32_t> q;
    std::optional<std::uint32_t> z;

    /// kv query on the interval ⟦−z, z⟧ ⊆ F_q.
    static ThresholdQuery interval(double rate, std::uint32_t q, std::uint32_t z);
    void validate() const;
};

/// Right-hand side of the condition at τ (center probability, its square,
/// or the fourth-power bound); the condition is lhs(R) ≤ rhs(τ).
double condition_rhs(const ThresholdQuery& query, double tau);
/// 1 − R/2 for bw, 1 − R for gs and kv.
double condition_lhs(const ThresholdQuery& query);
bool condition_holds(const ThresholdQuery& query, double tau, double slack = default_tolerances().condition);

/// Binary case: decoding a fraction t of errors gives τ = 1/2 + √(t(1 − t)).
double binary_threshold(double t);

/// Largest τ ∈ [ρ, 1] satisfying the condition; classical returns ρ + R(1 − ρ).
/// Throws std::domain_error("condition infeasible") when τ = ρ already fails.
double tau_max(const ThresholdQuery& query, const Tolerances& tol = default_tolerances());
double tau_max(ThresholdKind kind, double rate, double rho);

struct ThresholdRow {
    std::string label;
    double rate = 0.0;
    double rho = 0.0;
    double classical = 0.0;  ///< reconstructed baseline ρ + R(1 − ρ)
    double bw = 0.0;
    double gs = 0.0;
    double kv = 0.0;
    double kv_rho = 0.0;     ///< density actually used for kv (differs from ρ on a prime grid)
    bool bw_saturated = false;
    bool gs_saturated = false;
    bool kv_saturated = false;
};

/// Evaluates every column at (R, ρ). With `kv_prime` set, kv uses the
/// interval of that prime whose density is closest to ρ.
ThresholdRow threshold_row(double rate, double rho, std::string label = {},
                           std::optional<std::uint32_t> kv_prime = std::nullopt);

struct RhoOptimum {
    double rate = 0.0;
    double rho = 0.0;
    double tau = 0.0;
};

/// Maximizes tau_max(kind, R, ρ) along ρ + R(1 − ρ) = target: grid over ρ
/// with step 1e−3, then golden-section refinement around the best point.
RhoOptimum optimize_over_rho(ThresholdKind kind, double classical_target);

/// Three reference points followed by the optimum for bw, gs and kv at a
/// classical threshold of 0.55.
std::vector<ThresholdRow> table1();

/// Published three-decimal values of the six reference rows, in table1() order.
struct Table1Reference {
    double rate, rho, classical, bw, gs, kv;
};
const std::vector<Table1Reference>& table1_reference();

/// Largest |computed − published| over the 24 τ cells (and the optimizer's R, ρ).
double table1_max_deviation(const std::vector<ThresholdRow>& rows);

/// One row per rate in the grid.
std::vector<ThresholdRow> figure1_curves(double rho, const std::vector<double>& rates,
                                         std::optional<std::uint32_t> kv_prime = std::nullopt);

/// "a:b:step" → a, a + step, …, up to b (inclusive within step/2).
std::vector<double> parse_grid(const std::string& spec);

/// Radius z with (2z + 1)/q closest to ρ and 2z + 1 < q.
std::uint32_t nearest_interval_radius(std::uint32_t q, double rho);

/// Header "R,rho,tau_classical,tau_bw,tau_gs,tau_kv", six decimals, LF endings.
std::string curves_csv(const std::vector<ThresholdRow>& rows);

}  // namespace qreduce
