#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qreduce {

/// Numerical tolerances shared by every module. One record so that the CLI
/// can override any of them by name and the self-check suites see the same
/// values as the unit tests.
struct Tolerances {
    double unit_norm = 1e-12;      ///< normalized amplitude vectors
    double parseval = 1e-12;       ///< |‖f‖ − ‖f̂‖|
    double round_trip = 1e-10;     ///< inverse ∘ forward Fourier
    double orthogonality = 1e-9;   ///< character sums, relative to the group size
    double state_norm = 1e-9;      ///< simulator norm drift per step
    double probability = 1e-9;     ///< acceptance vs P_Dec, closed-form vs simulated p_u
    double bound_slack = 1e-9;     ///< allowed negative slack in the reduction bound
    double product = 1e-10;        ///< tensor-product and tail consistency checks
    double fourth_power = 1e-10;   ///< Σ|u|⁴ against its closed-form lower bound
    double convolution_rel = 1e-9; ///< Σ(û⋆û)² = q·Σ|u|⁴, relative
    double condition = 1e-12;      ///< slack granted to threshold inequalities
    double bisection = 1e-9;       ///< width of the final τ bracket
    double uniformity = 1e-10;     ///< per-message success spread that triggers symmetrization

    /// Sets a field by name; throws std::invalid_argument on unknown names.
    void set(const std::string& name, double value);
};

const Tolerances& default_tolerances();

/// Largest dense amplitude array any routine may allocate (complex doubles).
inline constexpr std::size_t kDefaultAmplitudeBudget = std::size_t{1} << 26;

/// Largest number of candidates brute-force routines may enumerate.
inline constexpr std::size_t kDefaultEnumerationBudget = std::size_t{1} << 24;

/// Environment variable that overrides kDefaultAmplitudeBudget in the CLI.
inline constexpr const char* kBudgetEnvVar = "QREDUCE_BUDGET";

/// Raised whenever a dense allocation or enumeration would exceed its budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::size_t required, std::size_t allowed);

    std::size_t required() const noexcept { return required_; }
    std::size_t allowed() const noexcept { return allowed_; }

private:
    std::size_t required_;
    std::size_t allowed_;
};

/// q^e, or SIZE_MAX when it does not fit.
std::size_t checked_power(std::uint64_t q, std::size_t e);

/// Throws BudgetExceeded when q^e > allowed.
std::size_t require_within_budget(const std::string& what, std::uint64_t q, std::size_t e,
                                  std::size_t allowed);

}  // namespace qreduce
