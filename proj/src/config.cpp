#include "qreduce/config.hpp"

#include <limits>
#include <map>

namespace qreduce {

void Tolerances::set(const std::string& name, double value) {
    static const std::map<std::string, double Tolerances::*> fields = {
        {"unit_norm", &Tolerances::unit_norm},
        {"parseval", &Tolerances::parseval},
        {"round_trip", &Tolerances::round_trip},
        {"orthogonality", &Tolerances::orthogonality},
        {"state_norm", &Tolerances::state_norm},
        {"probability", &Tolerances::probability},
        {"bound_slack", &Tolerances::bound_slack},
        {"product", &Tolerances::product},
        {"fourth_power", &Tolerances::fourth_power},
        {"convolution_rel", &Tolerances::convolution_rel},
        {"condition", &Tolerances::condition},
        {"bisection", &Tolerances::bisection},
        {"uniformity", &Tolerances::uniformity},
    };
    auto it = fields.find(name);
    if (it == fields.end()) throw std::invalid_argument("unknown tolerance '" + name + "'");
    if (!(value >= 0.0)) throw std::invalid_argument("tolerance '" + name + "' must be nonnegative");
    this->*(it->second) = value;
}

const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

BudgetExceeded::BudgetExceeded(const std::string& what, std::size_t required, std::size_t allowed)
    : std::runtime_error(what + ": requires " +
                         (required == std::numeric_limits<std::size_t>::max() ? std::string("overflow")
                                                                              : std::to_string(required)) +
                         " but budget allows " + std::to_string(allowed)),
      required_(required),
      allowed_(allowed) {}

std::size_t checked_power(std::uint64_t q, std::size_t e) {
    constexpr auto kMax = std::numeric_limits<std::size_t>::max();
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (q != 0 && r > kMax / q) return kMax;
        r *= q;
    }
    return r;
}

std::size_t require_within_budget(const std::string& what, std::uint64_t q, std::size_t e,
                                  std::size_t allowed) {
    const std::size_t need = checked_power(q, e);
    if (need > allowed) throw BudgetExceeded(what, need, allowed);
    return need;
}

}  // namespace qreduce
