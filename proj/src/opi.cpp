#include "qreduce/opi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qreduce/rng.hpp"

namespace qreduce {

void OPIInstance::validate() const {
    PrimeField field(q);
    if (k < 1 || k >= q) throw std::invalid_argument("OPI needs 1 <= k < q");
    if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [0, 1]");
    if (sets.size() != q) throw std::invalid_argument("OPI needs one set per point of F_q");
    if (x.size() != q) throw std::invalid_argument("x must have length q");
    for (auto v : x)
        if (v >= q) throw std::invalid_argument("x entry outside F_q");
    std::size_t size = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        auto s = sets[i];
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("repeated set element");
        if (s.empty()) throw std::invalid_argument("sets must be nonempty");
        if (s.back() >= q) throw std::invalid_argument("set element outside F_q");
        if (i == 0) size = s.size();
        if (s.size() != size) throw std::invalid_argument("sets must have equal size");
    }
}

std::size_t OPIInstance::required() const { return required_count(tau, q); }

OPIInstance generate_opi(std::uint32_t q, std::size_t k, double tau, std::size_t set_size, std::uint64_t seed) {
    OPIInstance inst;
    inst.q = q;
    inst.k = k;
    inst.tau = tau;
    inst.seed = seed;
    if (set_size < 1 || set_size > q) throw std::invalid_argument("set size must lie in [1, q]");
    auto set_rng = make_rng(seed, "opi.sets");
    std::vector<Residue> all(q);
    std::iota(all.begin(), all.end(), Residue{0});
    for (std::uint32_t i = 0; i < q; ++i) {
        // Partial Fisher–Yates.
        auto pool = all;
        for (std::size_t j = 0; j < set_size; ++j)
            std::swap(pool[j], pool[j + uniform_below(set_rng, q - j)]);
        std::vector<Residue> s(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(set_size));
        std::sort(s.begin(), s.end());
        inst.sets.push_back(std::move(s));
    }
    auto x_rng = make_rng(seed, "opi.x");
    for (std::uint32_t i = 0; i < q; ++i) inst.x.push_back(static_cast<Residue>(uniform_below(x_rng, q)));
    inst.validate();
    return inst;
}

namespace {
Residue evaluate(const std::vector<Residue>& coeffs, Residue point, std::uint32_t q) {
    std::uint64_t acc = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = (acc * point + coeffs[j]) % q;
    return static_cast<Residue>(acc);
}

bool in_set(const std::vector<Residue>& s, Residue v) { return std::find(s.begin(), s.end(), v) != s.end(); }
}  // namespace

std::size_t satisfied_count(const OPIInstance& inst, const std::vector<Residue>& coeffs) {
    std::size_t count = 0;
    for (std::uint32_t i = 0; i < inst.q; ++i)
        count += in_set(inst.sets[i], static_cast<Residue>((evaluate(coeffs, i, inst.q) + inst.x[i]) % inst.q));
    return count;
}

OPIVerification verify(const OPIInstance& inst, const OPISolution& sol) {
    inst.validate();
    if (sol.coeffs.size() > inst.k) throw std::invalid_argument("degree violation: more than k coefficients");
    for (auto c : sol.coeffs)
        if (c >= inst.q) throw std::invalid_argument("coefficient outside F_q");
    OPIVerification v;
    v.count = satisfied_count(inst, sol.coeffs);
    v.required = inst.required();
    v.meets = v.count >= v.required;
    return v;
}

OPISolution solve_opi_bruteforce(const OPIInstance& inst, std::size_t budget) {
    inst.validate();
    const std::size_t total = require_within_budget("OPI brute force", inst.q, inst.k, budget);
    OPISolution best{std::vector<Residue>(inst.k, 0), 0};
    bool first = true;
    std::vector<Residue> coeffs(inst.k);
    for (std::size_t m = 0; m < total; ++m) {
        digits_of(m, inst.q, coeffs);
        const auto c = satisfied_count(inst, coeffs);
        if (first || c > best.count) best = {coeffs, c}, first = false;
    }
    return best;
}

ICCInstance opi_to_icc(const OPIInstance& inst) {
    inst.validate();
    auto code = rs_code(inst.q, inst.k);
    const FieldVector x(inst.q, inst.x);
    auto u = syndrome(code, x, Side::primal);
    ConstraintSet constraint(inst.q, inst.sets, inst.tau);
    auto decoding = rs_code(inst.q, inst.q - inst.k);
    auto dual_syn = syndrome(decoding, x, Side::dual);
    return {std::move(code), std::move(u), std::move(constraint), std::move(decoding), std::move(dual_syn)};
}

std::optional<std::vector<Residue>> interpolate(const LinearCode& rs, const FieldVector& c) {
    auto m = rs.generator().transpose().solve(c);
    if (!m) return std::nullopt;
    return m->raw();
}

OPISolution icc_to_opi(const OPIInstance& inst, const FieldVector& y) {
    inst.validate();
    if (y.size() != inst.q || y.q() != inst.q) throw std::invalid_argument("y must lie in F_q^q");
    const auto code = rs_code(inst.q, inst.k);
    auto coeffs = interpolate(code, y - FieldVector(inst.q, inst.x));
    if (!coeffs) throw std::invalid_argument("not a coset solution");
    OPISolution sol{std::move(*coeffs), 0};
    sol.count = satisfied_count(inst, sol.coeffs);
    return sol;
}

FieldVector icc_from_opi_solver(const LinearCode& code, const FieldVector& u,
                                const std::vector<std::vector<Residue>>& sets, double tau,
                                const OPISolver& solver, Rng& rng) {
    if (!is_standard_rs(code)) throw std::invalid_argument("code must be a full-support RS code");
    const auto x = coset_sample(code, u, Side::primal, rng);
    OPIInstance inst;
    inst.q = code.q();
    inst.k = code.k();
    inst.tau = tau;
    inst.sets = sets;
    inst.x = x.raw();
    inst.validate();
    const auto sol = solver(inst);
    if (sol.coeffs.size() > inst.k) throw std::invalid_argument("degree violation: more than k coefficients");
    std::vector<Residue> shifted(inst.q);
    for (std::uint32_t i = 0; i < inst.q; ++i)
        shifted[i] = static_cast<Residue>((evaluate(sol.coeffs, i, inst.q) + x[i]) % inst.q);
    return FieldVector(inst.q, std::move(shifted));
}

FieldVector solve_icc_bruteforce(const ICCInstance& icc, std::size_t budget) {
    const auto base = icc.code.parity_check().solve(icc.u);
    if (!base) throw std::invalid_argument("syndrome outside the image of H");
    std::optional<FieldVector> best;
    std::size_t best_count = 0;
    for (const auto& c : icc.code.codewords(budget)) {
        auto y = *base + c;
        const auto count = icc.constraint.count(y.values());
        if (!best || count > best_count) best = std::move(y), best_count = count;
    }
    return *best;
}

}  // namespace qreduce
