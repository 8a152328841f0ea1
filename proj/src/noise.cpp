#include "qreduce/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qreduce {

ErrorProfile::ErrorProfile(std::uint32_t q, std::vector<std::vector<Residue>> sets, double tau)
    : q_(PrimeField(q).q()), sets_(std::move(sets)), tau_(tau) {
    if (sets_.empty()) throw std::invalid_argument("profile needs at least one coordinate");
    if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in (0, 1]");
    for (auto& s : sets_) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (!s.empty() && s.back() >= q_) throw std::invalid_argument("set element outside F_q");
    }
    const std::size_t size = sets_.front().size();
    for (const auto& s : sets_)
        if (s.size() != size) throw std::invalid_argument("sets must have equal size");
    if (size == 0 || size >= q_) throw std::invalid_argument("sets must be nonempty proper subsets of F_q");

    member_.assign(sets_.size() * q_, false);
    for (std::size_t i = 0; i < sets_.size(); ++i)
        for (auto a : sets_[i]) member_[i * q_ + a] = true;

    hat_in_ = std::sqrt(tau_ / static_cast<double>(size));
    hat_out_ = std::sqrt((1.0 - tau_) / static_cast<double>(q_ - size));

    u_.reserve(sets_.size());
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        const auto h = hat(i);
        std::vector<Complex> v(h.begin(), h.end());
        fourier_digits(v, q_, 1, 0, 1, /*inverse=*/true);
        u_.push_back(std::move(v));
    }
}

std::vector<double> ErrorProfile::hat(std::size_t i) const {
    std::vector<double> h(q_);
    for (Residue a = 0; a < q_; ++a) h[a] = in_set(i, a) ? hat_in_ : hat_out_;
    return h;
}

Complex ErrorProfile::amplitude(std::size_t index) const {
    Complex a = 1.0;
    for (std::size_t i = n(); i-- > 0;) {
        a *= u_[i][index % q_];
        index /= q_;
    }
    return a;
}

double ErrorProfile::center_probability_numeric(std::size_t i) const { return std::norm(u_.at(i)[0]); }

namespace {
template <class Fn>
ComplexFunction tensor(std::uint32_t q, std::size_t n, std::size_t budget, Fn factor) {
    auto f = ComplexFunction::zeros(q, n, budget);
    auto amps = f.amplitudes();
    amps[0] = 1.0;
    // Grow the product one coordinate at a time: after step i the first
    // q^(i+1) entries hold ⊗_{j≤i} factor_j.
    std::size_t len = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t idx = len; idx-- > 0;) {
            const Complex base = amps[idx];
            for (Residue a = 0; a < q; ++a) amps[idx * q + a] = base * factor(i, a);
        }
        len *= q;
    }
    return f;
}
}  // namespace

ComplexFunction ErrorProfile::product_function(std::size_t budget) const {
    return tensor(q_, n(), budget, [this](std::size_t i, Residue a) { return u_[i][a]; });
}

ComplexFunction ErrorProfile::fourier_side(std::size_t budget) const {
    return tensor(q_, n(), budget,
                  [this](std::size_t i, Residue a) { return Complex(in_set(i, a) ? hat_in_ : hat_out_); });
}

ErrorProfile build_profile(std::uint32_t q, std::size_t n, const std::vector<Residue>& set, double tau) {
    return ErrorProfile(q, std::vector<std::vector<Residue>>(n, set), tau);
}

ErrorProfile build_profile(std::uint32_t q, std::vector<std::vector<Residue>> sets, double tau) {
    return ErrorProfile(q, std::move(sets), tau);
}

std::vector<Residue> centered_interval(std::uint32_t q, std::uint32_t z) {
    const PrimeField field(q);
    if (2ULL * z + 1 > q) throw std::invalid_argument("interval [-z, z] does not fit in F_q");
    std::vector<Residue> s;
    for (std::int64_t a = -static_cast<std::int64_t>(z); a <= static_cast<std::int64_t>(z); ++a)
        s.push_back(field.reduce(a));
    std::sort(s.begin(), s.end());
    return s;
}

double tau_from_threshold(double threshold, std::size_t n) {
    return std::min(1.0, threshold + std::pow(static_cast<double>(n), -1.0 / 3.0));
}

double center_probability(double tau, double rho) {
    const double v = std::sqrt(tau * rho) + std::sqrt(std::max(0.0, (1.0 - tau) * (1.0 - rho)));
    return v * v;
}

double center_probability(const ErrorProfile& profile) { return center_probability(profile.tau(), profile.rho()); }

// --- ConstraintSet ----------------------------------------------------------

std::size_t required_count(double threshold, std::size_t n) {
    const double target = threshold * static_cast<double>(n);
    if (target <= 0.0) return 0;
    return static_cast<std::size_t>(std::ceil(target - 1e-9));
}

ConstraintSet::ConstraintSet(std::uint32_t q, std::vector<std::vector<Residue>> sets, double threshold)
    : q_(PrimeField(q).q()), n_(sets.size()), threshold_(threshold), required_(qreduce::required_count(threshold, n_)) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold must lie in [0, 1]");
    member_.assign(n_ * q_, false);
    for (std::size_t i = 0; i < n_; ++i)
        for (auto a : sets[i]) {
            if (a >= q_) throw std::invalid_argument("set element outside F_q");
            member_[i * q_ + a] = true;
        }
}

ConstraintSet::ConstraintSet(const ErrorProfile& profile, double threshold)
    : ConstraintSet(profile.q(), profile.sets(), threshold) {}

std::size_t ConstraintSet::count(std::span<const Residue> y) const {
    if (y.size() != n_) throw std::invalid_argument("length mismatch in constraint check");
    std::size_t c = 0;
    for (std::size_t i = 0; i < n_; ++i) c += member_[i * q_ + y[i]];
    return c;
}

bool ConstraintSet::contains_index(std::size_t index) const {
    std::size_t c = 0;
    for (std::size_t i = n_; i-- > 0;) {
        c += member_[i * q_ + index % q_];
        index /= q_;
    }
    return c >= required_;
}

// --- tails ------------------------------------------------------------------

double binomial_lower_tail(std::size_t n, double p, std::size_t m) {
    if (m == 0) return 0.0;
    if (m > n) return 1.0;
    std::vector<double> dist(n + 1, 0.0);
    dist[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 2; j-- > 0;) {
            const double stay = dist[j] * (1.0 - p);
            dist[j] = stay + (j > 0 ? dist[j - 1] * p : 0.0);
        }
    double tail = 0.0;
    for (std::size_t j = 0; j < m; ++j) tail += dist[j];
    return std::min(1.0, tail);
}

TailMass tail_mass(const ErrorProfile& profile, double threshold) {
    if (threshold > profile.tau())
        throw std::invalid_argument("threshold " + std::to_string(threshold) + " exceeds tau " +
                                    std::to_string(profile.tau()));
    // Under |f̂|² each coordinate lands in S_i independently with
    // probability |S_i|·τ/|S_i| = τ.
    const std::size_t n = profile.n();
    const double gap = profile.tau() - threshold;
    return {binomial_lower_tail(n, profile.tau(), required_count(threshold, n)),
            2.0 * std::exp(-2.0 * static_cast<double>(n) * gap * gap)};
}

// --- fourth powers ----------------------------------------------------------

FourthPowerSum fourth_power_sum(std::uint32_t q, std::uint32_t z, double tau) {
    if (2ULL * z + 1 >= q) throw std::invalid_argument("interval size 2z+1 must be smaller than q");
    const auto profile = build_profile(q, 1, centered_interval(q, z), tau);
    FourthPowerSum out{};
    for (const auto& a : profile.u(0)) out.exact += std::norm(a) * std::norm(a);
    const auto h = profile.hat(0);
    for (Residue a = 0; a < q; ++a) {
        double conv = 0.0;
        for (Residue b = 0; b < q; ++b) conv += h[b] * h[(a + q - b) % q];
        out.convolution_sum += conv * conv;
    }
    out.bound = fourth_power_bound(q, z, tau);
    out.rho = profile.rho();
    return out;
}

double fourth_power_bound(std::uint32_t q, std::uint32_t z, double tau) {
    if (2ULL * z + 1 >= q) throw std::invalid_argument("interval size 2z+1 must be smaller than q");
    const double qd = q;
    const double m = 2.0 * z + 1.0;
    const double rho = m / qd;
    const double B = std::sqrt((1.0 - tau) / (qd - m));
    const double A = std::sqrt(tau / m) - B;
    const double gamma = 2.0 * A * B * m + qd * B * B;
    const double A2 = A * A;
    if (rho <= 0.5) return A2 * A2 * (2.0 * rho * rho * rho * qd * qd / 3.0) + 2.0 * A2 * gamma * rho * rho * qd + gamma * gamma;
    const double l = qd - m;
    const double shape = 10.0 * rho / 3.0 - 4.0 + 2.0 / rho - 1.0 / (3.0 * rho * rho);
    const double mass = m + l * (4.0 * z + 1.0 - l) + (m - l) * (qd - 2.0 * l - 1.0);
    return A2 * A2 * (qd * qd * rho * rho * shape) + 2.0 * A2 * gamma / qd * mass + gamma * gamma;
}

double fourth_power_bound(double tau, double rho) {
    if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0, 1)");
    const double b = std::sqrt((1.0 - tau) / (1.0 - rho));
    const double a = std::sqrt(tau / rho) - b;
    const double gamma = 2.0 * a * b * rho + b * b;
    const double a2 = a * a;
    const double middle = 2.0 * a2 * gamma * rho * rho;
    if (rho <= 0.5) return a2 * a2 * (2.0 * rho * rho * rho / 3.0) + middle + gamma * gamma;
    const double shape = 10.0 * rho / 3.0 - 4.0 + 2.0 / rho - 1.0 / (3.0 * rho * rho);
    return a2 * a2 * rho * rho * shape + middle + gamma * gamma;
}

}  // namespace qreduce
