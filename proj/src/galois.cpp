#include "qreduce/galois.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "qreduce/codes.hpp"

namespace qreduce {

bool is_prime(std::uint64_t q) {
    if (q < 2) return false;
    if (q < 4) return true;
    if (q % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= q; d += 2)
        if (q % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
    if (!is_prime(q)) throw std::invalid_argument("modulus " + std::to_string(q) + " is not prime");
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
    Residue result = 1 % q_;
    Residue base = a % q_;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Residue PrimeField::inv(Residue a) const {
    if (a % q_ == 0) throw std::domain_error("division by zero in F_q");
    // extended Euclid
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = q_, new_r = a % q_;
    while (new_r != 0) {
        const std::int64_t quot = r / new_r;
        t = std::exchange(new_t, t - quot * new_t);
        r = std::exchange(new_r, r - quot * new_r);
    }
    return reduce(t);
}

std::int64_t PrimeField::signed_rep(Residue a) const noexcept {
    const std::int64_t upper = q_ / 2;  // ⌈(q−1)/2⌉
    return a > upper ? static_cast<std::int64_t>(a) - q_ : static_cast<std::int64_t>(a);
}

// --- FieldElement -----------------------------------------------------------

FieldElement::FieldElement(std::int64_t value, const PrimeField& field)
    : value_(field.reduce(value)), field_(field) {}

namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("mixed moduli: F_" + std::to_string(a.modulus()) + " and F_" +
                                    std::to_string(b.modulus()));
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(*this, o);
    return {field_.add(value_, o.value_), field_};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_field(*this, o);
    return {field_.sub(value_, o.value_), field_};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(*this, o);
    return {field_.mul(value_, o.value_), field_};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
    require_same_field(*this, o);
    return {field_.mul(value_, field_.inv(o.value_)), field_};
}
FieldElement FieldElement::operator-() const { return {field_.neg(value_), field_}; }
FieldElement FieldElement::inverse() const { return {field_.inv(value_), field_}; }

FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op) {
    switch (op) {
        case FieldOp::add: return a + b;
        case FieldOp::sub: return a - b;
        case FieldOp::mul: return a * b;
        case FieldOp::inv: return a.inverse();
        case FieldOp::neg: return -a;
    }
    throw std::invalid_argument("unknown field operation");
}

// --- FieldVector ------------------------------------------------------------

FieldVector::FieldVector(std::uint32_t q, std::vector<Residue> coords) : q_(q), coords_(std::move(coords)) {
    for (auto& c : coords_)
        if (c >= q_) throw std::invalid_argument("coordinate out of range for F_" + std::to_string(q_));
}

FieldVector::FieldVector(std::uint32_t q, std::initializer_list<std::int64_t> coords) : q_(q) {
    const PrimeField field(q);
    coords_.reserve(coords.size());
    for (auto c : coords) coords_.push_back(field.reduce(c));
}

FieldVector FieldVector::zeros(std::uint32_t q, std::size_t n) { return {q, std::vector<Residue>(n, 0)}; }

FieldElement FieldVector::at(std::size_t i) const { return {coords_.at(i), PrimeField(q_)}; }

void FieldVector::check_compatible(const FieldVector& o) const {
    if (q_ != o.q_) throw std::invalid_argument("vectors over different fields");
    if (coords_.size() != o.coords_.size())
        throw std::invalid_argument("length mismatch: " + std::to_string(coords_.size()) + " vs " +
                                    std::to_string(o.coords_.size()));
}

FieldVector FieldVector::operator+(const FieldVector& o) const {
    check_compatible(o);
    FieldVector r = *this;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const auto s = coords_[i] + o.coords_[i];
        r.coords_[i] = s >= q_ ? s - q_ : s;
    }
    return r;
}

FieldVector FieldVector::operator-(const FieldVector& o) const {
    check_compatible(o);
    FieldVector r = *this;
    for (std::size_t i = 0; i < coords_.size(); ++i)
        r.coords_[i] = coords_[i] >= o.coords_[i] ? coords_[i] - o.coords_[i] : coords_[i] + q_ - o.coords_[i];
    return r;
}

FieldVector FieldVector::operator-() const { return zeros(q_, coords_.size()) - *this; }

FieldVector FieldVector::scaled(Residue c) const {
    FieldVector r = *this;
    for (auto& v : r.coords_) v = static_cast<Residue>((std::uint64_t{v} * c) % q_);
    return r;
}

Residue FieldVector::dot(const FieldVector& o) const {
    check_compatible(o);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < coords_.size(); ++i) acc = (acc + std::uint64_t{coords_[i]} * o.coords_[i]) % q_;
    return static_cast<Residue>(acc);
}

std::size_t FieldVector::weight() const noexcept {
    std::size_t w = 0;
    for (auto c : coords_) w += (c != 0);
    return w;
}

// --- indexing ---------------------------------------------------------------

std::size_t index_of(std::span<const Residue> coords, std::uint32_t q) {
    std::size_t idx = 0;
    for (auto c : coords) idx = idx * q + c;
    return idx;
}

void digits_of(std::size_t index, std::uint32_t q, std::span<Residue> out) {
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = static_cast<Residue>(index % q);
        index /= q;
    }
}

FieldVector vector_at(std::size_t index, std::uint32_t q, std::size_t n) {
    std::vector<Residue> d(n);
    digits_of(index, q, d);
    return {q, std::move(d)};
}

std::vector<Complex> roots_of_unity(std::uint32_t q) {
    std::vector<Complex> w(q);
    for (std::uint32_t j = 0; j < q; ++j) w[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / q);
    return w;
}

Complex character(const FieldVector& y, const FieldVector& x) {
    const Residue e = y.dot(x);
    return std::polar(1.0, 2.0 * std::numbers::pi * e / y.q());
}

// --- ComplexFunction --------------------------------------------------------

ComplexFunction::ComplexFunction(std::uint32_t q, std::size_t n, std::vector<Complex> amplitudes)
    : q_(q), n_(n), amps_(std::move(amplitudes)) {
    if (amps_.size() != checked_power(q, n))
        throw std::invalid_argument("amplitude array does not have q^n entries");
    for (auto& a : amps_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("non-finite amplitude");
}

ComplexFunction ComplexFunction::zeros(std::uint32_t q, std::size_t n, std::size_t budget) {
    const auto size = require_within_budget("function on F_q^n", q, n, budget);
    return {q, n, std::vector<Complex>(size)};
}

Complex ComplexFunction::at(const FieldVector& x) const {
    if (x.q() != q_ || x.size() != n_) throw std::invalid_argument("point outside F_q^n");
    return amps_[index_of(x.values(), q_)];
}

double ComplexFunction::norm_squared() const {
    double s = 0;
    for (auto& a : amps_) s += std::norm(a);
    return s;
}

double ComplexFunction::norm() const { return std::sqrt(norm_squared()); }

// --- Fourier ----------------------------------------------------------------

void fourier_digits(std::span<Complex> amps, std::uint32_t q, std::size_t total_digits, std::size_t first,
                    std::size_t count, bool inverse) {
    if (first + count > total_digits) throw std::invalid_argument("digit range outside layout");
    if (amps.size() != checked_power(q, total_digits))
        throw std::invalid_argument("array size does not match layout");
    const auto w = roots_of_unity(q);
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    // matrix[x*q + y] = χ_x(y)/√q (or its conjugate)
    std::vector<Complex> matrix(std::size_t{q} * q);
    for (std::uint32_t x = 0; x < q; ++x)
        for (std::uint32_t y = 0; y < q; ++y) {
            const auto& c = w[(std::uint64_t{x} * y) % q];
            matrix[std::size_t{x} * q + y] = (inverse ? std::conj(c) : c) * scale;
        }
    std::vector<Complex> in(q);
    for (std::size_t d = first; d < first + count; ++d) {
        const std::size_t stride = checked_power(q, total_digits - 1 - d);
        const std::size_t block = stride * q;
        for (std::size_t base = 0; base < amps.size(); base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                for (std::uint32_t y = 0; y < q; ++y) in[y] = amps[base + off + y * stride];
                for (std::uint32_t x = 0; x < q; ++x) {
                    Complex acc = 0;
                    const Complex* row = &matrix[std::size_t{x} * q];
                    for (std::uint32_t y = 0; y < q; ++y) acc += row[y] * in[y];
                    amps[base + off + x * stride] = acc;
                }
            }
        }
    }
}

namespace {
ComplexFunction transform(const ComplexFunction& f, std::size_t budget, bool inverse) {
    require_within_budget("Fourier transform on F_q^n", f.q(), f.n(), budget);
    std::vector<Complex> amps(f.amplitudes().begin(), f.amplitudes().end());
    fourier_digits(amps, f.q(), f.n(), 0, f.n(), inverse);
    return {f.q(), f.n(), std::move(amps)};
}
}  // namespace

ComplexFunction fourier_transform(const ComplexFunction& f, std::size_t budget) {
    return transform(f, budget, false);
}

ComplexFunction inverse_fourier_transform(const ComplexFunction& f, std::size_t budget) {
    return transform(f, budget, true);
}

Complex code_character_sum(const LinearCode& code, const FieldVector& y, std::size_t budget) {
    if (y.size() != code.n() || y.q() != code.q())
        throw std::invalid_argument("character sum: vector does not match code length");
    const std::size_t count = require_within_budget("codeword enumeration", code.q(), code.k(), budget);
    const auto w = roots_of_unity(code.q());
    Complex sum = 0;
    std::vector<Residue> msg(code.k());
    for (std::size_t m = 0; m < count; ++m) {
        digits_of(m, code.q(), msg);
        const auto c = code.encode(msg);
        sum += w[c.dot(y)];
    }
    return sum;
}

}  // namespace qreduce
