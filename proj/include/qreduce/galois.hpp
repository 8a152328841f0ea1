#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "qreduce/config.hpp"

namespace qreduce {

using Residue = std::uint32_t;
using Complex = std::complex<double>;

bool is_prime(std::uint64_t q);

/// The prime field F_q. Construction rejects composite moduli, including
/// prime powers: characters are only implemented for prime q.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t q);

    std::uint32_t q() const noexcept { return q_; }

    Residue reduce(std::int64_t v) const noexcept {
        const auto m = static_cast<std::int64_t>(q_);
        auto r = v % m;
        return static_cast<Residue>(r < 0 ? r + m : r);
    }
    Residue add(Residue a, Residue b) const noexcept {
        const std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Residue>(s >= q_ ? s - q_ : s);
    }
    Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + q_ - b; }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : q_ - a; }
    Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>((std::uint64_t{a} * b) % q_);
    }
    Residue pow(Residue a, std::uint64_t e) const noexcept;
    /// Throws std::domain_error("division by zero in F_q") for a = 0.
    Residue inv(Residue a) const;

    /// Signed representative in ⟦−⌊(q−1)/2⌋, ⌈(q−1)/2⌉⟧.
    std::int64_t signed_rep(Residue a) const noexcept;

    bool operator==(const PrimeField&) const = default;

private:
    std::uint32_t q_;
};

/// A single element of F_q carrying its modulus. Binary operations on
/// elements of different fields throw std::invalid_argument.
class FieldElement {
public:
    FieldElement(std::int64_t value, const PrimeField& field);

    Residue value() const noexcept { return value_; }
    std::uint32_t modulus() const noexcept { return field_.q(); }
    const PrimeField& field() const noexcept { return field_; }
    std::int64_t signed_value() const noexcept { return field_.signed_rep(value_); }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;

    bool operator==(const FieldElement&) const = default;

private:
    Residue value_;
    PrimeField field_;
};

enum class FieldOp { add, sub, mul, inv, neg };

/// Applies op to (a, b); the unary ops ignore b.
FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op);

/// Row vector over F_q.
class FieldVector {
public:
    FieldVector(std::uint32_t q, std::vector<Residue> coords);
    FieldVector(std::uint32_t q, std::initializer_list<std::int64_t> coords);
    static FieldVector zeros(std::uint32_t q, std::size_t n);

    std::uint32_t q() const noexcept { return q_; }
    std::size_t size() const noexcept { return coords_.size(); }
    Residue operator[](std::size_t i) const { return coords_[i]; }
    Residue& operator[](std::size_t i) { return coords_[i]; }
    FieldElement at(std::size_t i) const;
    std::span<const Residue> values() const noexcept { return coords_; }
    const std::vector<Residue>& raw() const noexcept { return coords_; }

    FieldVector operator+(const FieldVector& o) const;
    FieldVector operator-(const FieldVector& o) const;
    FieldVector operator-() const;
    FieldVector scaled(Residue c) const;
    /// x · y mod q.
    Residue dot(const FieldVector& o) const;
    std::size_t weight() const noexcept;
    bool is_zero() const noexcept { return weight() == 0; }

    bool operator==(const FieldVector&) const = default;
    auto operator<=>(const FieldVector&) const = default;

private:
    void check_compatible(const FieldVector& o) const;

    std::uint32_t q_;
    std::vector<Residue> coords_;
};

/// Mixed-radix index of a vector in F_q^n, coordinate 0 most significant.
/// Shared by every dense array in the library (functions, states, tables).
std::size_t index_of(std::span<const Residue> coords, std::uint32_t q);
void digits_of(std::size_t index, std::uint32_t q, std::span<Residue> out);
FieldVector vector_at(std::size_t index, std::uint32_t q, std::size_t n);

/// Table of e^{2πi j/q}, j = 0..q−1.
std::vector<Complex> roots_of_unity(std::uint32_t q);

/// χ_y(x) = exp(2πi (x·y)/q).
Complex character(const FieldVector& y, const FieldVector& x);

/// A complex function on F_q^n stored densely by mixed-radix index.
class ComplexFunction {
public:
    ComplexFunction(std::uint32_t q, std::size_t n, std::vector<Complex> amplitudes);
    static ComplexFunction zeros(std::uint32_t q, std::size_t n,
                                 std::size_t budget = kDefaultAmplitudeBudget);

    std::uint32_t q() const noexcept { return q_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t size() const noexcept { return amps_.size(); }
    Complex operator[](std::size_t i) const { return amps_[i]; }
    Complex& operator[](std::size_t i) { return amps_[i]; }
    Complex at(const FieldVector& x) const;
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    std::span<Complex> amplitudes() noexcept { return amps_; }

    double norm() const;
    double norm_squared() const;

private:
    std::uint32_t q_;
    std::size_t n_;
    std::vector<Complex> amps_;
};

/// In-place size-q transforms over `count` consecutive digits starting at
/// digit `first` of an array laid out as `total_digits` base-q digits
/// (digit 0 most significant). Forward uses χ, inverse uses conj(χ); both
/// carry the 1/√q factor so each pass is unitary.
void fourier_digits(std::span<Complex> amps, std::uint32_t q, std::size_t total_digits,
                    std::size_t first, std::size_t count, bool inverse = false);

/// f̂(x) = q^{−n/2} Σ_y χ_x(y) f(y), computed in n passes of cost q·q^n.
ComplexFunction fourier_transform(const ComplexFunction& f,
                                  std::size_t budget = kDefaultAmplitudeBudget);
ComplexFunction inverse_fourier_transform(const ComplexFunction& f,
                                          std::size_t budget = kDefaultAmplitudeBudget);

class LinearCode;

/// Σ_{c∈C} χ_y(c), by enumerating the q^k codewords.
Complex code_character_sum(const LinearCode& code, const FieldVector& y,
                           std::size_t budget = kDefaultEnumerationBudget);

}  // namespace qreduce
