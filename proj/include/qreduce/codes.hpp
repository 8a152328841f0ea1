#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qreduce/galois.hpp"
#include "qreduce/rng.hpp"

namespace qreduce {

/// Dense row-major matrix over F_q.
class Matrix {
public:
    Matrix(std::uint32_t q, std::size_t rows, std::size_t cols);
    Matrix(std::uint32_t q, std::vector<std::vector<std::int64_t>> rows);

    std::uint32_t q() const noexcept { return q_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    FieldVector row_vector(std::size_t r) const;

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    /// M·xᵀ, as a column written out as a row vector.
    FieldVector apply(const FieldVector& x) const;
    /// x·M.
    FieldVector left_apply(std::span<const Residue> x) const;
    bool is_zero() const noexcept;

    /// Reduced row echelon form; pivot columns returned through `pivots`.
    Matrix rref(std::vector<std::size_t>* pivots = nullptr) const;
    std::size_t rank() const;
    /// Basis of {x : M xᵀ = 0} as rows, in reduced form.
    Matrix null_space() const;
    /// Some x with M xᵀ = bᵀ, or nullopt when the system is inconsistent.
    std::optional<FieldVector> solve(const FieldVector& b) const;
    /// Rows of *this followed by rows of o.
    Matrix stacked(const Matrix& o) const;

    std::vector<std::vector<std::int64_t>> to_rows() const;

    bool operator==(const Matrix&) const = default;

private:
    std::uint32_t q_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Residue> data_;
};

enum class Side { primal, dual };

/// A q-ary [n, k] linear code with both a generator G (k×n) and a
/// parity-check matrix H ((n−k)×n). G·Hᵀ = 0 and both have full rank;
/// 1 ≤ k < n so that neither matrix is empty.
class LinearCode {
public:
    /// Derives H as the null space of G.
    explicit LinearCode(Matrix generator);
    /// Uses the given pair after checking ranks and G·Hᵀ = 0.
    LinearCode(Matrix generator, Matrix parity_check);

    std::uint32_t q() const noexcept { return G_.q(); }
    std::size_t n() const noexcept { return G_.cols(); }
    std::size_t k() const noexcept { return G_.rows(); }
    const Matrix& generator() const noexcept { return G_; }
    const Matrix& parity_check() const noexcept { return H_; }

    FieldVector encode(std::span<const Residue> message) const { return G_.left_apply(message); }
    bool contains(const FieldVector& y) const;
    std::size_t codeword_count(std::size_t budget = kDefaultEnumerationBudget) const;
    /// All q^k codewords, ordered by mixed-radix message index.
    std::vector<FieldVector> codewords(std::size_t budget = kDefaultEnumerationBudget) const;
    /// Same row space.
    bool same_code(const LinearCode& o) const;

private:
    Matrix G_;
    Matrix H_;
};

LinearCode dual(const LinearCode& code);

/// Full-support Reed–Solomon code RS_k over F_q: evaluation points are the
/// residues 0, 1, …, q−1 in order and G row i is (α^i)_α. H is computed as
/// the null space of G (its row space is RS_{q−k}).
LinearCode rs_code(std::uint32_t q, std::size_t k);

/// True when G is exactly the evaluation-basis generator of some RS_k.
bool is_standard_rs(const LinearCode& code);

/// H·yᵀ (primal) or G·yᵀ (dual).
FieldVector syndrome(const LinearCode& code, const FieldVector& y, Side side);

/// Uniform element of C_u (primal) or C⊥_u (dual): a particular solution
/// from Gaussian elimination on randomly permuted columns plus a uniform
/// element of the kernel.
FieldVector coset_sample(const LinearCode& code, const FieldVector& u, Side side, Rng& rng);

/// Uniform random full-rank k×n generator.
LinearCode random_code(std::uint32_t q, std::size_t n, std::size_t k, Rng& rng);

}  // namespace qreduce
