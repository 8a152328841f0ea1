#include "qreduce/codes.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace qreduce {

// --- Matrix -----------------------------------------------------------------

Matrix::Matrix(std::uint32_t q, std::size_t rows, std::size_t cols)
    : q_(PrimeField(q).q()), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(std::uint32_t q, std::vector<std::vector<std::int64_t>> rows)
    : Matrix(q, rows.size(), rows.empty() ? 0 : rows.front().size()) {
    const PrimeField field(q);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (rows[r].size() != cols_) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = field.reduce(rows[r][c]);
    }
}

FieldVector Matrix::row_vector(std::size_t r) const {
    auto s = row(r);
    return {q_, std::vector<Residue>(s.begin(), s.end())};
}

Matrix Matrix::transpose() const {
    Matrix t(q_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (q_ != o.q_ || cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix p(q_, rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < o.cols_; ++c) {
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < cols_; ++i) acc = (acc + std::uint64_t{(*this)(r, i)} * o(i, c)) % q_;
            p(r, c) = static_cast<Residue>(acc);
        }
    return p;
}

FieldVector Matrix::apply(const FieldVector& x) const {
    if (x.q() != q_ || x.size() != cols_)
        throw std::invalid_argument("length mismatch: expected " + std::to_string(cols_) + ", got " +
                                    std::to_string(x.size()));
    std::vector<Residue> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc = (acc + std::uint64_t{(*this)(r, c)} * x[c]) % q_;
        out[r] = static_cast<Residue>(acc);
    }
    return {q_, std::move(out)};
}

FieldVector Matrix::left_apply(std::span<const Residue> x) const {
    if (x.size() != rows_)
        throw std::invalid_argument("length mismatch: expected " + std::to_string(rows_) + ", got " +
                                    std::to_string(x.size()));
    std::vector<std::uint64_t> acc(cols_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (x[r] == 0) continue;
        for (std::size_t c = 0; c < cols_; ++c) acc[c] = (acc[c] + std::uint64_t{x[r]} * (*this)(r, c)) % q_;
    }
    std::vector<Residue> out(acc.begin(), acc.end());
    return {q_, std::move(out)};
}

bool Matrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Residue v) { return v == 0; });
}

Matrix Matrix::rref(std::vector<std::size_t>* pivots) const {
    const PrimeField field(q_);
    Matrix m = *this;
    std::vector<std::size_t> piv;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols_ && lead < rows_; ++c) {
        std::size_t r = lead;
        while (r < rows_ && m(r, c) == 0) ++r;
        if (r == rows_) continue;
        if (r != lead)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m(r, j), m(lead, j));
        const Residue inv = field.inv(m(lead, c));
        for (std::size_t j = 0; j < cols_; ++j) m(lead, j) = field.mul(m(lead, j), inv);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == lead || m(i, c) == 0) continue;
            const Residue f = m(i, c);
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = field.sub(m(i, j), field.mul(f, m(lead, j)));
        }
        piv.push_back(c);
        ++lead;
    }
    if (pivots) *pivots = std::move(piv);
    return m;
}

std::size_t Matrix::rank() const {
    std::vector<std::size_t> piv;
    rref(&piv);
    return piv.size();
}

Matrix Matrix::null_space() const {
    const PrimeField field(q_);
    std::vector<std::size_t> piv;
    const Matrix r = rref(&piv);
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : piv) is_pivot[p] = true;
    Matrix basis(q_, cols_ - piv.size(), cols_);
    std::size_t b = 0;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        basis(b, free) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) basis(b, piv[i]) = field.neg(r(i, free));
        ++b;
    }
    return basis.rref();
}

std::optional<FieldVector> Matrix::solve(const FieldVector& b) const {
    if (b.size() != rows_ || b.q() != q_) throw std::invalid_argument("right-hand side length mismatch");
    Matrix aug(q_, rows_, cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) aug(r, c) = (*this)(r, c);
        aug(r, cols_) = b[r];
    }
    std::vector<std::size_t> piv;
    const Matrix red = aug.rref(&piv);
    if (!piv.empty() && piv.back() == cols_) return std::nullopt;
    std::vector<Residue> x(cols_, 0);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = red(i, cols_);
    return FieldVector(q_, std::move(x));
}

Matrix Matrix::stacked(const Matrix& o) const {
    if (q_ != o.q_ || cols_ != o.cols_) throw std::invalid_argument("cannot stack matrices");
    Matrix s(q_, rows_ + o.rows_, cols_);
    std::copy(data_.begin(), data_.end(), s.data_.begin());
    std::copy(o.data_.begin(), o.data_.end(), s.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return s;
}

std::vector<std::vector<std::int64_t>> Matrix::to_rows() const {
    std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
    return out;
}

// --- LinearCode -------------------------------------------------------------

namespace {
void check_dimensions(const Matrix& G) {
    if (G.rows() == 0 || G.rows() >= G.cols())
        throw std::invalid_argument("code dimension must satisfy 1 <= k < n (got k=" + std::to_string(G.rows()) +
                                    ", n=" + std::to_string(G.cols()) + ")");
    if (G.rank() != G.rows()) throw std::invalid_argument("generator matrix is not full rank");
}
}  // namespace

LinearCode::LinearCode(Matrix generator) : G_(std::move(generator)), H_(G_.null_space()) {
    check_dimensions(G_);
}

LinearCode::LinearCode(Matrix generator, Matrix parity_check) : G_(std::move(generator)), H_(std::move(parity_check)) {
    check_dimensions(G_);
    if (H_.q() != G_.q() || H_.cols() != G_.cols() || H_.rows() != G_.cols() - G_.rows())
        throw std::invalid_argument("parity-check matrix has the wrong shape");
    if (H_.rank() != H_.rows()) throw std::invalid_argument("parity-check matrix is not full rank");
    if (!(G_ * H_.transpose()).is_zero()) throw std::invalid_argument("G * H^T != 0");
}

bool LinearCode::contains(const FieldVector& y) const { return H_.apply(y).is_zero(); }

std::size_t LinearCode::codeword_count(std::size_t budget) const {
    return require_within_budget("codeword enumeration", q(), k(), budget);
}

std::vector<FieldVector> LinearCode::codewords(std::size_t budget) const {
    const std::size_t count = codeword_count(budget);
    std::vector<FieldVector> out;
    out.reserve(count);
    std::vector<Residue> msg(k());
    for (std::size_t m = 0; m < count; ++m) {
        digits_of(m, q(), msg);
        out.push_back(encode(msg));
    }
    return out;
}

bool LinearCode::same_code(const LinearCode& o) const {
    return q() == o.q() && n() == o.n() && k() == o.k() && G_.stacked(o.G_).rank() == k();
}

LinearCode dual(const LinearCode& code) { return LinearCode(code.parity_check(), code.generator()); }

LinearCode rs_code(std::uint32_t q, std::size_t k) {
    const PrimeField field(q);
    if (k < 1 || k >= q)
        throw std::invalid_argument("RS dimension must satisfy 1 <= k < q (got k=" + std::to_string(k) + ")");
    Matrix G(q, k, q);
    for (std::size_t i = 0; i < k; ++i)
        for (std::uint32_t a = 0; a < q; ++a) G(i, a) = field.pow(a, i);
    return LinearCode(std::move(G));
}

bool is_standard_rs(const LinearCode& code) {
    if (code.n() != code.q()) return false;
    const PrimeField field(code.q());
    const auto& G = code.generator();
    for (std::size_t i = 0; i < code.k(); ++i)
        for (std::uint32_t a = 0; a < code.q(); ++a)
            if (G(i, a) != field.pow(a, i)) return false;
    return true;
}

FieldVector syndrome(const LinearCode& code, const FieldVector& y, Side side) {
    if (y.size() != code.n())
        throw std::invalid_argument("length mismatch: expected " + std::to_string(code.n()) + ", got " +
                                    std::to_string(y.size()));
    return side == Side::primal ? code.parity_check().apply(y) : code.generator().apply(y);
}

FieldVector coset_sample(const LinearCode& code, const FieldVector& u, Side side, Rng& rng) {
    const Matrix& M = side == Side::primal ? code.parity_check() : code.generator();
    const Matrix& kernel = side == Side::primal ? code.generator() : code.parity_check();
    if (u.size() != M.rows())
        throw std::invalid_argument("syndrome length mismatch: expected " + std::to_string(M.rows()) + ", got " +
                                    std::to_string(u.size()));

    // Permute columns so the particular solution does not always use the
    // same pivot positions, then undo the permutation.
    std::vector<std::size_t> perm(code.n());
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
    Matrix Mp(M.q(), M.rows(), M.cols());
    for (std::size_t r = 0; r < M.rows(); ++r)
        for (std::size_t c = 0; c < M.cols(); ++c) Mp(r, c) = M(r, perm[c]);
    auto particular = Mp.solve(u);
    if (!particular) throw std::logic_error("full-rank system reported inconsistent");
    std::vector<Residue> x(code.n());
    for (std::size_t c = 0; c < code.n(); ++c) x[perm[c]] = (*particular)[c];

    std::vector<Residue> coeff(kernel.rows());
    for (auto& c : coeff) c = static_cast<Residue>(uniform_below(rng, code.q()));
    return FieldVector(code.q(), std::move(x)) + kernel.left_apply(coeff);
}

LinearCode random_code(std::uint32_t q, std::size_t n, std::size_t k, Rng& rng) {
    Matrix G(q, k, n);
    for (;;) {
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < n; ++c) G(r, c) = static_cast<Residue>(uniform_below(rng, q));
        if (G.rank() == k) return LinearCode(G);
    }
}

}  // namespace qreduce
