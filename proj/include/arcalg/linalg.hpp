// Exact dense linear algebra over the integers, the rationals, and prime
// fields.  Everything here is deterministic and overflow-free: integer
// matrices use arbitrary-precision entries, rational elimination uses exact
// fractions, and mod-p elimination reduces into machine words only after
// taking residues.  No floating point anywhere.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace arcalg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Dense row-major matrix with exact entries.  Value-semantic and comparable;
// the entry type T is typically Int or Rat.
template <typename T>
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    ExactMatrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("entry count does not match the shape");
    }

    static ExactMatrix identity(std::size_t n) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    bool operator==(const ExactMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using MatrixZ = ExactMatrix<Int>;
using MatrixQ = ExactMatrix<Rat>;

// Rank of an integer matrix over the rationals, by fraction-free (Bareiss)
// elimination; all intermediate values stay integral.
int rank_rational(MatrixZ m);

// Rank of an integer matrix over the prime field F_p: entries are reduced
// mod p and eliminated there.  Requires p >= 2.
int rank_mod(const MatrixZ& m, int p);

// Rank over the field selected by p: p = 0 means the rationals, p >= 2 a
// prime field.  (Over the integers themselves the rank is the rational one.)
int rank(const MatrixZ& m, int p = 0);

// Determinant of a square integer matrix, by Bareiss elimination.
Int determinant(MatrixZ m);

// Elementary divisors d_1 | d_2 | ... of an integer matrix: the diagonal of
// its Smith normal form with zeros dropped, each divisor positive.  The
// number of divisors equals the rational rank.
std::vector<Int> smith_normal_form(MatrixZ m);

// True when the matrix is square and invertible over the integers, i.e. all
// elementary divisors are 1 and there are as many as rows.
bool is_unimodular(const MatrixZ& m);

// Coefficients x with sum_i x_i * span[i] = target over the field selected
// by p (0 = rationals, otherwise a prime field), or nullopt when the target
// lies outside the span.  Free coordinates are set to zero, so the answer is
// deterministic; mod-p coefficients are returned as residues in [0, p).
std::optional<std::vector<Rat>> solve_in_span(
    const std::vector<Int>& target, const std::vector<std::vector<Int>>& span,
    int p = 0);

}  // namespace arcalg
