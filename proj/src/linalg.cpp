#include "arcalg/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

namespace arcalg {

namespace {

using boost::multiprecision::abs;

void require_prime_modulus(int p) {
    if (p < 2) throw std::invalid_argument("modulus must be a prime >= 2");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw std::invalid_argument("modulus must be prime");
}

std::int64_t residue(const Int& x, int p) {
    Int r = x % p;
    if (r < 0) r += p;
    return static_cast<std::int64_t>(r);
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
    // Extended Euclid; a is nonzero mod the prime p.
    std::int64_t old_r = a, r = p, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    return ((old_s % p) + p) % p;
}

// In-place mod-p Gaussian elimination; returns the rank.  When solving, an
// extra augmented column rides along (cols counts it, pivot search stops
// before it).
int eliminate_mod(std::vector<std::vector<std::int64_t>>& a, int p,
                  std::size_t pivot_cols,
                  std::vector<std::size_t>* pivot_col_of_row = nullptr) {
    const std::size_t R = a.size();
    const std::size_t C = R == 0 ? 0 : a[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < pivot_cols && row < R; ++col) {
        std::size_t piv = row;
        while (piv < R && a[piv][col] == 0) ++piv;
        if (piv == R) continue;
        std::swap(a[piv], a[row]);
        std::int64_t inv = inverse_mod(a[row][col], p);
        for (std::size_t j = col; j < C; ++j)
            a[row][j] = a[row][j] * inv % p;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == row || a[i][col] == 0) continue;
            std::int64_t f = a[i][col];
            for (std::size_t j = col; j < C; ++j)
                a[i][j] = ((a[i][j] - f * a[row][j]) % p + p) % p;
        }
        if (pivot_col_of_row) pivot_col_of_row->push_back(col);
        ++row;
    }
    return static_cast<int>(row);
}

}  // namespace

int rank_rational(MatrixZ m) {
    const std::size_t R = m.rows(), C = m.cols();
    Int prev = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        std::size_t piv = row;
        while (piv < R && m(piv, col) == 0) ++piv;
        if (piv == R) continue;
        m.swap_rows(piv, row);
        for (std::size_t i = row + 1; i < R; ++i) {
            for (std::size_t j = col + 1; j < C; ++j)
                m(i, j) = (m(i, j) * m(row, col) - m(i, col) * m(row, j)) / prev;
            m(i, col) = 0;
        }
        prev = m(row, col);
        ++row;
    }
    return static_cast<int>(row);
}

int rank_mod(const MatrixZ& m, int p) {
    require_prime_modulus(p);
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<std::int64_t>> a(R, std::vector<std::int64_t>(C));
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) a[i][j] = residue(m(i, j), p);
    return eliminate_mod(a, p, C);
}

int rank(const MatrixZ& m, int p) {
    return p == 0 ? rank_rational(std::move(m)) : rank_mod(m, p);
}

Int determinant(MatrixZ m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t N = m.rows();
    if (N == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < N; ++k) {
        std::size_t piv = k;
        while (piv < N && m(piv, k) == 0) ++piv;
        if (piv == N) return 0;
        if (piv != k) {
            m.swap_rows(piv, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < N; ++i) {
            for (std::size_t j = k + 1; j < N; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(N - 1, N - 1);
}

std::vector<Int> smith_normal_form(MatrixZ m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<Int> divisors;
    std::size_t k = 0;
    while (k < R && k < C) {
        // Bring a smallest-magnitude nonzero entry of the trailing block to
        // the pivot position; stop if the block is zero.
        std::size_t bi = 0, bj = 0;
        bool found = false;
        for (std::size_t i = k; i < R; ++i)
            for (std::size_t j = k; j < C; ++j) {
                if (m(i, j) == 0) continue;
                if (!found || abs(m(i, j)) < abs(m(bi, bj))) {
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        if (!found) break;
        m.swap_rows(bi, k);
        m.swap_cols(bj, k);

        // Clear the pivot row and column by Euclidean steps: subtract the
        // quotient multiple, and when a remainder survives it is strictly
        // smaller than the pivot, so swapping it in makes progress.
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = k + 1; i < R; ++i) {
                if (m(i, k) == 0) continue;
                Int q = m(i, k) / m(k, k);
                for (std::size_t j = k; j < C; ++j) m(i, j) -= q * m(k, j);
                if (m(i, k) != 0) {
                    m.swap_rows(i, k);
                    clean = false;
                }
            }
            for (std::size_t j = k + 1; j < C; ++j) {
                if (m(k, j) == 0) continue;
                Int q = m(k, j) / m(k, k);
                for (std::size_t i = k; i < R; ++i) m(i, j) -= q * m(i, k);
                if (m(k, j) != 0) {
                    m.swap_cols(j, k);
                    clean = false;
                }
            }
        }

        // Divisibility repair: if some trailing entry is not a multiple of
        // the pivot, fold its row into the pivot row and redo this step.
        bool redo = false;
        for (std::size_t i = k + 1; i < R && !redo; ++i)
            for (std::size_t j = k + 1; j < C && !redo; ++j)
                if (m(i, j) % m(k, k) != 0) {
                    for (std::size_t jj = k; jj < C; ++jj)
                        m(k, jj) += m(i, jj);
                    redo = true;
                }
        if (redo) continue;

        divisors.push_back(abs(m(k, k)));
        ++k;
    }
    return divisors;
}

bool is_unimodular(const MatrixZ& m) {
    if (m.rows() != m.cols()) return false;
    std::vector<Int> divs = smith_normal_form(m);
    if (divs.size() != m.rows()) return false;
    return std::all_of(divs.begin(), divs.end(),
                       [](const Int& d) { return d == 1; });
}

std::optional<std::vector<Rat>> solve_in_span(
    const std::vector<Int>& target, const std::vector<std::vector<Int>>& span,
    int p) {
    const std::size_t dim = target.size();
    const std::size_t nb = span.size();
    for (const auto& v : span)
        if (v.size() != dim)
            throw std::invalid_argument("span vector of the wrong dimension");

    if (p == 0) {
        // Reduced row echelon form of [A | target] with A's columns the
        // span vectors, over the rationals.
        std::vector<std::vector<Rat>> a(dim, std::vector<Rat>(nb + 1));
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < nb; ++j) a[i][j] = Rat(span[j][i]);
            a[i][nb] = Rat(target[i]);
        }
        std::vector<std::size_t> pivot_col;
        std::size_t row = 0;
        for (std::size_t col = 0; col < nb && row < dim; ++col) {
            std::size_t piv = row;
            while (piv < dim && a[piv][col] == 0) ++piv;
            if (piv == dim) continue;
            std::swap(a[piv], a[row]);
            Rat d = a[row][col];
            for (std::size_t j = col; j <= nb; ++j) a[row][j] /= d;
            for (std::size_t i = 0; i < dim; ++i) {
                if (i == row || a[i][col] == 0) continue;
                Rat f = a[i][col];
                for (std::size_t j = col; j <= nb; ++j) a[i][j] -= f * a[row][j];
            }
            pivot_col.push_back(col);
            ++row;
        }
        for (std::size_t i = row; i < dim; ++i)
            if (a[i][nb] != 0) return std::nullopt;
        std::vector<Rat> x(nb, Rat(0));
        for (std::size_t r = 0; r < row; ++r) x[pivot_col[r]] = a[r][nb];
        return x;
    }

    require_prime_modulus(p);
    std::vector<std::vector<std::int64_t>> a(
        dim, std::vector<std::int64_t>(nb + 1));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < nb; ++j) a[i][j] = residue(span[j][i], p);
        a[i][nb] = residue(target[i], p);
    }
    std::vector<std::size_t> pivot_col;
    int rk = eliminate_mod(a, p, nb, &pivot_col);
    for (std::size_t i = static_cast<std::size_t>(rk); i < dim; ++i)
        if (a[i][nb] != 0) return std::nullopt;
    std::vector<Rat> x(nb, Rat(0));
    for (int r = 0; r < rk; ++r)
        x[pivot_col[static_cast<std::size_t>(r)]] =
            Rat(a[static_cast<std::size_t>(r)][nb]);
    return x;
}

}  // namespace arcalg
