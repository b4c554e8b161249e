#pragma once

// Independent oracles used only by the test suite.  They recompute the
// boundary-path and tiling combinatorics from the cell geometry of Young
// diagrams, with no reference to weights or cup diagrams, so that agreement
// with the library is a genuine cross-check of two different constructions.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "arcalg/cup_diagram.hpp"
#include "arcalg/dyck.hpp"
#include "arcalg/linalg.hpp"
#include "arcalg/partition.hpp"
#include "arcalg/weight.hpp"

namespace arcalg::oracles {

inline int cell_height(const Cell& c, const Context& ctx) {
    return c.r + c.c - 1 - ctx.m;
}

// Number of cells of mu on the content diagonal t, and the first row of
// that diagonal (diagonals of a partition are runs of consecutive rows).
inline int diagonal_count(const Partition& mu, int t) {
    int r0 = std::max(1, t + 1);
    int k = 0;
    while (mu.contains_cell({r0 + k, r0 + k - t})) ++k;
    return k;
}

inline Cell diagonal_next_free(const Partition& mu, int t) {
    int r0 = std::max(1, t + 1);
    int k = diagonal_count(mu, t);
    return {r0 + k, r0 + k - t};
}

inline std::optional<Cell> diagonal_deepest(const Partition& mu, int t) {
    int r0 = std::max(1, t + 1);
    int k = diagonal_count(mu, t);
    if (k == 0) return std::nullopt;
    return Cell{r0 + k - 1, r0 + k - 1 - t};
}

inline bool steps_adjacent(const std::vector<Cell>& tiles) {
    for (size_t i = 0; i + 1 < tiles.size(); ++i) {
        const Cell& a = tiles[i];
        const Cell& b = tiles[i + 1];
        bool down = (b.r == a.r + 1 && b.c == a.c);
        bool left = (b.r == a.r && b.c == a.c - 1);
        if (!down && !left) return false;
    }
    return true;
}

inline bool ends_minimal(const std::vector<Cell>& tiles, const Context& ctx) {
    int mn = cell_height(tiles.front(), ctx);
    for (const Cell& c : tiles) mn = std::min(mn, cell_height(c, ctx));
    return cell_height(tiles.front(), ctx) == mn && cell_height(tiles.back(), ctx) == mn;
}

// Strip-based enumeration of removable Dyck paths: on each diagonal take the
// deepest cell; a candidate interval is removable when the strip removal is
// a legal partition move in the box, the strip is a lattice path, and the
// minimal height is attained at both ends.
inline std::vector<BoundaryPath> removable(const Partition& mu, const Context& ctx) {
    std::vector<BoundaryPath> out;
    for (int f = -ctx.m + 1; f <= ctx.n - 1; ++f) {
        for (int l = f; l <= ctx.n - 1; l += 2) {
            std::vector<Cell> tiles;
            bool ok = true;
            for (int t = f; t <= l; ++t) {
                auto c = diagonal_deepest(mu, t);
                if (!c) { ok = false; break; }
                tiles.push_back(*c);
            }
            if (!ok || !steps_adjacent(tiles) || !ends_minimal(tiles, ctx)) continue;
            try {
                (void)mu.remove_cells(tiles);
            } catch (...) {
                continue;
            }
            BoundaryPath bp;
            bp.path = {f, l};
            bp.anchored = {bp.path, tiles};
            bp.height = cell_height(tiles.front(), ctx);
            out.push_back(bp);
        }
    }
    return out;
}

// Strip-based enumeration of addable Dyck paths: on each diagonal take the
// first free cell.
inline std::vector<BoundaryPath> addable(const Partition& mu, const Context& ctx) {
    std::vector<BoundaryPath> out;
    for (int f = -ctx.m + 1; f <= ctx.n - 1; ++f) {
        for (int l = f; l <= ctx.n - 1; l += 2) {
            std::vector<Cell> tiles;
            for (int t = f; t <= l; ++t) tiles.push_back(diagonal_next_free(mu, t));
            if (!steps_adjacent(tiles) || !ends_minimal(tiles, ctx)) continue;
            Partition bigger;
            try {
                bigger = mu.add_cells(tiles);
            } catch (...) {
                continue;
            }
            if (!bigger.in_box(ctx)) continue;
            BoundaryPath bp;
            bp.path = {f, l};
            bp.anchored = {bp.path, tiles};
            bp.height = cell_height(tiles.front(), ctx);
            out.push_back(bp);
        }
    }
    return out;
}

// Level-run decomposition of a skew shape into Dyck paths: level j >= 1
// collects the diagonals holding at least j cells of mu minus lam; each
// maximal run of such diagonals is one path.  Returns nullopt when the runs
// fail the pairwise covers-or-distant test or have even length (a Dyck path
// spans an odd number of diagonals).
inline std::optional<std::vector<DyckPath>> tiling(const Partition& lam,
                                                   const Partition& mu,
                                                   const Context& ctx) {
    if (!mu.contains(lam)) return std::nullopt;
    std::map<int, int> mult;
    for (const Cell& c : mu.cells())
        if (!lam.contains_cell(c)) mult[c.r - c.c] += 1;
    int maxLevel = 0;
    for (auto& [t, k] : mult) maxLevel = std::max(maxLevel, k);
    std::vector<DyckPath> paths;
    for (int j = 1; j <= maxLevel; ++j) {
        std::optional<int> runStart;
        int prev = 0;
        bool inRun = false;
        auto flush = [&](int end) {
            if (!inRun) return true;
            if ((end - *runStart) % 2 != 0) return false;
            paths.push_back({*runStart, end});
            inRun = false;
            return true;
        };
        for (auto& [t, k] : mult) {
            if (k >= j) {
                if (inRun && t != prev + 1) {
                    if (!flush(prev)) return std::nullopt;
                }
                if (!inRun) {
                    runStart = t;
                    inRun = true;
                }
                prev = t;
            } else if (inRun && t > prev) {
                if (!flush(prev)) return std::nullopt;
            }
        }
        if (!flush(prev)) return std::nullopt;
    }
    for (size_t i = 0; i < paths.size(); ++i)
        for (size_t j = i + 1; j < paths.size(); ++j) {
            Rel r = relate(paths[i], paths[j]).primary;
            if (r != Rel::Covers && r != Rel::Covered && r != Rel::Distant)
                return std::nullopt;
        }
    std::sort(paths.begin(), paths.end());
    return paths;
}

// Placement refinement of the level decomposition: the level-j path takes the
// j-th deepest skew cell on each diagonal it spans.  Each placement must be a
// connected strip attaining its minimal height at both end cells (the
// geometric profile of a Dyck path); the level decomposition alone accepts
// V-shaped strips that are not Dyck paths.  This produces one valid witness
// tiling, good for deciding existence and the path intervals, but its cell
// assignment (and hence the end-cell heights) need not be the canonical one:
// when an arc nested inside another carries a greater height, the canonical
// order peels the inner strip first and assigns it the deeper cells.
inline std::optional<std::vector<BoundaryPath>> tiling_placed(const Partition& lam,
                                                              const Partition& mu,
                                                              const Context& ctx) {
    auto paths = tiling(lam, mu, ctx);
    if (!paths) return std::nullopt;
    std::map<int, int> mult;
    for (const Cell& c : mu.cells())
        if (!lam.contains_cell(c)) mult[c.r - c.c] += 1;
    int maxLevel = 0;
    for (auto& [t, k] : mult) maxLevel = std::max(maxLevel, k);
    std::vector<BoundaryPath> out;
    for (int j = 1; j <= maxLevel; ++j) {
        std::vector<std::pair<int, int>> runs;
        std::optional<int> start;
        int prev = 0;
        for (auto& [t, k] : mult) {
            if (k < j) continue;
            if (start && t != prev + 1) {
                runs.push_back({*start, prev});
                start.reset();
            }
            if (!start) start = t;
            prev = t;
        }
        if (start) runs.push_back({*start, prev});
        for (auto [f, l] : runs) {
            BoundaryPath bp;
            bp.path = {f, l};
            std::vector<Cell> tiles;
            for (int t = f; t <= l; ++t) {
                int r0 = std::max(1, t + 1);
                int r = r0 + diagonal_count(mu, t) - j;
                tiles.push_back({r, r - t});
            }
            if (!steps_adjacent(tiles) || !ends_minimal(tiles, ctx)) return std::nullopt;
            bp.anchored = {bp.path, tiles};
            bp.height = cell_height(tiles.front(), ctx);
            out.push_back(bp);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const BoundaryPath& a, const BoundaryPath& b) { return a.path < b.path; });
    return out;
}

// Regularisation by direct diagonal filling: the anti-diagonal band of height
// k holds the box cells with r + c = m + 1 + k.  A partition is regular
// exactly when every band of non-positive height is full, and the defect is
// the largest k <= 0 with bands of height <= k full.  For each k from just
// above the defect up to 0, connect all missing height-k cells with the strip
// that hugs the boundary: the first free cell on every content diagonal of
// the span.  Returns nullopt if any strip fails the Dyck-path profile.
inline bool height_band_full(const Partition& p, int k, const Context& ctx) {
    for (int r = 1; r <= ctx.m + k; ++r) {
        int c = ctx.m + 1 + k - r;
        if (c >= 1 && c <= ctx.m && !p.contains_cell({r, c})) return false;
    }
    return true;
}

inline std::optional<std::pair<Partition, std::vector<AnchoredPath>>>
regularise_filling(const Partition& alpha, const Context& ctx) {
    Partition cur = alpha;
    int d = 0;
    while (d > -ctx.m && !height_band_full(cur, d, ctx)) --d;
    std::vector<AnchoredPath> out;
    for (int k = d + 1; k <= 0; ++k) {
        std::vector<Cell> missing;
        for (int r = 1; r <= ctx.m + k; ++r) {
            int c = ctx.m + 1 + k - r;
            if (c >= 1 && c <= ctx.m && !cur.contains_cell({r, c})) missing.push_back({r, c});
        }
        if (missing.empty()) return std::nullopt;
        int f = missing.front().r - missing.front().c;
        int l = f;
        for (const Cell& c : missing) {
            f = std::min(f, c.r - c.c);
            l = std::max(l, c.r - c.c);
        }
        AnchoredPath strip;
        strip.path = {f, l};
        for (int t = f; t <= l; ++t) strip.tiles.push_back(diagonal_next_free(cur, t));
        if (!steps_adjacent(strip.tiles) || !ends_minimal(strip.tiles, ctx)) return std::nullopt;
        if (cell_height(strip.tiles.front(), ctx) != k) return std::nullopt;
        for (const Cell& c : missing)
            if (std::find(strip.tiles.begin(), strip.tiles.end(), c) == strip.tiles.end())
                return std::nullopt;
        cur = cur.add_cells(strip.tiles);
        if (!cur.in_box(ctx)) return std::nullopt;
        out.push_back(strip);
    }
    if (!height_band_full(cur, 0, ctx)) return std::nullopt;
    return std::make_pair(cur, out);
}

// --- exact linear algebra oracles ---------------------------------------

// Cofactor-expansion determinant of the square submatrix of m picked out by
// the given row and column index lists (equal length, assumed small).
inline Int laplace_minor(const MatrixZ& m, const std::vector<std::size_t>& ri,
                         const std::vector<std::size_t>& ci) {
    const std::size_t k = ri.size();
    if (k == 0) return 1;
    if (k == 1) return m(ri[0], ci[0]);
    Int det = 0;
    std::vector<std::size_t> sub(ri.begin() + 1, ri.end());
    int sign = 1;
    for (std::size_t j = 0; j < k; ++j) {
        if (m(ri[0], ci[j]) != 0) {
            std::vector<std::size_t> rest;
            for (std::size_t jj = 0; jj < k; ++jj)
                if (jj != j) rest.push_back(ci[jj]);
            det += sign * m(ri[0], ci[j]) * laplace_minor(m, sub, rest);
        }
        sign = -sign;
    }
    return det;
}

// All size-k index subsets of {0, ..., n-1}, in lexicographic order.
inline std::vector<std::vector<std::size_t>> index_subsets(std::size_t n,
                                                           std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = from; i + (k - cur.size()) <= n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Elementary divisors via determinantal divisors: D_k is the gcd of all
// k-by-k minors, and the k-th divisor is D_k / D_{k-1}.  Exponential in the
// matrix size, so only usable as a cross-check on small matrices.
inline std::vector<Int> snf_by_minors(const MatrixZ& m) {
    using boost::multiprecision::abs;
    using boost::multiprecision::gcd;
    std::vector<Int> divisors;
    Int prev = 1;
    const std::size_t kmax = std::min(m.rows(), m.cols());
    for (std::size_t k = 1; k <= kmax; ++k) {
        Int dk = 0;
        for (const auto& ri : index_subsets(m.rows(), k))
            for (const auto& ci : index_subsets(m.cols(), k))
                dk = gcd(dk, laplace_minor(m, ri, ci));
        if (dk == 0) break;
        divisors.push_back(abs(dk) / prev);
        prev = abs(dk);
    }
    return divisors;
}

// Every label orienting the cup diagram of lam, with its degree: rays are
// frozen and each cup is independently either kept or reversed, a reversed
// cup contributing one to the degree.  Enumerated directly through the
// weight bijection, without consulting is_oriented / oriented_degree.
struct FlipLabel {
    Partition label;
    int degree = 0;
};

inline std::vector<FlipLabel> flip_labels(const Partition& lam, const Context& ctx) {
    CupDiagram cd = cup_diagram(lam, ctx);
    Weight base = weight_of(lam, ctx);
    std::vector<FlipLabel> out;
    unsigned cups = static_cast<unsigned>(cd.cup_count());
    for (unsigned mask = 0; mask < (1u << cups); ++mask) {
        Weight w = base;
        int degree = 0;
        for (unsigned i = 0; i < cups; ++i) {
            if (!(mask & (1u << i))) continue;
            w[cd.cups[i].p - 1] = !w[cd.cups[i].p - 1];
            w[cd.cups[i].q - 1] = !w[cd.cups[i].q - 1];
            ++degree;
        }
        std::optional<Partition> mu = partition_of_weight(w, ctx);
        if (!mu) throw std::logic_error("cup flip left the weight lattice");
        out.push_back({*mu, degree});
    }
    std::sort(out.begin(), out.end(),
              [](const FlipLabel& a, const FlipLabel& b) { return a.label < b.label; });
    return out;
}

// Rank over the rationals by plain fraction-ful Gaussian elimination,
// independent of the fraction-free routine in the library.
inline int gauss_rank_rational(const MatrixZ& m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<Rat>> a(R, std::vector<Rat>(C));
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) a[i][j] = Rat(m(i, j));
    std::size_t row = 0;
    for (std::size_t col = 0; col < C && row < R; ++col) {
        std::size_t piv = row;
        while (piv < R && a[piv][col] == 0) ++piv;
        if (piv == R) continue;
        std::swap(a[piv], a[row]);
        for (std::size_t i = row + 1; i < R; ++i) {
            if (a[i][col] == 0) continue;
            Rat f = a[i][col] / a[row][col];
            for (std::size_t j = col; j < C; ++j) a[i][j] -= f * a[row][j];
        }
        ++row;
    }
    return static_cast<int>(row);
}

} // namespace arcalg::oracles
