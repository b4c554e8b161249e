#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arcalg/context.hpp"
#include "arcalg/cup_diagram.hpp"
#include "arcalg/partition.hpp"

namespace arcalg {

// A Dyck path, identified with its interval of contents [f, l].  Both
// admissible steps raise the content by one, so the cells of any concrete
// representative have consecutive contents f..l; the breadth is the number
// of odd-index (peak-level) columns, b = (l-f)/2 + 1.
struct DyckPath {
    int f = 0;
    int l = 0;

    int breadth() const { return (l - f) / 2 + 1; }
    int cell_count() const { return l - f + 1; }
    bool contains_content(int t) const { return f <= t && t <= l; }
    bool contains(const DyckPath& other) const { return f <= other.f && other.l <= l; }
    std::string to_string() const {
        return "[" + std::to_string(f) + "," + std::to_string(l) + "]";
    }
    auto operator<=>(const DyckPath&) const = default;
};

enum class Rel { Equal, Adjacent, Distant, Covers, Covered, Overlapping };

// Primary relation plus the (one-sided) domination refinements:
// dominated_by means the whole of P lies strictly left of Q.
struct Relation {
    Rel primary = Rel::Equal;
    bool dominated_by = false; // last(P) < first(Q)
    bool dominates = false;    // last(Q) < first(P)
};

Relation relate(const DyckPath& P, const DyckPath& Q);
std::string rel_name(Rel r);

// A concrete placement of a Dyck path as a set of cells, listed in content
// order f..l; consecutive cells differ by a down step [r+1, c] or a left
// step [r, c-1].
struct AnchoredPath {
    DyckPath path;
    std::vector<Cell> tiles;
};

// A removable or addable Dyck path of a partition, with its boundary-strip
// representative and its height (the common diagonal height of the two end
// tiles, equivalently down-minus-up labels strictly left of the path's left
// point in the weight of the larger partition).
struct BoundaryPath {
    DyckPath path;
    AnchoredPath anchored;
    int height = 0;
};

// Positions on the weight line corresponding to a path's ends: the left
// point sits at f + m, the right point at l + m + 1; conversely the cup
// (p, q) carries the path [p - m, q - m - 1].
int left_point(const DyckPath& P, const Context& ctx);
int right_point(const DyckPath& P, const Context& ctx);
DyckPath path_of_arc(const Arc& cup, const Context& ctx);

// All removable Dyck paths of mu: one per cup of its diagram, sorted by f.
std::vector<BoundaryPath> removable_paths(const Partition& mu, const Context& ctx);

// All addable Dyck paths of mu, sorted by f.
std::vector<BoundaryPath> addable_paths(const Partition& mu, const Context& ctx);

// Subsets by height: removable of height > 0, removable of height 0,
// addable of height 1 (the cases the presentation uses).
std::vector<BoundaryPath> removable_paths_positive(const Partition& mu, const Context& ctx);
std::vector<BoundaryPath> removable_paths_height0(const Partition& mu, const Context& ctx);
std::vector<BoundaryPath> addable_paths_height1(const Partition& mu, const Context& ctx);

// Remove (add) a removable (addable) path: the weight of the result differs
// from the weight of mu exactly by swapping the labels at the path's two end
// points.  Throws if the path is not removable (addable).
Partition remove_path(const Partition& mu, const DyckPath& P, const Context& ctx);
Partition add_path(const Partition& mu, const DyckPath& P, const Context& ctx);

bool is_removable(const Partition& mu, const DyckPath& P, const Context& ctx);
bool is_addable(const Partition& mu, const DyckPath& P, const Context& ctx);

// Removable height of P in mu (P must be removable).
int removable_height(const Partition& mu, const DyckPath& P, const Context& ctx);

// The smallest removable path of mu whose contents contain cont(P) u cont(Q),
// if any.  Requires P and Q adjacent (their content union an interval).
std::optional<DyckPath> merge_paths(const Partition& mu, const DyckPath& P,
                                    const DyckPath& Q, const Context& ctx);

// The split of Q by a strictly covered P: the two outer intervals.
std::pair<DyckPath, DyckPath> split_path(const DyckPath& Q, const DyckPath& P);

// The maximal-breadth addable path of height 1 lying strictly right of the
// height-0 removable path P, if any.
std::optional<DyckPath> rt_path(const Partition& lambda, const DyckPath& P,
                                const Context& ctx);

} // namespace arcalg
