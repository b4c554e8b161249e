#pragma once

#include <map>
#include <optional>
#include <vector>

#include "arcalg/context.hpp"
#include "arcalg/dyck.hpp"
#include "arcalg/partition.hpp"

namespace arcalg {

struct TiledPath {
    DyckPath path;
    int height = 0;
    auto operator<=>(const TiledPath&) const = default;
};

// The unique tiling of the skew shape mu minus base by Dyck paths, read off
// the half-diagram of mu labelled by base: one path per clockwise arc.
struct DyckTiling {
    Partition base;
    Partition top;
    std::vector<TiledPath> paths; // sorted by path

    int degree() const { return static_cast<int>(paths.size()); }
    // Paths of a given height, sorted.
    std::vector<DyckPath> at_height(int k) const;
    std::optional<int> height_of(const DyckPath& P) const;
};

// (lam, mu) is a Dyck pair when the diagram of mu labelled by lam is
// oriented (lam is then automatically contained in mu).
bool is_dyck_pair(const Partition& lam, const Partition& mu, const Context& ctx);

std::optional<DyckTiling> dyck_tiling(const Partition& lam, const Partition& mu,
                                      const Context& ctx);

// The support of a clockwise path P in the labelled diagram: walk the arcs
// crossed by a ray dropped from P, innermost first (enclosing cups by left
// end descending, then the crossed rays: south-east rays model arcs running
// to plus infinity and cross when their vertex is left of P; south-west rays
// model arcs to minus infinity and cross when their vertex is right of P).
// Counting P itself as clockwise, stop as soon as the number of clockwise
// arcs crossed equals the number of anticlockwise-or-ray crossings; the
// support collects the clockwise arcs crossed before that balance.
std::vector<DyckPath> support_set(const Partition& lam, const Partition& mu,
                                  const DyckPath& P, const Context& ctx);

// The height of a tile in the tiling: the removable height of P in mu capped
// by the (recursively computed) heights of its supporting paths minus one.
int tiling_height(const Partition& lam, const Partition& mu, const DyckPath& P,
                  const Context& ctx);

enum class MoveKind { G1, G2, G3 };
const char* move_name(MoveKind k);

// One step of the canonical removal sequence from top down to base.
struct TableauStep {
    Partition before;
    DyckPath path;
    Partition after;
    int height = 0;
    MoveKind kind = MoveKind::G1;
};

// The canonical tableau of a Dyck pair: paths ordered by tiling height
// (ascending) with equal heights ordered left to right; removal proceeds
// from the back of that list (highest first).  Every step removes a
// removable path of the intermediate partition and is classified as:
//   G1 - the defect drops by one;
//   G2 - defect constant and no removable path of the base strictly covers
//        the removed path;
//   G3 - defect constant and such a covering path exists.
std::vector<TableauStep> canonical_tableau(const Partition& lam, const Partition& mu,
                                           const Context& ctx);

// Concrete cell placements for the tiling, obtained by peeling paths off in
// canonical order; the multiset union of the placements is mu minus lam.
std::vector<AnchoredPath> tiling_placements(const Partition& lam, const Partition& mu,
                                            const Context& ctx);

} // namespace arcalg
