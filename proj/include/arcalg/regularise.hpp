#pragma once

#include <vector>

#include "arcalg/context.hpp"
#include "arcalg/dyck.hpp"
#include "arcalg/partition.hpp"

namespace arcalg {

// The regularisation chain of a partition: starting just above the defect,
// add for each height k = d+1, ..., 0 the maximal-breadth addable Dyck path
// of height k.  Each step raises the defect by one; the result is the
// smallest regular partition forming a Dyck pair with the input.
struct Regularisation {
    Partition reg;
    std::vector<DyckPath> paths; // P^{d+1}, ..., P^0, in ascending height order
};

Regularisation regularise(const Partition& alpha, const Context& ctx);

struct HeightPaths {
    int height = 0;
    std::vector<DyckPath> paths; // left to right
    auto operator<=>(const HeightPaths&) const = default;
};

// The canonical three-phase route from alpha to mu for a Dyck pair (alpha, mu):
//   phase 1 (adds_neg)  - regularise alpha, adding the paths P^k, k = d+1..0;
//   phase 2 (splits)    - remove the complements R^k_i of the height-k tiles
//                         of the pair inside P^k (so that, content-wise,
//                         P^k minus the R^k_i is exactly the height-k part of
//                         the pair), landing on alpha joined with the tiles
//                         of non-positive height;
//   phase 3 (adds_pos)  - for k = 1..max add the height-k tiles left to right.
// Two complement paths of different heights can nest strictly, in either
// direction, so the legal removal order is geometric rather than by height:
// split_removals lists the paths outermost first, each removable from the
// partition produced by its predecessors.  Every intermediate stays inside
// the box.
struct AddSplitPlan {
    std::vector<HeightPaths> adds_neg;    // one path per height k = d+1..0
    Partition reg;                        // after phase 1
    std::vector<HeightPaths> splits;      // complements per height k = d+1..0
    std::vector<DyckPath> split_removals; // the same paths in legal removal order
    Partition split_base;                 // after phase 2
    std::vector<HeightPaths> adds_pos;    // tiles per height k = 1..max
};

AddSplitPlan canonical_add_split(const Partition& alpha, const Partition& mu,
                                 const Context& ctx);

// For mu regular with (alpha, mu) a Dyck pair of degree k whose tiles all
// have non-positive height: (mu, reg(alpha)) is again a Dyck pair, of degree
// k + d(alpha).  Verifies that identity and returns the degree.
int regularize_pair_degree(const Partition& alpha, const Partition& mu,
                           const Context& ctx);

} // namespace arcalg
