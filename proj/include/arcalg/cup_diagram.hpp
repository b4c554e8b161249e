#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "arcalg/context.hpp"
#include "arcalg/partition.hpp"
#include "arcalg/weight.hpp"

namespace arcalg {

// An arc of a cup (or, mirrored, cap) diagram connecting two points on the
// weight line, p < q.
struct Arc {
    int p = 0;
    int q = 0;
    auto operator<=>(const Arc&) const = default;
};

// The cup diagram attached to a partition: arcs below the weight line plus
// rays.  Rays through an up label lean south-west, rays through a down label
// lean south-east; all SW rays sit left of all SE rays, and no ray passes
// inside a cup.  The cap diagram of the same partition is the mirror image
// and shares this data.
struct CupDiagram {
    std::vector<Arc> cups;    // sorted by left endpoint
    std::vector<int> sw_rays; // positions of unmatched up labels
    std::vector<int> se_rays; // positions of unmatched down labels

    int cup_count() const { return static_cast<int>(cups.size()); }
    // Index of the cup containing position p, or -1 if p carries a ray.
    int cup_at(int p, const Context& ctx) const;
    bool is_ray(int p) const;
};

// Build the cup diagram of lambda by the stack matching of its weight:
// scanning left to right, each down label opens, each up label closes the
// nearest open down label into a cup.
CupDiagram cup_diagram(const Partition& lambda, const Context& ctx);

// A one-sided oriented half-diagram: the cup diagram of `diagram` with the
// weight of `label` placed on it.  It is oriented when the label agrees with
// the diagram's own weight except possibly for reversing some cups (rays are
// frozen).  Each reversed cup (up label at its left endpoint) is clockwise
// and contributes 1 to the degree.
bool is_oriented(const Partition& diagram, const Partition& label, const Context& ctx);

// Degree = number of clockwise arcs; nullopt when not oriented.
std::optional<int> oriented_degree(const Partition& diagram, const Partition& label,
                                   const Context& ctx);

// The cups of diagram that are clockwise under the label (up at left end).
std::vector<Arc> clockwise_arcs(const Partition& diagram, const Partition& label,
                                const Context& ctx);

} // namespace arcalg
