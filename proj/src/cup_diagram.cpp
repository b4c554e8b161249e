#include "arcalg/cup_diagram.hpp"

#include <algorithm>

namespace arcalg {

int CupDiagram::cup_at(int p, const Context&) const {
    for (size_t i = 0; i < cups.size(); ++i)
        if (cups[i].p == p || cups[i].q == p) return static_cast<int>(i);
    return -1;
}

bool CupDiagram::is_ray(int p) const {
    return std::find(sw_rays.begin(), sw_rays.end(), p) != sw_rays.end() ||
           std::find(se_rays.begin(), se_rays.end(), p) != se_rays.end();
}

CupDiagram cup_diagram(const Partition& lambda, const Context& ctx) {
    Weight w = weight_of(lambda, ctx);
    CupDiagram d;
    std::vector<int> stack;
    for (int p = 1; p <= ctx.points(); ++p) {
        if (w[p - 1] == kDown) {
            stack.push_back(p);
        } else if (!stack.empty()) {
            d.cups.push_back({stack.back(), p});
            stack.pop_back();
        } else {
            d.sw_rays.push_back(p);
        }
    }
    d.se_rays = std::move(stack);
    std::sort(d.cups.begin(), d.cups.end());
    return d;
}

namespace {
// Shared check: label weight must equal the diagram weight on rays, and on
// each cup be either the diagram's own orientation (down-left) or reversed
// (up-left).  Returns the count of reversed cups, or -1 if not oriented.
int oriented_degree_impl(const Partition& diagram, const Partition& label,
                         const Context& ctx) {
    CupDiagram d = cup_diagram(diagram, ctx);
    Weight own = weight_of(diagram, ctx);
    Weight lab = weight_of(label, ctx);
    for (int p : d.sw_rays)
        if (lab[p - 1] != own[p - 1]) return -1;
    for (int p : d.se_rays)
        if (lab[p - 1] != own[p - 1]) return -1;
    int clockwise = 0;
    for (const Arc& cup : d.cups) {
        bool left = lab[cup.p - 1];
        bool right = lab[cup.q - 1];
        if (left == right) return -1;
        if (left == kUp) ++clockwise;
    }
    return clockwise;
}
} // namespace

bool is_oriented(const Partition& diagram, const Partition& label, const Context& ctx) {
    return oriented_degree_impl(diagram, label, ctx) >= 0;
}

std::optional<int> oriented_degree(const Partition& diagram, const Partition& label,
                                   const Context& ctx) {
    int d = oriented_degree_impl(diagram, label, ctx);
    if (d < 0) return std::nullopt;
    return d;
}

std::vector<Arc> clockwise_arcs(const Partition& diagram, const Partition& label,
                                const Context& ctx) {
    std::vector<Arc> out;
    CupDiagram d = cup_diagram(diagram, ctx);
    Weight lab = weight_of(label, ctx);
    for (const Arc& cup : d.cups)
        if (lab[cup.p - 1] == kUp) out.push_back(cup);
    return out;
}

} // namespace arcalg
