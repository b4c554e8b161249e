#include "arcalg/dyck.hpp"

#include <algorithm>
#include <stdexcept>

#include "arcalg/weight.hpp"

namespace arcalg {

Relation relate(const DyckPath& P, const DyckPath& Q) {
    Relation out;
    out.dominated_by = P.l < Q.f;
    out.dominates = Q.l < P.f;
    if (P == Q) {
        out.primary = Rel::Equal;
    } else if (P.f < Q.f && Q.l < P.l) {
        out.primary = Rel::Covers;
    } else if (Q.f < P.f && P.l < Q.l) {
        out.primary = Rel::Covered;
    } else if (P.l + 2 <= Q.f || Q.l + 2 <= P.f) {
        out.primary = Rel::Distant;
    } else if (P.l + 1 == Q.f || Q.l + 1 == P.f) {
        out.primary = Rel::Adjacent;
    } else {
        out.primary = Rel::Overlapping;
    }
    return out;
}

std::string rel_name(Rel r) {
    switch (r) {
        case Rel::Equal: return "equal";
        case Rel::Adjacent: return "adjacent";
        case Rel::Distant: return "distant";
        case Rel::Covers: return "covers";
        case Rel::Covered: return "covered";
        case Rel::Overlapping: return "overlapping";
    }
    return "?";
}

int left_point(const DyckPath& P, const Context& ctx) { return P.f + ctx.m; }
int right_point(const DyckPath& P, const Context& ctx) { return P.l + ctx.m + 1; }

DyckPath path_of_arc(const Arc& cup, const Context& ctx) {
    return DyckPath{cup.p - ctx.m, cup.q - ctx.m - 1};
}

namespace {
// Outermost cell of mu with content t, if the diagonal is non-empty.
std::optional<Cell> outer_cell(const Partition& mu, int t) {
    std::optional<Cell> out;
    for (int r = std::max(1, t + 1);; ++r) {
        Cell cell{r, r - t};
        if (!mu.contains_cell(cell)) break;
        out = cell;
    }
    return out;
}

AnchoredPath boundary_strip(const Partition& mu, const DyckPath& P) {
    AnchoredPath a;
    a.path = P;
    for (int t = P.f; t <= P.l; ++t) {
        auto cell = outer_cell(mu, t);
        if (!cell) throw std::logic_error("boundary strip hits an empty diagonal");
        a.tiles.push_back(*cell);
    }
    return a;
}
} // namespace

int removable_height(const Partition& mu, const DyckPath& P, const Context& ctx) {
    Weight w = weight_of(mu, ctx);
    int p = left_point(P, ctx);
    int h = 0;
    for (int j = 1; j < p; ++j) h += (w[j - 1] == kDown) ? 1 : -1;
    return h;
}

std::vector<BoundaryPath> removable_paths(const Partition& mu, const Context& ctx) {
    std::vector<BoundaryPath> out;
    for (const Arc& cup : cup_diagram(mu, ctx).cups) {
        BoundaryPath bp;
        bp.path = path_of_arc(cup, ctx);
        bp.anchored = boundary_strip(mu, bp.path);
        bp.height = removable_height(mu, bp.path, ctx);
        out.push_back(bp);
    }
    std::sort(out.begin(), out.end(),
              [](const BoundaryPath& a, const BoundaryPath& b) { return a.path < b.path; });
    return out;
}

bool is_removable(const Partition& mu, const DyckPath& P, const Context& ctx) {
    int p = left_point(P, ctx);
    int q = right_point(P, ctx);
    if (p < 1 || q > ctx.points()) return false;
    for (const Arc& cup : cup_diagram(mu, ctx).cups)
        if (cup.p == p && cup.q == q) return true;
    return false;
}

Partition remove_path(const Partition& mu, const DyckPath& P, const Context& ctx) {
    if (!is_removable(mu, P, ctx))
        throw std::invalid_argument("path " + P.to_string() + " is not removable from " +
                                    mu.to_string());
    Weight w = weight_of(mu, ctx);
    int p = left_point(P, ctx);
    int q = right_point(P, ctx);
    std::swap(w[p - 1], w[q - 1]);
    auto nu = partition_of_weight(w, ctx);
    if (!nu) throw std::logic_error("removal produced an invalid weight");
    return *nu;
}

bool is_addable(const Partition& mu, const DyckPath& P, const Context& ctx) {
    int p = left_point(P, ctx);
    int q = right_point(P, ctx);
    if (p < 1 || q > ctx.points()) return false;
    Weight w = weight_of(mu, ctx);
    if (w[p - 1] != kUp || w[q - 1] != kDown) return false;
    std::swap(w[p - 1], w[q - 1]);
    auto nu = partition_of_weight(w, ctx);
    if (!nu || !nu->in_box(ctx)) return false;
    return is_removable(*nu, P, ctx);
}

Partition add_path(const Partition& mu, const DyckPath& P, const Context& ctx) {
    if (!is_addable(mu, P, ctx))
        throw std::invalid_argument("path " + P.to_string() + " is not addable to " +
                                    mu.to_string());
    Weight w = weight_of(mu, ctx);
    std::swap(w[left_point(P, ctx) - 1], w[right_point(P, ctx) - 1]);
    return *partition_of_weight(w, ctx);
}

std::vector<BoundaryPath> addable_paths(const Partition& mu, const Context& ctx) {
    std::vector<BoundaryPath> out;
    for (int f = -ctx.m + 1; f <= ctx.n - 1; ++f) {
        for (int l = f; l <= ctx.n - 1; l += 2) {
            DyckPath P{f, l};
            if (!is_addable(mu, P, ctx)) continue;
            Partition nu = add_path(mu, P, ctx);
            BoundaryPath bp;
            bp.path = P;
            bp.anchored = boundary_strip(nu, P);
            bp.height = removable_height(nu, P, ctx);
            out.push_back(bp);
        }
    }
    return out;
}

namespace {
std::vector<BoundaryPath> filter_height(std::vector<BoundaryPath> v, int h, int sign) {
    std::vector<BoundaryPath> out;
    for (auto& bp : v) {
        if (sign > 0 ? bp.height > h : bp.height == h) out.push_back(bp);
    }
    return out;
}
} // namespace

std::vector<BoundaryPath> removable_paths_positive(const Partition& mu, const Context& ctx) {
    return filter_height(removable_paths(mu, ctx), 0, +1);
}
std::vector<BoundaryPath> removable_paths_height0(const Partition& mu, const Context& ctx) {
    return filter_height(removable_paths(mu, ctx), 0, 0);
}
std::vector<BoundaryPath> addable_paths_height1(const Partition& mu, const Context& ctx) {
    return filter_height(addable_paths(mu, ctx), 1, 0);
}

std::optional<DyckPath> merge_paths(const Partition& mu, const DyckPath& P,
                                    const DyckPath& Q, const Context& ctx) {
    if (relate(P, Q).primary != Rel::Adjacent)
        throw std::invalid_argument("merge requires adjacent paths");
    std::optional<DyckPath> best;
    for (const BoundaryPath& bp : removable_paths(mu, ctx)) {
        if (!bp.path.contains(P) || !bp.path.contains(Q)) continue;
        if (!best || bp.path.breadth() < best->breadth()) best = bp.path;
    }
    return best;
}

std::pair<DyckPath, DyckPath> split_path(const DyckPath& Q, const DyckPath& P) {
    if (relate(P, Q).primary != Rel::Covered)
        throw std::invalid_argument("split requires P strictly covered by Q");
    return {DyckPath{Q.f, P.f - 1}, DyckPath{P.l + 1, Q.l}};
}

std::optional<DyckPath> rt_path(const Partition& lambda, const DyckPath& P,
                                const Context& ctx) {
    if (!is_removable(lambda, P, ctx) || removable_height(lambda, P, ctx) != 0)
        throw std::invalid_argument("rt requires a height-0 removable path");
    std::optional<DyckPath> best;
    for (const BoundaryPath& bp : addable_paths_height1(lambda, ctx)) {
        if (bp.path.f <= P.l) continue;
        if (!best || bp.path.breadth() > best->breadth()) best = bp.path;
    }
    return best;
}

} // namespace arcalg
