#include "arcalg/regularise.hpp"

#include <algorithm>
#include <stdexcept>

#include "arcalg/tiling.hpp"

namespace arcalg {

Regularisation regularise(const Partition& alpha, const Context& ctx) {
    if (!alpha.in_box(ctx)) throw std::invalid_argument("partition outside the box");
    Regularisation out;
    Partition cur = alpha;
    const int d = alpha.defect(ctx);
    for (int k = d + 1; k <= 0; ++k) {
        // The maximal-breadth addable path of height k: its end tiles are the
        // outermost missing cells of height k, and it bridges over any filled
        // stretches in between, so it is strictly broader than every other
        // addable path of the same height.
        const std::vector<BoundaryPath> cands = addable_paths(cur, ctx);
        const BoundaryPath* best = nullptr;
        bool tie = false;
        for (const BoundaryPath& bp : cands) {
            if (bp.height != k) continue;
            if (!best || bp.path.breadth() > best->path.breadth()) {
                best = &bp;
                tie = false;
            } else if (bp.path.breadth() == best->path.breadth()) {
                tie = true;
            }
        }
        if (!best) throw std::logic_error("no addable path at a required height");
        if (tie) throw std::logic_error("ambiguous maximal addable path");
        out.paths.push_back(best->path);
        cur = add_path(cur, best->path, ctx);
    }
    if (!cur.is_regular(ctx)) throw std::logic_error("regularisation missed a regular partition");
    out.reg = cur;
    return out;
}

AddSplitPlan canonical_add_split(const Partition& alpha, const Partition& mu,
                                 const Context& ctx) {
    const std::optional<DyckTiling> tiling = dyck_tiling(alpha, mu, ctx);
    if (!tiling) throw std::invalid_argument("not a Dyck pair");

    const int d = alpha.defect(ctx);
    int max_height = 0;
    for (const TiledPath& tp : tiling->paths) {
        if (tp.height <= d) throw std::logic_error("tile at or below the base defect");
        max_height = std::max(max_height, tp.height);
    }

    AddSplitPlan plan;
    Regularisation reg = regularise(alpha, ctx);
    for (std::size_t i = 0; i < reg.paths.size(); ++i)
        plan.adds_neg.push_back({d + 1 + static_cast<int>(i), {reg.paths[i]}});
    plan.reg = reg.reg;

    // Phase 2.  Content-wise, each regularisation path P^k is the disjoint
    // union of the height-k tiles of the pair and the complement intervals
    // the splits must remove.  A complement interval need not be a single
    // path (the strip it carves off P^k can change diagonal height mid-run),
    // so the intervals only bound the removals; the actual paths are found
    // by walking down from the regularisation.
    std::vector<std::vector<DyckPath>> stage_runs;
    for (int k = d + 1; k <= 0; ++k) {
        const DyckPath P = reg.paths[static_cast<std::size_t>(k - d - 1)];
        std::vector<DyckPath> runs;
        int next = P.f;
        for (const DyckPath& q : tiling->at_height(k)) {
            if (q.f < next || q.l > P.l)
                throw std::logic_error("tile escapes its regularisation path");
            if (q.f > next) runs.push_back({next, q.f - 1});
            next = q.l + 1;
        }
        if (next <= P.l) runs.push_back({next, P.l});
        stage_runs.push_back(runs);
    }

    // The split base is the base plus the cells of the non-positive tiles,
    // read off the canonical placements of the pair's tiling.
    const std::vector<TableauStep> steps = canonical_tableau(alpha, mu, ctx);
    const std::vector<AnchoredPath> placed = tiling_placements(alpha, mu, ctx);
    std::vector<Cell> low_cells;
    for (std::size_t i = 0; i < steps.size(); ++i)
        if (steps[i].height <= 0)
            low_cells.insert(low_cells.end(), placed[i].tiles.begin(), placed[i].tiles.end());
    const Partition target = alpha.add_cells(low_cells);

    // Walk from the regularisation down to the split base by repeatedly
    // removing the outermost removable path whose boundary strip stays clear
    // of the target's cells (leftmost when several outermost paths are
    // disjoint).  Complement paths of different heights can nest strictly in
    // either direction, and an outer path only becomes removable while the
    // inner one is still present, so the order is geometric, not by height.
    Partition cur = reg.reg;
    while (cur != target) {
        const std::vector<BoundaryPath> cands = removable_paths(cur, ctx);
        std::vector<const BoundaryPath*> valid;
        for (const BoundaryPath& bp : cands) {
            bool clear = true;
            for (const Cell& c : bp.anchored.tiles)
                if (target.contains_cell(c)) {
                    clear = false;
                    break;
                }
            if (clear) valid.push_back(&bp);
        }
        const BoundaryPath* pick = nullptr;
        for (const BoundaryPath* v : valid) {
            bool outermost = true;
            for (const BoundaryPath* w : valid)
                if (w != v && w->path.contains(v->path)) {
                    outermost = false;
                    break;
                }
            if (outermost && (!pick || v->path.f < pick->path.f)) pick = v;
        }
        if (!pick) throw std::logic_error("split walk is stuck above the split base");
        plan.split_removals.push_back(pick->path);
        cur = remove_path(cur, pick->path, ctx);
    }
    plan.split_base = cur;

    // File each removed path under the lowest height whose complement
    // intervals can still absorb it, consuming each interval content once.
    std::vector<std::vector<DyckPath>> filed(stage_runs.size());
    std::vector<std::vector<std::vector<bool>>> consumed(stage_runs.size());
    for (std::size_t s = 0; s < stage_runs.size(); ++s)
        for (const DyckPath& r : stage_runs[s])
            consumed[s].emplace_back(static_cast<std::size_t>(r.l - r.f + 1), false);
    for (const DyckPath& p : plan.split_removals) {
        bool placed_p = false;
        for (std::size_t s = 0; s < stage_runs.size() && !placed_p; ++s) {
            for (std::size_t j = 0; j < stage_runs[s].size(); ++j) {
                const DyckPath& r = stage_runs[s][j];
                if (!r.contains(p)) continue;
                bool free = true;
                for (int t = p.f; t <= p.l; ++t)
                    if (consumed[s][j][static_cast<std::size_t>(t - r.f)]) {
                        free = false;
                        break;
                    }
                if (!free) continue;
                for (int t = p.f; t <= p.l; ++t)
                    consumed[s][j][static_cast<std::size_t>(t - r.f)] = true;
                filed[s].push_back(p);
                placed_p = true;
                break;
            }
        }
        if (!placed_p) throw std::logic_error("split removal outside every complement");
    }
    for (std::size_t s = 0; s < filed.size(); ++s) {
        std::sort(filed[s].begin(), filed[s].end());
        plan.splits.push_back({d + 1 + static_cast<int>(s), filed[s]});
    }

    // Phase 3: add the positive-height tiles, lowest height first.
    for (int k = 1; k <= max_height; ++k) {
        const std::vector<DyckPath> tiles = tiling->at_height(k);
        for (const DyckPath& q : tiles) cur = add_path(cur, q, ctx);
        plan.adds_pos.push_back({k, tiles});
    }
    if (cur != mu) throw std::logic_error("add/split plan missed the target");
    return plan;
}

int regularize_pair_degree(const Partition& alpha, const Partition& mu,
                           const Context& ctx) {
    if (!mu.is_regular(ctx)) throw std::invalid_argument("top partition must be regular");
    const std::optional<DyckTiling> tiling = dyck_tiling(alpha, mu, ctx);
    if (!tiling) throw std::invalid_argument("not a Dyck pair");
    for (const TiledPath& tp : tiling->paths)
        if (tp.height > 0) throw std::invalid_argument("pair has a tile of positive height");

    const Regularisation reg = regularise(alpha, ctx);
    const std::optional<DyckTiling> lifted = dyck_tiling(mu, reg.reg, ctx);
    if (!lifted) throw std::logic_error("regularised base does not pair with the top");
    const int expected = tiling->degree() + alpha.defect(ctx);
    if (lifted->degree() != expected)
        throw std::logic_error("regularised pair degree mismatch");
    return expected;
}

} // namespace arcalg
