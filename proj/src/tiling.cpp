#include "arcalg/tiling.hpp"

#include <algorithm>
#include <stdexcept>

#include "arcalg/cup_diagram.hpp"
#include "arcalg/weight.hpp"

namespace arcalg {

std::vector<DyckPath> DyckTiling::at_height(int k) const {
    std::vector<DyckPath> out;
    for (const TiledPath& tp : paths)
        if (tp.height == k) out.push_back(tp.path);
    return out;
}

std::optional<int> DyckTiling::height_of(const DyckPath& P) const {
    for (const TiledPath& tp : paths)
        if (tp.path == P) return tp.height;
    return std::nullopt;
}

bool is_dyck_pair(const Partition& lam, const Partition& mu, const Context& ctx) {
    return is_oriented(mu, lam, ctx);
}

namespace {
// One crossing along the downward walk from a clockwise arc.
struct Crossing {
    bool clockwise = false;          // crossed arc is a clockwise cup
    std::optional<DyckPath> path;    // set for cups (either orientation)
};

// The arcs crossed by the ray dropped from cup (p, q), innermost first.
std::vector<Crossing> crossings_below(const Partition& lam, const Partition& mu,
                                      int p, int q, const Context& ctx) {
    CupDiagram d = cup_diagram(mu, ctx);
    Weight lab = weight_of(lam, ctx);
    std::vector<Crossing> out;
    std::vector<Arc> enclosing;
    for (const Arc& cup : d.cups)
        if (cup.p < p && q < cup.q) enclosing.push_back(cup);
    std::sort(enclosing.begin(), enclosing.end(),
              [](const Arc& a, const Arc& b) { return a.p > b.p; });
    for (const Arc& cup : enclosing) {
        Crossing cr;
        cr.clockwise = (lab[cup.p - 1] == kUp);
        cr.path = path_of_arc(cup, ctx);
        out.push_back(cr);
    }
    // Rays cross outside every enclosing cup; only one family can cross.
    std::vector<int> se, sw;
    for (int v : d.se_rays)
        if (v < p) se.push_back(v);
    for (int v : d.sw_rays)
        if (v > q) sw.push_back(v);
    std::sort(se.rbegin(), se.rend());
    std::sort(sw.begin(), sw.end());
    if (!se.empty() && !sw.empty())
        throw std::logic_error("south-east and south-west rays cannot both cross");
    for (size_t i = 0; i < se.size() + sw.size(); ++i) out.push_back(Crossing{});
    return out;
}
} // namespace

std::vector<DyckPath> support_set(const Partition& lam, const Partition& mu,
                                  const DyckPath& P, const Context& ctx) {
    if (!is_dyck_pair(lam, mu, ctx))
        throw std::invalid_argument("support requires a Dyck pair");
    int p = left_point(P, ctx);
    int q = right_point(P, ctx);
    Weight lab = weight_of(lam, ctx);
    if (!is_removable(mu, P, ctx) || lab[p - 1] != kUp)
        throw std::invalid_argument("support requires a clockwise arc of the pair");
    std::vector<DyckPath> supp = {P};
    int cw = 1, other = 0;
    for (const Crossing& cr : crossings_below(lam, mu, p, q, ctx)) {
        if (cr.clockwise) {
            supp.push_back(*cr.path);
            ++cw;
        } else {
            ++other;
            if (other == cw) break;
        }
    }
    std::sort(supp.begin(), supp.end());
    return supp;
}

namespace {
int tiling_height_memo(const Partition& lam, const Partition& mu, const DyckPath& P,
                       const Context& ctx, std::map<DyckPath, int>& memo) {
    auto it = memo.find(P);
    if (it != memo.end()) return it->second;
    int h = removable_height(mu, P, ctx);
    for (const DyckPath& Q : support_set(lam, mu, P, ctx)) {
        if (Q == P) continue;
        h = std::min(h, tiling_height_memo(lam, mu, Q, ctx, memo) - 1);
    }
    memo[P] = h;
    return h;
}
} // namespace

int tiling_height(const Partition& lam, const Partition& mu, const DyckPath& P,
                  const Context& ctx) {
    std::map<DyckPath, int> memo;
    return tiling_height_memo(lam, mu, P, ctx, memo);
}

std::optional<DyckTiling> dyck_tiling(const Partition& lam, const Partition& mu,
                                      const Context& ctx) {
    if (!is_dyck_pair(lam, mu, ctx)) return std::nullopt;
    DyckTiling t;
    t.base = lam;
    t.top = mu;
    std::map<DyckPath, int> memo;
    for (const Arc& cup : clockwise_arcs(mu, lam, ctx)) {
        DyckPath P = path_of_arc(cup, ctx);
        t.paths.push_back({P, tiling_height_memo(lam, mu, P, ctx, memo)});
    }
    std::sort(t.paths.begin(), t.paths.end());
    return t;
}

const char* move_name(MoveKind k) {
    switch (k) {
        case MoveKind::G1: return "G1";
        case MoveKind::G2: return "G2";
        case MoveKind::G3: return "G3";
    }
    return "?";
}

std::vector<TableauStep> canonical_tableau(const Partition& lam, const Partition& mu,
                                           const Context& ctx) {
    auto tiling = dyck_tiling(lam, mu, ctx);
    if (!tiling) throw std::invalid_argument("canonical tableau requires a Dyck pair");
    std::vector<TiledPath> order = tiling->paths;
    std::sort(order.begin(), order.end(), [](const TiledPath& a, const TiledPath& b) {
        if (a.height != b.height) return a.height < b.height;
        return a.path.f < b.path.f;
    });
    for (size_t i = 0; i + 1 < order.size(); ++i)
        if (order[i].height == order[i + 1].height &&
            order[i].path.l >= order[i + 1].path.f)
            throw std::logic_error("equal-height tiles must be left-to-right disjoint");

    std::vector<BoundaryPath> baseRem = removable_paths(lam, ctx);
    std::vector<TableauStep> steps;
    Partition cur = mu;
    for (size_t i = order.size(); i-- > 0;) {
        const TiledPath& tp = order[i];
        TableauStep st;
        st.before = cur;
        st.path = tp.path;
        st.height = tp.height;
        st.after = remove_path(cur, tp.path, ctx);
        int dBefore = st.before.defect(ctx);
        int dAfter = st.after.defect(ctx);
        if (dAfter == dBefore - 1) {
            st.kind = MoveKind::G1;
        } else if (dAfter == dBefore) {
            bool covered = false;
            for (const BoundaryPath& bp : baseRem)
                if (relate(tp.path, bp.path).primary == Rel::Covered) covered = true;
            st.kind = covered ? MoveKind::G3 : MoveKind::G2;
        } else {
            throw std::logic_error("a removal changed the defect by more than one");
        }
        steps.push_back(st);
        cur = st.after;
    }
    if (cur != lam) throw std::logic_error("canonical removal did not reach the base");
    return steps;
}

std::vector<AnchoredPath> tiling_placements(const Partition& lam, const Partition& mu,
                                            const Context& ctx) {
    std::vector<AnchoredPath> out;
    for (const TableauStep& st : canonical_tableau(lam, mu, ctx)) {
        AnchoredPath a;
        a.path = st.path;
        for (const Cell& c : st.before.cells())
            if (!st.after.contains_cell(c)) a.tiles.push_back(c);
        std::sort(a.tiles.begin(), a.tiles.end(),
                  [](const Cell& x, const Cell& y) { return x.r - x.c < y.r - y.c; });
        out.push_back(a);
    }
    return out;
}

} // namespace arcalg
