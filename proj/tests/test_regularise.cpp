#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "arcalg/regularise.hpp"
#include "arcalg/tiling.hpp"
#include "oracles.hpp"

using namespace arcalg;

namespace {
Partition P(std::initializer_list<int> parts) { return Partition(std::vector<int>(parts)); }

const std::vector<Context> kSmallContexts = {
    Context(1, 1), Context(1, 2), Context(1, 3), Context(1, 4),
    Context(2, 2), Context(2, 3), Context(2, 4), Context(3, 3),
};

// The running example in the 8 x 9 box: an irregular base of defect -3 and a
// target reached by one split at height -1, two splits at height 0, and one
// height-1 addition.
const Context kBox89(8, 9);
const Partition kAlpha(std::vector<int>{8, 6, 6, 2, 2, 1, 1});
const Partition kAlphaReg(std::vector<int>{8, 7, 7, 7, 5, 5, 4, 2});
const Partition kMu(std::vector<int>{8, 8, 8, 7, 6, 6, 6, 4, 2});
const Partition kSplitBase(std::vector<int>{8, 7, 6, 5, 5, 5, 3, 1});

// Re-run a plan step by step, checking that every intermediate partition is a
// valid shape inside the box, and return the endpoint.
Partition execute_plan(const Partition& alpha, const AddSplitPlan& plan, const Context& ctx) {
    Partition cur = alpha;
    for (const HeightPaths& hp : plan.adds_neg)
        for (const DyckPath& p : hp.paths) {
            cur = add_path(cur, p, ctx);
            REQUIRE(cur.in_box(ctx));
        }
    REQUIRE(cur == plan.reg);
    for (const DyckPath& p : plan.split_removals) {
        cur = remove_path(cur, p, ctx);
        REQUIRE(cur.in_box(ctx));
    }
    REQUIRE(cur == plan.split_base);
    for (const HeightPaths& hp : plan.adds_pos)
        for (const DyckPath& p : hp.paths) {
            cur = add_path(cur, p, ctx);
            REQUIRE(cur.in_box(ctx));
        }
    return cur;
}
} // namespace

TEST_CASE("empty partition regularises to the full square") {
    for (const Context& ctx : {Context(1, 1), Context(1, 3), Context(2, 2), Context(2, 3),
                               Context(3, 3), Context(3, 4)}) {
        CAPTURE(ctx.m);
        CAPTURE(ctx.n);
        Regularisation reg = regularise(Partition{}, ctx);
        // The result is the m x m square, reached through one path per height
        // k = -m+1..0, each spanning contents [-(m-1)-k, (m-1)+k].
        CHECK(reg.reg == Partition(std::vector<int>(ctx.m, ctx.m)));
        REQUIRE(static_cast<int>(reg.paths.size()) == ctx.m);
        for (int i = 0; i < ctx.m; ++i) {
            int k = -ctx.m + 1 + i;
            CHECK(reg.paths[static_cast<std::size_t>(i)] ==
                  DyckPath{-(ctx.m - 1) - k, (ctx.m - 1) + k});
        }
    }
}

TEST_CASE("regular partitions are fixed points") {
    for (const Context& ctx : kSmallContexts) {
        for (const Partition& lam : regular_partitions(ctx)) {
            Regularisation reg = regularise(lam, ctx);
            CHECK(reg.reg == lam);
            CHECK(reg.paths.empty());
        }
        // Idempotence across the whole box.
        for (const Partition& lam : box_partitions(ctx)) {
            Regularisation reg = regularise(lam, ctx);
            Regularisation again = regularise(reg.reg, ctx);
            CHECK(again.reg == reg.reg);
            CHECK(again.paths.empty());
        }
    }
    CHECK_THROWS_AS(regularise(P({3}), Context(2, 2)), std::invalid_argument);
}

TEST_CASE("worked example in the 8,9 box") {
    REQUIRE(kAlpha.defect(kBox89) == -3);
    Regularisation reg = regularise(kAlpha, kBox89);
    CHECK(reg.reg == kAlphaReg);
    REQUIRE(reg.paths == std::vector<DyckPath>{{1, 1}, {0, 4}, {-5, 7}});

    // The chain raises the defect one height band at a time.
    Partition cur = kAlpha;
    std::vector<Partition> expected = {P({8, 6, 6, 3, 2, 1, 1}), P({8, 6, 6, 4, 4, 3, 1}),
                                       kAlphaReg};
    for (int i = 0; i < 3; ++i) {
        cur = add_path(cur, reg.paths[static_cast<std::size_t>(i)], kBox89);
        CHECK(cur == expected[static_cast<std::size_t>(i)]);
        CHECK(cur.defect(kBox89) == -2 + i);
    }

    // The regularised pair is tiled by exactly the chain's paths, one per
    // height from the defect band up to zero.
    std::optional<DyckTiling> tiling = dyck_tiling(kAlpha, kAlphaReg, kBox89);
    REQUIRE(tiling.has_value());
    CHECK(tiling->degree() == 3);
    CHECK(tiling->height_of({1, 1}) == -2);
    CHECK(tiling->height_of({0, 4}) == -1);
    CHECK(tiling->height_of({-5, 7}) == 0);
}

TEST_CASE("canonical add/split plan for the worked pair") {
    // Tile heights of the pair, fixed by hand from the labelled diagram of
    // the target: the support walk gives one positive tile and six others.
    std::optional<DyckTiling> tiling = dyck_tiling(kAlpha, kMu, kBox89);
    REQUIRE(tiling.has_value());
    REQUIRE(tiling->degree() == 7);
    CHECK(tiling->height_of({-6, 8}) == 1);
    CHECK(tiling->height_of({-5, -5}) == 0);
    CHECK(tiling->height_of({-1, 5}) == 0);
    CHECK(tiling->height_of({7, 7}) == 0);
    CHECK(tiling->height_of({0, 2}) == -1);
    CHECK(tiling->height_of({4, 4}) == -1);
    CHECK(tiling->height_of({1, 1}) == -2);

    AddSplitPlan plan = canonical_add_split(kAlpha, kMu, kBox89);
    CHECK(plan.adds_neg == std::vector<HeightPaths>{
                               {-2, {{1, 1}}}, {-1, {{0, 4}}}, {0, {{-5, 7}}}});
    CHECK(plan.reg == kAlphaReg);
    // No split at height -2 (the tile is the whole path); one complement run
    // at height -1; two at height 0.
    CHECK(plan.splits == std::vector<HeightPaths>{
                             {-2, {}}, {-1, {{3, 3}}}, {0, {{-4, -2}, {6, 6}}}});
    // Here all three complements are distant from one another, so the walk
    // just takes them left to right.
    CHECK(plan.split_removals == std::vector<DyckPath>{{-4, -2}, {3, 3}, {6, 6}});
    CHECK(plan.split_base == kSplitBase);
    CHECK(plan.adds_pos == std::vector<HeightPaths>{{1, {{-6, 8}}}});
    CHECK(execute_plan(kAlpha, plan, kBox89) == kMu);
}

TEST_CASE("plans with a regular base or an interior tile") {
    // Defect -1 base whose single tile spans the whole regularisation path:
    // the split phase removes nothing.
    AddSplitPlan plan = canonical_add_split(P({1}), P({2, 2}), Context(2, 2));
    CHECK(plan.adds_neg == std::vector<HeightPaths>{{0, {{-1, 1}}}});
    CHECK(plan.reg == P({2, 2}));
    CHECK(plan.splits == std::vector<HeightPaths>{{0, {}}});
    CHECK(plan.split_base == P({2, 2}));
    CHECK(plan.adds_pos.empty());

    // Two height-0 tiles inside one regularisation path leave one middle run.
    plan = canonical_add_split(P({1}), P({2, 1}), Context(2, 2));
    CHECK(plan.adds_neg == std::vector<HeightPaths>{{0, {{-1, 1}}}});
    CHECK(plan.splits == std::vector<HeightPaths>{{0, {{0, 0}}}});
    CHECK(plan.split_removals == std::vector<DyckPath>{{0, 0}});
    CHECK(plan.split_base == P({2, 1}));
    CHECK(plan.adds_pos.empty());

    // A tile at the end of the regularisation path leaves a complement whose
    // strip changes diagonal height mid-run, so it comes off as two adjacent
    // single-cell paths rather than one: the walk peels the square's
    // bottom-right corner first, then the cell to its left.
    plan = canonical_add_split(P({1}), P({2}), Context(2, 2));
    CHECK(plan.adds_neg == std::vector<HeightPaths>{{0, {{-1, 1}}}});
    CHECK(plan.reg == P({2, 2}));
    CHECK(plan.splits == std::vector<HeightPaths>{{0, {{0, 0}, {1, 1}}}});
    CHECK(plan.split_removals == std::vector<DyckPath>{{0, 0}, {1, 1}});
    CHECK(plan.split_base == P({2}));
    CHECK(plan.adds_pos.empty());

    // Regular base with a single tile of height two: only the add phase acts,
    // and the height-1 slot stays empty.
    plan = canonical_add_split(P({3, 3, 2}), P({3, 3, 3}), Context(3, 4));
    CHECK(plan.adds_neg.empty());
    CHECK(plan.reg == P({3, 3, 2}));
    CHECK(plan.splits.empty());
    CHECK(plan.split_base == P({3, 3, 2}));
    CHECK(plan.adds_pos == std::vector<HeightPaths>{{1, {}}, {2, {{0, 0}}}});

    CHECK_THROWS_AS(canonical_add_split(P({2}), P({2, 2}), Context(2, 2)),
                    std::invalid_argument);
}

TEST_CASE("agrees with the diagonal-filling construction") {
    std::vector<Context> contexts = kSmallContexts;
    contexts.push_back(Context(3, 4));
    contexts.push_back(Context(2, 5));
    contexts.push_back(Context(4, 4));
    for (const Context& ctx : contexts) {
        for (const Partition& lam : box_partitions(ctx)) {
            CAPTURE(ctx.m);
            CAPTURE(ctx.n);
            CAPTURE(lam.to_string());
            Regularisation reg = regularise(lam, ctx);
            auto filled = oracles::regularise_filling(lam, ctx);
            REQUIRE(filled.has_value());
            CHECK(reg.reg == filled->first);
            REQUIRE(reg.paths.size() == filled->second.size());
            for (std::size_t i = 0; i < reg.paths.size(); ++i)
                CHECK(reg.paths[i] == filled->second[i].path);

            CHECK(reg.reg.is_regular(ctx));
            CHECK(reg.reg.contains(lam));
            int d = lam.defect(ctx);
            CHECK(static_cast<int>(reg.paths.size()) == -d);
            int cells = 0;
            for (const DyckPath& p : reg.paths) cells += p.cell_count();
            CHECK(reg.reg.size() == lam.size() + cells);

            // The pair (lam, reg) is tiled by exactly the chain paths, the
            // height-k path at height k.
            std::optional<DyckTiling> tiling = dyck_tiling(lam, reg.reg, ctx);
            REQUIRE(tiling.has_value());
            CHECK(tiling->degree() == -d);
            for (std::size_t i = 0; i < reg.paths.size(); ++i)
                CHECK(tiling->height_of(reg.paths[i]) == d + 1 + static_cast<int>(i));
        }
    }
}

TEST_CASE("plans traverse the box and split off tile complements") {
    for (const Context& ctx : kSmallContexts) {
        for (const Partition& lam : box_partitions(ctx)) {
            int d = lam.defect(ctx);
            Regularisation reg = regularise(lam, ctx);
            for (const Partition& mu : box_partitions(ctx)) {
                std::optional<DyckTiling> tiling = dyck_tiling(lam, mu, ctx);
                if (!tiling) continue;
                CAPTURE(ctx.m);
                CAPTURE(ctx.n);
                CAPTURE(lam.to_string());
                CAPTURE(mu.to_string());
                AddSplitPlan plan = canonical_add_split(lam, mu, ctx);
                CHECK(execute_plan(lam, plan, ctx) == mu);

                // Phase 1 is the regularisation chain.
                REQUIRE(plan.adds_neg.size() == reg.paths.size());
                for (std::size_t i = 0; i < reg.paths.size(); ++i) {
                    CHECK(plan.adds_neg[i].height == d + 1 + static_cast<int>(i));
                    CHECK(plan.adds_neg[i].paths == std::vector<DyckPath>{reg.paths[i]});
                }
                CHECK(plan.reg == reg.reg);

                // Phase 2 heights run d+1..0; each height-k tile is a
                // sub-interval of P^k, and content-wise the recorded
                // complement paths fill P^k minus the tiles exactly, listed
                // disjoint left to right.
                REQUIRE(plan.splits.size() == static_cast<std::size_t>(-d));
                for (std::size_t i = 0; i < plan.splits.size(); ++i) {
                    int k = d + 1 + static_cast<int>(i);
                    CHECK(plan.splits[i].height == k);
                    const DyckPath& pk = reg.paths[i];
                    int covered = 0;
                    for (const DyckPath& tile : tiling->at_height(k)) {
                        CHECK(pk.contains(tile));
                        covered += tile.cell_count();
                    }
                    for (const DyckPath& run : plan.splits[i].paths) {
                        CHECK(pk.contains(run));
                        covered += run.cell_count();
                    }
                    CHECK(covered == pk.cell_count());
                    const auto& runs = plan.splits[i].paths;
                    for (std::size_t a = 0; a + 1 < runs.size(); ++a)
                        CHECK(runs[a].l < runs[a + 1].f);
                }

                // Complement paths at different heights never partially
                // overlap: they are distant, adjacent, nested, or (when the
                // same interval is carved from two regularisation paths,
                // once per height) equal.
                for (std::size_t i = 0; i < plan.splits.size(); ++i)
                    for (std::size_t j = i + 1; j < plan.splits.size(); ++j)
                        for (const DyckPath& low : plan.splits[i].paths)
                            for (const DyckPath& high : plan.splits[j].paths) {
                                Rel r = relate(low, high).primary;
                                CAPTURE(low.to_string());
                                CAPTURE(high.to_string());
                                CHECK(r != Rel::Overlapping);
                            }

                // The removal sequence is the recorded families re-ordered:
                // same multiset of paths, each removable in turn (checked by
                // execute_plan above).
                std::vector<DyckPath> seq = plan.split_removals;
                std::vector<DyckPath> recorded;
                for (const HeightPaths& hp : plan.splits)
                    recorded.insert(recorded.end(), hp.paths.begin(), hp.paths.end());
                std::sort(seq.begin(), seq.end());
                std::sort(recorded.begin(), recorded.end());
                CHECK(seq == recorded);

                // The split base is the base plus the cells of the tiles of
                // non-positive height, read off the canonical placements.
                std::vector<TableauStep> steps = canonical_tableau(lam, mu, ctx);
                std::vector<AnchoredPath> placed = tiling_placements(lam, mu, ctx);
                REQUIRE(steps.size() == placed.size());
                std::vector<Cell> low_cells;
                for (std::size_t i = 0; i < steps.size(); ++i)
                    if (steps[i].height <= 0)
                        low_cells.insert(low_cells.end(), placed[i].tiles.begin(),
                                         placed[i].tiles.end());
                CHECK(lam.add_cells(low_cells) == plan.split_base);

                // Phase 3 lists exactly the positive-height tiles.
                int max_height = 0;
                for (const TiledPath& tp : tiling->paths) {
                    CHECK(tp.height > d);
                    max_height = std::max(max_height, tp.height);
                }
                CHECK(plan.adds_pos.size() == static_cast<std::size_t>(std::max(0, max_height)));
                for (std::size_t i = 0; i < plan.adds_pos.size(); ++i) {
                    int k = 1 + static_cast<int>(i);
                    CHECK(plan.adds_pos[i].height == k);
                    CHECK(plan.adds_pos[i].paths == tiling->at_height(k));
                }
            }
        }
    }
}

TEST_CASE("pair degree after regularising the base") {
    // The empty partition pairs with the full square using every height band;
    // regularising the base absorbs the whole degree.
    for (int m : {1, 2, 3}) {
        Context ctx(m, m);
        CHECK(regularize_pair_degree(Partition{}, Partition(std::vector<int>(m, m)), ctx) == 0);
    }
    CHECK(regularize_pair_degree(Partition{}, P({2, 2}), Context(2, 3)) == 0);

    // Worked pair: six non-positive tiles over a defect -3 base.
    CHECK(regularize_pair_degree(kAlpha, kSplitBase, kBox89) == 3);

    // Exhaustive identity: for every Dyck pair with regular top and no
    // positive tile, the top pairs with the regularised base and the degree
    // drops by the defect.
    for (const Context& ctx : kSmallContexts) {
        if (ctx.m + ctx.n > 6) continue;
        for (const Partition& lam : box_partitions(ctx)) {
            Regularisation reg = regularise(lam, ctx);
            for (const Partition& mu : box_partitions(ctx)) {
                if (!mu.is_regular(ctx)) continue;
                std::optional<DyckTiling> tiling = dyck_tiling(lam, mu, ctx);
                if (!tiling) continue;
                bool positive = false;
                for (const TiledPath& tp : tiling->paths) positive |= tp.height > 0;
                if (positive) continue;
                CAPTURE(ctx.m);
                CAPTURE(ctx.n);
                CAPTURE(lam.to_string());
                CAPTURE(mu.to_string());
                int got = regularize_pair_degree(lam, mu, ctx);
                CHECK(got == tiling->degree() + lam.defect(ctx));
                std::optional<DyckTiling> lifted = dyck_tiling(mu, reg.reg, ctx);
                REQUIRE(lifted.has_value());
                CHECK(lifted->degree() == got);
            }
        }
    }

    // Preconditions: regular top, no positive tiles, genuine pair.
    CHECK_THROWS_AS(regularize_pair_degree(Partition{}, P({1}), Context(2, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(regularize_pair_degree(P({2, 1}), P({2, 2}), Context(2, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(regularize_pair_degree(P({2}), P({2, 2}), Context(2, 2)),
                    std::invalid_argument);
}
