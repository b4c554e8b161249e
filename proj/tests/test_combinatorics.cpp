#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arcalg/cup_diagram.hpp"
#include "arcalg/partition.hpp"
#include "arcalg/qpoly.hpp"
#include "arcalg/weight.hpp"

using namespace arcalg;

namespace {
Partition P(std::initializer_list<int> parts) { return Partition(std::vector<int>(parts)); }
} // namespace

TEST_CASE("partition basics") {
    Partition p({5, 4, 2, 2});
    CHECK(p.size() == 13);
    CHECK(p.part(1) == 5);
    CHECK(p.part(5) == 0);
    CHECK(p.conjugate() == P({4, 4, 2, 2, 1}));
    CHECK(p.conjugate().conjugate() == p);
    CHECK(p.contains(P({4, 4, 2})));
    CHECK_FALSE(p.contains(P({5, 5})));
    CHECK(Partition{}.to_string() == "-");
    CHECK(P({2, 1}).to_string() == "2,1");
    CHECK(Partition::parse("2,1") == P({2, 1}));
    CHECK(Partition::parse("-") == Partition{});
    CHECK_FALSE(Partition::parse("1,2").has_value());
    CHECK_FALSE(Partition::parse("").has_value());
    CHECK_FALSE(Partition::parse("0").has_value());
    CHECK_THROWS(Partition({1, 2}));
}

TEST_CASE("cell addition and removal") {
    Partition p({2, 1});
    CHECK(p.add_cell({1, 3}) == P({3, 1}));
    CHECK(p.add_cell({3, 1}) == P({2, 1, 1}));
    CHECK_THROWS(p.add_cell({3, 2}));
    CHECK(p.remove_cell({2, 1}) == P({2}));
    CHECK_THROWS(p.remove_cell({1, 1}));
    CHECK(P({1}).add_cells({{1, 2}, {2, 1}, {2, 2}}) == P({2, 2}));
    CHECK(P({2, 2}).remove_cells({{1, 2}, {2, 1}, {2, 2}}) == P({1}));
}

TEST_CASE("box membership and enumeration") {
    Context c22(2, 2);
    CHECK(box_partitions(c22).size() == 6);
    CHECK(box_partitions(Context(1, 1)).size() == 2);
    CHECK(box_partitions(Context(2, 3)).size() == 10);
    CHECK(box_partitions(Context(3, 3)).size() == 20);
    CHECK(P({2, 2}).in_box(c22));
    CHECK_FALSE(P({3}).in_box(c22));
    CHECK_FALSE(P({1, 1, 1}).in_box(c22));
}

TEST_CASE("defect and regularity") {
    Context c22(2, 2);
    CHECK(Partition{}.defect(c22) == -2);
    CHECK(P({1}).defect(c22) == -1);
    CHECK(P({2}).defect(c22) == -1);
    CHECK(P({1, 1}).defect(c22) == -1);
    CHECK(P({2, 1}).defect(c22) == 0);
    CHECK(P({2, 2}).defect(c22) == 0);
    std::vector<Partition> reg = regular_partitions(c22);
    CHECK(reg.size() == 2);

    Context c89(8, 9);
    CHECK(P({8, 6, 6, 2, 2, 1, 1}).defect(c89) == -3);
    Context c33(3, 3);
    CHECK(P({3, 2, 1}).defect(c33) == 0);
    CHECK(P({3, 3, 3}).defect(c33) == 0);
    CHECK(P({2, 2}).defect(c33) == -1);
}

TEST_CASE("weights") {
    Context c11(1, 1);
    CHECK(weight_string(weight_of(Partition{}, c11)) == "^v");
    CHECK(weight_string(weight_of(P({1}), c11)) == "v^");

    Context c22(2, 2);
    CHECK(weight_string(weight_of(Partition{}, c22)) == "^^vv");
    CHECK(weight_string(weight_of(P({1}), c22)) == "^v^v");
    CHECK(weight_string(weight_of(P({2}), c22)) == "v^^v");
    CHECK(weight_string(weight_of(P({1, 1}), c22)) == "^vv^");
    CHECK(weight_string(weight_of(P({2, 1}), c22)) == "v^v^");
    CHECK(weight_string(weight_of(P({2, 2}), c22)) == "vv^^");

    Context c56(5, 6);
    CHECK(weight_string(weight_of(P({5, 4, 2, 2}), c56)) == "v^v^^vv^^vv");

    // Round trip over a whole box.
    Context c34(3, 4);
    for (const Partition& lam : box_partitions(c34)) {
        auto back = partition_of_weight(weight_of(lam, c34), c34);
        REQUIRE(back.has_value());
        CHECK(*back == lam);
    }
    CHECK_FALSE(partition_of_weight(Weight{kUp, kUp}, c11).has_value());
}

TEST_CASE("cup diagrams via stack matching") {
    Context c22(2, 2);
    CupDiagram d21 = cup_diagram(P({2, 1}), c22);
    CHECK(d21.cups == std::vector<Arc>{{1, 2}, {3, 4}});
    CHECK(d21.sw_rays.empty());
    CHECK(d21.se_rays.empty());

    CupDiagram d22 = cup_diagram(P({2, 2}), c22);
    CHECK(d22.cups == std::vector<Arc>{{1, 4}, {2, 3}});

    CupDiagram dEmpty = cup_diagram(Partition{}, c22);
    CHECK(dEmpty.cups.empty());
    CHECK(dEmpty.sw_rays == std::vector<int>{1, 2});
    CHECK(dEmpty.se_rays == std::vector<int>{3, 4});

    CupDiagram d11 = cup_diagram(P({1, 1}), c22);
    CHECK(d11.cups == std::vector<Arc>{{3, 4}});
    CHECK(d11.sw_rays == std::vector<int>{1});
    CHECK(d11.se_rays == std::vector<int>{2});

    CupDiagram d5422 = cup_diagram(P({5, 4, 2, 2}), Context(5, 6));
    CHECK(d5422.cups == std::vector<Arc>{{1, 2}, {3, 4}, {6, 9}, {7, 8}});
    CHECK(d5422.sw_rays == std::vector<int>{5});
    CHECK(d5422.se_rays == std::vector<int>{10, 11});
}

TEST_CASE("cup diagram structural invariants") {
    // SW rays left of SE rays; no ray inside a cup; cups nest or are disjoint.
    for (Context ctx : {Context(2, 3), Context(3, 3), Context(2, 4)}) {
        for (const Partition& lam : box_partitions(ctx)) {
            CupDiagram d = cup_diagram(lam, ctx);
            for (int sw : d.sw_rays)
                for (int se : d.se_rays) CHECK(sw < se);
            auto inside = [&](int p) {
                for (const Arc& cup : d.cups)
                    if (cup.p < p && p < cup.q) return true;
                return false;
            };
            for (int p : d.sw_rays) CHECK_FALSE(inside(p));
            for (int p : d.se_rays) CHECK_FALSE(inside(p));
            for (const Arc& a : d.cups)
                for (const Arc& b : d.cups) {
                    if (a == b) continue;
                    bool disjoint = a.q < b.p || b.q < a.p;
                    bool nested = (a.p < b.p && b.q < a.q) || (b.p < a.p && a.q < b.q);
                    CHECK((disjoint || nested));
                }
        }
    }
}

TEST_CASE("orientations and degrees") {
    Context c22(2, 2);
    // Diagram weight on its own cups is anticlockwise everywhere: degree 0.
    for (const Partition& lam : box_partitions(c22)) {
        auto deg = oriented_degree(lam, lam, c22);
        REQUIRE(deg.has_value());
        CHECK(*deg == 0);
    }
    CHECK(oriented_degree(P({2, 1}), P({1}), c22) == 2);
    CHECK(oriented_degree(P({2, 2}), P({1}), c22) == 1);
    CHECK(oriented_degree(P({2, 2}), P({2, 1}), c22) == 1);
    CHECK(oriented_degree(P({2, 2}), Partition{}, c22) == 2);
    CHECK_FALSE(is_oriented(P({1, 1}), Partition{}, c22));
    CHECK_FALSE(is_oriented(Partition{}, P({1}), c22));
    CHECK(clockwise_arcs(P({2, 2}), P({2, 1}), c22) == std::vector<Arc>{{2, 3}});

    // In context (1,1): the only oriented pairs.
    Context c11(1, 1);
    CHECK(is_oriented(Partition{}, Partition{}, c11));
    CHECK(is_oriented(P({1}), P({1}), c11));
    CHECK(is_oriented(P({1}), Partition{}, c11));
    CHECK(oriented_degree(P({1}), Partition{}, c11) == 1);
    CHECK_FALSE(is_oriented(Partition{}, P({1}), c11));
}

TEST_CASE("q polynomials") {
    QPoly one(1);
    QPoly q = QPoly::monomial(1);
    QPoly p = one + q * q + QPoly::monomial(2);
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(2) == 2);
    CHECK(p.to_string() == "1 + 2q^2");
    CHECK((q * QPoly::monomial(-1)).to_string() == "1");
    CHECK(p.eval_at_one() == 3);
    CHECK(QPoly{}.to_string() == "0");
    CHECK((QPoly(2) + QPoly(-2)).is_zero());
    CHECK(QPoly::monomial(-1, 1).to_string() == "q^-1");
}
