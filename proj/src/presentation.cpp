#include "arcalg/presentation.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "arcalg/regularise.hpp"
#include "arcalg/tiling.hpp"

namespace arcalg {

namespace {

long long sign_pow(int k) {
    return (k % 2 == 0) ? 1 : -1;
}

PathWord word_of(std::vector<Arrow> arrows) {
    if (arrows.empty())
        throw std::invalid_argument("word_of: empty arrow list");
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
        if (arrows[i].target != arrows[i + 1].source)
            throw std::invalid_argument("word_of: arrows do not compose");
    PathWord w;
    w.source = arrows.front().source;
    w.arrows = std::move(arrows);
    return w;
}

Arrow up_arrow(const Partition& lower, const DyckPath& P, const Context& ctx) {
    return Arrow{lower, add_path(lower, P, ctx), ArrowKind::DUp, P};
}

Arrow down_arrow(const Partition& upper, const DyckPath& P, const Context& ctx) {
    return Arrow{upper, remove_path(upper, P, ctx), ArrowKind::DDown, P};
}

// Two removable paths of mu commute when each stays removable after the
// other is removed.
bool commuting_removals(const Partition& mu, const DyckPath& P, const DyckPath& Q,
                        const Context& ctx) {
    return is_removable(remove_path(mu, P, ctx), Q, ctx) &&
           is_removable(remove_path(mu, Q, ctx), P, ctx);
}

// A removable Q and an addable P of lambda commute when Q stays removable
// after adding P and P stays addable after removing Q.
bool commuting_mixed(const Partition& lambda, const DyckPath& Q, const DyckPath& P,
                     const Context& ctx) {
    return is_removable(add_path(lambda, P, ctx), Q, ctx) &&
           is_addable(remove_path(lambda, Q, ctx), P, ctx);
}

} // namespace

// ---------------------------------------------------------------------------
// Arrows, words, combinations.
// ---------------------------------------------------------------------------

std::string Arrow::to_string() const {
    if (kind == ArrowKind::Loop)
        return "L(" + source.to_string() + ")";
    const char* k = kind == ArrowKind::DUp ? "U" : "D";
    return std::string(k) + "(" + source.to_string() + "->" + target.to_string() + ";" +
           path.to_string() + ")";
}

bool Quiver::has_vertex(const Partition& v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

std::optional<Arrow> Quiver::d_arrow(const Partition& a, const Partition& b) const {
    for (const Arrow& ar : arrows)
        if (ar.kind != ArrowKind::Loop && ar.source == a && ar.target == b)
            return ar;
    return std::nullopt;
}

std::optional<Arrow> Quiver::loop_at(const Partition& v) const {
    for (const Arrow& ar : arrows)
        if (ar.kind == ArrowKind::Loop && ar.source == v)
            return ar;
    return std::nullopt;
}

Quiver build_quiver(const Context& ctx) {
    Quiver q;
    q.vertices = regular_partitions(ctx);
    std::set<Partition> vset(q.vertices.begin(), q.vertices.end());
    for (const Partition& mu : q.vertices) {
        for (const BoundaryPath& bp : removable_paths_positive(mu, ctx)) {
            Partition lam = remove_path(mu, bp.path, ctx);
            if (!vset.count(lam))
                throw std::logic_error("build_quiver: positive-height removal left the "
                                       "regular vertex set at " +
                                       mu.to_string());
            q.arrows.push_back(Arrow{lam, mu, ArrowKind::DUp, bp.path});
            q.arrows.push_back(Arrow{mu, lam, ArrowKind::DDown, bp.path});
        }
        if (ctx.m == ctx.n)
            q.arrows.push_back(Arrow{mu, mu, ArrowKind::Loop, loop_anchor(mu, ctx)});
    }
    std::sort(q.arrows.begin(), q.arrows.end());
    return q;
}

DyckPath loop_anchor(const Partition& lambda, const Context& ctx) {
    if (ctx.m != ctx.n)
        throw std::invalid_argument("loop_anchor: defined in the square case only");
    if (!lambda.is_regular(ctx))
        throw std::invalid_argument("loop_anchor: vertex must be regular");
    std::optional<DyckPath> found;
    for (const BoundaryPath& bp : removable_paths_height0(lambda, ctx)) {
        if (bp.path.l == ctx.m - 1) {
            if (found)
                throw std::logic_error("loop_anchor: anchor path is not unique at " +
                                       lambda.to_string());
            found = bp.path;
        }
    }
    if (!found)
        throw std::logic_error("loop_anchor: no height-0 removable path ends at content m-1 at " +
                               lambda.to_string());
    return *found;
}

PathWord PathWord::idempotent(Partition v) {
    PathWord w;
    w.source = std::move(v);
    return w;
}

const Partition& PathWord::target() const {
    return arrows.empty() ? source : arrows.back().target;
}

int PathWord::degree() const {
    int d = 0;
    for (const Arrow& a : arrows)
        d += a.degree();
    return d;
}

PathWord PathWord::then(const PathWord& next) const {
    if (target() != next.source)
        throw std::invalid_argument("PathWord::then: ends do not match");
    PathWord out = *this;
    out.arrows.insert(out.arrows.end(), next.arrows.begin(), next.arrows.end());
    return out;
}

std::string PathWord::to_string() const {
    if (arrows.empty())
        return "e(" + source.to_string() + ")";
    std::string s;
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        if (i)
            s += "*";
        s += arrows[i].to_string();
    }
    return s;
}

WordCombo WordCombo::zero() {
    return WordCombo{};
}

WordCombo WordCombo::single(PathWord w, long long coeff) {
    WordCombo c;
    c.add_term(w, coeff);
    return c;
}

void WordCombo::add_term(const PathWord& w, long long coeff) {
    if (coeff == 0)
        return;
    auto it = terms.find(w);
    if (it == terms.end()) {
        terms.emplace(w, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0)
        terms.erase(it);
}

WordCombo& WordCombo::operator+=(const WordCombo& o) {
    for (const auto& [w, c] : o.terms)
        add_term(w, c);
    return *this;
}

WordCombo& WordCombo::operator-=(const WordCombo& o) {
    for (const auto& [w, c] : o.terms)
        add_term(w, -c);
    return *this;
}

WordCombo& WordCombo::operator*=(long long c) {
    if (c == 0) {
        terms.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms)
        coeff *= c;
    return *this;
}

std::string WordCombo::to_string() const {
    if (terms.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : terms) {
        if (!first)
            s += " + ";
        first = false;
        s += std::to_string(c) + "*" + w.to_string();
    }
    return s;
}

WordCombo concat(const WordCombo& a, const WordCombo& b) {
    WordCombo out;
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms)
            if (wa.target() == wb.source)
                out.add_term(wa.then(wb), ca * cb);
    return out;
}

PathWord word_dual(const PathWord& w) {
    PathWord out;
    out.source = w.target();
    for (auto it = w.arrows.rbegin(); it != w.arrows.rend(); ++it) {
        Arrow a = *it;
        std::swap(a.source, a.target);
        if (a.kind == ArrowKind::DUp)
            a.kind = ArrowKind::DDown;
        else if (a.kind == ArrowKind::DDown)
            a.kind = ArrowKind::DUp;
        out.arrows.push_back(a);
    }
    return out;
}

WordCombo word_dual(const WordCombo& c) {
    WordCombo out;
    for (const auto& [w, coeff] : c.terms)
        out.add_term(word_dual(w), coeff);
    return out;
}

// ---------------------------------------------------------------------------
// Loop combinations.
// ---------------------------------------------------------------------------

WordCombo loop_combo(const Partition& lambda, const DyckPath& P, const Context& ctx) {
    if (!lambda.is_regular(ctx))
        throw std::invalid_argument("loop_combo: vertex must be regular");
    if (!is_removable(lambda, P, ctx))
        throw std::invalid_argument("loop_combo: path is not removable");
    int h = removable_height(lambda, P, ctx);
    if (h < 0)
        throw std::logic_error("loop_combo: negative removable height at a regular vertex");
    if (h > 0) {
        Partition lower = remove_path(lambda, P, ctx);
        if (!lower.is_regular(ctx))
            throw std::logic_error("loop_combo: positive-height removal left the regular set");
        PathWord w = word_of({down_arrow(lambda, P, ctx), up_arrow(lower, P, ctx)});
        return WordCombo::single(w, sign_pow(P.breadth()));
    }
    std::optional<DyckPath> rt = rt_path(lambda, P, ctx);
    if (rt) {
        Partition upper = add_path(lambda, *rt, ctx);
        if (!upper.is_regular(ctx))
            throw std::logic_error("loop_combo: endpoint above the replacement path is irregular");
        PathWord w = word_of({up_arrow(lambda, *rt, ctx), down_arrow(upper, *rt, ctx)});
        WordCombo out = WordCombo::single(w, sign_pow(rt->breadth() + 1));
        if (ctx.m == ctx.n)
            out.add_term(word_of({Arrow{lambda, lambda, ArrowKind::Loop, loop_anchor(lambda, ctx)}}),
                         -1);
        return out;
    }
    if (ctx.m != ctx.n || P.l != ctx.m - 1)
        throw std::logic_error("loop_combo: height-0 path with no replacement must be the anchor");
    return WordCombo::single(
        word_of({Arrow{lambda, lambda, ArrowKind::Loop, P}}), 1);
}

// ---------------------------------------------------------------------------
// Evaluation in the diagram algebra.
// ---------------------------------------------------------------------------

AlgebraElement phi_loop(const Partition& lambda, const DyckPath& P, const Context& ctx) {
    if (!is_removable(lambda, P, ctx))
        throw std::invalid_argument("phi_loop: path is not removable");
    Partition lower = remove_path(lambda, P, ctx);
    AlgebraElement out = multiply(generator_D_dual(lower, lambda, ctx),
                                  generator_D(lower, lambda, ctx), ctx);
    out *= sign_pow(P.breadth());
    return out;
}

namespace {

AlgebraElement arrow_image(const Arrow& a, const Context& ctx) {
    switch (a.kind) {
    case ArrowKind::DUp:
        return generator_D(a.source, a.target, ctx);
    case ArrowKind::DDown:
        return generator_D_dual(a.target, a.source, ctx);
    case ArrowKind::Loop:
        return phi_loop(a.source, a.path, ctx);
    }
    throw std::logic_error("arrow_image: unknown arrow kind");
}

} // namespace

AlgebraElement phi_eval(const PathWord& w, const Context& ctx) {
    AlgebraElement acc = idempotent(w.source);
    for (const Arrow& a : w.arrows)
        acc = multiply(acc, arrow_image(a, ctx), ctx);
    return acc;
}

AlgebraElement phi_eval(const WordCombo& c, const Context& ctx) {
    AlgebraElement acc;
    for (const auto& [w, coeff] : c.terms) {
        AlgebraElement img = phi_eval(w, ctx);
        img *= coeff;
        acc += img;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Relations.
// ---------------------------------------------------------------------------

const char* relation_tag_name(RelationTag tag) {
    switch (tag) {
    case RelationTag::Idempotent:
        return "idempotent";
    case RelationTag::SelfDual:
        return "self_dual";
    case RelationTag::Commuting:
        return "commuting";
    case RelationTag::NonCommuting:
        return "non_commuting";
    case RelationTag::Adjacent:
        return "adjacent";
    case RelationTag::Cubic:
        return "cubic";
    case RelationTag::LoopNilpotent:
        return "loop_nilpotent";
    case RelationTag::LoopCommute:
        return "loop_commute";
    }
    return "unknown";
}

namespace {

// Shared enumeration state: quiver, vertex set, and emission helpers.
struct RelationBuilder {
    const Context& ctx;
    Quiver quiver;
    std::set<Partition> vset;
    RelationEnumeration out;

    explicit RelationBuilder(const Context& c) : ctx(c), quiver(build_quiver(c)) {
        vset.insert(quiver.vertices.begin(), quiver.vertices.end());
    }

    bool regular(const Partition& p) const { return vset.count(p) > 0; }

    void skip(std::string why) {
        out.skipped++;
        out.skipped_log.push_back(std::move(why));
    }

    void push(RelationTag tag, const WordCombo& lhs, const WordCombo& rhs, std::string wit) {
        out.instances.push_back(RelationInstance{tag, lhs, rhs, wit, false});
        out.instances.push_back(
            RelationInstance{tag, word_dual(lhs), word_dual(rhs), wit + " (dual)", true});
    }

    // The up generator from `lower` adding P, if that arrow exists (both ends
    // regular, positive height above).
    std::optional<Arrow> try_up(const Partition& lower, const DyckPath& P) {
        if (!is_addable(lower, P, ctx))
            return std::nullopt;
        Partition upper = add_path(lower, P, ctx);
        if (!regular(lower) || !regular(upper))
            return std::nullopt;
        if (removable_height(upper, P, ctx) <= 0)
            return std::nullopt;
        return Arrow{lower, upper, ArrowKind::DUp, P};
    }

    std::optional<Arrow> try_down(const Partition& upper, const DyckPath& P) {
        if (!is_removable(upper, P, ctx))
            return std::nullopt;
        Partition lower = remove_path(upper, P, ctx);
        if (!regular(lower) || !regular(upper))
            return std::nullopt;
        if (removable_height(upper, P, ctx) <= 0)
            return std::nullopt;
        return Arrow{upper, lower, ArrowKind::DDown, P};
    }

    // Expansion of the degree-2 loop combination, or nullopt (with a reason)
    // when a vertex it would mention is irregular.
    std::optional<WordCombo> try_loop_combo(const Partition& lambda, const DyckPath& P,
                                            std::string* why) {
        int h = removable_height(lambda, P, ctx);
        if (h > 0 && !regular(remove_path(lambda, P, ctx))) {
            *why = "loop target irregular";
            return std::nullopt;
        }
        if (h == 0) {
            std::optional<DyckPath> rt = rt_path(lambda, P, ctx);
            if (rt && !regular(add_path(lambda, *rt, ctx))) {
                *why = "loop replacement endpoint irregular";
                return std::nullopt;
            }
        }
        return loop_combo(lambda, P, ctx);
    }

    void idempotent_family();
    void self_dual_family();
    void commuting_family();
    void non_commuting_family();
    void adjacent_family();
    void cubic_family();
    void loop_families();
};

void RelationBuilder::idempotent_family() {
    for (const Partition& mu : quiver.vertices) {
        for (const Partition& lam : quiver.vertices) {
            WordCombo lhs = concat(WordCombo::single(PathWord::idempotent(mu)),
                                   WordCombo::single(PathWord::idempotent(lam)));
            WordCombo rhs =
                (lam == mu) ? WordCombo::single(PathWord::idempotent(lam)) : WordCombo::zero();
            push(RelationTag::Idempotent, lhs, rhs,
                 "e(" + mu.to_string() + ")e(" + lam.to_string() + ")");
        }
    }
    for (const Arrow& a : quiver.arrows) {
        WordCombo mid = WordCombo::single(word_of({a}));
        WordCombo lhs = concat(WordCombo::single(PathWord::idempotent(a.source)),
                               concat(mid, WordCombo::single(PathWord::idempotent(a.target))));
        push(RelationTag::Idempotent, lhs, mid, "unit framing of " + a.to_string());
    }
}

void RelationBuilder::self_dual_family() {
    for (const Partition& lam : quiver.vertices) {
        for (const BoundaryPath& bp : addable_paths(lam, ctx)) {
            const DyckPath& P = bp.path;
            std::optional<Arrow> up = try_up(lam, P);
            if (!up) {
                skip("up-down square at " + lam.to_string() + " +" + P.to_string() +
                     ": no arrow pair");
                continue;
            }
            WordCombo lhs =
                WordCombo::single(word_of({*up, down_arrow(up->target, P, ctx)}));
            WordCombo rhs;
            bool ok = true;
            for (const BoundaryPath& rq : removable_paths(lam, ctx)) {
                Relation r = relate(P, rq.path);
                int mult = 0;
                if (r.primary == Rel::Covered)
                    mult = 2; // rq strictly contains the added path
                else if (r.primary == Rel::Adjacent)
                    mult = 1;
                if (mult == 0)
                    continue;
                std::string why;
                std::optional<WordCombo> lc = try_loop_combo(lam, rq.path, &why);
                if (!lc) {
                    skip("up-down square at " + lam.to_string() + " +" + P.to_string() + ": " +
                         why);
                    ok = false;
                    break;
                }
                *lc *= mult;
                rhs += *lc;
            }
            if (!ok)
                continue;
            rhs *= sign_pow(P.breadth() + 1);
            push(RelationTag::SelfDual, lhs, rhs,
                 "lam=" + lam.to_string() + " P=" + P.to_string());
        }
    }
}

void RelationBuilder::commuting_family() {
    for (const Partition& lam : quiver.vertices) {
        std::vector<BoundaryPath> rems = removable_paths(lam, ctx);
        for (std::size_t i = 0; i < rems.size(); ++i) {
            for (std::size_t j = 0; j < rems.size(); ++j) {
                if (i == j)
                    continue;
                const DyckPath& P = rems[i].path;
                const DyckPath& Q = rems[j].path;
                if (!commuting_removals(lam, P, Q, ctx))
                    continue;
                Partition lP = remove_path(lam, P, ctx);
                Partition lQ = remove_path(lam, Q, ctx);
                Partition lPQ = remove_path(lP, Q, ctx);
                if (lPQ != remove_path(lQ, P, ctx))
                    throw std::logic_error("commuting removals disagree on the base");
                std::string wit = "lam=" + lam.to_string() + " P=" + P.to_string() +
                                  " Q=" + Q.to_string();
                std::optional<Arrow> upP_fromPQ = try_up(lPQ, P);
                std::optional<Arrow> upQ_fromPQ = try_up(lPQ, Q);
                std::optional<Arrow> upP_toLam = try_up(lP, P);
                std::optional<Arrow> upQ_toLam = try_up(lQ, Q);
                if (i < j) {
                    // Up-up square: add Q then P versus add P then Q.
                    if (upQ_fromPQ && upP_toLam && upP_fromPQ && upQ_toLam) {
                        WordCombo lhs = WordCombo::single(word_of({*upQ_fromPQ, *upP_toLam}));
                        WordCombo rhs = WordCombo::single(word_of({*upP_fromPQ, *upQ_toLam}));
                        push(RelationTag::Commuting, lhs, rhs, wit + " (up-up)");
                    } else {
                        skip("commuting up-up at " + wit + ": missing arrow");
                    }
                }
                // Mixed square: up P then down Q versus down Q then up P.
                if (upP_toLam && upP_fromPQ) {
                    WordCombo lhs =
                        WordCombo::single(word_of({*upP_toLam, down_arrow(lam, Q, ctx)}));
                    WordCombo rhs =
                        WordCombo::single(word_of({down_arrow(lP, Q, ctx), *upP_fromPQ}));
                    // Down arrows in both words must exist as quiver arrows too.
                    if (try_down(lam, Q) && try_down(lP, Q)) {
                        push(RelationTag::Commuting, lhs, rhs, wit + " (mixed)");
                    } else {
                        skip("commuting mixed at " + wit + ": missing down arrow");
                    }
                } else {
                    skip("commuting mixed at " + wit + ": missing up arrow");
                }
            }
        }
    }
}

void RelationBuilder::non_commuting_family() {
    for (const Partition& mu : quiver.vertices) {
        std::vector<BoundaryPath> rems = removable_paths(mu, ctx);
        for (const BoundaryPath& bpP : rems) {
            for (const BoundaryPath& bpQ : rems) {
                const DyckPath& P = bpP.path;
                const DyckPath& Q = bpQ.path;
                if (P == Q)
                    continue;
                if (relate(P, Q).primary != Rel::Covered)
                    continue; // need P strictly inside Q
                if (commuting_removals(mu, P, Q, ctx))
                    continue;
                auto [Q1, Q2] = split_path(Q, P);
                Partition mP = remove_path(mu, P, ctx);
                Partition mQ = remove_path(mu, Q, ctx);
                if (!is_removable(mP, Q1, ctx) || !is_removable(mP, Q2, ctx))
                    throw std::logic_error("split of a nested removal is not removable below");
                Partition mPQ1 = remove_path(mP, Q1, ctx);
                Partition mPQ2 = remove_path(mP, Q2, ctx);
                if (add_path(mQ, Q2, ctx) != mPQ1 || add_path(mQ, Q1, ctx) != mPQ2)
                    throw std::logic_error("split parts do not reassemble the nested removal");
                std::string wit = "mu=" + mu.to_string() + " P=" + P.to_string() +
                                  " Q=" + Q.to_string();
                std::optional<Arrow> upQ = try_up(mQ, Q);
                std::optional<Arrow> downP = try_down(mu, P);
                std::optional<Arrow> upQ2 = try_up(mQ, Q2);
                std::optional<Arrow> upQ1_top = try_up(mPQ1, Q1);
                std::optional<Arrow> upQ1 = try_up(mQ, Q1);
                std::optional<Arrow> upQ2_top = try_up(mPQ2, Q2);
                if (!(upQ && downP && upQ2 && upQ1_top && upQ1 && upQ2_top)) {
                    skip("non-commuting pair at " + wit + ": missing arrow");
                    continue;
                }
                WordCombo lhs = WordCombo::single(word_of({*upQ, *downP}));
                WordCombo via1 = WordCombo::single(word_of({*upQ2, *upQ1_top}));
                WordCombo via2 = WordCombo::single(word_of({*upQ1, *upQ2_top}));
                push(RelationTag::NonCommuting, lhs, via1, wit + " (outer part first)");
                push(RelationTag::NonCommuting, lhs, via2, wit + " (inner part first)");
            }
        }
    }
}

void RelationBuilder::adjacent_family() {
    for (const Partition& mu : quiver.vertices) {
        for (const BoundaryPath& bpP : removable_paths(mu, ctx)) {
            const DyckPath& P = bpP.path;
            Partition mP = remove_path(mu, P, ctx);
            for (const BoundaryPath& bpQ : removable_paths(mP, ctx)) {
                const DyckPath& Q = bpQ.path;
                if (relate(P, Q).primary != Rel::Adjacent)
                    continue;
                Partition mPQ = remove_path(mP, Q, ctx);
                std::string wit = "mu=" + mu.to_string() + " P=" + P.to_string() +
                                  " Q=" + Q.to_string();
                std::optional<Arrow> upQ = try_up(mPQ, Q);
                std::optional<Arrow> upP = try_up(mP, P);
                if (!(upQ && upP)) {
                    skip("adjacent pair at " + wit + ": missing arrow");
                    continue;
                }
                WordCombo lhs = WordCombo::single(word_of({*upQ, *upP}));
                std::optional<DyckPath> M = merge_paths(mu, P, Q, ctx);
                WordCombo rhs = WordCombo::zero();
                if (M) {
                    Partition mM = remove_path(mu, *M, ctx);
                    // The merged route descends from mu-P-Q to mu-M by one
                    // removable path, then climbs back to mu.
                    std::optional<DyckPath> T;
                    for (const BoundaryPath& bt : removable_paths(mPQ, ctx)) {
                        if (remove_path(mPQ, bt.path, ctx) == mM) {
                            T = bt.path;
                            break;
                        }
                    }
                    if (!T) {
                        out.malformed.push_back("adjacent pair at " + wit +
                                                ": merged route is not a single removal");
                        continue;
                    }
                    std::optional<Arrow> downT = try_down(mPQ, *T);
                    std::optional<Arrow> upM = try_up(mM, *M);
                    if (!(downT && upM)) {
                        skip("adjacent pair at " + wit + ": missing merged-route arrow");
                        continue;
                    }
                    rhs = WordCombo::single(word_of({*downT, *upM}),
                                            sign_pow(M->breadth() + Q.breadth()));
                }
                push(RelationTag::Adjacent, lhs, rhs, wit);
            }
        }
    }
}

void RelationBuilder::cubic_family() {
    for (const Partition& mu : quiver.vertices) {
        std::vector<BoundaryPath> adds = addable_paths_height1(mu, ctx);
        if (adds.empty())
            continue;
        const BoundaryPath& chosen = *std::max_element(
            adds.begin(), adds.end(),
            [](const BoundaryPath& a, const BoundaryPath& b) { return a.path.l < b.path.l; });
        const DyckPath& P = chosen.path;
        std::string wit = "mu=" + mu.to_string() + " P=" + P.to_string();
        std::optional<Arrow> up = try_up(mu, P);
        if (!up) {
            skip("cubic at " + wit + ": no arrow pair");
            continue;
        }
        Partition muP = up->target;
        Arrow down = down_arrow(muP, P, ctx);
        WordCombo lhs = WordCombo::single(word_of({down, *up, down}));
        WordCombo rhs = WordCombo::zero();
        if (ctx.m == ctx.n) {
            Arrow loop{muP, muP, ArrowKind::Loop, loop_anchor(muP, ctx)};
            rhs = WordCombo::single(word_of({loop, down}), 2 * sign_pow(P.breadth() + 1));
        }
        push(RelationTag::Cubic, lhs, rhs, wit);
    }
}

void RelationBuilder::loop_families() {
    if (ctx.m != ctx.n)
        return;
    for (const Partition& mu : quiver.vertices) {
        Arrow loop{mu, mu, ArrowKind::Loop, loop_anchor(mu, ctx)};
        push(RelationTag::LoopNilpotent, WordCombo::single(word_of({loop, loop})),
             WordCombo::zero(), "mu=" + mu.to_string());
    }
    for (const Arrow& a : quiver.arrows) {
        if (a.kind == ArrowKind::Loop)
            continue;
        Arrow loopSrc{a.source, a.source, ArrowKind::Loop, loop_anchor(a.source, ctx)};
        Arrow loopTgt{a.target, a.target, ArrowKind::Loop, loop_anchor(a.target, ctx)};
        WordCombo lhs = WordCombo::single(word_of({a, loopTgt}));
        WordCombo rhs = WordCombo::single(word_of({loopSrc, a}));
        push(RelationTag::LoopCommute, lhs, rhs, "arrow " + a.to_string());
    }
}

} // namespace

RelationEnumeration enumerate_relations(const Context& ctx) {
    RelationBuilder b(ctx);
    b.idempotent_family();
    b.self_dual_family();
    b.commuting_family();
    b.non_commuting_family();
    b.adjacent_family();
    b.cubic_family();
    b.loop_families();
    return std::move(b.out);
}

RelationReport verify_relations(const Context& ctx) {
    RelationReport rep;
    RelationEnumeration en = enumerate_relations(ctx);
    rep.skipped = en.skipped;
    for (const std::string& m : en.malformed)
        rep.failures.push_back("malformed: " + m);
    rep.total = static_cast<int>(en.instances.size());
    for (const RelationInstance& inst : en.instances) {
        rep.counts[relation_tag_name(inst.tag)]++;
        if (phi_eval(inst.lhs, ctx) != phi_eval(inst.rhs, ctx))
            rep.failures.push_back(std::string(relation_tag_name(inst.tag)) + ": " +
                                   inst.witnesses);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Spanning set and isomorphism certificate.
// ---------------------------------------------------------------------------

namespace {

// Image of the canonical route from reg(alpha) down through the split phase
// and up through the adds to mu.
AlgebraElement route_image(const AddSplitPlan& plan, const Context& ctx) {
    AlgebraElement acc = idempotent(plan.reg);
    Partition cur = plan.reg;
    for (const DyckPath& T : plan.split_removals) {
        Partition nxt = remove_path(cur, T, ctx);
        acc = multiply(acc, generator_D_dual(nxt, cur, ctx), ctx);
        cur = nxt;
    }
    if (cur != plan.split_base)
        throw std::logic_error("route_image: split phase did not land on its base");
    for (const HeightPaths& hp : plan.adds_pos) {
        for (const DyckPath& A : hp.paths) {
            Partition nxt = add_path(cur, A, ctx);
            acc = multiply(acc, generator_D(cur, nxt, ctx), ctx);
            cur = nxt;
        }
    }
    return acc;
}

} // namespace

std::vector<SpanningElement> spanning_set(const Context& ctx) {
    std::vector<SpanningElement> out;
    std::vector<Partition> vertices = regular_partitions(ctx);
    for (const Partition& alpha : box_partitions(ctx)) {
        Regularisation reg = regularise(alpha, ctx);
        AlgebraElement loops = idempotent(reg.reg);
        for (const DyckPath& P : reg.paths)
            loops = multiply(loops, phi_loop(reg.reg, P, ctx), ctx);
        std::vector<std::pair<Partition, AlgebraElement>> routes;
        for (const Partition& nu : vertices) {
            if (!is_dyck_pair(alpha, nu, ctx))
                continue;
            AddSplitPlan plan = canonical_add_split(alpha, nu, ctx);
            if (plan.reg != reg.reg)
                throw std::logic_error("spanning_set: plan and regularisation disagree");
            routes.emplace_back(nu, route_image(plan, ctx));
        }
        for (const auto& [lam, ra_lam] : routes) {
            for (const auto& [mu, ra_mu] : routes) {
                AlgebraElement img =
                    multiply(multiply(involution(ra_lam), loops, ctx), ra_mu, ctx);
                out.push_back(SpanningElement{alpha, lam, mu, img});
            }
        }
    }
    return out;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string IsoCertificate::to_json() const {
    std::ostringstream os;
    os << "{\"ctx\":{\"m\":" << m << ",\"n\":" << n << "},\"relation_counts\":{";
    bool first = true;
    for (const auto& [tag, count] : relations.counts) {
        if (!first)
            os << ",";
        first = false;
        os << "\"" << json_escape(tag) << "\":" << count;
    }
    os << "},\"failures\":[";
    first = true;
    for (const std::string& f : relations.failures) {
        if (!first)
            os << ",";
        first = false;
        os << "\"" << json_escape(f) << "\"";
    }
    for (const std::string& f : failures) {
        if (!first)
            os << ",";
        first = false;
        os << "\"" << json_escape(f) << "\"";
    }
    os << "],\"snf_invariants\":[";
    first = true;
    for (const Int& d : snf_invariants) {
        if (!first)
            os << ",";
        first = false;
        os << d;
    }
    os << "],\"dim_H\":" << dim_h << "}";
    return os.str();
}

IsoCertificate verify_isomorphism(const Context& ctx) {
    IsoCertificate cert;
    cert.m = ctx.m;
    cert.n = ctx.n;
    cert.relations = verify_relations(ctx);
    std::vector<SpanningElement> span = spanning_set(ctx);
    std::vector<BasisDiagram> bh = basis_H(ctx);
    cert.dim_h = static_cast<int>(bh.size());
    if (span.size() != bh.size())
        cert.failures.push_back("spanning set has " + std::to_string(span.size()) +
                                " elements, expected " + std::to_string(bh.size()));
    std::map<BasisDiagram, int> idx;
    for (std::size_t i = 0; i < bh.size(); ++i)
        idx.emplace(bh[i], static_cast<int>(i));
    MatrixZ mat(span.size(), bh.size());
    for (std::size_t i = 0; i < span.size(); ++i) {
        for (const auto& [d, c] : span[i].image.terms) {
            auto it = idx.find(d);
            if (it == idx.end()) {
                cert.failures.push_back("image term outside the truncated basis: " +
                                        d.to_string());
                continue;
            }
            mat(i, it->second) = c;
        }
    }
    cert.snf_invariants = smith_normal_form(mat);
    bool unimodular = span.size() == bh.size() && cert.snf_invariants.size() == bh.size();
    for (const Int& d : cert.snf_invariants)
        if (d != 1)
            unimodular = false;
    if (!unimodular)
        cert.failures.push_back("spanning-to-diagram change of basis is not unimodular");
    cert.ok = cert.relations.ok() && cert.failures.empty();
    return cert;
}

// ---------------------------------------------------------------------------
// Derived identities.
// ---------------------------------------------------------------------------

int LemmaReport::total() const {
    int t = 0;
    for (const auto& [name, count] : instances)
        t += count;
    return t;
}

namespace {

// Chains (T^0, ..., T^k) of removable paths of lambda, T^i of removable
// height i, each strictly inside its predecessor.  Lengths >= 1.
std::vector<std::vector<DyckPath>> nested_chains(const Partition& lambda, const Context& ctx) {
    std::map<int, std::vector<DyckPath>> by_height;
    for (const BoundaryPath& bp : removable_paths(lambda, ctx))
        by_height[bp.height].push_back(bp.path);
    std::vector<std::vector<DyckPath>> out;
    std::vector<DyckPath> cur;
    std::function<void(int)> grow = [&](int h) {
        auto it = by_height.find(h);
        if (it == by_height.end())
            return;
        for (const DyckPath& cand : it->second) {
            if (relate(cur.back(), cand).primary != Rel::Covers)
                continue;
            cur.push_back(cand);
            out.push_back(cur);
            grow(h + 1);
            cur.pop_back();
        }
    };
    for (const DyckPath& start : by_height[0]) {
        cur = {start};
        out.push_back(cur);
        grow(1);
    }
    return out;
}

// Base of a chain: remove outermost first; verifies that the skew shape is
// tiled by exactly the chain, at tiling heights 0, -1, ..., -k.
Partition chain_base(const Partition& lambda, const std::vector<DyckPath>& chain,
                     const Context& ctx) {
    Partition cur = lambda;
    for (const DyckPath& T : chain)
        cur = remove_path(cur, T, ctx);
    std::optional<DyckTiling> tiling = dyck_tiling(cur, lambda, ctx);
    if (!tiling || tiling->paths.size() != chain.size())
        throw std::logic_error("chain_base: chain does not tile its skew shape");
    for (std::size_t i = 0; i < chain.size(); ++i) {
        bool found = false;
        for (const TiledPath& tp : tiling->paths)
            if (tp.path == chain[i] && tp.height == -static_cast<int>(i))
                found = true;
        if (!found)
            throw std::logic_error("chain_base: tiling heights do not mirror removable heights");
    }
    return cur;
}

struct LemmaBuilder {
    const Context& ctx;
    LemmaReport rep;
    std::vector<Partition> vertices;
    std::set<Partition> vset;

    explicit LemmaBuilder(const Context& c) : ctx(c), vertices(regular_partitions(c)) {
        vset.insert(vertices.begin(), vertices.end());
        for (const char* name :
             {"loop_pair_commute", "loop_height0_square_zero", "loop_tiling_product",
              "loop_chain_kills_descent", "loop_chain_past_add", "loop_past_down",
              "loop_past_up", "loop_jump_chain"})
            rep.instances[name] = 0;
    }

    bool regular(const Partition& p) const { return vset.count(p) > 0; }

    void check(const char* family, const std::string& wit, const AlgebraElement& lhs,
               const AlgebraElement& rhs) {
        rep.instances[family]++;
        if (lhs != rhs)
            rep.failures.push_back(std::string(family) + ": " + wit);
    }

    void pair_commute();
    void height0_square_zero();
    void tiling_product();
    void chain_kills_descent();
    void chain_past_add();
    void past_down();
    void past_up();
    void jump_chain();
};

void LemmaBuilder::pair_commute() {
    for (const Partition& lam : vertices) {
        std::vector<BoundaryPath> rems = removable_paths(lam, ctx);
        for (std::size_t i = 0; i < rems.size(); ++i) {
            for (std::size_t j = i + 1; j < rems.size(); ++j) {
                AlgebraElement a = phi_loop(lam, rems[i].path, ctx);
                AlgebraElement b = phi_loop(lam, rems[j].path, ctx);
                check("loop_pair_commute",
                      "lam=" + lam.to_string() + " P=" + rems[i].path.to_string() +
                          " Q=" + rems[j].path.to_string(),
                      multiply(a, b, ctx), multiply(b, a, ctx));
            }
        }
    }
}

void LemmaBuilder::height0_square_zero() {
    for (const Partition& lam : vertices) {
        for (const BoundaryPath& bp : removable_paths_height0(lam, ctx)) {
            AlgebraElement a = phi_loop(lam, bp.path, ctx);
            check("loop_height0_square_zero",
                  "lam=" + lam.to_string() + " P=" + bp.path.to_string(),
                  multiply(a, a, ctx), AlgebraElement{});
        }
    }
}

void LemmaBuilder::tiling_product() {
    struct Sub {
        Partition alpha;
        std::vector<DyckPath> tiles;
    };
    for (const Partition& lam : vertices) {
        std::vector<Sub> subs;
        for (const Partition& alpha : box_partitions(ctx)) {
            if (!lam.contains(alpha))
                continue;
            std::optional<DyckTiling> t = dyck_tiling(alpha, lam, ctx);
            if (!t)
                continue;
            bool nonpositive = true;
            std::vector<DyckPath> tiles;
            for (const TiledPath& tp : t->paths) {
                if (tp.height > 0) {
                    nonpositive = false;
                    break;
                }
                tiles.push_back(tp.path);
            }
            if (!nonpositive)
                continue;
            for (const DyckPath& T : tiles)
                if (!is_removable(lam, T, ctx))
                    throw std::logic_error("tiling_product: non-positive tile not removable");
            subs.push_back(Sub{alpha, tiles});
        }
        auto loops_of = [&](const std::vector<DyckPath>& tiles) {
            AlgebraElement acc = idempotent(lam);
            for (const DyckPath& T : tiles)
                acc = multiply(acc, phi_loop(lam, T, ctx), ctx);
            return acc;
        };
        for (std::size_t i = 0; i < subs.size(); ++i) {
            for (std::size_t j = i; j < subs.size(); ++j) {
                const Sub& A = subs[i];
                const Sub& B = subs[j];
                std::string wit = "lam=" + lam.to_string() + " alpha=" + A.alpha.to_string() +
                                  " beta=" + B.alpha.to_string();
                bool shared = false;
                for (const DyckPath& t1 : A.tiles)
                    for (const DyckPath& t2 : B.tiles)
                        if (t1 == t2)
                            shared = true;
                AlgebraElement lhs = multiply(loops_of(A.tiles), loops_of(B.tiles), ctx);
                if (shared) {
                    check("loop_tiling_product", wit + " (shared tile)", lhs, AlgebraElement{});
                    continue;
                }
                // Row-wise minimum of the two bases.
                std::vector<int> parts;
                int len = std::min(A.alpha.length(), B.alpha.length());
                for (int r = 1; r <= len; ++r)
                    parts.push_back(std::min(A.alpha.part(r), B.alpha.part(r)));
                while (!parts.empty() && parts.back() == 0)
                    parts.pop_back();
                Partition gamma(parts);
                std::optional<DyckTiling> tg = dyck_tiling(gamma, lam, ctx);
                std::vector<DyckPath> expected = A.tiles;
                expected.insert(expected.end(), B.tiles.begin(), B.tiles.end());
                std::sort(expected.begin(), expected.end());
                bool well_formed = tg.has_value() && tg->paths.size() == expected.size();
                if (well_formed) {
                    std::vector<DyckPath> got;
                    for (const TiledPath& tp : tg->paths) {
                        if (tp.height > 0)
                            well_formed = false;
                        got.push_back(tp.path);
                    }
                    std::sort(got.begin(), got.end());
                    if (got != expected)
                        well_formed = false;
                }
                if (!well_formed) {
                    rep.failures.push_back("loop_tiling_product: " + wit +
                                           " (meet is not tiled by the union)");
                    continue;
                }
                check("loop_tiling_product", wit, lhs, loops_of(expected));
            }
        }
    }
}

void LemmaBuilder::chain_kills_descent() {
    for (const Partition& lam : vertices) {
        for (const std::vector<DyckPath>& chain : nested_chains(lam, ctx)) {
            if (chain.size() < 2)
                continue;
            chain_base(lam, chain, ctx); // hypothesis cross-check
            const DyckPath& last = chain.back();
            Partition lower = remove_path(lam, last, ctx);
            if (!regular(lower))
                throw std::logic_error("chain_kills_descent: positive-height removal irregular");
            AlgebraElement acc = idempotent(lam);
            for (const DyckPath& T : chain)
                acc = multiply(acc, phi_loop(lam, T, ctx), ctx);
            acc = multiply(acc, generator_D_dual(lower, lam, ctx), ctx);
            std::string wit = "lam=" + lam.to_string() + " chain=";
            for (const DyckPath& T : chain)
                wit += T.to_string();
            check("loop_chain_kills_descent", wit, acc, AlgebraElement{});
        }
    }
}

void LemmaBuilder::chain_past_add() {
    for (const Partition& lam : vertices) {
        for (const std::vector<DyckPath>& chain : nested_chains(lam, ctx)) {
            chain_base(lam, chain, ctx); // hypothesis cross-check
            const DyckPath& last = chain.back();
            for (const BoundaryPath& bp : addable_paths(lam, ctx)) {
                const DyckPath& S = bp.path;
                if (relate(last, S).primary != Rel::Adjacent)
                    continue;
                std::string wit = "lam=" + lam.to_string() + " chain=";
                for (const DyckPath& T : chain)
                    wit += T.to_string();
                wit += " S=" + S.to_string();
                Partition up = add_path(lam, S, ctx);
                if (bp.height <= 0 || !regular(up)) {
                    rep.skipped++;
                    continue;
                }
                AlgebraElement lhs = idempotent(lam);
                for (const DyckPath& T : chain)
                    lhs = multiply(lhs, phi_loop(lam, T, ctx), ctx);
                lhs = multiply(lhs, generator_D(lam, up, ctx), ctx);
                std::optional<DyckPath> M = merge_paths(up, last, S, ctx);
                AlgebraElement rhs;
                if (M) {
                    rhs = generator_D(lam, up, ctx);
                    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
                        if (!is_removable(up, chain[i], ctx))
                            throw std::logic_error(
                                "chain_past_add: chain prefix not removable above");
                        rhs = multiply(rhs, phi_loop(up, chain[i], ctx), ctx);
                    }
                    rhs = multiply(rhs, phi_loop(up, *M, ctx), ctx);
                }
                check("loop_chain_past_add", wit, lhs, rhs);
            }
        }
    }
}

void LemmaBuilder::past_down() {
    for (const Partition& lam : vertices) {
        for (const BoundaryPath& bq : removable_paths_height0(lam, ctx)) {
            const DyckPath& Q = bq.path;
            for (const BoundaryPath& bps : removable_paths_positive(lam, ctx)) {
                const DyckPath& P = bps.path;
                Partition lower = remove_path(lam, P, ctx);
                if (!regular(lower))
                    throw std::logic_error("past_down: positive-height removal irregular");
                std::string wit =
                    "lam=" + lam.to_string() + " Q=" + Q.to_string() + " P=" + P.to_string();
                AlgebraElement down = generator_D_dual(lower, lam, ctx);
                AlgebraElement lhs = multiply(phi_loop(lam, Q, ctx), down, ctx);
                if (commuting_removals(lam, P, Q, ctx)) {
                    check("loop_past_down", wit + " (commuting)", lhs,
                          multiply(down, phi_loop(lower, Q, ctx), ctx));
                    continue;
                }
                if (relate(Q, P).primary != Rel::Covers)
                    throw std::logic_error("past_down: non-commuting pair is not nested");
                auto [Q1, Q2] = split_path(Q, P);
                if (!is_removable(lower, Q1, ctx) || !is_removable(lower, Q2, ctx))
                    throw std::logic_error("past_down: split parts not removable below");
                check("loop_past_down", wit + " (split, left)", lhs,
                      multiply(down, phi_loop(lower, Q1, ctx), ctx));
                check("loop_past_down", wit + " (split, right)", lhs,
                      multiply(down, phi_loop(lower, Q2, ctx), ctx));
            }
        }
    }
}

void LemmaBuilder::past_up() {
    for (const Partition& lam : vertices) {
        for (const BoundaryPath& bq : removable_paths_height0(lam, ctx)) {
            const DyckPath& Q = bq.path;
            for (const BoundaryPath& bp : addable_paths(lam, ctx)) {
                const DyckPath& P = bp.path;
                if (bp.height <= 0)
                    continue;
                Partition up = add_path(lam, P, ctx);
                if (!regular(up))
                    throw std::logic_error("past_up: positive-height addition irregular");
                std::string wit =
                    "lam=" + lam.to_string() + " Q=" + Q.to_string() + " P=" + P.to_string();
                AlgebraElement gen_up = generator_D(lam, up, ctx);
                AlgebraElement lhs = multiply(phi_loop(lam, Q, ctx), gen_up, ctx);
                if (commuting_mixed(lam, Q, P, ctx)) {
                    check("loop_past_up", wit + " (commuting)", lhs,
                          multiply(gen_up, phi_loop(up, Q, ctx), ctx));
                } else if (relate(P, Q).primary == Rel::Adjacent) {
                    std::optional<DyckPath> M = merge_paths(up, P, Q, ctx);
                    if (!M) {
                        rep.failures.push_back("loop_past_up: " + wit + " (no merge above)");
                        continue;
                    }
                    check("loop_past_up", wit + " (adjacent)", lhs,
                          multiply(gen_up, phi_loop(up, *M, ctx), ctx));
                }
            }
        }
    }
}

void LemmaBuilder::jump_chain() {
    for (const Partition& lam : vertices) {
        std::vector<BoundaryPath> rems = removable_paths(lam, ctx);
        for (const BoundaryPath& b1 : rems) {
            for (const BoundaryPath& b2 : rems) {
                for (const BoundaryPath& b3 : rems) {
                    const DyckPath& Q1 = b1.path;
                    const DyckPath& Q2 = b2.path;
                    const DyckPath& Q3 = b3.path;
                    if (b3.height != 0)
                        continue;
                    if (relate(Q2, Q1).primary != Rel::Covers ||
                        relate(Q3, Q2).primary != Rel::Covers)
                        continue;
                    if (commuting_removals(lam, Q1, Q2, ctx) ||
                        commuting_removals(lam, Q2, Q3, ctx))
                        continue;
                    std::string wit = "lam=" + lam.to_string() + " Q1=" + Q1.to_string() +
                                      " Q2=" + Q2.to_string() + " Q3=" + Q3.to_string();
                    Partition mid = remove_path(lam, Q2, ctx);
                    if (b2.height <= 0 || !regular(mid)) {
                        rep.skipped++;
                        continue;
                    }
                    if (!is_removable(mid, Q1, ctx))
                        throw std::logic_error("jump_chain: inner path not removable below");
                    AlgebraElement down = generator_D_dual(mid, lam, ctx);
                    AlgebraElement lhs = multiply(
                        multiply(phi_loop(lam, Q3, ctx), down, ctx), phi_loop(mid, Q1, ctx), ctx);
                    AlgebraElement rhs = multiply(
                        multiply(phi_loop(lam, Q3, ctx), phi_loop(lam, Q1, ctx), ctx), down, ctx);
                    check("loop_jump_chain", wit, lhs, rhs);
                }
            }
        }
    }
}

} // namespace

LemmaReport verify_lemma_identities(const Context& ctx) {
    LemmaBuilder b(ctx);
    b.pair_commute();
    b.height0_square_zero();
    b.tiling_product();
    b.chain_kills_descent();
    b.chain_past_add();
    b.past_down();
    b.past_up();
    b.jump_chain();
    return std::move(b.rep);
}

} // namespace arcalg
