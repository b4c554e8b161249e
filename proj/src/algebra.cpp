#include "arcalg/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "arcalg/tiling.hpp"
#include "arcalg/weight.hpp"

namespace arcalg {

namespace {

// ---------------------------------------------------------------------------
// Surgery state.
//
// A product stacks the first diagram under the second, giving two labelled
// number lines: line 0 carries the first factor's weight, line 1 the
// second's.  Between them sits the shared middle diagram, each of whose cups
// appears twice (as a cap over line 0 and a cup under line 1) and each of
// whose rays becomes a vertical segment joining the lines.  Vertices are the
// 2N crossing points (line, position); every vertex touches exactly one arc
// below its line and one above it, except where a boundary ray of the outer
// cup/cap diagrams leaves the picture.
// ---------------------------------------------------------------------------

enum class AKind : unsigned char { BottomCup, MiddleCap, MiddleCup, TopCap, Vertical };

// Component type: an anticlockwise circle, a clockwise circle, or a strand
// (a curve with two boundary ends).  Types are assigned when the stack is
// built and thereafter transformed by the surgery rules alone; geometry is
// consulted only on the initial and final straight-line pictures, where the
// leftmost-crossing test is sound.
enum class CompTag : unsigned char { Strand, Anti, Clock };

struct SArc {
    AKind kind;
    int p = 0; // 1-based positions, p <= q; p == q for verticals
    int q = 0;
    CompTag tag = CompTag::Strand;
};

// Vertex ids: line 0 position p -> p-1, line 1 position p -> N+p-1.
int vx(int line, int pos, int N) { return line * N + pos - 1; }

bool arc_below_at(const SArc& a, int v, int N) {
    switch (a.kind) {
    case AKind::BottomCup: return true;
    case AKind::MiddleCap: return false;
    case AKind::MiddleCup: return true;
    case AKind::TopCap: return false;
    case AKind::Vertical: return v >= N; // below slot at its upper-line end
    }
    return false;
}

std::pair<int, int> arc_vertices(const SArc& a, int N) {
    switch (a.kind) {
    case AKind::BottomCup:
    case AKind::MiddleCap: return {vx(0, a.p, N), vx(0, a.q, N)};
    case AKind::MiddleCup:
    case AKind::TopCap: return {vx(1, a.p, N), vx(1, a.q, N)};
    case AKind::Vertical: return {vx(0, a.p, N), vx(1, a.p, N)};
    }
    return {-1, -1};
}

int other_end(const SArc& a, int v, int N) {
    auto [u, w] = arc_vertices(a, N);
    if (v == u) return w;
    if (v == w) return u;
    throw std::logic_error("vertex not on arc");
}

struct Slots {
    std::vector<int> below, above; // arc index per vertex, -1 = boundary/none
};

Slots build_slots(const std::vector<SArc>& arcs, int N) {
    Slots s{std::vector<int>(2 * N, -1), std::vector<int>(2 * N, -1)};
    for (size_t i = 0; i < arcs.size(); ++i) {
        auto [u, w] = arc_vertices(arcs[i], N);
        for (int v : {u, w}) {
            int& slot = arc_below_at(arcs[i], v, N) ? s.below[v] : s.above[v];
            if (slot != -1) throw std::logic_error("two arcs in one slot");
            slot = static_cast<int>(i);
        }
    }
    return s;
}

struct Component {
    std::vector<int> arcs;
    std::vector<int> vertices;
    std::vector<int> ends; // boundary-ray vertices (0 for circles, 2 for strands)
    int leftmost_pos = 0;
};

std::vector<Component> components(const std::vector<SArc>& arcs, const Slots& s, int N,
                                  std::vector<int>* comp_of_arc = nullptr) {
    std::vector<int> comp(arcs.size(), -1);
    std::vector<Component> out;
    for (size_t seed = 0; seed < arcs.size(); ++seed) {
        if (comp[seed] != -1) continue;
        int id = static_cast<int>(out.size());
        Component c;
        std::vector<int> stack{static_cast<int>(seed)};
        comp[seed] = id;
        std::vector<bool> seen_vertex(2 * N, false);
        while (!stack.empty()) {
            int ai = stack.back();
            stack.pop_back();
            c.arcs.push_back(ai);
            auto [u, w] = arc_vertices(arcs[ai], N);
            for (int v : {u, w}) {
                if (seen_vertex[v]) continue;
                seen_vertex[v] = true;
                c.vertices.push_back(v);
                for (int next : {s.below[v], s.above[v]}) {
                    if (next == -1 || comp[next] != -1) continue;
                    comp[next] = id;
                    stack.push_back(next);
                }
            }
        }
        c.leftmost_pos = N + 1;
        for (int v : c.vertices) {
            c.leftmost_pos = std::min(c.leftmost_pos, v % N + 1);
            bool bottom_ray = v < N && s.below[v] == -1;
            bool top_ray = v >= N && s.above[v] == -1;
            if (bottom_ray || top_ray) c.ends.push_back(v);
        }
        if (c.ends.size() != 0 && c.ends.size() != 2)
            throw std::logic_error("component with an odd number of ends");
        out.push_back(std::move(c));
    }
    if (comp_of_arc) *comp_of_arc = std::move(comp);
    return out;
}

class SurgeryEngine {
public:
    SurgeryEngine(const BasisDiagram& a, const BasisDiagram& b, const Context& ctx,
                  SurgeryOrder order)
        : N_(ctx.points()), ctx_(ctx), bottom_(a.bottom), top_(b.top) {
        lab1_ = weight_of(a.weight, ctx);
        lab2_ = weight_of(b.weight, ctx);

        CupDiagram bot = cup_diagram(a.bottom, ctx);
        CupDiagram mid = cup_diagram(a.top, ctx); // == b.bottom
        CupDiagram top = cup_diagram(b.top, ctx);

        std::vector<SArc> arcs;
        for (const Arc& c : bot.cups) arcs.push_back({AKind::BottomCup, c.p, c.q});
        for (const Arc& c : top.cups) arcs.push_back({AKind::TopCap, c.p, c.q});
        for (const Arc& c : mid.cups) {
            arcs.push_back({AKind::MiddleCap, c.p, c.q});
            arcs.push_back({AKind::MiddleCup, c.p, c.q});
            pending_.push_back({c.p, c.q});
        }
        for (int p = 1; p <= N_; ++p)
            if (mid.is_ray(p)) arcs.push_back({AKind::Vertical, p, p});

        if (order == SurgeryOrder::RightToLeft)
            std::reverse(pending_.begin(), pending_.end());

        // Initial component types from the straight-line picture: a circle is
        // anticlockwise exactly when its label at the leftmost crossing points
        // down.
        Slots s = build_slots(arcs, N_);
        for (const Component& c : components(arcs, s, N_)) {
            CompTag tag = CompTag::Strand;
            if (c.ends.empty()) {
                std::optional<bool> label;
                for (int v : c.vertices) {
                    if (v % N_ + 1 != c.leftmost_pos) continue;
                    bool l = label_at(v);
                    if (label && *label != l)
                        throw std::logic_error("leftmost labels disagree on a circle");
                    label = l;
                }
                tag = (*label == kDown) ? CompTag::Anti : CompTag::Clock;
            }
            for (int ai : c.arcs) arcs[ai].tag = tag;
        }
        init_arcs_ = std::move(arcs);
    }

    void run(std::map<BasisDiagram, long long>& out) { step(init_arcs_, 0, out); }

private:
    int N_;
    const Context& ctx_;
    Partition bottom_, top_;
    Weight lab1_, lab2_;
    std::vector<std::pair<int, int>> pending_;
    std::vector<SArc> init_arcs_;

    bool label_at(int v) const { return v < N_ ? lab1_[v] : lab2_[v - N_]; }

    static void retag(std::vector<SArc>& arcs, const Component& c, CompTag tag) {
        for (int ai : c.arcs) arcs[ai].tag = tag;
    }

    // Is the strand component propagating (one end on each boundary), and if
    // so, which way is it oriented?  Rays keep their original orientation, so
    // the frozen labels at the ends are authoritative.
    static bool propagating(const Component& c, int N) {
        return (c.ends[0] < N) != (c.ends[1] < N);
    }
    bool strand_orientation(const Component& c) const {
        bool l0 = label_at(c.ends[0]);
        if (l0 != label_at(c.ends[1]))
            throw std::logic_error("propagating strand with mismatched end labels");
        return l0;
    }

    void step(const std::vector<SArc>& arcs, size_t idx, std::map<BasisDiagram, long long>& out) {
        if (idx == pending_.size()) {
            finalize(arcs, out);
            return;
        }
        auto [p, q] = pending_[idx];
        int cap = -1, cup = -1;
        for (size_t i = 0; i < arcs.size(); ++i) {
            if (arcs[i].p != p || arcs[i].q != q) continue;
            if (arcs[i].kind == AKind::MiddleCap) cap = static_cast<int>(i);
            if (arcs[i].kind == AKind::MiddleCup) cup = static_cast<int>(i);
        }
        if (cap == -1 || cup == -1) throw std::logic_error("surgery site missing");

        Slots s = build_slots(arcs, N_);
        std::vector<int> comp_of;
        std::vector<Component> comps = components(arcs, s, N_, &comp_of);
        const Component& A = comps[comp_of[cap]];
        const Component& B = comps[comp_of[cup]];
        CompTag ta = arcs[cap].tag;
        CompTag tb = arcs[cup].tag;
        bool same = comp_of[cap] == comp_of[cup];

        if (!same) {
            // Merge of two components.
            if (ta == CompTag::Clock && tb == CompTag::Clock) return;
            if ((ta == CompTag::Clock && tb == CompTag::Strand) ||
                (ta == CompTag::Strand && tb == CompTag::Clock))
                return;
            if (ta == CompTag::Strand && tb == CompTag::Strand) {
                if (!propagating(A, N_) || !propagating(B, N_)) return;
                if (strand_orientation(A) == strand_orientation(B)) return;
                // Oppositely oriented propagating strands recombine into two
                // strands; every arc keeps the strand type.
                auto [next, vp, vq] = replace(arcs, cap, cup, p, q);
                Slots s2 = build_slots(next, N_);
                std::vector<int> co2;
                std::vector<Component> c2 = components(next, s2, N_, &co2);
                if (co2[vp] == co2[vq])
                    throw std::logic_error("strand recombination did not split");
                retag(next, c2[co2[vp]], CompTag::Strand);
                retag(next, c2[co2[vq]], CompTag::Strand);
                step(next, idx + 1, out);
                return;
            }
            CompTag merged = (ta == CompTag::Strand || tb == CompTag::Strand) ? CompTag::Strand
                             : (ta == CompTag::Clock || tb == CompTag::Clock) ? CompTag::Clock
                                                                              : CompTag::Anti;
            auto [next, vp, vq] = replace(arcs, cap, cup, p, q);
            Slots s2 = build_slots(next, N_);
            std::vector<int> co2;
            std::vector<Component> c2 = components(next, s2, N_, &co2);
            if (co2[vp] != co2[vq]) throw std::logic_error("merge did not join the pieces");
            retag(next, c2[co2[vp]], merged);
            step(next, idx + 1, out);
            return;
        }

        // Split of one component into two.
        auto [next, vp, vq] = replace(arcs, cap, cup, p, q);
        Slots s2 = build_slots(next, N_);
        std::vector<int> co2;
        std::vector<Component> c2 = components(next, s2, N_, &co2);
        if (co2[vp] == co2[vq]) throw std::logic_error("split did not separate the pieces");
        const Component& P1 = c2[co2[vp]];
        const Component& P2 = c2[co2[vq]];
        switch (ta) {
        case CompTag::Anti: {
            // An anticlockwise circle splits into the two mixed states.
            std::vector<SArc> branch = next;
            retag(branch, P1, CompTag::Anti);
            retag(branch, P2, CompTag::Clock);
            step(branch, idx + 1, out);
            retag(next, P1, CompTag::Clock);
            retag(next, P2, CompTag::Anti);
            step(next, idx + 1, out);
            return;
        }
        case CompTag::Clock:
            retag(next, P1, CompTag::Clock);
            retag(next, P2, CompTag::Clock);
            step(next, idx + 1, out);
            return;
        case CompTag::Strand: {
            // A strand pinches off a clockwise circle and stays a strand.
            const Component& circle = P1.ends.empty() ? P1 : P2;
            const Component& strand = P1.ends.empty() ? P2 : P1;
            if (!circle.ends.empty() || strand.ends.size() != 2)
                throw std::logic_error("strand split is not strand plus circle");
            retag(next, circle, CompTag::Clock);
            retag(next, strand, CompTag::Strand);
            step(next, idx + 1, out);
            return;
        }
        }
    }

    // Remove the surgery pair and join the lines with verticals at p and q.
    // Returns the new arc list and the indices of the two new verticals.
    static std::tuple<std::vector<SArc>, int, int> replace(const std::vector<SArc>& arcs, int cap,
                                                           int cup, int p, int q) {
        std::vector<SArc> next;
        next.reserve(arcs.size());
        for (size_t i = 0; i < arcs.size(); ++i)
            if (static_cast<int>(i) != cap && static_cast<int>(i) != cup)
                next.push_back(arcs[i]);
        int vp = static_cast<int>(next.size());
        next.push_back({AKind::Vertical, p, p});
        int vq = static_cast<int>(next.size());
        next.push_back({AKind::Vertical, q, q});
        return {std::move(next), vp, vq};
    }

    // All surgeries done: every middle arc is a vertical, so the picture is a
    // single straight-line diagram again.  Walk each component along its
    // orientation writing labels; circles take their orientation from the
    // tracked type, strands from the frozen label at a ray end.
    void finalize(const std::vector<SArc>& arcs, std::map<BasisDiagram, long long>& out) {
        for (const SArc& a : arcs)
            if (a.kind == AKind::MiddleCap || a.kind == AKind::MiddleCup)
                throw std::logic_error("finalize with surgeries outstanding");
        Slots s = build_slots(arcs, N_);
        std::vector<signed char> label(2 * N_, -1);
        for (const Component& c : components(arcs, s, N_)) {
            if (c.ends.empty())
                trace_circle(arcs, s, c, label);
            else
                trace_strand(arcs, s, c, label);
        }
        Weight w(N_);
        for (int i = 0; i < N_; ++i) {
            if (label[i] < 0 || label[i] != label[N_ + i])
                throw std::logic_error("inconsistent final labelling");
            w[i] = label[i] == 1;
        }
        std::optional<Partition> delta = partition_of_weight(w, ctx_);
        if (!delta) throw std::logic_error("final labelling is not a weight");
        ++out[BasisDiagram{bottom_, *delta, top_}];
    }

    void trace_circle(const std::vector<SArc>& arcs, const Slots& s, const Component& c,
                      std::vector<signed char>& label) const {
        CompTag tag = arcs[c.arcs.front()].tag;
        int v0 = vx(0, c.leftmost_pos, N_);
        bool l0 = (tag == CompTag::Anti) ? kDown : kUp;
        label[v0] = l0;
        int cur = v0;
        int via = l0 == kUp ? s.above[v0] : s.below[v0];
        while (true) {
            int nxt = other_end(arcs[via], cur, N_);
            bool from_below = arc_below_at(arcs[via], nxt, N_);
            if (nxt == v0) {
                if (from_below != (l0 == kUp))
                    throw std::logic_error("circle closed against its orientation");
                return;
            }
            label[nxt] = from_below ? kUp : kDown;
            cur = nxt;
            via = from_below ? s.above[nxt] : s.below[nxt];
        }
    }

    void trace_strand(const std::vector<SArc>& arcs, const Slots& s, const Component& c,
                      std::vector<signed char>& label) const {
        int e0 = c.ends[0];
        bool l0 = label_at(e0);
        bool bottom_end = e0 < N_;
        bool with_flow = bottom_end ? (l0 == kUp) : (l0 == kDown);
        label[e0] = l0;
        int cur = e0;
        int via = bottom_end ? s.above[e0] : s.below[e0];
        while (true) {
            int nxt = other_end(arcs[via], cur, N_);
            bool from_below = arc_below_at(arcs[via], nxt, N_);
            bool l = with_flow == from_below ? kUp : kDown;
            label[nxt] = l;
            bool at_bottom_ray = nxt < N_ && s.below[nxt] == -1;
            bool at_top_ray = nxt >= N_ && s.above[nxt] == -1;
            if (at_bottom_ray || at_top_ray) {
                if (l != label_at(nxt))
                    throw std::logic_error("strand end label drifted from its ray");
                return;
            }
            cur = nxt;
            via = from_below ? s.above[nxt] : s.below[nxt];
        }
    }
};

void require_basis_diagram(const BasisDiagram& d, const Context& ctx) {
    if (!is_basis_diagram(d, ctx))
        throw std::invalid_argument("not a basis diagram: " + d.to_string());
}

} // namespace

// ---------------------------------------------------------------------------
// BasisDiagram / AlgebraElement plumbing.
// ---------------------------------------------------------------------------

std::string BasisDiagram::to_string() const {
    return bottom.to_string() + "|" + weight.to_string() + "|" + top.to_string();
}

std::optional<BasisDiagram> BasisDiagram::parse(const std::string& text) {
    size_t a = text.find('|');
    if (a == std::string::npos) return std::nullopt;
    size_t b = text.find('|', a + 1);
    if (b == std::string::npos || text.find('|', b + 1) != std::string::npos)
        return std::nullopt;
    auto bottom = Partition::parse(text.substr(0, a));
    auto weight = Partition::parse(text.substr(a + 1, b - a - 1));
    auto top = Partition::parse(text.substr(b + 1));
    if (!bottom || !weight || !top) return std::nullopt;
    return BasisDiagram{*bottom, *weight, *top};
}

bool is_basis_diagram(const BasisDiagram& d, const Context& ctx) {
    return d.bottom.in_box(ctx) && d.weight.in_box(ctx) && d.top.in_box(ctx) &&
           is_oriented(d.bottom, d.weight, ctx) && is_oriented(d.top, d.weight, ctx);
}

int diagram_degree(const BasisDiagram& d, const Context& ctx) {
    auto lo = oriented_degree(d.bottom, d.weight, ctx);
    auto hi = oriented_degree(d.top, d.weight, ctx);
    if (!lo || !hi) throw std::invalid_argument("degree of a non-diagram: " + d.to_string());
    return *lo + *hi;
}

BasisDiagram involution(const BasisDiagram& d) { return {d.top, d.weight, d.bottom}; }

void AlgebraElement::add_term(const BasisDiagram& d, long long coeff) {
    if (coeff == 0) return;
    auto it = terms.find(d);
    if (it == terms.end()) {
        terms.emplace(d, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0) terms.erase(it);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
    for (const auto& [d, c] : other.terms) add_term(d, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
    for (const auto& [d, c] : other.terms) add_term(d, -c);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(long long scalar) {
    if (scalar == 0) {
        terms.clear();
        return *this;
    }
    for (auto& [d, c] : terms) c *= scalar;
    return *this;
}

std::string AlgebraElement::to_string() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << c << "*(" << d.to_string() << ")";
    }
    return os.str();
}

AlgebraElement involution(const AlgebraElement& a) {
    AlgebraElement out;
    for (const auto& [d, c] : a.terms) out.add_term(involution(d), c);
    return out;
}

// ---------------------------------------------------------------------------
// Multiplication.
// ---------------------------------------------------------------------------

AlgebraElement multiply(const BasisDiagram& a, const BasisDiagram& b, const Context& ctx,
                        SurgeryOrder order) {
    require_basis_diagram(a, ctx);
    require_basis_diagram(b, ctx);
    AlgebraElement out;
    if (a.top != b.bottom) return out;
    SurgeryEngine engine(a, b, ctx, order);
    engine.run(out.terms);
    return out;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, const Context& ctx,
                        SurgeryOrder order) {
    AlgebraElement out;
    for (const auto& [da, ca] : a.terms) {
        for (const auto& [db, cb] : b.terms) {
            if (da.top != db.bottom) continue;
            AlgebraElement prod = multiply(da, db, ctx, order);
            prod *= ca * cb;
            out += prod;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bases and distinguished elements.
// ---------------------------------------------------------------------------

std::vector<BasisDiagram> basis_K(const Context& ctx) {
    std::vector<Partition> parts = box_partitions(ctx);
    std::vector<BasisDiagram> out;
    for (const Partition& mu : parts) {
        std::vector<Partition> flips;
        for (const Partition& lam : parts)
            if (is_oriented(lam, mu, ctx)) flips.push_back(lam);
        for (const Partition& lam : flips)
            for (const Partition& nu : flips) out.push_back({lam, mu, nu});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BasisDiagram> basis_H(const Context& ctx) {
    std::vector<BasisDiagram> out;
    for (const BasisDiagram& d : basis_K(ctx))
        if (d.bottom.is_regular(ctx) && d.top.is_regular(ctx)) out.push_back(d);
    return out;
}

std::size_t dim_K(const Context& ctx) { return basis_K(ctx).size(); }
std::size_t dim_H(const Context& ctx) { return basis_H(ctx).size(); }

BasisDiagram idempotent_diagram(const Partition& lambda) { return {lambda, lambda, lambda}; }

AlgebraElement idempotent(const Partition& lambda) {
    AlgebraElement out;
    out.add_term(idempotent_diagram(lambda), 1);
    return out;
}

AlgebraElement unit_K(const Context& ctx) {
    AlgebraElement out;
    for (const Partition& lam : box_partitions(ctx)) out.add_term(idempotent_diagram(lam), 1);
    return out;
}

AlgebraElement unit_H(const Context& ctx) {
    AlgebraElement out;
    for (const Partition& lam : regular_partitions(ctx)) out.add_term(idempotent_diagram(lam), 1);
    return out;
}

AlgebraElement generator_D(const Partition& lam, const Partition& mu, const Context& ctx) {
    for (const BoundaryPath& bp : removable_paths(mu, ctx)) {
        if (remove_path(mu, bp.path, ctx) == lam) {
            AlgebraElement out;
            out.add_term({lam, lam, mu}, 1);
            return out;
        }
    }
    throw std::invalid_argument("no single removable path from " + mu.to_string() + " to " +
                                lam.to_string());
}

AlgebraElement generator_D_dual(const Partition& lam, const Partition& mu, const Context& ctx) {
    return involution(generator_D(lam, mu, ctx));
}

AlgebraElement product_of_tiling(const Partition& lam, const Partition& mu, const Context& ctx) {
    if (!is_dyck_pair(lam, mu, ctx))
        throw std::invalid_argument("tiling product requires a Dyck pair");
    std::vector<TableauStep> steps = canonical_tableau(lam, mu, ctx);
    AlgebraElement out = idempotent(lam);
    for (size_t i = steps.size(); i-- > 0;)
        out = multiply(out, generator_D(steps[i].after, steps[i].before, ctx), ctx);
    return out;
}

AlgebraElement product_of_tiling(const Partition& lam, const std::vector<DyckPath>& add_order,
                                 const Context& ctx) {
    AlgebraElement out = idempotent(lam);
    Partition nu = lam;
    for (const DyckPath& P : add_order) {
        Partition next = add_path(nu, P, ctx);
        out = multiply(out, generator_D(nu, next, ctx), ctx);
        nu = next;
    }
    return out;
}

} // namespace arcalg
