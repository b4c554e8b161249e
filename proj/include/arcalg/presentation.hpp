#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arcalg/algebra.hpp"
#include "arcalg/context.hpp"
#include "arcalg/dyck.hpp"
#include "arcalg/linalg.hpp"
#include "arcalg/partition.hpp"

namespace arcalg {

// ---------------------------------------------------------------------------
// The quiver on regular partitions.
// ---------------------------------------------------------------------------

enum class ArrowKind { DDown, DUp, Loop };

// A generator arrow.  D-arrows connect the two ends of a one-path removal:
// for lambda = mu - P with P removable from mu of positive height, DUp goes
// lambda -> mu and DDown goes mu -> lambda, both of degree 1, and `path`
// records P.  Loop arrows (square case m = n only) sit at a single vertex
// with degree 2; their `path` stores the vertex's anchor path (the height-0
// removable path whose right end has the maximal content m - 1), which is the
// removable path whose attached degree-2 element coincides with the loop.
struct Arrow {
    Partition source;
    Partition target;
    ArrowKind kind = ArrowKind::DUp;
    DyckPath path{};

    int degree() const { return kind == ArrowKind::Loop ? 2 : 1; }
    std::string to_string() const;
    auto operator<=>(const Arrow&) const = default;
};

struct Quiver {
    std::vector<Partition> vertices; // regular partitions, sorted
    std::vector<Arrow> arrows;       // sorted

    bool has_vertex(const Partition& v) const;
    // The D-arrow from a to b, if the pair differs by one removable path of
    // positive height (with both ends regular).
    std::optional<Arrow> d_arrow(const Partition& a, const Partition& b) const;
    std::optional<Arrow> loop_at(const Partition& v) const;
};

// Vertices are the regular partitions of the box.  Every removable path of
// positive height on a vertex yields a DDown/DUp arrow pair (the smaller end
// is again regular), and in the square case each vertex carries one loop.
Quiver build_quiver(const Context& ctx);

// The anchor path of a regular partition in the square case: the unique
// height-0 removable path whose right end has content m - 1.  Throws unless
// m = n and the path exists.
DyckPath loop_anchor(const Partition& lambda, const Context& ctx);

// ---------------------------------------------------------------------------
// Path words and integer combinations.
// ---------------------------------------------------------------------------

// A composable chain of arrows.  The empty chain is the idempotent path at
// `source`; otherwise `source` equals the first arrow's source and each
// arrow's target equals the next arrow's source.
struct PathWord {
    Partition source;
    std::vector<Arrow> arrows;

    static PathWord idempotent(Partition v);
    const Partition& target() const;
    int degree() const;
    // Concatenation; throws std::invalid_argument unless target() matches
    // `next.source`.
    PathWord then(const PathWord& next) const;
    std::string to_string() const;
    auto operator<=>(const PathWord&) const = default;
};

// An integer linear combination of path words (an element of the path
// algebra).  Products of non-composable words vanish.
struct WordCombo {
    std::map<PathWord, long long> terms;

    static WordCombo zero();
    static WordCombo single(PathWord w, long long coeff = 1);
    void add_term(const PathWord& w, long long coeff);
    WordCombo& operator+=(const WordCombo& o);
    WordCombo& operator-=(const WordCombo& o);
    WordCombo& operator*=(long long c);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const WordCombo&) const = default;
    std::string to_string() const;
};

// Path-algebra product: bilinear concatenation, with non-composable pairs
// contributing zero.
WordCombo concat(const WordCombo& a, const WordCombo& b);

// The dual (anti-automorphism): reverse each word and flip every D-arrow;
// loops and idempotents are self-dual.
PathWord word_dual(const PathWord& w);
WordCombo word_dual(const WordCombo& c);

// The degree-2 loop combination attached to a removable path P of a regular
// vertex, expanded as a combination of generator words:
//   height > 0:            (-1)^{b(P)}  down-up through lambda - P;
//   height 0, m < n:       (-1)^{b(rt(P))+1}  up-down through lambda + rt(P);
//   height 0, m = n, rt exists:  - loop + the same up-down term;
//   height 0, m = n, last(P) = m-1:  the loop generator itself.
// Throws std::invalid_argument if lambda is irregular or P not removable.
WordCombo loop_combo(const Partition& lambda, const DyckPath& P, const Context& ctx);

// ---------------------------------------------------------------------------
// Relations.
// ---------------------------------------------------------------------------

enum class RelationTag {
    Idempotent,
    SelfDual,
    Commuting,
    NonCommuting,
    Adjacent,
    Cubic,
    LoopNilpotent,
    LoopCommute,
};
const char* relation_tag_name(RelationTag tag);

struct RelationInstance {
    RelationTag tag = RelationTag::Idempotent;
    WordCombo lhs;
    WordCombo rhs;
    std::string witnesses;
    bool dual = false;
};

struct RelationEnumeration {
    std::vector<RelationInstance> instances;
    // Admissible shapes skipped because a generator they would mention does
    // not exist (an endpoint leaves the regular vertex set).
    int skipped = 0;
    std::vector<std::string> skipped_log;
    // Shapes whose asserted companion data failed to materialise (reported
    // downstream as verification failures rather than skips).
    std::vector<std::string> malformed;
};

// All defining relation instances over the given box, duals included.
RelationEnumeration enumerate_relations(const Context& ctx);

// ---------------------------------------------------------------------------
// Evaluation in the diagram algebra.
// ---------------------------------------------------------------------------

// Images of generators: an idempotent path at lambda maps to the idempotent
// diagram, DUp lambda -> mu to (lambda | lambda | mu), DDown lambda -> mu to
// (lambda | mu | mu), and a loop to the image of its anchor's loop
// combination.  Words evaluate by stacking left to right.
AlgebraElement phi_eval(const PathWord& w, const Context& ctx);
AlgebraElement phi_eval(const WordCombo& c, const Context& ctx);

// Direct image of the loop combination attached to P at lambda:
// (-1)^{b(P)} times the stack of (lambda | lambda-P | lambda-P) under
// (lambda-P | lambda-P | lambda).  Agrees with phi_eval(loop_combo(...)).
AlgebraElement phi_loop(const Partition& lambda, const DyckPath& P, const Context& ctx);

struct RelationReport {
    int total = 0;
    int skipped = 0;
    std::map<std::string, int> counts; // instances per relation tag
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Evaluates both sides of every relation instance and reports mismatches.
RelationReport verify_relations(const Context& ctx);

// ---------------------------------------------------------------------------
// Spanning set and the isomorphism certificate.
// ---------------------------------------------------------------------------

struct SpanningElement {
    Partition alpha;
    Partition lam;
    Partition mu;
    AlgebraElement image;
};

// One element per (alpha, lam, mu) with alpha in the box and lam, mu regular
// such that both skew pairs are tileable: the image of
// (dual add word)(dual split word) L(alpha) (split word)(add word), built
// from the canonical add/split plans and the regularisation loops at
// reg(alpha).  The index set has size dim_H.
std::vector<SpanningElement> spanning_set(const Context& ctx);

struct IsoCertificate {
    int m = 0;
    int n = 0;
    RelationReport relations;
    std::vector<std::string> failures; // basis-change stage failures
    std::vector<Int> snf_invariants;
    int dim_h = 0;
    bool ok = false;

    // {"ctx":{...},"relation_counts":{...},"failures":[...],
    //  "snf_invariants":[...],"dim_H":N} with stable field order.
    std::string to_json() const;
};

// Expresses every spanning element in the diagram basis of the truncated
// algebra and certifies that the change of basis is square and unimodular.
IsoCertificate verify_isomorphism(const Context& ctx);

// ---------------------------------------------------------------------------
// Derived identities.
// ---------------------------------------------------------------------------

struct LemmaReport {
    std::map<std::string, int> instances; // per identity family
    int skipped = 0;
    std::vector<std::string> failures;
    int total() const;
    bool ok() const { return failures.empty(); }
};

// Verifies the derived loop-product identities over all admissible instances
// at this box size: commutation of loop combinations, square-zero at height
// 0, products of loop tilings, annihilation and transport along nested
// chains, transport past single removals and additions, and the three-path
// jump identity.  Families with no admissible instances pass vacuously.
LemmaReport verify_lemma_identities(const Context& ctx);

} // namespace arcalg
