#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arcalg/context.hpp"
#include "arcalg/cup_diagram.hpp"
#include "arcalg/dyck.hpp"
#include "arcalg/partition.hpp"

namespace arcalg {

// A basis diagram of the extended arc algebra: the cup diagram of `bottom`
// glued under the weight of `weight` glued under the cap diagram of `top`.
// It is a basis element exactly when both halves are oriented, i.e. when
// (weight, bottom) and (weight, top) are Dyck pairs.
struct BasisDiagram {
    Partition bottom;
    Partition weight;
    Partition top;

    auto operator<=>(const BasisDiagram&) const = default;

    // "bottom|weight|top" with "-" for the empty partition,
    // e.g. "2,1|2|2,1".
    std::string to_string() const;
    static std::optional<BasisDiagram> parse(const std::string& text);
};

bool is_basis_diagram(const BasisDiagram& d, const Context& ctx);

// Sum of the degrees of the two oriented halves; throws std::invalid_argument
// when d is not a basis diagram.
int diagram_degree(const BasisDiagram& d, const Context& ctx);

// The anti-automorphism flipping a diagram upside down.
BasisDiagram involution(const BasisDiagram& d);

// An integral linear combination of basis diagrams.  Zero coefficients are
// never stored, so equality of the term maps is equality of elements.
struct AlgebraElement {
    std::map<BasisDiagram, long long> terms;

    void add_term(const BasisDiagram& d, long long coeff);
    AlgebraElement& operator+=(const AlgebraElement& other);
    AlgebraElement& operator-=(const AlgebraElement& other);
    AlgebraElement& operator*=(long long scalar);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const AlgebraElement&) const = default;

    std::string to_string() const;
};

AlgebraElement involution(const AlgebraElement& a);

// Order in which the surgery sites of a product are collapsed.  The result
// is independent of the choice; both are provided so tests can check that.
enum class SurgeryOrder { LeftToRight, RightToLeft };

// Product of two basis diagrams: zero unless a.top == b.bottom, otherwise
// the stacked diagram is collapsed one surgery at a time.  Throws
// std::invalid_argument if either input is not a basis diagram.
AlgebraElement multiply(const BasisDiagram& a, const BasisDiagram& b, const Context& ctx,
                        SurgeryOrder order = SurgeryOrder::LeftToRight);
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, const Context& ctx,
                        SurgeryOrder order = SurgeryOrder::LeftToRight);

// All basis diagrams, sorted by (bottom, weight, top).  basis_K runs over
// every partition in the box; basis_H keeps those whose bottom and top are
// both regular (the idempotent-truncated subalgebra).
std::vector<BasisDiagram> basis_K(const Context& ctx);
std::vector<BasisDiagram> basis_H(const Context& ctx);
std::size_t dim_K(const Context& ctx);
std::size_t dim_H(const Context& ctx);

// The idempotent diagram lambda|lambda|lambda and its one-term element.
BasisDiagram idempotent_diagram(const Partition& lambda);
AlgebraElement idempotent(const Partition& lambda);

// Sum of all idempotents (the unit of the extended algebra), and the sum
// over regular partitions only (the unit of the truncated algebra).
AlgebraElement unit_K(const Context& ctx);
AlgebraElement unit_H(const Context& ctx);

// The degree-one generator lam|lam|mu attached to removing a single Dyck
// path from mu (and its transpose mu|lam|lam).  Throws std::invalid_argument
// unless mu minus lam is one removable Dyck path of mu.
AlgebraElement generator_D(const Partition& lam, const Partition& mu, const Context& ctx);
AlgebraElement generator_D_dual(const Partition& lam, const Partition& mu, const Context& ctx);

// Iterated product of degree-one generators along an admissible add order
// of the Dyck tiling of mu minus lam.  The first overload uses the
// canonical tableau order; the second takes an explicit sequence of paths
// added starting from lam and throws if a step is inadmissible.
AlgebraElement product_of_tiling(const Partition& lam, const Partition& mu, const Context& ctx);
AlgebraElement product_of_tiling(const Partition& lam, const std::vector<DyckPath>& add_order,
                                 const Context& ctx);

} // namespace arcalg
