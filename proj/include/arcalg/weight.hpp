#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arcalg/context.hpp"
#include "arcalg/partition.hpp"

namespace arcalg {

// A weight on m+n points: label true = up arrow, false = down arrow,
// indexed by position 1..m+n (index 0 of the vector is position 1).
// Every weight of a box partition has exactly m up arrows.
using Weight = std::vector<bool>;

constexpr bool kUp = true;   // "wedge"
constexpr bool kDown = false; // "vee"

// The weight of a partition: up arrows sit at positions
// { conj(lambda)_i + m - i + 1 : i = 1..m } (conjugate zero-padded to m),
// down arrows elsewhere.  The empty partition gets up^m down^n.
Weight weight_of(const Partition& lambda, const Context& ctx);

// Inverse of weight_of; nullopt if w is not a valid weight (wrong length or
// up-arrow count, or decodes outside the box).
std::optional<Partition> partition_of_weight(const Weight& w, const Context& ctx);

// Text rendering, e.g. "^vv^" with '^' = up, 'v' = down.
std::string weight_string(const Weight& w);

} // namespace arcalg
