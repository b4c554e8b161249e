#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arcalg/context.hpp"

namespace arcalg {

// A cell of a Young diagram, row r >= 1, column c >= 1 (English convention:
// row index grows downwards).  Its content is r - c and its diagonal height
// relative to a context with m columns is r + c - 1 - m.
struct Cell {
    int r = 0;
    int c = 0;
    auto operator<=>(const Cell&) const = default;
};

// An integer partition, stored as weakly decreasing positive parts.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    // Part at 1-based row index; zero beyond the last row.
    int part(int row) const;
    int size() const; // number of cells
    bool empty() const { return parts_.empty(); }

    bool contains_cell(const Cell& cell) const;
    bool contains(const Partition& other) const; // other subseteq this
    std::vector<Cell> cells() const;

    Partition conjugate() const;

    // Membership in the m x n box: first part <= m and at most n parts.
    bool in_box(const Context& ctx) const;

    // defect(lambda) = (largest d such that the staircase (d, d-1, ..., 1)
    // fits inside lambda) - m.  Always <= 0 for partitions in the box; a
    // partition is regular when its defect is 0.
    int defect(const Context& ctx) const;
    bool is_regular(const Context& ctx) const { return defect(ctx) == 0; }

    Partition add_cell(const Cell& cell) const;
    Partition remove_cell(const Cell& cell) const;
    Partition add_cells(const std::vector<Cell>& cs) const;
    Partition remove_cells(const std::vector<Cell>& cs) const;

    // Round-trip text form: comma-separated parts, "-" for the empty
    // partition, e.g. "2,1".
    std::string to_string() const;
    static std::optional<Partition> parse(const std::string& text);

    auto operator<=>(const Partition&) const = default;

  private:
    std::vector<int> parts_;
};

// All partitions in the m x n box, in a fixed deterministic order:
// by size, then lexicographically descending parts.
std::vector<Partition> box_partitions(const Context& ctx);

// All regular partitions (defect 0) in the box, same order.
std::vector<Partition> regular_partitions(const Context& ctx);

} // namespace arcalg

template <> struct std::hash<arcalg::Partition> {
    size_t operator()(const arcalg::Partition& p) const {
        size_t h = 1469598103934665603ULL;
        for (int x : p.parts()) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};
