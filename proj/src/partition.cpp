#include "arcalg/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace arcalg {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0)
            throw std::invalid_argument("partition parts must be positive");
        if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
            throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

int Partition::part(int row) const {
    if (row < 1) throw std::invalid_argument("row index must be >= 1");
    if (row > length()) return 0;
    return parts_[row - 1];
}

int Partition::size() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

bool Partition::contains_cell(const Cell& cell) const {
    return cell.r >= 1 && cell.c >= 1 && cell.c <= part(cell.r);
}

bool Partition::contains(const Partition& other) const {
    for (int r = 1; r <= other.length(); ++r)
        if (other.part(r) > part(r)) return false;
    return true;
}

std::vector<Cell> Partition::cells() const {
    std::vector<Cell> out;
    for (int r = 1; r <= length(); ++r)
        for (int c = 1; c <= part(r); ++c) out.push_back({r, c});
    return out;
}

Partition Partition::conjugate() const {
    std::vector<int> out;
    if (parts_.empty()) return Partition{};
    out.resize(parts_[0], 0);
    for (int c = 1; c <= parts_[0]; ++c) {
        int count = 0;
        for (int r = 1; r <= length(); ++r)
            if (part(r) >= c) ++count;
        out[c - 1] = count;
    }
    return Partition(std::move(out));
}

bool Partition::in_box(const Context& ctx) const {
    return part(1) <= ctx.m && length() <= ctx.n;
}

int Partition::defect(const Context& ctx) const {
    // Largest d such that the staircase (d, d-1, ..., 1) fits inside, i.e.
    // part(i) >= d+1-i for all i = 1..d; then subtract m.
    int best = 0;
    for (int cand = 1; cand <= length(); ++cand) {
        bool ok = true;
        for (int i = 1; i <= cand; ++i)
            if (part(i) < cand + 1 - i) { ok = false; break; }
        if (ok) best = cand;
    }
    return best - ctx.m;
}

Partition Partition::add_cell(const Cell& cell) const {
    std::vector<int> out = parts_;
    if (cell.r == length() + 1) {
        if (cell.c != 1) throw std::invalid_argument("cell not addable");
        out.push_back(1);
    } else {
        if (cell.r < 1 || cell.r > length() || cell.c != part(cell.r) + 1)
            throw std::invalid_argument("cell not addable");
        out[cell.r - 1] += 1;
    }
    return Partition(std::move(out));
}

Partition Partition::remove_cell(const Cell& cell) const {
    std::vector<int> out = parts_;
    if (cell.r < 1 || cell.r > length() || cell.c != part(cell.r))
        throw std::invalid_argument("cell not removable");
    out[cell.r - 1] -= 1;
    return Partition(std::move(out));
}

Partition Partition::add_cells(const std::vector<Cell>& cs) const {
    // Adding in increasing r+c keeps every prefix a partition whenever the
    // full set is a legal addition (a cell's prerequisites have smaller r+c).
    std::vector<Cell> sorted = cs;
    std::sort(sorted.begin(), sorted.end(), [](const Cell& a, const Cell& b) {
        return std::tie(a.r, a.c) < std::tie(b.r, b.c);
    });
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Cell& a, const Cell& b) { return a.r + a.c < b.r + b.c; });
    Partition cur = *this;
    for (const Cell& cell : sorted) cur = cur.add_cell(cell);
    return cur;
}

Partition Partition::remove_cells(const std::vector<Cell>& cs) const {
    std::vector<Cell> sorted = cs;
    std::sort(sorted.begin(), sorted.end(), [](const Cell& a, const Cell& b) {
        return std::tie(a.r, a.c) < std::tie(b.r, b.c);
    });
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Cell& a, const Cell& b) { return a.r + a.c > b.r + b.c; });
    Partition cur = *this;
    for (const Cell& cell : sorted) cur = cur.remove_cell(cell);
    return cur;
}

std::string Partition::to_string() const {
    if (parts_.empty()) return "-";
    std::ostringstream os;
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << ',';
        os << parts_[i];
    }
    return os.str();
}

std::optional<Partition> Partition::parse(const std::string& text) {
    if (text.empty()) return std::nullopt;
    if (text == "-") return Partition{};
    std::vector<int> parts;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size() || v <= 0) return std::nullopt;
            parts.push_back(v);
        } catch (...) {
            return std::nullopt;
        }
    }
    for (size_t i = 0; i + 1 < parts.size(); ++i)
        if (parts[i] < parts[i + 1]) return std::nullopt;
    return Partition(std::move(parts));
}

namespace {
void enumerate_box(const Context& ctx, int maxPart, std::vector<int>& cur,
                   std::vector<Partition>& out) {
    out.push_back(Partition(cur));
    if (static_cast<int>(cur.size()) >= ctx.n) return;
    for (int next = std::min(maxPart, cur.empty() ? ctx.m : cur.back()); next >= 1; --next) {
        cur.push_back(next);
        enumerate_box(ctx, next, cur, out);
        cur.pop_back();
    }
}
} // namespace

std::vector<Partition> box_partitions(const Context& ctx) {
    std::vector<Partition> out;
    std::vector<int> cur;
    enumerate_box(ctx, ctx.m, cur, out);
    std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.parts() > b.parts();
    });
    return out;
}

std::vector<Partition> regular_partitions(const Context& ctx) {
    std::vector<Partition> out;
    for (const Partition& p : box_partitions(ctx))
        if (p.is_regular(ctx)) out.push_back(p);
    return out;
}

} // namespace arcalg
