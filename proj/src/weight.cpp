#include "arcalg/weight.hpp"

#include <algorithm>

namespace arcalg {

Weight weight_of(const Partition& lambda, const Context& ctx) {
    Weight w(ctx.points(), kDown);
    Partition conj = lambda.conjugate();
    for (int i = 1; i <= ctx.m; ++i) {
        int pos = conj.part(i) + ctx.m - i + 1;
        w[pos - 1] = kUp;
    }
    return w;
}

std::optional<Partition> partition_of_weight(const Weight& w, const Context& ctx) {
    if (static_cast<int>(w.size()) != ctx.points()) return std::nullopt;
    std::vector<int> upPositions;
    for (int p = 1; p <= ctx.points(); ++p)
        if (w[p - 1] == kUp) upPositions.push_back(p);
    if (static_cast<int>(upPositions.size()) != ctx.m) return std::nullopt;
    // Up arrows, read right to left, are at conj_i + m - i + 1 for i = 1..m.
    std::sort(upPositions.rbegin(), upPositions.rend());
    std::vector<int> conj(ctx.m);
    for (int i = 1; i <= ctx.m; ++i) {
        conj[i - 1] = upPositions[i - 1] - ctx.m + i - 1;
        if (conj[i - 1] < 0) return std::nullopt;
        if (i > 1 && conj[i - 2] < conj[i - 1]) return std::nullopt;
    }
    while (!conj.empty() && conj.back() == 0) conj.pop_back();
    Partition conjPart(std::move(conj));
    Partition lambda = conjPart.conjugate();
    if (!lambda.in_box(ctx)) return std::nullopt;
    return lambda;
}

std::string weight_string(const Weight& w) {
    std::string s;
    s.reserve(w.size());
    for (bool b : w) s.push_back(b == kUp ? '^' : 'v');
    return s;
}

} // namespace arcalg
