#pragma once

#include <stdexcept>

namespace arcalg {

// A rectangular context: partitions live in an m x n box (first part <= m,
// at most n parts), and weights/diagrams live on m+n labelled points.
// The convention m <= n is enforced throughout.
struct Context {
    int m = 0;
    int n = 0;

    Context() = default;
    Context(int m_, int n_) : m(m_), n(n_) {
        if (m < 1 || n < m)
            throw std::invalid_argument("Context requires 1 <= m <= n");
    }

    // Number of points on the weight line.
    int points() const { return m + n; }

    bool operator==(const Context&) const = default;
};

} // namespace arcalg
