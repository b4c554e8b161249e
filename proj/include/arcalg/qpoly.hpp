#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

namespace arcalg {

// A Laurent polynomial in q with 64-bit integer coefficients, used for
// graded dimensions and graded decomposition numbers.
class QPoly {
  public:
    QPoly() = default;
    explicit QPoly(long long constant) {
        if (constant != 0) coeffs_[0] = constant;
    }
    static QPoly monomial(int degree, long long coeff = 1) {
        QPoly p;
        if (coeff != 0) p.coeffs_[degree] = coeff;
        return p;
    }

    const std::map<int, long long>& coeffs() const { return coeffs_; }
    long long coeff(int degree) const {
        auto it = coeffs_.find(degree);
        return it == coeffs_.end() ? 0 : it->second;
    }
    bool is_zero() const { return coeffs_.empty(); }

    QPoly& operator+=(const QPoly& other) {
        for (const auto& [d, c] : other.coeffs_) {
            long long& v = coeffs_[d];
            v += c;
            if (v == 0) coeffs_.erase(d);
        }
        return *this;
    }
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }

    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        QPoly out;
        for (const auto& [da, ca] : a.coeffs_)
            for (const auto& [db, cb] : b.coeffs_) {
                long long& v = out.coeffs_[da + db];
                v += ca * cb;
                if (v == 0) out.coeffs_.erase(da + db);
            }
        return out;
    }

    long long eval_at_one() const {
        long long s = 0;
        for (const auto& [d, c] : coeffs_) s += c;
        return s;
    }

    bool operator==(const QPoly&) const = default;

    // Deterministic text form such as "1 + 2q + q^3" or "q^-1 + q".
    std::string to_string() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [d, c] : coeffs_) {
            long long v = c;
            if (first) {
                if (v < 0) { os << '-'; v = -v; }
            } else {
                os << (v < 0 ? " - " : " + ");
                if (v < 0) v = -v;
            }
            first = false;
            if (d == 0) {
                os << v;
            } else {
                if (v != 1) os << v;
                os << 'q';
                if (d != 1) os << '^' << d;
            }
        }
        return os.str();
    }

  private:
    std::map<int, long long> coeffs_;
};

} // namespace arcalg
