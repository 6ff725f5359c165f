#ifndef SOERGEL_LAURENT_HPP
#define SOERGEL_LAURENT_HPP

// Laurent polynomials in one variable v with arbitrary-precision integer
// coefficients. Carrier of graded ranks, Kazhdan-Lusztig polynomials and
// stalk polynomials. No zero coefficients are ever stored.

#include <map>
#include <string>
#include <vector>

#include "soergel/numeric.hpp"

namespace soergel {

class Laurent {
  public:
    Laurent() = default;
    explicit Laurent(long constant) {
        if (constant != 0) c_[0] = constant;
    }
    static Laurent monomial(const Int& coef, int exp) {
        Laurent p;
        if (coef != 0) p.c_[exp] = coef;
        return p;
    }
    // v^exp
    static Laurent v_power(int exp) { return monomial(1, exp); }

    const std::map<int, Int>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    Int coeff(int exp) const {
        auto it = c_.find(exp);
        return it == c_.end() ? Int(0) : it->second;
    }
    int min_exp() const {
        require(!c_.empty(), "min_exp of zero polynomial");
        return c_.begin()->first;
    }
    int max_exp() const {
        require(!c_.empty(), "max_exp of zero polynomial");
        return c_.rbegin()->first;
    }

    Laurent& operator+=(const Laurent& o) {
        for (const auto& [e, c] : o.c_) add_term(e, c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) {
        for (const auto& [e, c] : o.c_) add_term(e, -c);
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (const auto& [ea, ca] : a.c_)
            for (const auto& [eb, cb] : b.c_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    Laurent operator-() const {
        Laurent r;
        for (const auto& [e, c] : c_) r.c_[e] = -c;
        return r;
    }
    bool operator==(const Laurent& o) const { return c_ == o.c_; }

    void add_term(int exp, const Int& coef) {
        if (coef == 0) return;
        auto it = c_.find(exp);
        if (it == c_.end()) {
            c_[exp] = coef;
        } else {
            it->second += coef;
            if (it->second == 0) c_.erase(it);
        }
    }

    // v -> v^{-1}
    Laurent bar() const {
        Laurent r;
        for (const auto& [e, c] : c_) r.c_[-e] = c;
        return r;
    }
    // multiply by v^k
    Laurent shifted(int k) const {
        Laurent r;
        for (const auto& [e, c] : c_) r.c_[e + k] = c;
        return r;
    }

    Int eval_at_one() const {
        Int s = 0;
        for (const auto& [e, c] : c_) s += c;
        return s;
    }

    bool nonnegative() const {
        for (const auto& [e, c] : c_)
            if (c < 0) return false;
        return true;
    }

    // Symmetric under v <-> v^{-1} about its own center: the coefficient
    // sequence between min_exp and max_exp reads the same both ways.
    bool palindromic_centered() const {
        if (c_.empty()) return true;
        int lo = min_exp(), hi = max_exp();
        for (int e = lo; e <= hi; ++e)
            if (coeff(e) != coeff(hi - (e - lo))) return false;
        return true;
    }

    // Exactly symmetric under v <-> v^{-1} (center 0).
    bool symmetric() const { return *this == bar(); }

    // All exponents congruent to parity mod 2 (vacuously true when zero).
    bool pure_parity(int parity) const {
        for (const auto& [e, c] : c_)
            if (((e - parity) % 2 + 2) % 2 != 0) return false;
        return true;
    }

    // Coefficients listed low to high together with the exponent offset.
    std::pair<int, std::vector<Int>> coeff_list() const {
        if (c_.empty()) return {0, {}};
        int lo = min_exp(), hi = max_exp();
        std::vector<Int> out;
        out.reserve(static_cast<size_t>(hi - lo + 1));
        for (int e = lo; e <= hi; ++e) out.push_back(coeff(e));
        return {lo, out};
    }

    std::string to_string() const; // human readable, e.g. "v^-1 + 2 + v"

  private:
    std::map<int, Int> c_;
};

} // namespace soergel

#endif
