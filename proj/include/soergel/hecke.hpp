#ifndef SOERGEL_HECKE_HPP
#define SOERGEL_HECKE_HPP

// The Hecke algebra of a finite Weyl group in the standard basis {H_w}, its
// canonical (Kazhdan-Lusztig) basis, and the KL inversion identity. This is
// the characteristic-0 oracle for everything the module side computes.
//
// Normalization: H_s^2 = (v^{-1} - v) H_s + H_e and b_s = H_s + v H_e, so
// b_w = sum_{x <= w} h_{x,w}(v) H_x with h_{w,w} = 1 and h_{x,w} in v Z[v]
// for x < w. Classical polynomials via h_{x,w}(v) = v^{l(w)-l(x)} P_{x,w}(q)
// with q = v^{-2}.

#include <map>
#include <string>

#include "soergel/laurent.hpp"
#include "soergel/rootdata.hpp"

namespace soergel {

// finitely supported sum of Laurent coefficients over group elements
class HeckeElt {
  public:
    HeckeElt() = default;
    static HeckeElt standard_basis(int w) {
        HeckeElt h;
        h.c_[w] = Laurent(1);
        return h;
    }

    const std::map<int, Laurent>& support() const { return c_; }
    Laurent coeff(int w) const {
        auto it = c_.find(w);
        return it == c_.end() ? Laurent() : it->second;
    }
    bool is_zero() const { return c_.empty(); }

    void add_term(int w, const Laurent& p) {
        if (p.is_zero()) return;
        auto it = c_.find(w);
        if (it == c_.end()) {
            c_[w] = p;
        } else {
            it->second += p;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    HeckeElt& operator+=(const HeckeElt& o) {
        for (const auto& [w, p] : o.c_) add_term(w, p);
        return *this;
    }
    HeckeElt& operator-=(const HeckeElt& o) {
        for (const auto& [w, p] : o.c_) add_term(w, -p);
        return *this;
    }
    HeckeElt scaled(const Laurent& p) const {
        HeckeElt r;
        for (const auto& [w, c] : c_) r.add_term(w, c * p);
        return r;
    }
    bool operator==(const HeckeElt& o) const { return c_ == o.c_; }

  private:
    std::map<int, Laurent> c_;
};

// a * H_s and H_s * a
HeckeElt hecke_mul_right_simple(const WeylGroup& w, const HeckeElt& a, int s);
HeckeElt hecke_mul_left_simple(const WeylGroup& w, int s, const HeckeElt& a);
// general product via reduced words
HeckeElt hecke_multiply(const WeylGroup& w, const HeckeElt& a, const HeckeElt& b);
// a * b_s with b_s = H_s + v H_e
HeckeElt hecke_mul_right_bs(const WeylGroup& w, const HeckeElt& a, int s);

// bar involution: v -> v^{-1}, H_w -> (H_{w^{-1}})^{-1}
HeckeElt hecke_bar(const WeylGroup& w, const HeckeElt& a);

struct KLTable {
    // h[w][x] = h_{x,w}(v); only x <= w stored, h_{w,w} = 1
    std::vector<std::map<int, Laurent>> h;

    Laurent h_poly(int x, int w) const {
        auto it = h[static_cast<size_t>(w)].find(x);
        return it == h[static_cast<size_t>(w)].end() ? Laurent() : it->second;
    }
    // classical P_{x,w} as a polynomial in q
    Laurent p_poly(const WeylGroup& grp, int x, int w) const;
    // b_w in the standard basis
    HeckeElt canonical_basis_elt(int w) const;
};

// Full KL table by the standard recursion (b_w from b_s b_{sw} minus mu
// corrections, s the first left descent of w).
KLTable kl_basis(const WeylGroup& w);

struct InversionReport {
    bool pass = true;
    int fail_x = -1, fail_y = -1;
    Laurent fail_value;
    std::string to_string(const WeylGroup& w) const;
};

// sum_{x <= z <= y} (-1)^{l(z)-l(x)} P_{x,z}(q) P_{w0 y, w0 z}(q) = delta_{x,y}
InversionReport kl_inversion_check(const WeylGroup& w, const KLTable& t);

} // namespace soergel

#endif
