#include "soergel/hecke.hpp"

#include <sstream>

namespace soergel {

HeckeElt hecke_mul_right_simple(const WeylGroup& g, const HeckeElt& a, int s) {
    HeckeElt r;
    for (const auto& [w, p] : a.support()) {
        int ws = g.right_mult(w, s);
        if (g.length(ws) > g.length(w)) {
            r.add_term(ws, p);
        } else {
            // H_w H_s = H_{ws} + (v^{-1} - v) H_w
            r.add_term(ws, p);
            r.add_term(w, p * (Laurent::v_power(-1) - Laurent::v_power(1)));
        }
    }
    return r;
}

HeckeElt hecke_mul_left_simple(const WeylGroup& g, int s, const HeckeElt& a) {
    HeckeElt r;
    for (const auto& [w, p] : a.support()) {
        int sw = g.left_mult(s, w);
        if (g.length(sw) > g.length(w)) {
            r.add_term(sw, p);
        } else {
            r.add_term(sw, p);
            r.add_term(w, p * (Laurent::v_power(-1) - Laurent::v_power(1)));
        }
    }
    return r;
}

HeckeElt hecke_multiply(const WeylGroup& g, const HeckeElt& a, const HeckeElt& b) {
    HeckeElt r;
    for (const auto& [w, p] : b.support()) {
        HeckeElt term = a;
        for (int s : g.word(w)) term = hecke_mul_right_simple(g, term, s);
        r += term.scaled(p);
    }
    return r;
}

HeckeElt hecke_mul_right_bs(const WeylGroup& g, const HeckeElt& a, int s) {
    HeckeElt r = hecke_mul_right_simple(g, a, s);
    r += a.scaled(Laurent::v_power(1));
    return r;
}

HeckeElt hecke_bar(const WeylGroup& g, const HeckeElt& a) {
    // bar(H_w) = (H_{w^{-1}})^{-1}. For w = s_1 ... s_k reduced this is
    // H_{s_1}^{-1} ... H_{s_k}^{-1}, with H_s^{-1} = H_s + (v - v^{-1}) H_e.
    HeckeElt r;
    for (const auto& [w, p] : a.support()) {
        HeckeElt term = HeckeElt::standard_basis(0);
        for (int s : g.word(w)) {
            HeckeElt t = hecke_mul_right_simple(g, term, s);
            t += term.scaled(Laurent::v_power(1) - Laurent::v_power(-1));
            term = t;
        }
        r += term.scaled(p.bar());
    }
    return r;
}

Laurent KLTable::p_poly(const WeylGroup& grp, int x, int w) const {
    Laurent hp = h_poly(x, w);
    Laurent p;
    int diff = grp.length(w) - grp.length(x);
    for (const auto& [e, c] : hp.coeffs()) {
        int num = diff - e;
        require(num >= 0 && num % 2 == 0, "h polynomial exponent out of KL range");
        p.add_term(num / 2, c); // exponent of q
    }
    return p;
}

HeckeElt KLTable::canonical_basis_elt(int w) const {
    HeckeElt b;
    for (const auto& [x, p] : h[static_cast<size_t>(w)]) b.add_term(x, p);
    return b;
}

KLTable kl_basis(const WeylGroup& g) {
    KLTable t;
    t.h.resize(static_cast<size_t>(g.size()));
    t.h[0][0] = Laurent(1);
    // elements are indexed by increasing length
    for (int w = 1; w < g.size(); ++w) {
        int s = g.word(w)[0]; // first left descent
        int sw = g.left_mult(s, w);
        // b_s b_{sw}
        HeckeElt prod = hecke_mul_left_simple(g, s, t.canonical_basis_elt(sw));
        prod += t.canonical_basis_elt(sw).scaled(Laurent::v_power(1));
        // subtract mu(x, sw) b_x over x < sw with sx < x
        for (const auto& [x, hx] : t.h[static_cast<size_t>(sw)]) {
            if (x == sw) continue;
            if (!g.left_descent(s, x)) continue;
            Int mu = hx.coeff(1);
            if (mu == 0) continue;
            prod -= t.canonical_basis_elt(x).scaled(Laurent::monomial(mu, 0));
        }
        // read off h_{x,w}
        for (const auto& [x, p] : prod.support()) {
            require(g.bruhat_leq(x, w), "KL support outside Bruhat interval");
            if (x == w) {
                require(p == Laurent(1), "h_{w,w} != 1 in KL recursion");
            } else {
                require(!p.is_zero() ? p.min_exp() >= 1 : true, "h_{x,w} not in vZ[v]");
                require(p.max_exp() <= g.length(w) - g.length(x), "KL degree bound violated");
            }
            t.h[static_cast<size_t>(w)][x] = p;
        }
    }
    return t;
}

InversionReport kl_inversion_check(const WeylGroup& g, const KLTable& t) {
    InversionReport rep;
    int w0 = g.longest();
    for (int y = 0; y < g.size(); ++y) {
        for (int x = 0; x < g.size(); ++x) {
            if (!g.bruhat_leq(x, y)) continue;
            Laurent sum;
            for (int z = 0; z < g.size(); ++z) {
                if (!g.bruhat_leq(x, z) || !g.bruhat_leq(z, y)) continue;
                Laurent term = t.p_poly(g, x, z) * t.p_poly(g, g.multiply(w0, y), g.multiply(w0, z));
                if ((g.length(z) - g.length(x)) % 2 != 0) term = -term;
                sum += term;
            }
            Laurent expect = (x == y) ? Laurent(1) : Laurent();
            if (!(sum == expect)) {
                rep.pass = false;
                rep.fail_x = x;
                rep.fail_y = y;
                rep.fail_value = sum;
                return rep;
            }
        }
    }
    return rep;
}

std::string InversionReport::to_string(const WeylGroup& g) const {
    if (pass) return "pass";
    std::ostringstream os;
    os << "FAIL at (x=" << g.word_string(fail_x) << ", y=" << g.word_string(fail_y)
       << "): sum = " << fail_value.to_string();
    return os.str();
}

} // namespace soergel
