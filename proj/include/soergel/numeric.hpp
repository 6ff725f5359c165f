#ifndef SOERGEL_NUMERIC_HPP
#define SOERGEL_NUMERIC_HPP

// Exact scalar arithmetic. All number crunching in the engine is done with
// arbitrary-precision rationals (GMP); there is no floating point anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "soergel/errors.hpp"

namespace soergel {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// ell-adic valuation of a nonzero integer.
inline long valuation(const Int& n, long ell) {
    require(n != 0, "valuation of zero");
    Int m = n, q, r;
    long v = 0;
    for (;;) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(ell));
        if (r != 0) return v;
        m = q;
        ++v;
    }
}

// ell-adic valuation of a nonzero rational.
inline long valuation(const Rat& r, long ell) {
    return valuation(Int(r.get_num()), ell) - valuation(Int(r.get_den()), ell);
}

// Is r in Z localized at ell, i.e. denominator coprime to ell?
inline bool is_local_integer(const Rat& r, long ell) {
    if (r == 0) return true;
    return valuation(Int(r.get_den()), ell) == 0;
}

// Reduce a local integer mod ell into [0, ell).
inline long reduce_mod(const Rat& r, long ell) {
    if (r == 0) return 0;
    require(is_local_integer(r, ell), "reduce_mod: denominator not coprime to ell");
    Int num = r.get_num(), den = r.get_den();
    unsigned long ul = static_cast<unsigned long>(ell);
    long a = static_cast<long>(mpz_fdiv_ui(num.get_mpz_t(), ul));
    long b = static_cast<long>(mpz_fdiv_ui(den.get_mpz_t(), ul));
    // b is invertible mod ell
    long binv = 1, base = b % ell, e = ell - 2; // ell prime: Fermat
    while (e > 0) {
        if (e & 1) binv = static_cast<long>((static_cast<std::int64_t>(binv) * base) % ell);
        base = static_cast<long>((static_cast<std::int64_t>(base) * base) % ell);
        e >>= 1;
    }
    return static_cast<long>((static_cast<std::int64_t>(a) * binv) % ell);
}

// Serialize exactly, "p" or "p/q".
inline std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

} // namespace soergel

#endif
