#ifndef SOERGEL_RING_HPP
#define SOERGEL_RING_HPP

// Coefficient rings. Three kinds are supported:
//   Rationals      — the field Q
//   LocalIntegers  — Z localized at a prime ell (exact rationals with
//                    denominator coprime to ell)
//   PrimeField     — F_ell, elements stored as rationals n/1 with 0 <= n < ell
//
// A Field object carries the ring descriptor and implements the scalar
// operations so that all linear algebra runs through a single code path.

#include <string>

#include "soergel/numeric.hpp"

namespace soergel {

enum class RingKind { Rationals, LocalIntegers, PrimeField };

struct CoefRing {
    RingKind kind = RingKind::Rationals;
    long ell = 0; // prime; 0 for Rationals

    bool operator==(const CoefRing& o) const { return kind == o.kind && ell == o.ell; }
    bool is_field() const { return kind != RingKind::LocalIntegers; }

    std::string name() const {
        switch (kind) {
            case RingKind::Rationals: return "Q";
            case RingKind::LocalIntegers: return "Z(" + std::to_string(ell) + ")";
            case RingKind::PrimeField: return "F" + std::to_string(ell);
        }
        return "?";
    }
    // one-letter tag used in file names and configs
    std::string tag() const {
        switch (kind) {
            case RingKind::Rationals: return "K";
            case RingKind::LocalIntegers: return "O";
            case RingKind::PrimeField: return "F";
        }
        return "?";
    }
};

inline CoefRing rationals() { return CoefRing{RingKind::Rationals, 0}; }
inline CoefRing local_integers(long ell) { return CoefRing{RingKind::LocalIntegers, ell}; }
inline CoefRing prime_field(long ell) { return CoefRing{RingKind::PrimeField, ell}; }

class Field {
  public:
    explicit Field(CoefRing ring) : ring_(ring) {}

    const CoefRing& ring() const { return ring_; }
    long ell() const { return ring_.ell; }
    RingKind kind() const { return ring_.kind; }

    // Bring a raw rational into the ring's canonical form.
    Rat normalize(const Rat& a) const {
        if (ring_.kind != RingKind::PrimeField) return a;
        return Rat(reduce_mod(a, ring_.ell));
    }

    Rat add(const Rat& a, const Rat& b) const { return normalize(a + b); }
    Rat sub(const Rat& a, const Rat& b) const { return normalize(a - b); }
    Rat mul(const Rat& a, const Rat& b) const { return normalize(a * b); }
    Rat neg(const Rat& a) const { return normalize(-a); }

    Rat inv(const Rat& a) const {
        require(a != 0, "division by zero");
        if (ring_.kind == RingKind::LocalIntegers)
            require(valuation(a, ring_.ell) == 0, "inverting a non-unit of Z(ell)");
        return normalize(Rat(1) / a);
    }
    Rat div(const Rat& a, const Rat& b) const { return mul(a, inv(b)); }

    // Units: nonzero in a field; valuation zero over the local ring.
    bool is_unit(const Rat& a) const {
        if (a == 0) return false;
        if (ring_.kind == RingKind::LocalIntegers) return valuation(a, ring_.ell) == 0;
        return true;
    }

    // Membership check (meaningful over LocalIntegers / PrimeField).
    bool contains(const Rat& a) const {
        switch (ring_.kind) {
            case RingKind::Rationals: return true;
            case RingKind::LocalIntegers: return is_local_integer(a, ring_.ell);
            case RingKind::PrimeField: return is_integer(a) && a >= 0 && a < ring_.ell;
        }
        return false;
    }

  private:
    CoefRing ring_;
};

} // namespace soergel

#endif
