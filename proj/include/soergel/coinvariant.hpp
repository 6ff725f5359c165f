#ifndef SOERGEL_COINVARIANT_HPP
#define SOERGEL_COINVARIANT_HPP

// The symmetric algebra S = Sym(h) on the lattice Y with its W-action and
// Demazure operators, the ideal generated by positive-degree invariants, and
// the coinvariant algebra C = S / S^W_+ over Q, Z_(ell) or F_ell, with the
// subring images C_s and the rank-2 decomposition along {1, delta_s}.
//
// Degree bookkeeping: h sits in graded degree 2, so all code here works with
// the "internal" polynomial degree m (the graded degree is 2m). The top
// nonzero internal degree of C is l(w_0).

#include <map>
#include <vector>

#include "soergel/laurent.hpp"
#include "soergel/matrix.hpp"
#include "soergel/ring.hpp"
#include "soergel/rootdata.hpp"

namespace soergel {

using HVec = std::vector<Rat>; // homogeneous S_m element over the monomial basis
using CVec = std::vector<Rat>; // element of C_m over the chosen quotient basis

// Monomial bases of S_m, in descending lexicographic order on exponent
// vectors (deterministic pivot rule for every echelonization downstream).
class PolyRing {
  public:
    PolyRing(const RootDatum& datum, int maxdeg);

    int dim() const { return dim_; }
    int maxdeg() const { return maxdeg_; }
    int num_monos(int m) const { return static_cast<int>(monos_[static_cast<size_t>(m)].size()); }
    const std::vector<std::vector<int>>& monos(int m) const { return monos_[static_cast<size_t>(m)]; }
    int mono_index(int m, const std::vector<int>& expo) const;

    // f * (linear form sum_k lin[k] y_k), degree m -> m+1
    HVec multiply_linear(int m, const HVec& f, const std::vector<Rat>& lin) const;
    // general product, degrees m1 + m2
    HVec multiply(int m1, const HVec& f, int m2, const HVec& g) const;
    // action of the simple reflection s on S_m
    HVec reflect(int s, int m, const HVec& f) const;
    // Demazure operator: (f - s f) / alpha_s^vee, degree m -> m-1.
    // Exact division; throws invariant_error if the division fails.
    HVec demazure(int s, int m, const HVec& f) const;

    // degree-1 element of S from a lattice vector
    HVec from_lattice(const IntVec& y) const;

    const RootDatum& datum() const { return datum_; }

  private:
    RootDatum datum_;
    int dim_;
    int maxdeg_;
    std::vector<std::vector<std::vector<int>>> monos_;       // [m] -> exponent vectors
    std::vector<std::map<std::vector<int>, int>> mono_index_; // [m]
};

// Basis of the W-invariants (S^W)_m: columns in monomial coordinates.
// Over LocalIntegers the basis is saturated.
Mat invariants_basis(const PolyRing& S, const Field& f, int m);
// Same for the invariants of a single simple reflection.
Mat s_invariants_basis(const PolyRing& S, const Field& f, int s, int m);

struct CsData {
    int s = -1;
    IntVec delta;                 // lattice element with <alpha_s, delta> = 1
    std::vector<Mat> cs_basis;    // per internal degree: columns = basis of C_s in C coords
};

class Coinvariants {
  public:
    static Coinvariants build(const WeylGroup& group, CoefRing ring);

    const WeylGroup& group() const { return *group_; }
    const RootDatum& datum() const { return group_->datum(); }
    const CoefRing& ring() const { return ring_; }
    const Field& field() const { return field_; }
    const PolyRing& poly() const { return S_; }

    int top_degree() const { return top_; } // internal; graded top = 2 l(w0)
    int dim(int m) const {
        if (m < 0 || m > top_) return 0;
        return static_cast<int>(deg_[static_cast<size_t>(m)].basis_monos.size());
    }
    int total_rank() const;
    Laurent graded_rank() const; // sum_m dim(C_m) v^{2m}

    // the monomials representing the basis of C_m
    const std::vector<int>& basis_monos(int m) const { return deg_[static_cast<size_t>(m)].basis_monos; }
    // echelonized basis of the ideal piece (S^W_+ S)_m, rows over monomials
    const Mat& ideal_rref(int m) const { return deg_[static_cast<size_t>(m)].ideal_rref; }
    const std::vector<int>& ideal_pivots(int m) const { return deg_[static_cast<size_t>(m)].pivots; }
    // basis of (S^W)_m used to span the ideal
    const Mat& invariants(int m) const { return inv_[static_cast<size_t>(m)]; }

    // S_m -> C_m (reduce modulo the ideal)
    CVec project(int m, const HVec& f) const;
    // C_m -> S_m (monomial representatives)
    HVec lift(int m, const CVec& c) const;

    // multiplication by the degree-2 generator y_k: C_m -> C_{m+1}
    const Mat& generator_action(int k, int m) const {
        return gen_mult_[static_cast<size_t>(k)][static_cast<size_t>(m)];
    }
    // multiplication by a general lattice element
    Mat lattice_action(const IntVec& y, int m) const;

    // product of two coinvariant classes (via lifts)
    CVec multiply(int m1, const CVec& a, int m2, const CVec& b) const;
    // Demazure operator induced on C (the ideal is stable)
    CVec demazure_c(int s, int m, const CVec& f) const;
    // reflection action induced on C
    CVec reflect_c(int s, int m, const CVec& f) const;

    // C_s data; built lazily per reflection and cached
    const CsData& cs_data(int s) const;
    // f in C_m -> (a, b) with f = a + delta_s * b, a in C_s (degree m),
    // b in C_s (degree m-1)
    std::pair<CVec, CVec> cs_decompose(int s, int m, const CVec& f) const;
    // membership of a class in the image C_s (degreewise subspace test)
    bool in_cs(int s, int m, const CVec& f) const;

  private:
    Coinvariants(const WeylGroup& group, CoefRing ring, int maxdeg);

    struct DegreeData {
        Mat ideal_rref;
        std::vector<int> pivots;
        std::vector<int> basis_monos;
    };

    const WeylGroup* group_;
    CoefRing ring_;
    Field field_;
    PolyRing S_;
    int top_ = 0;
    std::vector<DegreeData> deg_;
    std::vector<Mat> inv_;                      // invariant bases per degree
    std::vector<std::vector<Mat>> gen_mult_;    // [k][m]
    mutable std::map<int, CsData> cs_cache_;
};

// Degreewise base-change report for the invariants, the s-invariants and C
// itself: ranks over Q, over Z_(ell) and over F_ell must agree, and the
// reductions of the saturated Z_(ell) bases must span the F_ell spaces.
struct BaseChangeReport {
    bool pass = true;
    std::vector<std::string> failures;
};
BaseChangeReport base_change_check(const WeylGroup& group, long ell);

} // namespace soergel

#endif
