#ifndef SOERGEL_MODULES_HPP
#define SOERGEL_MODULES_HPP

// Graded modules over the coinvariant algebra, presented as free graded
// E-modules with one commuting action matrix per degree-2 generator of C.
// Bott-Samelson extension, graded Hom spaces, Krull-Schmidt peeling and the
// inductive construction of the indecomposables D_w over Q, Z_(ell), F_ell.
//
// Grading: graded_rank(M)(v) = sum_i v^{deg_i}, and the shift M<n> lowers
// every degree by n, so graded_rank(M<n>) = v^{-n} graded_rank(M).

#include <map>
#include <optional>
#include <vector>

#include "soergel/coinvariant.hpp"
#include "soergel/hecke.hpp"

namespace soergel {

struct GradedModule {
    CoefRing ring;
    std::vector<int> degrees;  // degree per basis vector
    std::vector<Mat> actions;  // one per generator y_k, each raising degree by 2

    int rank() const { return static_cast<int>(degrees.size()); }
    Laurent graded_rank() const {
        Laurent r;
        for (int d : degrees) r += Laurent::v_power(d);
        return r;
    }
    // indices per degree, keys ascending
    std::map<int, std::vector<int>> degree_blocks() const;
    int min_degree() const;
    int max_degree() const;
};

GradedModule unit_module(const Coinvariants& C);
GradedModule shift(const GradedModule& m, int n);
GradedModule direct_sum(const GradedModule& a, const GradedModule& b);

// action matrix of a lattice element (degree-2 generator combination)
Mat module_lattice_action(const GradedModule& m, const IntVec& y);

// Structural invariants: degree homogeneity of the actions, pairwise
// commutation, annihilation by the invariant ideal (so the action factors
// through C). Throws invariant_error on violation.
void check_module_invariants(const Coinvariants& C, const GradedModule& m);

// One Bott-Samelson step: C tensor_{C_s} M <1>.
GradedModule bs_extend(const Coinvariants& C, const GradedModule& m, int s);
// Fold of bs_extend over the sequence; the LAST listed reflection ends up as
// the outermost tensor factor.
GradedModule bs_module(const Coinvariants& C, const std::vector<int>& seq);

// --- graded Hom -------------------------------------------------------------

struct HomSpace {
    // basis[k] = intertwiners raising degree by k (matrices rank(N) x rank(M));
    // echelonized deterministically, saturated over Z_(ell)
    std::map<int, std::vector<Mat>> basis;

    Laurent graded_rank() const {
        Laurent r;
        for (const auto& [k, b] : basis) r.add_term(k, static_cast<long>(b.size()));
        return r;
    }
    int ungraded_rank() const {
        int n = 0;
        for (const auto& [k, b] : basis) n += static_cast<int>(b.size());
        return n;
    }
    const std::vector<Mat>* piece(int k) const {
        auto it = basis.find(k);
        return it == basis.end() ? nullptr : &it->second;
    }
};

HomSpace graded_hom(const GradedModule& m, const GradedModule& n);

// --- base change -------------------------------------------------------------

GradedModule base_change_module(const GradedModule& m, CoefRing target);

// --- peeling -----------------------------------------------------------------

enum class PeelStatus { Split, NoHoms, NoSplitFound };

struct PeelOutcome {
    PeelStatus status = PeelStatus::NoHoms;
    GradedModule remainder;
    Mat embed;        // remainder coords -> input coords
    Mat project;      // input coords -> remainder coords
    Mat summand_proj; // idempotent onto the split copy, input coords
};

// Try to split one copy of D<n> off M. proj_basis / incl_basis are bases of
// Hom^0(M, D<n>) and Hom^0(D<n>, M). The search tries single basis elements,
// sums of two, then small coefficient combinations, up to `budget` attempts.
PeelOutcome peel_summand(const GradedModule& m, const GradedModule& d, int n,
                         const std::vector<Mat>& proj_basis, const std::vector<Mat>& incl_basis,
                         const Field& field, int budget);

// Convenience wrapper that computes the Hom bases itself.
PeelOutcome peel_summand(const GradedModule& m, const GradedModule& d, int n, int budget);

// degree-0 isomorphism search
bool modules_isomorphic(const GradedModule& a, const GradedModule& b, int budget);

// --- the library of indecomposables -------------------------------------------

struct Summand {
    int w = 0;
    int shift = 0;
};

struct DecompRecord {
    int w = 0;                    // the module decomposed was the extension used to build D_w
    std::vector<Summand> summands; // peeled copies, in peel order (excludes the remainder D_w)
    std::vector<Mat> projectors;   // orthogonal idempotents, incl. the remainder projector last
};

struct BuildOptions {
    int peel_budget = 4096;
};

class IndecTable {
  public:
    static IndecTable build(const Coinvariants& C, const BuildOptions& opts = {});

    // Reassemble a table from cached data. Revalidates the module
    // invariants, the graded ranks against the characters, and the Gram
    // consistency of the Hom table; throws on any mismatch. Decomposition
    // records are not part of the cache and stay empty.
    static IndecTable from_parts(const Coinvariants& C, std::vector<GradedModule> modules,
                                 std::vector<HeckeElt> characters,
                                 std::vector<std::vector<Laurent>> homs);

    const Coinvariants& coinv() const { return *c_; }
    const WeylGroup& group() const { return c_->group(); }
    const CoefRing& ring() const { return c_->ring(); }

    const GradedModule& d_module(int w) const { return d_[static_cast<size_t>(w)]; }
    const DecompRecord& record(int w) const { return records_[static_cast<size_t>(w)]; }

    // graded rank of Hom(D_x, D_w); table is symmetric
    const Laurent& hom_grk(int x, int w) const;
    // stalk polynomial h_{x,w} in the Kazhdan-Lusztig normalization
    // (h_{w,w} = 1, char-0 value v^{l(w)-l(x)} P_{x,w}(v^{-2}))
    const Laurent& stalk_poly(int x, int w) const;
    // the full canonical-basis-style element sum_x h_{x,w} H_x
    const HeckeElt& character(int w) const { return ch_[static_cast<size_t>(w)]; }

  private:
    const Coinvariants* c_ = nullptr;
    std::vector<GradedModule> d_;
    std::vector<DecompRecord> records_;
    std::vector<std::vector<Laurent>> hom_;  // [x][w]
    std::vector<HeckeElt> ch_;               // ch_[w].coeff(x) = h_{x,w}
    Laurent zero_;
};

// F(D_w over O) must be isomorphic to D_w over F, for every w.
struct ReductionReport {
    bool pass = true;
    std::vector<std::string> failures;
};
ReductionReport verify_reduction(const IndecTable& table_o, const IndecTable& table_f,
                                 int budget = 4096);

} // namespace soergel

#endif
