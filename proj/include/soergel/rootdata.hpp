#ifndef SOERGEL_ROOTDATA_HPP
#define SOERGEL_ROOTDATA_HPP

// Based root data for the supported presets, and finite Weyl groups with
// reduced-word and Bruhat-order structure.
//
// Coordinates: Y (cocharacter lattice) and X (character lattice) are spanned
// by dual bases, so the pairing <x, y> is the standard dot product in both
// families of presets:
//   GL_n    : X = Y = Z^n, alpha_i = e_i - e_{i+1} on both sides.
//   adjoint : X = root lattice (basis the simple roots), Y = coweight
//             lattice (basis the fundamental coweights).
// cartan[i][j] = <alpha_i, alpha_j^vee>. For G2 this gives [[2,-1],[-3,2]]
// with the first simple root short.

#include <string>
#include <vector>

#include "soergel/errors.hpp"

namespace soergel {

enum class PresetFamily { GL, A, B, C, D, G2, F4 };

using IntVec = std::vector<long>;
using IntMat = std::vector<IntVec>; // row major, mat[i][j]

struct RootDatum {
    std::string label;    // e.g. "A2", "GL3"
    PresetFamily family;
    int rank_param = 0;   // the n in A_n / GL_n / ...
    int dim = 0;          // rank of Y
    int nsimple = 0;      // number of simple reflections
    std::vector<IntVec> simple_roots;   // X coordinates
    std::vector<IntVec> simple_coroots; // Y coordinates
    IntMat cartan;                      // cartan[i][j] = <alpha_i, alpha_j^vee>
    std::vector<IntMat> refl_y;         // matrix of s_i on Y (column action)

    // <alpha_i, y> for y in Y coordinates.
    long pair_root(int i, const IntVec& y) const;
    // A lattice element delta with <alpha_i, delta> = 1.
    IntVec delta(int i) const;
    // s_i acting on Y.
    IntVec reflect_y(int i, const IntVec& y) const;

    // Number of positive roots (computed from the root system orbit).
    int num_positive_roots() const;

    // Good primes per component type: 2 is excluded outside type A,
    // 3 for types E/F/G, 5 for E8.
    bool is_good_prime(long ell) const;

    // Additional constraint imposed by the adjoint type A lattice choice:
    // the coinvariant construction over Z_(ell) / F_ell also needs
    // ell coprime to n+1 (use the GL_{n+1} preset otherwise).
    bool coinvariant_prime_ok(long ell) const;
};

RootDatum build_root_datum(const std::string& preset);

// --- Weyl group -----------------------------------------------------------

constexpr int kDefaultWeylCap = 10000;

// Elements are identified by dense indices 0..size()-1, sorted by
// (length, canonical word lexicographically); index 0 is the identity.
class WeylGroup {
  public:
    explicit WeylGroup(const RootDatum& datum, int cap = kDefaultWeylCap);

    const RootDatum& datum() const { return datum_; }
    int size() const { return n_; }
    int nsimple() const { return datum_.nsimple; }

    int identity() const { return 0; }
    int simple(int s) const { return simple_[static_cast<size_t>(s)]; }
    int longest() const { return w0_; }

    int length(int w) const { return length_[static_cast<size_t>(w)]; }
    const std::vector<int>& word(int w) const { return words_[static_cast<size_t>(w)]; }
    std::string word_string(int w) const; // "e" or "1.2.1" (1-based letters)
    int from_word(const std::vector<int>& word) const;

    int left_mult(int s, int w) const { return left_[static_cast<size_t>(s)][static_cast<size_t>(w)]; }
    int right_mult(int w, int s) const { return right_[static_cast<size_t>(s)][static_cast<size_t>(w)]; }
    int multiply(int x, int y) const;
    int inverse(int w) const { return inv_[static_cast<size_t>(w)]; }

    bool left_descent(int s, int w) const { return length(left_mult(s, w)) < length(w); }
    bool right_descent(int w, int s) const { return length(right_mult(w, s)) < length(w); }

    bool bruhat_leq(int x, int y) const {
        return bruhat_[static_cast<size_t>(x)][static_cast<size_t>(y)] != 0;
    }
    // all x with x <= y, ascending by index order
    std::vector<int> bruhat_interval_below(int y) const;

    // Action matrix of w on Y.
    const IntMat& matrix(int w) const { return mats_[static_cast<size_t>(w)]; }

    // Brute-force subword test against one fixed reduced word of y
    // (independent characterization of Bruhat order, used by tests).
    bool bruhat_leq_subword(int x, int y) const;

  private:
    RootDatum datum_;
    int n_ = 0;
    int w0_ = 0;
    std::vector<int> simple_;
    std::vector<int> length_;
    std::vector<int> inv_;
    std::vector<std::vector<int>> left_, right_; // [s][w]
    std::vector<std::vector<int>> words_;
    std::vector<std::vector<char>> bruhat_;
    std::vector<IntMat> mats_;
};

} // namespace soergel

#endif
