#ifndef SOERGEL_MATRIX_HPP
#define SOERGEL_MATRIX_HPP

// Dense exact matrices and the linear algebra the engine needs: reduced row
// echelon form, kernels, solving, determinants, inverses, and saturation of
// lattices over Z localized at a prime (so that freeness of quotients and Hom
// lattices is certified, not assumed).

#include <vector>

#include "soergel/ring.hpp"

namespace soergel {

struct Mat {
    int nr = 0, nc = 0;
    std::vector<Rat> a; // row major

    Mat() = default;
    Mat(int r, int c) : nr(r), nc(c), a(static_cast<size_t>(r) * c, Rat(0)) {}

    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * nc + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * nc + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const Mat& o) const { return nr == o.nr && nc == o.nc && a == o.a; }
    bool is_zero() const {
        for (const auto& x : a)
            if (x != 0) return false;
        return true;
    }
};

Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_add(const Mat& x, const Mat& y);
Mat mat_sub(const Mat& x, const Mat& y);
Mat mat_scale(const Rat& c, const Mat& x);
Mat mat_transpose(const Mat& x);

// Reduced row echelon form in place (field operations; over LocalIntegers the
// pivots are chosen by position only, which is fine because callers that need
// unit pivots use rref_unit_pivots below). Returns pivot columns.
std::vector<int> rref(Mat& m, const Field& f);

// Echelonize choosing only unit pivots (for LocalIntegers). Fails with
// invariant_error if some nonzero row has no unit entry.
std::vector<int> rref_unit_pivots(Mat& m, const Field& f);

int rank(Mat m, const Field& f);

// Kernel of m (right null space): columns of the result form an echelonized
// basis, deterministic. Over LocalIntegers the basis is saturated.
Mat kernel(const Mat& m, const Field& f);

// Solve m * x = rhs (multiple right-hand sides, columns of rhs). Throws
// invariant_error if inconsistent. Returns one solution (free vars = 0).
Mat solve(const Mat& m, const Mat& rhs, const Field& f);

Rat det(Mat m, const Field& f);

// Inverse of a square matrix; requires det to be a unit of the ring.
Mat inverse(const Mat& m, const Field& f);

// Column echelon form using unimodular column operations only, so the column
// span as a module over the ring is preserved (over Z_(ell) the pivot of
// minimal valuation is chosen per row). Reduced: pivot entries are 1 and
// pivot rows are cleared in the other retained columns. With `unit_pivots`
// a non-unit pivot over Z_(ell) throws (the span is not saturated).
struct ColumnEchelon {
    Mat basis;               // retained columns
    std::vector<int> pivots; // pivot row per column, strictly increasing
};
ColumnEchelon column_echelon(Mat m, const Field& f, bool unit_pivots);

// --- lattice saturation over Z_(ell) ------------------------------------

// Given columns spanning a Q-subspace, return a basis (same column span over
// Q) of the saturated lattice span_Q(cols) ∩ O^n, where O = Z_(ell): every
// entry lies in O and the reduction mod ell still has full column rank.
// Columns must be Q-linearly independent.
Mat saturate_columns(Mat v, long ell);

// Entrywise reduction of an O-matrix to F_ell.
Mat reduce_mod_ell(const Mat& m, long ell);

// Entrywise check that a matrix has entries in the ring.
bool mat_in_ring(const Mat& m, const Field& f);

} // namespace soergel

#endif
