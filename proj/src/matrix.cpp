#include "soergel/matrix.hpp"

#include <algorithm>

namespace soergel {

Mat mat_mul(const Mat& x, const Mat& y) {
    require(x.nc == y.nr, "mat_mul: shape mismatch");
    Mat r(x.nr, y.nc);
    for (int i = 0; i < x.nr; ++i)
        for (int k = 0; k < x.nc; ++k) {
            const Rat& xik = x.at(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < y.nc; ++j) {
                const Rat& ykj = y.at(k, j);
                if (ykj != 0) r.at(i, j) += xik * ykj;
            }
        }
    return r;
}

Mat mat_add(const Mat& x, const Mat& y) {
    require(x.nr == y.nr && x.nc == y.nc, "mat_add: shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

Mat mat_sub(const Mat& x, const Mat& y) {
    require(x.nr == y.nr && x.nc == y.nc, "mat_sub: shape mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

Mat mat_scale(const Rat& c, const Mat& x) {
    Mat r = x;
    for (auto& v : r.a) v *= c;
    return r;
}

Mat mat_transpose(const Mat& x) {
    Mat r(x.nc, x.nr);
    for (int i = 0; i < x.nr; ++i)
        for (int j = 0; j < x.nc; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

namespace {

// Normalize entries after a field op (only PrimeField needs it, and there the
// values stay small; for Q / Z_(ell) this is the identity).
// Inverse used during elimination: over LocalIntegers we eliminate in the
// fraction field Q (saturation is a separate, later step); a unit pivot is
// only required when the caller asked for unit pivots.
inline Rat elim_inv(const Rat& v, const Field& f) {
    if (f.kind() == RingKind::LocalIntegers) return Rat(1) / v;
    return f.inv(v);
}

std::vector<int> rref_impl(Mat& m, const Field& f, bool unit_pivots) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.nc && row < m.nr; ++col) {
        int piv = -1;
        for (int i = row; i < m.nr; ++i) {
            const Rat& v = m.at(i, col);
            if (v == 0) continue;
            if (!unit_pivots || f.is_unit(v)) {
                piv = i;
                break;
            }
        }
        if (piv < 0) {
            if (unit_pivots) {
                // No unit in this column; make sure the column is actually
                // clear below (otherwise the lattice is not saturated).
                for (int i = row; i < m.nr; ++i)
                    require(m.at(i, col) == 0,
                            "rref_unit_pivots: column without unit pivot (unsaturated data)");
            }
            continue;
        }
        if (piv != row)
            for (int j = 0; j < m.nc; ++j) std::swap(m.at(piv, j), m.at(row, j));
        Rat inv = elim_inv(m.at(row, col), f);
        for (int j = col; j < m.nc; ++j)
            if (m.at(row, j) != 0) m.at(row, j) = f.normalize(m.at(row, j) * inv);
        for (int i = 0; i < m.nr; ++i) {
            if (i == row) continue;
            const Rat c = m.at(i, col);
            if (c == 0) continue;
            for (int j = col; j < m.nc; ++j)
                if (m.at(row, j) != 0) m.at(i, j) = f.normalize(m.at(i, j) - c * m.at(row, j));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::vector<int> rref(Mat& m, const Field& f) { return rref_impl(m, f, false); }

std::vector<int> rref_unit_pivots(Mat& m, const Field& f) { return rref_impl(m, f, true); }

int rank(Mat m, const Field& f) { return static_cast<int>(rref(m, f).size()); }

Mat kernel(const Mat& m, const Field& f) {
    Mat r = m;
    std::vector<int> piv = rref(r, f);
    std::vector<bool> is_piv(m.nc, false);
    for (int c : piv) is_piv[c] = true;
    int nfree = m.nc - static_cast<int>(piv.size());
    Mat k(m.nc, nfree);
    int kc = 0;
    for (int c = 0; c < m.nc; ++c) {
        if (is_piv[c]) continue;
        k.at(c, kc) = 1;
        for (size_t pr = 0; pr < piv.size(); ++pr)
            if (r.at(static_cast<int>(pr), c) != 0)
                k.at(piv[pr], kc) = f.neg(r.at(static_cast<int>(pr), c));
        ++kc;
    }
    if (f.kind() == RingKind::LocalIntegers && nfree > 0) k = saturate_columns(k, f.ell());
    return k;
}

Mat solve(const Mat& m, const Mat& rhs, const Field& f) {
    require(m.nr == rhs.nr, "solve: shape mismatch");
    Mat aug(m.nr, m.nc + rhs.nc);
    for (int i = 0; i < m.nr; ++i) {
        for (int j = 0; j < m.nc; ++j) aug.at(i, j) = m.at(i, j);
        for (int j = 0; j < rhs.nc; ++j) aug.at(i, m.nc + j) = rhs.at(i, j);
    }
    std::vector<int> piv = rref(aug, f);
    for (int c : piv)
        require(c < m.nc, "solve: inconsistent linear system");
    Mat x(m.nc, rhs.nc);
    for (size_t pr = 0; pr < piv.size(); ++pr)
        for (int j = 0; j < rhs.nc; ++j) x.at(piv[pr], j) = aug.at(static_cast<int>(pr), m.nc + j);
    return x;
}

Rat det(Mat m, const Field& f) {
    require(m.nr == m.nc, "det: not square");
    Rat d(1);
    for (int col = 0; col < m.nc; ++col) {
        int piv = -1;
        for (int i = col; i < m.nr; ++i)
            if (m.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            for (int j = 0; j < m.nc; ++j) std::swap(m.at(piv, j), m.at(col, j));
            d = -d;
        }
        d = f.normalize(d * m.at(col, col));
        Rat inv = (f.kind() == RingKind::LocalIntegers) ? Rat(1) / m.at(col, col)
                                                        : f.inv(m.at(col, col));
        for (int i = col + 1; i < m.nr; ++i) {
            Rat c = f.normalize(m.at(i, col) * inv);
            if (c == 0) continue;
            for (int j = col; j < m.nc; ++j)
                if (m.at(col, j) != 0) m.at(i, j) = f.normalize(m.at(i, j) - c * m.at(col, j));
        }
    }
    return d;
}

Mat inverse(const Mat& m, const Field& f) {
    require(m.nr == m.nc, "inverse: not square");
    require(f.is_unit(det(m, f)), "inverse: determinant is not a unit");
    return solve(m, Mat::identity(m.nr), f);
}

namespace {
long val_in(const Rat& x, const Field& f) {
    if (f.kind() == RingKind::LocalIntegers) return valuation(x, f.ell());
    return 0;
}
} // namespace

ColumnEchelon column_echelon(Mat m, const Field& f, bool unit_pivots) {
    ColumnEchelon out;
    int nc = m.nc;
    std::vector<bool> used(static_cast<size_t>(nc), false);
    std::vector<int> chosen;
    for (int r = 0; r < m.nr; ++r) {
        int best = -1;
        long bestval = 0;
        for (int j = 0; j < nc; ++j) {
            if (used[static_cast<size_t>(j)] || m.at(r, j) == 0) continue;
            long v = val_in(m.at(r, j), f);
            if (best < 0 || v < bestval) {
                best = j;
                bestval = v;
            }
        }
        if (best < 0) continue;
        if (unit_pivots && bestval != 0)
            throw invariant_error("column_echelon: no unit pivot (lattice not saturated; bad prime?)");
        used[static_cast<size_t>(best)] = true;
        chosen.push_back(best);
        out.pivots.push_back(r);
        Rat inv = (f.kind() == RingKind::LocalIntegers) ? Rat(1) / m.at(r, best) : f.inv(m.at(r, best));
        for (int i = 0; i < m.nr; ++i)
            if (m.at(i, best) != 0) m.at(i, best) = f.normalize(m.at(i, best) * inv);
        for (int j = 0; j < nc; ++j) {
            if (j == best) continue;
            const Rat c = m.at(r, j);
            if (c == 0) continue;
            for (int i = 0; i < m.nr; ++i)
                if (m.at(i, best) != 0) m.at(i, j) = f.normalize(m.at(i, j) - c * m.at(i, best));
        }
    }
    out.basis = Mat(m.nr, static_cast<int>(chosen.size()));
    for (size_t j = 0; j < chosen.size(); ++j)
        for (int i = 0; i < m.nr; ++i) out.basis.at(i, static_cast<int>(j)) = m.at(i, chosen[j]);
    return out;
}


Mat saturate_columns(Mat v, long ell) {
    if (v.nc == 0) return v;
    Field fq(rationals());
    Field fp(prime_field(ell));
    // Clear the ell-part of each column's content so all entries are in O
    // and some entry is a unit.
    for (int j = 0; j < v.nc; ++j) {
        long minval = 0;
        bool seen = false;
        for (int i = 0; i < v.nr; ++i) {
            if (v.at(i, j) == 0) continue;
            long val = valuation(v.at(i, j), ell);
            minval = seen ? std::min(minval, val) : val;
            seen = true;
        }
        require(seen, "saturate_columns: zero column");
        if (minval != 0) {
            Rat scale(1);
            Int p(ell);
            Int pw;
            mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::abs(minval)));
            scale = (minval > 0) ? Rat(1) / Rat(pw) : Rat(pw);
            for (int i = 0; i < v.nr; ++i) v.at(i, j) *= scale;
        }
    }
    // While the reduction mod ell drops rank, divide a vanishing combination
    // by ell. Terminates: the lattice discriminant valuation strictly drops.
    for (;;) {
        Mat red(v.nr, v.nc);
        for (int i = 0; i < v.nr; ++i)
            for (int j = 0; j < v.nc; ++j) red.at(i, j) = Rat(reduce_mod(v.at(i, j), ell));
        Mat k = kernel(red, fp);
        if (k.nc == 0) return v;
        // Take the first kernel vector; its last nonzero coordinate indexes
        // the column we replace.
        int last = -1;
        for (int i = 0; i < k.nr; ++i)
            if (k.at(i, 0) != 0) last = i;
        std::vector<Rat> comb(static_cast<size_t>(v.nr), Rat(0));
        for (int i = 0; i < v.nr; ++i)
            for (int j = 0; j < v.nc; ++j)
                if (k.at(j, 0) != 0) comb[static_cast<size_t>(i)] += v.at(i, j) * k.at(j, 0);
        Rat invell = Rat(1) / Rat(ell);
        for (int i = 0; i < v.nr; ++i) v.at(i, last) = comb[static_cast<size_t>(i)] * invell;
    }
}

Mat reduce_mod_ell(const Mat& m, long ell) {
    Mat r(m.nr, m.nc);
    for (int i = 0; i < m.nr; ++i)
        for (int j = 0; j < m.nc; ++j) r.at(i, j) = Rat(reduce_mod(m.at(i, j), ell));
    return r;
}

bool mat_in_ring(const Mat& m, const Field& f) {
    for (const auto& x : m.a)
        if (!f.contains(x)) return false;
    return true;
}

} // namespace soergel
