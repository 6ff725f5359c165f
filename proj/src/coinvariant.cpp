#include "soergel/coinvariant.hpp"

#include <algorithm>
#include <sstream>

namespace soergel {

namespace {

void gen_monos(int dim, int deg, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == dim - 1) {
        cur.push_back(deg);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = deg; e >= 0; --e) { // descending lex
        cur.push_back(e);
        gen_monos(dim, deg - e, cur, out);
        cur.pop_back();
    }
}

} // namespace

// --- PolyRing ----------------------------------------------------------------

PolyRing::PolyRing(const RootDatum& datum, int maxdeg)
    : datum_(datum), dim_(datum.dim), maxdeg_(maxdeg) {
    monos_.resize(static_cast<size_t>(maxdeg_ + 1));
    mono_index_.resize(static_cast<size_t>(maxdeg_ + 1));
    for (int m = 0; m <= maxdeg_; ++m) {
        std::vector<int> cur;
        gen_monos(dim_, m, cur, monos_[static_cast<size_t>(m)]);
        for (size_t i = 0; i < monos_[static_cast<size_t>(m)].size(); ++i)
            mono_index_[static_cast<size_t>(m)][monos_[static_cast<size_t>(m)][i]] = static_cast<int>(i);
    }
}

int PolyRing::mono_index(int m, const std::vector<int>& expo) const {
    auto it = mono_index_[static_cast<size_t>(m)].find(expo);
    require(it != mono_index_[static_cast<size_t>(m)].end(), "unknown monomial");
    return it->second;
}

HVec PolyRing::multiply_linear(int m, const HVec& f, const std::vector<Rat>& lin) const {
    require(m + 1 <= maxdeg_, "degree cap exceeded in multiply_linear");
    HVec out(static_cast<size_t>(num_monos(m + 1)), Rat(0));
    const auto& ms = monos_[static_cast<size_t>(m)];
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (int k = 0; k < dim_; ++k) {
            if (lin[static_cast<size_t>(k)] == 0) continue;
            std::vector<int> e = ms[i];
            e[static_cast<size_t>(k)] += 1;
            out[static_cast<size_t>(mono_index(m + 1, e))] += f[i] * lin[static_cast<size_t>(k)];
        }
    }
    return out;
}

HVec PolyRing::multiply(int m1, const HVec& f, int m2, const HVec& g) const {
    require(m1 + m2 <= maxdeg_, "degree cap exceeded in multiply");
    HVec out(static_cast<size_t>(num_monos(m1 + m2)), Rat(0));
    const auto& a = monos_[static_cast<size_t>(m1)];
    const auto& b = monos_[static_cast<size_t>(m2)];
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        for (size_t j = 0; j < g.size(); ++j) {
            if (g[j] == 0) continue;
            std::vector<int> e = a[i];
            for (int k = 0; k < dim_; ++k) e[static_cast<size_t>(k)] += b[j][static_cast<size_t>(k)];
            out[static_cast<size_t>(mono_index(m1 + m2, e))] += f[i] * g[j];
        }
    }
    return out;
}

HVec PolyRing::reflect(int s, int m, const HVec& f) const {
    // substitute y_k -> s(y_k) and expand; the image of each monomial is a
    // product of linear forms
    HVec out(static_cast<size_t>(num_monos(m)), Rat(0));
    const auto& ms = monos_[static_cast<size_t>(m)];
    const IntMat& refl = datum_.refl_y[static_cast<size_t>(s)];
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        HVec acc{Rat(1)}; // degree 0
        int d = 0;
        for (int k = 0; k < dim_; ++k) {
            std::vector<Rat> lin(static_cast<size_t>(dim_));
            for (int r = 0; r < dim_; ++r) lin[static_cast<size_t>(r)] = Rat(refl[static_cast<size_t>(r)][static_cast<size_t>(k)]);
            for (int rep = 0; rep < ms[i][static_cast<size_t>(k)]; ++rep) {
                acc = multiply_linear(d, acc, lin);
                ++d;
            }
        }
        for (size_t j = 0; j < acc.size(); ++j) out[j] += f[i] * acc[j];
    }
    return out;
}

HVec PolyRing::demazure(int s, int m, const HVec& f) const {
    require(m >= 1, "demazure needs positive degree");
    HVec num = f;
    HVec sf = reflect(s, m, f);
    for (size_t i = 0; i < num.size(); ++i) num[i] -= sf[i];
    // divide exactly by the linear form alpha_s^vee
    const IntVec& coroot = datum_.simple_coroots[static_cast<size_t>(s)];
    int k0 = -1;
    for (int k = 0; k < dim_; ++k)
        if (coroot[static_cast<size_t>(k)] != 0) {
            k0 = k;
            break;
        }
    require(k0 >= 0, "zero coroot");
    Rat c0(coroot[static_cast<size_t>(k0)]);
    HVec q(static_cast<size_t>(num_monos(m - 1)), Rat(0));
    // eliminate monomials with positive exponent at k0, highest exponent first
    std::map<std::vector<int>, Rat> rem;
    const auto& ms = monos_[static_cast<size_t>(m)];
    for (size_t i = 0; i < num.size(); ++i)
        if (num[i] != 0) rem[ms[i]] = num[i];
    while (!rem.empty()) {
        // find a monomial with maximal exponent at k0
        auto best = rem.end();
        int bestexp = -1;
        for (auto it = rem.begin(); it != rem.end(); ++it)
            if (it->first[static_cast<size_t>(k0)] > bestexp) {
                bestexp = it->first[static_cast<size_t>(k0)];
                best = it;
            }
        require(bestexp >= 1, "demazure: exact division failed");
        std::vector<int> qe = best->first;
        qe[static_cast<size_t>(k0)] -= 1;
        Rat qc = best->second / c0;
        q[static_cast<size_t>(mono_index(m - 1, qe))] += qc;
        // rem -= qc * y^qe * coroot-form
        for (int k = 0; k < dim_; ++k) {
            if (coroot[static_cast<size_t>(k)] == 0) continue;
            std::vector<int> e = qe;
            e[static_cast<size_t>(k)] += 1;
            auto it = rem.find(e);
            Rat delta = qc * Rat(coroot[static_cast<size_t>(k)]);
            if (it == rem.end()) {
                if (delta != 0) rem[e] = -delta;
            } else {
                it->second -= delta;
                if (it->second == 0) rem.erase(it);
            }
        }
    }
    return q;
}

HVec PolyRing::from_lattice(const IntVec& y) const {
    HVec v(static_cast<size_t>(num_monos(1)), Rat(0));
    for (int k = 0; k < dim_; ++k) {
        std::vector<int> e(static_cast<size_t>(dim_), 0);
        e[static_cast<size_t>(k)] = 1;
        v[static_cast<size_t>(mono_index(1, e))] = Rat(y[static_cast<size_t>(k)]);
    }
    return v;
}

// --- invariants ----------------------------------------------------------------

namespace {

Mat reflection_matrix(const PolyRing& S, int s, int m) {
    int n = S.num_monos(m);
    Mat r(n, n);
    for (int j = 0; j < n; ++j) {
        HVec e(static_cast<size_t>(n), Rat(0));
        e[static_cast<size_t>(j)] = 1;
        HVec img = S.reflect(s, m, e);
        for (int i = 0; i < n; ++i) r.at(i, j) = img[static_cast<size_t>(i)];
    }
    return r;
}

Mat stacked_coinvariant_kernel(const PolyRing& S, const Field& f, const std::vector<int>& refls, int m) {
    int n = S.num_monos(m);
    int ns = static_cast<int>(refls.size());
    Mat stack(n * ns, n);
    for (int t = 0; t < ns; ++t) {
        Mat rm = reflection_matrix(S, refls[static_cast<size_t>(t)], m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                stack.at(t * n + i, j) = f.normalize(rm.at(i, j) - (i == j ? Rat(1) : Rat(0)));
    }
    return kernel(stack, f);
}

} // namespace

Mat invariants_basis(const PolyRing& S, const Field& f, int m) {
    std::vector<int> all(static_cast<size_t>(S.datum().nsimple));
    for (int s = 0; s < S.datum().nsimple; ++s) all[static_cast<size_t>(s)] = s;
    return stacked_coinvariant_kernel(S, f, all, m);
}

Mat s_invariants_basis(const PolyRing& S, const Field& f, int s, int m) {
    return stacked_coinvariant_kernel(S, f, {s}, m);
}

// --- Coinvariants ----------------------------------------------------------------

Coinvariants::Coinvariants(const WeylGroup& group, CoefRing ring, int maxdeg)
    : group_(&group), ring_(ring), field_(ring), S_(group.datum(), maxdeg) {}

Coinvariants Coinvariants::build(const WeylGroup& group, CoefRing ring) {
    const RootDatum& d = group.datum();
    if (ring.kind != RingKind::Rationals) {
        if (!d.is_good_prime(ring.ell))
            throw config_error("prime " + std::to_string(ring.ell) + " is bad for " + d.label);
        if (!d.coinvariant_prime_ok(ring.ell))
            throw config_error("prime " + std::to_string(ring.ell) + " divides the lattice index for " +
                               d.label + "; use the GL preset for type A in this characteristic");
    }
    int top = group.length(group.longest());
    Coinvariants c(group, ring, top + 1);
    c.top_ = top;
    const Field& f = c.field_;

    c.inv_.resize(static_cast<size_t>(top + 2));
    for (int m = 0; m <= top + 1; ++m) c.inv_[static_cast<size_t>(m)] = invariants_basis(c.S_, f, m);
    require(c.inv_[0].nc == 1, "constants must be invariant");

    c.deg_.resize(static_cast<size_t>(top + 2));
    for (int m = 0; m <= top + 1; ++m) {
        int n = c.S_.num_monos(m);
        // span of (S^W_+ . S)_m: products of positive-degree invariant basis
        // elements with monomials
        std::vector<HVec> gens;
        for (int k = 1; k <= m; ++k) {
            const Mat& ib = c.inv_[static_cast<size_t>(k)];
            for (int j = 0; j < ib.nc; ++j) {
                HVec u(static_cast<size_t>(c.S_.num_monos(k)));
                for (int i = 0; i < ib.nr; ++i) u[static_cast<size_t>(i)] = ib.at(i, j);
                for (int g = 0; g < c.S_.num_monos(m - k); ++g) {
                    HVec mono(static_cast<size_t>(c.S_.num_monos(m - k)), Rat(0));
                    mono[static_cast<size_t>(g)] = 1;
                    gens.push_back(c.S_.multiply(k, u, m - k, mono));
                }
            }
        }
        Mat span(n, static_cast<int>(gens.size()));
        for (size_t j = 0; j < gens.size(); ++j)
            for (int i = 0; i < n; ++i) span.at(i, static_cast<int>(j)) = f.normalize(gens[j][static_cast<size_t>(i)]);
        ColumnEchelon ech = column_echelon(span, f, ring.kind == RingKind::LocalIntegers);
        DegreeData dd;
        dd.ideal_rref = ech.basis;
        dd.pivots = ech.pivots;
        std::vector<bool> isp(static_cast<size_t>(n), false);
        for (int p : ech.pivots) isp[static_cast<size_t>(p)] = true;
        for (int i = 0; i < n; ++i)
            if (!isp[static_cast<size_t>(i)]) dd.basis_monos.push_back(i);
        c.deg_[static_cast<size_t>(m)] = std::move(dd);
    }
    require(c.deg_[static_cast<size_t>(top + 1)].basis_monos.empty(),
            "coinvariant algebra nonzero above the top degree");

    int total = 0;
    for (int m = 0; m <= top; ++m) total += c.dim(m);
    if (total != group.size())
        throw invariant_error("rank of C is " + std::to_string(total) + ", expected |W| = " +
                              std::to_string(group.size()) + " (bad prime or bug)");
    // graded rank must match the Poincare polynomial of W
    Laurent expect;
    for (int w = 0; w < group.size(); ++w) expect += Laurent::v_power(2 * group.length(w));
    require(c.graded_rank() == expect, "graded rank of C differs from the Poincare polynomial");

    // multiplication by the degree-2 generators
    c.gen_mult_.resize(static_cast<size_t>(d.dim));
    for (int k = 0; k < d.dim; ++k) {
        c.gen_mult_[static_cast<size_t>(k)].resize(static_cast<size_t>(top + 1));
        for (int m = 0; m < top; ++m) {
            Mat mt(c.dim(m + 1), c.dim(m));
            for (int j = 0; j < c.dim(m); ++j) {
                std::vector<int> e = c.S_.monos(m)[static_cast<size_t>(c.deg_[static_cast<size_t>(m)].basis_monos[static_cast<size_t>(j)])];
                e[static_cast<size_t>(k)] += 1;
                HVec prod(static_cast<size_t>(c.S_.num_monos(m + 1)), Rat(0));
                prod[static_cast<size_t>(c.S_.mono_index(m + 1, e))] = 1;
                CVec red = c.project(m + 1, prod);
                for (int i = 0; i < c.dim(m + 1); ++i) mt.at(i, j) = red[static_cast<size_t>(i)];
            }
            c.gen_mult_[static_cast<size_t>(k)][static_cast<size_t>(m)] = std::move(mt);
        }
        // top degree maps to zero
        c.gen_mult_[static_cast<size_t>(k)][static_cast<size_t>(top)] = Mat(0, c.dim(top));
    }
    return c;
}

int Coinvariants::total_rank() const {
    int t = 0;
    for (int m = 0; m <= top_; ++m) t += dim(m);
    return t;
}

Laurent Coinvariants::graded_rank() const {
    Laurent r;
    for (int m = 0; m <= top_; ++m) r.add_term(2 * m, dim(m));
    return r;
}

CVec Coinvariants::project(int m, const HVec& f) const {
    if (m > top_) {
        // provably zero above the top degree
        return CVec();
    }
    const DegreeData& dd = deg_[static_cast<size_t>(m)];
    HVec g(f.size());
    for (size_t i = 0; i < f.size(); ++i) g[i] = field_.normalize(f[i]);
    for (size_t j = 0; j < dd.pivots.size(); ++j) {
        int p = dd.pivots[j];
        const Rat c = g[static_cast<size_t>(p)];
        if (c == 0) continue;
        for (int i = 0; i < dd.ideal_rref.nr; ++i)
            if (dd.ideal_rref.at(i, static_cast<int>(j)) != 0)
                g[static_cast<size_t>(i)] = field_.normalize(g[static_cast<size_t>(i)] - c * dd.ideal_rref.at(i, static_cast<int>(j)));
    }
    CVec out(dd.basis_monos.size());
    for (size_t i = 0; i < dd.basis_monos.size(); ++i) out[i] = g[static_cast<size_t>(dd.basis_monos[i])];
    return out;
}

HVec Coinvariants::lift(int m, const CVec& c) const {
    HVec out(static_cast<size_t>(S_.num_monos(m)), Rat(0));
    const auto& bm = deg_[static_cast<size_t>(m)].basis_monos;
    require(c.size() == bm.size(), "lift: wrong coordinate size");
    for (size_t i = 0; i < bm.size(); ++i) out[static_cast<size_t>(bm[i])] = c[i];
    return out;
}

Mat Coinvariants::lattice_action(const IntVec& y, int m) const {
    Mat out(dim(m + 1), dim(m));
    for (int k = 0; k < datum().dim; ++k) {
        if (y[static_cast<size_t>(k)] == 0) continue;
        out = mat_add(out, mat_scale(Rat(y[static_cast<size_t>(k)]), generator_action(k, m)));
    }
    for (auto& x : out.a) x = field_.normalize(x);
    return out;
}

CVec Coinvariants::multiply(int m1, const CVec& a, int m2, const CVec& b) const {
    if (m1 + m2 > top_) return CVec();
    return project(m1 + m2, S_.multiply(m1, lift(m1, a), m2, lift(m2, b)));
}

CVec Coinvariants::demazure_c(int s, int m, const CVec& f) const {
    return project(m - 1, S_.demazure(s, m, lift(m, f)));
}

CVec Coinvariants::reflect_c(int s, int m, const CVec& f) const {
    return project(m, S_.reflect(s, m, lift(m, f)));
}

const CsData& Coinvariants::cs_data(int s) const {
    auto it = cs_cache_.find(s);
    if (it != cs_cache_.end()) return it->second;
    CsData cd;
    cd.s = s;
    cd.delta = datum().delta(s);
    cd.cs_basis.resize(static_cast<size_t>(top_ + 1));
    for (int m = 0; m <= top_; ++m) {
        Mat sk = s_invariants_basis(S_, field_, s, m);
        Mat proj(dim(m), sk.nc);
        for (int j = 0; j < sk.nc; ++j) {
            HVec v(static_cast<size_t>(sk.nr));
            for (int i = 0; i < sk.nr; ++i) v[static_cast<size_t>(i)] = sk.at(i, j);
            CVec red = project(m, v);
            for (int i = 0; i < dim(m); ++i) proj.at(i, j) = red[static_cast<size_t>(i)];
        }
        cd.cs_basis[static_cast<size_t>(m)] = column_echelon(proj, field_, false).basis;
    }
    // verify that {1, delta_s} is a C_s-basis of C: in each degree the square
    // matrix [C_s,m | delta_s . C_s,m-1] must be invertible over the ring
    for (int m = 0; m <= top_; ++m) {
        int a = cd.cs_basis[static_cast<size_t>(m)].nc;
        int b = (m >= 1) ? cd.cs_basis[static_cast<size_t>(m - 1)].nc : 0;
        if (a + b != dim(m))
            throw invariant_error("C is not free of rank 2 over C_s: dimension mismatch in degree " +
                                  std::to_string(m));
        Mat sq(dim(m), dim(m));
        for (int j = 0; j < a; ++j)
            for (int i = 0; i < dim(m); ++i) sq.at(i, j) = cd.cs_basis[static_cast<size_t>(m)].at(i, j);
        if (b > 0) {
            Mat da = lattice_action(cd.delta, m - 1);
            Mat db = mat_mul(da, cd.cs_basis[static_cast<size_t>(m - 1)]);
            for (int j = 0; j < b; ++j)
                for (int i = 0; i < dim(m); ++i) sq.at(i, a + j) = db.at(i, j);
        }
        if (dim(m) > 0 && !field_.is_unit(det(sq, field_)))
            throw invariant_error("C is not free of rank 2 over C_s in degree " + std::to_string(m));
    }
    return cs_cache_.emplace(s, std::move(cd)).first->second;
}

std::pair<CVec, CVec> Coinvariants::cs_decompose(int s, int m, const CVec& f) const {
    const CsData& cd = cs_data(s);
    if (m == 0) return {f, CVec()};
    HVec fl = lift(m, f);
    HVec df = S_.demazure(s, m, fl);
    CVec b = project(m - 1, df);
    HVec dl = S_.from_lattice(cd.delta);
    HVec prod = S_.multiply(1, dl, m - 1, df);
    CVec corr = project(m, prod);
    CVec a(f.size());
    for (size_t i = 0; i < f.size(); ++i) a[i] = field_.normalize(f[i] - corr[i]);
    return {a, b};
}

bool Coinvariants::in_cs(int s, int m, const CVec& f) const {
    const CsData& cd = cs_data(s);
    const Mat& b = cd.cs_basis[static_cast<size_t>(m)];
    Mat aug(b.nr, b.nc + 1);
    for (int i = 0; i < b.nr; ++i) {
        for (int j = 0; j < b.nc; ++j) aug.at(i, j) = b.at(i, j);
        aug.at(i, b.nc) = f[static_cast<size_t>(i)];
    }
    Field fld = (ring_.kind == RingKind::LocalIntegers) ? Field(rationals()) : field_;
    return rank(aug, fld) == rank(b, fld);
}

// --- base change ----------------------------------------------------------------

BaseChangeReport base_change_check(const WeylGroup& group, long ell) {
    BaseChangeReport rep;
    auto fail = [&](const std::string& s) {
        rep.pass = false;
        rep.failures.push_back(s);
    };
    Coinvariants cq = Coinvariants::build(group, rationals());
    Coinvariants co = Coinvariants::build(group, local_integers(ell));
    Coinvariants cf = Coinvariants::build(group, prime_field(ell));
    Field fp{prime_field(ell)};
    int top = cq.top_degree();
    const PolyRing& S = co.poly();

    for (int m = 0; m <= top + 1; ++m) {
        // invariants: K(inv_O) and F(inv_O) are bases
        const Mat& io = co.invariants(m);
        const Mat& iq = cq.invariants(m);
        const Mat& iff = cf.invariants(m);
        if (io.nc != iq.nc)
            fail("invariants rank over Q differs from Z_(ell) in degree " + std::to_string(m));
        if (io.nc != iff.nc)
            fail("invariants rank over F differs from Z_(ell) in degree " + std::to_string(m));
        if (io.nc > 0 && rank(reduce_mod_ell(io, ell), fp) != iff.nc)
            fail("reduction of saturated invariants is not an F-basis in degree " + std::to_string(m));
        // s-invariants (Lemma on S^s)
        for (int s = 0; s < group.nsimple(); ++s) {
            Mat so = s_invariants_basis(S, co.field(), s, m);
            Mat sf = s_invariants_basis(cf.poly(), cf.field(), s, m);
            Mat sq = s_invariants_basis(cq.poly(), cq.field(), s, m);
            if (so.nc != sq.nc || so.nc != sf.nc)
                fail("s-invariants rank mismatch in degree " + std::to_string(m));
            else if (so.nc > 0 && rank(reduce_mod_ell(so, ell), fp) != sf.nc)
                fail("reduction of saturated s-invariants is not a basis in degree " + std::to_string(m));
        }
    }
    for (int m = 0; m <= top; ++m) {
        if (cq.dim(m) != co.dim(m) || co.dim(m) != cf.dim(m))
            fail("dim C_m differs across rings in degree " + std::to_string(m));
        if (cq.basis_monos(m) != co.basis_monos(m) || co.basis_monos(m) != cf.basis_monos(m))
            fail("C basis monomials differ across rings in degree " + std::to_string(m));
        const Mat& id_o = co.ideal_rref(m);
        const Mat& id_f = cf.ideal_rref(m);
        if (id_o.nc > 0 && rank(reduce_mod_ell(id_o, ell), fp) != id_f.nc)
            fail("reduction of the ideal lattice is not the F ideal in degree " + std::to_string(m));
    }
    if (co.total_rank() != group.size()) fail("rank of C over Z_(ell) is not |W|");
    // rank-2 freeness over every ring (construction throws on failure)
    for (int s = 0; s < group.nsimple(); ++s) {
        try {
            cq.cs_data(s);
            co.cs_data(s);
            cf.cs_data(s);
        } catch (const invariant_error& e) {
            fail(std::string("C_s freeness: ") + e.what());
        }
    }
    return rep;
}

} // namespace soergel
