#include "soergel/modules.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace soergel {

namespace {

// matrix product normalized into the ring (mod-ell reduction over F_ell)
Mat mmul(const Mat& a, const Mat& b, const Field& f) {
    Mat r = mat_mul(a, b);
    if (f.kind() == RingKind::PrimeField)
        for (auto& x : r.a) x = f.normalize(x);
    return r;
}

void mnorm(Mat& m, const Field& f) {
    if (f.kind() == RingKind::PrimeField)
        for (auto& x : m.a) x = f.normalize(x);
}

} // namespace

std::map<int, std::vector<int>> GradedModule::degree_blocks() const {
    std::map<int, std::vector<int>> b;
    for (int i = 0; i < rank(); ++i) b[degrees[static_cast<size_t>(i)]].push_back(i);
    return b;
}

int GradedModule::min_degree() const {
    require(rank() > 0, "min_degree of the zero module");
    return *std::min_element(degrees.begin(), degrees.end());
}

int GradedModule::max_degree() const {
    require(rank() > 0, "max_degree of the zero module");
    return *std::max_element(degrees.begin(), degrees.end());
}

GradedModule unit_module(const Coinvariants& C) {
    GradedModule m;
    m.ring = C.ring();
    m.degrees = {0};
    m.actions.assign(static_cast<size_t>(C.datum().dim), Mat(1, 1));
    return m;
}

GradedModule shift(const GradedModule& m, int n) {
    GradedModule r = m;
    for (auto& d : r.degrees) d -= n;
    return r;
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
    require(a.ring == b.ring, "direct_sum: ring mismatch");
    GradedModule r;
    r.ring = a.ring;
    r.degrees = a.degrees;
    r.degrees.insert(r.degrees.end(), b.degrees.begin(), b.degrees.end());
    int na = a.rank(), nb = b.rank();
    for (size_t k = 0; k < a.actions.size(); ++k) {
        Mat m(na + nb, na + nb);
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < na; ++j) m.at(i, j) = a.actions[k].at(i, j);
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j) m.at(na + i, na + j) = b.actions[k].at(i, j);
        r.actions.push_back(std::move(m));
    }
    return r;
}

Mat module_lattice_action(const GradedModule& m, const IntVec& y) {
    Mat out(m.rank(), m.rank());
    for (size_t k = 0; k < m.actions.size(); ++k) {
        if (y[k] == 0) continue;
        out = mat_add(out, mat_scale(Rat(y[k]), m.actions[k]));
    }
    mnorm(out, Field(m.ring));
    return out;
}

namespace {

// action of a homogeneous polynomial (internal degree deg) through the
// commuting generator actions
Mat polynomial_action(const GradedModule& m, const PolyRing& S, int deg, const HVec& f) {
    Field fld(m.ring);
    Mat out(m.rank(), m.rank());
    const auto& monos = S.monos(deg);
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        Mat term = Mat::identity(m.rank());
        for (int k = 0; k < S.dim(); ++k)
            for (int rep = 0; rep < monos[i][static_cast<size_t>(k)]; ++rep)
                term = mmul(m.actions[static_cast<size_t>(k)], term, fld);
        out = mat_add(out, mat_scale(f[i], term));
    }
    mnorm(out, fld);
    return out;
}

} // namespace

void check_module_invariants(const Coinvariants& C, const GradedModule& m) {
    const Field& f = C.field();
    if (m.rank() == 0) return;
    require(static_cast<int>(m.actions.size()) == C.datum().dim, "one action per generator required");
    // degree homogeneity: actions raise degree by exactly 2
    for (const Mat& a : m.actions) {
        require(a.nr == m.rank() && a.nc == m.rank(), "action shape mismatch");
        require(mat_in_ring(a, f), "action entries outside the coefficient ring");
        for (int i = 0; i < m.rank(); ++i)
            for (int j = 0; j < m.rank(); ++j)
                if (a.at(i, j) != 0)
                    require(m.degrees[static_cast<size_t>(i)] == m.degrees[static_cast<size_t>(j)] + 2,
                            "action entry violates the degree-2 grading");
    }
    // pairwise commutation
    for (size_t i = 0; i < m.actions.size(); ++i)
        for (size_t j = i + 1; j < m.actions.size(); ++j)
            require(mmul(m.actions[i], m.actions[j], f) == mmul(m.actions[j], m.actions[i], f),
                    "generator actions do not commute");
    // the invariant ideal acts by zero (the action factors through C)
    int span = (m.max_degree() - m.min_degree()) / 2;
    int cap = std::min(C.top_degree() + 1, span);
    for (int deg = 1; deg <= cap; ++deg) {
        const Mat& inv = C.invariants(deg);
        for (int j = 0; j < inv.nc; ++j) {
            HVec u(static_cast<size_t>(inv.nr));
            for (int i = 0; i < inv.nr; ++i) u[static_cast<size_t>(i)] = inv.at(i, j);
            require(polynomial_action(m, C.poly(), deg, u).is_zero(),
                    "a positive-degree invariant acts nonzero (action does not factor through C)");
        }
    }
}

GradedModule bs_extend(const Coinvariants& C, const GradedModule& m, int s) {
    const RootDatum& d = C.datum();
    const Field& f = C.field();
    const CsData& cs = C.cs_data(s);
    int r = m.rank();
    GradedModule out;
    out.ring = C.ring();
    out.degrees.resize(static_cast<size_t>(2 * r));
    // basis: [1 (x) m_j | delta_s (x) m_j], then the <1> shift
    for (int j = 0; j < r; ++j) {
        out.degrees[static_cast<size_t>(j)] = m.degrees[static_cast<size_t>(j)] - 1;
        out.degrees[static_cast<size_t>(r + j)] = m.degrees[static_cast<size_t>(j)] + 1;
    }
    Mat act_delta = module_lattice_action(m, cs.delta);
    for (int k = 0; k < d.dim; ++k) {
        // h = y_k decomposes as a + b delta_s with b = <alpha_s, y_k> and
        // a = y_k - b delta_s in C_s
        IntVec yk(static_cast<size_t>(d.dim), 0);
        yk[static_cast<size_t>(k)] = 1;
        long b = d.pair_root(s, yk);
        IntVec a_vec = yk;
        for (int t = 0; t < d.dim; ++t) a_vec[static_cast<size_t>(t)] -= b * cs.delta[static_cast<size_t>(t)];
        // s(y_k), and b' = s(y_k) + b delta_s
        IntVec s_vec = d.reflect_y(s, yk);
        IntVec bp_vec = s_vec;
        for (int t = 0; t < d.dim; ++t) bp_vec[static_cast<size_t>(t)] += b * cs.delta[static_cast<size_t>(t)];
        Mat act_a = module_lattice_action(m, a_vec);
        Mat act_bp = module_lattice_action(m, bp_vec);
        // a' = y_k delta_s - delta_s s(y_k) - b delta_s^2, acting through
        // composites of the generator actions
        Mat act_ap = mat_sub(mmul(m.actions[static_cast<size_t>(k)], act_delta, f),
                             mmul(act_delta, module_lattice_action(m, s_vec), f));
        act_ap = mat_sub(act_ap, mat_scale(Rat(b), mmul(act_delta, act_delta, f)));
        Mat na(2 * r, 2 * r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                na.at(i, j) = f.normalize(act_a.at(i, j));          // 1(x)m -> 1(x)(a m)
                na.at(i, r + j) = f.normalize(act_ap.at(i, j));     // delta(x)m -> 1(x)(a' m)
                na.at(r + i, r + j) = f.normalize(act_bp.at(i, j)); // delta(x)m -> delta(x)(b' m)
            }
        for (int j = 0; j < r; ++j) na.at(r + j, j) = f.normalize(Rat(b)); // 1(x)m -> b delta(x)m
        out.actions.push_back(std::move(na));
    }
    check_module_invariants(C, out);
    return out;
}

GradedModule bs_module(const Coinvariants& C, const std::vector<int>& seq) {
    GradedModule m = unit_module(C);
    for (int s : seq) m = bs_extend(C, m, s);
    return m;
}

// --- graded Hom ---------------------------------------------------------------

HomSpace graded_hom(const GradedModule& m, const GradedModule& n) {
    require(m.ring == n.ring, "graded_hom: ring mismatch");
    HomSpace out;
    if (m.rank() == 0 || n.rank() == 0) return out;
    Field f(m.ring);
    int rm = m.rank(), rn = n.rank();
    std::set<int> ks;
    for (int i = 0; i < rn; ++i)
        for (int j = 0; j < rm; ++j) ks.insert(n.degrees[static_cast<size_t>(i)] - m.degrees[static_cast<size_t>(j)]);
    for (int k : ks) {
        // unknowns: X[i][j] with deg_N(i) = deg_M(j) + k
        std::map<std::pair<int, int>, int> unk;
        std::vector<std::pair<int, int>> unk_list;
        for (int j = 0; j < rm; ++j)
            for (int i = 0; i < rn; ++i)
                if (n.degrees[static_cast<size_t>(i)] == m.degrees[static_cast<size_t>(j)] + k) {
                    unk[{i, j}] = static_cast<int>(unk_list.size());
                    unk_list.push_back({i, j});
                }
        if (unk_list.empty()) continue;
        // equations: (A_N X - X A_M)[i'][j] = 0 per generator
        std::vector<std::vector<Rat>> rows;
        for (size_t g = 0; g < m.actions.size(); ++g) {
            const Mat& an = n.actions[g];
            const Mat& am = m.actions[g];
            for (int j = 0; j < rm; ++j) {
                for (int ip = 0; ip < rn; ++ip) {
                    if (n.degrees[static_cast<size_t>(ip)] != m.degrees[static_cast<size_t>(j)] + k + 2) continue;
                    std::vector<Rat> row(unk_list.size(), Rat(0));
                    bool nonzero = false;
                    for (int mm = 0; mm < rn; ++mm) {
                        if (an.at(ip, mm) == 0) continue;
                        auto it = unk.find({mm, j});
                        if (it == unk.end()) continue;
                        row[static_cast<size_t>(it->second)] += an.at(ip, mm);
                        nonzero = true;
                    }
                    for (int j2 = 0; j2 < rm; ++j2) {
                        if (am.at(j2, j) == 0) continue;
                        auto it = unk.find({ip, j2});
                        if (it == unk.end()) continue;
                        row[static_cast<size_t>(it->second)] -= am.at(j2, j);
                        nonzero = true;
                    }
                    if (nonzero) rows.push_back(std::move(row));
                }
            }
        }
        Mat sys(static_cast<int>(rows.size()), static_cast<int>(unk_list.size()));
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < rows[i].size(); ++j) sys.at(static_cast<int>(i), static_cast<int>(j)) = f.normalize(rows[i][j]);
        Mat kern = kernel(sys, f);
        if (kern.nc == 0) continue;
        std::vector<Mat> mats;
        for (int c = 0; c < kern.nc; ++c) {
            Mat x(rn, rm);
            for (size_t u = 0; u < unk_list.size(); ++u)
                x.at(unk_list[u].first, unk_list[u].second) = kern.at(static_cast<int>(u), c);
            mats.push_back(std::move(x));
        }
        out.basis[k] = std::move(mats);
    }
    return out;
}

// --- base change ---------------------------------------------------------------

GradedModule base_change_module(const GradedModule& m, CoefRing target) {
    require(m.ring.kind == RingKind::LocalIntegers, "base change starts from Z_(ell)");
    GradedModule r;
    r.ring = target;
    r.degrees = m.degrees;
    if (target.kind == RingKind::Rationals) {
        r.actions = m.actions;
    } else {
        require(target.kind == RingKind::PrimeField && target.ell == m.ring.ell,
                "base change target must be Q or the residue field");
        for (const Mat& a : m.actions) r.actions.push_back(reduce_mod_ell(a, target.ell));
    }
    return r;
}

// --- peeling -------------------------------------------------------------------

namespace {

// Deterministic search for (p, i) with det(p i) a unit. Tries single basis
// pairs, then sums of two on either side, then small coefficient
// combinations (prime-field residues, or +-1, +-2 in characteristic 0).
std::optional<std::pair<Mat, Mat>> find_split_pair(const std::vector<Mat>& pb,
                                                   const std::vector<Mat>& ib, const Field& f,
                                                   int budget) {
    int attempts = 0;
    auto ok = [&](const Mat& p, const Mat& i) -> bool {
        ++attempts;
        Mat sq = mmul(p, i, f);
        return f.is_unit(det(sq, f));
    };
    for (const Mat& p : pb)
        for (const Mat& i : ib) {
            if (attempts >= budget) return std::nullopt;
            if (ok(p, i)) return std::make_pair(p, i);
        }
    for (size_t a = 0; a < pb.size(); ++a)
        for (size_t b = a + 1; b < pb.size(); ++b)
            for (const Mat& i : ib) {
                if (attempts >= budget) return std::nullopt;
                Mat p = mat_add(pb[a], pb[b]);
                if (ok(p, i)) return std::make_pair(p, i);
            }
    for (const Mat& p : pb)
        for (size_t a = 0; a < ib.size(); ++a)
            for (size_t b = a + 1; b < ib.size(); ++b) {
                if (attempts >= budget) return std::nullopt;
                Mat i = mat_add(ib[a], ib[b]);
                if (ok(p, i)) return std::make_pair(p, i);
            }
    // coefficient enumeration on the projection side against every inclusion
    std::vector<Rat> coefs;
    if (f.kind() == RingKind::PrimeField) {
        for (long c = 1; c < std::min(f.ell(), 5L); ++c) coefs.push_back(Rat(c));
    } else {
        coefs = {Rat(1), Rat(-1), Rat(2), Rat(-2)};
    }
    size_t np = std::min<size_t>(pb.size(), 4);
    std::vector<size_t> idx(np, 0); // odometer over coefficient choices (0 = absent)
    for (;;) {
        size_t pos = 0;
        while (pos < np && ++idx[pos] > coefs.size()) idx[pos++] = 0;
        if (pos == np) break;
        Mat p(pb[0].nr, pb[0].nc);
        int used = 0;
        for (size_t a = 0; a < np; ++a)
            if (idx[a] > 0) {
                p = mat_add(p, mat_scale(coefs[idx[a] - 1], pb[a]));
                ++used;
            }
        if (used < 2) continue;
        for (const Mat& i : ib) {
            if (attempts >= budget) return std::nullopt;
            if (ok(p, i)) return std::make_pair(p, i);
        }
    }
    return std::nullopt;
}

} // namespace

PeelOutcome peel_summand(const GradedModule& m, const GradedModule& d, int n,
                         const std::vector<Mat>& proj_basis, const std::vector<Mat>& incl_basis,
                         const Field& field, int budget) {
    (void)n;
    PeelOutcome out;
    if (proj_basis.empty() || incl_basis.empty()) {
        out.status = PeelStatus::NoHoms;
        return out;
    }
    auto pair = find_split_pair(proj_basis, incl_basis, field, budget);
    if (!pair) {
        out.status = PeelStatus::NoSplitFound;
        return out;
    }
    const Mat& p = pair->first;
    const Mat& i = pair->second;
    int r = m.rank(), rd = d.rank();
    Mat pi_inv = inverse(mmul(p, i, field), field);
    Mat proj = mmul(i, mmul(pi_inv, p, field), field); // idempotent onto the split copy
    // complement basis: kernel of proj per degree block
    auto blocks = m.degree_blocks();
    std::vector<std::pair<int, std::vector<Rat>>> cols; // (degree, column)
    for (const auto& [deg, idxs] : blocks) {
        int bs = static_cast<int>(idxs.size());
        Mat sub(bs, bs);
        for (int a = 0; a < bs; ++a)
            for (int b = 0; b < bs; ++b) sub.at(a, b) = proj.at(idxs[static_cast<size_t>(a)], idxs[static_cast<size_t>(b)]);
        Mat kern = kernel(sub, field);
        for (int c = 0; c < kern.nc; ++c) {
            std::vector<Rat> col(static_cast<size_t>(r), Rat(0));
            for (int a = 0; a < bs; ++a) col[static_cast<size_t>(idxs[static_cast<size_t>(a)])] = kern.at(a, c);
            cols.push_back({deg, std::move(col)});
        }
    }
    require(static_cast<int>(cols.size()) == r - rd, "peel: complement has wrong rank");
    Mat embed(r, r - rd);
    std::vector<int> newdeg;
    for (size_t c = 0; c < cols.size(); ++c) {
        newdeg.push_back(cols[c].first);
        for (int a = 0; a < r; ++a) embed.at(a, static_cast<int>(c)) = cols[c].second[static_cast<size_t>(a)];
    }
    // [i | embed] is a basis of M; its inverse provides the projection
    Mat sq(r, r);
    for (int a = 0; a < r; ++a) {
        for (int b = 0; b < rd; ++b) sq.at(a, b) = i.at(a, b);
        for (int b = 0; b < r - rd; ++b) sq.at(a, rd + b) = embed.at(a, b);
    }
    Mat sq_inv = inverse(sq, field);
    Mat project(r - rd, r);
    for (int a = 0; a < r - rd; ++a)
        for (int b = 0; b < r; ++b) project.at(a, b) = sq_inv.at(rd + a, b);

    GradedModule rem;
    rem.ring = m.ring;
    rem.degrees = std::move(newdeg);
    for (const Mat& act : m.actions) rem.actions.push_back(mmul(project, mmul(act, embed, field), field));
    out.status = PeelStatus::Split;
    out.remainder = std::move(rem);
    out.embed = std::move(embed);
    out.project = std::move(project);
    out.summand_proj = std::move(proj);
    return out;
}

PeelOutcome peel_summand(const GradedModule& m, const GradedModule& d, int n, int budget) {
    Field f(m.ring);
    HomSpace md = graded_hom(m, d);
    HomSpace dm = graded_hom(d, m);
    const std::vector<Mat>* pb = md.piece(n);
    const std::vector<Mat>* ib = dm.piece(-n);
    static const std::vector<Mat> empty;
    return peel_summand(m, d, n, pb ? *pb : empty, ib ? *ib : empty, f, budget);
}

bool modules_isomorphic(const GradedModule& a, const GradedModule& b, int budget) {
    if (a.rank() != b.rank()) return false;
    if (!(a.graded_rank() == b.graded_rank())) return false;
    if (a.rank() == 0) return true;
    Field f(a.ring);
    HomSpace ab = graded_hom(a, b);
    HomSpace ba = graded_hom(b, a);
    const std::vector<Mat>* pb = ab.piece(0);
    const std::vector<Mat>* ib = ba.piece(0);
    if (!pb || !ib) return false;
    return find_split_pair(*pb, *ib, f, budget).has_value();
}

// --- the library ------------------------------------------------------------------

namespace {

// reduce a list of composed hom matrices to an echelonized basis
std::vector<Mat> reduce_hom_set(const std::vector<Mat>& homs, const Field& f) {
    if (homs.empty()) return {};
    int nr = homs[0].nr, nc = homs[0].nc;
    Mat flat(nr * nc, static_cast<int>(homs.size()));
    for (size_t c = 0; c < homs.size(); ++c)
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) flat.at(i * nc + j, static_cast<int>(c)) = f.normalize(homs[c].at(i, j));
    ColumnEchelon ech = column_echelon(std::move(flat), f, false);
    std::vector<Mat> out;
    for (int c = 0; c < ech.basis.nc; ++c) {
        Mat x(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) x.at(i, j) = ech.basis.at(i * nc + j, c);
        out.push_back(std::move(x));
    }
    return out;
}

std::string describe(const WeylGroup& g, int w) {
    return g.word_string(w) + " (#" + std::to_string(w) + ")";
}

} // namespace

const Laurent& IndecTable::hom_grk(int x, int w) const {
    return hom_[static_cast<size_t>(x)][static_cast<size_t>(w)];
}

const Laurent& IndecTable::stalk_poly(int x, int w) const {
    auto it = ch_[static_cast<size_t>(w)].support().find(x);
    if (it == ch_[static_cast<size_t>(w)].support().end()) return zero_;
    return it->second;
}

IndecTable IndecTable::build(const Coinvariants& C, const BuildOptions& opts) {
    const WeylGroup& g = C.group();
    const Field& f = C.field();
    int n = g.size();
    IndecTable t;
    t.c_ = &C;
    t.d_.resize(static_cast<size_t>(n));
    t.records_.resize(static_cast<size_t>(n));
    t.hom_.assign(static_cast<size_t>(n), std::vector<Laurent>(static_cast<size_t>(n)));
    t.ch_.resize(static_cast<size_t>(n));

    for (int w = 0; w < n; ++w) {
        HeckeElt residual;
        if (w == 0) {
            t.d_[0] = unit_module(C);
            residual = HeckeElt::standard_basis(0);
            t.records_[0].w = 0;
            t.records_[0].projectors = {Mat::identity(1)};
        } else {
            int s = g.word(w).back();
            int wp = g.right_mult(w, s); // w = wp * s with l(wp) = l(w) - 1
            GradedModule m = bs_extend(C, t.d_[static_cast<size_t>(wp)], s);
            residual = hecke_mul_right_bs(g, t.ch_[static_cast<size_t>(wp)], s);
            // the extension contains D_w once; every other summand is a
            // shifted D_y with y < w, visible in the character bound
            Mat embed = Mat::identity(m.rank());
            Mat project = Mat::identity(m.rank());
            GradedModule cur = m;
            DecompRecord rec;
            rec.w = w;
            // Scan candidates by strictly descending length. Once every
            // z of larger length has been peeled off (their character
            // contributions subtracted), the H_y-coefficient of the residual
            // equals h_{y,w} plus the shifts of D_y still present, so it is
            // an upper bound: attempt peels until the split search fails.
            for (int y = w - 1; y >= 0; --y) {
                Laurent cy = residual.coeff(y);
                if (cy.is_zero()) continue;
                require(g.bruhat_leq(y, w), "character support outside the Bruhat interval at " +
                                                describe(g, y) + " in " + describe(g, w));
                require(cy.nonnegative(), "negative character coefficient at " + describe(g, y));
                HomSpace md = graded_hom(m, t.d_[static_cast<size_t>(y)]);
                HomSpace dm = graded_hom(t.d_[static_cast<size_t>(y)], m);
                for (const auto& [e, coef_bound] : cy.coeffs()) {
                    int shift_n = -e;
                    (void)coef_bound;
                    while (residual.coeff(y).coeff(e) > 0) {
                        const std::vector<Mat>* pb0 = md.piece(shift_n);
                        const std::vector<Mat>* ib0 = dm.piece(-shift_n);
                        std::vector<Mat> pb, ib;
                        if (pb0)
                            for (const Mat& h : *pb0) pb.push_back(mmul(h, embed, f));
                        if (ib0)
                            for (const Mat& h : *ib0) ib.push_back(mmul(project, h, f));
                        pb = reduce_hom_set(pb, f);
                        ib = reduce_hom_set(ib, f);
                        PeelOutcome out =
                            peel_summand(cur, t.d_[static_cast<size_t>(y)], shift_n, pb, ib, f, opts.peel_budget);
                        if (out.status != PeelStatus::Split) break;
                        rec.summands.push_back({y, shift_n});
                        rec.projectors.push_back(mmul(embed, mmul(out.summand_proj, project, f), f));
                        embed = mmul(embed, out.embed, f);
                        project = mmul(out.project, project, f);
                        cur = std::move(out.remainder);
                        residual -= t.ch_[static_cast<size_t>(y)].scaled(Laurent::v_power(e));
                        require(residual.coeff(y).nonnegative(),
                                "character bookkeeping went negative at " + describe(g, y));
                    }
                }
            }
            require(residual.coeff(w) == Laurent(1),
                    "remainder multiplicity at the top cell is not 1 for " + describe(g, w));
            // graded rank of the remainder must match the character residue
            Laurent expect;
            for (const auto& [x, cx] : residual.support()) expect += cx.bar().shifted(g.length(x));
            require(cur.graded_rank() == expect,
                    "graded rank of the remainder does not match the character for " + describe(g, w));
            require(cur.graded_rank().symmetric(),
                    "graded rank of D_" + describe(g, w) + " is not self-dual");
            check_module_invariants(C, cur);
            rec.projectors.push_back(mmul(embed, project, f));
            // orthogonal idempotents summing to the identity
            Mat sum(m.rank(), m.rank());
            for (const Mat& pj : rec.projectors) {
                require(mmul(pj, pj, f) == pj, "decomposition projector is not idempotent");
                sum = mat_add(sum, pj);
            }
            mnorm(sum, f);
            require(sum == Mat::identity(m.rank()), "decomposition projectors do not sum to 1");
            for (size_t a = 0; a < rec.projectors.size(); ++a)
                for (size_t b = a + 1; b < rec.projectors.size(); ++b)
                    require(mmul(rec.projectors[a], rec.projectors[b], f).is_zero(),
                            "decomposition projectors are not orthogonal");
            t.d_[static_cast<size_t>(w)] = std::move(cur);
            t.records_[static_cast<size_t>(w)] = std::move(rec);
        }

        // Hom ranks against everything built so far (graded Hom is symmetric
        // in the two arguments by self-duality)
        for (int x = 0; x <= w; ++x) {
            Laurent grk = graded_hom(t.d_[static_cast<size_t>(x)], t.d_[static_cast<size_t>(w)]).graded_rank();
            t.hom_[static_cast<size_t>(x)][static_cast<size_t>(w)] = grk;
            t.hom_[static_cast<size_t>(w)][static_cast<size_t>(x)] = grk;
        }
        // stalk polynomials of the new column by the triangular Gram system:
        // Hom(D_x, D_w) = sum_{z <= x, z <= w} h_{z,x} h_{z,w}
        HeckeElt column;
        for (int x = 0; x <= w; ++x) {
            Laurent h = t.hom_[static_cast<size_t>(x)][static_cast<size_t>(w)];
            for (const auto& [z, hz] : column.support()) {
                if (!g.bruhat_leq(z, x)) continue;
                // h_{z,x}: for x = w this is the entry of the column under
                // construction, not yet stored in ch_
                const Laurent& hzx = (x == w) ? hz : t.stalk_poly(z, x);
                h -= hzx * hz;
            }
            if (x == w)
                require(h == Laurent(1), "Gram diagonal is not 1 at " + describe(g, w));
            if (!g.bruhat_leq(x, w))
                require(h.is_zero(), "stalk polynomial outside the Bruhat interval at (" +
                                         describe(g, x) + ", " + describe(g, w) + ")");
            require(h.nonnegative(), "negative stalk polynomial at (" + describe(g, x) + ", " +
                                         describe(g, w) + ")");
            column.add_term(x, h);
        }
        // the Gram-derived column must agree with the character bookkeeping
        require(column == residual, "stalk column disagrees with the character residue for " +
                                        describe(g, w));
        t.ch_[static_cast<size_t>(w)] = std::move(column);
    }
    return t;
}

IndecTable IndecTable::from_parts(const Coinvariants& C, std::vector<GradedModule> modules,
                                  std::vector<HeckeElt> characters,
                                  std::vector<std::vector<Laurent>> homs) {
    const WeylGroup& g = C.group();
    int n = g.size();
    require(static_cast<int>(modules.size()) == n && static_cast<int>(characters.size()) == n &&
                static_cast<int>(homs.size()) == n,
            "cached table has the wrong size");
    IndecTable t;
    t.c_ = &C;
    t.d_ = std::move(modules);
    t.ch_ = std::move(characters);
    t.hom_ = std::move(homs);
    t.records_.resize(static_cast<size_t>(n));
    for (int w = 0; w < n; ++w) {
        require(t.d_[static_cast<size_t>(w)].ring == C.ring(), "cached module ring mismatch");
        check_module_invariants(C, t.d_[static_cast<size_t>(w)]);
        require(static_cast<int>(t.hom_[static_cast<size_t>(w)].size()) == n,
                "cached Hom table has the wrong shape");
        // graded rank must match the character column
        Laurent expect;
        for (const auto& [x, cx] : t.ch_[static_cast<size_t>(w)].support())
            expect += cx.bar().shifted(g.length(x));
        require(t.d_[static_cast<size_t>(w)].graded_rank() == expect,
                "cached module rank disagrees with its character");
    }
    // Gram consistency: hom(x, w) = sum_z h_{z,x} h_{z,w}, symmetric
    for (int w = 0; w < n; ++w)
        for (int x = 0; x <= w; ++x) {
            Laurent expect;
            for (const auto& [z, hz] : t.ch_[static_cast<size_t>(w)].support()) {
                if (!g.bruhat_leq(z, x)) continue;
                expect += t.stalk_poly(z, x) * hz;
            }
            require(t.hom_[static_cast<size_t>(x)][static_cast<size_t>(w)] == expect &&
                        t.hom_[static_cast<size_t>(w)][static_cast<size_t>(x)] == expect,
                    "cached Hom table fails the Gram identity");
        }
    return t;
}

ReductionReport verify_reduction(const IndecTable& table_o, const IndecTable& table_f, int budget) {
    ReductionReport rep;
    require(table_o.ring().kind == RingKind::LocalIntegers && table_f.ring().kind == RingKind::PrimeField &&
                table_o.ring().ell == table_f.ring().ell,
            "verify_reduction needs a Z_(ell) table and its residue-field table");
    const WeylGroup& g = table_o.group();
    for (int w = 0; w < g.size(); ++w) {
        GradedModule red = base_change_module(table_o.d_module(w), table_f.ring());
        const GradedModule& df = table_f.d_module(w);
        if (!(red.graded_rank() == df.graded_rank())) {
            rep.pass = false;
            rep.failures.push_back("graded rank of F(D_" + g.word_string(w) + ") differs");
            continue;
        }
        if (!modules_isomorphic(red, df, budget)) {
            rep.pass = false;
            rep.failures.push_back("F(D_" + g.word_string(w) + ") not isomorphic to the F-module");
        }
        if (!(table_o.character(w) == table_f.character(w))) {
            rep.pass = false;
            rep.failures.push_back("stalk data over O and F differ at " + g.word_string(w));
        }
    }
    return rep;
}

} // namespace soergel
