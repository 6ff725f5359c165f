#include <doctest.h>

#include "soergel/coinvariant.hpp"

using namespace soergel;

namespace {

HVec unit_vec(int n, int i) {
    HVec v(static_cast<size_t>(n), Rat(0));
    v[static_cast<size_t>(i)] = 1;
    return v;
}

Laurent poincare(const WeylGroup& g) {
    Laurent p;
    for (int w = 0; w < g.size(); ++w) p += Laurent::v_power(2 * g.length(w));
    return p;
}

} // namespace

TEST_CASE("reflection action on S for GL2") {
    RootDatum d = build_root_datum("GL2");
    PolyRing S(d, 3);
    // x1 -> x2 under the swap
    HVec x1 = S.from_lattice({1, 0});
    CHECK(S.reflect(0, 1, x1) == S.from_lattice({0, 1}));
    // the coroot is negated
    HVec cr = S.from_lattice(d.simple_coroots[0]);
    HVec neg = cr;
    for (auto& c : neg) c = -c;
    CHECK(S.reflect(0, 1, cr) == neg);
    // an invariant is fixed: x1 + x2
    HVec e1 = S.from_lattice({1, 1});
    CHECK(S.reflect(0, 1, e1) == e1);
    // and a degree-2 invariant: x1 x2
    HVec x2 = S.from_lattice({0, 1});
    HVec prod = S.multiply(1, x1, 1, x2);
    CHECK(S.reflect(0, 2, prod) == prod);
}

TEST_CASE("demazure operator basics") {
    for (const char* p : {"GL2", "A2", "B2", "G2"}) {
        RootDatum d = build_root_datum(p);
        PolyRing S(d, 5);
        for (int s = 0; s < d.nsimple; ++s) {
            // d_s(alpha_s^vee) = 2
            HVec cr = S.from_lattice(d.simple_coroots[static_cast<size_t>(s)]);
            HVec two = S.demazure(s, 1, cr);
            CHECK(two.size() == 1);
            CHECK(two[0] == 2);
            // d_s(delta_s) = 1
            HVec del = S.from_lattice(d.delta(s));
            CHECK(S.demazure(s, 1, del)[0] == 1);
            // d_s kills invariants: d_s(delta_s * s(delta_s)) has to vanish?
            // use the product f * s(f), which is s-invariant
            HVec f = del;
            HVec sf = S.reflect(s, 1, f);
            HVec prod = S.multiply(1, f, 1, sf);
            HVec df = S.demazure(s, 2, prod);
            for (const auto& c : df) CHECK(c == 0);
            // twisted Leibniz on f = delta_s, g = coroot
            HVec fg = S.multiply(1, del, 1, cr);
            HVec lhs = S.demazure(s, 2, fg);
            // d(f)g + s(f)d(g) = 1 * cr + s(del) * 2
            HVec rhs = cr;
            HVec sdel = S.reflect(s, 1, del);
            for (size_t i = 0; i < rhs.size(); ++i) rhs[i] += Rat(2) * sdel[i];
            CHECK(lhs == rhs);
            // d_s^2 = 0 on a random-ish degree-3 element
            HVec g3 = unit_vec(S.num_monos(3), 0);
            HVec d1 = S.demazure(s, 3, g3);
            HVec d2 = S.demazure(s, 2, d1);
            for (const auto& c : d2) CHECK(c == 0);
        }
    }
}

TEST_CASE("invariants of GL2") {
    RootDatum d = build_root_datum("GL2");
    PolyRing S(d, 4);
    Field q(rationals());
    Mat i1 = invariants_basis(S, q, 1);
    CHECK(i1.nc == 1); // span{x1 + x2}
    CHECK(i1.at(0, 0) == i1.at(1, 0));
    Mat i2 = invariants_basis(S, q, 2);
    CHECK(i2.nc == 2); // e1^2, e2
    Mat i0 = invariants_basis(S, q, 0);
    CHECK(i0.nc == 1); // constants
}

TEST_CASE("coinvariants of GL2 over Q") {
    WeylGroup g(build_root_datum("GL2"));
    Coinvariants c = Coinvariants::build(g, rationals());
    CHECK(c.total_rank() == 2);
    CHECK(c.dim(0) == 1);
    CHECK(c.dim(1) == 1);
    CHECK(c.top_degree() == 1);
    CHECK(c.graded_rank() == Laurent(1) + Laurent::v_power(2));
}

TEST_CASE("coinvariant ranks across presets and rings") {
    auto check_ranks = [](const char* preset, CoefRing ring) {
        WeylGroup g(build_root_datum(preset));
        Coinvariants c = Coinvariants::build(g, ring);
        CHECK(c.total_rank() == g.size());
        CHECK(c.graded_rank() == poincare(g));
    };
    check_ranks("A2", rationals());
    check_ranks("A2", prime_field(5));
    check_ranks("A2", local_integers(5));
    check_ranks("B2", prime_field(3));
    check_ranks("B2", local_integers(3));
    check_ranks("GL3", prime_field(2));
    check_ranks("G2", prime_field(5));
}

TEST_CASE("bad primes are rejected") {
    WeylGroup g2(build_root_datum("G2"));
    CHECK_THROWS_AS(Coinvariants::build(g2, prime_field(3)), config_error);
    WeylGroup b2(build_root_datum("B2"));
    CHECK_THROWS_AS(Coinvariants::build(b2, local_integers(2)), config_error);
    WeylGroup a2(build_root_datum("A2"));
    CHECK_THROWS_AS(Coinvariants::build(a2, prime_field(3)), config_error);
}

TEST_CASE("cs_decompose reconstructs every basis class") {
    for (const char* p : {"A2", "B2"}) {
        WeylGroup g(build_root_datum(p));
        for (CoefRing ring : {rationals(), prime_field(p[0] == 'A' ? 5L : 3L)}) {
            Coinvariants c = Coinvariants::build(g, ring);
            for (int s = 0; s < g.nsimple(); ++s) {
                const CsData& cd = c.cs_data(s); // construction verifies freeness
                CHECK(cd.delta == g.datum().delta(s));
                for (int m = 0; m <= c.top_degree(); ++m) {
                    for (int j = 0; j < c.dim(m); ++j) {
                        CVec f(static_cast<size_t>(c.dim(m)), Rat(0));
                        f[static_cast<size_t>(j)] = 1;
                        auto [a, b] = c.cs_decompose(s, m, f);
                        CHECK(c.in_cs(s, m, a));
                        if (m >= 1) {
                            CHECK(c.in_cs(s, m - 1, b));
                            // f = a + delta * b
                            Mat da = c.lattice_action(cd.delta, m - 1);
                            CVec rec = a;
                            for (int i = 0; i < c.dim(m); ++i) {
                                Rat acc(0);
                                for (int k = 0; k < c.dim(m - 1); ++k)
                                    acc += da.at(i, k) * b[static_cast<size_t>(k)];
                                rec[static_cast<size_t>(i)] = c.field().normalize(rec[static_cast<size_t>(i)] + acc);
                            }
                            CHECK(rec == f);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("cs_decompose on 1, delta and h") {
    WeylGroup g(build_root_datum("A2"));
    Coinvariants c = Coinvariants::build(g, rationals());
    int s = 0;
    const CsData& cd = c.cs_data(s);
    // f = 1 -> (1, 0)
    CVec one{Rat(1)};
    auto [a0, b0] = c.cs_decompose(s, 0, one);
    CHECK(a0 == one);
    // f = delta -> (0, 1)
    CVec dclass = c.project(1, c.poly().from_lattice(cd.delta));
    auto [a1, b1] = c.cs_decompose(s, 1, dclass);
    for (const auto& x : a1) CHECK(x == 0);
    CHECK(b1 == CVec{Rat(1)});
    // f = class of lattice h: b = <alpha_s, h>
    IntVec h{1, 1};
    CVec hclass = c.project(1, c.poly().from_lattice(h));
    auto [a2, b2] = c.cs_decompose(s, 1, hclass);
    CHECK(b2 == CVec{Rat(g.datum().pair_root(s, h))});
    CHECK(c.in_cs(s, 1, a2));
}

TEST_CASE("demazure on C is C_s-linear and kills C_s") {
    WeylGroup g(build_root_datum("B2"));
    Coinvariants c = Coinvariants::build(g, rationals());
    for (int s = 0; s < 2; ++s) {
        const CsData& cd = c.cs_data(s);
        for (int m = 1; m <= c.top_degree(); ++m) {
            const Mat& base = cd.cs_basis[static_cast<size_t>(m)];
            for (int j = 0; j < base.nc; ++j) {
                CVec f(static_cast<size_t>(c.dim(m)));
                for (int i = 0; i < c.dim(m); ++i) f[static_cast<size_t>(i)] = base.at(i, j);
                CVec df = c.demazure_c(s, m, f);
                for (const auto& x : df) CHECK(x == 0);
            }
        }
    }
}

TEST_CASE("base change suite (Lemma-style rank equalities)") {
    struct Case {
        const char* preset;
        long ell;
    };
    for (Case cse : {Case{"A2", 5}, Case{"B2", 3}, Case{"GL3", 2}}) {
        WeylGroup g(build_root_datum(cse.preset));
        BaseChangeReport rep = base_change_check(g, cse.ell);
        INFO(cse.preset << " at " << cse.ell);
        for (const auto& f : rep.failures) INFO(f);
        CHECK(rep.pass);
    }
}
