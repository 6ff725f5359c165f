#include <doctest.h>

#include "soergel/matrix.hpp"
#include "soergel/numeric.hpp"
#include "soergel/ring.hpp"

using namespace soergel;

TEST_CASE("valuation and local integers") {
    CHECK(valuation(Int(12), 2) == 2);
    CHECK(valuation(Int(12), 3) == 1);
    CHECK(valuation(make_rat(9, 2), 3) == 2);
    CHECK(valuation(make_rat(2, 9), 3) == -2);
    CHECK(is_local_integer(make_rat(3, 4), 5));
    CHECK(!is_local_integer(make_rat(3, 5), 5));
    CHECK(reduce_mod(make_rat(1, 2), 5) == 3); // 1/2 = 3 mod 5
    CHECK(reduce_mod(make_rat(-1, 3), 7) == 2); // -1/3 = -5 = 2 mod 7
}

TEST_CASE("rational serialization") {
    CHECK(rat_to_string(make_rat(-3, 6)) == "-1/2");
    CHECK(rat_to_string(make_rat(4, 2)) == "2");
    CHECK(rat_from_string("-1/2") == make_rat(-1, 2));
}

TEST_CASE("field ops per ring") {
    Field q(rationals()), o(local_integers(3)), f(prime_field(5));
    CHECK(q.is_unit(make_rat(7, 3)));
    CHECK(o.is_unit(make_rat(7, 5)));
    CHECK(!o.is_unit(make_rat(3, 5)));
    CHECK(f.normalize(make_rat(7)) == 2);
    CHECK(f.mul(Rat(3), Rat(4)) == 2);
    CHECK(f.inv(Rat(2)) == 3);
    CHECK(o.contains(make_rat(1, 2)));
    CHECK(!o.contains(make_rat(1, 3)));
}

TEST_CASE("rref rank kernel over Q") {
    Field q(rationals());
    Mat m(3, 4);
    // rows: x+y+z+w, 2x+2y+2z+2w, x-y
    long r0[] = {1, 1, 1, 1}, r1[] = {2, 2, 2, 2}, r2[] = {1, -1, 0, 0};
    for (int j = 0; j < 4; ++j) {
        m.at(0, j) = r0[j];
        m.at(1, j) = r1[j];
        m.at(2, j) = r2[j];
    }
    CHECK(rank(m, q) == 2);
    Mat k = kernel(m, q);
    CHECK(k.nc == 2);
    CHECK(mat_mul(m, k).is_zero());
}

TEST_CASE("solve and inverse") {
    Field q(rationals());
    Mat m(2, 2);
    m.at(0, 0) = 2;
    m.at(0, 1) = 1;
    m.at(1, 0) = 1;
    m.at(1, 1) = 1;
    Mat inv = inverse(m, q);
    CHECK(mat_mul(m, inv) == Mat::identity(2));
    CHECK(det(m, q) == 1);
    Mat rhs(2, 1);
    rhs.at(0, 0) = 3;
    rhs.at(1, 0) = 2;
    Mat x = solve(m, rhs, q);
    CHECK(mat_mul(m, x) == rhs);
}

TEST_CASE("kernel over F_p") {
    Field f(prime_field(3));
    Mat m(1, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 1;
    Mat k = kernel(m, f);
    CHECK(k.nc == 1);
    // x = -y = 2y mod 3
    CHECK(k.at(0, 0) == 2);
    CHECK(k.at(1, 0) == 1);
}

TEST_CASE("saturation over Z_(ell)") {
    // columns (2,0) and (0,4) over Z_(2): saturation is the standard lattice
    Mat v(2, 2);
    v.at(0, 0) = 2;
    v.at(1, 1) = 4;
    Mat s = saturate_columns(v, 2);
    Field fp(prime_field(2));
    CHECK(rank(reduce_mod_ell(s, 2), fp) == 2);

    // span of (1,1) and (1,-1) over Z_(2) is NOT saturated: (1,0) = half sum
    Mat u(2, 2);
    u.at(0, 0) = 1;
    u.at(1, 0) = 1;
    u.at(0, 1) = 1;
    u.at(1, 1) = -1;
    Mat su = saturate_columns(u, 2);
    CHECK(rank(reduce_mod_ell(su, 2), fp) == 2);
    // the saturated lattice contains (1,0) with O-coordinates
    Field q(rationals());
    Mat rhs(2, 1);
    rhs.at(0, 0) = 1;
    Mat sol = solve(su, rhs, q);
    for (int i = 0; i < 2; ++i) CHECK(is_local_integer(sol.at(i, 0), 2));
}

TEST_CASE("rref_unit_pivots rejects unsaturated data") {
    Field o(local_integers(2));
    Mat m(1, 1);
    m.at(0, 0) = 2;
    CHECK_THROWS_AS(rref_unit_pivots(m, o), invariant_error);
}
