#include <doctest.h>

#include "cmlat/lattice.hpp"
#include "cmlat/reduction.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

using namespace cmlat;

TEST_CASE("half action scales lengths by the norm") {
    std::mt19937_64 rng(404);
    for (const ConfMatrix& w : {paley(23), builtin("W1")}) {
        long l = w.n - 1;
        IntMat W = w.to_mat();
        IntMat I = IntMat::identity(w.n);
        for (int trial = 0; trial < 250; ++trial) {
            long a = long(rng() % 19) - 9;
            long b = long(rng() % 19) - 9;
            if (((a - b) % 2 + 2) % 2 != 0) ++a;
            if (a == 0 && b == 0) a = 2;
            QuadInt z(l, a, b);
            IntMat v(1, w.n);
            for (int j = 0; j < w.n; ++j) v(0, j) = long(rng() % 11) - 5;
            IntMat x = v * (I * Int(a) + W * Int(b));
            // |v (aI + bW)|^2 = (a^2 + l b^2) |v|^2, i.e. 4 N(z) |v|^2
            CHECK(dot_rows(x, 0, x, 0) == 4 * norm(z) * dot_rows(v, 0, v, 0));
        }
    }
}

TEST_CASE("lattice canonical form") {
    ScaledLattice lp = build_Lpm(paley(7), +1);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        IntMat u = IntMat::identity(8);
        for (int s = 0; s < 30; ++s) {
            int i = int(rng() % 8), j = int(rng() % 8);
            if (i != j) u.axpy_row(i, Int(long(rng() % 5) - 2), j);
        }
        ScaledLattice again = make_lattice(u * lp.basis, lp.d, lp.scale2);
        CHECK(lattice_equal(lp, again));
        CHECK(again.basis == lp.basis);
    }
    // redundant generating rows collapse to the same canonical basis
    ScaledLattice padded =
        make_lattice(IntMat::vstack(lp.basis, lp.basis.take_rows(3)), lp.d, lp.scale2);
    CHECK(lattice_equal(lp, padded));
    // rank-deficient input is rejected
    CHECK_THROWS_AS(make_lattice(IntMat{{1, 2}, {2, 4}}, 1, Rat(1)), std::invalid_argument);
}

TEST_CASE("gram reports") {
    LatticeReport d4 = gram_report(build_D(4));
    CHECK(d4.integral);
    CHECK(d4.even);
    CHECK(d4.det_gram == 4);
    CHECK(!d4.unimodular);

    LatticeReport z2 = gram_report(make_lattice(IntMat::identity(2), 1, Rat(1)));
    CHECK(z2.integral);
    CHECK(!z2.even);
    CHECK(z2.unimodular);

    LatticeReport half = gram_report(make_lattice(IntMat::identity(2), 2, Rat(1)));
    CHECK(!half.integral);
    CHECK(half.det_gram == Rat(1, 16));
}

TEST_CASE("glued lattices from conference matrices") {
    // n = 8: the unique even unimodular lattice in dimension 8
    for (int sign : {+1, -1}) {
        ScaledLattice e8 = build_Lpm(paley(7), sign);
        LatticeReport rep = gram_report(e8);
        CHECK(rep.integral);
        CHECK(rep.even);
        CHECK(rep.unimodular);
        ThetaPrefix th = enumerate_short(e8, 2);
        REQUIRE(th.entries.size() == 1);
        CHECK(th.entries[0].second == 240);
        auto [rk, dg] = root_sublattice_det(e8);
        CHECK(rk == 8);
        CHECK(dg == 1);
    }

    // n = 24: even unimodular with 1104 roots
    bool guaranteed = false;
    ScaledLattice lp = build_Lpm(paley(23), +1, &guaranteed);
    CHECK(guaranteed);
    LatticeReport rep = gram_report(lp);
    CHECK(rep.integral);
    CHECK(rep.even);
    CHECK(rep.unimodular);
    ThetaPrefix th = enumerate_short(lp, 2);
    REQUIRE(th.entries.size() == 1);
    CHECK(th.entries[0].second == 1104);

    CHECK(gram_report(build_Lpm(paley(23), -1)).unimodular);

    // the two 16-dimensional fixtures are both even unimodular
    for (const char* name : {"W1", "W2"}) {
        bool g16 = false;
        LatticeReport r16 = gram_report(build_Lpm(builtin(name), +1, &g16));
        CHECK(g16);
        CHECK(r16.even);
        CHECK(r16.unimodular);
    }

    bool g4 = true;
    build_Lpm(paley(3), +1, &g4);
    CHECK(!g4);  // 8 does not divide 4
}

TEST_CASE("even sublattice and glue index") {
    ScaledLattice lp = build_Lpm(paley(23), +1);
    ScaledLattice d24 = build_D(24);
    CHECK(lattice_equal(intersect_integer(lp), d24));
    CHECK(sublattice_index(lp, d24) == 2);
    CHECK(lattice_equal(lattice_sum(lp, d24), lp));
    CHECK(lattice_equal(lattice_intersect(lp, d24), d24));
}

TEST_CASE("module structure") {
    ConfMatrix w = paley(23);
    ScaledLattice lp = build_Lpm(w, +1);
    CHECK(omodule_check(lp, w));
    CHECK(!omodule_check(make_lattice(IntMat::identity(24), 1, Rat(1)), w));

    // multiplication by omega has index N(omega)^(n/2)
    ScaledLattice wl = act(omega(23), lp, w);
    CHECK(sublattice_index(lp, wl) == pow_int(Int(6), 12));

    // scalar action is coordinate scaling
    CHECK(lattice_equal(act(from_int(23, 2), lp, w), scale_coords(lp, Rat(2))));
}

TEST_CASE("ideal times lattice") {
    ConfMatrix w = paley(23);
    ScaledLattice lp = build_Lpm(w, +1);
    auto P = two_adic_power(23, 1, +1).first;
    auto Q = two_adic_power(23, 1, -1).first;

    CHECK(lattice_equal(ideal_times_lattice(unit_ideal(23), lp, w), lp));
    CHECK(lattice_equal(ideal_times_lattice(ideal_mul(P, Q), lp, w), scale_coords(lp, Rat(2))));
    CHECK(lattice_equal(ideal_times_lattice(P, ideal_times_lattice(Q, lp, w), w),
                        ideal_times_lattice(ideal_mul(P, Q), lp, w)));
    CHECK(sublattice_index(lp, ideal_times_lattice(P, lp, w)) == pow_int(Int(2), 12));

    // the rescaled ideal lattice is again even unimodular
    for (const QuadIdeal& ideal : {P, Q}) {
        LatticeReport rep = gram_report(build_LI(ideal, lp, w));
        CHECK(rep.integral);
        CHECK(rep.even);
        CHECK(rep.unimodular);
    }
}

TEST_CASE("isometry witnesses") {
    ConfMatrix w = paley(23);
    ScaledLattice lp = build_Lpm(w, +1);
    auto P = two_adic_power(23, 1, +1).first;
    auto Q = two_adic_power(23, 1, -1).first;
    auto Q2 = two_adic_power(23, 2, -1).first;

    IsometryWitness wit = isometry_witness(P, Q2, lp, w);
    CHECK(wit.verified);
    CHECK(norm(wit.beta) == P.norm() * Q2.norm());
    CHECK(wit.denom == P.norm());

    IsometryWitness self = isometry_witness(P, P, lp, w);
    CHECK(self.verified);

    CHECK_THROWS_AS(isometry_witness(P, Q, lp, w), std::invalid_argument);
    CHECK_THROWS_AS(isometry_witness(unit_ideal(23), P, lp, w), std::invalid_argument);
}

TEST_CASE("lattice text format") {
    ScaledLattice lp = build_Lpm(paley(23), +1);
    std::istringstream in(dump_lattice(lp));
    CHECK(lattice_equal(parse_lattice(in), lp));

    ScaledLattice li = build_LI(two_adic_power(23, 1, -1).first, lp, paley(23));
    std::istringstream in2(dump_lattice(li));
    CHECK(lattice_equal(parse_lattice(in2), li));

    std::istringstream bad("2 1 1/1\n1 0\n");  // row missing
    CHECK_THROWS(parse_lattice(bad));
    std::istringstream bad2("2 0 1/1\n1 0\n0 1\n");  // zero denominator
    CHECK_THROWS(parse_lattice(bad2));
}
