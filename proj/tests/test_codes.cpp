#include <doctest.h>

#include "cmlat/codes.hpp"
#include "cmlat/reduction.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

using namespace cmlat;

namespace {

std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::string data_file(const char* name) {
    return std::string(CMLAT_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("code canonical form") {
    // row order, scaling by units, and redundant rows do not matter
    IntMat g1{{1, 1, 0, 1, 0, 0}, {0, 1, 1, 0, 1, 0}, {1, 0, 1, 1, 1, 0}};
    IntMat g2{{0, 1, 1, 0, 1, 0}, {3, 3, 2, 3, 2, 0}, {1, 0, 1, 1, 1, 0}};
    LinearCode a = code_from_rows(6, 2, g1);
    LinearCode b = code_from_rows(6, 2, g2);
    CHECK(code_equal(a, b));
    CHECK(a.k() == 2);  // third row is the sum of the first two
    CHECK(a.size() == 4);

    LinearCode zero = code_from_rows(4, 2, IntMat(0, 4));
    CHECK(zero.k() == 0);
    CHECK(zero.size() == 1);
    CHECK(min_distance(zero) == 5);  // sentinel n + 1

    LinearCode all = code_from_rows(3, 3, IntMat::identity(3));
    CHECK(all.size() == 27);
    CHECK(min_distance(all) == 1);
}

TEST_CASE("construction A round trip") {
    std::mt19937_64 rng(31337);
    for (long Nv : {2L, 3L, 4L, 8L}) {
        for (int trial = 0; trial < 10; ++trial) {
            int n = 4 + int(rng() % 4);
            int k = 1 + int(rng() % n);
            IntMat rows(k, n);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < n; ++j) rows(i, j) = long(rng() % (2 * Nv)) - Nv;
            LinearCode c = code_from_rows(n, Nv, rows);
            ScaledLattice lat = lattice_from_code(c);
            CHECK(code_equal(code_from_lattice(lat, Nv), c));
            // |Z^n : lattice| * |C| = N^n, and det is the square of the index
            Int idx = divexact(pow_int(Int(Nv), (unsigned long)n), c.size());
            CHECK(det_gram(lat) == Rat(idx * idx));
        }
    }
    // validation
    CHECK_THROWS_AS(code_from_lattice(make_lattice(IntMat::identity(4), 2, Rat(1)), 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(code_from_lattice(make_lattice(IntMat::identity(4) * 3, 1, Rat(1)), 2),
                    std::invalid_argument);
}

TEST_CASE("self duality") {
    LinearCode rep2 = code_from_rows(2, 2, IntMat{{1, 1}});
    SelfDualCheck s = self_dual_check(rep2);
    CHECK(s.self_orthogonal);
    CHECK(s.self_dual);

    LinearCode word = code_from_rows(2, 2, IntMat{{1, 0}});
    CHECK(!self_dual_check(word).self_orthogonal);

    // self-orthogonal but too small to be self-dual
    LinearCode small = code_from_rows(4, 2, IntMat{{1, 1, 1, 1}});
    CHECK(self_dual_check(small).self_orthogonal);
    CHECK(!self_dual_check(small).self_dual);
}

TEST_CASE("quadratic residue polynomial lifting") {
    QRPolyPair p7 = qr_polynomials(7, 1);
    CHECK(p7.fplus == std::vector<Int>{1, 1, 0, 1});   // x^3 + x + 1
    CHECK(p7.fminus == std::vector<Int>{1, 0, 1, 1});  // x^3 + x^2 + 1

    for (long l : {7L, 23L, 31L, 47L})
        for (int r = 1; r <= 3; ++r) {
            QRPolyPair p = qr_polynomials(l, r);
            REQUIRE(p.fplus.size() == size_t((l - 1) / 2 + 1));
            REQUIRE(p.fminus.size() == size_t((l - 1) / 2 + 1));
            // dividing coefficients of the lift at r+1 reduces to the lift at r
            QRPolyPair up = qr_polynomials(l, r + 1);
            Int M = Int(1) << r;
            for (size_t i = 0; i < p.fplus.size(); ++i) {
                CHECK(fmod(up.fplus[i], M) == p.fplus[i]);
                CHECK(fmod(up.fminus[i], M) == p.fminus[i]);
            }
            // (x - 1) f+ f- = x^l - 1 over Z/2^r Z
            std::vector<Int> prod = poly_mul(poly_mul({-1, 1}, p.fplus), p.fminus);
            REQUIRE(prod.size() == size_t(l + 1));
            CHECK(fmod(prod[0] + 1, M) == 0);
            CHECK(fmod(prod[size_t(l)] - 1, M) == 0);
            for (size_t i = 1; i < size_t(l); ++i) CHECK(fmod(prod[i], M) == 0);
            // f+ is pinned by its even middle coefficient
            CHECK(fmod(p.fplus[size_t((l - 3) / 2)], 2) == 0);
            CHECK(fmod(p.fminus[size_t((l - 3) / 2)], 2) == 1);
        }

    CHECK_THROWS_AS(qr_polynomials(17, 1), std::invalid_argument);  // 17 = 1 mod 8
    CHECK_THROWS_AS(qr_polynomials(9, 1), std::invalid_argument);   // composite
    CHECK_THROWS_AS(qr_polynomials(11, 1), std::invalid_argument);  // 11 = 3 mod 8
}

TEST_CASE("lifted cyclic codes") {
    LinearCode ham = lifted_qr_code(7, 1, +1);
    CHECK(ham.k() == 4);
    CHECK(ham.size() == 16);
    CHECK(min_distance(ham) == 3);
    CHECK(min_distance(lifted_qr_code(7, 1, -1)) == 3);

    LinearCode qr23 = lifted_qr_code(23, 1, +1);
    CHECK(qr23.k() == 12);
    CHECK(min_distance(qr23) == 7);

    // generated codes are invariant under the cyclic shift
    for (int sign : {+1, -1}) {
        LinearCode c = lifted_qr_code(23, 2, sign);
        CHECK(c.k() == 12);
        IntMat g = c.gen();
        IntMat rot(g.rows(), g.cols());
        for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < g.cols(); ++j) rot(i, (j + 1) % g.cols()) = g(i, j);
        CHECK(code_equal(code_from_rows(c.n, c.N, rot), c));
    }
}

TEST_CASE("extension and deletion") {
    LinearCode qr23 = lifted_qr_code(23, 1, +1);
    LinearCode golay = extend_orthogonal(qr23, 1);
    CHECK(golay.n == 24);
    CHECK(golay.k() == 12);
    CHECK(self_dual_check(golay).self_dual);
    CHECK(min_distance(golay) == 8);
    CHECK(code_equal(delete_first(golay), qr23));

    // frozen fixtures
    CHECK(code_equal(golay, load_code(data_file("golay24.code"))));
    CHECK(code_equal(qr23, load_code(data_file("golay23.code"))));

    // extended words are orthogonal to (-t, 1, ..., 1)
    LinearCode e4 = extend_orthogonal(lifted_qr_code(23, 2, -1), 5);
    IntMat g = e4.gen();
    for (int i = 0; i < g.rows(); ++i) {
        Int s = -5 * g(i, 0);
        for (int j = 1; j < e4.n; ++j) s += g(i, j);
        CHECK(fmod(s, 4) == 0);
    }
    CHECK_THROWS(extend_orthogonal(lifted_qr_code(23, 2, -1), 2));
}

TEST_CASE("construction B") {
    LinearCode zero = code_from_rows(4, 2, IntMat(0, 4));
    ScaledLattice b = construction_B(zero);
    CHECK(lattice_contains(b, {2, 2, 0, 0}, 1));
    CHECK(lattice_contains(b, {4, 0, 0, 0}, 1));
    CHECK(lattice_contains(b, {2, -2, 0, 0}, 1));
    CHECK(!lattice_contains(b, {2, 0, 0, 0}, 1));
    CHECK(!lattice_contains(b, {1, 1, 1, 1}, 1));
    CHECK(det_gram(b) == 1024);

    ScaledLattice bg = construction_B(load_code(data_file("golay24.code")));
    CHECK(det_gram(bg) == Rat(Int(1) << 26));
    CHECK(gram_report(bg).even);
}

TEST_CASE("density doubling") {
    ScaledLattice d4 = build_D(4);
    IntMat glue{{1, 1, 1, 1}};
    ScaledLattice doubled = density_double(d4, glue, 2);
    LatticeReport rep = gram_report(doubled);
    CHECK(rep.integral);
    CHECK(rep.unimodular);
    CHECK(!rep.even);
    CHECK(sublattice_index(doubled, d4) == 2);
    // glue already inside: nothing changes
    CHECK(lattice_equal(density_double(d4, glue, 1), d4));
    CHECK_THROWS_AS(density_double(d4, glue, 3), std::invalid_argument);
}

TEST_CASE("binary codes of the two-adic ideal lattices") {
    ConfMatrix w = paley(23);
    ScaledLattice lp = build_Lpm(w, +1);
    IntMat wmat = w.to_mat();
    for (int r = 1; r <= 3; ++r) {
        auto [qr, t] = two_adic_power(23, r, -1);
        Int N = Int(1) << r;
        ScaledLattice ql = ideal_times_lattice(qr, lp, w);
        LinearCode from_lattice = code_from_lattice(ql, N);

        // spanned by the halved row pair sums of tI - W
        IntMat gens(24 * 25 / 2, 24);
        int row = 0;
        for (int i = 0; i < 24; ++i)
            for (int j = i; j < 24; ++j, ++row)
                for (int k = 0; k < 24; ++k) {
                    Int v = -(wmat(i, k) + wmat(j, k));
                    if (k == i) v += t;
                    if (k == j) v += t;
                    gens(row, k) = divexact(v, 2);
                }
        CHECK(code_equal(code_from_rows(24, N, gens), from_lattice));
    }
}

TEST_CASE("ternary residue structure") {
    TernaryQRReport t23 = ternary_qr_checks(23);
    CHECK(t23.t == 1);
    CHECK(t23.code_self_dual);
    REQUIRE(t23.has_l23_checks);
    CHECK(t23.qi_ideal_ok);
    CHECK(t23.j_lattice_ok);
    CHECK(t23.qi_lattice_ok);
    for (const ScaledLattice* lat : {&t23.lat_J, &t23.lat_QI}) {
        LatticeReport rep = gram_report(*lat);
        CHECK(rep.integral);
        CHECK(rep.even);
        CHECK(rep.unimodular);
    }

    ConfMatrix w = paley(23);
    LinearCode c3 = code_from_rows(24, 3, IntMat::identity(24) + w.to_mat());
    CHECK(self_dual_check(c3).self_dual);
    CHECK(code_equal(c3, load_code(data_file("ternary23.code"))));

    TernaryQRReport t47 = ternary_qr_checks(47);
    CHECK(t47.code_self_dual);
    CHECK(!t47.has_l23_checks);

    CHECK_THROWS_AS(ternary_qr_checks(7), std::invalid_argument);
}

TEST_CASE("code file format") {
    LinearCode c = lifted_qr_code(7, 2, -1);
    std::istringstream in(format_code(c));
    CHECK(code_equal(parse_code(in), c));

    LinearCode wide = code_from_rows(3, 11, IntMat{{1, 2, 10}});
    std::istringstream in2(format_code(wide));
    CHECK(code_equal(parse_code(in2), wide));

    std::istringstream bad("4 2 9\n");
    CHECK_THROWS(parse_code(bad));
    std::istringstream bad2("4 2 1\n10210\n");
    CHECK_THROWS(parse_code(bad2));

    // the stored codes of the two 16-dimensional fixtures
    LinearCode c1 = load_code(data_file("l15_code1.code"));
    LinearCode c2 = load_code(data_file("l15_code2.code"));
    CHECK(c1.n == 16);
    CHECK(c2.n == 16);
    CHECK(self_dual_check(c1).self_dual);
    CHECK(self_dual_check(c2).self_dual);
    CHECK(min_distance(c1) == 4);
    CHECK(min_distance(c2) == 4);
    CHECK(!code_equal(c1, c2));
}
