#include <doctest.h>

#include "cmlat/quadring.hpp"

#include <random>
#include <stdexcept>

using namespace cmlat;

TEST_CASE("ring elements") {
    QuadInt w = omega(23);
    CHECK(norm(w) == 6);
    CHECK(trace(w) == 1);
    CHECK(w * w == w - from_int(23, 6));  // omega^2 = omega - (l+1)/4
    CHECK(w + conj(w) == from_int(23, 1));
    CHECK(w * conj(w) == from_int(23, 6));
    CHECK(-w == from_int(23, 0) - w);

    auto [u, v] = to_coords(QuadInt(23, -5, 1));  // (-5 + sqrt(-23))/2 = -3 + omega
    CHECK(u == -3);
    CHECK(v == 1);
    CHECK(from_coords(23, u, v) == QuadInt(23, -5, 1));

    CHECK_THROWS_AS(QuadInt(23, 1, 0), std::invalid_argument);   // parity
    CHECK_THROWS_AS(QuadInt(21, 1, 1), std::invalid_argument);   // 21 = 1 mod 4
    CHECK_THROWS_AS(QuadInt(27, 1, 1), std::invalid_argument);   // not squarefree
}

TEST_CASE("norm is multiplicative") {
    std::mt19937_64 rng(12345);
    auto pick = [&](long l) {
        long a = long(rng() % 41) - 20;
        long b = long(rng() % 41) - 20;
        if (((a - b) % 2 + 2) % 2 != 0) ++a;
        return QuadInt(l, a, b);
    };
    for (long l : {7L, 23L, 47L})
        for (int i = 0; i < 100; ++i) {
            QuadInt x = pick(l), y = pick(l);
            CHECK(norm(x * y) == norm(x) * norm(y));
            CHECK(norm(conj(x)) == norm(x));
            CHECK(trace(x + y) == trace(x) + trace(y));
            auto [u, v] = to_coords(x);
            CHECK(from_coords(l, u, v) == x);
        }
}

TEST_CASE("two-adic primes") {
    auto [P, t1] = two_adic_power(23, 1, +1);
    auto [Q, s1] = two_adic_power(23, 1, -1);
    CHECK(t1 == 1);
    CHECK(s1 == 1);
    CHECK(P.g == 2);
    CHECK(P.h == 0);
    CHECK(P.k == 1);
    CHECK(Q.g == 2);
    CHECK(Q.h == 1);
    CHECK(Q.k == 1);
    CHECK(P != Q);
    CHECK(conj(P) == Q);
    CHECK(ideal_mul(P, Q) == principal_ideal(from_int(23, 2)));
    CHECK(P.norm() == 2);

    CHECK(two_adic_power(23, 2, +1).second == 5);
    CHECK(two_adic_power(23, 3, +1).second == 13);
    for (int r = 1; r <= 4; ++r) {
        auto [Pr, t] = two_adic_power(23, r, +1);
        CHECK(Pr.norm() == (Int(1) << r));
        CHECK(t % 4 == 1);
        CHECK((t * t + 23) % (Int(1) << (r + 2)) == 0);
        // P^r really is the r-th power of P
        QuadIdeal pw = unit_ideal(23);
        for (int i = 0; i < r; ++i) pw = ideal_mul(pw, P);
        CHECK(Pr == pw);
        CHECK(two_adic_power(23, r, -1).first == conj(Pr));
    }

    // 2 splits this way only when l = 7 (mod 8)
    CHECK_THROWS_AS(two_adic_power(3, 1, +1), std::invalid_argument);
    CHECK_THROWS_AS(two_adic_power(11, 1, +1), std::invalid_argument);
    CHECK(two_adic_power(15, 1, -1).second == 1);
    CHECK(two_adic_power(7, 1, +1).first.norm() == 2);
}

TEST_CASE("ideal arithmetic") {
    for (long l : {23L, 31L, 47L}) {
        std::vector<QuadIdeal> ideals;
        for (auto& f : reduced_forms(l)) ideals.push_back(ideal_from_form(l, f[0], f[1]));
        for (auto& a : ideals) {
            CHECK(ideal_mul(a, conj(a)) == principal_ideal(from_int(l, a.norm())));
            CHECK(ideal_mul(a, unit_ideal(l)) == a);
            CHECK(ideal_contains(a, a.gen1()));
            CHECK(ideal_contains(a, a.gen2()));
            CHECK(ideal_contains(a, from_int(l, a.norm())));
            for (auto& b : ideals) {
                QuadIdeal ab = ideal_mul(a, b);
                CHECK(ab.norm() == a.norm() * b.norm());
                CHECK(ab == ideal_mul(b, a));
                CHECK(ideal_subset(ab, a));
            }
        }
    }
    // containment is strict where it should be
    auto P = two_adic_power(23, 1, +1).first;
    CHECK(!ideal_contains(P, omega(23) + from_int(23, 1)));
    CHECK(ideal_subset(two_adic_power(23, 2, +1).first, P));
    CHECK(!ideal_subset(P, two_adic_power(23, 2, +1).first));
}

TEST_CASE("canonical ideal from generators") {
    // <3, (-1+sqrt(-23))/2> has norm 3
    QuadIdeal J = ideal_canonical(23, {from_int(23, 3), QuadInt(23, -1, 1)});
    CHECK(J.norm() == 3);
    CHECK(ideal_contains(J, QuadInt(23, -1, 1)));
    // generator order and redundancy do not matter
    QuadIdeal J2 = ideal_canonical(23, {QuadInt(23, -1, 1), from_int(23, 3), from_int(23, 9)});
    CHECK(J == J2);
    CHECK_THROWS_AS(ideal_canonical(23, {from_int(23, 0)}), std::invalid_argument);
}

TEST_CASE("shortest elements and class structure") {
    CHECK(shortest_element(unit_ideal(23)) == from_int(23, 1));
    auto P = two_adic_power(23, 1, +1).first;
    auto Q = two_adic_power(23, 1, -1).first;
    CHECK(!is_principal(P));
    CHECK(!is_principal(Q));
    auto P3 = two_adic_power(23, 3, +1).first;
    CHECK(is_principal(P3));
    CHECK(norm(shortest_element(P3)) == 8);
    CHECK(class_equivalent(two_adic_power(23, 2, -1).first, P));  // [Q^2] = [P]
    CHECK(!class_equivalent(P, Q));
    CHECK(class_equivalent(P, P));
    CHECK(is_principal(principal_ideal(omega(47))));
}

TEST_CASE("class numbers") {
    CHECK(class_number(7) == 1);
    CHECK(class_number(15) == 2);
    CHECK(class_number(23) == 3);
    CHECK(class_number(31) == 3);
    CHECK(class_number(47) == 5);

    auto forms = reduced_forms(23);
    REQUIRE(forms.size() == 3);
    CHECK(forms[0] == std::array<Int, 3>{1, 1, 6});
    // the two norm-2 classes are conjugate
    for (auto& f : forms) CHECK(f[1] * f[1] - 4 * f[0] * f[2] == -23);

    CHECK(class_order(unit_ideal(23)) == 1);
    CHECK(class_order(two_adic_power(23, 1, +1).first) == 3);
    CHECK(class_order(two_adic_power(31, 1, +1).first) == 3);
    CHECK(class_order(two_adic_power(47, 1, +1).first) == 5);
    CHECK(class_order(two_adic_power(15, 1, +1).first) == 2);
}

TEST_CASE("ideal literals") {
    CHECK(parse_ideal(23, "O") == unit_ideal(23));
    CHECK(parse_ideal(23, "P") == two_adic_power(23, 1, +1).first);
    CHECK(parse_ideal(23, "Q") == two_adic_power(23, 1, -1).first);
    CHECK(parse_ideal(23, "P^2") == two_adic_power(23, 2, +1).first);
    CHECK(parse_ideal(23, "Q^3") == two_adic_power(23, 3, -1).first);

    QuadIdeal qi = ideal_canonical(23, {from_int(23, 6), QuadInt(23, -5, 1)});
    CHECK(parse_ideal(23, "6,-5/2+1/2w") == qi);
    CHECK(parse_ideal(23, to_string(qi)) == qi);
    QuadIdeal J = ideal_canonical(23, {from_int(23, 3), QuadInt(23, -1, 1)});
    CHECK(parse_ideal(23, to_string(J)) == J);

    CHECK_THROWS_AS(parse_ideal(23, "Z"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ideal(23, "6,5/2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ideal(23, ""), std::invalid_argument);
    CHECK_THROWS_AS(parse_ideal(11, "P"), std::invalid_argument);  // 2 is inert
}
