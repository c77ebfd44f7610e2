#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cmlat/numeric.hpp"

namespace cmlat {

// Element (a + b sqrt(-l))/2 of the maximal order O = Z[(1+sqrt(-l))/2],
// l squarefree and = 3 (mod 4).  The integrality condition is a = b (mod 2).
struct QuadInt {
    long l = 3;
    Int a, b;

    QuadInt() = default;
    QuadInt(long ell, Int aa, Int bb);

    bool operator==(const QuadInt& o) const { return l == o.l && a == o.a && b == o.b; }
    bool operator!=(const QuadInt& o) const { return !(*this == o); }
};

QuadInt operator+(const QuadInt& x, const QuadInt& y);
QuadInt operator-(const QuadInt& x, const QuadInt& y);
QuadInt operator*(const QuadInt& x, const QuadInt& y);
QuadInt operator-(const QuadInt& x);

QuadInt conj(const QuadInt& x);
Int norm(const QuadInt& x);   // (a^2 + l b^2) / 4, always a nonneg integer
Int trace(const QuadInt& x);  // a

// omega = (1 + sqrt(-l))/2, so O = Z + Z omega and omega^2 = omega - (l+1)/4.
QuadInt omega(long l);
QuadInt from_int(long l, const Int& n);

// Coordinates over the basis {1, omega}: x = u + v*omega.
std::pair<Int, Int> to_coords(const QuadInt& x);
QuadInt from_coords(long l, const Int& u, const Int& v);

std::string to_string(const QuadInt& x);

// Nonzero ideal of O in Hermite form over {1, omega}: row basis
// (g, 0), (h, k), with g,k >= 1, 0 <= h < g, and k | g, k | h.
// norm = g*k = |O/I|.
struct QuadIdeal {
    long l = 3;
    Int g, h, k;

    Int norm() const { return g * k; }
    QuadInt gen1() const;  // g
    QuadInt gen2() const;  // h + k*omega

    bool operator==(const QuadIdeal& o) const {
        return l == o.l && g == o.g && h == o.h && k == o.k;
    }
    bool operator!=(const QuadIdeal& o) const { return !(*this == o); }
};

// Smallest ideal containing the given elements (which need not be a basis);
// throws if all are zero.  O-closure is enforced by adjoining omega*x.
QuadIdeal ideal_canonical(long l, const std::vector<QuadInt>& gens);

QuadIdeal unit_ideal(long l);
QuadIdeal principal_ideal(const QuadInt& x);
QuadIdeal ideal_mul(const QuadIdeal& a, const QuadIdeal& b);
QuadIdeal conj(const QuadIdeal& a);

// Does the ideal contain x?
bool ideal_contains(const QuadIdeal& a, const QuadInt& x);
// Is b a subset of a?
bool ideal_subset(const QuadIdeal& b, const QuadIdeal& a);

// The prime factors of 2: 2 O = P Q with P = <2, (1+sqrt(-l))/2> and
// Q = <2, (1-sqrt(-l))/2>.  P^r = 2^r Z + (t + sqrt(-l))/2 Z for t with
// t = 1 (mod 4) and t^2 = -l (mod 2^(r+2)); such t exists iff l = 7 (mod 8).
// sign=+1 gives P^r, sign=-1 gives Q^r.  Returns the ideal and the t used.
std::pair<QuadIdeal, Int> two_adic_power(long l, int r, int sign);

// A shortest nonzero element (minimal norm); ties broken toward small |a|,
// then a >= 0, then b >= 0, so the result is deterministic.
QuadInt shortest_element(const QuadIdeal& a);

bool is_principal(const QuadIdeal& a);
bool class_equivalent(const QuadIdeal& a, const QuadIdeal& b);

// Class number of O, counting reduced primitive binary quadratic forms of
// discriminant -l.
long class_number(long l);
// All reduced forms (a, b, c) with b^2 - 4ac = -l.
std::vector<std::array<Int, 3>> reduced_forms(long l);
// Ideal a Z + ((-b + sqrt(-l))/2) Z attached to the form (a, b, c).
QuadIdeal ideal_from_form(long l, const Int& a, const Int& b);

// Order of [a] in the class group (searches successive powers).
long class_order(const QuadIdeal& a);

// Ideal literal syntax used by the command line tools:
//   "O"               unit ideal
//   "P", "Q", "P^r", "Q^r"   two-adic primes and powers (l = 7 mod 8 only)
//   "<g>,<a>/2+<b>/2w"       Z-basis g, (a + b sqrt(-l))/2
QuadIdeal parse_ideal(long l, const std::string& text);
std::string to_string(const QuadIdeal& a);

}  // namespace cmlat
