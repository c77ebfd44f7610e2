#pragma once

#include <string>
#include <vector>

#include "cmlat/lattice.hpp"

namespace cmlat {

// Linear code over Z/NZ, stored as the row HNF of its integer preimage under
// coordinatewise reduction.  The preimage contains N Z^n, so every pivot
// divides N; rows with pivot < N are the generators.  The HNF is a unique
// (Howell-style) canonical form: two codes are equal iff the fields match.
struct LinearCode {
    int n = 0;
    Int N = 2;
    IntMat pre;  // n x n upper triangular

    int k() const;       // number of generator rows
    Int size() const;    // prod_i N / pre(i,i)
    IntMat gen() const;  // k x n, entries in [0, N)
};

// Span of the given rows (arbitrary integers, reduced mod N).
LinearCode code_from_rows(int n, const Int& N, const IntMat& rows);

// Reduction of an integer lattice mod N.  Requires scale2 = 1, d = 1 and
// N Z^n ⊆ lat ⊆ Z^n; throws std::invalid_argument otherwise.
LinearCode code_from_lattice(const ScaledLattice& lat, const Int& N);

// Construction A: the preimage lattice itself, with scale2 = 1.
ScaledLattice lattice_from_code(const LinearCode& c);

bool code_equal(const LinearCode& a, const LinearCode& b);

struct SelfDualCheck {
    bool self_orthogonal = false;  // all pairwise products of words are 0 mod N
    bool self_dual = false;        // self-orthogonal and |C|^2 = N^n
};
SelfDualCheck self_dual_check(const LinearCode& c);

// Minimum Hamming weight by exhaustive word enumeration.  The zero code has
// no nonzero word; it reports the sentinel n+1.  Throws if |C| > 2^22.
long min_distance(const LinearCode& c);

// The factorization X^l - 1 = (X - 1) f+ f- over Z/2^r Z for prime
// l = 7 (mod 8), lifted from the quadratic-residue split mod 2.  Coefficients
// ascending, reduced to [0, 2^r).  f+ is the factor whose X^((l-3)/2)
// coefficient is even.
struct QRPolyPair {
    long l = 0;
    int r = 1;
    std::vector<Int> fplus;
    std::vector<Int> fminus;
};
QRPolyPair qr_polynomials(long l, int r);

// Cyclic code of length l over Z/2^r Z generated by f+ (sign > 0) or f-.
LinearCode lifted_qr_code(long l, int r, int sign);

// Prepend to each word the coordinate making it orthogonal to (-t, 1, ..., 1);
// t must be invertible mod N (odd, for N a power of 2).
LinearCode extend_orthogonal(const LinearCode& c, const Int& t);

// Projection deleting the first coordinate.
LinearCode delete_first(const LinearCode& c);

// For a binary code D: the integer vectors reducing mod 2 into D whose
// coordinate sum is a multiple of 4.
ScaledLattice construction_B(const LinearCode& d);

// lat + Z*glue for a glue vector with 2*glue in lat (throws otherwise);
// glue is given as a 1 x n row over denominator glue_den.
ScaledLattice density_double(const ScaledLattice& lat, const IntMat& glue_num,
                             const Int& glue_den);

// Verification bundle for the ternary quadratic-residue structure at
// l = 23 and l = 47 (t is the smallest positive solution of t^2 = -l mod 3).
struct TernaryQRReport {
    long l = 0;
    Int t = 1;
    bool code_self_dual = false;  // rows of tI + W over Z/3Z
    bool has_l23_checks = false;
    bool qi_ideal_ok = false;    // Q * <3, omega> = <6, -3 + omega>
    bool j_lattice_ok = false;   // J L+ = (even-sum ternary preimage) + glue
    bool qi_lattice_ok = false;  // QI L+ = binary/ternary double reduction
    ScaledLattice lat_J;         // L+[J]  (Leech candidates, for callers to
    ScaledLattice lat_QI;        // L+[QI]  certify by enumeration)
};
TernaryQRReport ternary_qr_checks(long l);

// Code file format: header "n N k", then k rows of n digits
// (space-separated when N > 9).
std::string format_code(const LinearCode& c);
LinearCode parse_code(std::istream& in);
LinearCode load_code(const std::string& path);

}  // namespace cmlat
