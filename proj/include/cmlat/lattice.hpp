#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmlat/conference.hpp"
#include "cmlat/matrix.hpp"
#include "cmlat/quadring.hpp"

namespace cmlat {

// Full-rank lattice in Q^n with a rational inner-product scale: the lattice
// points are (1/d) x B for x in Z^n, and the form is <u,v> = scale2 * (u.v).
// The N^{-1/2} factor in L[I] lives in scale2, keeping everything rational.
//
// Canonical representation (enforced by make_lattice): B is in row HNF,
// d >= 1, gcd(content(B), d) = 1, scale2 > 0 canonicalized.  Equal lattices
// therefore have identical fields.
struct ScaledLattice {
    int n = 0;
    IntMat basis;  // n x n, row HNF
    Int d = 1;
    Rat scale2 = 1;
};

// Canonicalize a generating set (m x n rows over denominator `denom`).
// Throws std::invalid_argument unless the rows span a rank-n lattice.
ScaledLattice make_lattice(const IntMat& rows, const Int& denom, const Rat& scale2);

bool lattice_equal(const ScaledLattice& a, const ScaledLattice& b);

// Membership of a rational vector (given over a common denominator).
bool lattice_contains(const ScaledLattice& lat, const std::vector<Int>& num, const Int& den);

// Sum and intersection (scale2 must agree).
ScaledLattice lattice_sum(const ScaledLattice& a, const ScaledLattice& b);
ScaledLattice lattice_intersect(const ScaledLattice& a, const ScaledLattice& b);

// L ∩ Z^n of the coordinate lattice; scale2 carried through unchanged.
ScaledLattice intersect_integer(const ScaledLattice& lat);

// Multiply all coordinates by a positive rational (scale2 unchanged).
ScaledLattice scale_coords(const ScaledLattice& lat, const Rat& c);

// Index |sup : sub| for sub ⊆ sup (throws if not a sublattice).
Int sublattice_index(const ScaledLattice& sup, const ScaledLattice& sub);

Rat det_gram(const ScaledLattice& lat);

// D_n: integer vectors with even coordinate sum.  scale2 = 1.
ScaledLattice build_D(int n);

// L± = L₀ + Z·glue with glue = ½ e₁(±I + W).  For n not divisible by 8 the
// lattice is still built but the O-module guarantee does not apply; if
// `module_guaranteed` is non-null it receives that flag.
ScaledLattice build_Lpm(const ConfMatrix& w, int sign, bool* module_guaranteed = nullptr);

// z·L under the action (a+b√−l)/2 · v = v·(aI+bW)/2.
ScaledLattice act(const QuadInt& z, const ScaledLattice& lat, const ConfMatrix& w);

// Subgroup generated by {α·v : α ideal basis, v lattice basis}.
ScaledLattice ideal_times_lattice(const QuadIdeal& ideal, const ScaledLattice& lat,
                                  const ConfMatrix& w);

// L[I] = N(I)^{-1/2} · I·L: ideal_times_lattice with scale2 divided by N(I).
ScaledLattice build_LI(const QuadIdeal& ideal, const ScaledLattice& lat, const ConfMatrix& w);

// Is L closed under multiplication by ω?
bool omodule_check(const ScaledLattice& lat, const ConfMatrix& w);

struct LatticeReport {
    bool integral = false;
    bool even = false;
    Rat det_gram;
    bool unimodular = false;
    // Filled by enumeration (reduction module); absent until then.  When the
    // search was cut off at a cap without finding a vector, min_norm is absent
    // and min_norm_cap records the cap ("min_norm > cap").
    std::optional<Rat> min_norm;
    std::optional<Rat> min_norm_cap;
    std::vector<std::pair<Rat, Int>> theta_prefix;
};

// Exact integrality/evenness/determinant certification from the Gram matrix.
LatticeReport gram_report(const ScaledLattice& lat);

// Isometry witness between L[I] and L[J] for equivalent ideal classes:
// beta generates conj(I)·J, alpha = beta/N(I), and verified records the
// exact lattice identity alpha·(I·L) = J·L together with N(beta) = N(I)N(J).
// Throws std::invalid_argument if the classes differ.
struct IsometryWitness {
    QuadInt beta;
    Int denom;  // alpha = beta / denom
    bool verified = false;
};

IsometryWitness isometry_witness(const QuadIdeal& I, const QuadIdeal& J,
                                 const ScaledLattice& lat, const ConfMatrix& w);

// Dump format: one header line "n d p/q", then n rows of n integers.
std::string dump_lattice(const ScaledLattice& lat);
ScaledLattice parse_lattice(std::istream& in);
ScaledLattice load_lattice(const std::string& path);

}  // namespace cmlat
