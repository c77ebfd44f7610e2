#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cmlat/lattice.hpp"
#include "cmlat/matrix.hpp"

namespace cmlat {

// ---- Integer row reduction -------------------------------------------------

// Row Hermite normal form.  Returns the nonzero rows (rank many): pivots move
// left to right, pivot entries positive, entries above a pivot reduced into
// [0, pivot).  The row span is preserved exactly.
IntMat hnf(const IntMat& m);

// Same reduction, but keeps zero rows and returns the unimodular transform U
// with U * m == H.  Zero rows of H sit at the bottom; the corresponding rows
// of U span the left kernel of m.
std::pair<IntMat, IntMat> hnf_with_transform(const IntMat& m);

// Basis of the left kernel {x : x * m == 0}, one row per kernel dimension.
IntMat kernel(const IntMat& m);

int rank(const IntMat& m);

// |det| of a square matrix via HNF diagonal; 0 if singular.
Int abs_det_hnf(const IntMat& m);

// Exact determinant (signed) by fraction-free Gaussian elimination.
Int det_bareiss(const IntMat& m);

// ---- LLL -------------------------------------------------------------------

// All-integer LLL (Cohen's variant) applied to the lattice's scaled basis.
// `basis`/`denom` describe the same lattice as the input but with a reduced,
// generally non-canonical basis; `transform` is unimodular with
// transform * canonical_basis == basis.
struct LLLBasis {
    IntMat basis;
    Int denom;
    Rat scale2;
    IntMat transform;
};

LLLBasis lll_reduce(const ScaledLattice& lat, const Rat& delta = Rat(99, 100));

// ---- Short vector enumeration ----------------------------------------------

struct budget_exhausted_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnumOptions {
    int threads = 1;
    std::uint64_t node_budget = 1000000000ULL;  // enumeration tree nodes
};

// Norm histogram: ascending (norm, count) with counts over all lattice
// vectors of that norm (so every count is even; the zero vector is excluded).
struct ThetaPrefix {
    std::vector<std::pair<Rat, Int>> entries;
};

// All nonzero vectors of norm <= bound, counted with both signs.  Exact: a
// floating-point tree search proposes candidates, integer arithmetic accepts.
// In dimension <= 16 the tree search itself runs in rational arithmetic.
ThetaPrefix enumerate_short(const ScaledLattice& lat, const Rat& bound,
                            const EnumOptions& opts = {});

// As enumerate_short, but also returns one representative per +-pair of
// accepted vectors, as integer coordinate rows over denominator `denom`.
struct ShortVectors {
    ThetaPrefix theta;
    IntMat rows;  // coordinates of found vectors (one sign per pair)
    Int denom;
};

ShortVectors collect_short(const ScaledLattice& lat, const Rat& bound,
                           const EnumOptions& opts = {});

// Minimum nonzero norm, computed by a shrinking-radius search cut off at
// `cap`: if no nonzero vector of norm <= cap exists, `exceeded` is set and
// `value` is meaningless.
struct MinNorm {
    bool exceeded = false;
    Rat value;
};

MinNorm min_norm(const ScaledLattice& lat, const Rat& cap,
                 const EnumOptions& opts = {});

// Rank and Gram determinant of the sublattice spanned by all norm-2 vectors.
std::pair<int, Rat> root_sublattice_det(const ScaledLattice& lat,
                                        const EnumOptions& opts = {});

}  // namespace cmlat
