#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cmlat/matrix.hpp"

namespace cmlat {

// Skew-symmetric conference matrix: entries in {0,+1,-1}, zero diagonal,
// W^T = -W, and W W^T = (n-1) I.
struct ConfMatrix {
    int n = 0;
    std::vector<signed char> e;  // row-major
    std::vector<std::string> labels;

    int at(int i, int j) const { return e[size_t(i) * n + j]; }
    void set(int i, int j, int v) { e[size_t(i) * n + j] = (signed char)v; }

    IntMat to_mat() const {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = at(i, j);
        return m;
    }
};

// Legendre symbol of a mod odd prime p, by Euler's criterion.
int legendre(const Int& a, const Int& p);

// Paley construction for prime l = 3 (mod 4): rows/columns indexed by
// {inf} followed by 0..l-1, W[inf,j] = 1, W[i,j] = legendre(j-i) off the
// diagonal.  Throws std::invalid_argument for bad l.
ConfMatrix paley(long l);

// Order-doubling: n -> 2n via the block matrix [[W, I+W], [-I+W, -W]].
ConfMatrix doubled(const ConfMatrix& w);

bool is_skew_conference(const IntMat& m);
inline bool is_skew_conference(const ConfMatrix& w) { return is_skew_conference(w.to_mat()); }

// Built-in 16x16 matrices "W1" and "W2" (the two inequivalent skew
// conference matrices of order 16).
ConfMatrix builtin(const std::string& name);

// Text format: first line n, then n lines of n characters from {0,+,-}.
ConfMatrix parse_cm(std::istream& in);
ConfMatrix load_cm(const std::string& path);
std::string format_cm(const ConfMatrix& w);

}  // namespace cmlat
