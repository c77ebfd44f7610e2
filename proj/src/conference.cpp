#include "cmlat/conference.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace cmlat {

int legendre(const Int& a, const Int& p) {
    Int r = fmod(a, p);
    if (r == 0) return 0;
    // Euler's criterion: r^((p-1)/2) mod p is 1 or p-1.
    Int e = (p - 1) / 2, m;
    mpz_powm(m.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (m == 1) return 1;
    if (m == p - 1) return -1;
    throw std::invalid_argument("legendre: modulus not an odd prime");
}

ConfMatrix paley(long l) {
    if (l < 3 || l % 4 != 3 || !is_probable_prime(Int(l)))
        throw std::invalid_argument("paley: l must be a prime = 3 (mod 4)");
    const int n = int(l) + 1;
    ConfMatrix w;
    w.n = n;
    w.e.assign(size_t(n) * n, 0);
    w.labels.resize(size_t(n));
    w.labels[0] = "inf";
    for (long i = 0; i < l; ++i) w.labels[size_t(i) + 1] = std::to_string(i);
    for (long j = 0; j < l; ++j) {
        w.set(0, int(j) + 1, 1);
        w.set(int(j) + 1, 0, -1);
    }
    for (long i = 0; i < l; ++i)
        for (long j = 0; j < l; ++j)
            if (i != j) w.set(int(i) + 1, int(j) + 1, legendre(Int(j - i), Int(l)));
    return w;
}

ConfMatrix doubled(const ConfMatrix& w) {
    const int n = w.n;
    ConfMatrix out;
    out.n = 2 * n;
    out.e.assign(size_t(2 * n) * (2 * n), 0);
    out.labels.resize(size_t(2 * n));
    for (int i = 0; i < n; ++i) {
        out.labels[size_t(i)] = w.labels.empty() ? std::to_string(i) : w.labels[size_t(i)] + ".0";
        out.labels[size_t(n + i)] =
            w.labels.empty() ? std::to_string(n + i) : w.labels[size_t(i)] + ".1";
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int v = w.at(i, j);
            out.set(i, j, v);
            out.set(i, n + j, (i == j ? 1 : 0) + v);
            out.set(n + i, j, (i == j ? -1 : 0) + v);
            out.set(n + i, n + j, -v);
        }
    return out;
}

bool is_skew_conference(const IntMat& m) {
    if (m.rows() != m.cols()) return false;
    const int n = m.rows();
    if (n >= 3 && n % 4 != 0) return false;
    for (int i = 0; i < n; ++i) {
        if (m(i, i) != 0) return false;
        for (int j = 0; j < n; ++j) {
            if (i != j && m(i, j) != 1 && m(i, j) != -1) return false;
            if (m(i, j) != -m(j, i)) return false;
        }
    }
    // W W^T = (n-1) I
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Int s = dot_rows(m, i, m, j);
            if (s != (i == j ? Int(n - 1) : Int(0))) return false;
        }
    return true;
}

namespace {

// The two order-16 matrices used by the rank-16 examples.  W1 arises from
// the doubling construction iterated from order 1; W2 is a genuinely
// different matrix (the two are not equivalent).
const char* const kW1[16] = {
    "0+++++++++++++++",
    "-0-+-+-+-+-+-+-+",
    "-+0--++--++--++-",
    "--+0--++--++--++",
    "-+++0----++++---",
    "---++0+----++++-",
    "-+--+-0+-+--+-++",
    "--+-++-0--+-++-+",
    "-+++++++0-------",
    "---+-+-++0+-+-+-",
    "-+---++-+-0++--+",
    "--+---++++-0++--",
    "-+++----+---0+++",
    "---++-+-+++--0-+",
    "-+--+--++-++-+0-",
    "--+-++--++-+--+0",
};

const char* const kW2[16] = {
    "0+++++++++++++++",
    "-0++-+--+-++-+--",
    "--0++-+-+--++-+-",
    "---0++-++---++-+",
    "-+--0++-++---++-",
    "--+--0+++-+---++",
    "-+-+--0+++-+---+",
    "-++-+--0+++-+---",
    "--------0+++++++",
    "-+++-+---0--+-++",
    "--+++-+--+0--+-+",
    "---+++-+-++0--+-",
    "-+--+++---++0--+",
    "--+--+++-+-++0--",
    "-+-+--++--+-++0-",
    "-++-+--+---+-++0",
};

ConfMatrix from_rows(const char* const* rows, int n) {
    ConfMatrix w;
    w.n = n;
    w.e.assign(size_t(n) * n, 0);
    w.labels.resize(size_t(n));
    for (int i = 0; i < n; ++i) {
        w.labels[size_t(i)] = std::to_string(i);
        for (int j = 0; j < n; ++j) {
            char c = rows[i][j];
            w.set(i, j, c == '+' ? 1 : c == '-' ? -1 : 0);
        }
    }
    return w;
}

}  // namespace

ConfMatrix builtin(const std::string& name) {
    if (name == "W1") return from_rows(kW1, 16);
    if (name == "W2") return from_rows(kW2, 16);
    throw std::invalid_argument("unknown builtin conference matrix: " + name);
}

ConfMatrix parse_cm(std::istream& in) {
    int n = 0;
    if (!(in >> n) || n <= 0) throw std::runtime_error("conference matrix parse: bad order");
    ConfMatrix w;
    w.n = n;
    w.e.assign(size_t(n) * n, 0);
    w.labels.resize(size_t(n));
    for (int i = 0; i < n; ++i) {
        w.labels[size_t(i)] = std::to_string(i);
        std::string row;
        if (!(in >> row) || int(row.size()) != n)
            throw std::runtime_error("conference matrix parse: bad row");
        for (int j = 0; j < n; ++j) {
            char c = row[size_t(j)];
            if (c != '0' && c != '+' && c != '-')
                throw std::runtime_error("conference matrix parse: bad entry");
            w.set(i, j, c == '+' ? 1 : c == '-' ? -1 : 0);
        }
    }
    if (!is_skew_conference(w))
        throw std::runtime_error("conference matrix parse: not a skew conference matrix");
    return w;
}

ConfMatrix load_cm(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_cm(in);
}

std::string format_cm(const ConfMatrix& w) {
    std::ostringstream out;
    out << w.n << '\n';
    for (int i = 0; i < w.n; ++i) {
        for (int j = 0; j < w.n; ++j) {
            int v = w.at(i, j);
            out << (v > 0 ? '+' : v < 0 ? '-' : '0');
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace cmlat
