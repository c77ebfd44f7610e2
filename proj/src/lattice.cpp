#include "cmlat/lattice.hpp"

#include <istream>
#include <fstream>
#include <sstream>

#include "cmlat/reduction.hpp"

namespace cmlat {

ScaledLattice make_lattice(const IntMat& rows, const Int& denom, const Rat& scale2) {
    if (denom <= 0) throw std::invalid_argument("lattice: denominator must be positive");
    if (sgn(scale2) <= 0) throw std::invalid_argument("lattice: scale2 must be positive");
    IntMat h = hnf(rows);
    if (h.rows() != rows.cols())
        throw std::invalid_argument("lattice: generators do not span full rank");
    Int g = gcd(h.content(), denom);
    ScaledLattice out;
    out.n = rows.cols();
    if (g > 1) {
        h.divide_exact(g);
        out.d = divexact(denom, g);
    } else {
        out.d = denom;
    }
    out.basis = std::move(h);
    out.scale2 = scale2;
    out.scale2.canonicalize();
    return out;
}

bool lattice_equal(const ScaledLattice& a, const ScaledLattice& b) {
    return a.n == b.n && a.d == b.d && a.scale2 == b.scale2 && a.basis == b.basis;
}

bool lattice_contains(const ScaledLattice& lat, const std::vector<Int>& num, const Int& den) {
    if (int(num.size()) != lat.n || den <= 0)
        throw std::invalid_argument("lattice_contains: bad vector");
    // Solve x * basis = (d/den) * num by forward substitution; membership
    // means every x_j is an integer.
    std::vector<Rat> x(size_t(lat.n));
    for (int j = 0; j < lat.n; ++j) {
        Rat s = make_rat(lat.d * num[size_t(j)], den);
        for (int i = 0; i < j; ++i)
            if (lat.basis(i, j) != 0) s -= x[size_t(i)] * lat.basis(i, j);
        x[size_t(j)] = s / lat.basis(j, j);
        x[size_t(j)].canonicalize();
        if (x[size_t(j)].get_den() != 1) return false;
    }
    return true;
}

ScaledLattice lattice_sum(const ScaledLattice& a, const ScaledLattice& b) {
    if (a.n != b.n || a.scale2 != b.scale2)
        throw std::invalid_argument("lattice_sum: incompatible lattices");
    Int dd = lcm(a.d, b.d);
    IntMat rows = IntMat::vstack(a.basis * divexact(dd, a.d),
                                 b.basis * divexact(dd, b.d));
    return make_lattice(rows, dd, a.scale2);
}

ScaledLattice lattice_intersect(const ScaledLattice& a, const ScaledLattice& b) {
    if (a.n != b.n || a.scale2 != b.scale2)
        throw std::invalid_argument("lattice_intersect: incompatible lattices");
    Int dd = lcm(a.d, b.d);
    IntMat au = a.basis * divexact(dd, a.d);
    IntMat bu = b.basis * divexact(dd, b.d);
    // x*au = y*bu exactly when (x,-y) lies in the left kernel of [au; bu].
    IntMat stacked = IntMat::vstack(au, bu);
    IntMat k = kernel(stacked);
    IntMat rows(k.rows(), a.n);
    for (int r = 0; r < k.rows(); ++r)
        for (int j = 0; j < a.n; ++j) {
            Int s = 0;
            for (int i = 0; i < a.n; ++i) s += k(r, i) * au(i, j);
            rows(r, j) = s;
        }
    return make_lattice(rows, dd, a.scale2);
}

ScaledLattice intersect_integer(const ScaledLattice& lat) {
    ScaledLattice zn;
    zn.n = lat.n;
    zn.basis = IntMat::identity(lat.n);
    zn.d = 1;
    zn.scale2 = lat.scale2;
    return lattice_intersect(lat, zn);
}

ScaledLattice scale_coords(const ScaledLattice& lat, const Rat& c) {
    if (sgn(c) <= 0) throw std::invalid_argument("scale_coords: factor must be positive");
    return make_lattice(lat.basis * c.get_num(), lat.d * c.get_den(), lat.scale2);
}

Int sublattice_index(const ScaledLattice& sup, const ScaledLattice& sub) {
    if (sup.n != sub.n || sup.scale2 != sub.scale2)
        throw std::invalid_argument("sublattice_index: incompatible lattices");
    for (int i = 0; i < sub.n; ++i)
        if (!lattice_contains(sup, sub.basis.row(i), sub.d))
            throw std::invalid_argument("sublattice_index: not a sublattice");
    Rat idx(1);
    for (int i = 0; i < sub.n; ++i)
        idx *= Rat(sub.basis(i, i)) / Rat(sup.basis(i, i));
    idx *= Rat(pow_int(sup.d, (unsigned long)sup.n), pow_int(sub.d, (unsigned long)sub.n));
    idx.canonicalize();
    if (idx.get_den() != 1)
        throw std::logic_error("sublattice_index: non-integer index");
    return idx.get_num();
}

Rat det_gram(const ScaledLattice& lat) {
    Rat det(1);
    for (int i = 0; i < lat.n; ++i) det *= Rat(lat.basis(i, i) * lat.basis(i, i), lat.d * lat.d);
    for (int i = 0; i < lat.n; ++i) det *= lat.scale2;
    det.canonicalize();
    return det;
}

ScaledLattice build_D(int n) {
    if (n < 4 || n % 4 != 0) throw std::invalid_argument("build_D: n must be a multiple of 4, n >= 4");
    IntMat rows(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        rows(i, i) = 1;
        rows(i, i + 1) = -1;
    }
    rows(n - 1, n - 2) = 1;
    rows(n - 1, n - 1) = 1;
    return make_lattice(rows, 1, Rat(1));
}

ScaledLattice build_Lpm(const ConfMatrix& w, int sign, bool* module_guaranteed) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("build_Lpm: sign must be +-1");
    const int n = w.n;
    if (module_guaranteed) *module_guaranteed = (n % 8 == 0);
    ScaledLattice d_n = build_D(n);
    IntMat rows(n + 1, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rows(i, j) = 2 * d_n.basis(i, j);
    for (int j = 0; j < n; ++j) rows(n, j) = (j == 0 ? sign : 0) + w.at(0, j);
    return make_lattice(rows, 2, Rat(1));
}

namespace {

// v (a+b sqrt(-l))/2 acts by the integer matrix aI + bW over denominator 2.
IntMat action_matrix(const QuadInt& z, const ConfMatrix& w) {
    IntMat m = w.to_mat() * z.b;
    for (int i = 0; i < w.n; ++i) m(i, i) += z.a;
    return m;
}

}  // namespace

ScaledLattice act(const QuadInt& z, const ScaledLattice& lat, const ConfMatrix& w) {
    if (w.n != lat.n || z.l != w.n - 1)
        throw std::invalid_argument("act: dimension or discriminant mismatch");
    if (z.a == 0 && z.b == 0) throw std::invalid_argument("act: zero multiplier");
    return make_lattice(lat.basis * action_matrix(z, w), 2 * lat.d, lat.scale2);
}

ScaledLattice ideal_times_lattice(const QuadIdeal& ideal, const ScaledLattice& lat,
                                  const ConfMatrix& w) {
    if (w.n != lat.n || ideal.l != w.n - 1)
        throw std::invalid_argument("ideal_times_lattice: dimension or discriminant mismatch");
    IntMat m1 = lat.basis * action_matrix(ideal.gen1(), w);
    IntMat m2 = lat.basis * action_matrix(ideal.gen2(), w);
    return make_lattice(IntMat::vstack(m1, m2), 2 * lat.d, lat.scale2);
}

ScaledLattice build_LI(const QuadIdeal& ideal, const ScaledLattice& lat, const ConfMatrix& w) {
    ScaledLattice out = ideal_times_lattice(ideal, lat, w);
    out.scale2 /= Rat(ideal.norm());
    out.scale2.canonicalize();
    return out;
}

bool omodule_check(const ScaledLattice& lat, const ConfMatrix& w) {
    if (w.n != lat.n) throw std::invalid_argument("omodule_check: dimension mismatch");
    IntMat m = action_matrix(omega(w.n - 1), w);
    for (int i = 0; i < lat.n; ++i) {
        std::vector<Int> row(size_t(lat.n));
        for (int j = 0; j < lat.n; ++j) {
            Int s = 0;
            for (int t = 0; t < lat.n; ++t) s += lat.basis(i, t) * m(t, j);
            row[size_t(j)] = s;
        }
        if (!lattice_contains(lat, row, 2 * lat.d)) return false;
    }
    return true;
}

LatticeReport gram_report(const ScaledLattice& lat) {
    LatticeReport rep;
    rep.integral = true;
    rep.even = true;
    for (int i = 0; i < lat.n && rep.integral; ++i)
        for (int j = 0; j <= i; ++j) {
            Rat gij = lat.scale2 * Rat(dot_rows(lat.basis, i, lat.basis, j), lat.d * lat.d);
            gij.canonicalize();
            if (gij.get_den() != 1) {
                rep.integral = false;
                rep.even = false;
                break;
            }
            if (i == j && gij.get_num() % 2 != 0) rep.even = false;
        }
    rep.det_gram = det_gram(lat);
    rep.unimodular = rep.integral && rep.det_gram == 1;
    return rep;
}

IsometryWitness isometry_witness(const QuadIdeal& I, const QuadIdeal& J,
                                 const ScaledLattice& lat, const ConfMatrix& w) {
    if (!class_equivalent(I, J))
        throw std::invalid_argument("isometry_witness: ideal classes differ");
    // beta generates conj(I)*J when the classes agree; then alpha = beta/N(I)
    // satisfies alpha*I = J, and |alpha|^2 = N(J)/N(I) is compensated by the
    // N^{-1/2} scales of L[I], L[J].
    QuadIdeal m = ideal_mul(conj(I), J);
    QuadInt beta = shortest_element(m);
    IsometryWitness wit;
    wit.beta = beta;
    wit.denom = I.norm();
    wit.verified = (norm(beta) == I.norm() * J.norm());
    if (wit.verified) {
        ScaledLattice left =
            scale_coords(act(beta, ideal_times_lattice(I, lat, w), w), Rat(1, wit.denom));
        ScaledLattice right = ideal_times_lattice(J, lat, w);
        wit.verified = lattice_equal(left, right);
    }
    return wit;
}

std::string dump_lattice(const ScaledLattice& lat) {
    std::ostringstream out;
    out << lat.n << ' ' << lat.d.get_str() << ' ' << rat_str(lat.scale2) << '\n';
    for (int i = 0; i < lat.n; ++i) {
        for (int j = 0; j < lat.n; ++j) {
            if (j) out << ' ';
            out << lat.basis(i, j).get_str();
        }
        out << '\n';
    }
    return out.str();
}

ScaledLattice parse_lattice(std::istream& in) {
    int n = 0;
    std::string dtok, stok;
    if (!(in >> n >> dtok >> stok) || n <= 0)
        throw std::runtime_error("lattice parse: bad header");
    Int d;
    Rat s2;
    try {
        d = Int(dtok);
        if (stok.find('/') != std::string::npos)
            s2 = Rat(stok.substr(0, stok.find('/'))) / Rat(stok.substr(stok.find('/') + 1));
        else
            s2 = Rat(stok);
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("lattice parse: bad header numbers");
    }
    IntMat rows(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::string tok;
            if (!(in >> tok)) throw std::runtime_error("lattice parse: truncated matrix");
            try {
                rows(i, j) = Int(tok);
            } catch (const std::invalid_argument&) {
                throw std::runtime_error("lattice parse: bad matrix entry");
            }
        }
    try {
        return make_lattice(rows, d, s2);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("lattice parse: ") + e.what());
    }
}

ScaledLattice load_lattice(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_lattice(in);
}

}  // namespace cmlat
