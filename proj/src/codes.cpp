#include "cmlat/codes.hpp"

#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "cmlat/reduction.hpp"

namespace cmlat {

int LinearCode::k() const {
    int out = 0;
    for (int i = 0; i < n; ++i)
        if (pre(i, i) < N) ++out;
    return out;
}

Int LinearCode::size() const {
    Int s = 1;
    for (int i = 0; i < n; ++i) s *= divexact(N, pre(i, i));
    return s;
}

IntMat LinearCode::gen() const {
    IntMat out(k(), n);
    int r = 0;
    for (int i = 0; i < n; ++i) {
        if (pre(i, i) >= N) continue;
        for (int j = 0; j < n; ++j) out(r, j) = pre(i, j);
        ++r;
    }
    return out;
}

LinearCode code_from_rows(int n, const Int& N, const IntMat& rows) {
    if (n <= 0 || N < 2) throw std::invalid_argument("code: need n >= 1, N >= 2");
    if (rows.rows() > 0 && rows.cols() != n)
        throw std::invalid_argument("code: generator width mismatch");
    LinearCode c;
    c.n = n;
    c.N = N;
    c.pre = hnf(IntMat::vstack(rows, IntMat::identity(n) * N));
    return c;
}

LinearCode code_from_lattice(const ScaledLattice& lat, const Int& N) {
    if (lat.scale2 != 1) throw std::invalid_argument("code_from_lattice: lattice is scaled");
    if (lat.d != 1) throw std::invalid_argument("code_from_lattice: lattice not integral");
    std::vector<Int> e(size_t(lat.n), Int(0));
    for (int j = 0; j < lat.n; ++j) {
        e[size_t(j)] = N;
        if (!lattice_contains(lat, e, 1))
            throw std::invalid_argument("code_from_lattice: N Z^n not contained");
        e[size_t(j)] = 0;
    }
    LinearCode c;
    c.n = lat.n;
    c.N = N;
    c.pre = lat.basis;
    return c;
}

ScaledLattice lattice_from_code(const LinearCode& c) {
    return make_lattice(c.pre, 1, Rat(1));
}

bool code_equal(const LinearCode& a, const LinearCode& b) {
    return a.n == b.n && a.N == b.N && a.pre == b.pre;
}

SelfDualCheck self_dual_check(const LinearCode& c) {
    IntMat g = c.gen();
    SelfDualCheck out;
    out.self_orthogonal = true;
    for (int i = 0; i < g.rows() && out.self_orthogonal; ++i)
        for (int j = i; j < g.rows(); ++j)
            if (fmod(dot_rows(g, i, g, j), c.N) != 0) {
                out.self_orthogonal = false;
                break;
            }
    out.self_dual =
        out.self_orthogonal && c.size() * c.size() == pow_int(c.N, (unsigned long)c.n);
    return out;
}

long min_distance(const LinearCode& c) {
    IntMat g = c.gen();
    int k = g.rows();
    if (k == 0) return c.n + 1;
    if (c.size() > (1 << 22)) throw std::invalid_argument("min_distance: code too large");
    std::vector<long> radix(static_cast<size_t>(k));
    {
        int r = 0;
        for (int i = 0; i < c.n; ++i)
            if (c.pre(i, i) < c.N) radix[size_t(r++)] = divexact(c.N, c.pre(i, i)).get_si();
    }
    std::vector<long> ctr(static_cast<size_t>(k), 0);
    std::vector<Int> word(size_t(c.n), Int(0));
    long best = c.n + 1;
    for (;;) {
        int pos = k - 1;
        while (pos >= 0 && ctr[size_t(pos)] == radix[size_t(pos)] - 1) {
            for (int j = 0; j < c.n; ++j)
                word[size_t(j)] = fmod(word[size_t(j)] - Int(radix[size_t(pos)] - 1) * g(pos, j), c.N);
            ctr[size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++ctr[size_t(pos)];
        long w = 0;
        for (int j = 0; j < c.n; ++j) {
            word[size_t(j)] = fmod(word[size_t(j)] + g(pos, j), c.N);
            if (word[size_t(j)] != 0) ++w;
        }
        if (w < best) best = w;
    }
    return best;
}

// ---- binary polynomial arithmetic on uint64 bitmasks (bit i = coeff of X^i)

namespace {

using u64 = std::uint64_t;

int deg2(u64 p) { return p ? 63 - __builtin_clzll(p) : -1; }

// carryless product; callers keep deg a + deg b < 64
u64 mul2(u64 a, u64 b) {
    u64 r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

u64 divmod2(u64 num, u64 den, u64* rem) {
    int dd = deg2(den);
    u64 q = 0;
    for (int dn = deg2(num); dn >= dd; dn = deg2(num)) {
        q ^= u64(1) << (dn - dd);
        num ^= den << (dn - dd);
    }
    if (rem) *rem = num;
    return q;
}

u64 mod2(u64 a, u64 m) {
    u64 r;
    divmod2(a, m, &r);
    return r;
}

u64 gcd2(u64 a, u64 b) {
    while (b) {
        u64 t = mod2(a, b);
        a = b;
        b = t;
    }
    return a;
}

// inverse of a modulo m, gcd(a, m) = 1
u64 inv2(u64 a, u64 m) {
    u64 r0 = m, r1 = mod2(a, m), s0 = 0, s1 = 1;
    while (r1) {
        u64 rem;
        u64 q = divmod2(r0, r1, &rem);
        u64 s2 = s0 ^ mul2(q, s1);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) throw std::logic_error("inv2: arguments not coprime");
    return s0;
}

std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
    std::vector<Int> out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

QRPolyPair qr_polynomials(long l, int r) {
    if (l < 7 || l > 47 || l % 8 != 7 || !is_probable_prime(Int(l)))
        throw std::invalid_argument("qr_polynomials: need a prime l = 7 (mod 8), l <= 47");
    if (r < 1 || r > 40) throw std::invalid_argument("qr_polynomials: r out of range");

    // X^l - 1 = (X - 1) f+ f- over the 2-element field, where f+/f- vanish on
    // the residue/non-residue powers of an l-th root of unity.  The Gauss-
    // period polynomial sum_{q in QR} X^q picks out one factor via gcd.
    u64 S = (u64(1) << l) - 1;
    u64 h = 0;
    for (long i = 1; i <= (l - 1) / 2; ++i) h |= u64(1) << ((i * i) % l);
    u64 f = gcd2(S, h);
    if (deg2(f) != (l - 1) / 2) throw std::logic_error("qr_polynomials: bad gcd degree");
    u64 rem;
    u64 g = divmod2(S, f, &rem);
    if (rem) throw std::logic_error("qr_polynomials: inexact factor split");

    u64 fp = f, fm = g;
    if ((fp >> ((l - 3) / 2)) & 1) std::swap(fp, fm);

    const int mp = int((l - 1) / 2);
    std::vector<Int> F(size_t(mp) + 1), G(size_t(mp) + 1);
    for (int i = 0; i <= mp; ++i) {
        F[size_t(i)] = (fp >> i) & 1;
        G[size_t(i)] = (fm >> i) & 1;
    }

    // Hensel: each step doubles nothing but adds one power of two, correcting
    // F*G toward S = 1 + X + ... + X^{l-1} while keeping both factors monic
    // and congruent to fp/fm mod 2.  Corrections solve u*fm + w*fp = defect.
    u64 finv = inv2(fm, fp);
    Int M = 2;
    for (int step = 1; step < r; ++step) {
        std::vector<Int> FG = poly_mul(F, G);
        u64 d = 0;
        for (long i = 0; i < l; ++i) {
            Int di = Int(1) - FG[size_t(i)];
            Int q = di / M;
            if (q * M != di) throw std::logic_error("qr_polynomials: lift drift");
            if (fmod(q, 2) != 0) d |= u64(1) << i;
        }
        u64 u = mul2(mod2(d, fp), finv);
        u = mod2(u, fp);
        u64 wrem;
        u64 w = divmod2(d ^ mul2(u, fm), fp, &wrem);
        if (wrem) throw std::logic_error("qr_polynomials: correction split failed");
        for (int i = 0; i < mp; ++i) {
            if ((u >> i) & 1) F[size_t(i)] += M;
            if ((w >> i) & 1) G[size_t(i)] += M;
        }
        M *= 2;
    }

    // defining identity, checked exactly before returning
    Int mod = pow_int(Int(2), (unsigned long)r);
    std::vector<Int> FG = poly_mul(F, G);
    FG.resize(size_t(l) + 1);
    for (long i = long(l); i >= 1; --i) FG[size_t(i)] = FG[size_t(i - 1)] - FG[size_t(i)];
    FG[0] = -FG[0];
    for (long i = 0; i <= l; ++i) {
        Int want = (i == 0) ? Int(-1) : (i == l) ? Int(1) : Int(0);
        if (fmod(FG[size_t(i)] - want, mod) != 0)
            throw std::logic_error("qr_polynomials: lifted factorization invalid");
    }

    QRPolyPair out;
    out.l = l;
    out.r = r;
    out.fplus = std::move(F);
    out.fminus = std::move(G);
    return out;
}

LinearCode lifted_qr_code(long l, int r, int sign) {
    QRPolyPair p = qr_polynomials(l, r);
    const std::vector<Int>& f = sign > 0 ? p.fplus : p.fminus;
    const int len = int(l);
    IntMat rows(len, len);
    for (long s = 0; s < l; ++s)
        for (size_t j = 0; j < f.size(); ++j) rows(int(s), int((s + long(j)) % l)) = f[j];
    return code_from_rows(len, pow_int(Int(2), (unsigned long)r), rows);
}

LinearCode extend_orthogonal(const LinearCode& c, const Int& t) {
    Int tred = fmod(t, c.N);
    Int tinv;
    if (mpz_invert(tinv.get_mpz_t(), tred.get_mpz_t(), c.N.get_mpz_t()) == 0)
        throw std::invalid_argument("extend_orthogonal: t not invertible mod N");
    IntMat g = c.gen();
    IntMat rows(g.rows(), c.n + 1);
    for (int i = 0; i < g.rows(); ++i) {
        Int s = 0;
        for (int j = 0; j < c.n; ++j) {
            rows(i, j + 1) = g(i, j);
            s += g(i, j);
        }
        rows(i, 0) = fmod(tinv * s, c.N);
    }
    return code_from_rows(c.n + 1, c.N, rows);
}

LinearCode delete_first(const LinearCode& c) {
    if (c.n < 2) throw std::invalid_argument("delete_first: code too short");
    IntMat g = c.gen();
    IntMat rows(g.rows(), c.n - 1);
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 1; j < c.n; ++j) rows(i, j - 1) = g(i, j);
    return code_from_rows(c.n - 1, c.N, rows);
}

ScaledLattice construction_B(const LinearCode& d) {
    if (d.N != 2) throw std::invalid_argument("construction_B: code must be binary");
    ScaledLattice a = lattice_from_code(d);
    // cut by sum = 0 mod 4: integer combinations x of the basis rows with
    // x . rowsums + 4y = 0 for some y
    IntMat m(d.n + 1, 1);
    for (int i = 0; i < d.n; ++i) {
        Int s = 0;
        for (int j = 0; j < d.n; ++j) s += a.basis(i, j);
        m(i, 0) = s;
    }
    m(d.n, 0) = 4;
    IntMat ker = kernel(m);
    IntMat rows(ker.rows(), d.n);
    for (int r = 0; r < ker.rows(); ++r)
        for (int j = 0; j < d.n; ++j) {
            Int s = 0;
            for (int i = 0; i < d.n; ++i) s += ker(r, i) * a.basis(i, j);
            rows(r, j) = s;
        }
    return make_lattice(rows, 1, Rat(1));
}

ScaledLattice density_double(const ScaledLattice& lat, const IntMat& glue_num,
                             const Int& glue_den) {
    if (glue_num.rows() != 1 || glue_num.cols() != lat.n || glue_den <= 0)
        throw std::invalid_argument("density_double: glue must be a 1 x n row");
    std::vector<Int> twice(size_t(lat.n));
    for (int j = 0; j < lat.n; ++j) twice[size_t(j)] = 2 * glue_num(0, j);
    if (!lattice_contains(lat, twice, glue_den))
        throw std::invalid_argument("density_double: 2*glue not in the lattice");
    if (lattice_contains(lat, glue_num.row(0), glue_den)) return lat;
    Int dd = lcm(lat.d, glue_den);
    IntMat rows = IntMat::vstack(lat.basis * divexact(dd, lat.d),
                                 glue_num * divexact(dd, glue_den));
    return make_lattice(rows, dd, lat.scale2);
}

TernaryQRReport ternary_qr_checks(long l) {
    if (l != 23 && l != 47) throw std::invalid_argument("ternary_qr_checks: fixture is 23 or 47");
    ConfMatrix w = paley(l);
    const int n = w.n;
    TernaryQRReport rep;
    rep.l = l;
    // smallest positive t with t^2 = -l (mod 3)
    Int t = 1;
    while (fmod(t * t + l, 3) != 0) ++t;
    rep.t = t;

    IntMat wmat = w.to_mat();
    IntMat plus = IntMat::identity(n) * t + wmat;
    LinearCode c3plus = code_from_rows(n, 3, plus);
    rep.code_self_dual = self_dual_check(c3plus).self_dual;
    if (l != 23) return rep;

    rep.has_l23_checks = true;
    ScaledLattice lp = build_Lpm(w, +1);
    QuadIdeal q2 = two_adic_power(l, 1, -1).first;
    QuadIdeal i3 = ideal_canonical(l, {from_int(l, 3), QuadInt(l, 1, 1)});
    QuadIdeal j3 = ideal_canonical(l, {from_int(l, 3), QuadInt(l, -1, 1)});
    QuadIdeal qi = ideal_mul(q2, i3);
    rep.qi_ideal_ok = qi == ideal_canonical(l, {from_int(l, 6), QuadInt(l, -5, 1)});

    // J L+ = (vectors of Z^24 with even coordinate sum lying over the ternary
    // code generated by I - W) extended by the glue vector (5,1,...,1)/2
    LinearCode c3minus = code_from_rows(n, 3, IntMat::identity(n) - wmat);
    ScaledLattice a3 = lattice_from_code(c3minus);
    IntMat sums(n + 1, 1);
    for (int i = 0; i < n; ++i) {
        Int s = 0;
        for (int j = 0; j < n; ++j) s += a3.basis(i, j);
        sums(i, 0) = s;
    }
    sums(n, 0) = 2;
    IntMat ker = kernel(sums);
    IntMat zrows(ker.rows(), n);
    for (int r = 0; r < ker.rows(); ++r)
        for (int j = 0; j < n; ++j) {
            Int s = 0;
            for (int i = 0; i < n; ++i) s += ker(r, i) * a3.basis(i, j);
            zrows(r, j) = 2 * s;
        }
    IntMat glue(1, n);
    glue(0, 0) = 5;
    for (int j = 1; j < n; ++j) glue(0, j) = 1;
    ScaledLattice jdesc = make_lattice(IntMat::vstack(zrows, glue), 2, Rat(1));
    rep.j_lattice_ok = lattice_equal(jdesc, ideal_times_lattice(j3, lp, w));

    // QI L+ = vectors reducing mod 2 into the code spanned by the halved row
    // pairs of I - W and mod 3 into the code of I + W
    IntMat minus = IntMat::identity(n) - wmat;
    IntMat halved(n, n);
    for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j) halved(a, j) = divexact(minus(0, j) + minus(a, j), 2);
    LinearCode cbin = code_from_rows(n, 2, halved);
    ScaledLattice qidesc =
        lattice_intersect(lattice_from_code(cbin), lattice_from_code(c3plus));
    rep.qi_lattice_ok = lattice_equal(qidesc, ideal_times_lattice(qi, lp, w));

    rep.lat_J = build_LI(j3, lp, w);
    rep.lat_QI = build_LI(qi, lp, w);
    return rep;
}

std::string format_code(const LinearCode& c) {
    std::ostringstream out;
    out << c.n << ' ' << c.N << ' ' << c.k() << '\n';
    IntMat g = c.gen();
    bool spaced = c.N > 9;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < c.n; ++j) {
            if (spaced && j) out << ' ';
            out << g(i, j);
        }
        out << '\n';
    }
    return out.str();
}

LinearCode parse_code(std::istream& in) {
    int n = 0, k = 0;
    Int N;
    if (!(in >> n >> N >> k) || n <= 0 || N < 2 || k < 0 || k > n)
        throw std::runtime_error("code parse: bad header");
    IntMat rows(k, n);
    if (N > 9) {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j)
                if (!(in >> rows(i, j))) throw std::runtime_error("code parse: bad row");
    } else {
        for (int i = 0; i < k; ++i) {
            std::string line;
            if (!(in >> line) || int(line.size()) != n)
                throw std::runtime_error("code parse: bad row");
            for (int j = 0; j < n; ++j) {
                if (line[size_t(j)] < '0' || line[size_t(j)] > '9')
                    throw std::runtime_error("code parse: bad digit");
                rows(i, j) = line[size_t(j)] - '0';
            }
        }
    }
    LinearCode c = code_from_rows(n, N, rows);
    if (c.k() != k) throw std::runtime_error("code parse: rank disagrees with header");
    return c;
}

LinearCode load_code(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open code file: " + path);
    return parse_code(in);
}

}  // namespace cmlat
