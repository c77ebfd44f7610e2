#include "cmlat/quadring.hpp"

#include <algorithm>
#include <regex>
#include <stdexcept>

#include "cmlat/matrix.hpp"
#include "cmlat/reduction.hpp"

namespace cmlat {

namespace {

void validate_l(long l) {
    if (l < 3 || l % 4 != 3) throw std::invalid_argument("l must be = 3 (mod 4), l >= 3");
    for (long d = 2; d * d <= l; ++d)
        if (l % (d * d) == 0) throw std::invalid_argument("l must be squarefree");
}

void same_ring(long l1, long l2) {
    if (l1 != l2) throw std::invalid_argument("mixed quadratic rings");
}

}  // namespace

QuadInt::QuadInt(long ell, Int aa, Int bb) : l(ell), a(std::move(aa)), b(std::move(bb)) {
    validate_l(l);
    if (fmod(a - b, Int(2)) != 0)
        throw std::invalid_argument("QuadInt: a and b must have equal parity");
}

QuadInt operator+(const QuadInt& x, const QuadInt& y) {
    same_ring(x.l, y.l);
    return QuadInt(x.l, x.a + y.a, x.b + y.b);
}

QuadInt operator-(const QuadInt& x, const QuadInt& y) {
    same_ring(x.l, y.l);
    return QuadInt(x.l, x.a - y.a, x.b - y.b);
}

QuadInt operator*(const QuadInt& x, const QuadInt& y) {
    same_ring(x.l, y.l);
    // (a1 + b1 s)(a2 + b2 s)/4 with s^2 = -l; the halves stay integral by the
    // parity invariant.
    return QuadInt(x.l, divexact(x.a * y.a - Int(x.l) * x.b * y.b, Int(2)),
                   divexact(x.a * y.b + x.b * y.a, Int(2)));
}

QuadInt operator-(const QuadInt& x) { return QuadInt(x.l, -x.a, -x.b); }

QuadInt conj(const QuadInt& x) { return QuadInt(x.l, x.a, -x.b); }

Int norm(const QuadInt& x) { return divexact(x.a * x.a + Int(x.l) * x.b * x.b, Int(4)); }

Int trace(const QuadInt& x) { return x.a; }

QuadInt omega(long l) {
    validate_l(l);
    return QuadInt(l, 1, 1);
}

QuadInt from_int(long l, const Int& n) { return QuadInt(l, 2 * n, 0); }

std::pair<Int, Int> to_coords(const QuadInt& x) {
    return {divexact(x.a - x.b, Int(2)), x.b};
}

QuadInt from_coords(long l, const Int& u, const Int& v) { return QuadInt(l, 2 * u + v, v); }

std::string to_string(const QuadInt& x) {
    return x.a.get_str() + "/2" + (x.b >= 0 ? "+" : "") + x.b.get_str() + "/2w";
}

QuadInt QuadIdeal::gen1() const { return from_int(l, g); }
QuadInt QuadIdeal::gen2() const { return from_coords(l, h, k); }

QuadIdeal ideal_canonical(long l, const std::vector<QuadInt>& gens) {
    validate_l(l);
    // Rows are coordinates (omega-coefficient first, then the 1-coefficient)
    // of the generators and their omega-multiples; omega^2 = omega - (l+1)/4
    // makes that span automatically closed under O.
    const Int c = Int((l + 1) / 4);
    IntMat rows(int(gens.size()) * 2, 2);
    int r = 0;
    bool nonzero = false;
    for (const QuadInt& z : gens) {
        same_ring(l, z.l);
        if (z.a != 0 || z.b != 0) nonzero = true;
        auto [u, v] = to_coords(z);
        rows(r, 0) = v;
        rows(r, 1) = u;
        ++r;
        rows(r, 0) = u + v;   // omega * z has coordinates (-v(l+1)/4, u+v)
        rows(r, 1) = -v * c;
        ++r;
    }
    if (!nonzero) throw std::invalid_argument("ideal_canonical: zero ideal");
    IntMat h = hnf(rows);
    if (h.rows() != 2) throw std::logic_error("ideal_canonical: rank collapse");
    QuadIdeal out;
    out.l = l;
    out.k = h(0, 0);
    out.h = h(0, 1);
    out.g = h(1, 1);
    // Ideal Hermite form facts: k | g, k | h, 0 <= h < g.
    if (out.g <= 0 || out.k <= 0 || fmod(out.g, out.k) != 0 || fmod(out.h, out.k) != 0)
        throw std::logic_error("ideal_canonical: span is not an O-ideal");
    return out;
}

QuadIdeal unit_ideal(long l) {
    validate_l(l);
    QuadIdeal out;
    out.l = l;
    out.g = 1;
    out.h = 0;
    out.k = 1;
    return out;
}

QuadIdeal principal_ideal(const QuadInt& x) { return ideal_canonical(x.l, {x}); }

QuadIdeal ideal_mul(const QuadIdeal& a, const QuadIdeal& b) {
    same_ring(a.l, b.l);
    return ideal_canonical(
        a.l, {a.gen1() * b.gen1(), a.gen1() * b.gen2(), a.gen2() * b.gen1(), a.gen2() * b.gen2()});
}

QuadIdeal conj(const QuadIdeal& a) { return ideal_canonical(a.l, {a.gen1(), conj(a.gen2())}); }

bool ideal_contains(const QuadIdeal& a, const QuadInt& x) {
    same_ring(a.l, x.l);
    auto [u, v] = to_coords(x);
    if (fmod(v, a.k) != 0) return false;
    return fmod(u - divexact(v, a.k) * a.h, a.g) == 0;
}

bool ideal_subset(const QuadIdeal& b, const QuadIdeal& a) {
    same_ring(a.l, b.l);
    return ideal_contains(a, b.gen1()) && ideal_contains(a, b.gen2());
}

std::pair<QuadIdeal, Int> two_adic_power(long l, int r, int sign) {
    validate_l(l);
    if (r < 0) throw std::invalid_argument("two_adic_power: r must be >= 0");
    if (sign != 1 && sign != -1) throw std::invalid_argument("two_adic_power: sign must be +-1");
    // Find t = 1 (mod 4) with t^2 = -l (mod 2^{r+2}); exists iff l = 7 (mod 8).
    const Int mod = pow_int(Int(2), (unsigned long)r + 2);
    Int t = -1;
    for (Int cand = 1; cand < mod; cand += 4) {
        if (fmod(cand * cand + Int(l), mod) == 0) {
            t = cand;
            break;
        }
    }
    if (t < 0)
        throw std::invalid_argument(
            "two_adic_power: no square root of -l modulo 2^(r+2); requires l = 7 (mod 8)");
    QuadInt gen(l, t, sign > 0 ? Int(1) : Int(-1));  // (t +- sqrt(-l))/2
    QuadIdeal out = ideal_canonical(l, {from_int(l, pow_int(Int(2), (unsigned long)r)), gen});
    if (out.norm() != pow_int(Int(2), (unsigned long)r))
        throw std::logic_error("two_adic_power: constructed ideal has wrong norm");
    return {out, t};
}

QuadInt shortest_element(const QuadIdeal& a) {
    // Elements are u + v*omega with (u, v) = m(g, 0) + s(h, k); the norm is
    // the positive definite form u^2 + uv + v^2 (1+l)/4 = (u + v/2)^2 + l v^2/4.
    const long l = a.l;
    auto better = [](const QuadInt& x, const QuadInt& y) {
        Int nx = norm(x), ny = norm(y);
        if (nx != ny) return nx < ny;
        Int ax = abs(x.a), ay = abs(y.a);
        if (ax != ay) return ax < ay;
        if ((x.a < 0) != (y.a < 0)) return y.a < 0;
        return y.b < 0 && x.b >= 0;
    };
    QuadInt best = a.gen1();  // norm g^2
    for (Int s = 0;; s += 1) {
        Int v = s * a.k;
        // Every candidate with this v has norm >= l v^2 / 4.
        if (Int(l) * v * v > 4 * norm(best)) break;
        for (int vs = 0; vs < (s == 0 ? 1 : 2); ++vs) {
            Int vv = vs == 0 ? v : Int(-v);
            Int sh = (vs == 0 ? s : Int(-s)) * a.h;
            // u = sh (mod g); minimize (u + vv/2)^2 around u* = -vv/2.
            Int u0 = sh + a.g * round_div(-vv - 2 * sh, 2 * a.g);
            for (int off = -1; off <= 1; ++off) {
                Int u = u0 + off * a.g;
                if (u == 0 && vv == 0) continue;
                QuadInt cand = from_coords(l, u, vv);
                if (better(cand, best)) best = cand;
            }
        }
    }
    return best;
}

bool is_principal(const QuadIdeal& a) { return norm(shortest_element(a)) == a.norm(); }

bool class_equivalent(const QuadIdeal& a, const QuadIdeal& b) {
    same_ring(a.l, b.l);
    return is_principal(ideal_mul(a, conj(b)));
}

std::vector<std::array<Int, 3>> reduced_forms(long l) {
    validate_l(l);
    // Reduced primitive forms (a, b, c) with b^2 - 4ac = -l: |b| <= a <= c,
    // b > 0 whenever |b| = a or a = c.  Here b is odd since -l = 1 (mod 4).
    std::vector<std::array<Int, 3>> forms;
    for (Int b = 1; 3 * b * b <= l; b += 2) {
        Int m = divexact(b * b + l, Int(4));
        for (Int a = b; a * a <= m; a += 1) {
            if (a == 0 || fmod(m, a) != 0) continue;
            Int c = divexact(m, a);
            if (gcd(gcd(a, b), c) != 1) continue;
            forms.push_back({a, b, c});
            if (b < a && a < c) forms.push_back({a, -b, c});
        }
    }
    return forms;
}

long class_number(long l) { return long(reduced_forms(l).size()); }

QuadIdeal ideal_from_form(long l, const Int& a, const Int& b) {
    return ideal_canonical(l, {from_int(l, a), QuadInt(l, -b, 1)});
}

long class_order(const QuadIdeal& a) {
    QuadIdeal acc = a;
    for (long s = 1; s <= 256; ++s) {
        if (is_principal(acc)) return s;
        acc = ideal_mul(acc, a);
    }
    throw std::logic_error("class_order: did not terminate");
}

QuadIdeal parse_ideal(long l, const std::string& text) {
    validate_l(l);
    static const std::regex pq(R"(^([PQ])(\^(\d+))?$)");
    static const std::regex lit(R"(^(-?\d+)\s*,\s*(-?\d+)/2\s*([+-]\s*\d+)/2w$)");
    std::smatch m;
    if (text == "O") return unit_ideal(l);
    if (std::regex_match(text, m, pq)) {
        int r = m[3].matched ? std::stoi(m[3].str()) : 1;
        return two_adic_power(l, r, m[1].str() == "P" ? 1 : -1).first;
    }
    if (std::regex_match(text, m, lit)) {
        Int g(m[1].str());
        Int a(m[2].str());
        std::string bs = m[3].str();
        bs.erase(std::remove_if(bs.begin(), bs.end(), [](char c) { return c == ' '; }), bs.end());
        if (!bs.empty() && bs[0] == '+') bs.erase(bs.begin());  // mpz rejects a leading '+'
        Int b(bs);
        return ideal_canonical(l, {from_int(l, g), QuadInt(l, a, b)});
    }
    throw std::invalid_argument(
        "ideal literal must be O, P, Q, P^r, Q^r, or \"<g>,<a>/2+<b>/2w\"");
}

std::string to_string(const QuadIdeal& a) {
    QuadInt g2 = a.gen2();
    return a.g.get_str() + "," + to_string(g2);
}

}  // namespace cmlat
