#include "cmlat/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <thread>

namespace cmlat {

namespace {

// Row-reduce M to HNF in place, mirroring every row operation on *U when
// given.  Returns the rank; zero rows end up at the bottom.
int hnf_inplace(IntMat& M, IntMat* U) {
    const int m = M.rows(), n = M.cols();
    int row = 0;
    for (int col = 0; col < n && row < m; ++col) {
        // Euclid across the rows below `row` until one nonzero entry remains.
        while (true) {
            int piv = -1;
            for (int r = row; r < m; ++r) {
                if (M(r, col) != 0 &&
                    (piv < 0 || mpz_cmpabs(M(r, col).get_mpz_t(), M(piv, col).get_mpz_t()) < 0))
                    piv = r;
            }
            if (piv < 0) break;
            if (piv != row) {
                M.swap_rows(row, piv);
                if (U) U->swap_rows(row, piv);
            }
            if (M(row, col) < 0) {
                M.negate_row(row);
                if (U) U->negate_row(row);
            }
            bool clean = true;
            for (int r = row + 1; r < m; ++r) {
                if (M(r, col) == 0) continue;
                Int q = fdiv(M(r, col), M(row, col));
                M.axpy_row(r, q, row);
                if (U) U->axpy_row(r, q, row);
                if (M(r, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (row < m && M(row, col) != 0) {
            for (int r = 0; r < row; ++r) {
                Int q = fdiv(M(r, col), M(row, col));
                M.axpy_row(r, q, row);
                if (U) U->axpy_row(r, q, row);
            }
            ++row;
        }
    }
    return row;
}

}  // namespace

IntMat hnf(const IntMat& m) {
    IntMat work = m;
    int r = hnf_inplace(work, nullptr);
    return work.take_rows(r);
}

std::pair<IntMat, IntMat> hnf_with_transform(const IntMat& m) {
    IntMat work = m;
    IntMat u = IntMat::identity(m.rows());
    hnf_inplace(work, &u);
    return {work, u};
}

IntMat kernel(const IntMat& m) {
    auto [h, u] = hnf_with_transform(m);
    int r = 0;
    while (r < h.rows() && !h.row_is_zero(r)) ++r;
    IntMat out(h.rows() - r, m.rows());
    for (int i = r; i < h.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j) out(i - r, j) = u(i, j);
    return out;
}

int rank(const IntMat& m) {
    IntMat work = m;
    return hnf_inplace(work, nullptr);
}

Int abs_det_hnf(const IntMat& m) {
    assert(m.rows() == m.cols());
    IntMat work = m;
    int r = hnf_inplace(work, nullptr);
    if (r < m.rows()) return 0;
    Int det = 1;
    for (int i = 0; i < m.rows(); ++i) det *= work(i, i);
    return det;
}

Int det_bareiss(const IntMat& m) {
    assert(m.rows() == m.cols());
    const int n = m.rows();
    if (n == 0) return 1;
    IntMat a = m;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int piv = -1;
            for (int r = k + 1; r < n; ++r)
                if (a(r, k) != 0) { piv = r; break; }
            if (piv < 0) return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = divexact(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

// ---- LLL (all-integer variant) ----------------------------------------------

namespace {

// State uses 1-based indices to keep the classical recurrences readable;
// d[i] is the Gram determinant of the first i rows, lam[i][j] = d[j] * mu_ij.
struct LLLState {
    int n;
    IntMat b;
    IntMat u;
    std::vector<Int> d;
    std::vector<std::vector<Int>> lam;

    Int& l(int i, int j) { return lam[size_t(i)][size_t(j) - 1]; }

    void redi(int k, int i) {
        if (2 * abs(l(k, i)) <= d[size_t(i)]) return;
        Int q = round_div(l(k, i), d[size_t(i)]);
        b.axpy_row(k - 1, q, i - 1);
        u.axpy_row(k - 1, q, i - 1);
        l(k, i) -= q * d[size_t(i)];
        for (int j = 1; j < i; ++j) l(k, j) -= q * l(i, j);
    }

    void swapi(int k) {
        b.swap_rows(k - 1, k - 2);
        u.swap_rows(k - 1, k - 2);
        for (int j = 1; j <= k - 2; ++j) std::swap(l(k, j), l(k - 1, j));
        Int lm = l(k, k - 1);
        Int bb = divexact(d[size_t(k) - 2] * d[size_t(k)] + lm * lm, d[size_t(k) - 1]);
        for (int i = k + 1; i <= n; ++i) {
            Int t = l(i, k);
            l(i, k) = divexact(d[size_t(k)] * l(i, k - 1) - lm * t, d[size_t(k) - 1]);
            l(i, k - 1) = divexact(bb * t + lm * l(i, k), d[size_t(k)]);
        }
        d[size_t(k) - 1] = bb;
    }
};

// In-place reduction of the rows of b, mirroring row operations on u.
void lll_core(IntMat& b, IntMat& u, const Rat& delta) {
    const int n = b.rows();
    LLLState st;
    st.n = n;
    st.b = std::move(b);
    st.u = std::move(u);
    st.d.assign(size_t(n) + 1, Int(0));
    st.d[0] = 1;
    st.lam.assign(size_t(n) + 1, {});
    for (int i = 1; i <= n; ++i) st.lam[size_t(i)].assign(size_t(i), Int(0));

    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= i; ++j) {
            Int t = dot_rows(st.b, i - 1, st.b, j - 1);
            for (int s = 1; s < j; ++s)
                t = divexact(st.d[size_t(s)] * t - st.l(i, s) * st.l(j, s), st.d[size_t(s) - 1]);
            if (j < i)
                st.l(i, j) = t;
            else
                st.d[size_t(i)] = t;
        }
        if (st.d[size_t(i)] <= 0) throw std::invalid_argument("lll: basis not full rank");
    }

    const Int p = delta.get_num(), q = delta.get_den();
    int k = 2;
    while (k <= n) {
        st.redi(k, k - 1);
        Int lm = st.l(k, k - 1);
        if (q * st.d[size_t(k)] * st.d[size_t(k) - 2] <
            p * st.d[size_t(k) - 1] * st.d[size_t(k) - 1] - q * lm * lm) {
            st.swapi(k);
            k = std::max(2, k - 1);
        } else {
            for (int i = k - 2; i >= 1; --i) st.redi(k, i);
            ++k;
        }
    }
    b = std::move(st.b);
    u = std::move(st.u);
}

}  // namespace

LLLBasis lll_reduce(const ScaledLattice& lat, const Rat& delta) {
    IntMat b = lat.basis;
    IntMat u = IntMat::identity(lat.n);
    lll_core(b, u, delta);
    return LLLBasis{std::move(b), lat.d, lat.scale2, std::move(u)};
}

// ---- Enumeration ------------------------------------------------------------

// The tree search proposes integer coordinate vectors against the reduced
// basis; acceptance is always decided exactly from the integer Gram matrix.
// The search itself runs in long double with a safety margin, except in
// dimension <= 16 where it runs in exact rational arithmetic outright.

namespace {

struct FloatOps {
    using F = long double;
    static F from_int(const Int& v) { return (F)mpz_get_d(v.get_mpz_t()); }
    static F from_rat(const Rat& v) { return from_int(v.get_num()) / from_int(v.get_den()); }
    static long long round_ll(F v) {
        if (std::fabs((double)v) > 1e15) throw std::overflow_error("enumeration overflow");
        return (long long)llroundl(v);
    }
    static F from_ll(long long v) { return (F)v; }
    static F pad(F bound) { return bound * (1 + 1e-10L) + 1e-6L; }
};

struct ExactOps {
    using F = Rat;
    static F from_int(const Int& v) { return Rat(v); }
    static F from_rat(const Rat& v) { return v; }
    static long long round_ll(const F& v) {
        Rat t = v + Rat(1, 2);
        Int fl = fdiv(t.get_num(), t.get_den());
        if (!fl.fits_slong_p()) throw std::overflow_error("enumeration overflow");
        return fl.get_si();
    }
    static F from_ll(long long v) { return Rat(static_cast<long>(v)); }
    static F pad(F bound) { return bound; }
};

enum class EnumMode { count, minimize };

struct EnumTask {
    const IntMat* gram = nullptr;
    Rat capq;                      // accept Q(x) <= capq (Q integer-valued)
    EnumMode mode = EnumMode::count;
    bool collect = false;
    std::optional<Int> best_init;  // minimize: known value to beat
    std::uint64_t node_budget = 0; // 0 = unlimited
    int top_residue = 0;           // subtree split for worker threads:
    int top_modulus = 1;           //   handle top candidates == residue (mod modulus)
};

struct EnumResult {
    std::map<Int, Int> buckets;    // Q(x) -> count over +-pairs (already doubled)
    std::vector<std::vector<long long>> found;
    std::optional<Int> best;
    std::uint64_t nodes = 0;
};

Int eval_gram(const IntMat& g, const std::vector<long long>& x) {
    const int n = g.rows();
    Int total = 0;
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        Int row = 0;
        for (int j = 0; j < n; ++j) {
            if (x[j] == 0) continue;
            row += g(i, j) * Int((long)x[j]);
        }
        total += row * Int((long)x[i]);
    }
    return total;
}

bool leq_cap(const Int& q, const Rat& capq) {
    return q * capq.get_den() <= capq.get_num();
}

template <class Ops>
void enumerate_tree(const EnumTask& task, EnumResult& out) {
    using F = typename Ops::F;
    const IntMat& g = *task.gram;
    const int n = g.rows();

    // Gram-Schmidt data (mu strictly lower triangular, rdiag = |b*_i|^2).
    std::vector<std::vector<F>> mu(size_t(n), std::vector<F>(size_t(n), F(0)));
    std::vector<F> rdiag(size_t(n), F(0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            F s = Ops::from_int(g(i, j));
            for (int k = 0; k < j; ++k) s -= mu[i][k] * mu[j][k] * rdiag[k];
            if (j < i)
                mu[i][j] = s / rdiag[j];
            else
                rdiag[i] = s;
        }
    }

    Int bestq;
    bool have_best = false;
    if (task.best_init) {
        bestq = *task.best_init;
        have_best = true;
    }
    Rat capq = task.capq;
    if (task.mode == EnumMode::minimize && have_best) {
        Rat strict(bestq - 1);
        if (strict < capq) capq = strict;
    }
    if (sgn(capq) < 0) {
        out.best = task.best_init;
        return;
    }
    F radius = Ops::pad(Ops::from_rat(capq));

    // Iterative depth-first zigzag.  Level i owns coordinate x[i]; levels are
    // processed top (n-1) to bottom (0).  sigma[i+1][t] accumulates
    // sum_{j>i} x[j] mu[j][t]; sym[i] marks that all higher coordinates are
    // zero, in which case only x[i] >= 0 is scanned (one per +- pair).
    std::vector<std::vector<F>> sigma(size_t(n) + 1, std::vector<F>(size_t(n), F(0)));
    std::vector<F> center(size_t(n), F(0));
    std::vector<F> partial(size_t(n) + 1, F(0));
    std::vector<long long> x(size_t(n), 0), base(size_t(n), 0);
    std::vector<long long> step(size_t(n), 0);
    std::vector<int> side(size_t(n), 1);
    std::vector<char> sym(size_t(n), 1);

    std::uint64_t nodes = 0;
    long long top_index = 0;

    auto enter_level = [&](int i) {
        center[i] = -sigma[i + 1][i];
        step[i] = 0;
        if (sym[i]) {
            base[i] = 0;
            x[i] = 0;
        } else {
            base[i] = Ops::round_ll(center[i]);
            side[i] = (center[i] >= Ops::from_ll(base[i])) ? 1 : -1;
            x[i] = base[i];
        }
    };

    auto advance = [&](int i) {
        if (i == n - 1) ++top_index;
        ++step[i];
        if (sym[i]) {
            x[i] = step[i];
        } else {
            long long m = (step[i] + 1) / 2;
            x[i] = base[i] + ((step[i] % 2 == 1) ? m * side[i] : -m * side[i]);
        }
    };

    int i = n - 1;
    enter_level(i);

    while (true) {
        F diff = Ops::from_ll(x[i]) - center[i];
        F rho = partial[i + 1] + diff * diff * rdiag[i];
        if (rho <= radius) {
            // Tree nodes are the partial assignments inside the bound; the
            // probe that closes each level is bookkeeping, not a node.
            ++nodes;
            if (task.node_budget && nodes > task.node_budget)
                throw budget_exhausted_error("enumeration node budget exhausted");
            if (i == n - 1 && (top_index % task.top_modulus) != task.top_residue) {
                advance(i);
                continue;
            }
            if (i > 0) {
                for (int t = 0; t < i; ++t) sigma[i][t] = sigma[i + 1][t] + Ops::from_ll(x[i]) * mu[i][t];
                partial[i] = rho;
                sym[i - 1] = sym[i] && (x[i] == 0);
                --i;
                enter_level(i);
                continue;
            }
            // Leaf: exact verdict.
            bool all_zero = true;
            for (int t = 0; t < n && all_zero; ++t) all_zero = (x[t] == 0);
            if (!all_zero) {
                Int q = eval_gram(g, x);
                if (task.mode == EnumMode::count) {
                    if (leq_cap(q, task.capq)) {
                        out.buckets[q] += 2;
                        if (task.collect) out.found.push_back(x);
                    }
                } else if ((!have_best || q < bestq) && leq_cap(q, task.capq)) {
                    bestq = q;
                    have_best = true;
                    Rat strict(bestq - 1);
                    capq = strict < task.capq ? strict : task.capq;
                    radius = Ops::pad(Ops::from_rat(capq));
                }
            }
            advance(i);
            continue;
        }
        // Pruned: this level is exhausted (candidates ordered by distance).
        if (i == n - 1) break;
        ++i;
        advance(i);
    }

    out.nodes = nodes;
    if (task.mode == EnumMode::minimize && have_best) out.best = bestq;
}

// Thread fan-out for count mode; minimize mode stays single-threaded so the
// shrinking radius is deterministic.
EnumResult run_enumeration(const IntMat& gram, const Rat& capq, EnumMode mode, bool collect,
                           std::optional<Int> best_init, const EnumOptions& opts) {
    const int n = gram.rows();
    auto run_one = [&](const EnumTask& t, EnumResult& r) {
        if (n <= 16)
            enumerate_tree<ExactOps>(t, r);
        else
            enumerate_tree<FloatOps>(t, r);
    };

    int nthreads = (mode == EnumMode::count) ? std::max(1, opts.threads) : 1;
    if (nthreads == 1) {
        EnumTask task{&gram, capq, mode, collect, std::move(best_init), opts.node_budget, 0, 1};
        EnumResult res;
        run_one(task, res);
        return res;
    }

    std::vector<EnumResult> results(static_cast<size_t>(nthreads));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(nthreads));
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t] {
            EnumTask task{&gram, capq,  mode,
                          collect, best_init, opts.node_budget / nthreads,
                          t,       nthreads};
            try {
                run_one(task, results[size_t(t)]);
            } catch (...) {
                errors[size_t(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    EnumResult merged;
    for (auto& r : results) {
        for (auto& [q, c] : r.buckets) merged.buckets[q] += c;
        merged.found.insert(merged.found.end(), r.found.begin(), r.found.end());
        merged.nodes += r.nodes;
    }
    return merged;
}

// ---- Block preprocessing -----------------------------------------------------

// Long double Gram-Schmidt data straight from the row vectors.
void float_gso(const IntMat& b, std::vector<std::vector<long double>>& mu,
               std::vector<long double>& rdiag) {
    const int n = b.rows();
    mu.assign(size_t(n), std::vector<long double>(size_t(n), 0.0L));
    rdiag.assign(size_t(n), 0.0L);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            long double s = (long double)mpz_get_d(dot_rows(b, i, b, j).get_mpz_t());
            for (int k = 0; k < j; ++k)
                s -= mu[size_t(i)][size_t(k)] * mu[size_t(j)][size_t(k)] * rdiag[size_t(k)];
            if (j < i)
                mu[size_t(i)][size_t(j)] = s / rdiag[size_t(j)];
            else
                rdiag[size_t(i)] = s;
        }
}

// Shortest nonzero coefficient vector of the block [k..j] projected past k,
// by the same zigzag search in floating point; empty when nothing beats b*_k
// by a clear margin.  Heuristic: the caller re-normalizes with exact LLL, so
// float error can only cost quality, never correctness.
std::vector<long long> block_shortest(const std::vector<std::vector<long double>>& mu,
                                      const std::vector<long double>& rdiag, int k, int j,
                                      long double margin, std::uint64_t guard_limit) {
    const int m = j - k + 1;
    long double bestq = rdiag[size_t(k)] * margin;
    std::vector<long long> best;
    std::vector<std::vector<long double>> sigma(size_t(m) + 1,
                                                std::vector<long double>(size_t(m), 0.0L));
    std::vector<long double> center(size_t(m), 0.0L), partial(size_t(m) + 1, 0.0L);
    std::vector<long long> x(size_t(m), 0), base(size_t(m), 0), step(size_t(m), 0);
    std::vector<int> side(size_t(m), 1);
    std::vector<char> sym(size_t(m), 1);

    auto enter_level = [&](int t) {
        center[size_t(t)] = -sigma[size_t(t) + 1][size_t(t)];
        step[size_t(t)] = 0;
        if (sym[size_t(t)]) {
            base[size_t(t)] = 0;
            x[size_t(t)] = 0;
        } else {
            base[size_t(t)] = (long long)llroundl(center[size_t(t)]);
            side[size_t(t)] = (center[size_t(t)] >= (long double)base[size_t(t)]) ? 1 : -1;
            x[size_t(t)] = base[size_t(t)];
        }
    };
    auto advance = [&](int t) {
        ++step[size_t(t)];
        if (sym[size_t(t)]) {
            x[size_t(t)] = step[size_t(t)];
        } else {
            long long half = (step[size_t(t)] + 1) / 2;
            x[size_t(t)] = base[size_t(t)] + ((step[size_t(t)] % 2 == 1) ? half * side[size_t(t)]
                                                                         : -half * side[size_t(t)]);
        }
    };

    std::uint64_t guard = 0;
    int t = m - 1;
    enter_level(t);
    while (true) {
        if (++guard > guard_limit) break;  // preprocessing stays a bounded step
        long double diff = (long double)x[size_t(t)] - center[size_t(t)];
        long double rho = partial[size_t(t) + 1] + diff * diff * rdiag[size_t(k + t)];
        if (rho < bestq) {
            if (t > 0) {
                for (int s = 0; s < t; ++s)
                    sigma[size_t(t)][size_t(s)] =
                        sigma[size_t(t) + 1][size_t(s)] +
                        (long double)x[size_t(t)] * mu[size_t(k + t)][size_t(k + s)];
                partial[size_t(t)] = rho;
                sym[size_t(t) - 1] = sym[size_t(t)] && (x[size_t(t)] == 0);
                --t;
                enter_level(t);
                continue;
            }
            bool nonzero = false;
            for (int s = 0; s < m && !nonzero; ++s) nonzero = (x[size_t(s)] != 0);
            if (nonzero) {
                bestq = rho;
                best = x;
            }
            advance(t);
            continue;
        }
        if (t == m - 1) break;
        ++t;
        advance(t);
    }
    return best;
}

// Unimodular matrix whose first row is the primitive vector x.
IntMat complete_unimodular(const std::vector<long long>& x) {
    const int m = int(x.size());
    IntMat col(m, 1);
    for (int i = 0; i < m; ++i) col(i, 0) = Int((long)x[size_t(i)]);
    auto [h, uu] = hnf_with_transform(col);  // uu * col = (1, 0, ..., 0)^T
    (void)h;
    auto [id, vinv] = hnf_with_transform(uu);  // HNF of unimodular uu is I
    (void)id;
    return vinv.transpose();
}

// Block-improvement passes over an LLL-reduced basis: whenever the projected
// block [k..k+beta) holds a vector clearly shorter than b*_k, rotate it to
// the front of the block by a unimodular transform and re-run LLL.  Exact
// unimodular operations throughout, so the lattice itself never changes;
// only the basis quality (and with it the enumeration tree size) improves.
void bkz_core(IntMat& b, IntMat& u, const Rat& delta, int beta, int max_tours,
              long double margin = 0.995L, std::uint64_t guard_limit = 20000000ULL) {
    const int n = b.rows();
    if (n < 3 || beta < 2) return;
    std::vector<std::vector<long double>> mu;
    std::vector<long double> rdiag;
    for (int tour = 0; tour < max_tours; ++tour) {
        bool improved = false;
        float_gso(b, mu, rdiag);
        for (int k = 0; k + 1 < n; ++k) {
            int j = std::min(k + beta - 1, n - 1);
            std::vector<long long> x = block_shortest(mu, rdiag, k, j, margin, guard_limit);
            if (x.empty()) continue;
            long long g = 0;
            for (long long v : x) g = std::gcd(g, v < 0 ? -v : v);
            if (g > 1)
                for (long long& v : x) v /= g;
            bool trivial = (x[0] == 1 || x[0] == -1);
            for (size_t s = 1; s < x.size(); ++s) trivial = trivial && x[s] == 0;
            if (trivial) continue;
            IntMat t = complete_unimodular(x);
            const int m = int(x.size());
            IntMat block(m, b.cols()), ublock(m, u.cols());
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < b.cols(); ++c) block(r, c) = b(k + r, c);
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < u.cols(); ++c) ublock(r, c) = u(k + r, c);
            IntMat nb = t * block, nu = t * ublock;
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < b.cols(); ++c) b(k + r, c) = nb(r, c);
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < u.cols(); ++c) u(k + r, c) = nu(r, c);
            lll_core(b, u, delta);
            float_gso(b, mu, rdiag);
            improved = true;
        }
        if (!improved) break;
    }
}

// Expected enumeration tree size at squared radius r2: level k holds about
// half (+- symmetry) the volume of the k-ball over the covolume of the
// projection onto the last k Gram-Schmidt directions.
double tree_estimate(const std::vector<long double>& rdiag, double r2) {
    constexpr double pi = 3.141592653589793238;
    const int n = int(rdiag.size());
    double total = 0, logprod = 0;
    for (int k = 1; k <= n; ++k) {
        logprod += 0.5 * std::log((double)rdiag[size_t(n - k)]);
        double logvk = (k / 2.0) * std::log(pi * r2) - std::lgamma(k / 2.0 + 1);
        total += 0.5 * std::exp(logvk - logprod);
    }
    return total;
}

double basis_tree_estimate(const IntMat& b, double r2) {
    std::vector<std::vector<long double>> mu;
    std::vector<long double> rdiag;
    float_gso(b, mu, rdiag);
    return tree_estimate(rdiag, r2);
}

// Fixed-sequence generator (splitmix64) so the basis search below replays the
// same trajectory on every platform; std::uniform_int_distribution would not.
struct SplitMix {
    std::uint64_t s;
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int below(int m) { return int(next() % std::uint64_t(m)); }
};

void add_row(IntMat& b, IntMat& u, int i, int j, long s) {
    for (int c = 0; c < b.cols(); ++c) {
        b(i, c) += Int(s) * b(j, c);
        u(i, c) += Int(s) * u(j, c);
    }
}

// Random unimodular stir: shuffle the rows, then fold a few neighbours in.
void shake_basis(IntMat& b, IntMat& u, SplitMix& rng) {
    const int n = b.rows();
    for (int i = n - 1; i > 0; --i) {
        int j = rng.below(i + 1);
        if (j != i) {
            b.swap_rows(i, j);
            u.swap_rows(i, j);
        }
    }
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < 3; ++t) {
            int j = rng.below(n);
            if (j == i || rng.below(2) == 0) continue;
            add_row(b, u, i, j, rng.below(2) ? 1 : -1);
        }
}

// Drive the basis toward a small enumeration tree at squared radius r2.
// Block passes saturate well above what the hard certifications need, so past
// that point sample shaken restarts of the incoming basis, then walk seeded
// strict-accept nudges (row folds and rotations) from the best sample.  A
// one-tour re-reduction filters hopeless nudges before the full polish.
// Deterministic, and every stage stops as soon as the predicted tree size
// clears `target`.
void improve_for_radius(IntMat& b, IntMat& u, const Rat& delta, double r2, double target) {
    const int n = b.rows();
    if (basis_tree_estimate(b, r2) <= target) return;
    if (n < 40) {
        bkz_core(b, u, delta, 16, 8);
        if (basis_tree_estimate(b, r2) <= target) return;
    }
    const IntMat b0 = b, u0 = u;
    SplitMix rng{3ULL};
    bkz_core(b, u, delta, 32, 16, 0.995L, 50000000ULL);
    double beste = basis_tree_estimate(b, r2);

    for (int round = 0; round < 3 && beste > target; ++round) {
        for (int r = 0; r < 12 && beste > target; ++r) {
            IntMat bc = b0, uc = u0;
            shake_basis(bc, uc, rng);
            lll_core(bc, uc, delta);
            bkz_core(bc, uc, delta, 32, 16, 0.995L, 50000000ULL);
            double e = basis_tree_estimate(bc, r2);
            if (e < beste) {
                beste = e;
                b = bc;
                u = uc;
            }
        }
        for (int it = 0; it < 400 && beste > target; ++it) {
            IntMat bc = b, uc = u;
            if (rng.below(2) == 0) {
                int m = 1 + rng.below(3);
                for (int s = 0; s < m; ++s) {
                    int i = rng.below(n), j = rng.below(n);
                    if (i == j) continue;
                    add_row(bc, uc, i, j, rng.below(2) ? 1 : -1);
                }
            } else {
                int i = rng.below(n), j = rng.below(n);
                if (i > j) std::swap(i, j);
                if (i == j) continue;
                for (int r = j; r > i; --r) {
                    bc.swap_rows(r, r - 1);
                    uc.swap_rows(r, r - 1);
                }
            }
            lll_core(bc, uc, delta);
            bkz_core(bc, uc, delta, 32, 1, 0.995L, 50000000ULL);
            if (basis_tree_estimate(bc, r2) > beste * 1.02) continue;
            bkz_core(bc, uc, delta, 32, 1, 0.995L, 50000000ULL);
            double e = basis_tree_estimate(bc, r2);
            if (e < beste) {
                beste = e;
                b = bc;
                u = uc;
            }
        }
    }
}

// Common preparation: LLL-reduce, then hand back the working basis and its
// exact Gram matrix together with the Q-unit conversion Q(x) = norm * d^2 / scale2.
struct Prepared {
    LLLBasis red;
    IntMat gram;
    Rat q_per_norm;  // d^2 / scale2
};

Prepared prepare(const ScaledLattice& lat, const Rat& bound, const EnumOptions& opts) {
    Prepared p{lll_reduce(lat), IntMat(), Rat()};
    p.q_per_norm = make_rat(lat.d * lat.d, 1) / lat.scale2;
    // High ranks need better than LLL: the radius-4 search on the rank-48
    // lattices would otherwise blow any sane node budget.  Aim the basis at
    // the actual search radius and stop once the predicted tree fits well
    // inside the caller's budget.
    if (lat.n >= 32) {
        Rat capq = bound * p.q_per_norm;
        double budget = opts.node_budget ? double(opts.node_budget) : 1e9;
        improve_for_radius(p.red.basis, p.red.transform, Rat(99, 100), capq.get_d(),
                           0.935 * budget);
    }
    const IntMat& b = p.red.basis;
    const int n = b.rows();
    p.gram = IntMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            p.gram(i, j) = dot_rows(b, i, b, j);
            p.gram(j, i) = p.gram(i, j);
        }
    return p;
}

ThetaPrefix buckets_to_theta(const std::map<Int, Int>& buckets, const Rat& q_per_norm) {
    ThetaPrefix theta;
    for (const auto& [q, c] : buckets) {
        Rat norm = Rat(q) / q_per_norm;
        norm.canonicalize();
        theta.entries.emplace_back(norm, c);
    }
    return theta;
}

}  // namespace

ThetaPrefix enumerate_short(const ScaledLattice& lat, const Rat& bound, const EnumOptions& opts) {
    if (sgn(bound) <= 0) throw std::invalid_argument("enumerate_short: bound must be positive");
    Prepared p = prepare(lat, bound, opts);
    Rat capq = bound * p.q_per_norm;
    EnumResult res = run_enumeration(p.gram, capq, EnumMode::count, false, std::nullopt, opts);
    return buckets_to_theta(res.buckets, p.q_per_norm);
}

ShortVectors collect_short(const ScaledLattice& lat, const Rat& bound, const EnumOptions& opts) {
    if (sgn(bound) <= 0) throw std::invalid_argument("collect_short: bound must be positive");
    Prepared p = prepare(lat, bound, opts);
    Rat capq = bound * p.q_per_norm;
    EnumResult res = run_enumeration(p.gram, capq, EnumMode::count, true, std::nullopt, opts);
    ShortVectors sv;
    sv.theta = buckets_to_theta(res.buckets, p.q_per_norm);
    sv.denom = lat.d;
    sv.rows = IntMat(int(res.found.size()), lat.n);
    for (size_t r = 0; r < res.found.size(); ++r)
        for (int j = 0; j < lat.n; ++j) {
            Int s = 0;
            for (int i = 0; i < lat.n; ++i)
                if (res.found[r][size_t(i)] != 0)
                    s += Int((long)res.found[r][size_t(i)]) * p.red.basis(i, j);
            sv.rows(int(r), j) = s;
        }
    return sv;
}

MinNorm min_norm(const ScaledLattice& lat, const Rat& cap, const EnumOptions& opts) {
    if (sgn(cap) <= 0) throw std::invalid_argument("min_norm: cap must be positive");
    Prepared p = prepare(lat, cap, opts);
    Rat capq = cap * p.q_per_norm;
    // Shortest basis vector is a known candidate; search strictly below it.
    Int basis_min = p.gram(0, 0);
    for (int i = 1; i < lat.n; ++i) basis_min = std::min(basis_min, Int(p.gram(i, i)));
    std::optional<Int> init;
    if (leq_cap(basis_min, capq)) init = basis_min;
    EnumResult res = run_enumeration(p.gram, capq, EnumMode::minimize, false, init, opts);
    MinNorm out;
    if (res.best) {
        Rat v = Rat(*res.best) / p.q_per_norm;
        v.canonicalize();
        out.value = v;
    } else {
        out.exceeded = true;
        out.value = cap;
    }
    return out;
}

std::pair<int, Rat> root_sublattice_det(const ScaledLattice& lat, const EnumOptions& opts) {
    ShortVectors sv = collect_short(lat, 2, opts);
    // Keep exactly the norm-2 rows.
    std::vector<int> keep;
    {
        // Recompute each row's norm exactly (buckets lose the per-row link).
        for (int r = 0; r < sv.rows.rows(); ++r) {
            Int q = 0;
            for (int j = 0; j < sv.rows.cols(); ++j) q += sv.rows(r, j) * sv.rows(r, j);
            Rat norm = lat.scale2 * Rat(q) / Rat(lat.d * lat.d);
            norm.canonicalize();
            if (norm == 2) keep.push_back(r);
        }
    }
    if (keep.empty()) return {0, Rat(1)};
    IntMat rows(int(keep.size()), lat.n);
    for (size_t r = 0; r < keep.size(); ++r)
        for (int j = 0; j < lat.n; ++j) rows(int(r), j) = sv.rows(keep[r], j);
    IntMat h = hnf(rows);
    const int rk = h.rows();
    IntMat g(rk, rk);
    for (int i = 0; i < rk; ++i)
        for (int j = 0; j < rk; ++j) g(i, j) = dot_rows(h, i, h, j);
    Rat scale = lat.scale2 / Rat(lat.d * lat.d);
    Rat det = Rat(det_bareiss(g));
    for (int i = 0; i < rk; ++i) det *= scale;
    det.canonicalize();
    return {rk, det};
}

}  // namespace cmlat
