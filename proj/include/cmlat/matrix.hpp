#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "cmlat/numeric.hpp"

namespace cmlat {

// Dense row-major matrix over GMP integers.  Deliberately small: the
// algorithms in this project need exact arithmetic, not BLAS speed.
class IntMat {
public:
    IntMat() : r_(0), c_(0) {}
    IntMat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols) {
        assert(rows >= 0 && cols >= 0);
    }
    IntMat(std::initializer_list<std::initializer_list<long>> rows) {
        r_ = int(rows.size());
        c_ = r_ ? int(rows.begin()->size()) : 0;
        a_.reserve(size_t(r_) * c_);
        for (const auto& row : rows) {
            if (int(row.size()) != c_) throw std::invalid_argument("ragged initializer");
            for (long v : row) a_.emplace_back(v);
        }
    }

    int rows() const { return r_; }
    int cols() const { return c_; }

    Int& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const Int& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    bool operator==(const IntMat& o) const {
        return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
    }
    bool operator!=(const IntMat& o) const { return !(*this == o); }

    IntMat operator*(const IntMat& o) const {
        assert(c_ == o.r_);
        IntMat out(r_, o.c_);
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k) {
                const Int& v = (*this)(i, k);
                if (v == 0) continue;
                for (int j = 0; j < o.c_; ++j) out(i, j) += v * o(k, j);
            }
        return out;
    }

    IntMat operator+(const IntMat& o) const {
        assert(r_ == o.r_ && c_ == o.c_);
        IntMat out(r_, c_);
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
        return out;
    }

    IntMat operator-(const IntMat& o) const {
        assert(r_ == o.r_ && c_ == o.c_);
        IntMat out(r_, c_);
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
        return out;
    }

    IntMat operator*(const Int& s) const {
        IntMat out(r_, c_);
        for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * s;
        return out;
    }

    IntMat transpose() const {
        IntMat out(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }

    void negate_row(int i) {
        for (int k = 0; k < c_; ++k) (*this)(i, k) = -(*this)(i, k);
    }

    // row i -= q * row j
    void axpy_row(int i, const Int& q, int j) {
        if (q == 0) return;
        for (int k = 0; k < c_; ++k) (*this)(i, k) -= q * (*this)(j, k);
    }

    bool row_is_zero(int i) const {
        for (int k = 0; k < c_; ++k)
            if ((*this)(i, k) != 0) return false;
        return true;
    }

    std::vector<Int> row(int i) const {
        std::vector<Int> out(c_);
        for (int k = 0; k < c_; ++k) out[k] = (*this)(i, k);
        return out;
    }

    void set_row(int i, const std::vector<Int>& v) {
        assert(int(v.size()) == c_);
        for (int k = 0; k < c_; ++k) (*this)(i, k) = v[k];
    }

    IntMat take_rows(int count) const {
        assert(count <= r_);
        IntMat out(count, c_);
        for (int i = 0; i < count; ++i)
            for (int j = 0; j < c_; ++j) out(i, j) = (*this)(i, j);
        return out;
    }

    static IntMat vstack(const IntMat& a, const IntMat& b) {
        assert(a.cols() == b.cols() || a.rows() == 0 || b.rows() == 0);
        int cols = a.rows() ? a.cols() : b.cols();
        IntMat out(a.rows() + b.rows(), cols);
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < cols; ++j) out(i, j) = a(i, j);
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < cols; ++j) out(a.rows() + i, j) = b(i, j);
        return out;
    }

    Int content() const {
        Int g = 0;
        for (const Int& v : a_) {
            g = cmlat::gcd(g, v);
            if (g == 1) break;
        }
        return g;
    }

    void divide_exact(const Int& s) {
        assert(s != 0);
        for (Int& v : a_) {
            Int q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t());
            assert(r == 0);
            v = q;
        }
    }

private:
    int r_, c_;
    std::vector<Int> a_;
};

inline Int dot_rows(const IntMat& a, int i, const IntMat& b, int j) {
    assert(a.cols() == b.cols());
    Int s = 0;
    for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(j, k);
    return s;
}

}  // namespace cmlat
