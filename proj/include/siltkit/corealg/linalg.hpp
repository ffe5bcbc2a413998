#pragma once

// Dense exact linear algebra over a field K: echelon forms, kernels, and an
// incremental span basis that answers membership and coordinate queries.

#include "siltkit/corealg/field.hpp"

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace siltkit {

template <class K>
using Vec = std::vector<K>;

template <class K>
bool is_zero_vector(const Vec<K>& v) {
    return std::all_of(v.begin(), v.end(), [](const K& x) { return is_zero(x); });
}

template <class K>
void axpy(Vec<K>& y, const K& a, const Vec<K>& x) {
    assert(y.size() == x.size());
    if (is_zero(a))
        return;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!is_zero(x[i]))
            y[i] += a * x[i];
}

template <class K>
Vec<K> unit_vector(std::size_t n, std::size_t i) {
    Vec<K> v(n, K(0));
    v[i] = K(1);
    return v;
}

/// Row-major dense matrix.
template <class K>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = K(1);
        return m;
    }

    static Matrix from_columns(std::size_t rows, const std::vector<Vec<K>>& cols) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = cols[j][i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec<K> row(std::size_t i) const { return Vec<K>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
    Vec<K> column(std::size_t j) const {
        Vec<K> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }
    void set_column(std::size_t j, const Vec<K>& c) {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, j) = c[i];
    }

    Vec<K> apply(const Vec<K>& x) const {
        assert(x.size() == cols_);
        Vec<K> y(rows_, K(0));
        for (std::size_t j = 0; j < cols_; ++j) {
            if (is_zero(x[j]))
                continue;
            for (std::size_t i = 0; i < rows_; ++i)
                if (!is_zero((*this)(i, j)))
                    y[i] += (*this)(i, j) * x[j];
        }
        return y;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero_matrix() const {
        return std::all_of(data_.begin(), data_.end(), [](const K& x) { return is_zero(x); });
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        assert(a.cols_ == b.rows_);
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t l = 0; l < a.cols_; ++l) {
                const K& x = a(i, l);
                if (is_zero(x))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!is_zero(b(l, j)))
                        c(i, j) += x * b(l, j);
            }
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i)
            c.data_[i] -= b.data_[i];
        return c;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i)
            c.data_[i] += b.data_[i];
        return c;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<K> data_;
};

/// Reduced row echelon form in place; returns the pivot columns.
template <class K>
std::vector<std::size_t> rref(Matrix<K>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && is_zero(m(p, c)))
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        K inv = K(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m(i, c)))
                continue;
            K f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!is_zero(m(r, j)))
                    m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class K>
std::size_t rank(Matrix<K> m) {
    return rref(m).size();
}

/// Basis of {x : m x = 0}.
template <class K>
std::vector<Vec<K>> nullspace(Matrix<K> m) {
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<Vec<K>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vec<K> v(m.cols(), K(0));
        v[f] = K(1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -m(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some x with m x = b, or nullopt.
template <class K>
std::optional<Vec<K>> solve(const Matrix<K>& m, const Vec<K>& b) {
    Matrix<K> aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto pivots = rref(aug);
    Vec<K> x(m.cols(), K(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == m.cols())
            return std::nullopt;
        x[pivots[r]] = aug(r, m.cols());
    }
    return x;
}

/// Determinant by Gaussian elimination.
template <class K>
K determinant(Matrix<K> m) {
    assert(m.rows() == m.cols());
    K det(1);
    std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(m(p, c)))
            ++p;
        if (p == n)
            return K(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        K inv = K(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(m(i, c)))
                continue;
            K f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

/// Integer determinant (Bareiss, fraction free).
inline mpz_class integer_determinant(std::vector<std::vector<mpz_class>> a) {
    std::size_t n = a.size();
    if (n == 0)
        return 1;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = t;
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// Incrementally built basis of a subspace of K^n.  Generators that are
/// added successfully are numbered 0, 1, ...; coords() expresses a vector in
/// those generators.
template <class K>
class SpanBasis {
public:
    explicit SpanBasis(std::size_t ambient = 0) : n_(ambient) {}

    std::size_t ambient() const { return n_; }
    std::size_t size() const { return rows_.size(); }

    /// Adds v if it is independent of the current span; returns whether it was.
    bool add(const Vec<K>& v) {
        assert(v.size() == n_);
        Vec<K> r = v;
        Vec<K> lambda(rows_.size(), K(0));
        reduce(r, lambda);
        auto p = first_nonzero(r);
        if (!p)
            return false;
        // r = gen_new - sum_i lambda_i row_i, expanded over generators
        for (auto& c : combos_)
            c.push_back(K(0));
        Vec<K> comb(rows_.size() + 1, K(0));
        comb.back() = K(1);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            axpy(comb, K(-lambda[i]), combos_[i]);
        K inv = K(1) / r[*p];
        for (auto& x : r)
            x *= inv;
        for (auto& c : comb)
            c *= inv;
        rows_.push_back(std::move(r));
        pivots_.push_back(*p);
        combos_.push_back(std::move(comb));
        return true;
    }

    bool contains(const Vec<K>& v) const {
        Vec<K> r = v;
        Vec<K> comb(rows_.size(), K(0));
        reduce(r, comb);
        return is_zero_vector(r);
    }

    /// Coordinates of v in the added generators, or nullopt if v is outside the span.
    std::optional<Vec<K>> coords(const Vec<K>& v) const {
        Vec<K> r = v;
        Vec<K> lambda(rows_.size(), K(0));
        reduce(r, lambda);
        if (!is_zero_vector(r))
            return std::nullopt;
        Vec<K> out(rows_.size(), K(0));
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (!is_zero(lambda[i]))
                for (std::size_t g = 0; g < combos_[i].size(); ++g)
                    if (!is_zero(combos_[i][g]))
                        out[g] += lambda[i] * combos_[i][g];
        return out;
    }

private:
    // r -= sum lambda_i row_i with lambda recorded; rows are in insertion order
    // and each row vanishes at the pivots of the rows before it.
    void reduce(Vec<K>& r, Vec<K>& lambda) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const K& x = r[pivots_[i]];
            if (is_zero(x))
                continue;
            K f = x;
            lambda[i] += f;
            const auto& row = rows_[i];
            for (std::size_t j = 0; j < n_; ++j)
                if (!is_zero(row[j]))
                    r[j] -= f * row[j];
        }
    }
    static std::optional<std::size_t> first_nonzero(const Vec<K>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!is_zero(v[i]))
                return i;
        return std::nullopt;
    }

    std::size_t n_;
    std::vector<Vec<K>> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<Vec<K>> combos_; // row_i = sum_g combos_[i][g] * generator_g
};

/// Subquotient Z/B with chosen representatives: the classes of `reps` form a
/// basis of Z/B.  Representatives are picked greedily from `seeds` first and
/// then from a reduced echelon basis of Z.
template <class K>
class Subquotient {
public:
    Subquotient(std::size_t ambient, const std::vector<Vec<K>>& cycles, const std::vector<Vec<K>>& boundaries,
                const std::vector<Vec<K>>& seeds = {})
        : span_(ambient) {
        for (const auto& b : boundaries)
            if (span_.add(b))
                ++num_boundary_;
        auto try_rep = [&](const Vec<K>& z) {
            if (span_.add(z))
                reps_.push_back(z);
        };
        for (const auto& s : seeds)
            try_rep(s);
        if (!cycles.empty()) {
            Matrix<K> m(cycles.size(), ambient);
            for (std::size_t i = 0; i < cycles.size(); ++i)
                for (std::size_t j = 0; j < ambient; ++j)
                    m(i, j) = cycles[i][j];
            auto piv = rref(m);
            for (std::size_t i = 0; i < piv.size(); ++i)
                try_rep(m.row(i));
        }
    }

    std::size_t dimension() const { return reps_.size(); }
    const std::vector<Vec<K>>& representatives() const { return reps_; }

    /// Class coordinates of a cycle; nullopt if z is not in Z.
    std::optional<Vec<K>> class_of(const Vec<K>& z) const {
        auto c = span_.coords(z);
        if (!c)
            return std::nullopt;
        return Vec<K>(c->begin() + static_cast<std::ptrdiff_t>(num_boundary_), c->end());
    }

    bool is_boundary(const Vec<K>& z) const {
        auto c = class_of(z);
        return c && is_zero_vector(*c);
    }

private:
    SpanBasis<K> span_;
    std::size_t num_boundary_ = 0;
    std::vector<Vec<K>> reps_;
};

/// Column space of m as a list of basis vectors.
template <class K>
std::vector<Vec<K>> column_basis(const Matrix<K>& m) {
    SpanBasis<K> s(m.rows());
    std::vector<Vec<K>> out;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        auto c = m.column(j);
        if (s.add(c))
            out.push_back(std::move(c));
    }
    return out;
}

} // namespace siltkit
