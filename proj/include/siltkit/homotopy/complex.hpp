#pragma once

// Bounded complexes of finitely generated projective right modules.
//
// Degree k of a complex is a direct sum of indecomposable projectives
// e_v A, recorded as the list of vertices v.  A map
// (+)_c e_{u_c} A -> (+)_r e_{w_r} A is a matrix of algebra elements with
// entry (r, c) in e_{w_r} A e_{u_c}, acting by left multiplication, so
// composition is the ordinary matrix product.

#include "siltkit/corealg/path_algebra.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace siltkit {

template <class K>
class AlgMatrix {
public:
    AlgMatrix() = default;
    AlgMatrix(std::size_t rows, std::size_t cols, std::size_t alg_dim)
        : rows_(rows), cols_(cols), entries_(rows * cols, Vec<K>(alg_dim, K(0))) {}

    static AlgMatrix identity(const PathAlgebra<K>& A, const std::vector<int>& verts) {
        AlgMatrix m(verts.size(), verts.size(), A.dim());
        for (std::size_t i = 0; i < verts.size(); ++i)
            m(i, i) = A.idempotent_element(verts[i]);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Vec<K>& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Vec<K>& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const Vec<K>& e) { return is_zero_vector(e); });
    }

    AlgMatrix& operator+=(const AlgMatrix& o) {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            for (std::size_t j = 0; j < entries_[i].size(); ++j)
                entries_[i][j] += o.entries_[i][j];
        return *this;
    }
    AlgMatrix& operator-=(const AlgMatrix& o) {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            for (std::size_t j = 0; j < entries_[i].size(); ++j)
                entries_[i][j] -= o.entries_[i][j];
        return *this;
    }
    AlgMatrix& operator*=(const K& s) {
        for (auto& e : entries_)
            for (auto& x : e)
                x *= s;
        return *this;
    }
    AlgMatrix operator-() const {
        AlgMatrix m = *this;
        m *= K(-1);
        return m;
    }
    friend AlgMatrix operator+(AlgMatrix a, const AlgMatrix& b) { return a += b; }
    friend AlgMatrix operator-(AlgMatrix a, const AlgMatrix& b) { return a -= b; }
    friend bool operator==(const AlgMatrix& a, const AlgMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    AlgMatrix without_row(std::size_t r) const {
        AlgMatrix m(rows_ - 1, cols_, 0);
        for (std::size_t i = 0, k = 0; i < rows_; ++i) {
            if (i == r)
                continue;
            for (std::size_t j = 0; j < cols_; ++j)
                m(k, j) = (*this)(i, j);
            ++k;
        }
        return m;
    }
    AlgMatrix without_col(std::size_t c) const {
        AlgMatrix m(rows_, cols_ - 1, 0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0, k = 0; j < cols_; ++j) {
                if (j == c)
                    continue;
                m(i, k++) = (*this)(i, j);
            }
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Vec<K>> entries_;
};

template <class K>
AlgMatrix<K> multiply(const PathAlgebra<K>& A, const AlgMatrix<K>& a, const AlgMatrix<K>& b) {
    if (a.cols() != b.rows())
        throw InvalidArgument("matrix shapes do not compose");
    AlgMatrix<K> c(a.rows(), b.cols(), A.dim());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            if (is_zero_vector(a(i, l)))
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (is_zero_vector(b(l, j)))
                    continue;
                auto p = A.multiply(a(i, l), b(l, j));
                for (std::size_t k = 0; k < p.size(); ++k)
                    c(i, j)[k] += p[k];
            }
        }
    return c;
}

/// Block diagonal / off-diagonal assembly: [[a, b], [c, d]].
template <class K>
AlgMatrix<K> block_matrix(std::size_t alg_dim, const AlgMatrix<K>& a, const AlgMatrix<K>& b, const AlgMatrix<K>& c,
                          const AlgMatrix<K>& d) {
    std::size_t r0 = std::max(a.rows(), b.rows()), c0 = std::max(a.cols(), c.cols());
    std::size_t r1 = std::max(c.rows(), d.rows()), c1 = std::max(b.cols(), d.cols());
    AlgMatrix<K> m(r0 + r1, c0 + c1, alg_dim);
    auto put = [&](const AlgMatrix<K>& x, std::size_t ro, std::size_t co) {
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j)
                m(ro + i, co + j) = x(i, j);
    };
    put(a, 0, 0);
    put(b, 0, c0);
    put(c, r0, 0);
    put(d, r0, c0);
    return m;
}

/// Bounded complex of projectives with cohomological differential
/// d^k : X^k -> X^{k+1}.  An incomplete complex is a truncation: terms in
/// degrees >= trusted_from agree with the true object, lower ones may be
/// missing.
template <class K>
struct ProjComplex {
    AlgebraPtr<K> algebra;
    int lo = 0;
    std::vector<std::vector<int>> terms; // terms[k - lo]
    std::vector<AlgMatrix<K>> diff;      // diff[k - lo] : degree k -> k+1
    bool complete = true;
    int trusted_from = 0;
    std::string label;

    bool is_zero() const {
        return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.empty(); });
    }
    int hi() const { return lo + static_cast<int>(terms.size()) - 1; }

    const std::vector<int>& term(int k) const {
        static const std::vector<int> empty;
        if (k < lo || k > hi())
            return empty;
        return terms[static_cast<std::size_t>(k - lo)];
    }

    /// d^k, with zero matrices of the right shape outside the stored range.
    AlgMatrix<K> d(int k) const {
        if (k >= lo && k < hi())
            return diff[static_cast<std::size_t>(k - lo)];
        return AlgMatrix<K>(term(k + 1).size(), term(k).size(), algebra->dim());
    }

    std::vector<std::size_t> multiplicities(int k) const {
        std::vector<std::size_t> m(static_cast<std::size_t>(algebra->num_vertices()), 0);
        for (int v : term(k))
            ++m[static_cast<std::size_t>(v)];
        return m;
    }

    std::size_t total_summands() const {
        std::size_t n = 0;
        for (const auto& t : terms)
            n += t.size();
        return n;
    }

    /// Drops empty terms at both ends; the zero complex has no terms.
    void trim() {
        std::size_t first = 0, last = terms.size();
        while (first < last && terms[first].empty())
            ++first;
        while (last > first && terms[last - 1].empty())
            --last;
        if (first == last) {
            terms.clear();
            diff.clear();
            lo = 0;
            return;
        }
        std::vector<std::vector<int>> t(terms.begin() + static_cast<std::ptrdiff_t>(first),
                                        terms.begin() + static_cast<std::ptrdiff_t>(last));
        std::vector<AlgMatrix<K>> dd;
        for (std::size_t k = first; k + 1 < last; ++k)
            dd.push_back(diff[k]);
        lo += static_cast<int>(first);
        terms = std::move(t);
        diff = std::move(dd);
    }

    /// Shapes, block membership of the entries, and d o d = 0.
    void validate() const {
        const auto& A = *algebra;
        if (!terms.empty() && diff.size() + 1 != terms.size())
            throw InvalidArgument("complex has " + std::to_string(terms.size()) + " terms but " +
                                  std::to_string(diff.size()) + " differentials");
        for (int k = lo; k < hi(); ++k) {
            const auto& m = diff[static_cast<std::size_t>(k - lo)];
            const auto& src = term(k);
            const auto& dst = term(k + 1);
            if (m.rows() != dst.size() || m.cols() != src.size())
                throw InvalidArgument("differential in degree " + std::to_string(k) + " has the wrong shape");
            for (std::size_t r = 0; r < dst.size(); ++r)
                for (std::size_t c = 0; c < src.size(); ++c)
                    if (!A.in_block(m(r, c), dst[r], src[c]))
                        throw InvalidArgument("differential entry (" + std::to_string(r + 1) + "," +
                                              std::to_string(c + 1) + ") in degree " + std::to_string(k) +
                                              " is not in e_" + A.quiver().vertices[static_cast<std::size_t>(dst[r])] +
                                              " A e_" + A.quiver().vertices[static_cast<std::size_t>(src[c])]);
        }
        for (int k = lo; k + 1 < hi(); ++k)
            if (!multiply(A, d(k + 1), d(k)).is_zero())
                throw ChainConditionViolated("d o d != 0 in degree " + std::to_string(k));
    }

    /// True when every differential entry lies in the radical.
    bool is_minimal() const {
        for (const auto& m : diff)
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    if (!algebra->in_radical(m(r, c)))
                        return false;
        return true;
    }
};

template <class K>
ProjComplex<K> zero_complex(const AlgebraPtr<K>& A) {
    ProjComplex<K> z;
    z.algebra = A;
    return z;
}

/// The projective e_v A (or a sum of them) placed in degree k.
template <class K>
ProjComplex<K> stalk(const AlgebraPtr<K>& A, std::vector<int> verts, int k = 0) {
    for (int v : verts)
        A->quiver().check_vertex(v);
    ProjComplex<K> X;
    X.algebra = A;
    X.lo = k;
    X.terms = {std::move(verts)};
    X.trim();
    return X;
}

template <class K>
ProjComplex<K> stalk(const AlgebraPtr<K>& A, int v, int k = 0) {
    auto X = stalk(A, std::vector<int>{v}, k);
    X.label = A->quiver().vertices[static_cast<std::size_t>(v)];
    if (k != 0)
        X.label = "P" + X.label + "[" + std::to_string(-k) + "]";
    else
        X.label = "P" + X.label;
    return X;
}

/// "X" shifted by n, folding an existing "[k]" suffix.
inline std::string shifted_label(const std::string& label, int n) {
    if (label.empty() || n == 0)
        return label;
    std::string base = label;
    int k = 0;
    if (base.back() == ']') {
        auto open = base.rfind('[');
        if (open != std::string::npos) {
            try {
                std::size_t used = 0;
                auto inner = base.substr(open + 1, base.size() - open - 2);
                int v = std::stoi(inner, &used);
                if (used == inner.size()) {
                    k = v;
                    base = base.substr(0, open);
                }
            } catch (const std::exception&) {
            }
        }
    }
    k += n;
    return k == 0 ? base : base + "[" + std::to_string(k) + "]";
}

/// X[n]: degree k is X^{k+n}, differential multiplied by (-1)^n.
template <class K>
ProjComplex<K> shift(const ProjComplex<K>& X, int n) {
    ProjComplex<K> Y = X;
    Y.lo = X.lo - n;
    Y.trusted_from = X.trusted_from - n;
    if (n % 2 != 0)
        for (auto& m : Y.diff)
            m *= K(-1);
    Y.label = shifted_label(X.label, n);
    if (Y.is_zero())
        Y.lo = 0;
    return Y;
}

/// Degree-n graded map X -> Y: components f^k : X^k -> Y^{k+n}.
template <class K>
struct ChainMap {
    ProjComplex<K> source;
    ProjComplex<K> target;
    int degree = 0;
    std::vector<AlgMatrix<K>> comps; // comps[k - source.lo]

    AlgMatrix<K> at(int k) const {
        if (k >= source.lo && k <= source.hi())
            return comps[static_cast<std::size_t>(k - source.lo)];
        return AlgMatrix<K>(target.term(k + degree).size(), source.term(k).size(), source.algebra->dim());
    }

    bool is_zero() const {
        return std::all_of(comps.begin(), comps.end(), [](const AlgMatrix<K>& m) { return m.is_zero(); });
    }

    /// d_Y f - (-1)^n f d_X, as a degree n+1 map.
    ChainMap boundary() const {
        const auto& A = *source.algebra;
        ChainMap out = zero_map(source, target, degree + 1);
        K sign = degree % 2 == 0 ? K(1) : K(-1);
        for (int k = source.lo; k <= source.hi(); ++k) {
            auto m = multiply(A, target.d(k + degree), at(k));
            auto fd = multiply(A, at(k + 1), source.d(k));
            fd *= sign;
            m -= fd;
            out.comps[static_cast<std::size_t>(k - source.lo)] = std::move(m);
        }
        return out;
    }

    bool is_chain_map() const { return boundary().is_zero(); }

    static ChainMap zero_map(const ProjComplex<K>& X, const ProjComplex<K>& Y, int n) {
        ChainMap f;
        f.source = X;
        f.target = Y;
        f.degree = n;
        for (int k = X.lo; k <= X.hi(); ++k)
            f.comps.emplace_back(Y.term(k + n).size(), X.term(k).size(), X.algebra->dim());
        return f;
    }

    static ChainMap identity(const ProjComplex<K>& X) {
        ChainMap f = zero_map(X, X, 0);
        for (int k = X.lo; k <= X.hi(); ++k)
            f.comps[static_cast<std::size_t>(k - X.lo)] = AlgMatrix<K>::identity(*X.algebra, X.term(k));
        return f;
    }

    ChainMap& operator+=(const ChainMap& o) {
        for (std::size_t i = 0; i < comps.size(); ++i)
            comps[i] += o.comps[i];
        return *this;
    }
    ChainMap& operator*=(const K& s) {
        for (auto& m : comps)
            m *= s;
        return *this;
    }
};

/// g o f, with (g f)^k = g^{k+|f|} f^k.
template <class K>
ChainMap<K> compose(const ChainMap<K>& g, const ChainMap<K>& f) {
    const auto& A = *f.source.algebra;
    ChainMap<K> h = ChainMap<K>::zero_map(f.source, g.target, f.degree + g.degree);
    for (int k = f.source.lo; k <= f.source.hi(); ++k)
        h.comps[static_cast<std::size_t>(k - f.source.lo)] = multiply(A, g.at(k + f.degree), f.at(k));
    return h;
}

/// Reinterprets a degree-n map X -> Y as the degree-0 map X -> Y[n] (same
/// matrices).
template <class K>
ChainMap<K> as_degree_zero(const ChainMap<K>& f) {
    ChainMap<K> g = f;
    g.target = shift(f.target, f.degree);
    g.degree = 0;
    return g;
}

namespace detail {

template <class K>
int trusted_lo(const ProjComplex<K>& X) {
    return X.complete ? std::numeric_limits<int>::min() / 4 : X.trusted_from;
}

template <class K>
void set_trust(ProjComplex<K>& X, int t) {
    X.complete = t == std::numeric_limits<int>::min() / 4;
    X.trusted_from = X.complete ? 0 : t;
}

} // namespace detail

/// Direct sum; in each degree the summands of X come first.
template <class K>
ProjComplex<K> direct_sum(const ProjComplex<K>& X, const ProjComplex<K>& Y) {
    if (X.is_zero())
        return Y;
    if (Y.is_zero())
        return X;
    const auto& A = *X.algebra;
    ProjComplex<K> S;
    S.algebra = X.algebra;
    S.lo = std::min(X.lo, Y.lo);
    int hi = std::max(X.hi(), Y.hi());
    for (int k = S.lo; k <= hi; ++k) {
        auto t = X.term(k);
        const auto& u = Y.term(k);
        t.insert(t.end(), u.begin(), u.end());
        S.terms.push_back(std::move(t));
    }
    for (int k = S.lo; k < hi; ++k) {
        AlgMatrix<K> zx(X.term(k + 1).size(), Y.term(k).size(), A.dim());
        AlgMatrix<K> zy(Y.term(k + 1).size(), X.term(k).size(), A.dim());
        S.diff.push_back(block_matrix(A.dim(), X.d(k), zx, zy, Y.d(k)));
    }
    detail::set_trust(S, std::max(detail::trusted_lo(X), detail::trusted_lo(Y)));
    if (!X.label.empty() && !Y.label.empty())
        S.label = X.label + " + " + Y.label;
    return S;
}

template <class K>
ProjComplex<K> direct_sum(const std::vector<ProjComplex<K>>& parts, const AlgebraPtr<K>& A) {
    ProjComplex<K> S = zero_complex(A);
    for (const auto& P : parts)
        S = direct_sum(S, P);
    return S;
}

/// Mapping cone of a degree-0 chain map f : X -> Y together with the
/// triangle maps Y -> C and C -> X[1].
template <class K>
struct Cone {
    ProjComplex<K> object;
    ChainMap<K> inclusion;  // Y -> C
    ChainMap<K> projection; // C -> X[1]
};

/// C^k = Y^k (+) X^{k+1}, d = [[d_Y, f], [0, -d_X]].
template <class K>
Cone<K> cone_with_maps(const ChainMap<K>& f) {
    if (f.degree != 0)
        throw InvalidArgument("cone of a map of degree " + std::to_string(f.degree));
    if (!f.is_chain_map())
        throw ChainConditionViolated("cone of a map that is not a chain map");
    const auto& X = f.source;
    const auto& Y = f.target;
    const auto& A = *X.algebra;
    std::size_t n = A.dim();
    ProjComplex<K> C;
    C.algebra = X.algebra;
    int lo = std::min(Y.lo, X.lo - 1), hi = std::max(Y.hi(), X.hi() - 1);
    if (X.is_zero()) {
        lo = Y.lo;
        hi = Y.hi();
    } else if (Y.is_zero()) {
        lo = X.lo - 1;
        hi = X.hi() - 1;
    }
    C.lo = lo;
    for (int k = lo; k <= hi; ++k) {
        auto t = Y.term(k);
        const auto& u = X.term(k + 1);
        t.insert(t.end(), u.begin(), u.end());
        C.terms.push_back(std::move(t));
    }
    for (int k = lo; k < hi; ++k) {
        AlgMatrix<K> zero(X.term(k + 2).size(), Y.term(k).size(), n);
        C.diff.push_back(block_matrix(n, Y.d(k), f.at(k + 1), zero, -X.d(k + 1)));
    }
    detail::set_trust(C, std::max(detail::trusted_lo(Y), detail::trusted_lo(X) - 1));
    if (C.terms.empty())
        C.lo = 0;
    C.label = "cone";

    Cone<K> out;
    out.inclusion = ChainMap<K>::zero_map(Y, C, 0);
    for (int k = Y.lo; k <= Y.hi(); ++k) {
        auto& m = out.inclusion.comps[static_cast<std::size_t>(k - Y.lo)];
        const auto& t = Y.term(k);
        for (std::size_t i = 0; i < t.size(); ++i)
            m(i, i) = A.idempotent_element(t[i]);
    }
    auto X1 = shift(X, 1);
    out.projection = ChainMap<K>::zero_map(C, X1, 0);
    for (int k = C.lo; k <= C.hi(); ++k) {
        auto& m = out.projection.comps[static_cast<std::size_t>(k - C.lo)];
        std::size_t off = Y.term(k).size();
        const auto& t = X.term(k + 1);
        for (std::size_t i = 0; i < t.size(); ++i)
            m(i, off + i) = A.idempotent_element(t[i]);
    }
    out.inclusion.target = C;
    out.projection.source = C;
    out.object = std::move(C);
    return out;
}

template <class K>
ProjComplex<K> cone(const ChainMap<K>& f) {
    return cone_with_maps(f).object;
}

} // namespace siltkit
