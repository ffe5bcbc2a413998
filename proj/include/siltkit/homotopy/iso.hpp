#pragma once

// Isomorphism and indecomposability in K^b(proj A).

#include "siltkit/homotopy/hom.hpp"
#include "siltkit/homotopy/minimize.hpp"

#include <cmath>
#include <random>
#include <type_traits>

namespace siltkit {

/// Finite-dimensional associative algebra by structure constants.
template <class K>
struct FiniteAlgebra {
    std::size_t dim = 0;
    std::vector<Vec<K>> table; // table[i * dim + j] = b_i b_j
    Vec<K> one;

    Vec<K> multiply(const Vec<K>& a, const Vec<K>& b) const {
        Vec<K> c(dim, K(0));
        for (std::size_t i = 0; i < dim; ++i) {
            if (is_zero(a[i]))
                continue;
            for (std::size_t j = 0; j < dim; ++j) {
                if (is_zero(b[j]))
                    continue;
                K ab = a[i] * b[j];
                axpy(c, ab, table[i * dim + j]);
            }
        }
        return c;
    }

    /// Matrix of y -> x y.
    Matrix<K> left_mult(const Vec<K>& x) const {
        Matrix<K> m(dim, dim);
        for (std::size_t j = 0; j < dim; ++j)
            m.set_column(j, multiply(x, unit_vector<K>(dim, j)));
        return m;
    }

    K trace_of_left_mult(const Vec<K>& x) const {
        auto m = left_mult(x);
        K t(0);
        for (std::size_t i = 0; i < dim; ++i)
            t += m(i, i);
        return t;
    }

    /// Dickson radical {x : tr(L_{xy}) = 0 for all y}; the Jacobson radical
    /// in characteristic 0 (and when char > dim).
    std::vector<Vec<K>> trace_radical() const {
        Matrix<K> T(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                T(i, j) = trace_of_left_mult(table[i * dim + j]);
        return nullspace(T);
    }
};

/// H^0(End X) with composition; basis element 0 is the identity when X != 0.
template <class K>
FiniteAlgebra<K> end_algebra(const ProjComplex<K>& X) {
    auto E = endomorphisms(X);
    FiniteAlgebra<K> R;
    auto basis = E.basis();
    R.dim = basis.size();
    for (std::size_t i = 0; i < R.dim; ++i)
        for (std::size_t j = 0; j < R.dim; ++j)
            R.table.push_back(*E.space->class_of(compose(basis[i], basis[j])));
    R.one = Vec<K>(R.dim, K(0));
    if (R.dim > 0)
        R.one[0] = K(1);
    return R;
}

enum class Tri { False, True, Inconclusive };

inline const char* to_string(Tri t) {
    switch (t) {
    case Tri::True:
        return "true";
    case Tri::False:
        return "false";
    default:
        return "inconclusive";
    }
}

struct IsoOptions {
    std::uint64_t seed = 1;
    int samples = 16;
    long box = 8;               // random coefficients in [-box, box]
    bool fallback = true;
    std::uint64_t fallback_limit = 200000;
};

template <class K>
struct IsoResult {
    Tri verdict = Tri::False;
    std::optional<ChainMap<K>> forward;  // X -> Y
    std::optional<ChainMap<K>> backward; // Y -> X
    explicit operator bool() const { return verdict == Tri::True; }
};

namespace detail {

/// For a degree-0 map between minimal complexes with equal shapes: invertible
/// iff it is invertible modulo the radical in every degree and vertex.
template <class K>
bool invertible_mod_radical(const ChainMap<K>& f) {
    const auto& A = *f.source.algebra;
    const auto& X = f.source;
    const auto& Y = f.target;
    for (int k = X.lo; k <= X.hi(); ++k) {
        auto m = f.at(k);
        const auto& src = X.term(k);
        const auto& dst = Y.term(k);
        for (int v = 0; v < A.num_vertices(); ++v) {
            std::vector<std::size_t> rows, cols;
            for (std::size_t r = 0; r < dst.size(); ++r)
                if (dst[r] == v)
                    rows.push_back(r);
            for (std::size_t c = 0; c < src.size(); ++c)
                if (src[c] == v)
                    cols.push_back(c);
            if (rows.size() != cols.size())
                return false;
            if (rows.empty())
                continue;
            Matrix<K> s(rows.size(), cols.size());
            for (std::size_t i = 0; i < rows.size(); ++i)
                for (std::size_t j = 0; j < cols.size(); ++j)
                    s(i, j) = m(rows[i], cols[j])[A.idempotent(v)];
            if (is_zero(determinant(s)))
                return false;
        }
    }
    return true;
}

template <class K>
ChainMap<K> combine(const std::vector<ChainMap<K>>& basis, const std::vector<long>& c) {
    ChainMap<K> f = ChainMap<K>::zero_map(basis[0].source, basis[0].target, basis[0].degree);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (c[i] == 0)
            continue;
        ChainMap<K> t = basis[i];
        t *= K(c[i]);
        f += t;
    }
    return f;
}

} // namespace detail

/// Decides X ~ Y in K^b(proj A).  On success the witnesses are mutually
/// inverse homotopy classes X -> Y and Y -> X.
template <class K>
IsoResult<K> is_isomorphic(const ProjComplex<K>& X, const ProjComplex<K>& Y, const IsoOptions& opt = {}) {
    if (!X.complete || !Y.complete)
        throw TruncationUnsound("isomorphism test on a truncated complex");
    auto mx = minimize_with_maps(X);
    auto my = minimize_with_maps(Y);
    IsoResult<K> res;
    if (graded_shape(mx.complex) != graded_shape(my.complex))
        return res;
    if (mx.complex.is_zero()) {
        res.verdict = Tri::True;
        res.forward = ChainMap<K>::zero_map(X, Y, 0);
        res.backward = ChainMap<K>::zero_map(Y, X, 0);
        return res;
    }
    auto H = hom_space(mx.complex, my.complex, 0);
    auto basis = H.basis();
    if (basis.empty())
        return res;
    auto back = hom_space(my.complex, mx.complex, 0);
    auto end = endomorphisms(mx.complex);
    if (back.dim() != basis.size() || end.dim() != basis.size() ||
        endomorphisms(my.complex).dim() != basis.size())
        return res;

    std::optional<ChainMap<K>> found;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<long> dist(-opt.box, opt.box);
    for (int s = 0; s < opt.samples && !found; ++s) {
        std::vector<long> c(basis.size());
        for (auto& x : c)
            x = dist(rng);
        auto f = detail::combine(basis, c);
        if (detail::invertible_mod_radical(f))
            found = f;
    }
    if (!found) {
        if (!opt.fallback) {
            res.verdict = Tri::Inconclusive;
            return res;
        }
        // a nonzero determinant polynomial of degree <= N cannot vanish on
        // all of S^h with |S| = N + 1
        std::uint64_t q = characteristic<K>();
        long side = q == 0 ? static_cast<long>(mx.complex.total_summands()) + 1 : static_cast<long>(q);
        long double total = std::pow(static_cast<long double>(side), static_cast<long double>(basis.size()));
        if (total > static_cast<long double>(opt.fallback_limit)) {
            res.verdict = Tri::Inconclusive;
            return res;
        }
        std::vector<long> c(basis.size(), 0);
        while (true) {
            auto f = detail::combine(basis, c);
            if (detail::invertible_mod_radical(f)) {
                found = f;
                break;
            }
            std::size_t i = 0;
            while (i < c.size() && ++c[i] == side)
                c[i++] = 0;
            if (i == c.size())
                break;
        }
        if (!found)
            return res;
    }

    // inverse class: g with [g f] = [id]
    auto gb = back.basis();
    Matrix<K> M(end.dim(), gb.size());
    for (std::size_t j = 0; j < gb.size(); ++j)
        M.set_column(j, *end.space->class_of(compose(gb[j], *found)));
    auto target = *end.space->class_of(ChainMap<K>::identity(mx.complex));
    auto sol = solve(M, target);
    if (!sol)
        throw Error("isomorphism witness has no inverse class");
    auto g = ChainMap<K>::zero_map(my.complex, mx.complex, 0);
    for (std::size_t j = 0; j < gb.size(); ++j) {
        if (is_zero((*sol)[j]))
            continue;
        auto t = gb[j];
        t *= (*sol)[j];
        g += t;
    }
    res.verdict = Tri::True;
    res.forward = compose(*my.from_min, compose(*found, *mx.to_min));
    res.backward = compose(*mx.from_min, compose(g, *my.to_min));
    return res;
}

struct IndecOptions {
    std::uint64_t search_limit = 1000000;
};

namespace detail {

template <class K>
std::vector<Vec<K>> complement_basis(std::size_t n, const std::vector<Vec<K>>& sub) {
    SpanBasis<K> s(n);
    for (const auto& v : sub)
        s.add(v);
    std::vector<Vec<K>> out;
    for (std::size_t i = 0; i < n; ++i) {
        auto e = unit_vector<K>(n, i);
        if (s.add(e))
            out.push_back(std::move(e));
    }
    return out;
}

/// Coefficients c_0..c_d (monic) of the minimal polynomial of x in R.
template <class K>
Vec<K> minimal_polynomial(const FiniteAlgebra<K>& R, const Vec<K>& x) {
    std::vector<Vec<K>> powers{R.one};
    SpanBasis<K> span(R.dim);
    span.add(R.one);
    while (true) {
        auto next = R.multiply(powers.back(), x);
        auto c = span.coords(next);
        if (c) {
            Vec<K> poly(powers.size() + 1, K(0));
            for (std::size_t i = 0; i < powers.size(); ++i)
                poly[i] = -(*c)[i];
            poly.back() = K(1);
            return poly;
        }
        span.add(next);
        powers.push_back(std::move(next));
    }
}

inline std::vector<mpz_class> divisors(mpz_class n) {
    if (n < 0)
        n = -n;
    std::vector<mpz_class> out;
    if (n == 0)
        return out;
    for (mpz_class d = 1; d * d <= n && d <= 1000000; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n)
                out.push_back(n / d);
        }
    return out;
}

/// Some rational root of a rational polynomial, if one exists.
inline std::optional<Rational> rational_root(const Vec<Rational>& poly) {
    if (is_zero(poly[0]))
        return Rational(0);
    mpz_class lcm = 1;
    for (const auto& c : poly)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> z;
    for (const auto& c : poly) {
        mpz_class t = c.get_num() * (lcm / c.get_den());
        z.push_back(t);
    }
    for (const auto& p : divisors(z.front()))
        for (const auto& q : divisors(z.back()))
            for (int sign : {1, -1}) {
                Rational r(sign * p, q);
                r.canonicalize();
                Rational v = 0;
                for (std::size_t i = poly.size(); i-- > 0;)
                    v = v * r + poly[i];
                if (v == 0)
                    return r;
            }
    return std::nullopt;
}

} // namespace detail

/// True iff End(X) is local.  Over Q: the trace-form radical decides the
/// split case and a rational eigenvalue of a non-scalar element disproves
/// locality; anything else raises IndecomposabilityUndetermined.  Over F_p:
/// exhaustive idempotent search.
template <class K>
bool is_indecomposable(const ProjComplex<K>& X, const IndecOptions& opt = {}) {
    auto R = end_algebra(X);
    if (R.dim == 0)
        return false;
    if (R.dim == 1)
        return true;
    std::uint64_t p = characteristic<K>();
    if (p == 0) {
        auto J = R.trace_radical();
        if (R.dim - J.size() == 1)
            return true;
        if constexpr (std::is_same_v<K, Rational>) {
            // work in R/J: an element of R/J with a rational eigenvalue whose
            // minimal polynomial is not linear is a zero divisor there
            auto comp = detail::complement_basis(R.dim, J);
            std::vector<Vec<K>> candidates = comp;
            for (std::size_t i = 0; i < comp.size(); ++i)
                for (std::size_t j = i + 1; j < comp.size(); ++j) {
                    Vec<K> s = comp[i];
                    axpy(s, K(j + 1), comp[j]);
                    candidates.push_back(s);
                }
            // quotient algebra structure constants
            SpanBasis<K> qs(R.dim);
            for (const auto& v : J)
                qs.add(v);
            for (const auto& v : comp)
                qs.add(v);
            FiniteAlgebra<K> S;
            S.dim = comp.size();
            auto reduce = [&](const Vec<K>& v) {
                auto c = *qs.coords(v);
                return Vec<K>(c.begin() + static_cast<std::ptrdiff_t>(J.size()), c.end());
            };
            for (const auto& a : comp)
                for (const auto& b : comp)
                    S.table.push_back(reduce(R.multiply(a, b)));
            S.one = reduce(R.one);
            for (const auto& x : candidates) {
                auto poly = detail::minimal_polynomial(S, reduce(x));
                if (poly.size() >= 3 && detail::rational_root(poly))
                    return false;
            }
        }
        throw IndecomposabilityUndetermined("residue algebra of End(" + X.label + ") is not split over Q");
    }
    long double total = std::pow(static_cast<long double>(p), static_cast<long double>(R.dim));
    if (total > static_cast<long double>(opt.search_limit))
        throw CharacteristicUnsupported("idempotent search over F_" + std::to_string(p) + " in dimension " +
                                        std::to_string(R.dim) + " exceeds the limit");
    std::vector<long> c(R.dim, 0);
    while (true) {
        std::size_t i = 0;
        while (i < c.size() && ++c[i] == static_cast<long>(p))
            c[i++] = 0;
        if (i == c.size())
            break;
        Vec<K> e(R.dim);
        for (std::size_t j = 0; j < R.dim; ++j)
            e[j] = K(c[j]);
        if (e == R.one)
            continue;
        if (R.multiply(e, e) == e)
            return false;
    }
    return true;
}

} // namespace siltkit
