#pragma once

// Minimal add(G)-approximations and collections of objects.

#include "siltkit/homotopy/iso.hpp"

namespace siltkit {

enum class Side { Left, Right };

inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

enum class CollectionKind { Silting, Smc };

template <class K>
struct Collection {
    CollectionKind kind = CollectionKind::Silting;
    std::string name;
    std::vector<ProjComplex<K>> members;

    std::size_t size() const { return members.size(); }
    const ProjComplex<K>& operator[](std::size_t i) const { return members[i]; }
    const AlgebraPtr<K>& algebra() const { return members.front().algebra; }
};

/// Degree-0 map X -> (+)_p parts[p] with components maps[p] : X -> parts[p].
template <class K>
ChainMap<K> into_sum(const ProjComplex<K>& X, const std::vector<ProjComplex<K>>& parts,
                     const std::vector<ChainMap<K>>& maps) {
    const auto& A = X.algebra;
    auto S = direct_sum(parts, A);
    auto f = ChainMap<K>::zero_map(X, S, 0);
    for (int k = X.lo; k <= X.hi(); ++k) {
        auto& m = f.comps[static_cast<std::size_t>(k - X.lo)];
        std::size_t off = 0;
        for (std::size_t p = 0; p < parts.size(); ++p) {
            auto mp = maps[p].at(k);
            for (std::size_t r = 0; r < mp.rows(); ++r)
                for (std::size_t c = 0; c < mp.cols(); ++c)
                    m(off + r, c) = mp(r, c);
            off += parts[p].term(k).size();
        }
    }
    return f;
}

/// Degree-0 map (+)_p parts[p] -> Y with components maps[p] : parts[p] -> Y.
template <class K>
ChainMap<K> from_sum(const std::vector<ProjComplex<K>>& parts, const std::vector<ChainMap<K>>& maps,
                     const ProjComplex<K>& Y) {
    const auto& A = Y.algebra;
    auto S = direct_sum(parts, A);
    auto f = ChainMap<K>::zero_map(S, Y, 0);
    for (int k = S.lo; k <= S.hi(); ++k) {
        auto& m = f.comps[static_cast<std::size_t>(k - S.lo)];
        std::size_t off = 0;
        for (std::size_t p = 0; p < parts.size(); ++p) {
            auto mp = maps[p].at(k);
            for (std::size_t r = 0; r < mp.rows(); ++r)
                for (std::size_t c = 0; c < mp.cols(); ++c)
                    m(r, off + c) = mp(r, c);
            off += parts[p].term(k).size();
        }
    }
    return f;
}

/// Basis of the radical of a split local algebra.
template <class K>
std::vector<Vec<K>> local_radical(const FiniteAlgebra<K>& R) {
    if (R.dim <= 1)
        return {};
    std::uint64_t p = characteristic<K>();
    if (p == 0)
        return R.trace_radical();
    if (R.dim % p == 0)
        throw CharacteristicUnsupported("radical of a local algebra of dimension divisible by " + std::to_string(p));
    // x = lambda + n has tr(L_x) = lambda dim R
    Matrix<K> t(1, R.dim);
    for (std::size_t i = 0; i < R.dim; ++i)
        t(0, i) = R.trace_of_left_mult(unit_vector<K>(R.dim, i));
    return nullspace(t);
}

template <class K>
struct Approximation {
    ProjComplex<K> object;                  // E
    ChainMap<K> map;                        // X -> E (left) or E -> X (right)
    std::vector<std::size_t> multiplicity;  // copies of each generator
};

namespace detail {

/// Radical morphisms G_i -> G_j as maps (i != j: everything).
template <class K>
std::vector<ChainMap<K>> radical_maps(const std::vector<ProjComplex<K>>& gens, std::size_t i, std::size_t j) {
    if (i != j)
        return hom_space(gens[i], gens[j], 0).basis();
    auto E = endomorphisms(gens[j]);
    auto R = end_algebra(gens[j]);
    auto basis = E.basis();
    std::vector<ChainMap<K>> out;
    for (const auto& r : local_radical(R)) {
        auto f = ChainMap<K>::zero_map(gens[j], gens[j], 0);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (is_zero(r[b]))
                continue;
            auto t = basis[b];
            t *= r[b];
            f += t;
        }
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace detail

/// Minimal left (X -> E) or right (E -> X) approximation with E in
/// add(gens).  Generators must be indecomposable and pairwise
/// non-isomorphic.  Summands are chosen greedily in Hom-basis order.
template <class K>
Approximation<K> approximation(const ProjComplex<K>& X, const std::vector<ProjComplex<K>>& gens, Side side) {
    const auto& A = X.algebra;
    std::size_t m = gens.size();
    // H[j] = Hom(X, G_j) (left) or Hom(G_j, X) (right)
    std::vector<HomSpaceResult<K>> H;
    std::vector<std::vector<ChainMap<K>>> basis;
    for (std::size_t j = 0; j < m; ++j) {
        H.push_back(side == Side::Left ? hom_space(X, gens[j], 0) : hom_space(gens[j], X, 0));
        basis.push_back(H.back().basis());
    }
    std::vector<ProjComplex<K>> parts;
    std::vector<ChainMap<K>> maps;
    std::vector<std::size_t> mult(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
        if (basis[j].empty())
            continue;
        SpanBasis<K> span(basis[j].size());
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i].empty())
                continue;
            for (const auto& r : side == Side::Left ? detail::radical_maps(gens, i, j)
                                                    : detail::radical_maps(gens, j, i))
                for (const auto& h : basis[i]) {
                    auto comp = side == Side::Left ? compose(r, h) : compose(h, r);
                    span.add(*H[j].space->class_of(comp));
                }
        }
        for (std::size_t b = 0; b < basis[j].size(); ++b)
            if (span.add(unit_vector<K>(basis[j].size(), b))) {
                parts.push_back(gens[j]);
                maps.push_back(basis[j][b]);
                ++mult[j];
            }
    }
    Approximation<K> out;
    out.multiplicity = mult;
    out.object = direct_sum(parts, A);
    if (parts.empty())
        out.map = side == Side::Left ? ChainMap<K>::zero_map(X, out.object, 0) : ChainMap<K>::zero_map(out.object, X, 0);
    else
        out.map = side == Side::Left ? into_sum(X, parts, maps) : from_sum(parts, maps, X);
    return out;
}

/// Same matrices read as a degree-0 map X[-n] -> Y.
template <class K>
ChainMap<K> from_shifted_source(const ChainMap<K>& f) {
    ChainMap<K> g = f;
    g.source = shift(f.source, -f.degree);
    g.degree = 0;
    return g;
}

} // namespace siltkit
