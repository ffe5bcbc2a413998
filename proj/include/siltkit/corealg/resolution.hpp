#pragma once

#include "siltkit/corealg/module.hpp"
#include "siltkit/homotopy/complex.hpp"

namespace siltkit {

/// Minimal projective resolution P_bound -> ... -> P_0 with P_k in degree -k,
/// built from iterated projective covers.  Complete iff the last syzygy
/// vanishes.
template <class K>
ProjComplex<K> minimal_projective_resolution(const RightModule<K>& M, int length_bound) {
    if (length_bound < 0)
        throw InvalidArgument("length bound must be non-negative");
    const auto& A = M.algebra();
    if (M.total_dim() == 0)
        return zero_complex(A);

    std::vector<std::vector<int>> tops;         // tops[k]: summands of P_k
    std::vector<AlgMatrix<K>> maps;             // maps[k-1] : P_k -> P_{k-1}
    auto cover = projective_cover(M);
    tops.push_back(cover.tops);
    auto syz = kernel(cover.P, M, cover.map);
    for (int k = 1; k <= length_bound && syz.module.total_dim() > 0; ++k) {
        auto next = projective_cover(syz.module);
        AlgMatrix<K> d(tops.back().size(), next.tops.size(), A->dim());
        for (std::size_t j = 0; j < next.tops.size(); ++j) {
            int v = next.tops[j];
            auto x = syz.inclusion.components[static_cast<std::size_t>(v)].apply(next.generators[j]);
            auto comps = projective_components(A, tops.back(), v, x);
            for (std::size_t i = 0; i < comps.size(); ++i)
                d(i, j) = std::move(comps[i]);
        }
        maps.push_back(std::move(d));
        tops.push_back(next.tops);
        syz = kernel(next.P, syz.module, next.map);
    }

    ProjComplex<K> X;
    X.algebra = A;
    int top = static_cast<int>(tops.size()) - 1;
    X.lo = -top;
    for (int k = top; k >= 0; --k)
        X.terms.push_back(tops[static_cast<std::size_t>(k)]);
    for (int k = top; k >= 1; --k)
        X.diff.push_back(maps[static_cast<std::size_t>(k - 1)]);
    X.complete = syz.module.total_dim() == 0;
    X.trusted_from = X.complete ? 0 : -top;
    return X;
}

/// Resolution of the simple module at v, labelled by the vertex name.
template <class K>
ProjComplex<K> resolved_simple(const AlgebraPtr<K>& A, int v, int length_bound) {
    auto X = minimal_projective_resolution(simple_module(A, v), length_bound);
    X.label = "S" + A->quiver().vertices[static_cast<std::size_t>(v)];
    return X;
}

} // namespace siltkit
