#pragma once

// Silting and simple-minded mutation.

#include "siltkit/correspond/checks.hpp"

namespace siltkit {

namespace detail {

template <class K>
std::vector<ProjComplex<K>> others(const Collection<K>& C, std::size_t i) {
    std::vector<ProjComplex<K>> out;
    for (std::size_t j = 0; j < C.size(); ++j)
        if (j != i)
            out.push_back(C[j]);
    return out;
}

inline std::string mutation_tag(std::size_t i, Side side) {
    return std::string(side == Side::Left ? "L" : "R") + std::to_string(i + 1);
}

template <class K>
void check_index(const Collection<K>& C, std::size_t i) {
    if (C.members.empty())
        throw InvalidArgument("empty collection");
    if (i >= C.size())
        throw InvalidArgument("mutation index " + std::to_string(i + 1) + " out of range");
}

} // namespace detail

/// Replaces S_i by the cone of its minimal left add(S \ S_i)-approximation
/// (left) or by the cocone of the minimal right approximation (right).
template <class K>
Collection<K> silting_mutate(const Collection<K>& S, std::size_t i, Side side) {
    detail::check_index(S, i);
    auto rest = detail::others(S, i);
    const auto& X = S[i];
    auto ap = approximation(X, rest, side);
    ProjComplex<K> Y = side == Side::Left ? cone(ap.map) : shift(cone(ap.map), -1);
    Y = minimize(Y);
    Y.label = std::string(side == Side::Left ? "muL(" : "muR(") + X.label + ")";
    Collection<K> out = S;
    out.name = S.name + "." + detail::mutation_tag(i, side);
    out.members[i] = std::move(Y);
    return out;
}

/// Simple-minded mutation by universal extensions; the result is re-verified
/// and MutationNotVerified is raised if it fails check_smc.
template <class K>
Collection<K> smc_mutate(const Collection<K>& T, std::size_t i, Side side, const CheckOptions& opt = {}) {
    detail::check_index(T, i);
    const auto& Ti = T[i];
    Collection<K> out = T;
    out.name = T.name + "." + detail::mutation_tag(i, side);
    for (std::size_t j = 0; j < T.size(); ++j) {
        if (j == i)
            continue;
        const auto& Tj = T[j];
        ProjComplex<K> Y;
        if (side == Side::Left) {
            auto Ti1 = shift(Ti, 1);
            auto H = hom_space(Tj, Ti, 1);
            auto basis = H.basis();
            if (basis.empty())
                continue;
            std::vector<ChainMap<K>> maps;
            for (const auto& u : basis)
                maps.push_back(as_degree_zero(u));
            auto u = into_sum(Tj, std::vector<ProjComplex<K>>(basis.size(), Ti1), maps);
            Y = shift(cone(u), -1);
        } else {
            auto Tim = shift(Ti, -1);
            auto H = hom_space(Ti, Tj, 1);
            auto basis = H.basis();
            if (basis.empty())
                continue;
            std::vector<ChainMap<K>> maps;
            for (const auto& v : basis)
                maps.push_back(from_shifted_source(v));
            auto w = from_sum(std::vector<ProjComplex<K>>(basis.size(), Tim), maps, Tj);
            Y = cone(w);
        }
        Y = minimize(Y);
        Y.label = std::string(side == Side::Left ? "muL(" : "muR(") + Tj.label + ")";
        out.members[j] = std::move(Y);
    }
    int s = side == Side::Left ? 1 : -1;
    out.members[i] = shift(Ti, s);
    auto rep = check_smc(out, opt);
    if (rep.verdict == Verdict::Fail)
        throw MutationNotVerified("mutation " + detail::mutation_tag(i, side) + " of " + T.name +
                                  " is not simple-minded: " + (rep.witness ? rep.witness->what : ""));
    return out;
}

/// Componentwise isomorphism of two collections of the same length.
template <class K>
Tri collections_isomorphic(const Collection<K>& a, const Collection<K>& b, const IsoOptions& opt = {}) {
    if (a.size() != b.size())
        return Tri::False;
    Tri all = Tri::True;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto r = is_isomorphic(a[i], b[i], opt).verdict;
        if (r == Tri::False)
            return Tri::False;
        if (r == Tri::Inconclusive)
            all = Tri::Inconclusive;
    }
    return all;
}

} // namespace siltkit
