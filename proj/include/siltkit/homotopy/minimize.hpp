#pragma once

// Minimal representatives by Gaussian elimination of unit entries.
//
// If d^k has an entry phi : e_v A -> e_v A that is a unit, write
//   d^k = [[phi, delta], [gamma, eps]]
// with respect to X^k = b1 (+) C and X^{k+1} = b2 (+) D.  Then X is homotopy
// equivalent to ... -> C -> D -> ... with differential eps - gamma phi^-1 delta.

#include "siltkit/homotopy/complex.hpp"

namespace siltkit {

template <class K>
struct Minimized {
    ProjComplex<K> complex;
    std::optional<ChainMap<K>> to_min;   // X -> complex
    std::optional<ChainMap<K>> from_min; // complex -> X
};

namespace detail {

template <class K>
std::optional<std::pair<std::size_t, std::size_t>> find_unit(const ProjComplex<K>& X, int k) {
    const auto& A = *X.algebra;
    const auto& m = X.diff[static_cast<std::size_t>(k - X.lo)];
    const auto& src = X.term(k);
    const auto& dst = X.term(k + 1);
    for (std::size_t c = 0; c < src.size(); ++c)
        for (std::size_t r = 0; r < dst.size(); ++r)
            if (src[c] == dst[r] && !is_zero(m(r, c)[A.idempotent(src[c])]))
                return std::make_pair(r, c);
    return std::nullopt;
}

template <class K>
AlgMatrix<K> erase_index(const AlgMatrix<K>& m, std::optional<std::size_t> row, std::optional<std::size_t> col) {
    AlgMatrix<K> out = m;
    if (row)
        out = out.without_row(*row);
    if (col)
        out = out.without_col(*col);
    return out;
}

} // namespace detail

/// Removes contractible summands until every differential entry lies in the
/// radical.  With track_maps the mutually inverse homotopy equivalences are
/// returned as well.
template <class K>
Minimized<K> minimize_with_maps(const ProjComplex<K>& X0, bool track_maps = true) {
    const auto& A = *X0.algebra;
    const std::size_t n = A.dim();
    ProjComplex<K> X = X0;
    X.trim();
    std::optional<ChainMap<K>> to, from;
    if (track_maps) {
        to = ChainMap<K>::identity(X);
        from = ChainMap<K>::identity(X);
        to->source = X0;
        from->target = X0;
        if (X0.lo != X.lo || X0.terms.size() != X.terms.size()) {
            // X0 had empty end terms: rebuild maps on the trimmed range
            to = ChainMap<K>::zero_map(X0, X, 0);
            from = ChainMap<K>::zero_map(X, X0, 0);
            for (int k = X.lo; k <= X.hi(); ++k) {
                if (k >= X0.lo && k <= X0.hi())
                    to->comps[static_cast<std::size_t>(k - X0.lo)] = AlgMatrix<K>::identity(A, X.term(k));
                from->comps[static_cast<std::size_t>(k - X.lo)] = AlgMatrix<K>::identity(A, X.term(k));
            }
        }
    }

    bool changed = true;
    while (changed && !X.is_zero()) {
        changed = false;
        for (int k = X.lo; k < X.hi(); ++k) {
            auto unit = detail::find_unit(X, k);
            if (!unit)
                continue;
            auto [r, c] = *unit;
            const int v = X.term(k)[c];
            const auto& dk = X.diff[static_cast<std::size_t>(k - X.lo)];
            auto phi_inv = A.inverse_unit(dk(r, c), v);

            // gamma phi^-1 (column vector over D) and phi^-1 delta (row over C)
            AlgMatrix<K> gp(dk.rows(), 1, n), pd(1, dk.cols(), n);
            for (std::size_t i = 0; i < dk.rows(); ++i)
                gp(i, 0) = A.multiply(dk(i, c), phi_inv);
            for (std::size_t j = 0; j < dk.cols(); ++j)
                pd(0, j) = A.multiply(phi_inv, dk(r, j));
            AlgMatrix<K> row_r(1, dk.cols(), n);
            for (std::size_t j = 0; j < dk.cols(); ++j)
                row_r(0, j) = dk(r, j);
            AlgMatrix<K> new_dk = dk - multiply(A, gp, row_r);
            new_dk = new_dk.without_row(r).without_col(c);

            ProjComplex<K> Y = X;
            auto& tk = Y.terms[static_cast<std::size_t>(k - X.lo)];
            auto& tk1 = Y.terms[static_cast<std::size_t>(k + 1 - X.lo)];
            tk.erase(tk.begin() + static_cast<std::ptrdiff_t>(c));
            tk1.erase(tk1.begin() + static_cast<std::ptrdiff_t>(r));
            Y.diff[static_cast<std::size_t>(k - X.lo)] = new_dk;
            if (k - 1 >= X.lo)
                Y.diff[static_cast<std::size_t>(k - 1 - X.lo)] =
                    X.diff[static_cast<std::size_t>(k - 1 - X.lo)].without_row(c);
            if (k + 1 < X.hi())
                Y.diff[static_cast<std::size_t>(k + 1 - X.lo)] =
                    X.diff[static_cast<std::size_t>(k + 1 - X.lo)].without_col(r);

            if (track_maps) {
                // p : X -> Y and i : Y -> X
                auto p = ChainMap<K>::zero_map(X, Y, 0);
                auto i = ChainMap<K>::zero_map(Y, X, 0);
                for (int j = X.lo; j <= X.hi(); ++j) {
                    auto& pj = p.comps[static_cast<std::size_t>(j - X.lo)];
                    auto& ij = i.comps[static_cast<std::size_t>(j - X.lo)];
                    const auto& tx = X.term(j);
                    const auto& ty = Y.term(j);
                    std::optional<std::size_t> gone;
                    if (j == k)
                        gone = c;
                    if (j == k + 1)
                        gone = r;
                    for (std::size_t a = 0, b = 0; a < tx.size(); ++a) {
                        if (gone && a == *gone)
                            continue;
                        pj(b, a) = A.idempotent_element(tx[a]);
                        ij(a, b) = A.idempotent_element(ty[b]);
                        ++b;
                    }
                    if (j == k + 1) {
                        // p^{k+1} = (-gamma phi^-1, id_D)
                        for (std::size_t a = 0, b = 0; a < tx.size(); ++a) {
                            if (a == r)
                                continue;
                            pj(b, r) = gp(a, 0);
                            for (auto& x : pj(b, r))
                                x = -x;
                            ++b;
                        }
                    }
                    if (j == k) {
                        // i^k = (-phi^-1 delta ; id_C)
                        for (std::size_t a = 0, b = 0; a < tx.size(); ++a) {
                            if (a == c)
                                continue;
                            ij(c, b) = pd(0, a);
                            for (auto& x : ij(c, b))
                                x = -x;
                            ++b;
                        }
                    }
                }
                to = compose(p, *to);
                from = compose(*from, i);
            }

            ProjComplex<K> Z = Y;
            Z.trim();
            if (track_maps && (Z.lo != Y.lo || Z.terms.size() != Y.terms.size())) {
                auto p = ChainMap<K>::zero_map(Y, Z, 0);
                auto i = ChainMap<K>::zero_map(Z, Y, 0);
                for (int j = Z.lo; j <= Z.hi(); ++j) {
                    p.comps[static_cast<std::size_t>(j - Y.lo)] = AlgMatrix<K>::identity(A, Z.term(j));
                    i.comps[static_cast<std::size_t>(j - Z.lo)] = AlgMatrix<K>::identity(A, Z.term(j));
                }
                to = compose(p, *to);
                from = compose(*from, i);
            }
            X = std::move(Z);
            changed = true;
            break;
        }
    }
    if (X.is_zero()) {
        X.lo = 0;
        if (track_maps) {
            to = ChainMap<K>::zero_map(X0, X, 0);
            from = ChainMap<K>::zero_map(X, X0, 0);
        }
    }
    return Minimized<K>{std::move(X), std::move(to), std::move(from)};
}

template <class K>
ProjComplex<K> minimize(const ProjComplex<K>& X) {
    return minimize_with_maps(X, false).complex;
}

/// Sorted per-degree vertex multisets, the isomorphism invariant of minimal
/// complexes.
template <class K>
std::vector<std::pair<int, std::vector<int>>> graded_shape(const ProjComplex<K>& X) {
    std::vector<std::pair<int, std::vector<int>>> out;
    for (int k = X.lo; k <= X.hi(); ++k) {
        auto t = X.term(k);
        if (t.empty())
            continue;
        std::sort(t.begin(), t.end());
        out.emplace_back(k, std::move(t));
    }
    return out;
}

} // namespace siltkit
