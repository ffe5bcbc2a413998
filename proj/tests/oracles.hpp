#pragma once

// Test-side reference computations that share no code with the library:
// path enumeration for monomial algebras, quiver representations, and a
// small exact Gaussian elimination.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Mat = std::vector<std::vector<Q>>;

inline std::size_t rank(Mat m) {
    std::size_t r = 0;
    std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            Q f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

/// Quiver with arrows (source, target) and monomial zero relations given as
/// arrow words written target-to-source; paths of length >= bound vanish.
struct Monomial {
    int vertices = 0;
    std::vector<std::pair<int, int>> arrows;
    std::vector<std::vector<int>> zero_words;
    int bound = 1;

    int source(const std::vector<int>& w, int trivial) const { return w.empty() ? trivial : arrows[w.back()].first; }
    int target(const std::vector<int>& w, int trivial) const { return w.empty() ? trivial : arrows[w.front()].second; }

    bool alive(const std::vector<int>& w) const {
        if (static_cast<int>(w.size()) >= bound)
            return false;
        for (const auto& z : zero_words)
            if (std::search(w.begin(), w.end(), z.begin(), z.end()) != w.end())
                return false;
        return true;
    }

    /// Nonzero paths from v to t (target t, source v).
    std::vector<std::vector<int>> paths(int t, int v) const {
        std::vector<std::vector<int>> out;
        std::vector<std::vector<int>> layer{{}};
        while (!layer.empty()) {
            std::vector<std::vector<int>> next;
            for (const auto& w : layer) {
                if (!alive(w))
                    continue;
                if (target(w, t) == t && source(w, t) == v)
                    out.push_back(w);
                int s = source(w, t);
                for (int a = 0; a < static_cast<int>(arrows.size()); ++a)
                    if (arrows[a].second == s) {
                        auto x = w;
                        x.push_back(a);
                        next.push_back(x);
                    }
            }
            layer = std::move(next);
        }
        return out;
    }

    std::size_t cartan(int t, int v) const { return paths(t, v).size(); }
};

/// Right module as a representation: space M_v per vertex, and for an arrow
/// s -> t a linear map M_t -> M_s.
struct Rep {
    std::vector<std::size_t> dims;
    std::vector<Mat> maps; // maps[a] : dims[target] -> dims[source], as dims[source] x dims[target]
};

/// e_i A, with (e_i A)_v spanned by the paths from v to i.
inline Rep projective(const Monomial& q, int i) {
    Rep r;
    std::vector<std::vector<std::vector<int>>> basis(static_cast<std::size_t>(q.vertices));
    for (int v = 0; v < q.vertices; ++v) {
        basis[v] = q.paths(i, v);
        r.dims.push_back(basis[v].size());
    }
    for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
        auto [s, t] = q.arrows[a];
        Mat m(r.dims[s], std::vector<Q>(r.dims[t], 0));
        for (std::size_t c = 0; c < basis[t].size(); ++c) {
            auto w = basis[t][c];
            w.push_back(a);
            if (w.size() == 1 && t != i)
                continue;
            auto it = std::find(basis[s].begin(), basis[s].end(), w);
            if (it != basis[s].end() && q.alive(w))
                m[static_cast<std::size_t>(it - basis[s].begin())][c] = 1;
        }
        r.maps.push_back(m);
    }
    return r;
}

inline Rep simple(const Monomial& q, int i) {
    Rep r;
    r.dims.assign(static_cast<std::size_t>(q.vertices), 0);
    r.dims[i] = 1;
    for (auto [s, t] : q.arrows)
        r.maps.push_back(Mat(r.dims[s], std::vector<Q>(r.dims[t], 0)));
    return r;
}

/// dim Hom(M, N): families f_v : M_v -> N_v with f_s M(a) = N(a) f_t.
inline std::size_t hom(const Monomial& q, const Rep& M, const Rep& N) {
    std::vector<std::size_t> off;
    std::size_t unknowns = 0;
    for (int v = 0; v < q.vertices; ++v) {
        off.push_back(unknowns);
        unknowns += M.dims[v] * N.dims[v];
    }
    auto var = [&](int v, std::size_t r, std::size_t c) { return off[v] + r * M.dims[v] + c; };
    Mat eq;
    for (int a = 0; a < static_cast<int>(q.arrows.size()); ++a) {
        auto [s, t] = q.arrows[a];
        for (std::size_t r = 0; r < N.dims[s]; ++r)
            for (std::size_t c = 0; c < M.dims[t]; ++c) {
                std::vector<Q> row(unknowns, 0);
                for (std::size_t k = 0; k < M.dims[s]; ++k)
                    row[var(s, r, k)] += M.maps[a][k][c];
                for (std::size_t k = 0; k < N.dims[t]; ++k)
                    row[var(t, k, c)] -= N.maps[a][r][k];
                eq.push_back(row);
            }
    }
    return unknowns - (unknowns ? rank(eq) : 0);
}

} // namespace oracle
