#pragma once

// Right dg modules, augmentations, semifree resolutions and Koszul duals.

#include "siltkit/dg/dg_algebra.hpp"

namespace siltkit {

/// Right dg module given by flat structure: action[a] has column m = m * b_a.
template <class K>
struct DGModule {
    std::vector<int> degree;
    Matrix<K> d;
    std::vector<Matrix<K>> action;
    std::string label;

    std::size_t dim() const { return degree.size(); }

    std::string check_axioms(const DGAlgebra<K>& E) const {
        const std::size_t n = dim();
        if (action.size() != E.dim())
            return "action count mismatch";
        if (!(d * d).is_zero_matrix())
            return "d^2 != 0";
        for (std::size_t a = 0; a < E.dim(); ++a)
            for (std::size_t m = 0; m < n; ++m) {
                auto em = unit_vector<K>(n, m);
                auto ma = action[a].apply(em);
                for (std::size_t t = 0; t < n; ++t)
                    if (!is_zero(ma[t]) && degree[t] != degree[m] + E.degree[a])
                        return "action is not homogeneous";
                // d(m a) = d(m) a + (-1)^|m| m d(a)
                auto lhs = d.apply(ma);
                auto r1 = action[a].apply(d.apply(em));
                Vec<K> r2(n, K(0));
                auto da = E.d.column(a);
                for (std::size_t c = 0; c < E.dim(); ++c)
                    if (!is_zero(da[c]))
                        axpy(r2, da[c], action[c].apply(em));
                K sign = degree[m] % 2 == 0 ? K(1) : K(-1);
                for (std::size_t t = 0; t < n; ++t) {
                    K s2 = sign * r2[t];
                    K rhs = r1[t] + s2;
                    if (lhs[t] != rhs)
                        return "module Leibniz rule fails";
                }
                for (std::size_t b = 0; b < E.dim(); ++b) {
                    auto lhs2 = action[b].apply(ma);
                    Vec<K> rhs2(n, K(0));
                    for (const auto& [t, s] : E.product_terms(a, b))
                        axpy(rhs2, s, action[t].apply(em));
                    if (lhs2 != rhs2)
                        return "action is not associative";
                }
            }
        auto u = E.unit();
        for (std::size_t m = 0; m < n; ++m) {
            Vec<K> mu(n, K(0));
            auto em = unit_vector<K>(n, m);
            for (std::size_t c = 0; c < E.dim(); ++c)
                if (!is_zero(u[c]))
                    axpy(mu, u[c], action[c].apply(em));
            if (mu != em)
                return "unit does not act as the identity";
        }
        return "";
    }
};

/// The algebra the simples live over (E or a truncation), its inclusion into
/// E, the augmentations and the simple modules.
template <class K>
struct Augmentation {
    DGAlgebra<K> algebra;
    Matrix<K> inclusion;
    bool truncated = false;
    std::vector<Vec<K>> eps; // eps[i][b] = eps_i(b)
    std::vector<DGModule<K>> simples;
};

namespace detail {

/// Character of the local split algebra e_i Q e_i where Q = W^0 / d(W^-1),
/// as values on the W basis elements of block (i, i) in degree 0.
template <class K>
Vec<K> block_character(const DGAlgebra<K>& W, std::size_t i) {
    int v = static_cast<int>(i);
    auto I = W.indices(v, v, 0), down = W.indices(v, v, -1);
    std::vector<Vec<K>> Z, B;
    for (std::size_t c = 0; c < I.size(); ++c)
        Z.push_back(unit_vector<K>(I.size(), c));
    for (std::size_t c : down) {
        Vec<K> b(I.size());
        for (std::size_t r = 0; r < I.size(); ++r)
            b[r] = W.d(I[r], c);
        B.push_back(b);
    }
    Vec<K> seed(I.size());
    for (std::size_t r = 0; r < I.size(); ++r)
        seed[r] = W.idempotents[i][I[r]];
    Subquotient<K> Q(I.size(), Z, B, {seed});
    const std::size_t q = Q.dimension();
    if (q == 0)
        throw SimpleNotOneDimensional("object " + std::to_string(i + 1) + " has zero degree-0 cohomology");
    auto lift = [&](const Vec<K>& loc) {
        Vec<K> full = W.zero();
        for (std::size_t r = 0; r < I.size(); ++r)
            full[I[r]] = loc[r];
        return full;
    };
    auto restrict = [&](const Vec<K>& full) {
        Vec<K> loc(I.size());
        for (std::size_t r = 0; r < I.size(); ++r)
            loc[r] = full[I[r]];
        return loc;
    };
    FiniteAlgebra<K> R;
    R.dim = q;
    R.one = unit_vector<K>(q, 0);
    const auto& reps = Q.representatives();
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            R.table.push_back(*Q.class_of(restrict(W.multiply(lift(reps[a]), lift(reps[b])))));
    auto rad = local_radical(R);
    if (rad.size() + 1 != q)
        throw SimpleNotOneDimensional("End of simple " + std::to_string(i + 1) + " is not the ground field");
    SpanBasis<K> span(q);
    for (const auto& r : rad)
        span.add(r);
    span.add(R.one);
    Vec<K> chi = W.zero();
    for (std::size_t r = 0; r < I.size(); ++r) {
        auto c = *span.coords(*Q.class_of(unit_vector<K>(I.size(), r)));
        chi[I[r]] = c.back();
    }
    return chi;
}

} // namespace detail

/// Augmentations E -> k_i and the simple dg modules they define.  Algebras
/// without positive cohomology are replaced by their smart truncation;
/// non-negative algebras are augmented through their degree-0 part.
template <class K>
Augmentation<K> simple_dg_modules(const DGAlgebra<K>& E) {
    if (E.num_objects() == 0)
        throw IdempotentLiftMissing("dg algebra has no idempotents");
    {
        auto u = E.unit();
        for (std::size_t a = 0; a < E.dim(); ++a) {
            auto ea = unit_vector<K>(E.dim(), a);
            if (E.multiply(u, ea) != ea)
                throw IdempotentLiftMissing("idempotents do not sum to the unit");
        }
        for (const auto& e : E.idempotents)
            if (!is_zero_vector(E.differential(e)))
                throw IdempotentLiftMissing("an idempotent is not a cocycle");
    }
    bool pos = std::any_of(E.degree.begin(), E.degree.end(), [](int g) { return g > 0; });
    bool neg = std::any_of(E.degree.begin(), E.degree.end(), [](int g) { return g < 0; });
    bool pos_cohomology = false;
    for (auto [n, h] : cohomology_dims(E))
        if (n > 0 && h > 0)
            pos_cohomology = true;
    Augmentation<K> aug;
    if (!pos) {
        aug.algebra = E;
        aug.inclusion = Matrix<K>::identity(E.dim());
    } else if (!pos_cohomology) {
        auto T = smart_truncation(E);
        aug.algebra = T.algebra;
        aug.inclusion = T.inclusion;
        aug.truncated = true;
    } else if (!neg) {
        aug.algebra = E;
        aug.inclusion = Matrix<K>::identity(E.dim());
    } else {
        throw NotAugmentable("dg algebra has degrees of both signs and positive cohomology");
    }
    const auto& W = aug.algebra;
    for (std::size_t i = 0; i < W.num_objects(); ++i)
        aug.eps.push_back(detail::block_character(W, i));
    // eps_i must be a dg algebra map
    for (std::size_t i = 0; i < W.num_objects(); ++i) {
        const auto& e = aug.eps[i];
        auto val = [&](const Vec<K>& x) {
            K s(0);
            for (std::size_t t = 0; t < x.size(); ++t)
                if (!is_zero(x[t]) && !is_zero(e[t])) {
                    K p = x[t] * e[t];
                    s += p;
                }
            return s;
        };
        for (std::size_t a = 0; a < W.dim(); ++a) {
            if (!is_zero(val(W.d.column(a))))
                throw NotAugmentable("augmentation " + std::to_string(i + 1) + " does not kill boundaries");
            for (std::size_t b = 0; b < W.dim(); ++b) {
                K lhs = val(W.multiply(unit_vector<K>(W.dim(), a), unit_vector<K>(W.dim(), b)));
                K rhs = e[a] * e[b];
                if (lhs != rhs)
                    throw NotAugmentable("augmentation " + std::to_string(i + 1) + " is not multiplicative");
            }
        }
        DGModule<K> S;
        S.degree = {0};
        S.d = Matrix<K>(1, 1);
        for (std::size_t a = 0; a < W.dim(); ++a) {
            Matrix<K> m(1, 1);
            m(0, 0) = e[a];
            S.action.push_back(m);
        }
        S.label = "S" + W.objects[i];
        aug.simples.push_back(std::move(S));
    }
    return aug;
}

/// Semifree right module: basis elements x * b for generators x at vertex v
/// and algebra basis elements b with left block v.
template <class K>
class SemifreeModule {
public:
    struct Generator {
        int degree;
        int vertex;
        Vec<K> boundary; // in module coordinates, zero-extended
        int stage;
    };

    SemifreeModule() = default;
    explicit SemifreeModule(std::shared_ptr<const DGAlgebra<K>> W) : W_(std::move(W)) {}

    const DGAlgebra<K>& algebra() const { return *W_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& basis() const { return basis_; }

    int degree(std::size_t e) const {
        return gens_[basis_[e].first].degree + W_->degree[basis_[e].second];
    }
    int right_vertex(std::size_t e) const { return W_->block[basis_[e].second].second; }

    std::size_t index(std::size_t gen, std::size_t b) const {
        auto v = index_[gen][b];
        if (v == npos)
            throw InvalidArgument("semifree module: element outside the free module");
        return v;
    }

    Vec<K> zero() const { return Vec<K>(dim(), K(0)); }

    Vec<K> resized(const Vec<K>& x) const {
        Vec<K> y = x;
        y.resize(dim(), K(0));
        return y;
    }

    /// Generator gen times an algebra element.
    Vec<K> generator_times(std::size_t gen, const Vec<K>& a) const {
        Vec<K> out = zero();
        for (std::size_t b = 0; b < W_->dim(); ++b)
            if (!is_zero(a[b]))
                out[index(gen, b)] += a[b];
        return out;
    }

    Vec<K> act(const Vec<K>& x, std::size_t a) const {
        Vec<K> out = zero();
        for (std::size_t e = 0; e < x.size(); ++e) {
            if (is_zero(x[e]))
                continue;
            auto [g, b] = basis_[e];
            for (const auto& [t, s] : W_->product_terms(b, a)) {
                K c = x[e] * s;
                out[index(g, t)] += c;
            }
        }
        return out;
    }

    Vec<K> act(const Vec<K>& x, const Vec<K>& a) const {
        Vec<K> out = zero();
        for (std::size_t c = 0; c < a.size(); ++c)
            if (!is_zero(a[c]))
                axpy(out, a[c], act(x, c));
        return out;
    }

    /// d(x b) = d(x) b + (-1)^|x| x d(b)
    Vec<K> differential(const Vec<K>& y) const {
        Vec<K> out = zero();
        for (std::size_t e = 0; e < y.size(); ++e) {
            if (is_zero(y[e]))
                continue;
            auto [g, b] = basis_[e];
            const auto& gen = gens_[g];
            axpy(out, y[e], act(resized(gen.boundary), b));
            auto db = W_->d.column(b);
            K sign = gen.degree % 2 == 0 ? K(1) : K(-1);
            K c = sign * y[e];
            for (std::size_t t = 0; t < db.size(); ++t)
                if (!is_zero(db[t])) {
                    K u = c * db[t];
                    out[index(g, t)] += u;
                }
        }
        return out;
    }

    Matrix<K> differential_matrix() const {
        Matrix<K> D(dim(), dim());
        for (std::size_t e = 0; e < dim(); ++e)
            D.set_column(e, differential(unit_vector<K>(dim(), e)));
        return D;
    }

    std::size_t add_generator(int degree, int vertex, const Vec<K>& boundary, int stage) {
        std::size_t g = gens_.size();
        gens_.push_back({degree, vertex, boundary, stage});
        index_.emplace_back(W_->dim(), npos);
        for (std::size_t b = 0; b < W_->dim(); ++b)
            if (W_->block[b].first == vertex) {
                index_[g][b] = basis_.size();
                basis_.emplace_back(g, b);
            }
        return g;
    }

    DGModule<K> flatten() const {
        DGModule<K> M;
        for (std::size_t e = 0; e < dim(); ++e)
            M.degree.push_back(degree(e));
        M.d = differential_matrix();
        for (std::size_t a = 0; a < W_->dim(); ++a) {
            Matrix<K> m(dim(), dim());
            for (std::size_t e = 0; e < dim(); ++e)
                m.set_column(e, act(unit_vector<K>(dim(), e), a));
            M.action.push_back(m);
        }
        return M;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::shared_ptr<const DGAlgebra<K>> W_;
    std::vector<Generator> gens_;
    std::vector<std::pair<std::size_t, std::size_t>> basis_;
    std::vector<std::vector<std::size_t>> index_;
};

template <class K>
struct SemifreeResolution {
    SemifreeModule<K> module;
    std::size_t simple = 0;
    int window_lo = 0;
    int window_hi = 0;
    bool complete = false;
    int stages = 0;
};

/// Resolves the simple at vertex i over aug.algebra by adjoining generators
/// that kill the kernel of H(F) -> H(S_i), one degree at a time: the top
/// degree first over non-positive algebras, the bottom degree first
/// otherwise.  Classes that are multiples of other kernel classes by
/// nilpotent degree-0 elements are not killed separately.
template <class K>
SemifreeResolution<K> semifree_resolution(const Augmentation<K>& aug, std::size_t i, int window_lo, int window_hi,
                                          int max_stages = 64) {
    const auto& W = aug.algebra;
    if (i >= W.num_objects())
        throw InvalidArgument("no simple " + std::to_string(i + 1));
    if (window_lo > window_hi)
        throw InvalidArgument("empty window");
    SemifreeResolution<K> res;
    res.module = SemifreeModule<K>(std::make_shared<const DGAlgebra<K>>(aug.algebra));
    res.simple = i;
    res.window_lo = window_lo;
    res.window_hi = window_hi;
    auto& F = res.module;
    F.add_generator(0, static_cast<int>(i), {}, 0);
    const bool nonpositive = std::none_of(W.degree.begin(), W.degree.end(), [](int g) { return g > 0; });
    // nilpotent degree-0 basis elements
    std::vector<std::size_t> nilp;
    for (std::size_t a : W.indices(0)) {
        auto x = unit_vector<K>(W.dim(), a);
        auto p = x;
        for (std::size_t t = 0; t <= W.dim() && !is_zero_vector(p); ++t)
            p = W.multiply(p, x);
        if (is_zero_vector(p))
            nilp.push_back(a);
    }
    const auto& eps = aug.eps[i];
    for (int stage = 1; stage <= max_stages; ++stage) {
        const std::size_t N = F.dim();
        auto D = F.differential_matrix();
        std::map<std::pair<int, int>, std::vector<std::size_t>> cells; // (degree, right vertex)
        for (std::size_t e = 0; e < N; ++e)
            cells[{F.degree(e), F.right_vertex(e)}].push_back(e);
        // kernel cocycles per degree, as classes modulo boundaries
        struct Kill {
            int degree;
            int vertex;
            std::vector<Vec<K>> cocycles;
            std::vector<Vec<K>> classes;
        };
        std::map<int, std::vector<Kill>> by_degree;
        for (const auto& [key, idx] : cells) {
            auto [n, v] = key;
            std::vector<std::size_t> up;
            if (cells.count({n + 1, v}))
                up = cells[{n + 1, v}];
            Matrix<K> M(up.size() + 1, idx.size());
            for (std::size_t r = 0; r < up.size(); ++r)
                for (std::size_t c = 0; c < idx.size(); ++c)
                    M(r, c) = D(up[r], idx[c]);
            for (std::size_t c = 0; c < idx.size(); ++c) {
                auto [g, b] = F.basis()[idx[c]];
                M(up.size(), c) = g == 0 ? eps[b] : K(0);
            }
            auto Zloc = nullspace(M);
            std::vector<Vec<K>> B;
            if (cells.count({n - 1, v}))
                for (std::size_t c : cells[{n - 1, v}]) {
                    Vec<K> b(idx.size());
                    for (std::size_t r = 0; r < idx.size(); ++r)
                        b[r] = D(idx[r], c);
                    B.push_back(b);
                }
            Subquotient<K> sq(idx.size(), Zloc, B);
            if (sq.dimension() == 0)
                continue;
            Kill k{n, v, {}, {}};
            for (const auto& z : Zloc) {
                Vec<K> full(N, K(0));
                for (std::size_t r = 0; r < idx.size(); ++r)
                    full[idx[r]] = z[r];
                k.cocycles.push_back(full);
            }
            for (const auto& z : sq.representatives()) {
                Vec<K> full(N, K(0));
                for (std::size_t r = 0; r < idx.size(); ++r)
                    full[idx[r]] = z[r];
                k.classes.push_back(full);
            }
            by_degree[n].push_back(std::move(k));
        }
        if (by_degree.empty()) {
            res.complete = true;
            res.stages = stage - 1;
            return res;
        }
        int n = nonpositive ? by_degree.rbegin()->first : by_degree.begin()->first;
        if (n < window_lo || n > window_hi) {
            res.stages = stage - 1;
            return res;
        }
        // decomposables: kernel cocycles of degree n times nilpotent degree-0 elements
        std::vector<Vec<K>> all_cocycles;
        for (const auto& k : by_degree[n])
            for (const auto& z : k.cocycles)
                all_cocycles.push_back(z);
        std::vector<std::pair<int, Vec<K>>> fresh;
        for (const auto& k : by_degree[n]) {
            SpanBasis<K> span(N);
            // boundaries of this cell
            for (std::size_t c = 0; c < N; ++c)
                if (F.degree(c) == n - 1 && F.right_vertex(c) == k.vertex)
                    span.add(D.column(c));
            for (const auto& z : all_cocycles)
                for (std::size_t a : nilp) {
                    if (W.block[a].second != k.vertex)
                        continue;
                    auto za = F.act(z, a);
                    if (!is_zero_vector(za))
                        span.add(za);
                }
            for (const auto& z : k.classes)
                if (span.add(z))
                    fresh.emplace_back(k.vertex, z);
        }
        for (const auto& [v, z] : fresh)
            F.add_generator(n - 1, v, z, stage);
    }
    res.stages = max_stages;
    return res;
}

/// Hom_W(F, G) as graded maps determined on generators: basis element
/// (generator x of F, basis element e of G with right vertex v(x)).
template <class K>
struct SemifreeHom {
    const SemifreeModule<K>* F;
    const SemifreeModule<K>* G;
    std::vector<std::pair<std::size_t, std::size_t>> cells; // (gen of F, element of G)

    SemifreeHom(const SemifreeModule<K>& f, const SemifreeModule<K>& g) : F(&f), G(&g) {
        for (std::size_t x = 0; x < F->generators().size(); ++x)
            for (std::size_t e = 0; e < G->dim(); ++e)
                if (G->right_vertex(e) == F->generators()[x].vertex)
                    cells.emplace_back(x, e);
    }

    int degree(std::size_t c) const {
        return G->degree(cells[c].second) - F->generators()[cells[c].first].degree;
    }

    /// Images of the generators of F.
    std::vector<Vec<K>> images(const Vec<K>& f) const {
        std::vector<Vec<K>> out(F->generators().size(), G->zero());
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (!is_zero(f[c]))
                out[cells[c].first][cells[c].second] += f[c];
        return out;
    }

    Vec<K> from_images(const std::vector<Vec<K>>& img) const {
        Vec<K> f(cells.size(), K(0));
        for (std::size_t c = 0; c < cells.size(); ++c)
            f[c] = img[cells[c].first][cells[c].second];
        return f;
    }

    /// f applied to an element of F.
    Vec<K> apply(const std::vector<Vec<K>>& img, const Vec<K>& m) const {
        Vec<K> out = G->zero();
        for (std::size_t e = 0; e < m.size(); ++e) {
            if (is_zero(m[e]))
                continue;
            auto [x, b] = F->basis()[e];
            axpy(out, m[e], G->act(img[x], b));
        }
        return out;
    }
};

template <class K>
struct KoszulDual {
    DGAlgebra<K> algebra;
    Augmentation<K> augmentation;
    std::vector<SemifreeResolution<K>> resolutions;
    int window_lo = 0;
    int window_hi = 0;
    bool complete = false;
};

/// REnd_E(S_1 + ... + S_m) over semifree resolutions of the simple dg modules.
template <class K>
KoszulDual<K> koszul_dual(const DGAlgebra<K>& E, int window_lo, int window_hi) {
    KoszulDual<K> out;
    out.augmentation = simple_dg_modules(E);
    out.window_lo = window_lo;
    out.window_hi = window_hi;
    const auto& W = out.augmentation.algebra;
    const std::size_t m = W.num_objects();
    out.complete = true;
    for (std::size_t i = 0; i < m; ++i) {
        out.resolutions.push_back(semifree_resolution(out.augmentation, i, window_lo, window_hi));
        out.complete = out.complete && out.resolutions.back().complete;
    }
    std::vector<std::vector<std::unique_ptr<SemifreeHom<K>>>> H(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            H[i].push_back(std::make_unique<SemifreeHom<K>>(out.resolutions[i].module, out.resolutions[j].module));
    struct Cell {
        std::size_t src, tgt, c;
    };
    std::vector<Cell> cells;
    std::vector<int> degree;
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> blocks;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> pos; // (src,tgt) -> global index per local
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const auto& h = *H[i][j];
            std::vector<std::size_t> order(h.cells.size());
            for (std::size_t c = 0; c < order.size(); ++c)
                order[c] = c;
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return h.degree(a) < h.degree(b); });
            auto& p = pos[{i, j}];
            p.assign(h.cells.size(), 0);
            for (std::size_t c : order) {
                p[c] = cells.size();
                cells.push_back({i, j, c});
                degree.push_back(h.degree(c));
                blocks.emplace_back(static_cast<int>(j), static_cast<int>(i));
                names.push_back("F" + std::to_string(i + 1) + std::to_string(j + 1) + "_" +
                                std::to_string(h.degree(c)) + "." + std::to_string(cells.size() - 1));
            }
        }
    auto K_ = make_dg_algebra<K>(degree, names, blocks, m);
    K_.objects.clear();
    for (std::size_t i = 0; i < m; ++i)
        K_.objects.push_back("S" + W.objects[i]);
    K_.provenance = "Koszul dual of " + E.provenance;
    const std::size_t N = K_.dim();
    auto local = [&](std::size_t i, std::size_t j, const Vec<K>& f) {
        Vec<K> v(N, K(0));
        const auto& p = pos[{i, j}];
        for (std::size_t c = 0; c < f.size(); ++c)
            v[p[c]] = f[c];
        return v;
    };
    // differential: d(f)(x) = d_G(f(x)) - (-1)^|f| f(d_F x)
    for (std::size_t t = 0; t < N; ++t) {
        const auto& [i, j, c] = cells[t];
        const auto& h = *H[i][j];
        const auto& F = out.resolutions[i].module;
        const auto& G = out.resolutions[j].module;
        Vec<K> f(h.cells.size(), K(0));
        f[c] = K(1);
        auto img = h.images(f);
        std::vector<Vec<K>> dimg;
        K sign = h.degree(c) % 2 == 0 ? K(1) : K(-1);
        for (std::size_t x = 0; x < F.generators().size(); ++x) {
            auto a = G.differential(img[x]);
            auto b = h.apply(img, F.resized(F.generators()[x].boundary));
            K ms = -sign;
            axpy(a, ms, b);
            dimg.push_back(a);
        }
        K_.d.set_column(t, local(i, j, h.from_images(dimg)));
    }
    // products g * f = g o f
    for (std::size_t tg = 0; tg < N; ++tg)
        for (std::size_t tf = 0; tf < N; ++tf) {
            const auto& cg = cells[tg];
            const auto& cf = cells[tf];
            if (cg.src != cf.tgt)
                continue;
            const auto& hg = *H[cg.src][cg.tgt];
            const auto& hf = *H[cf.src][cf.tgt];
            Vec<K> g(hg.cells.size(), K(0)), f(hf.cells.size(), K(0));
            g[cg.c] = K(1);
            f[cf.c] = K(1);
            auto gi = hg.images(g);
            auto fi = hf.images(f);
            std::vector<Vec<K>> comp;
            for (const auto& y : fi)
                comp.push_back(hg.apply(gi, y));
            const auto& hc = *H[cf.src][cg.tgt];
            set_product(K_, tg, tf, local(cf.src, cg.tgt, hc.from_images(comp)));
        }
    for (std::size_t i = 0; i < m; ++i) {
        const auto& h = *H[i][i];
        const auto& F = out.resolutions[i].module;
        std::vector<Vec<K>> img;
        for (std::size_t x = 0; x < F.generators().size(); ++x)
            img.push_back(F.generator_times(x, W.idempotents[static_cast<std::size_t>(F.generators()[x].vertex)]));
        K_.idempotents[i] = local(i, i, h.from_images(img));
    }
    out.algebra = std::move(K_);
    return out;
}

} // namespace siltkit
