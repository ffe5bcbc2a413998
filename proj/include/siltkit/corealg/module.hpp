#pragma once

// Finite-dimensional right A-modules as quiver representations.
//
// An arrow a: s -> t acts as a linear map M_t -> M_s, stored as a
// dim(M_s) x dim(M_t) matrix.  Elements of M are column vectors in the
// concatenation M_0 (+) M_1 (+) ... of the vertex spaces.

#include "siltkit/corealg/path_algebra.hpp"

#include <numeric>

namespace siltkit {

template <class K>
class RightModule {
public:
    RightModule() = default;
    RightModule(AlgebraPtr<K> alg, std::vector<std::size_t> dims, std::vector<Matrix<K>> action)
        : alg_(std::move(alg)), dims_(std::move(dims)), action_(std::move(action)) {
        validate();
    }

    const AlgebraPtr<K>& algebra() const { return alg_; }
    const std::vector<std::size_t>& dimension_vector() const { return dims_; }
    std::size_t dim(int v) const { return dims_[static_cast<std::size_t>(v)]; }
    std::size_t total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }
    std::size_t offset(int v) const {
        return std::accumulate(dims_.begin(), dims_.begin() + v, std::size_t{0});
    }
    const Matrix<K>& arrow_action(int a) const { return action_[static_cast<std::size_t>(a)]; }

    /// Matrix of m -> m.p as a map M_target -> M_source.
    Matrix<K> path_action(const Path& p) const {
        Matrix<K> m = Matrix<K>::identity(dim(p.target));
        for (int a : p.arrows)
            m = arrow_action(a) * m;
        return m;
    }

    /// Matrix of m -> m.x on the total space.
    Matrix<K> element_action(const Vec<K>& x) const {
        std::size_t n = total_dim();
        Matrix<K> out(n, n);
        const auto& A = *alg_;
        for (std::size_t i = 0; i < A.dim(); ++i) {
            if (is_zero(x[i]))
                continue;
            const Path& p = A.basis_path(i);
            auto m = path_action(p);
            std::size_t ro = offset(p.source), co = offset(p.target);
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    if (!is_zero(m(r, c)))
                        out(ro + r, co + c) += x[i] * m(r, c);
        }
        return out;
    }

    void validate() const {
        if (!alg_)
            throw InvalidArgument("module without algebra");
        const auto& q = alg_->quiver();
        if (dims_.size() != static_cast<std::size_t>(q.num_vertices()) ||
            action_.size() != static_cast<std::size_t>(q.num_arrows()))
            throw InvalidArgument("module data does not match the quiver");
        for (int a = 0; a < q.num_arrows(); ++a) {
            const auto& arr = q.arrows[static_cast<std::size_t>(a)];
            const auto& m = arrow_action(a);
            if (m.rows() != dim(arr.source) || m.cols() != dim(arr.target))
                throw InvalidArgument("action of arrow '" + arr.name + "' has the wrong shape");
        }
        for (const auto& rel : alg_->relations()) {
            const Path& shape = rel.terms.front().second;
            Matrix<K> sum(dim(shape.source), dim(shape.target));
            for (const auto& [c, p] : rel.terms) {
                auto m = path_action(p);
                for (std::size_t r = 0; r < m.rows(); ++r)
                    for (std::size_t k = 0; k < m.cols(); ++k)
                        sum(r, k) += c * m(r, k);
            }
            if (!sum.is_zero_matrix())
                throw InvalidArgument("a relation does not act as zero");
        }
    }

private:
    AlgebraPtr<K> alg_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix<K>> action_;
};

/// Per-vertex linear maps M_v -> N_v commuting with the arrow actions.
template <class K>
struct ModuleMap {
    std::vector<Matrix<K>> components;

    bool commutes(const RightModule<K>& M, const RightModule<K>& N) const {
        const auto& q = M.algebra()->quiver();
        for (int a = 0; a < q.num_arrows(); ++a) {
            const auto& arr = q.arrows[static_cast<std::size_t>(a)];
            auto lhs = components[static_cast<std::size_t>(arr.source)] * M.arrow_action(a);
            auto rhs = N.arrow_action(a) * components[static_cast<std::size_t>(arr.target)];
            if (!(lhs == rhs))
                return false;
        }
        return true;
    }
};

template <class K>
RightModule<K> simple_module(const AlgebraPtr<K>& A, int v) {
    const auto& q = A->quiver();
    q.check_vertex(v);
    std::vector<std::size_t> dims(static_cast<std::size_t>(q.num_vertices()), 0);
    dims[static_cast<std::size_t>(v)] = 1;
    std::vector<Matrix<K>> act;
    for (const auto& arr : q.arrows)
        act.emplace_back(dims[static_cast<std::size_t>(arr.source)], dims[static_cast<std::size_t>(arr.target)]);
    return RightModule<K>(A, dims, std::move(act));
}

/// (+)_i e_{u_i} A.  At vertex w the basis is the concatenation over i of
/// the paths in block(u_i, w).
template <class K>
RightModule<K> projective_sum(const AlgebraPtr<K>& A, const std::vector<int>& tops) {
    const auto& q = A->quiver();
    std::size_t nv = static_cast<std::size_t>(q.num_vertices());
    std::vector<std::size_t> dims(nv, 0);
    for (int u : tops) {
        q.check_vertex(u);
        for (std::size_t w = 0; w < nv; ++w)
            dims[w] += A->block_dim(u, static_cast<int>(w));
    }
    std::vector<Matrix<K>> act;
    for (int a = 0; a < q.num_arrows(); ++a) {
        const auto& arr = q.arrows[static_cast<std::size_t>(a)];
        Matrix<K> m(dims[static_cast<std::size_t>(arr.source)], dims[static_cast<std::size_t>(arr.target)]);
        Path alpha{arr.source, arr.target, {a}};
        std::size_t ro = 0, co = 0;
        for (int u : tops) {
            const auto& src = A->block(u, arr.target);
            const auto& dst = A->block(u, arr.source);
            for (std::size_t c = 0; c < src.size(); ++c) {
                auto nf = A->normal_form(concat(A->basis_path(src[c]), alpha));
                for (std::size_t r = 0; r < dst.size(); ++r)
                    m(ro + r, co + c) = nf[dst[r]];
            }
            ro += dst.size();
            co += src.size();
        }
        act.push_back(std::move(m));
    }
    return RightModule<K>(A, dims, std::move(act));
}

template <class K>
RightModule<K> projective_module(const AlgebraPtr<K>& A, int v) {
    A->quiver().check_vertex(v);
    return projective_sum(A, std::vector<int>{v});
}

/// Components in e_{u_i} A e_w of an element of ((+)_i e_{u_i} A)_w, one
/// algebra element per summand.
template <class K>
std::vector<Vec<K>> projective_components(const AlgebraPtr<K>& A, const std::vector<int>& tops, int w,
                                          const Vec<K>& x) {
    std::vector<Vec<K>> out;
    std::size_t off = 0;
    for (int u : tops) {
        const auto& blk = A->block(u, w);
        Vec<K> a = A->zero();
        for (std::size_t r = 0; r < blk.size(); ++r)
            a[blk[r]] = x[off + r];
        off += blk.size();
        out.push_back(std::move(a));
    }
    return out;
}

/// Top of M at v: basis vectors of M_v complementing the images of the
/// arrows starting at v.
template <class K>
std::vector<Vec<K>> top_generators(const RightModule<K>& M, int v) {
    const auto& q = M.algebra()->quiver();
    std::size_t n = M.dim(v);
    SpanBasis<K> rad(n);
    for (int a = 0; a < q.num_arrows(); ++a) {
        if (q.arrows[static_cast<std::size_t>(a)].source != v)
            continue;
        const auto& m = M.arrow_action(a);
        for (std::size_t c = 0; c < m.cols(); ++c)
            rad.add(m.column(c));
    }
    std::vector<Vec<K>> gens;
    for (std::size_t i = 0; i < n; ++i) {
        auto e = unit_vector<K>(n, i);
        if (rad.add(e))
            gens.push_back(std::move(e));
    }
    return gens;
}

template <class K>
struct ProjectiveCover {
    std::vector<int> tops;     // P = (+) e_{tops[i]} A
    std::vector<Vec<K>> generators; // images in M_{tops[i]} of the e_{tops[i]}
    RightModule<K> P;
    ModuleMap<K> map;

    std::vector<std::size_t> multiplicities() const {
        std::vector<std::size_t> m(P.dimension_vector().size(), 0);
        for (int u : tops)
            ++m[static_cast<std::size_t>(u)];
        return m;
    }
};

/// P(M) -> M sending the top generator e_u of each summand to a chosen
/// element of the top of M.
template <class K>
ProjectiveCover<K> projective_cover(const RightModule<K>& M) {
    if (M.total_dim() == 0)
        throw ZeroModule("projective cover of the zero module");
    const auto& A = M.algebra();
    int nv = A->num_vertices();
    ProjectiveCover<K> pc;
    for (int v = 0; v < nv; ++v)
        for (auto& g : top_generators(M, v)) {
            pc.tops.push_back(v);
            pc.generators.push_back(std::move(g));
        }
    pc.P = projective_sum(A, pc.tops);
    for (int w = 0; w < nv; ++w) {
        Matrix<K> f(M.dim(w), pc.P.dim(w));
        std::size_t col = 0;
        for (std::size_t i = 0; i < pc.tops.size(); ++i) {
            int u = pc.tops[i];
            for (std::size_t b : A->block(u, w)) {
                f.set_column(col++, M.path_action(A->basis_path(b)).apply(pc.generators[i]));
            }
        }
        pc.map.components.push_back(std::move(f));
    }
    return pc;
}

template <class K>
struct Submodule {
    RightModule<K> module;
    ModuleMap<K> inclusion;
};

template <class K>
Submodule<K> kernel(const RightModule<K>& M, const RightModule<K>& N, const ModuleMap<K>& f) {
    const auto& A = M.algebra();
    const auto& q = A->quiver();
    int nv = q.num_vertices();
    std::vector<std::vector<Vec<K>>> bases(static_cast<std::size_t>(nv));
    std::vector<std::size_t> dims;
    Submodule<K> out;
    for (int v = 0; v < nv; ++v) {
        auto& b = bases[static_cast<std::size_t>(v)];
        if (M.dim(v) > 0) {
            if (N.dim(v) == 0) {
                for (std::size_t i = 0; i < M.dim(v); ++i)
                    b.push_back(unit_vector<K>(M.dim(v), i));
            } else {
                b = nullspace(f.components[static_cast<std::size_t>(v)]);
            }
        }
        dims.push_back(b.size());
        out.inclusion.components.push_back(Matrix<K>::from_columns(M.dim(v), b));
    }
    std::vector<Matrix<K>> act;
    for (int a = 0; a < q.num_arrows(); ++a) {
        const auto& arr = q.arrows[static_cast<std::size_t>(a)];
        const auto& src = bases[static_cast<std::size_t>(arr.target)];
        const auto& dst = bases[static_cast<std::size_t>(arr.source)];
        SpanBasis<K> span(M.dim(arr.source));
        for (const auto& d : dst)
            span.add(d);
        Matrix<K> m(dst.size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c) {
            auto img = M.arrow_action(a).apply(src[c]);
            auto co = span.coords(img);
            if (!co)
                throw InvalidArgument("kernel is not a submodule (map does not commute)");
            for (std::size_t r = 0; r < dst.size(); ++r)
                m(r, c) = (*co)[r];
        }
        act.push_back(std::move(m));
    }
    out.module = RightModule<K>(A, dims, std::move(act));
    return out;
}

} // namespace siltkit
