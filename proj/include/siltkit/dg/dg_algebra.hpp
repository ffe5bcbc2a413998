#pragma once

// Finite-dimensional dg algebras by structure constants.

#include "siltkit/homotopy/approximation.hpp"

#include <map>
#include <set>

namespace siltkit {

template <class K>
using SparseVec = std::vector<std::pair<std::size_t, K>>;

/// Basis elements are homogeneous and lie in a single block e_left E e_right.
template <class K>
struct DGAlgebra {
    std::vector<int> degree;
    std::vector<std::string> names;
    Matrix<K> d; // column j is d(b_j)
    std::vector<SparseVec<K>> prod; // prod[a * dim + b]
    std::vector<Vec<K>> idempotents;
    std::vector<std::pair<int, int>> block; // (left, right)
    std::vector<std::string> objects;
    std::string provenance;

    std::size_t dim() const { return degree.size(); }
    std::size_t num_objects() const { return idempotents.size(); }

    const SparseVec<K>& product_terms(std::size_t a, std::size_t b) const { return prod[a * dim() + b]; }

    Vec<K> zero() const { return Vec<K>(dim(), K(0)); }

    Vec<K> multiply(const Vec<K>& x, const Vec<K>& y) const {
        Vec<K> out = zero();
        for (std::size_t a = 0; a < dim(); ++a) {
            if (is_zero(x[a]))
                continue;
            for (std::size_t b = 0; b < dim(); ++b) {
                if (is_zero(y[b]))
                    continue;
                K c = x[a] * y[b];
                for (const auto& [t, s] : product_terms(a, b)) {
                    K u = c * s;
                    out[t] += u;
                }
            }
        }
        return out;
    }

    Vec<K> differential(const Vec<K>& x) const { return d.apply(x); }

    Vec<K> unit() const {
        Vec<K> u = zero();
        for (const auto& e : idempotents)
            for (std::size_t i = 0; i < dim(); ++i)
                u[i] += e[i];
        return u;
    }

    std::vector<std::size_t> indices(int deg) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < dim(); ++i)
            if (degree[i] == deg)
                out.push_back(i);
        return out;
    }

    std::vector<std::size_t> indices(int left, int right, int deg) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < dim(); ++i)
            if (degree[i] == deg && block[i].first == left && block[i].second == right)
                out.push_back(i);
        return out;
    }

    std::set<int> degrees() const { return std::set<int>(degree.begin(), degree.end()); }

    std::map<int, std::size_t> degree_dims() const {
        std::map<int, std::size_t> m;
        for (int g : degree)
            ++m[g];
        return m;
    }

    bool has_zero_differential() const { return d.is_zero_matrix(); }

    /// Empty if d^2 = 0, Leibniz, associativity, unit and idempotent axioms
    /// hold on the basis; otherwise a description of the first violation.
    std::string check_axioms() const {
        const std::size_t n = dim();
        if (d.rows() != n || d.cols() != n || prod.size() != n * n || block.size() != n || names.size() != n)
            return "shape mismatch";
        if (!(d * d).is_zero_matrix())
            return "d^2 != 0";
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                if (!is_zero(d(i, j)) && degree[i] != degree[j] + 1)
                    return "d does not raise degree by one on " + names[j];
        using Sparse = std::map<std::size_t, K>;
        auto acc = [](Sparse& out, const SparseVec<K>& x, const K& c) {
            for (const auto& [t, v] : x) {
                K w = v * c;
                out[t] += w;
            }
        };
        auto same = [](const Sparse& x, const Sparse& y) {
            auto it = x.begin();
            auto jt = y.begin();
            while (true) {
                while (it != x.end() && is_zero(it->second))
                    ++it;
                while (jt != y.end() && is_zero(jt->second))
                    ++jt;
                if (it == x.end() || jt == y.end())
                    return it == x.end() && jt == y.end();
                if (it->first != jt->first || it->second != jt->second)
                    return false;
                ++it;
                ++jt;
            }
        };
        std::vector<SparseVec<K>> dcol(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                if (!is_zero(d(i, j)))
                    dcol[j].emplace_back(i, d(i, j));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const auto& ab = product_terms(a, b);
                bool composable = block[a].second == block[b].first;
                for (const auto& [t, c] : ab) {
                    if (is_zero(c))
                        continue;
                    if (!composable)
                        return "product " + names[a] + "*" + names[b] + " of non-composable blocks is nonzero";
                    if (degree[t] != degree[a] + degree[b])
                        return "product " + names[a] + "*" + names[b] + " is not homogeneous";
                }
                Sparse lhs, rhs;
                for (const auto& [t, c] : ab)
                    acc(lhs, dcol[t], c);
                for (const auto& [s, c] : dcol[a])
                    acc(rhs, product_terms(s, b), c);
                K sign = (degree[a] % 2 == 0) ? K(1) : K(-1);
                for (const auto& [s, c] : dcol[b]) {
                    K w = sign * c;
                    acc(rhs, product_terms(a, s), w);
                }
                if (!same(lhs, rhs))
                    return "Leibniz fails on " + names[a] + ", " + names[b];
            }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                if (block[a].second != block[b].first)
                    continue;
                for (std::size_t c = 0; c < n; ++c) {
                    if (block[b].second != block[c].first)
                        continue;
                    Sparse left, right;
                    for (const auto& [t, x] : product_terms(a, b))
                        acc(left, product_terms(t, c), x);
                    for (const auto& [t, x] : product_terms(b, c))
                        acc(right, product_terms(a, t), x);
                    if (!same(left, right))
                        return "associativity fails on " + names[a] + ", " + names[b] + ", " + names[c];
                }
            }
        auto u = unit();
        for (std::size_t a = 0; a < n; ++a) {
            auto ea = unit_vector<K>(n, a);
            if (multiply(u, ea) != ea || multiply(ea, u) != ea)
                return "unit fails on " + names[a];
        }
        for (std::size_t i = 0; i < idempotents.size(); ++i) {
            const auto& e = idempotents[i];
            if (!is_zero_vector(differential(e)))
                return "idempotent " + std::to_string(i) + " is not a cocycle";
            for (std::size_t t = 0; t < n; ++t)
                if (!is_zero(e[t]) && (degree[t] != 0 || block[t] != std::make_pair(int(i), int(i))))
                    return "idempotent " + std::to_string(i) + " is not in its degree-0 block";
            for (std::size_t j = 0; j < idempotents.size(); ++j) {
                auto p = multiply(e, idempotents[j]);
                if (i == j ? p != e : !is_zero_vector(p))
                    return "idempotents are not orthogonal";
            }
        }
        for (std::size_t a = 0; a < n; ++a) {
            auto [l, r] = block[a];
            auto ea = unit_vector<K>(n, a);
            if (l < 0 || r < 0 || static_cast<std::size_t>(l) >= idempotents.size() ||
                static_cast<std::size_t>(r) >= idempotents.size() || multiply(idempotents[l], ea) != ea ||
                multiply(ea, idempotents[r]) != ea)
                return "basis element " + names[a] + " is not in its block";
        }
        return "";
    }

    void validate() const {
        auto msg = check_axioms();
        if (!msg.empty())
            throw InvalidArgument("dg algebra: " + msg);
    }
};

/// Builder accumulating dense products.
template <class K>
DGAlgebra<K> make_dg_algebra(std::vector<int> degree, std::vector<std::string> names,
                             std::vector<std::pair<int, int>> block, std::size_t num_objects) {
    DGAlgebra<K> E;
    std::size_t n = degree.size();
    E.degree = std::move(degree);
    E.names = std::move(names);
    E.block = std::move(block);
    E.d = Matrix<K>(n, n);
    E.prod.assign(n * n, {});
    E.idempotents.assign(num_objects, Vec<K>(n, K(0)));
    for (std::size_t i = 0; i < num_objects; ++i)
        E.objects.push_back(std::to_string(i + 1));
    return E;
}

template <class K>
void set_product(DGAlgebra<K>& E, std::size_t a, std::size_t b, const Vec<K>& v) {
    auto& p = E.prod[a * E.dim() + b];
    p.clear();
    for (std::size_t t = 0; t < v.size(); ++t)
        if (!is_zero(v[t]))
            p.emplace_back(t, v[t]);
}

/// A path algebra as a dg algebra concentrated in degree 0.
template <class K>
DGAlgebra<K> from_path_algebra(const PathAlgebra<K>& A) {
    std::vector<std::pair<int, int>> blocks;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < A.dim(); ++i) {
        blocks.emplace_back(A.basis_path(i).target, A.basis_path(i).source);
        names.push_back(A.basis_name(i));
    }
    auto E = make_dg_algebra<K>(std::vector<int>(A.dim(), 0), names, blocks,
                                static_cast<std::size_t>(A.num_vertices()));
    for (std::size_t a = 0; a < A.dim(); ++a)
        for (std::size_t b = 0; b < A.dim(); ++b)
            E.prod[a * A.dim() + b] = A.product_terms(a, b);
    for (int v = 0; v < A.num_vertices(); ++v) {
        E.idempotents[static_cast<std::size_t>(v)] = A.idempotent_element(v);
        E.objects[static_cast<std::size_t>(v)] = A.quiver().vertices[static_cast<std::size_t>(v)];
    }
    E.provenance = "path algebra";
    return E;
}

/// Position of a Hom-complex cell inside dg_end's basis.
struct DgEndCell {
    std::size_t source;
    std::size_t target;
    int n;
    HomCell cell;
};

/// REnd(C_1 + ... + C_m): basis = cells of every Hom(C_i, C_j), product =
/// composition, idempotents = identities.
template <class K>
DGAlgebra<K> dg_end(const std::vector<ProjComplex<K>>& C, std::vector<DgEndCell>* layout = nullptr) {
    if (C.empty())
        throw InvalidArgument("dg_end of an empty collection");
    for (const auto& X : C)
        if (!X.complete)
            throw TruncationUnsound("dg_end needs complete complexes; " + X.label + " is truncated");
    const auto& A = *C.front().algebra;
    const std::size_t m = C.size();
    std::vector<std::vector<std::unique_ptr<HomComplex<K>>>> H(m);
    std::vector<DgEndCell> cells;
    std::map<std::tuple<std::size_t, std::size_t, int>, std::size_t> offset;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            H[i].push_back(std::make_unique<HomComplex<K>>(C[i], C[j]));
    std::vector<int> degree;
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> blocks;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const auto& Hij = *H[i][j];
            for (int n = Hij.min_degree(); n <= Hij.max_degree(); ++n) {
                offset[{i, j, n}] = cells.size();
                const auto& cs = Hij.cells(n);
                for (std::size_t t = 0; t < cs.size(); ++t) {
                    cells.push_back({i, j, n, cs[t]});
                    degree.push_back(n);
                    blocks.emplace_back(static_cast<int>(j), static_cast<int>(i));
                    names.push_back("f" + std::to_string(i + 1) + std::to_string(j + 1) + "_" + std::to_string(n) +
                                    "." + std::to_string(t));
                }
            }
        }
    auto E = make_dg_algebra<K>(degree, names, blocks, m);
    for (std::size_t i = 0; i < m; ++i)
        E.objects[i] = C[i].label.empty() ? std::to_string(i + 1) : C[i].label;
    const std::size_t N = E.dim();
    // differential
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const auto& Hij = *H[i][j];
            for (int n = Hij.min_degree(); n < Hij.max_degree(); ++n) {
                if (Hij.dim(n) == 0 || Hij.dim(n + 1) == 0)
                    continue;
                auto D = Hij.differential(n);
                std::size_t c0 = offset[{i, j, n}], r0 = offset[{i, j, n + 1}];
                for (std::size_t r = 0; r < D.rows(); ++r)
                    for (std::size_t c = 0; c < D.cols(); ++c)
                        E.d(r0 + r, c0 + c) = D(r, c);
            }
        }
    // products g * f = g o f with f : C_i -> C_j, g : C_j -> C_k
    std::map<std::tuple<std::size_t, std::size_t, int, int, std::size_t, std::size_t, std::size_t>, std::size_t> where;
    for (std::size_t t = 0; t < N; ++t) {
        const auto& c = cells[t];
        where[{c.source, c.target, c.n, c.cell.k, c.cell.r, c.cell.c, c.cell.b}] = t;
    }
    for (std::size_t g = 0; g < N; ++g)
        for (std::size_t f = 0; f < N; ++f) {
            const auto& cg = cells[g];
            const auto& cf = cells[f];
            if (cg.source != cf.target || cg.cell.k != cf.cell.k + cf.n || cg.cell.c != cf.cell.r)
                continue;
            auto& p = E.prod[g * N + f];
            for (const auto& [b, s] : A.product_terms(cg.cell.b, cf.cell.b)) {
                auto it = where.find({cf.source, cg.target, cg.n + cf.n, cf.cell.k, cg.cell.r, cf.cell.c, b});
                if (it == where.end())
                    throw InvalidArgument("dg_end: composition left the Hom complex");
                p.emplace_back(it->second, s);
            }
        }
    for (std::size_t i = 0; i < m; ++i) {
        const auto& X = C[i];
        for (int k = X.lo; k <= X.hi(); ++k)
            for (std::size_t r = 0; r < X.term(k).size(); ++r) {
                std::size_t b = A.idempotent(X.term(k)[r]);
                E.idempotents[i][where.at({i, i, 0, k, r, r, b})] = K(1);
            }
    }
    E.provenance = "REnd";
    if (layout)
        *layout = cells;
    return E;
}

template <class K>
DGAlgebra<K> dg_end(const Collection<K>& C) {
    auto E = dg_end(C.members);
    E.provenance = "REnd(" + C.name + ")";
    return E;
}

/// H^*(E) with representatives chosen blockwise and degreewise, the identity
/// classes seeded first.
template <class K>
struct Cohomology {
    DGAlgebra<K> algebra;
    std::vector<Vec<K>> reps; // E-coordinates of each class representative
    struct Piece {
        int left, right, deg;
        std::vector<std::size_t> idx;   // E basis indices
        std::size_t first = 0;          // first H index
        std::shared_ptr<Subquotient<K>> sq;
        std::vector<Vec<K>> boundaries; // restricted to idx
    };
    std::vector<Piece> pieces;

    /// H-coordinates of an E-cocycle; nullopt if not a cocycle.
    std::optional<Vec<K>> class_of(const Vec<K>& z) const {
        Vec<K> out(algebra.dim(), K(0));
        std::vector<bool> covered(z.size(), false);
        for (const auto& p : pieces) {
            Vec<K> loc(p.idx.size());
            for (std::size_t t = 0; t < p.idx.size(); ++t) {
                loc[t] = z[p.idx[t]];
                covered[p.idx[t]] = true;
            }
            if (is_zero_vector(loc))
                continue;
            auto c = p.sq->class_of(loc);
            if (!c)
                return std::nullopt;
            for (std::size_t t = 0; t < c->size(); ++t)
                out[p.first + t] = (*c)[t];
        }
        for (std::size_t t = 0; t < z.size(); ++t)
            if (!covered[t] && !is_zero(z[t]))
                return std::nullopt;
        return out;
    }

    /// The section H -> E given by the representatives (not necessarily
    /// multiplicative).
    Matrix<K> section() const { return Matrix<K>::from_columns(reps.empty() ? 0 : reps.front().size(), reps); }
};

namespace detail {

template <class K>
std::vector<std::tuple<int, int, int>> block_keys(const DGAlgebra<K>& E) {
    std::set<std::tuple<int, int, int>> s;
    for (std::size_t i = 0; i < E.dim(); ++i)
        s.insert({E.block[i].second, E.block[i].first, E.degree[i]}); // (right, left, deg)
    return std::vector<std::tuple<int, int, int>>(s.begin(), s.end());
}

} // namespace detail

template <class K>
Cohomology<K> cohomology_algebra(const DGAlgebra<K>& E) {
    Cohomology<K> C;
    std::vector<int> degree;
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> blocks;
    for (auto [right, left, deg] : detail::block_keys(E)) {
        typename Cohomology<K>::Piece p;
        p.left = left;
        p.right = right;
        p.deg = deg;
        p.idx = E.indices(left, right, deg);
        auto up = E.indices(left, right, deg + 1);
        auto down = E.indices(left, right, deg - 1);
        Matrix<K> D(up.size(), p.idx.size());
        for (std::size_t r = 0; r < up.size(); ++r)
            for (std::size_t c = 0; c < p.idx.size(); ++c)
                D(r, c) = E.d(up[r], p.idx[c]);
        auto Z = up.empty() ? std::vector<Vec<K>>{} : nullspace(D);
        if (up.empty())
            for (std::size_t c = 0; c < p.idx.size(); ++c)
                Z.push_back(unit_vector<K>(p.idx.size(), c));
        for (std::size_t c = 0; c < down.size(); ++c) {
            Vec<K> b(p.idx.size());
            for (std::size_t r = 0; r < p.idx.size(); ++r)
                b[r] = E.d(p.idx[r], down[c]);
            p.boundaries.push_back(b);
        }
        std::vector<Vec<K>> seeds;
        if (left == right && deg == 0 && static_cast<std::size_t>(left) < E.idempotents.size()) {
            Vec<K> s(p.idx.size());
            for (std::size_t r = 0; r < p.idx.size(); ++r)
                s[r] = E.idempotents[static_cast<std::size_t>(left)][p.idx[r]];
            seeds.push_back(s);
        }
        p.sq = std::make_shared<Subquotient<K>>(p.idx.size(), Z, p.boundaries, seeds);
        p.first = degree.size();
        for (const auto& rep : p.sq->representatives()) {
            Vec<K> full = E.zero();
            std::size_t lead = p.idx.size();
            for (std::size_t r = 0; r < p.idx.size(); ++r) {
                full[p.idx[r]] = rep[r];
                if (lead == p.idx.size() && !is_zero(rep[r]))
                    lead = r;
            }
            bool single = std::count_if(rep.begin(), rep.end(), [](const K& x) { return !is_zero(x); }) == 1 &&
                          rep[lead] == K(1);
            names.push_back("[" + E.names[p.idx[lead]] + (single ? "" : "+..") + "]");
            C.reps.push_back(full);
            degree.push_back(deg);
            blocks.emplace_back(left, right);
        }
        C.pieces.push_back(p);
    }
    C.algebra = make_dg_algebra<K>(degree, names, blocks, E.num_objects());
    C.algebra.objects = E.objects;
    C.algebra.provenance = "H*(" + E.provenance + ")";
    const std::size_t n = C.algebra.dim();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (C.algebra.block[a].second != C.algebra.block[b].first)
                continue;
            auto z = E.multiply(C.reps[a], C.reps[b]);
            if (is_zero_vector(z))
                continue;
            auto c = C.class_of(z);
            if (!c)
                throw InvalidArgument("cohomology: product of cocycles is not a cocycle");
            set_product(C.algebra, a, b, *c);
        }
    for (std::size_t i = 0; i < E.num_objects(); ++i) {
        auto c = C.class_of(E.idempotents[i]);
        if (!c)
            throw IdempotentLiftMissing("idempotent " + std::to_string(i + 1) + " is not a cocycle");
        C.algebra.idempotents[i] = *c;
    }
    return C;
}

/// dim H^n(E) per degree.
template <class K>
std::map<int, std::size_t> cohomology_dims(const DGAlgebra<K>& E) {
    std::map<int, std::size_t> out;
    for (int n : E.degrees()) {
        auto I = E.indices(n), up = E.indices(n + 1), down = E.indices(n - 1);
        Matrix<K> D(up.size(), I.size()), Dm(I.size(), down.size());
        for (std::size_t r = 0; r < up.size(); ++r)
            for (std::size_t c = 0; c < I.size(); ++c)
                D(r, c) = E.d(up[r], I[c]);
        for (std::size_t r = 0; r < I.size(); ++r)
            for (std::size_t c = 0; c < down.size(); ++c)
                Dm(r, c) = E.d(I[r], down[c]);
        std::size_t h = I.size() - rank(D) - rank(Dm);
        if (h > 0)
            out[n] = h;
    }
    return out;
}

/// Structured diagnostic of a candidate dg algebra map.
struct QuasiIsoReport {
    bool ok = true;
    std::vector<std::string> problems;
    void fail(std::string s) {
        ok = false;
        problems.push_back(std::move(s));
    }
};

/// f : E -> F given as a (dim F) x (dim E) matrix.
template <class K>
QuasiIsoReport verify_dg_quasi_iso(const Matrix<K>& f, const DGAlgebra<K>& E, const DGAlgebra<K>& F,
                                   bool check_multiplicative = true) {
    QuasiIsoReport rep;
    if (f.rows() != F.dim() || f.cols() != E.dim()) {
        rep.fail("shape mismatch");
        return rep;
    }
    for (std::size_t j = 0; j < E.dim(); ++j)
        for (std::size_t i = 0; i < F.dim(); ++i)
            if (!is_zero(f(i, j)) && F.degree[i] != E.degree[j]) {
                rep.fail("not of degree 0 on " + E.names[j]);
                return rep;
            }
    if (!(F.d * f == f * E.d))
        rep.fail("does not commute with the differentials");
    if (f.apply(E.unit()) != F.unit())
        rep.fail("not unital");
    if (check_multiplicative)
        for (std::size_t a = 0; a < E.dim() && rep.ok; ++a)
            for (std::size_t b = 0; b < E.dim(); ++b) {
                auto ea = unit_vector<K>(E.dim(), a), eb = unit_vector<K>(E.dim(), b);
                if (f.apply(E.multiply(ea, eb)) != F.multiply(f.column(a), f.column(b))) {
                    rep.fail("not multiplicative on " + E.names[a] + ", " + E.names[b]);
                    break;
                }
            }
    auto dE = cohomology_dims(E), dF = cohomology_dims(F);
    std::set<int> degs;
    for (auto& [n, _] : dE)
        degs.insert(n);
    for (auto& [n, _] : dF)
        degs.insert(n);
    for (int n : degs) {
        auto I = E.indices(n), up = E.indices(n + 1);
        Matrix<K> D(up.size(), I.size());
        for (std::size_t r = 0; r < up.size(); ++r)
            for (std::size_t c = 0; c < I.size(); ++c)
                D(r, c) = E.d(up[r], I[c]);
        std::vector<Vec<K>> Z;
        if (up.empty())
            for (std::size_t c = 0; c < I.size(); ++c)
                Z.push_back(unit_vector<K>(I.size(), c));
        else
            Z = nullspace(D);
        SpanBasis<K> span(F.dim());
        std::size_t nb = 0;
        for (std::size_t c : F.indices(n - 1))
            if (span.add(F.d.column(c)))
                ++nb;
        std::size_t img = 0;
        for (const auto& z : Z) {
            Vec<K> full = E.zero();
            for (std::size_t t = 0; t < I.size(); ++t)
                full[I[t]] = z[t];
            if (span.add(f.apply(full)))
                ++img;
        }
        std::size_t hE = dE.count(n) ? dE[n] : 0, hF = dF.count(n) ? dF[n] : 0;
        if (img != hE || img != hF)
            rep.fail("H^" + std::to_string(n) + " is not mapped isomorphically (" + std::to_string(hE) + " -> " +
                     std::to_string(hF) + ", rank " + std::to_string(img) + ")");
    }
    return rep;
}

/// Searches for a multiplicative section H^*(E) -> E by correcting the chosen
/// representatives with boundaries; returns the section as a (dim E) x (dim H)
/// matrix.
template <class K>
std::optional<Matrix<K>> find_formality_witness(const DGAlgebra<K>& E, std::size_t budget = 20000) {
    auto C = cohomology_algebra(E);
    const auto& H = C.algebra;
    if (E.has_zero_differential() && H.dim() == E.dim()) {
        auto s = C.section();
        if (verify_dg_quasi_iso(s, H, E).ok)
            return s;
    }
    struct Param {
        std::size_t h;
        Vec<K> b;
    };
    std::vector<Param> params;
    for (const auto& p : C.pieces) {
        if (p.sq->dimension() == 0)
            continue;
        SpanBasis<K> bs(p.idx.size());
        std::vector<Vec<K>> bb;
        for (const auto& b : p.boundaries)
            if (bs.add(b))
                bb.push_back(b);
        for (std::size_t t = 0; t < p.sq->dimension(); ++t) {
            std::size_t h = p.first + t;
            bool is_idem = false;
            for (const auto& e : H.idempotents)
                if (e == unit_vector<K>(H.dim(), h))
                    is_idem = true;
            if (is_idem)
                continue;
            for (const auto& b : bb) {
                Vec<K> full = E.zero();
                for (std::size_t r = 0; r < p.idx.size(); ++r)
                    full[p.idx[r]] = b[r];
                params.push_back({h, full});
            }
        }
    }
    auto build = [&](const std::vector<int>& c) {
        auto s = C.section();
        for (std::size_t t = 0; t < params.size(); ++t) {
            if (c[t] == 0)
                continue;
            for (std::size_t r = 0; r < E.dim(); ++r) {
                K add = K(c[t]) * params[t].b[r];
                s(r, params[t].h) += add;
            }
        }
        return s;
    };
    std::size_t tried = 0;
    for (int R = 0; R <= 2 && tried < budget; ++R) {
        // odometer over {-R..R}^params
        std::vector<int> cur(params.size(), -R);
        while (tried < budget) {
            bool on_shell = R == 0 || std::any_of(cur.begin(), cur.end(), [&](int x) { return std::abs(x) == R; });
            if (on_shell) {
                ++tried;
                auto s = build(cur);
                if (verify_dg_quasi_iso(s, H, E).ok)
                    return s;
            }
            std::size_t t = 0;
            while (t < cur.size() && cur[t] == R) {
                cur[t] = -R;
                ++t;
            }
            if (t == cur.size())
                break;
            ++cur[t];
        }
        if (params.empty())
            break;
    }
    return std::nullopt;
}

template <class K>
struct Truncation {
    DGAlgebra<K> algebra;
    Matrix<K> inclusion; // (dim E) x (dim T)
};

/// t_{<=0} E -> E for E without positive cohomology.
template <class K>
Truncation<K> smart_truncation(const DGAlgebra<K>& E) {
    for (auto [n, h] : cohomology_dims(E))
        if (n > 0 && h > 0)
            throw PositiveCohomology("H^" + std::to_string(n) + " has dimension " + std::to_string(h));
    bool positive = std::any_of(E.degree.begin(), E.degree.end(), [](int g) { return g > 0; });
    bool d0 = true;
    for (std::size_t c : E.indices(0))
        if (!is_zero_vector(E.d.column(c)))
            d0 = false;
    if (!positive && d0)
        return {E, Matrix<K>::identity(E.dim())};
    std::vector<Vec<K>> cols;
    std::vector<int> degree;
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> blocks;
    for (std::size_t i = 0; i < E.dim(); ++i)
        if (E.degree[i] < 0) {
            cols.push_back(unit_vector<K>(E.dim(), i));
            degree.push_back(E.degree[i]);
            names.push_back(E.names[i]);
            blocks.push_back(E.block[i]);
        }
    for (auto [right, left, deg] : detail::block_keys(E)) {
        if (deg != 0)
            continue;
        auto I = E.indices(left, right, 0), up = E.indices(left, right, 1);
        Matrix<K> D(up.size(), I.size());
        for (std::size_t r = 0; r < up.size(); ++r)
            for (std::size_t c = 0; c < I.size(); ++c)
                D(r, c) = E.d(up[r], I[c]);
        std::vector<Vec<K>> Z;
        if (up.empty())
            for (std::size_t c = 0; c < I.size(); ++c)
                Z.push_back(unit_vector<K>(I.size(), c));
        else
            Z = nullspace(D);
        std::vector<Vec<K>> seeds;
        if (left == right && static_cast<std::size_t>(left) < E.num_objects()) {
            Vec<K> s(I.size());
            for (std::size_t r = 0; r < I.size(); ++r)
                s[r] = E.idempotents[static_cast<std::size_t>(left)][I[r]];
            seeds.push_back(s);
        }
        Subquotient<K> sq(I.size(), Z, {}, seeds);
        for (const auto& z : sq.representatives()) {
            Vec<K> full = E.zero();
            std::size_t lead = I.size();
            for (std::size_t r = 0; r < I.size(); ++r) {
                full[I[r]] = z[r];
                if (lead == I.size() && !is_zero(z[r]))
                    lead = r;
            }
            cols.push_back(full);
            degree.push_back(0);
            names.push_back("z(" + E.names[I[lead]] + ")");
            blocks.emplace_back(left, right);
        }
    }
    auto T = make_dg_algebra<K>(degree, names, blocks, E.num_objects());
    T.objects = E.objects;
    T.provenance = "t<=0 " + E.provenance;
    auto incl = Matrix<K>::from_columns(E.dim(), cols);
    SpanBasis<K> span(E.dim());
    for (const auto& c : cols)
        span.add(c);
    auto coords = [&](const Vec<K>& v) {
        auto c = span.coords(v);
        if (!c)
            throw InvalidArgument("smart truncation is not closed");
        return *c;
    };
    const std::size_t n = T.dim();
    for (std::size_t j = 0; j < n; ++j) {
        auto dv = coords(E.differential(cols[j]));
        for (std::size_t i = 0; i < n; ++i)
            T.d(i, j) = dv[i];
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (T.block[a].second == T.block[b].first)
                set_product(T, a, b, coords(E.multiply(cols[a], cols[b])));
    for (std::size_t i = 0; i < E.num_objects(); ++i)
        T.idempotents[i] = coords(E.idempotents[i]);
    return {T, incl};
}

/// Bounded search for an isomorphism of graded algebras with zero
/// differential, allowing a permutation of the objects.  Returns the matrix
/// H1 -> H2 on success.
template <class K>
std::optional<Matrix<K>> graded_algebra_isomorphism(const DGAlgebra<K>& H1, const DGAlgebra<K>& H2,
                                                    std::size_t budget = 20000) {
    if (H1.dim() != H2.dim() || H1.num_objects() != H2.num_objects())
        return std::nullopt;
    const std::size_t m = H1.num_objects();
    std::vector<int> sigma(m);
    for (std::size_t i = 0; i < m; ++i)
        sigma[i] = static_cast<int>(i);
    const std::vector<K> scalars{K(1), K(-1), K(2), K(-2)};
    std::size_t tried = 0;
    do {
        // blocks must match in dimension degreewise
        std::map<std::tuple<int, int, int>, std::vector<std::size_t>> b1, b2;
        for (std::size_t a = 0; a < H1.dim(); ++a)
            b1[{sigma[static_cast<std::size_t>(H1.block[a].first)], sigma[static_cast<std::size_t>(H1.block[a].second)],
                H1.degree[a]}]
                .push_back(a);
        for (std::size_t a = 0; a < H2.dim(); ++a)
            b2[{H2.block[a].first, H2.block[a].second, H2.degree[a]}].push_back(a);
        bool shapes = b1.size() == b2.size();
        if (shapes)
            for (const auto& [key, v] : b1)
                if (!b2.count(key) || b2[key].size() != v.size())
                    shapes = false;
        if (!shapes)
            continue;
        // candidates per block: scaled permutation matrices
        std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> blocks;
        for (const auto& [key, v] : b1)
            blocks.emplace_back(v, b2[key]);
        // per block: list of (permutation, scalars) options
        std::vector<std::vector<std::pair<std::vector<std::size_t>, std::vector<K>>>> options;
        for (const auto& [src, dst] : blocks) {
            std::vector<std::pair<std::vector<std::size_t>, std::vector<K>>> opts;
            std::vector<std::size_t> perm(src.size());
            for (std::size_t t = 0; t < perm.size(); ++t)
                perm[t] = t;
            bool idem_block = false;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t a : src)
                    if (!is_zero(H1.idempotents[i][a]))
                        idem_block = true;
            do {
                if (idem_block && src.size() == 1) {
                    opts.push_back({perm, {K(1)}});
                    continue;
                }
                std::vector<std::size_t> sidx(src.size(), 0);
                while (true) {
                    std::vector<K> sc;
                    for (auto s : sidx)
                        sc.push_back(scalars[s]);
                    opts.push_back({perm, sc});
                    std::size_t t = 0;
                    while (t < sidx.size() && sidx[t] + 1 == scalars.size()) {
                        sidx[t] = 0;
                        ++t;
                    }
                    if (t == sidx.size())
                        break;
                    ++sidx[t];
                    if (opts.size() > budget)
                        break;
                }
            } while (std::next_permutation(perm.begin(), perm.end()) && opts.size() <= budget);
            options.push_back(std::move(opts));
        }
        std::vector<std::size_t> pick(options.size(), 0);
        while (tried < budget) {
            ++tried;
            Matrix<K> f(H2.dim(), H1.dim());
            for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
                const auto& [src, dst] = blocks[bi];
                const auto& [perm, sc] = options[bi][pick[bi]];
                for (std::size_t t = 0; t < src.size(); ++t)
                    f(dst[perm[t]], src[t]) = sc[t];
            }
            bool ok = true;
            for (std::size_t i = 0; i < m && ok; ++i)
                if (f.apply(H1.idempotents[i]) != H2.idempotents[static_cast<std::size_t>(sigma[i])])
                    ok = false;
            if (ok && verify_dg_quasi_iso(f, H1, H2).ok)
                return f;
            std::size_t t = 0;
            while (t < pick.size() && pick[t] + 1 == options[t].size()) {
                pick[t] = 0;
                ++t;
            }
            if (t == pick.size())
                break;
            ++pick[t];
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()) && tried < budget);
    return std::nullopt;
}

} // namespace siltkit
