#pragma once

// Finite-dimensional quotients kQ/I of path algebras.
//
// Paths are written target-to-source, so a path p with target t and source s
// satisfies e_t p e_s = p, and e_v A is spanned by the paths ending at v.
// Right modules are then representations in which an arrow s -> t acts as a
// linear map M_t -> M_s, and Hom_A(e_i A, e_j A) = e_j A e_i acts by left
// multiplication.

#include "siltkit/corealg/linalg.hpp"
#include "siltkit/corealg/quiver.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace siltkit {

template <class K>
struct Relation {
    std::vector<std::pair<K, Path>> terms;
};

template <class K>
class PathAlgebra;

template <class K>
using AlgebraPtr = std::shared_ptr<const PathAlgebra<K>>;

template <class K>
class PathAlgebra {
public:
    using Element = Vec<K>;

    /// Builds kQ/I.  The ideal is closed inside kQ/J^(bound+1) and every path
    /// of length `bound` must fall into it (admissibility certificate).
    static AlgebraPtr<K> build(Quiver quiver, std::vector<Relation<K>> relations, int nilpotency_bound) {
        quiver.validate();
        if (nilpotency_bound < 1)
            throw InvalidArgument("nilpotency bound must be positive");
        auto alg = std::shared_ptr<PathAlgebra>(new PathAlgebra());
        alg->quiver_ = std::move(quiver);
        alg->relations_ = std::move(relations);
        alg->bound_ = nilpotency_bound;
        alg->construct();
        return alg;
    }

    const Quiver& quiver() const { return quiver_; }
    const std::vector<Relation<K>>& relations() const { return relations_; }
    int nilpotency_bound() const { return bound_; }
    int num_vertices() const { return quiver_.num_vertices(); }

    std::size_t dim() const { return basis_.size(); }
    const std::vector<Path>& basis() const { return basis_; }
    const Path& basis_path(std::size_t i) const { return basis_[i]; }
    std::string basis_name(std::size_t i) const { return path_name(quiver_, basis_[i]); }

    /// Basis index of the trivial path at v.
    std::size_t idempotent(int v) const {
        quiver_.check_vertex(v);
        return idempotent_[static_cast<std::size_t>(v)];
    }

    /// Basis indices of e_target A e_source.
    const std::vector<std::size_t>& block(int target, int source) const {
        return blocks_[static_cast<std::size_t>(target)][static_cast<std::size_t>(source)];
    }

    /// dim e_target A e_source, i.e. dim Hom(e_source A, e_target A).
    std::size_t block_dim(int target, int source) const { return block(target, source).size(); }

    Element zero() const { return Element(dim(), K(0)); }
    Element basis_element(std::size_t i) const { return unit_vector<K>(dim(), i); }
    Element idempotent_element(int v) const { return basis_element(idempotent(v)); }
    Element one() const {
        Element u = zero();
        for (int v = 0; v < num_vertices(); ++v)
            u[idempotent(v)] = K(1);
        return u;
    }

    /// Structure constants of basis_i * basis_j as a sparse list.
    const std::vector<std::pair<std::size_t, K>>& product_terms(std::size_t i, std::size_t j) const {
        return mult_[i * dim() + j];
    }

    Element multiply(const Element& a, const Element& b) const {
        Element c = zero();
        for (std::size_t i = 0; i < dim(); ++i) {
            if (is_zero(a[i]))
                continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (is_zero(b[j]))
                    continue;
                K ab = a[i] * b[j];
                for (const auto& [k, c_ijk] : product_terms(i, j))
                    c[k] += ab * c_ijk;
            }
        }
        return c;
    }

    /// Residue of an arbitrary path in the chosen basis.
    Element normal_form(const Path& p) const {
        if (static_cast<int>(p.length()) > bound_)
            return zero();
        auto it = workspace_index_.find(p);
        if (it == workspace_index_.end())
            return zero();
        return workspace_nf_[it->second];
    }

    /// True when the element lies in the radical (no trivial-path component).
    bool in_radical(const Element& a) const {
        for (int v = 0; v < num_vertices(); ++v)
            if (!is_zero(a[idempotent(v)]))
                return false;
        return true;
    }

    /// True when a lies in e_target A e_source.
    bool in_block(const Element& a, int target, int source) const {
        for (std::size_t i = 0; i < dim(); ++i)
            if (!is_zero(a[i]) && (basis_[i].target != target || basis_[i].source != source))
                return false;
        return true;
    }

    /// Inverse of a unit u = c e_v + n of e_v A e_v (n radical).
    Element inverse_unit(const Element& u, int v) const {
        K c = u[idempotent(v)];
        if (is_zero(c))
            throw InvalidArgument("element is not a unit of e_v A e_v");
        // u = c (e_v - m) with m = -(u - c e_v)/c nilpotent; u^-1 = c^-1 sum m^k
        Element m = u;
        m[idempotent(v)] = K(0);
        K minv = K(-1) / c;
        for (auto& x : m)
            x *= minv;
        Element sum = idempotent_element(v);
        Element power = idempotent_element(v);
        for (int k = 0; k <= bound_; ++k) {
            power = multiply(power, m);
            if (is_zero_vector(power))
                break;
            for (std::size_t i = 0; i < dim(); ++i)
                sum[i] += power[i];
        }
        K cinv = K(1) / c;
        for (auto& x : sum)
            x *= cinv;
        return sum;
    }

    std::string element_to_string(const Element& a) const {
        std::string s;
        for (std::size_t i = 0; i < dim(); ++i) {
            if (is_zero(a[i]))
                continue;
            std::string c = to_string(a[i]);
            bool negative = !c.empty() && c[0] == '-';
            if (negative)
                c.erase(0, 1);
            if (s.empty())
                s += negative ? "-" : "";
            else
                s += negative ? " - " : " + ";
            if (c != "1")
                s += c + "*";
            s += basis_name(i);
        }
        return s.empty() ? "0" : s;
    }

    /// Checks associativity on all basis triples, unitality, and the
    /// idempotent identities; returns a description of the first failure.
    std::string check_invariants() const {
        std::size_t n = dim();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    auto l = multiply(multiply(basis_element(i), basis_element(j)), basis_element(k));
                    auto r = multiply(basis_element(i), multiply(basis_element(j), basis_element(k)));
                    if (l != r)
                        return "associativity fails on (" + basis_name(i) + ", " + basis_name(j) + ", " +
                               basis_name(k) + ")";
                }
        auto u = one();
        for (std::size_t i = 0; i < n; ++i)
            if (multiply(u, basis_element(i)) != basis_element(i) || multiply(basis_element(i), u) != basis_element(i))
                return "unit fails on " + basis_name(i);
        for (int v = 0; v < num_vertices(); ++v)
            for (int w = 0; w < num_vertices(); ++w) {
                auto p = multiply(idempotent_element(v), idempotent_element(w));
                if (p != (v == w ? idempotent_element(v) : zero()))
                    return "idempotent identity fails";
            }
        for (std::size_t i = 0; i < n; ++i)
            if (static_cast<int>(basis_[i].length()) >= bound_)
                return "basis path beyond the nilpotency bound";
        return {};
    }

private:
    PathAlgebra() = default;

    void construct();

    Quiver quiver_;
    std::vector<Relation<K>> relations_;
    int bound_ = 1;

    std::vector<Path> basis_;
    std::vector<std::size_t> idempotent_;
    std::vector<std::vector<std::vector<std::size_t>>> blocks_;
    std::vector<std::vector<std::pair<std::size_t, K>>> mult_;

    std::map<Path, std::size_t> workspace_index_;
    std::vector<Element> workspace_nf_;
};

template <class K>
void PathAlgebra<K>::construct() {
    const int nv = quiver_.num_vertices();

    // All paths of length <= bound, ordered degree-lexicographically.
    std::vector<Path> paths;
    std::vector<Path> layer;
    for (int v = 0; v < nv; ++v)
        layer.push_back(Path::trivial(v));
    for (int len = 0; len <= bound_ && !layer.empty(); ++len) {
        paths.insert(paths.end(), layer.begin(), layer.end());
        std::vector<Path> next;
        for (const auto& p : layer)
            for (int a = 0; a < quiver_.num_arrows(); ++a) {
                const auto& arr = quiver_.arrows[static_cast<std::size_t>(a)];
                if (arr.target != p.source)
                    continue;
                Path q = p;
                q.arrows.push_back(a);
                q.source = arr.source;
                next.push_back(std::move(q));
            }
        layer = std::move(next);
    }
    std::sort(paths.begin(), paths.end());
    const std::size_t np = paths.size();
    for (std::size_t i = 0; i < np; ++i)
        workspace_index_[paths[i]] = i;

    // Relations: parallel, every term of length >= 2.
    for (std::size_t r = 0; r < relations_.size(); ++r) {
        const auto& rel = relations_[r];
        if (rel.terms.empty())
            throw MalformedRelation("relation " + std::to_string(r + 1) + " is empty");
        const Path& first = rel.terms.front().second;
        for (const auto& [c, p] : rel.terms) {
            if (p.source != first.source || p.target != first.target)
                throw MalformedRelation("relation " + std::to_string(r + 1) + " mixes non-parallel paths");
            if (p.length() < 2)
                throw MalformedRelation("relation " + std::to_string(r + 1) + " has a term of length < 2");
            for (std::size_t k = 0; k + 1 < p.arrows.size(); ++k)
                if (quiver_.arrows[static_cast<std::size_t>(p.arrows[k])].source !=
                    quiver_.arrows[static_cast<std::size_t>(p.arrows[k + 1])].target)
                    throw MalformedRelation("relation " + std::to_string(r + 1) + " contains a non-path");
        }
    }

    // Ideal image in kQ/J^(bound+1): spans of u * r * w.  Columns are ordered
    // largest path first so row reduction pivots on the largest paths.
    auto column_of = [&](std::size_t path_idx) { return np - 1 - path_idx; };
    std::vector<Vec<K>> generators;
    for (const auto& rel : relations_) {
        const Path& shape = rel.terms.front().second;
        for (const auto& u : paths) {
            if (u.source != shape.target)
                continue;
            for (const auto& w : paths) {
                if (w.target != shape.source)
                    continue;
                Vec<K> row(np, K(0));
                bool any = false;
                for (const auto& [c, p] : rel.terms) {
                    Path full = concat(concat(u, p), w);
                    if (static_cast<int>(full.length()) > bound_)
                        continue;
                    row[column_of(workspace_index_.at(full))] += c;
                    any = true;
                }
                if (any && !is_zero_vector(row))
                    generators.push_back(std::move(row));
            }
        }
    }
    Matrix<K> ideal(generators.size(), np);
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = 0; j < np; ++j)
            ideal(i, j) = generators[i][j];
    auto pivots = rref(ideal);
    std::vector<long> pivot_row(np, -1); // by path index
    for (std::size_t r = 0; r < pivots.size(); ++r)
        pivot_row[np - 1 - pivots[r]] = static_cast<long>(r);

    for (std::size_t i = 0; i < np; ++i)
        if (static_cast<int>(paths[i].length()) == bound_ && pivot_row[i] < 0)
            throw NonAdmissible("path " + path_name(quiver_, paths[i]) + " of length " + std::to_string(bound_) +
                                " survives reduction");

    // Residue basis: non-pivot paths in increasing order.
    std::vector<long> basis_pos(np, -1);
    for (std::size_t i = 0; i < np; ++i)
        if (pivot_row[i] < 0) {
            basis_pos[i] = static_cast<long>(basis_.size());
            basis_.push_back(paths[i]);
        }
    const std::size_t n = basis_.size();

    workspace_nf_.assign(np, Vec<K>(n, K(0)));
    for (std::size_t i = 0; i < np; ++i) {
        if (basis_pos[i] >= 0) {
            workspace_nf_[i][static_cast<std::size_t>(basis_pos[i])] = K(1);
            continue;
        }
        auto r = static_cast<std::size_t>(pivot_row[i]);
        for (std::size_t j = 0; j < np; ++j) {
            if (j == i || basis_pos[j] < 0)
                continue;
            const K& x = ideal(r, column_of(j));
            if (!is_zero(x))
                workspace_nf_[i][static_cast<std::size_t>(basis_pos[j])] = -x;
        }
    }

    idempotent_.assign(static_cast<std::size_t>(nv), 0);
    blocks_.assign(static_cast<std::size_t>(nv), std::vector<std::vector<std::size_t>>(static_cast<std::size_t>(nv)));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = basis_[i];
        if (p.length() == 0)
            idempotent_[static_cast<std::size_t>(p.source)] = i;
        blocks_[static_cast<std::size_t>(p.target)][static_cast<std::size_t>(p.source)].push_back(i);
    }

    mult_.assign(n * n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (basis_[i].source != basis_[j].target)
                continue;
            auto nf = normal_form(concat(basis_[i], basis_[j]));
            for (std::size_t k = 0; k < n; ++k)
                if (!is_zero(nf[k]))
                    mult_[i * n + j].emplace_back(k, nf[k]);
        }
}

} // namespace siltkit
