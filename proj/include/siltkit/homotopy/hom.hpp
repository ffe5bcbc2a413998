#pragma once

// Hom-complexes between complexes of projectives.
//
// Hom^n(X, Y) = prod_k Hom(X^k, Y^{k+n}) with d(f) = d_Y f - (-1)^n f d_X.
// A basis map is a single algebra basis element b in block (w, u) placed at
// (row r of Y^{k+n}, column c of X^k).

#include "siltkit/homotopy/complex.hpp"

#include <map>
#include <memory>
#include <optional>

namespace siltkit {

struct HomCell {
    int k;          // source degree
    std::size_t r;  // summand of Y^{k+n}
    std::size_t c;  // summand of X^k
    std::size_t b;  // algebra basis index
};

template <class K>
class HomComplex {
public:
    HomComplex(ProjComplex<K> X, ProjComplex<K> Y) : X_(std::move(X)), Y_(std::move(Y)) {
        if (X_.is_zero() || Y_.is_zero()) {
            lo_ = 0;
            hi_ = -1;
            return;
        }
        lo_ = Y_.lo - X_.hi();
        hi_ = Y_.hi() - X_.lo;
        const auto& A = *X_.algebra;
        for (int n = lo_; n <= hi_; ++n) {
            auto& cells = cells_[n];
            for (int k = X_.lo; k <= X_.hi(); ++k) {
                const auto& src = X_.term(k);
                const auto& dst = Y_.term(k + n);
                for (std::size_t r = 0; r < dst.size(); ++r)
                    for (std::size_t c = 0; c < src.size(); ++c)
                        for (std::size_t b : A.block(dst[r], src[c]))
                            cells.push_back(HomCell{k, r, c, b});
            }
        }
    }

    const ProjComplex<K>& source() const { return X_; }
    const ProjComplex<K>& target() const { return Y_; }
    int min_degree() const { return lo_; }
    int max_degree() const { return hi_; }

    const std::vector<HomCell>& cells(int n) const {
        static const std::vector<HomCell> none;
        auto it = cells_.find(n);
        return it == cells_.end() ? none : it->second;
    }
    std::size_t dim(int n) const { return cells(n).size(); }

    ChainMap<K> to_map(int n, const Vec<K>& x) const {
        auto f = ChainMap<K>::zero_map(X_, Y_, n);
        const auto& cs = cells(n);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (is_zero(x[i]))
                continue;
            const auto& cell = cs[i];
            f.comps[static_cast<std::size_t>(cell.k - X_.lo)](cell.r, cell.c)[cell.b] += x[i];
        }
        return f;
    }

    Vec<K> coords(const ChainMap<K>& f) const {
        const auto& cs = cells(f.degree);
        Vec<K> x(cs.size(), K(0));
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const auto& cell = cs[i];
            x[i] = f.comps[static_cast<std::size_t>(cell.k - X_.lo)](cell.r, cell.c)[cell.b];
        }
        return x;
    }

    /// Matrix of d : Hom^n -> Hom^{n+1}.
    Matrix<K> differential(int n) const {
        Matrix<K> D(dim(n + 1), dim(n));
        for (std::size_t i = 0; i < dim(n); ++i)
            D.set_column(i, coords(to_map(n, unit_vector<K>(dim(n), i)).boundary()));
        return D;
    }

private:
    ProjComplex<K> X_;
    ProjComplex<K> Y_;
    int lo_ = 0;
    int hi_ = -1;
    std::map<int, std::vector<HomCell>> cells_;
};

/// Throws TruncationUnsound when H^n(Hom(X, Y)) could change by extending a
/// truncated resolution.
template <class K>
void check_truncation(const ProjComplex<K>& X, const ProjComplex<K>& Y, int n) {
    if (X.is_zero() || Y.is_zero())
        return;
    if (!X.complete && !Y.complete)
        throw TruncationUnsound("Hom between two truncated complexes (" + X.label + ", " + Y.label + ")");
    if (!X.complete && !(n < Y.lo - X.trusted_from))
        throw TruncationUnsound("Hom(" + X.label + ", " + Y.label + "[" + std::to_string(n) +
                                "]) needs the resolution of " + X.label + " below degree " +
                                std::to_string(X.trusted_from));
    if (!Y.complete && !(n > Y.trusted_from - X.lo))
        throw TruncationUnsound("Hom(" + X.label + ", " + Y.label + "[" + std::to_string(n) +
                                "]) needs the resolution of " + Y.label + " below degree " +
                                std::to_string(Y.trusted_from));
}

/// H^n(Hom(X, Y)) = Hom_K(X, Y[n]) with chosen cycle representatives.
template <class K>
class HomSpace {
public:
    HomSpace(const HomComplex<K>& H, int n, const std::vector<ChainMap<K>>& seeds = {})
        : H_(&H), n_(n), sq_(make(H, n, seeds)) {}

    int degree() const { return n_; }
    std::size_t dim() const { return sq_.dimension(); }

    std::vector<ChainMap<K>> basis() const {
        std::vector<ChainMap<K>> out;
        for (const auto& z : sq_.representatives())
            out.push_back(H_->to_map(n_, z));
        return out;
    }
    const std::vector<Vec<K>>& basis_coords() const { return sq_.representatives(); }

    /// Class of a cycle in the basis; nullopt if f is not a cycle.
    std::optional<Vec<K>> class_of(const ChainMap<K>& f) const { return sq_.class_of(H_->coords(f)); }
    std::optional<Vec<K>> class_of_coords(const Vec<K>& z) const { return sq_.class_of(z); }

    bool is_null_homotopic(const ChainMap<K>& f) const {
        auto c = class_of(f);
        return c && is_zero_vector(*c);
    }

    const HomComplex<K>& complex() const { return *H_; }

private:
    static Subquotient<K> make(const HomComplex<K>& H, int n, const std::vector<ChainMap<K>>& seeds) {
        std::size_t N = H.dim(n);
        auto Z = nullspace(H.differential(n));
        std::vector<Vec<K>> B;
        if (H.dim(n - 1) > 0 && N > 0) {
            auto D = H.differential(n - 1);
            for (std::size_t j = 0; j < D.cols(); ++j)
                B.push_back(D.column(j));
        }
        std::vector<Vec<K>> s;
        for (const auto& f : seeds)
            s.push_back(H.coords(f));
        return Subquotient<K>(N, Z, B, s);
    }

    const HomComplex<K>* H_;
    int n_;
    Subquotient<K> sq_;
};

/// dim Hom_K(X, Y[n]).
template <class K>
std::size_t hom_dimension(const ProjComplex<K>& X, const ProjComplex<K>& Y, int n) {
    check_truncation(X, Y, n);
    HomComplex<K> H(X, Y);
    if (H.dim(n) == 0)
        return 0;
    return HomSpace<K>(H, n).dim();
}

/// Owning bundle of a Hom-complex and one of its cohomology spaces.
template <class K>
struct HomSpaceResult {
    std::unique_ptr<HomComplex<K>> complex;
    std::unique_ptr<HomSpace<K>> space;

    std::size_t dim() const { return space->dim(); }
    std::vector<ChainMap<K>> basis() const { return space->basis(); }
};

template <class K>
HomSpaceResult<K> hom_space(const ProjComplex<K>& X, const ProjComplex<K>& Y, int n,
                            const std::vector<ChainMap<K>>& seeds = {}) {
    check_truncation(X, Y, n);
    HomSpaceResult<K> r;
    r.complex = std::make_unique<HomComplex<K>>(X, Y);
    r.space = std::make_unique<HomSpace<K>>(*r.complex, n, seeds);
    return r;
}

/// Degree-0 endomorphisms up to homotopy, with the identity as first basis
/// element.
template <class K>
HomSpaceResult<K> endomorphisms(const ProjComplex<K>& X) {
    if (X.is_zero())
        return hom_space(X, X, 0);
    return hom_space(X, X, 0, {ChainMap<K>::identity(X)});
}

/// Cartan pairing sum_{k,l} (-1)^{l-k} <X^k, Y^l>, the Euler characteristic
/// of Hom(X, Y).
template <class K>
long euler_pairing(const ProjComplex<K>& X, const ProjComplex<K>& Y) {
    if (X.is_zero() || Y.is_zero())
        return 0;
    const auto& A = *X.algebra;
    long s = 0;
    for (int k = X.lo; k <= X.hi(); ++k)
        for (int l = Y.lo; l <= Y.hi(); ++l) {
            long sign = ((l - k) % 2 == 0) ? 1 : -1;
            for (int u : X.term(k))
                for (int w : Y.term(l))
                    s += sign * static_cast<long>(A.block_dim(w, u));
        }
    return s;
}

} // namespace siltkit
