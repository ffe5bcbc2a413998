#pragma once

// Finite checkers for silting collections, simple-minded collections, the
// Hom-pattern between them, derived projectives and t/w membership.

#include "siltkit/corealg/resolution.hpp"
#include "siltkit/homotopy/approximation.hpp"

#include <sstream>

namespace siltkit {

enum class Verdict { Pass, Fail, NotCertified };

inline std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass:
        return "pass";
    case Verdict::Fail:
        return "fail";
    default:
        return "not-certified";
    }
}

struct Witness {
    std::size_t i = 0;
    std::size_t j = 0;
    int m = 0;
    std::size_t dim = 0;
    std::string what;
};

struct CheckItem {
    std::string name;
    Verdict verdict = Verdict::Pass;
    std::string detail;
};

struct CheckReport {
    std::string check;
    Verdict verdict = Verdict::Pass;
    std::vector<CheckItem> items;
    std::optional<Witness> witness;
    int closure_depth = -1;

    void add(CheckItem item) {
        if (item.verdict == Verdict::Fail)
            verdict = Verdict::Fail;
        else if (item.verdict == Verdict::NotCertified && verdict == Verdict::Pass)
            verdict = Verdict::NotCertified;
        items.push_back(std::move(item));
    }
    void fail(const std::string& name, Witness w) {
        if (!witness)
            witness = w;
        add({name, Verdict::Fail, w.what});
    }
    void merge(const CheckReport& o) {
        for (const auto& it : o.items)
            add(it);
        if (!witness && o.witness)
            witness = o.witness;
        closure_depth = std::max(closure_depth, o.closure_depth);
    }
    bool passed() const { return verdict == Verdict::Pass; }
};

struct CheckOptions {
    IsoOptions iso;
    int closure_depth = 3;
    std::size_t closure_pool = 40;
    int resolution_bound = 16;
};

/// Shifts m for which Hom(X, Y[m]) can be nonzero.
template <class K>
std::pair<int, int> hom_window(const ProjComplex<K>& X, const ProjComplex<K>& Y) {
    if (X.is_zero() || Y.is_zero())
        return {0, -1};
    return {Y.lo - X.hi(), Y.hi() - X.lo};
}

namespace detail {

template <class K>
std::string shifted_name(const ProjComplex<K>& X, int m) {
    return shifted_label(X.label, m);
}

inline std::string index_name(const std::string& label, std::size_t i) {
    return label.empty() ? "#" + std::to_string(i + 1) : label;
}

} // namespace detail

/// Rows: classes in K_0 in the basis of indecomposable projectives.
template <class K>
std::vector<std::vector<mpz_class>> k0_projective_classes(const std::vector<ProjComplex<K>>& xs, int nv) {
    std::vector<std::vector<mpz_class>> rows;
    for (const auto& X : xs) {
        std::vector<mpz_class> row(static_cast<std::size_t>(nv), 0);
        for (int k = X.lo; k <= X.hi(); ++k)
            for (int v : X.term(k))
                row[static_cast<std::size_t>(v)] += (k % 2 == 0) ? 1 : -1;
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Rows: classes in K_0(mod A) in the basis of simples.
template <class K>
std::vector<std::vector<mpz_class>> k0_simple_classes(const std::vector<ProjComplex<K>>& xs, int nv) {
    std::vector<std::vector<mpz_class>> rows;
    for (const auto& X : xs) {
        const auto& A = *X.algebra;
        std::vector<mpz_class> row(static_cast<std::size_t>(nv), 0);
        for (int k = X.lo; k <= X.hi(); ++k)
            for (int u : X.term(k))
                for (int w = 0; w < nv; ++w)
                    row[static_cast<std::size_t>(w)] +=
                        ((k % 2 == 0) ? 1 : -1) * static_cast<long>(A.block_dim(u, w));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline bool unimodular(const std::vector<std::vector<mpz_class>>& rows, std::size_t n) {
    if (rows.size() != n)
        return false;
    auto d = integer_determinant(rows);
    return d == 1 || d == -1;
}

/// Whether T (indecomposable, split local End) is a direct summand of Z:
/// some g f with f : T -> Z, g : Z -> T is a unit of End(T).
template <class K>
bool is_summand(const ProjComplex<K>& T, const ProjComplex<K>& Z) {
    auto to = hom_space(T, Z, 0);
    if (to.dim() == 0)
        return false;
    auto from = hom_space(Z, T, 0);
    if (from.dim() == 0)
        return false;
    auto E = endomorphisms(T);
    auto R = end_algebra(T);
    SpanBasis<K> rad(R.dim);
    for (const auto& r : local_radical(R))
        rad.add(r);
    for (const auto& f : to.basis())
        for (const auto& g : from.basis())
            if (!rad.contains(*E.space->class_of(compose(g, f))))
                return true;
    return false;
}

/// Bounded search for the targets inside thick(pool): shifts, cones of Hom
/// basis maps and universal maps, summands.  Returns the depth at which all
/// targets were reached.
template <class K>
std::optional<int> closure_search(std::vector<ProjComplex<K>> pool, const std::vector<ProjComplex<K>>& targets,
                                  int max_depth, std::size_t pool_limit, const IsoOptions& iso) {
    for (auto& P : pool)
        P = minimize(P);
    std::vector<bool> reached(targets.size(), false);
    auto scan = [&](const ProjComplex<K>& Z) {
        for (std::size_t t = 0; t < targets.size(); ++t) {
            if (reached[t] || Z.is_zero())
                continue;
            const auto& T = targets[t];
            for (int s = Z.lo - T.hi(); s <= Z.hi() - T.lo && !reached[t]; ++s)
                if (is_summand(shift(T, -s), Z))
                    reached[t] = true;
        }
    };
    auto all = [&] { return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; }); };
    for (const auto& Z : pool)
        scan(Z);
    if (all())
        return 0;
    for (int depth = 1; depth <= max_depth; ++depth) {
        std::vector<ProjComplex<K>> fresh;
        auto consider = [&](ProjComplex<K> C) {
            C = minimize(C);
            if (C.is_zero() || pool.size() + fresh.size() >= pool_limit)
                return;
            auto shape = graded_shape(C);
            for (const auto* list : {&pool, &fresh})
                for (const auto& P : *list)
                    if (graded_shape(P) == shape && is_isomorphic(P, C, iso).verdict == Tri::True)
                        return;
            scan(C);
            fresh.push_back(std::move(C));
        };
        for (std::size_t a = 0; a < pool.size() && !all(); ++a)
            for (std::size_t b = 0; b < pool.size() && !all(); ++b) {
                auto [lo, hi] = hom_window(pool[a], pool[b]);
                for (int n = lo; n <= hi && !all(); ++n) {
                    auto H = hom_space(pool[a], pool[b], n);
                    auto basis = H.basis();
                    if (basis.empty())
                        continue;
                    auto Yn = shift(pool[b], n);
                    std::vector<ChainMap<K>> zero_maps;
                    for (const auto& f : basis) {
                        auto f0 = as_degree_zero(f);
                        zero_maps.push_back(f0);
                        consider(cone(f0));
                    }
                    if (basis.size() > 1)
                        consider(cone(into_sum(pool[a], std::vector<ProjComplex<K>>(basis.size(), Yn), zero_maps)));
                }
            }
        if (all())
            return depth;
        if (fresh.empty())
            return std::nullopt;
        pool.insert(pool.end(), fresh.begin(), fresh.end());
    }
    return std::nullopt;
}

template <class K>
CheckReport check_presilting(const Collection<K>& S, const CheckOptions& opt = {}) {
    CheckReport rep;
    rep.check = "presilting";
    const auto& M = S.members;
    for (std::size_t i = 0; i < M.size(); ++i) {
        bool ind = false;
        try {
            ind = is_indecomposable(M[i]);
        } catch (const IndecomposabilityUndetermined& e) {
            rep.add({"indecomposable " + detail::index_name(M[i].label, i), Verdict::NotCertified, e.what()});
            continue;
        }
        if (!ind)
            rep.fail("indecomposable", Witness{i, i, 0, end_algebra(M[i]).dim,
                                              detail::index_name(M[i].label, i) + " is decomposable"});
        else
            rep.add({"indecomposable " + detail::index_name(M[i].label, i), Verdict::Pass, ""});
    }
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = i + 1; j < M.size(); ++j) {
            auto r = is_isomorphic(M[i], M[j], opt.iso);
            if (r.verdict == Tri::True)
                rep.fail("pairwise non-isomorphic", Witness{i, j, 0, 0,
                                                            detail::index_name(M[i].label, i) + " ~ " +
                                                                detail::index_name(M[j].label, j)});
            else if (r.verdict == Tri::Inconclusive)
                rep.add({"pairwise non-isomorphic", Verdict::NotCertified, "isomorphism test inconclusive"});
        }
    bool vanish = true;
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < M.size(); ++j) {
            auto [lo, hi] = hom_window(M[i], M[j]);
            for (int m = std::max(lo, 1); m <= hi; ++m) {
                auto d = hom_dimension(M[i], M[j], m);
                if (d != 0) {
                    vanish = false;
                    rep.fail("Hom(P, P'[m]) = 0 for m > 0",
                             Witness{i, j, m, d,
                                     "Hom(" + detail::index_name(M[i].label, i) + ", " +
                                         detail::shifted_name(M[j], m) + ") has dimension " + std::to_string(d)});
                }
            }
        }
    if (vanish)
        rep.add({"Hom(P, P'[m]) = 0 for m > 0", Verdict::Pass, ""});
    return rep;
}

template <class K>
CheckReport check_silting(const Collection<K>& S, const CheckOptions& opt = {}) {
    CheckReport rep = check_presilting(S, opt);
    rep.check = "silting";
    const auto& A = S.algebra();
    int nv = A->num_vertices();
    auto rows = k0_projective_classes(S.members, nv);
    if (!unimodular(rows, static_cast<std::size_t>(nv))) {
        rep.fail("K0 unimodular", Witness{0, 0, 0, S.size(), "K0 class matrix is not unimodular"});
        return rep;
    }
    rep.add({"K0 unimodular", Verdict::Pass, ""});
    std::vector<ProjComplex<K>> targets;
    for (int v = 0; v < nv; ++v)
        targets.push_back(stalk(A, v));
    auto depth = closure_search(S.members, targets, opt.closure_depth, opt.closure_pool, opt.iso);
    if (depth) {
        rep.closure_depth = *depth;
        rep.add({"thick closure reaches every projective", Verdict::Pass, "depth " + std::to_string(*depth)});
    } else {
        rep.add({"thick closure reaches every projective", Verdict::NotCertified, "search budget exhausted"});
    }
    return rep;
}

template <class K>
CheckReport check_smc(const Collection<K>& T, const CheckOptions& opt = {}) {
    CheckReport rep;
    rep.check = "smc";
    const auto& M = T.members;
    bool ok_neg = true, ok_orth = true;
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < M.size(); ++j) {
            auto [lo, hi] = hom_window(M[i], M[j]);
            for (int m = lo; m <= std::min(hi, -1); ++m) {
                auto d = hom_dimension(M[i], M[j], m);
                if (d != 0) {
                    ok_neg = false;
                    rep.fail("Hom(L, L'[m]) = 0 for m < 0",
                             Witness{i, j, m, d,
                                     "Hom(" + detail::index_name(M[i].label, i) + ", " +
                                         detail::shifted_name(M[j], m) + ") has dimension " + std::to_string(d)});
                }
            }
            if (i == j)
                continue;
            auto d = hom_dimension(M[i], M[j], 0);
            if (d != 0) {
                ok_orth = false;
                rep.fail("Hom(L, L') = 0 for L != L'",
                         Witness{i, j, 0, d,
                                 "Hom(" + detail::index_name(M[i].label, i) + ", " +
                                     detail::index_name(M[j].label, j) + ") has dimension " + std::to_string(d)});
            }
        }
    if (ok_neg)
        rep.add({"Hom(L, L'[m]) = 0 for m < 0", Verdict::Pass, ""});
    if (ok_orth)
        rep.add({"Hom(L, L') = 0 for L != L'", Verdict::Pass, ""});
    for (std::size_t i = 0; i < M.size(); ++i) {
        auto d = hom_dimension(M[i], M[i], 0);
        std::string name = "End(" + detail::index_name(M[i].label, i) + ") is a division algebra";
        if (d == 1)
            rep.add({name, Verdict::Pass, "1-dimensional"});
        else if (d == 0)
            rep.fail(name, Witness{i, i, 0, 0, detail::index_name(M[i].label, i) + " is zero"});
        else if (characteristic<K>() == 0 && !end_algebra(M[i]).trace_radical().empty())
            rep.fail(name, Witness{i, i, 0, d, "End(" + detail::index_name(M[i].label, i) + ") has a nonzero radical"});
        else
            rep.add({name, Verdict::NotCertified, "End of dimension " + std::to_string(d)});
    }
    const auto& A = T.algebra();
    int nv = A->num_vertices();
    bool all_complete = std::all_of(M.begin(), M.end(), [](const auto& X) { return X.complete; });
    if (!all_complete) {
        rep.add({"K0 unimodular", Verdict::NotCertified, "truncated resolutions have no K0 class"});
        return rep;
    }
    auto rows = k0_simple_classes(M, nv);
    if (!unimodular(rows, static_cast<std::size_t>(nv))) {
        rep.fail("K0 unimodular", Witness{0, 0, 0, T.size(), "K0 class matrix is not unimodular"});
        return rep;
    }
    rep.add({"K0 unimodular", Verdict::Pass, ""});
    std::vector<ProjComplex<K>> targets;
    for (int v = 0; v < nv; ++v) {
        auto S = resolved_simple(A, v, opt.resolution_bound);
        if (!S.complete) {
            rep.add({"closure reaches every simple", Verdict::NotCertified, "simple of infinite projective dimension"});
            return rep;
        }
        targets.push_back(S);
    }
    auto depth = closure_search(M, targets, opt.closure_depth, opt.closure_pool, opt.iso);
    if (depth) {
        rep.closure_depth = *depth;
        rep.add({"closure reaches every simple", Verdict::Pass, "depth " + std::to_string(*depth)});
    } else {
        rep.add({"closure reaches every simple", Verdict::NotCertified, "search budget exhausted"});
    }
    return rep;
}

struct PatternEntry {
    std::size_t i;
    std::size_t j;
    int m;
    std::size_t dim;
};

/// Verified Hom-pattern between a silting collection and an SMC.
struct CorrespondenceCertificate {
    std::string silting_name;
    std::string smc_name;
    std::vector<std::size_t> phi; // phi[i] = j
    int window_lo = 0;
    int window_hi = -1;
    std::vector<PatternEntry> table;
    std::uint64_t characteristic = 0;
    Verdict verdict = Verdict::Fail;
    std::optional<Witness> witness;
};

/// dim Hom(P_i, L_j[m]) over the support window.
template <class K>
CorrespondenceCertificate pattern_table(const Collection<K>& S, const Collection<K>& T) {
    CorrespondenceCertificate cert;
    cert.silting_name = S.name;
    cert.smc_name = T.name;
    cert.characteristic = characteristic<K>();
    int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
    for (const auto& P : S.members)
        for (const auto& L : T.members) {
            if (P.is_zero() || L.is_zero())
                continue;
            lo = std::min(lo, L.lo - P.hi());
            hi = std::max(hi, L.hi() - P.lo);
        }
    if (lo > hi) {
        lo = 0;
        hi = 0;
    }
    cert.window_lo = lo;
    cert.window_hi = hi;
    for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = 0; j < T.size(); ++j)
            for (int m = lo; m <= hi; ++m) {
                auto [plo, phi] = hom_window(S[i], T[j]);
                std::size_t d = (m < plo || m > phi) ? 0 : hom_dimension(S[i], T[j], m);
                cert.table.push_back({i, j, m, d});
            }
    return cert;
}

/// Fills phi and the verdict of a computed table; the first violation becomes
/// the witness.
inline void judge_pattern(CorrespondenceCertificate& cert, std::size_t ns, std::size_t nt) {
    cert.phi.assign(ns, static_cast<std::size_t>(-1));
    cert.verdict = Verdict::Pass;
    cert.witness.reset();
    auto violate = [&](const PatternEntry& e, const std::string& why) {
        if (cert.witness)
            return;
        cert.verdict = Verdict::Fail;
        cert.witness = Witness{e.i, e.j, e.m, e.dim, why};
    };
    for (const auto& e : cert.table)
        if (e.dim != 0 && e.m != 0)
            violate(e, "nonzero Hom in degree " + std::to_string(e.m));
    std::vector<std::size_t> col_hits(nt, 0);
    for (const auto& e : cert.table) {
        if (e.dim == 0 || e.m != 0)
            continue;
        if (e.dim != 1) {
            violate(e, "degree-0 Hom of dimension " + std::to_string(e.dim));
        } else if (cert.phi[e.i] != static_cast<std::size_t>(-1)) {
            violate(e, "two partners for the same silting object");
        } else if (col_hits[e.j]++ > 0) {
            violate(e, "two silting objects map to the same SMC object");
        } else {
            cert.phi[e.i] = e.j;
        }
    }
    if (!cert.witness && ns != nt)
        violate(PatternEntry{0, 0, 0, 0}, "collections have different sizes");
    for (std::size_t i = 0; i < ns && !cert.witness; ++i)
        if (cert.phi[i] == static_cast<std::size_t>(-1))
            violate(PatternEntry{i, 0, 0, 0}, "no partner for silting object " + std::to_string(i + 1));
}

/// The Hom-pattern certificate; throws PatternFailed on the first violation.
template <class K>
CorrespondenceCertificate check_pattern(const Collection<K>& S, const Collection<K>& T) {
    auto cert = pattern_table(S, T);
    judge_pattern(cert, S.size(), T.size());
    if (cert.verdict != Verdict::Pass) {
        const auto& w = *cert.witness;
        throw PatternFailed(w.i, w.j, w.m, w.dim,
                            "(i=" + std::to_string(w.i + 1) + ", j=" + std::to_string(w.j + 1) +
                                ", m=" + std::to_string(w.m) + ", dim=" + std::to_string(w.dim) + "): " + w.what);
    }
    return cert;
}

/// Hom(P, L[m]) = 0 for every L in T and m != 0.
template <class K>
CheckReport derived_projective_test(const ProjComplex<K>& P, const Collection<K>& T) {
    CheckReport rep;
    rep.check = "derived projective";
    for (std::size_t j = 0; j < T.size(); ++j) {
        auto [lo, hi] = hom_window(P, T[j]);
        for (int m = lo; m <= hi; ++m) {
            if (m == 0)
                continue;
            auto d = hom_dimension(P, T[j], m);
            if (d != 0)
                rep.fail("Hom(P, L[m]) = 0 for m != 0",
                         Witness{0, j, m, d,
                                 "Hom(" + P.label + ", " + detail::shifted_name(T[j], m) + ") has dimension " +
                                     std::to_string(d)});
        }
    }
    if (rep.passed())
        rep.add({"Hom(P, L[m]) = 0 for m != 0", Verdict::Pass, ""});
    return rep;
}

/// pi : P -> L is a derived projective cover of the simple L.
template <class K>
CheckReport derived_projective_cover_check(const ChainMap<K>& pi, const Collection<K>& T) {
    if (pi.degree != 0)
        throw InvalidArgument("cover map must have degree 0");
    if (!pi.is_chain_map())
        throw ChainConditionViolated("cover map is not a chain map");
    const auto& P = pi.source;
    CheckReport rep = derived_projective_test(P, T);
    rep.check = "derived projective cover";
    bool ind = false;
    try {
        ind = is_indecomposable(P);
        rep.add({"P indecomposable", ind ? Verdict::Pass : Verdict::Fail, ind ? "" : P.label + " is decomposable"});
        if (!ind && !rep.witness)
            rep.witness = Witness{0, 0, 0, end_algebra(P).dim, P.label + " is decomposable"};
    } catch (const IndecomposabilityUndetermined& e) {
        rep.add({"P indecomposable", Verdict::NotCertified, e.what()});
    }
    auto H = hom_space(P, pi.target, 0);
    bool nonzero = !H.space->is_null_homotopic(pi);
    if (nonzero)
        rep.add({"pi nonzero in the homotopy category", Verdict::Pass, ""});
    else
        rep.fail("pi nonzero in the homotopy category", Witness{0, 0, 0, 0, "pi is null-homotopic"});
    return rep;
}

enum class Aisle { TLe0, TGe0, WLe0, WGe0 };

inline const char* to_string(Aisle a) {
    switch (a) {
    case Aisle::TLe0:
        return "t<=0";
    case Aisle::TGe0:
        return "t>=0";
    case Aisle::WLe0:
        return "w<=0";
    default:
        return "w>=0";
    }
}

/// Membership of X in a half of the t-structure generated by T or of the
/// weight structure of its silting partner.
template <class K>
bool membership(const ProjComplex<K>& X, const Collection<K>& T, Aisle which,
                const Collection<K>* silting_partner = nullptr) {
    if ((which == Aisle::WLe0 || which == Aisle::WGe0) && !silting_partner)
        throw NotInAmbient("weight-structure membership needs a certified silting partner");
    for (const auto& L : T.members) {
        if (which == Aisle::TGe0) {
            auto [lo, hi] = hom_window(L, X);
            for (int m = lo; m <= std::min(hi, -1); ++m)
                if (hom_dimension(L, X, m) != 0)
                    return false;
            continue;
        }
        auto [lo, hi] = hom_window(X, L);
        if (which == Aisle::WGe0) {
            for (int m = std::max(lo, 1); m <= hi; ++m)
                if (hom_dimension(X, L, m) != 0)
                    return false;
        } else {
            for (int m = lo; m <= std::min(hi, -1); ++m)
                if (hom_dimension(X, L, m) != 0)
                    return false;
        }
    }
    return true;
}

} // namespace siltkit
