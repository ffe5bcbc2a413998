#pragma once

// Lockstep mutation of silting/SMC pairs, the Koszul pair check and the
// silting mutation graph.

#include "siltkit/dg/dg_module.hpp"
#include "siltkit/homotopy/mutation.hpp"

namespace siltkit {

class StepFailed : public Error {
public:
    StepFailed(std::size_t step, CheckReport report, const std::string& what)
        : Error("StepFailed: step " + std::to_string(step) + ": " + what), step_(step), report_(std::move(report)) {}
    std::size_t step() const { return step_; }
    const CheckReport& report() const { return report_; }

private:
    std::size_t step_;
    CheckReport report_;
};

struct MutationStep {
    std::size_t index; // 0-based position in the collection
    Side side;
};

template <class K>
Collection<K> standard_silting(const AlgebraPtr<K>& A) {
    Collection<K> S{CollectionKind::Silting, "silting-std", {}};
    for (int v = 0; v < A->num_vertices(); ++v)
        S.members.push_back(stalk(A, v));
    return S;
}

template <class K>
Collection<K> standard_smc(const AlgebraPtr<K>& A, int bound = 16) {
    Collection<K> T{CollectionKind::Smc, "smc-std", {}};
    for (int v = 0; v < A->num_vertices(); ++v)
        T.members.push_back(resolved_simple(A, v, bound));
    return T;
}

template <class K>
struct PipelineResult {
    Collection<K> silting;
    Collection<K> smc;
    std::vector<CorrespondenceCertificate> certificates; // one for the start, one per step
};

namespace detail {

template <class K>
CheckReport pattern_report(const CorrespondenceCertificate& cert) {
    CheckReport rep;
    rep.check = "pattern";
    if (cert.verdict == Verdict::Pass)
        rep.add({"Hom pattern", Verdict::Pass, ""});
    else
        rep.fail("Hom pattern", *cert.witness);
    return rep;
}

template <class K>
CorrespondenceCertificate certify(const Collection<K>& S, const Collection<K>& T, std::size_t step) {
    auto cert = pattern_table(S, T);
    judge_pattern(cert, S.size(), T.size());
    if (cert.verdict != Verdict::Pass)
        throw StepFailed(step, pattern_report<K>(cert), "pattern check failed: " + cert.witness->what);
    return cert;
}

} // namespace detail

/// Applies the script to (S, T) in lockstep and certifies the Hom pattern
/// after every step.
template <class K>
PipelineResult<K> wt_pipeline(Collection<K> S, Collection<K> T, const std::vector<MutationStep>& script,
                              const CheckOptions& opt = {}) {
    PipelineResult<K> out;
    out.certificates.push_back(detail::certify(S, T, 0));
    for (std::size_t s = 0; s < script.size(); ++s) {
        const auto& st = script[s];
        if (st.index >= S.size())
            throw InvalidArgument("mutation index " + std::to_string(st.index + 1) + " out of range");
        S = silting_mutate(S, st.index, st.side);
        try {
            T = smc_mutate(T, st.index, st.side, opt);
        } catch (const MutationNotVerified& e) {
            CheckReport rep = check_smc(T, opt);
            rep.check = "smc mutation";
            rep.add({"mutation verified", Verdict::Fail, e.what()});
            throw StepFailed(s + 1, rep, e.what());
        }
        out.certificates.push_back(detail::certify(S, T, s + 1));
    }
    out.silting = std::move(S);
    out.smc = std::move(T);
    return out;
}

template <class K>
PipelineResult<K> wt_pipeline(const AlgebraPtr<K>& A, const std::vector<MutationStep>& script,
                              const CheckOptions& opt = {}) {
    return wt_pipeline(standard_silting(A), standard_smc(A, opt.resolution_bound), script, opt);
}

struct KoszulOptions {
    int window_lo = -5;
    int window_hi = 5;
    std::size_t formality_budget = 20000;
    std::size_t iso_budget = 20000;
};

/// Outcome of comparing a computed Koszul dual with the expected algebra.
template <class K>
struct KoszulComparison {
    Verdict verdict = Verdict::NotCertified;
    std::string detail;
    std::optional<DGAlgebra<K>> dual;
};

namespace detail {

template <class K>
std::string dims_string(const std::map<int, std::size_t>& m) {
    std::string s = "{";
    bool first = true;
    for (auto [n, d] : m) {
        if (!first)
            s += ", ";
        first = false;
        s += std::to_string(n) + ":" + std::to_string(d);
    }
    return s + "}";
}

/// Koszul dual of E, through a formality witness when E itself is not
/// augmentable.
template <class K>
std::optional<KoszulDual<K>> koszul_dual_via_formality(const DGAlgebra<K>& E, const KoszulOptions& o,
                                                       std::string& note) {
    try {
        return koszul_dual(E, o.window_lo, o.window_hi);
    } catch (const NotAugmentable&) {
        auto w = find_formality_witness(E, o.formality_budget);
        if (!w) {
            note = "no formality witness; Koszul dual not computed";
            return std::nullopt;
        }
        note = "via formality witness";
        return koszul_dual(cohomology_algebra(E).algebra, o.window_lo, o.window_hi);
    }
}

/// Quasi-isomorphism certificate between two dg algebras: equal cohomology
/// dimensions, formality witnesses on both sides and an isomorphism of the
/// cohomology algebras.
template <class K>
std::pair<Verdict, std::string> compare_dg(const DGAlgebra<K>& X, const DGAlgebra<K>& Y, const KoszulOptions& o) {
    auto hx = cohomology_dims(X), hy = cohomology_dims(Y);
    for (auto [n, d] : hx)
        if (n < o.window_lo || n > o.window_hi)
            hx.erase(n);
    for (auto [n, d] : hy)
        if (n < o.window_lo || n > o.window_hi)
            hy.erase(n);
    if (hx != hy)
        return {Verdict::Fail, "cohomology dimensions differ: " + dims_string<K>(hx) + " vs " + dims_string<K>(hy)};
    auto wx = find_formality_witness(X, o.formality_budget);
    auto wy = find_formality_witness(Y, o.formality_budget);
    if (!wx || !wy)
        return {Verdict::NotCertified, "cohomology " + dims_string<K>(hx) + " agrees; no formality witness"};
    auto iso = graded_algebra_isomorphism(cohomology_algebra(X).algebra, cohomology_algebra(Y).algebra, o.iso_budget);
    if (!iso)
        return {Verdict::NotCertified, "cohomology " + dims_string<K>(hx) + " agrees; no algebra isomorphism found"};
    return {Verdict::Pass, "quasi-isomorphic via formality witnesses, cohomology " + dims_string<K>(hx)};
}

} // namespace detail

template <class K>
struct KoszulPairReport {
    CheckReport report;
    std::optional<DGAlgebra<K>> E;
    std::optional<DGAlgebra<K>> E_shriek;
    std::optional<DGAlgebra<K>> dual_of_E;
    std::optional<DGAlgebra<K>> dual_of_E_shriek;
};

/// Koszul duality between REnd(S) and REnd(T) in both directions.
template <class K>
KoszulPairReport<K> koszul_pair_check(const Collection<K>& S, const Collection<K>& T, const KoszulOptions& o = {}) {
    KoszulPairReport<K> out;
    auto& rep = out.report;
    rep.check = "koszul";
    auto cert = pattern_table(S, T);
    judge_pattern(cert, S.size(), T.size());
    if (cert.verdict != Verdict::Pass) {
        rep.fail("Hom pattern", *cert.witness);
        return out;
    }
    rep.add({"Hom pattern", Verdict::Pass, ""});
    for (std::size_t i = 0; i < T.size(); ++i) {
        auto d = hom_dimension(T[i], T[i], 0);
        rep.add({"End(" + T[i].label + ") is 1-dimensional", d == 1 ? Verdict::Pass : Verdict::NotCertified,
                 "dimension " + std::to_string(d)});
    }
    out.E = dg_end(S);
    out.E_shriek = dg_end(T);
    auto check_algebra = [&](const std::string& name, const DGAlgebra<K>& X) {
        auto msg = X.check_axioms();
        if (msg.empty())
            rep.add({name + " satisfies the dg axioms", Verdict::Pass, ""});
        else
            rep.fail(name + " satisfies the dg axioms", Witness{0, 0, 0, X.dim(), msg});
    };
    check_algebra("E", *out.E);
    check_algebra("E!", *out.E_shriek);
    auto direction = [&](const std::string& name, const std::string& dual_name, const DGAlgebra<K>& src, const DGAlgebra<K>& expected,
                         std::optional<DGAlgebra<K>>& slot) {
        std::string note;
        std::optional<KoszulDual<K>> kd;
        try {
            kd = detail::koszul_dual_via_formality(src, o, note);
        } catch (const Error& e) {
            rep.add({name, Verdict::NotCertified, e.what()});
            return;
        }
        if (!kd) {
            rep.add({name, Verdict::NotCertified, note});
            return;
        }
        slot = kd->algebra;
        check_algebra(dual_name, kd->algebra);
        auto [v, why] = detail::compare_dg(kd->algebra, expected, o);
        if (!kd->complete && v == Verdict::Pass) {
            v = Verdict::NotCertified;
            why += "; resolutions truncated at the window";
        }
        if (!note.empty())
            why += " (" + note + ")";
        if (v == Verdict::Fail)
            rep.fail(name, Witness{0, 0, 0, kd->algebra.dim(), why});
        else
            rep.add({name, v, why});
    };
    direction("Koszul dual of E is E!", "Koszul dual of E", *out.E, *out.E_shriek, out.dual_of_E);
    direction("Koszul dual of E! is E", "Koszul dual of E!", *out.E_shriek, *out.E, out.dual_of_E_shriek);
    return out;
}

template <class K>
struct GraphNode {
    Collection<K> silting;
    Collection<K> smc;
    int depth = 0;
    Verdict pattern = Verdict::NotCertified;
};

struct GraphEdge {
    std::size_t from;
    std::size_t to;
    std::size_t index;
    Side side;
};

template <class K>
struct MutationGraph {
    std::vector<GraphNode<K>> nodes;
    std::vector<GraphEdge> edges;
    bool inconclusive = false;
};

namespace detail {

template <class K>
bool within(const Collection<K>& C, int lo, int hi) {
    for (const auto& X : C.members)
        if (!X.is_zero() && (X.lo < lo || X.hi() > hi))
            return false;
    return true;
}

/// Same members up to isomorphism and order.
template <class K>
Tri same_collection(const Collection<K>& a, const Collection<K>& b, const IsoOptions& opt) {
    if (a.size() != b.size())
        return Tri::False;
    std::vector<bool> used(b.size(), false);
    Tri all = Tri::True;
    for (const auto& X : a.members) {
        bool found = false;
        for (std::size_t j = 0; j < b.size() && !found; ++j) {
            if (used[j] || graded_shape(minimize(X)) != graded_shape(minimize(b[j])))
                continue;
            auto r = is_isomorphic(X, b[j], opt).verdict;
            if (r == Tri::True) {
                used[j] = true;
                found = true;
            } else if (r == Tri::Inconclusive) {
                all = Tri::Inconclusive;
            }
        }
        if (!found)
            return all == Tri::Inconclusive ? Tri::Inconclusive : Tri::False;
    }
    return all;
}

} // namespace detail

/// Breadth-first silting mutation graph from the standard pair, bounded by
/// depth and by a degree window for the members; the SMC partner is mutated
/// in lockstep and the pattern verified at every node.
template <class K>
MutationGraph<K> mutation_graph(const AlgebraPtr<K>& A, int window_lo, int window_hi, int depth,
                                const CheckOptions& opt = {}) {
    MutationGraph<K> g;
    GraphNode<K> root{standard_silting(A), standard_smc(A, opt.resolution_bound), 0, Verdict::NotCertified};
    root.pattern = detail::certify(root.silting, root.smc, 0).verdict;
    g.nodes.push_back(std::move(root));
    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
        if (g.nodes[q].depth >= depth)
            continue;
        for (std::size_t i = 0; i < g.nodes[q].silting.size(); ++i)
            for (Side side : {Side::Left, Side::Right}) {
                auto S = silting_mutate(g.nodes[q].silting, i, side);
                if (!detail::within(S, window_lo, window_hi))
                    continue;
                std::optional<std::size_t> hit;
                for (std::size_t t = 0; t < g.nodes.size() && !hit; ++t) {
                    auto r = detail::same_collection(S, g.nodes[t].silting, opt.iso);
                    if (r == Tri::True)
                        hit = t;
                    else if (r == Tri::Inconclusive)
                        g.inconclusive = true;
                }
                if (!hit) {
                    GraphNode<K> node;
                    node.silting = S;
                    node.smc = smc_mutate(g.nodes[q].smc, i, side, opt);
                    node.depth = g.nodes[q].depth + 1;
                    auto cert = pattern_table(node.silting, node.smc);
                    judge_pattern(cert, node.silting.size(), node.smc.size());
                    node.pattern = cert.verdict;
                    hit = g.nodes.size();
                    g.nodes.push_back(std::move(node));
                }
                g.edges.push_back({q, *hit, i, side});
            }
    }
    return g;
}

} // namespace siltkit
