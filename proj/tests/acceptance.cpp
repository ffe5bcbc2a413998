#include "oracles.hpp"
#include "siltkit/siltkit.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace siltkit;
using Q = Rational;
using Dims = std::map<int, std::size_t>;

namespace {

std::string slurp(const std::string& name) {
    const char* dir = std::getenv("SILTKIT_DATA");
    std::string path = std::string(dir ? dir : "data") + "/" + name;
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string show(const Dims& d) {
    std::string s = "{";
    for (auto [k, v] : d)
        s += (s.size() > 1 ? ", " : "") + std::to_string(k) + ":" + std::to_string(v);
    return s + "}";
}

Dims nonzero(Dims m) {
    for (auto it = m.begin(); it != m.end();)
        it = it->second ? std::next(it) : m.erase(it);
    return m;
}

// rank of d restricted to degree n -> n+1, by the test-side eliminator
std::size_t rank_at(const DGAlgebra<Q>& E, int n) {
    oracle::Mat m;
    for (std::size_t r = 0; r < E.dim(); ++r) {
        if (E.degree[r] != n + 1)
            continue;
        std::vector<mpq_class> row;
        for (std::size_t c = 0; c < E.dim(); ++c)
            if (E.degree[c] == n)
                row.push_back(E.d(r, c));
        m.push_back(row);
    }
    return oracle::rank(m);
}

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok)
        throw Failure(what);
}

struct Pairs {
    AlgebraPtr<Q> A = parse_algebra<Q>(slurp("a2.alg"));
    Document<Q> std_ = parse_document<Q>(slurp("std.pair"), A);
    Document<Q> left2 = parse_document<Q>(slurp("left2.pair"), A);
    Document<Q> right2 = parse_document<Q>(slurp("right2.pair"), A);
    Document<Q> mismatch = parse_document<Q>(slurp("mismatch.pair"), A);

    const Collection<Q>& S(const Document<Q>& d) const { return *d.first(CollectionKind::Silting); }
    const Collection<Q>& T(const Document<Q>& d) const { return *d.first(CollectionKind::Smc); }
    std::vector<const Document<Q>*> reference() const { return {&std_, &left2, &right2}; }
};

int failures = 0;

void criterion(int n, const std::string& title, double budget_s, const std::function<std::string()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
        detail = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && secs >= budget_s) {
        ok = false;
        detail += " over budget";
    }
    if (!ok)
        ++failures;
    char t[64];
    std::snprintf(t, sizeof t, "%.2f s / %.0f s", secs, budget_s);
    std::cout << (ok ? "PASS " : "FAIL ") << n << "  " << title << "  [" << t << "]  " << detail << std::endl;
}

std::string c1(const Pairs& p) {
    auto E = dg_end(p.T(p.std_));
    require(E.check_axioms().empty(), "dg axioms: " + E.check_axioms());
    require(E.dim() == 7, "dim " + std::to_string(E.dim()));
    Dims deg = E.degree_dims();
    require(deg == Dims{{-1, 1}, {0, 4}, {1, 2}}, "degrees " + show(deg));
    require(rank_at(E, 0) == 1, "rank of d in degree 0 is " + std::to_string(rank_at(E, 0)));
    Dims h = nonzero(cohomology_dims(E));
    require(h == Dims{{0, 2}, {1, 1}}, "cohomology " + show(h));
    return "dim 7, degrees " + show(deg) + ", cohomology " + show(h);
}

std::string c2(const Pairs& p) {
    auto L = wt_pipeline(p.A, {{1, Side::Left}});
    auto R = wt_pipeline(p.A, {{1, Side::Right}});
    require(detail::same_collection(L.silting, p.S(p.left2), {}) == Tri::True, "left silting differs");
    require(detail::same_collection(L.smc, p.T(p.left2), {}) == Tri::True, "left smc differs");
    require(detail::same_collection(R.silting, p.S(p.right2), {}) == Tri::True, "right silting differs");
    require(detail::same_collection(R.smc, p.T(p.right2), {}) == Tri::True, "right smc differs");
    Dims a = dg_end(L.smc).degree_dims();
    Dims b = dg_end(R.silting).degree_dims();
    Dims c = dg_end(R.smc).degree_dims();
    require(a == Dims{{0, 2}, {1, 1}}, "left E! degrees " + show(a));
    require(b == Dims{{-1, 1}, {0, 2}}, "right E degrees " + show(b));
    require(c == Dims{{-2, 1}, {-1, 1}, {0, 3}, {1, 1}, {2, 1}}, "right E! degrees " + show(c));
    return "L: E! " + show(a) + "; R: E " + show(b) + ", E! " + show(c);
}

std::string c3(const Pairs& p) {
    for (const auto* d : p.reference()) {
        auto c = check_pattern(p.S(*d), p.T(*d));
        require(c.verdict == Verdict::Pass, p.S(*d).name + " does not pass");
    }
    const auto& S = p.mismatch.collections.at(0);
    const auto& T = p.mismatch.collections.at(1);
    try {
        check_pattern(S, T);
    } catch (const PatternFailed& e) {
        auto c = pattern_table(S, T);
        judge_pattern(c, S.size(), T.size());
        require(c.witness.has_value() && c.witness->dim > 0, "no concrete witness");
        return "3 reference pairs pass; mismatch fails: " + std::string(e.what());
    }
    throw Failure("mismatched pair passed");
}

std::string c4(const Pairs& p) {
    KoszulOptions o;
    o.window_lo = -5;
    o.window_hi = 5;
    for (const auto* d : p.reference()) {
        auto k = koszul_pair_check(p.S(*d), p.T(*d), o);
        require(k.report.verdict == Verdict::Pass, p.S(*d).name + ": " + to_string(k.report.verdict));
    }
    auto H = cohomology_algebra(dg_end(p.T(p.std_))).algebra;
    require(H.degree_dims() == Dims{{0, 2}, {1, 1}}, "graded arrow algebra " + show(H.degree_dims()));
    auto kd = koszul_dual(H, -5, 5);
    auto back = cohomology_algebra(kd.algebra);
    require(graded_algebra_isomorphism(back.algebra, from_path_algebra(*p.A)).has_value(),
            "dual of the graded arrow is not A");
    return "3 pairs both directions; dual of graded k(1->2) is A";
}

std::string c5(const std::string& suite) {
    if (suite.empty())
        throw Failure("no property suite binary given");
    int rc = std::system((suite + " --gtest_brief=1 > property_suite.log 2>&1").c_str());
    require(rc == 0, "property suite exited with " + std::to_string(rc) + ", see property_suite.log");
    return "A2, A3, A3 with relation, Kronecker";
}

std::string c6(const Pairs& p) {
    RunConfig cfg;
    std::string all;
    std::size_t n = 0;
    auto emit = [&](CertificateKind k, std::vector<Collection<Q>> cols) {
        auto c = emit_certificate(k, cols, cfg);
        auto r = replay_certificates<Q>(c.text, p.A);
        require(r.ok(), to_string(k) + " certificate for " + cols[0].name + " does not replay");
        all += c.text;
        ++n;
    };
    for (const auto* d : p.reference()) {
        emit(CertificateKind::Silting, {p.S(*d)});
        emit(CertificateKind::Smc, {p.T(*d)});
        emit(CertificateKind::Pattern, {p.S(*d), p.T(*d)});
        emit(CertificateKind::Koszul, {p.S(*d), p.T(*d)});
    }
    emit(CertificateKind::Pattern, p.mismatch.collections);
    auto r = replay_certificates<Q>(all, p.A);
    require(r.ok() && r.reproduced == n, "bundle replay reproduced " + std::to_string(r.reproduced) + "/" +
                                             std::to_string(n));
    return std::to_string(n) + " certificates reproduced";
}

} // namespace

int main(int argc, char** argv) {
    std::string suite = argc > 1 ? argv[1] : "";
    Pairs p;
    criterion(1, "dg_end of the standard SMC", 1, [&] { return c1(p); });
    criterion(2, "left/right mutation at vertex 2", 5, [&] { return c2(p); });
    criterion(3, "Hom pattern", 60, [&] { return c3(p); });
    criterion(4, "Koszul pairs in window -5..5", 30, [&] { return c4(p); });
    criterion(5, "property suite", 300, [&] { return c5(suite); });
    criterion(6, "certificate replay", 60, [&] { return c6(p); });
    std::cout << (failures ? "acceptance: " + std::to_string(failures) + " failing" : std::string("acceptance: all pass"))
              << std::endl;
    return failures ? 1 : 0;
}
