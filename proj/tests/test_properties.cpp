#include "fixtures.hpp"
#include "oracles.hpp"
#include "siltkit/correspond/pipeline.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace siltkit;
using Q = Rational;

namespace {

struct Case {
    std::string name;
    AlgebraPtr<Q> A;
    oracle::Monomial q;
};

std::vector<Case> cases() {
    return {{"A2", fixtures::a2(), {2, {{1, 0}}, {}, 2}},
            {"A3", fixtures::a3(false), {3, {{1, 0}, {2, 1}}, {}, 3}},
            {"A3rel", fixtures::a3(true), {3, {{1, 0}, {2, 1}}, {{0, 1}}, 3}},
            {"Kronecker", fixtures::kronecker(), {2, {{1, 0}, {1, 0}}, {}, 2}}};
}

// ---- dg axioms, recomputed from the raw structure constants

using Sparse = std::map<std::size_t, Q>;

Sparse d_of(const DGAlgebra<Q>& E, std::size_t j) {
    Sparse out;
    for (std::size_t i = 0; i < E.dim(); ++i)
        if (E.d(i, j) != 0)
            out[i] = E.d(i, j);
    return out;
}

void add_scaled(Sparse& acc, const Sparse& x, const Q& c) {
    for (const auto& [t, v] : x) {
        Q w = v * c;
        acc[t] += w;
    }
}

Sparse product(const DGAlgebra<Q>& E, std::size_t a, std::size_t b) {
    Sparse out;
    for (const auto& [t, c] : E.prod[a * E.dim() + b])
        out[t] += c;
    return out;
}

bool vanishes(const Sparse& x) {
    for (const auto& [t, v] : x)
        if (v != 0)
            return false;
    return true;
}

std::string dg_axiom_violation(const DGAlgebra<Q>& E) {
    const std::size_t n = E.dim();
    std::vector<Sparse> d(n);
    for (std::size_t j = 0; j < n; ++j)
        d[j] = d_of(E, j);
    for (std::size_t j = 0; j < n; ++j) {
        Sparse dd;
        for (const auto& [i, c] : d[j])
            add_scaled(dd, d[i], c);
        if (!vanishes(dd))
            return "d^2 != 0 on " + E.names[j];
        for (const auto& [i, c] : d[j])
            if (E.degree[i] != E.degree[j] + 1)
                return "d not of degree 1 on " + E.names[j];
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Sparse diff;
            for (const auto& [t, c] : E.prod[a * n + b]) {
                if (c != 0 && E.degree[t] != E.degree[a] + E.degree[b])
                    return "product not graded on " + E.names[a] + " * " + E.names[b];
                add_scaled(diff, d[t], c);
            }
            for (const auto& [s, c] : d[a])
                add_scaled(diff, product(E, s, b), -c);
            Q sign = E.degree[a] % 2 == 0 ? -1 : 1;
            for (const auto& [s, c] : d[b]) {
                Q w = sign * c;
                add_scaled(diff, product(E, a, s), w);
            }
            if (!vanishes(diff))
                return "Leibniz fails on " + E.names[a] + " * " + E.names[b];
        }
    return "";
}

// ---- random complexes

class Generator {
public:
    Generator(const AlgebraPtr<Q>& A, std::uint64_t seed) : A_(A), rng_(seed) {
        for (int v = 0; v < A->num_vertices(); ++v)
            for (int k = -1; k <= 1; ++k) {
                pool_.push_back(shift(stalk(A, v), k));
                pool_.push_back(shift(resolved_simple(A, v, 8), k));
            }
    }

    const std::vector<ProjComplex<Q>>& pool() const { return pool_; }

    ProjComplex<Q> pick() { return pool_[uniform(pool_.size())]; }

    ProjComplex<Q> complex() {
        auto X = pick();
        std::size_t rounds = uniform(3);
        for (std::size_t r = 0; r < rounds; ++r) {
            auto Y = pick();
            auto H = hom_space(X, Y, 0);
            if (H.dim() == 0 || X.total_summands() + Y.total_summands() > 8) {
                if (X.total_summands() + Y.total_summands() <= 8)
                    X = direct_sum(X, Y);
                continue;
            }
            auto b = H.basis();
            auto f = ChainMap<Q>::zero_map(X, Y, 0);
            for (const auto& g : b) {
                auto h = g;
                h *= Q(static_cast<long>(uniform(5)) - 2);
                f += h;
            }
            X = cone(f);
        }
        return X;
    }

    std::size_t uniform(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

private:
    AlgebraPtr<Q> A_;
    std::mt19937_64 rng_;
    std::vector<ProjComplex<Q>> pool_;
};

long oracle_euler(const oracle::Monomial& q, const ProjComplex<Q>& X, const ProjComplex<Q>& Y) {
    long s = 0;
    if (X.is_zero() || Y.is_zero())
        return 0;
    for (int k = X.lo; k <= X.hi(); ++k)
        for (int l = Y.lo; l <= Y.hi(); ++l)
            for (int u : X.term(k))
                for (int w : Y.term(l))
                    s += ((l - k) % 2 == 0 ? 1 : -1) * static_cast<long>(q.cartan(w, u));
    return s;
}

long alternating_hom_sum(const ProjComplex<Q>& X, const ProjComplex<Q>& Y) {
    auto [lo, hi] = hom_window(X, Y);
    long s = 0;
    for (int n = lo; n <= hi; ++n)
        s += (n % 2 == 0 ? 1 : -1) * static_cast<long>(hom_dimension(X, Y, n));
    return s;
}

} // namespace

TEST(Properties, DgAxiomsOnConstructedAlgebras) {
    for (const auto& c : cases()) {
        std::vector<DGAlgebra<Q>> algebras;
        algebras.push_back(from_path_algebra(*c.A));
        auto g = mutation_graph(c.A, -2, 2, 2);
        for (const auto& n : g.nodes) {
            algebras.push_back(dg_end(n.silting));
            algebras.push_back(dg_end(n.smc));
        }
        auto kd = koszul_dual(from_path_algebra(*c.A), -5, 5);
        algebras.push_back(kd.algebra);
        std::size_t n0 = algebras.size();
        for (std::size_t i = 0; i < n0; ++i)
            algebras.push_back(cohomology_algebra(algebras[i]).algebra);
        for (const auto& E : algebras)
            EXPECT_EQ(dg_axiom_violation(E), "") << c.name << " " << E.provenance;
        for (const auto& E : algebras)
            EXPECT_EQ(E.check_axioms(), "") << c.name << " " << E.provenance;
    }
}

TEST(Properties, AxiomOracleRejectsBrokenLeibniz) {
    auto E = dg_end(standard_smc(fixtures::a2()));
    ASSERT_EQ(dg_axiom_violation(E), "");
    for (std::size_t j = 0; j < E.dim(); ++j)
        for (std::size_t i = 0; i < E.dim(); ++i)
            if (E.d(i, j) != 0) {
                E.d(i, j) *= 2;
                EXPECT_NE(dg_axiom_violation(E), "");
                return;
            }
    FAIL() << "no nonzero differential entry";
}

TEST(Properties, EulerPairingOnRandomComplexes) {
    std::uint64_t seed = 20261015;
    for (const auto& c : cases()) {
        Generator gen(c.A, seed++);
        for (int t = 0; t < 100; ++t) {
            auto X = gen.complex(), Y = gen.complex();
            ASSERT_NO_THROW(X.validate());
            long expect = oracle_euler(c.q, X, Y);
            EXPECT_EQ(euler_pairing(X, Y), expect) << c.name << " pair " << t;
            EXPECT_EQ(alternating_hom_sum(X, Y), expect) << c.name << " pair " << t;
        }
    }
}

TEST(Properties, MinimizePreservesHomDimensions) {
    std::uint64_t seed = 7;
    for (const auto& c : cases()) {
        Generator gen(c.A, seed++);
        std::vector<ProjComplex<Q>> probes;
        for (int v = 0; v < c.A->num_vertices(); ++v) {
            probes.push_back(stalk(c.A, v));
            probes.push_back(resolved_simple(c.A, v, 8));
        }
        for (int t = 0; t < 15; ++t) {
            auto Z = gen.pick();
            auto X = direct_sum(gen.complex(), cone(ChainMap<Q>::identity(Z)));
            auto M = minimize(X);
            EXPECT_TRUE(M.is_minimal());
            EXPECT_LT(M.total_summands(), X.total_summands());
            for (const auto& P : probes) {
                auto [lo1, hi1] = hom_window(P, X);
                for (int n = lo1; n <= hi1; ++n)
                    EXPECT_EQ(hom_dimension(P, X, n), hom_dimension(P, M, n)) << c.name << " " << t;
                auto [lo2, hi2] = hom_window(X, P);
                for (int n = lo2; n <= hi2; ++n)
                    EXPECT_EQ(hom_dimension(X, P, n), hom_dimension(M, P, n)) << c.name << " " << t;
            }
        }
    }
}

TEST(Properties, MutationInvolutionOnDepthThreeGraph) {
    for (const auto& c : cases()) {
        auto g = mutation_graph(c.A, -2, 2, 3);
        EXPECT_FALSE(g.inconclusive) << c.name;
        std::size_t checked = 0;
        for (const auto& n : g.nodes) {
            EXPECT_EQ(n.pattern, Verdict::Pass) << c.name;
            for (std::size_t i = 0; i < n.silting.size(); ++i) {
                auto LR = silting_mutate(silting_mutate(n.silting, i, Side::Left), i, Side::Right);
                auto RL = silting_mutate(silting_mutate(n.silting, i, Side::Right), i, Side::Left);
                EXPECT_EQ(collections_isomorphic(LR, n.silting), Tri::True) << c.name << " " << n.silting.name;
                EXPECT_EQ(collections_isomorphic(RL, n.silting), Tri::True) << c.name << " " << n.silting.name;
                auto tLR = smc_mutate(smc_mutate(n.smc, i, Side::Left), i, Side::Right);
                auto tRL = smc_mutate(smc_mutate(n.smc, i, Side::Right), i, Side::Left);
                EXPECT_EQ(collections_isomorphic(tLR, n.smc), Tri::True) << c.name << " " << n.smc.name;
                EXPECT_EQ(collections_isomorphic(tRL, n.smc), Tri::True) << c.name << " " << n.smc.name;
                ++checked;
            }
        }
        EXPECT_GT(checked, 0u);
    }
}

TEST(Properties, ModuleHomMatchesRepresentationOracle) {
    for (const auto& c : cases()) {
        const int n = c.q.vertices;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                auto Pi = oracle::projective(c.q, i), Pj = oracle::projective(c.q, j);
                auto Si = oracle::simple(c.q, i), Sj = oracle::simple(c.q, j);
                auto pi = stalk(c.A, i), pj = stalk(c.A, j);
                auto si = resolved_simple(c.A, i, 8), sj = resolved_simple(c.A, j, 8);
                EXPECT_EQ(hom_space(pi, pj, 0).dim(), oracle::hom(c.q, Pi, Pj)) << c.name << " P" << i << " P" << j;
                EXPECT_EQ(hom_space(pi, sj, 0).dim(), oracle::hom(c.q, Pi, Sj)) << c.name << " P" << i << " S" << j;
                EXPECT_EQ(hom_space(si, pj, 0).dim(), oracle::hom(c.q, Si, Pj)) << c.name << " S" << i << " P" << j;
                EXPECT_EQ(hom_space(si, sj, 0).dim(), oracle::hom(c.q, Si, Sj)) << c.name << " S" << i << " S" << j;
            }
    }
}
