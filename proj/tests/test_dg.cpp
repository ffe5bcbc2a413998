#include "fixtures.hpp"
#include "oracles.hpp"
#include "siltkit/correspond/pipeline.hpp"

#include <gtest/gtest.h>

using namespace siltkit;
using Q = Rational;
using Dims = std::map<int, std::size_t>;

namespace {

oracle::Monomial a2_oracle() { return {2, {{1, 0}}, {}, 2}; }

// dim Hom^n between the members, counted from paths only
Dims oracle_degrees(const oracle::Monomial& q, const std::vector<ProjComplex<Q>>& C) {
    Dims out;
    for (const auto& X : C)
        for (const auto& Y : C)
            for (int k = X.lo; k <= X.hi(); ++k)
                for (int l = Y.lo; l <= Y.hi(); ++l)
                    for (int u : X.term(k))
                        for (int w : Y.term(l))
                            if (auto c = q.cartan(w, u))
                                out[l - k] += c;
    return out;
}

Dims oracle_ranks(const DGAlgebra<Q>& E) {
    Dims out;
    for (auto [n, cnt] : E.degree_dims()) {
        (void)cnt;
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
        if (auto rk = oracle::rank(m))
            out[n] = rk;
    }
    return out;
}

Dims oracle_cohomology(const DGAlgebra<Q>& E) {
    auto rk = oracle_ranks(E);
    Dims out;
    for (auto [n, cnt] : E.degree_dims()) {
        std::size_t h = cnt - rk[n] - rk[n - 1];
        if (h)
            out[n] = h;
    }
    return out;
}

Dims nonzero(Dims m) {
    for (auto it = m.begin(); it != m.end();)
        it = it->second ? std::next(it) : m.erase(it);
    return m;
}

struct A2 {
    AlgebraPtr<Q> A = fixtures::a2();
    ProjComplex<Q> P1 = stalk(A, 0), P2 = stalk(A, 1);
    ProjComplex<Q> S1 = resolved_simple(A, 0, 5), S2 = resolved_simple(A, 1, 5);
    // P2 -> P1 with P1 in degree 0
    ProjComplex<Q> r1() const { return cone(hom_space(P2, P1, 0).basis().at(0)); }
};

} // namespace

TEST(DgAlgebra, PathAlgebraInDegreeZero) {
    A2 x;
    auto E = from_path_algebra(*x.A);
    EXPECT_EQ(E.dim(), 3u);
    EXPECT_EQ(E.degree_dims(), (Dims{{0, 3}}));
    EXPECT_EQ(E.check_axioms(), "");
    EXPECT_EQ(E.num_objects(), 2u);
}

TEST(DgAlgebra, StandardSmcEndomorphisms) {
    A2 x;
    auto E = dg_end(std::vector<ProjComplex<Q>>{x.S1, x.S2});
    EXPECT_EQ(E.check_axioms(), "");
    EXPECT_EQ(E.dim(), 7u);
    EXPECT_EQ(E.degree_dims(), (Dims{{-1, 1}, {0, 4}, {1, 2}}));
    EXPECT_EQ(E.degree_dims(), oracle_degrees(a2_oracle(), {x.S1, x.S2}));
    EXPECT_EQ(oracle_ranks(E), (Dims{{-1, 1}, {0, 1}}));
    EXPECT_EQ(nonzero(cohomology_dims(E)), (Dims{{0, 2}, {1, 1}}));
    EXPECT_EQ(nonzero(cohomology_dims(E)), oracle_cohomology(E));
}

TEST(DgAlgebra, StandardSiltingEndomorphismsIsA) {
    A2 x;
    auto E = dg_end(std::vector<ProjComplex<Q>>{x.P1, x.P2});
    EXPECT_EQ(E.degree_dims(), (Dims{{0, 3}}));
    auto H = cohomology_algebra(E);
    EXPECT_TRUE(graded_algebra_isomorphism(H.algebra, from_path_algebra(*x.A)).has_value());
}

TEST(DgAlgebra, MutatedPairsDegreeTables) {
    A2 x;
    auto EL_shriek = dg_end(std::vector<ProjComplex<Q>>{x.P1, shift(x.P2, 1)});
    EXPECT_EQ(EL_shriek.degree_dims(), (Dims{{0, 2}, {1, 1}}));
    auto ER = dg_end(std::vector<ProjComplex<Q>>{x.P1, shift(x.P2, -1)});
    EXPECT_EQ(ER.degree_dims(), (Dims{{-1, 1}, {0, 2}}));
    std::vector<ProjComplex<Q>> t_right{x.S1, shift(x.P2, -1)};
    auto ER_shriek = dg_end(t_right);
    EXPECT_EQ(ER_shriek.degree_dims(), (Dims{{-2, 1}, {-1, 1}, {0, 3}, {1, 1}, {2, 1}}));
    EXPECT_EQ(ER_shriek.degree_dims(), oracle_degrees(a2_oracle(), t_right));
    EXPECT_EQ(oracle_ranks(ER_shriek), (Dims{{-2, 1}, {0, 1}}));
    EXPECT_EQ(nonzero(cohomology_dims(ER_shriek)), (Dims{{0, 2}, {2, 1}}));
    for (const auto* E : {&EL_shriek, &ER, &ER_shriek})
        EXPECT_EQ(E->check_axioms(), "");
}

TEST(DgAlgebra, AxiomCheckerCatchesBrokenDifferential) {
    A2 x;
    auto E = dg_end(std::vector<ProjComplex<Q>>{x.S1, x.S2});
    std::size_t from = 0, to = 0;
    for (std::size_t i = 0; i < E.dim(); ++i) {
        if (E.degree[i] == -1)
            from = i;
        if (E.degree[i] == 0 && !E.idempotents.empty() && E.idempotents[0][i] != 0)
            to = i;
    }
    E.d(to, from) += 1;
    EXPECT_NE(E.check_axioms(), "");
    EXPECT_THROW(E.validate(), InvalidArgument);
}

TEST(DgAlgebra, TruncatedComplexIsRejected) {
    auto D = fixtures::dual_numbers();
    EXPECT_THROW(dg_end(std::vector<ProjComplex<Q>>{resolved_simple(D, 0, 3)}), TruncationUnsound);
    EXPECT_THROW(dg_end(std::vector<ProjComplex<Q>>{}), InvalidArgument);
}

TEST(Cohomology, AlgebraHasZeroDifferential) {
    A2 x;
    auto E = dg_end(std::vector<ProjComplex<Q>>{x.S1, x.S2});
    auto H = cohomology_algebra(E);
    EXPECT_EQ(H.algebra.dim(), 3u);
    EXPECT_EQ(H.algebra.check_axioms(), "");
    for (std::size_t i = 0; i < H.algebra.dim(); ++i)
        EXPECT_TRUE(is_zero_vector(H.algebra.d.column(i)));
    for (const auto& z : H.reps)
        EXPECT_TRUE(H.class_of(z).has_value());
}

TEST(Formality, WitnessIsQuasiIsomorphism) {
    A2 x;
    for (auto C : {std::vector<ProjComplex<Q>>{x.S1, x.S2}, std::vector<ProjComplex<Q>>{x.S1, shift(x.P2, -1)}}) {
        auto E = dg_end(C);
        auto H = cohomology_algebra(E);
        auto w = find_formality_witness(E);
        ASSERT_TRUE(w.has_value());
        auto rep = verify_dg_quasi_iso(*w, H.algebra, E);
        EXPECT_TRUE(rep.ok) << (rep.problems.empty() ? "" : rep.problems[0]);
    }
}

TEST(SmartTruncation, SingleSimple) {
    A2 x;
    auto E = dg_end(std::vector<ProjComplex<Q>>{x.S1});
    EXPECT_EQ(E.dim(), 3u);
    auto T = smart_truncation(E);
    EXPECT_EQ(T.algebra.dim(), 1u);
    EXPECT_EQ(T.algebra.check_axioms(), "");
    EXPECT_TRUE(verify_dg_quasi_iso(T.inclusion, T.algebra, E).ok);
}

TEST(SmartTruncation, MutatedSilting) {
    A2 x;
    auto E = dg_end(std::vector<ProjComplex<Q>>{x.P1, x.r1()});
    EXPECT_EQ(E.dim(), 7u);
    EXPECT_EQ(E.degree_dims(), (Dims{{0, 5}, {1, 2}}));
    auto T = smart_truncation(E);
    EXPECT_EQ(T.algebra.dim(), 3u);
    EXPECT_TRUE(verify_dg_quasi_iso(T.inclusion, T.algebra, E).ok);
    EXPECT_THROW(smart_truncation(dg_end(std::vector<ProjComplex<Q>>{x.S1, x.S2})), PositiveCohomology);
}

TEST(SimpleModules, OverPathAlgebra) {
    A2 x;
    auto aug = simple_dg_modules(from_path_algebra(*x.A));
    ASSERT_EQ(aug.simples.size(), 2u);
    for (const auto& S : aug.simples) {
        EXPECT_EQ(S.dim(), 1u);
        EXPECT_EQ(S.check_axioms(aug.algebra), "");
    }
}

TEST(SimpleModules, MixedSignsWithPositiveCohomologyIsNotAugmentable) {
    A2 x;
    auto E = dg_end(std::vector<ProjComplex<Q>>{x.S1, shift(x.P2, -1)});
    EXPECT_THROW(simple_dg_modules(E), NotAugmentable);
}

TEST(SemifreeResolution, CompleteOverA2) {
    A2 x;
    auto aug = simple_dg_modules(from_path_algebra(*x.A));
    for (std::size_t i = 0; i < 2; ++i) {
        auto r = semifree_resolution(aug, i, -5, 5);
        EXPECT_TRUE(r.complete);
        auto M = r.module.flatten();
        EXPECT_EQ(M.check_axioms(aug.algebra), "");
    }
    EXPECT_THROW(semifree_resolution(aug, 2, -5, 5), InvalidArgument);
    EXPECT_THROW(semifree_resolution(aug, 0, 1, 0), InvalidArgument);
}

TEST(KoszulDual, OfAIsExtAlgebraOfSimples) {
    A2 x;
    auto kd = koszul_dual(from_path_algebra(*x.A), -5, 5);
    EXPECT_TRUE(kd.complete);
    EXPECT_EQ(kd.algebra.check_axioms(), "");
    EXPECT_EQ(nonzero(cohomology_dims(kd.algebra)), (Dims{{0, 2}, {1, 1}}));
    auto H1 = cohomology_algebra(kd.algebra);
    auto H2 = cohomology_algebra(dg_end(std::vector<ProjComplex<Q>>{x.S1, x.S2}));
    EXPECT_TRUE(graded_algebra_isomorphism(H1.algebra, H2.algebra).has_value());
}

TEST(KoszulDual, OfGradedArrowRecoversA) {
    A2 x;
    // k(e1 -> e2) with the arrow in degree 1 and zero differential
    auto H = cohomology_algebra(dg_end(std::vector<ProjComplex<Q>>{x.S1, x.S2})).algebra;
    ASSERT_EQ(H.degree_dims(), (Dims{{0, 2}, {1, 1}}));
    auto kd = koszul_dual(H, -5, 5);
    EXPECT_EQ(kd.algebra.check_axioms(), "");
    EXPECT_EQ(nonzero(cohomology_dims(kd.algebra)), (Dims{{0, 3}}));
    auto back = cohomology_algebra(kd.algebra);
    EXPECT_TRUE(graded_algebra_isomorphism(back.algebra, from_path_algebra(*x.A)).has_value());
}

TEST(GradedIso, RejectsDifferentDegrees) {
    A2 x;
    auto H1 = cohomology_algebra(dg_end(std::vector<ProjComplex<Q>>{x.S1, x.S2})).algebra;
    auto H2 = cohomology_algebra(dg_end(std::vector<ProjComplex<Q>>{x.S1, shift(x.P2, -1)})).algebra;
    EXPECT_FALSE(graded_algebra_isomorphism(H1, H2).has_value());
    EXPECT_FALSE(graded_algebra_isomorphism(H1, from_path_algebra(*x.A)).has_value());
    EXPECT_TRUE(graded_algebra_isomorphism(H1, H1).has_value());
}

TEST(DgAlgebra, PrimeFieldEndomorphisms) {
    PrimeField::Scope scope(5);
    auto A = fixtures::a2<PrimeField>();
    auto E = dg_end(std::vector<ProjComplex<PrimeField>>{resolved_simple(A, 0, 5), resolved_simple(A, 1, 5)});
    EXPECT_EQ(E.check_axioms(), "");
    EXPECT_EQ(E.degree_dims(), (Dims{{-1, 1}, {0, 4}, {1, 2}}));
    EXPECT_EQ(nonzero(cohomology_dims(E)), (Dims{{0, 2}, {1, 1}}));
}
