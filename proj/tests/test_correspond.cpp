#include "fixtures.hpp"
#include "siltkit/correspond/pipeline.hpp"

#include <gtest/gtest.h>

using namespace siltkit;
using Q = Rational;

namespace {

struct A2 {
    AlgebraPtr<Q> A = fixtures::a2();
    ProjComplex<Q> P1 = stalk(A, 0), P2 = stalk(A, 1);
    ProjComplex<Q> S1 = resolved_simple(A, 0, 5), S2 = resolved_simple(A, 1, 5);
    ProjComplex<Q> r1 = cone(hom_space(P2, P1, 0).basis().at(0));

    Collection<Q> silting(std::string name, std::vector<ProjComplex<Q>> m) const {
        return {CollectionKind::Silting, std::move(name), std::move(m)};
    }
    Collection<Q> smc(std::string name, std::vector<ProjComplex<Q>> m) const {
        return {CollectionKind::Smc, std::move(name), std::move(m)};
    }
    Collection<Q> s_std() const { return silting("silting-std", {P1, P2}); }
    Collection<Q> t_std() const { return smc("smc-std", {S1, S2}); }
    Collection<Q> s_left() const { return silting("silting-left2", {P1, r1}); }
    Collection<Q> t_left() const { return smc("smc-left2", {P1, shift(P2, 1)}); }
    Collection<Q> s_right() const { return silting("silting-right2", {P1, shift(P2, -1)}); }
    Collection<Q> t_right() const { return smc("smc-right2", {S1, shift(P2, -1)}); }
};

} // namespace

TEST(Silting, ReferenceCollectionsPass) {
    A2 x;
    for (const auto& S : {x.s_std(), x.s_left(), x.s_right()}) {
        auto r = check_silting(S);
        EXPECT_EQ(r.verdict, Verdict::Pass) << S.name;
    }
}

TEST(Silting, PositiveSelfExtensionFails) {
    A2 x;
    auto r = check_silting(x.silting("bad", {shift(x.P1, -1), x.P2}));
    EXPECT_EQ(r.verdict, Verdict::Fail);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->m, 1);
    EXPECT_EQ(r.witness->dim, 1u);
}

TEST(Silting, NonGeneratingFails) {
    A2 x;
    EXPECT_EQ(check_silting(x.silting("short", {x.P1})).verdict, Verdict::Fail);
    EXPECT_EQ(check_silting(x.silting("twice", {x.P1, x.P1})).verdict, Verdict::Fail);
}

TEST(Smc, ReferenceCollectionsPass) {
    A2 x;
    for (const auto& T : {x.t_std(), x.t_left(), x.t_right()})
        EXPECT_EQ(check_smc(T).verdict, Verdict::Pass) << T.name;
}

TEST(Smc, RepeatedSimpleFails) {
    A2 x;
    auto r = check_smc(x.smc("bad", {x.S1, shift(x.S1, 1)}));
    EXPECT_EQ(r.verdict, Verdict::Fail);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_NE(r.witness->what.find("S1"), std::string::npos);
}

TEST(Smc, NegativeExtensionFails) {
    A2 x;
    // Hom(P1, S1) is nonzero
    auto r = check_smc(x.smc("neg", {x.P1, x.S1}));
    EXPECT_EQ(r.verdict, Verdict::Fail);
}

TEST(Pattern, ReferencePairsPass) {
    A2 x;
    std::vector<std::pair<Collection<Q>, Collection<Q>>> pairs{
        {x.s_std(), x.t_std()}, {x.s_left(), x.t_left()}, {x.s_right(), x.t_right()}};
    for (const auto& [S, T] : pairs) {
        auto c = check_pattern(S, T);
        EXPECT_EQ(c.verdict, Verdict::Pass);
        EXPECT_EQ(c.phi, (std::vector<std::size_t>{0, 1}));
        for (const auto& e : c.table)
            EXPECT_EQ(e.dim, (e.m == 0 && e.i == e.j) ? 1u : 0u);
    }
}

TEST(Pattern, MismatchedPairHasConcreteWitness) {
    A2 x;
    auto S = x.s_std(), T = x.t_left();
    auto c = pattern_table(S, T);
    judge_pattern(c, S.size(), T.size());
    EXPECT_EQ(c.verdict, Verdict::Fail);
    ASSERT_TRUE(c.witness.has_value());
    EXPECT_EQ(c.witness->i, 1u);
    EXPECT_EQ(c.witness->j, 1u);
    EXPECT_EQ(c.witness->m, -1);
    EXPECT_EQ(c.witness->dim, 1u);
    try {
        check_pattern(S, T);
        FAIL() << "expected PatternFailed";
    } catch (const PatternFailed& e) {
        EXPECT_NE(std::string(e.what()).find("m=-1"), std::string::npos);
    }
}

TEST(Pattern, SizeMismatchFails) {
    A2 x;
    auto c = pattern_table(x.silting("one", {x.P1}), x.t_std());
    judge_pattern(c, 1, 2);
    EXPECT_EQ(c.verdict, Verdict::Fail);
}

TEST(DerivedProjective, StalksAreDerivedProjective) {
    A2 x;
    EXPECT_TRUE(derived_projective_test(x.P1, x.t_std()).passed());
    EXPECT_TRUE(derived_projective_test(x.r1, x.t_left()).passed());
    auto bad = derived_projective_test(shift(x.P1, 1), x.t_std());
    EXPECT_EQ(bad.verdict, Verdict::Fail);
    EXPECT_EQ(bad.witness->m, 1);
}

TEST(DerivedProjective, CoverOfSimple) {
    A2 x;
    auto pi = hom_space(x.P1, x.S1, 0).basis().at(0);
    EXPECT_TRUE(derived_projective_cover_check(pi, x.t_std()).passed());
    auto zero = ChainMap<Q>::zero_map(x.P1, x.S1, 0);
    EXPECT_EQ(derived_projective_cover_check(zero, x.t_std()).verdict, Verdict::Fail);
    auto sum = direct_sum(x.P1, x.P1);
    auto two = hom_space(sum, x.S1, 0).basis().at(0);
    EXPECT_EQ(derived_projective_cover_check(two, x.t_std()).verdict, Verdict::Fail);
}

TEST(Membership, StandardHeart) {
    A2 x;
    auto T = x.t_std();
    EXPECT_TRUE(membership(x.P1, T, Aisle::TLe0));
    EXPECT_TRUE(membership(x.P1, T, Aisle::TGe0));
    EXPECT_TRUE(membership(shift(x.S1, 1), T, Aisle::TLe0));
    EXPECT_FALSE(membership(shift(x.S1, 1), T, Aisle::TGe0));
    EXPECT_FALSE(membership(shift(x.S1, -1), T, Aisle::TLe0));
    EXPECT_TRUE(membership(shift(x.S1, -1), T, Aisle::TGe0));
    auto S = x.s_std();
    EXPECT_TRUE(membership(x.P1, T, Aisle::WGe0, &S));
    EXPECT_TRUE(membership(x.P1, T, Aisle::WLe0, &S));
    EXPECT_FALSE(membership(shift(x.P1, -1), T, Aisle::WLe0, &S));
    EXPECT_THROW(membership(x.P1, T, Aisle::WLe0), NotInAmbient);
}

TEST(Pipeline, LeftMutationGivesFaithfulHeartPair) {
    A2 x;
    auto r = wt_pipeline(x.A, {{1, Side::Left}});
    EXPECT_EQ(r.certificates.size(), 2u);
    EXPECT_EQ(detail::same_collection(r.silting, x.s_left(), {}), Tri::True);
    EXPECT_EQ(detail::same_collection(r.smc, x.t_left(), {}), Tri::True);
}

TEST(Pipeline, RightMutationGivesSemisimpleHeartPair) {
    A2 x;
    auto r = wt_pipeline(x.A, {{1, Side::Right}});
    EXPECT_EQ(detail::same_collection(r.silting, x.s_right(), {}), Tri::True);
    EXPECT_EQ(detail::same_collection(r.smc, x.t_right(), {}), Tri::True);
}

TEST(Pipeline, LongerScriptStaysCertified) {
    A2 x;
    std::vector<MutationStep> script{{1, Side::Left}, {0, Side::Left}, {1, Side::Right}, {0, Side::Right}};
    auto r = wt_pipeline(x.A, script);
    EXPECT_EQ(r.certificates.size(), script.size() + 1);
    for (const auto& c : r.certificates)
        EXPECT_EQ(c.verdict, Verdict::Pass);
}

TEST(Pipeline, MismatchedStartRaisesStepFailed) {
    A2 x;
    try {
        wt_pipeline(x.s_std(), x.t_left(), {{0, Side::Left}});
        FAIL() << "expected StepFailed";
    } catch (const StepFailed& e) {
        EXPECT_EQ(e.step(), 0u);
        EXPECT_EQ(e.report().verdict, Verdict::Fail);
    }
    EXPECT_THROW(wt_pipeline(x.A, {{2, Side::Left}}), InvalidArgument);
}

TEST(Koszul, ReferencePairsPassBothDirections) {
    A2 x;
    std::vector<std::pair<Collection<Q>, Collection<Q>>> pairs{
        {x.s_std(), x.t_std()}, {x.s_left(), x.t_left()}, {x.s_right(), x.t_right()}};
    for (const auto& [S, T] : pairs) {
        auto k = koszul_pair_check(S, T);
        EXPECT_EQ(k.report.verdict, Verdict::Pass) << S.name << "\n" << [&] {
            std::string s;
            for (const auto& it : k.report.items)
                s += it.name + ": " + to_string(it.verdict) + " " + it.detail + "\n";
            return s;
        }();
        EXPECT_TRUE(k.dual_of_E.has_value());
        EXPECT_TRUE(k.dual_of_E_shriek.has_value());
    }
}

TEST(Koszul, MismatchedPairFails) {
    A2 x;
    auto k = koszul_pair_check(x.s_std(), x.t_left());
    EXPECT_EQ(k.report.verdict, Verdict::Fail);
    EXPECT_FALSE(k.E.has_value());
}

TEST(Graph, A2DepthTwo) {
    A2 x;
    auto g = mutation_graph(x.A, -1, 1, 2);
    EXPECT_EQ(g.nodes.size(), 12u);
    EXPECT_EQ(g.edges.size(), 16u);
    EXPECT_FALSE(g.inconclusive);
    bool has_left = false, has_right = false;
    for (const auto& n : g.nodes) {
        EXPECT_EQ(n.pattern, Verdict::Pass);
        has_left = has_left || detail::same_collection(n.silting, x.s_left(), {}) == Tri::True;
        has_right = has_right || detail::same_collection(n.silting, x.s_right(), {}) == Tri::True;
    }
    EXPECT_TRUE(has_left);
    EXPECT_TRUE(has_right);
}

TEST(Graph, DepthZeroIsTheRoot) {
    A2 x;
    auto g = mutation_graph(x.A, -1, 1, 0);
    EXPECT_EQ(g.nodes.size(), 1u);
    EXPECT_TRUE(g.edges.empty());
}

TEST(Graph, PointAlgebraOnlyShifts) {
    auto A = fixtures::point();
    auto g = mutation_graph(A, -1, 1, 2);
    EXPECT_EQ(g.nodes.size(), 3u);
    EXPECT_EQ(g.edges.size(), 4u);
    for (const auto& n : g.nodes)
        EXPECT_EQ(n.pattern, Verdict::Pass);
}
