#include "fixtures.hpp"
#include "oracles.hpp"
#include "siltkit/siltkit.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace siltkit;
using Q = Rational;

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

AlgebraPtr<Q> a2() { return parse_algebra<Q>(slurp("a2.alg")); }

Document<Q> doc(const std::string& file) { return parse_document<Q>(slurp(file), a2()); }

ParseError parse_failure(const std::string& text, AlgebraPtr<Q> A = nullptr) {
    try {
        parse_document<Q>(text, A);
    } catch (const ParseError& e) {
        return e;
    }
    throw std::runtime_error("no ParseError for: " + text);
}

} // namespace

TEST(ParseAlgebra, DataFilesMatchPathCounts) {
    struct Case {
        const char* file;
        oracle::Monomial q;
    };
    std::vector<Case> cases{{"point.alg", {1, {}, {}, 1}},
                            {"a2.alg", {2, {{1, 0}}, {}, 2}},
                            {"a3.alg", {3, {{1, 0}, {2, 1}}, {}, 3}},
                            {"a3rel.alg", {3, {{1, 0}, {2, 1}}, {{0, 1}}, 3}},
                            {"kronecker.alg", {2, {{1, 0}, {1, 0}}, {}, 2}}};
    for (const auto& c : cases) {
        auto A = parse_algebra<Q>(slurp(c.file));
        std::size_t total = 0;
        for (int t = 0; t < c.q.vertices; ++t)
            for (int v = 0; v < c.q.vertices; ++v) {
                EXPECT_EQ(A->block_dim(t, v), c.q.cartan(t, v)) << c.file;
                total += c.q.cartan(t, v);
            }
        EXPECT_EQ(A->dim(), total) << c.file;
    }
}

TEST(ParseAlgebra, Characteristic) {
    EXPECT_EQ(peek_characteristic(slurp("a2.alg")), 0u);
    std::string f3 = "[field]\n3\n[vertices]\n1 2\n[arrows]\na: 2 -> 1\n[bound]\n2\n";
    EXPECT_EQ(peek_characteristic(f3), 3u);
    PrimeField::Scope scope(3);
    auto A = parse_algebra<PrimeField>(f3);
    EXPECT_EQ(A->dim(), 3u);
}

TEST(ParseDocument, ReferencePairs) {
    auto d46 = doc("left2.pair");
    ASSERT_EQ(d46.collections.size(), 2u);
    const auto* S = d46.find("silting-left2");
    const auto* T = d46.first(CollectionKind::Smc);
    ASSERT_TRUE(S && T);
    EXPECT_EQ(T->name, "smc-left2");
    EXPECT_EQ(check_pattern(*S, *T).verdict, Verdict::Pass);
    auto A = S->algebra();
    auto r1 = cone(hom_space(stalk(A, 1), stalk(A, 0), 0).basis().at(0));
    EXPECT_EQ(is_isomorphic((*S)[1], r1).verdict, Tri::True);
    EXPECT_EQ(is_isomorphic((*T)[1], shift(stalk(A, 1), 1)).verdict, Tri::True);

    auto d47 = doc("right2.pair");
    EXPECT_EQ(check_pattern(d47.collections[0], d47.collections[1]).verdict, Verdict::Pass);
    auto dstd = doc("std.pair");
    EXPECT_EQ(check_pattern(dstd.collections[0], dstd.collections[1]).verdict, Verdict::Pass);
}

TEST(ParseDocument, DirectSumsAndShifts) {
    auto d = parse_document<Q>("silting s = [proj(1) + proj(2)[1], proj(2)]\n", a2());
    const auto& X = d.collections.at(0)[0];
    EXPECT_EQ(X.total_summands(), 2u);
    EXPECT_EQ(X.lo, -1);
}

TEST(ParseErrors, CarryLineAndColumn) {
    auto A = a2();
    auto e1 = parse_failure("silting s = [proj(3)]\n", A);
    EXPECT_EQ(e1.line(), 1);
    EXPECT_EQ(e1.column(), 19);
    EXPECT_NE(e1.message().find("unknown vertex"), std::string::npos);

    auto e2 = parse_failure("complex x {\n  deg -1: P1\n  deg 0: P2\n  d -1: [a]\n}\n", A);
    EXPECT_EQ(e2.line(), 4);
    EXPECT_NE(e2.message().find("e_2 A e_1"), std::string::npos);

    auto e3 = parse_failure("[vertices]\n1\n[arrows]\nx: 1 -> 1\n[relations]\nx\n[bound]\n2\n");
    EXPECT_EQ(e3.line(), 6);

    auto e4 = parse_failure("silting s = [nothing]\n", A);
    EXPECT_EQ(e4.line(), 1);

    auto e5 = parse_failure("complex x {\n  deg 0: P1\n", A);
    EXPECT_GE(e5.line(), 2);

    EXPECT_THROW(parse_document<Q>("silting s = [proj(1)]\n"), ParseError); // no algebra
}

TEST(RoundTrip, AlgebraTextReparses) {
    for (const char* f : {"a2.alg", "a3rel.alg", "kronecker.alg"}) {
        auto A = parse_algebra<Q>(slurp(f));
        auto B = parse_algebra<Q>(algebra_text(*A));
        EXPECT_EQ(algebra_hash(*A), algebra_hash(*B)) << f;
        EXPECT_EQ(algebra_text(*A), algebra_text(*B)) << f;
    }
}

TEST(RoundTrip, CollectionLiteralReparses) {
    auto d = doc("right2.pair");
    for (const auto& C : d.collections) {
        auto text = collection_literal(C);
        auto again = parse_document<Q>(text, C.algebra());
        ASSERT_EQ(again.collections.size(), 1u);
        EXPECT_EQ(collections_isomorphic(C, again.collections[0]), Tri::True);
        auto text2 = collection_literal(again.collections[0]);
        auto third = parse_document<Q>(text2, C.algebra());
        EXPECT_EQ(collection_literal(third.collections[0]), text2);
    }
}

TEST(Render, DgTableShowsInvariants) {
    auto A = a2();
    auto E = dg_end(standard_smc(A));
    auto t = render_dg_table(E);
    EXPECT_NE(t.find("degrees: {-1:1, 0:4, 1:2}"), std::string::npos) << t;
    EXPECT_NE(t.find("d ranks: {-1:1, 0:1, 1:0}"), std::string::npos) << t;
    EXPECT_NE(t.find("cohomology: {0:2, 1:1}"), std::string::npos) << t;
    EXPECT_EQ(render_dg_table(E), render_dg_table(dg_end(standard_smc(A))));
}

TEST(Render, CanonicalFormIsIdempotent) {
    auto E = dg_end(standard_smc(a2()));
    auto C = canonical_form(E);
    EXPECT_EQ(C.check_axioms(), "");
    EXPECT_EQ(render_dg_table(C), render_dg_table(canonical_form(C)));
}

TEST(Render, PatternTableNamesWitness) {
    auto d = doc("mismatch.pair");
    auto c = pattern_table(d.collections[0], d.collections[1]);
    judge_pattern(c, 2, 2);
    auto t = render_pattern_table(c, d.collections[0], d.collections[1]);
    EXPECT_NE(t.find("i=2"), std::string::npos) << t;
    EXPECT_NE(t.find("m=-1"), std::string::npos) << t;
}

TEST(Certificates, ReplayEveryKind) {
    auto d = doc("left2.pair");
    RunConfig cfg;
    std::string all;
    std::vector<std::pair<CertificateKind, std::vector<Collection<Q>>>> jobs{
        {CertificateKind::Silting, {d.collections[0]}},
        {CertificateKind::Smc, {d.collections[1]}},
        {CertificateKind::Pattern, d.collections},
        {CertificateKind::Koszul, d.collections}};
    for (const auto& [kind, cols] : jobs) {
        auto c = emit_certificate(kind, cols, cfg);
        EXPECT_EQ(c.verdict, Verdict::Pass) << to_string(kind);
        auto single = replay_certificates<Q>(c.text, a2());
        EXPECT_TRUE(single.ok()) << to_string(kind);
        all += c.text;
    }
    auto r = replay_certificates<Q>(all, a2());
    EXPECT_EQ(r.certificates, 4u);
    EXPECT_EQ(r.reproduced, 4u);
    EXPECT_TRUE(r.ok());
}

TEST(Certificates, FailingPatternReplaysToo) {
    auto d = doc("mismatch.pair");
    auto c = emit_certificate(CertificateKind::Pattern, d.collections, RunConfig{});
    EXPECT_EQ(c.verdict, Verdict::Fail);
    EXPECT_TRUE(replay_certificates<Q>(c.text, a2()).ok());
}

TEST(Certificates, TamperingIsDetected) {
    auto d = doc("std.pair");
    auto c = emit_certificate(CertificateKind::Pattern, d.collections, RunConfig{});
    auto pos = c.text.find("pattern.hom: 1 1 0 1");
    ASSERT_NE(pos, std::string::npos);
    auto bad = c.text;
    bad.replace(pos, 21, "pattern.hom: 1 1 0 2");
    auto r = replay_certificates<Q>(bad, a2());
    EXPECT_FALSE(r.ok());
    ASSERT_FALSE(r.problems.empty());
    EXPECT_NE(r.problems[0].find("differs at line"), std::string::npos);

    auto K2 = parse_algebra<Q>(slurp("kronecker.alg"));
    auto w = replay_certificates<Q>(c.text, K2);
    ASSERT_FALSE(w.problems.empty());
    EXPECT_NE(w.problems[0].find("algebra hash mismatch"), std::string::npos);

    EXPECT_FALSE(replay_certificates<Q>("", a2()).ok());
}

TEST(Certificates, SeedIsRecorded) {
    auto d = doc("std.pair");
    RunConfig cfg;
    cfg.seed = 7;
    auto c = emit_certificate(CertificateKind::Silting, std::vector<Collection<Q>>{d.collections[0]}, cfg);
    EXPECT_NE(c.text.find("seed: 7\n"), std::string::npos);
    EXPECT_TRUE(replay_certificates<Q>(c.text, a2()).ok());
}

TEST(RunReport, ExitCodes) {
    Report r;
    EXPECT_EQ(r.exit_code(), 0);
    r.verdict("a", Verdict::Pass);
    EXPECT_EQ(r.exit_code(), 0);
    r.verdict("b", Verdict::NotCertified);
    EXPECT_EQ(r.exit_code(), 3);
    r.verdict("c", Verdict::Fail);
    EXPECT_EQ(r.exit_code(), 2);
    r.input_error = true;
    EXPECT_EQ(r.exit_code(), 4);
}

TEST(RunConfig, WindowAndValidation) {
    EXPECT_EQ(parse_window("-5..5"), std::make_pair(-5, 5));
    EXPECT_EQ(parse_window("0..0"), std::make_pair(0, 0));
    EXPECT_THROW(parse_window("5"), InvalidArgument);
    EXPECT_THROW(parse_window("a..b"), InvalidArgument);
    EXPECT_THROW(parse_window("1..2x"), InvalidArgument);
    RunConfig c;
    EXPECT_NO_THROW(c.validate());
    c.characteristic = 4;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c.characteristic = 7;
    c.window_lo = 3;
    c.window_hi = 2;
    EXPECT_THROW(c.validate(), InvalidArgument);
}
