#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace siltkit;
using fixtures::a2;
using fixtures::a3;

namespace {

// Independent count: paths of length < bound avoiding every monomial
// relation as a contiguous subword.
std::size_t count_monomial_quotient(const Quiver& q, const std::vector<std::vector<int>>& zero_words, int bound) {
    std::size_t count = static_cast<std::size_t>(q.num_vertices());
    std::vector<std::vector<int>> layer;
    for (int a = 0; a < q.num_arrows(); ++a)
        layer.push_back({a});
    for (int len = 1; len < bound; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : layer) {
            bool dead = false;
            for (const auto& z : zero_words)
                if (std::search(w.begin(), w.end(), z.begin(), z.end()) != w.end())
                    dead = true;
            if (dead)
                continue;
            ++count;
            // extend at the source end
            int src = q.arrows[static_cast<std::size_t>(w.back())].source;
            for (int a = 0; a < q.num_arrows(); ++a)
                if (q.arrows[static_cast<std::size_t>(a)].target == src) {
                    auto x = w;
                    x.push_back(a);
                    next.push_back(x);
                }
        }
        layer = std::move(next);
    }
    return count;
}

} // namespace

TEST(Field, RationalArithmeticIsExact) {
    Rational a = parse_scalar<Rational>("-7/3");
    Rational s = a + (-a);
    Rational p = a * (Rational(1) / a);
    EXPECT_TRUE(is_zero(s));
    EXPECT_EQ(p, Rational(1));
    EXPECT_EQ(to_string(parse_scalar<Rational>("4/6")), "2/3");
    EXPECT_THROW(parse_scalar<Rational>("1/0"), InvalidArgument);
    EXPECT_THROW(parse_scalar<Rational>("1.5"), InvalidArgument);
}

TEST(Field, PrimeFieldArithmetic) {
    PrimeField::Scope scope(7);
    for (long x = 1; x < 7; ++x) {
        PrimeField a(x);
        EXPECT_EQ(a * a.inverse(), PrimeField(1));
        EXPECT_TRUE(is_zero(a + (-a)));
    }
    EXPECT_EQ(parse_scalar<PrimeField>("2/3"), PrimeField(3));
    EXPECT_THROW(parse_scalar<PrimeField>("1/7"), InvalidArgument);
    EXPECT_EQ(characteristic<PrimeField>(), 7u);
    EXPECT_THROW(PrimeField::Scope(6), InvalidArgument);
}

TEST(Linalg, SpanBasisCoordinates) {
    SpanBasis<Rational> s(3);
    EXPECT_TRUE(s.add({Rational(1), Rational(1), Rational(0)}));
    EXPECT_TRUE(s.add({Rational(0), Rational(1), Rational(1)}));
    EXPECT_FALSE(s.add({Rational(1), Rational(2), Rational(1)}));
    auto c = s.coords({Rational(2), Rational(5), Rational(3)});
    ASSERT_TRUE(c);
    EXPECT_EQ((*c)[0], Rational(2));
    EXPECT_EQ((*c)[1], Rational(3));
    EXPECT_FALSE(s.coords({Rational(1), Rational(0), Rational(0)}));
}

TEST(Linalg, NullspaceAndDeterminant) {
    Matrix<Rational> m(2, 3);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(0, 2) = 3;
    m(1, 0) = 2;
    m(1, 1) = 4;
    m(1, 2) = 6;
    auto ns = nullspace(m);
    EXPECT_EQ(ns.size(), 2u);
    for (const auto& v : ns)
        EXPECT_TRUE(is_zero_vector(m.apply(v)));
    std::vector<std::vector<mpz_class>> z{{2, 1}, {3, 2}};
    EXPECT_EQ(integer_determinant(z), 1);
    std::vector<std::vector<mpz_class>> w{{0, 1, 2}, {1, 0, 3}, {4, -3, 8}};
    EXPECT_EQ(integer_determinant(w), -2);
}

TEST(BuildAlgebra, A2IsThreeDimensional) {
    auto A = a2();
    EXPECT_EQ(A->dim(), 3u);
    EXPECT_EQ(A->basis_name(0), "e_1");
    EXPECT_EQ(A->basis_name(1), "e_2");
    EXPECT_EQ(A->basis_name(2), "a");
    EXPECT_EQ(A->block_dim(0, 1), 1u);
    EXPECT_EQ(A->block_dim(1, 0), 0u);
    EXPECT_EQ(A->check_invariants(), "");
}

TEST(BuildAlgebra, PointAlgebra) {
    auto A = fixtures::point();
    EXPECT_EQ(A->dim(), 1u);
    EXPECT_EQ(A->check_invariants(), "");
}

TEST(BuildAlgebra, A3WithZeroRelationMatchesEnumeration) {
    auto A = a3(true);
    EXPECT_EQ(A->dim(), count_monomial_quotient(A->quiver(), {{0, 1}}, 2 + 1));
    EXPECT_EQ(A->dim(), 5u);
    EXPECT_EQ(A->check_invariants(), "");
    auto B = a3(false);
    EXPECT_EQ(B->dim(), count_monomial_quotient(B->quiver(), {}, 3));
    EXPECT_EQ(B->dim(), 6u);
}

TEST(BuildAlgebra, CommutativeSquare) {
    // 4 -> 2 -> 1 and 4 -> 3 -> 1 with a;b = c;d
    Quiver q{{"1", "2", "3", "4"}, {{"a", 1, 0}, {"b", 3, 1}, {"c", 2, 0}, {"d", 3, 2}}};
    Relation<Rational> r{{{Rational(1), Path{3, 0, {0, 1}}}, {Rational(-1), Path{3, 0, {2, 3}}}}};
    auto A = PathAlgebra<Rational>::build(q, {r}, 3);
    EXPECT_EQ(A->dim(), 9u);
    EXPECT_EQ(A->check_invariants(), "");
    auto nf = A->normal_form(Path{3, 0, {0, 1}});
    auto nf2 = A->normal_form(Path{3, 0, {2, 3}});
    EXPECT_EQ(nf, nf2);
}

TEST(BuildAlgebra, NonAdmissibleIsRejected) {
    Quiver q{{"1", "2"}, {{"a", 1, 0}}};
    EXPECT_THROW(PathAlgebra<Rational>::build(q, {}, 1), NonAdmissible);
    Quiver loop{{"1"}, {{"x", 0, 0}}};
    EXPECT_THROW(PathAlgebra<Rational>::build(loop, {}, 4), NonAdmissible);
}

TEST(BuildAlgebra, MalformedRelationsAreRejected) {
    Quiver q{{"1", "2", "3"}, {{"a", 1, 0}, {"b", 2, 1}, {"c", 2, 0}}};
    Relation<Rational> mixed{{{Rational(1), Path{2, 0, {0, 1}}}, {Rational(1), Path{1, 0, {0}}}}};
    EXPECT_THROW(PathAlgebra<Rational>::build(q, {mixed}, 3), MalformedRelation);
    Relation<Rational> short_term{{{Rational(1), Path{2, 0, {0, 1}}}, {Rational(-1), Path{2, 0, {2}}}}};
    EXPECT_THROW(PathAlgebra<Rational>::build(q, {short_term}, 3), MalformedRelation);
    EXPECT_THROW(PathAlgebra<Rational>::build(q, {Relation<Rational>{}}, 3), MalformedRelation);
}

TEST(BuildAlgebra, PrimeFieldBuild) {
    PrimeField::Scope scope(5);
    auto A = fixtures::a2<PrimeField>();
    EXPECT_EQ(A->dim(), 3u);
    EXPECT_EQ(A->check_invariants(), "");
}

TEST(BuildAlgebra, InverseUnit) {
    auto A = fixtures::dual_numbers();
    auto u = A->idempotent_element(0);
    u[A->idempotent(0)] = Rational(3);
    u[1] = Rational(5);
    auto inv = A->inverse_unit(u, 0);
    EXPECT_EQ(A->multiply(u, inv), A->idempotent_element(0));
}

TEST(Modules, SimpleAndProjective) {
    auto A = a2();
    EXPECT_EQ(simple_module(A, 0).dimension_vector(), (std::vector<std::size_t>{1, 0}));
    EXPECT_EQ(simple_module(A, 1).dimension_vector(), (std::vector<std::size_t>{0, 1}));
    EXPECT_THROW(simple_module(A, 2), UnknownVertex);
    auto P1 = projective_module(A, 0);
    EXPECT_EQ(P1.dimension_vector(), (std::vector<std::size_t>{1, 1}));
    EXPECT_FALSE(P1.arrow_action(0).is_zero_matrix());
    EXPECT_EQ(top_generators(P1, 0).size(), 1u);
    EXPECT_EQ(top_generators(P1, 1).size(), 0u);
    auto P2 = projective_module(A, 1);
    EXPECT_EQ(P2.dimension_vector(), (std::vector<std::size_t>{0, 1}));
    auto S = simple_module(a3(true), 1);
    EXPECT_EQ(S.dimension_vector(), (std::vector<std::size_t>{0, 1, 0}));
    EXPECT_EQ(projective_module(fixtures::point(), 0).total_dim(), 1u);
}

TEST(Modules, ProjectiveCoverExactness) {
    for (const auto& A : {a2(), a3(true), a3(false), fixtures::kronecker(), fixtures::dual_numbers()}) {
        for (int v = 0; v < A->num_vertices(); ++v) {
            for (const auto& M : {simple_module(A, v), projective_module(A, v)}) {
                auto pc = projective_cover(M);
                EXPECT_TRUE(pc.map.commutes(pc.P, M));
                auto K = kernel(pc.P, M, pc.map);
                EXPECT_EQ(K.module.total_dim() + M.total_dim(), pc.P.total_dim());
                auto mult = pc.multiplicities();
                EXPECT_EQ(mult[static_cast<std::size_t>(v)], 1u);
            }
        }
    }
    auto A = a2();
    auto zero = RightModule<Rational>(A, {0, 0}, {Matrix<Rational>(0, 0)});
    EXPECT_THROW(projective_cover(zero), ZeroModule);
}

TEST(Resolution, SimpleOneOverA2) {
    auto A = a2();
    auto X = minimal_projective_resolution(simple_module(A, 0), 5);
    EXPECT_TRUE(X.complete);
    EXPECT_EQ(X.lo, -1);
    EXPECT_EQ(X.term(-1), std::vector<int>{1});
    EXPECT_EQ(X.term(0), std::vector<int>{0});
    EXPECT_EQ(A->element_to_string(X.d(-1)(0, 0)), "a");
    EXPECT_NO_THROW(X.validate());
}

TEST(Resolution, ProjectiveIsStalk) {
    auto A = a2();
    auto X = minimal_projective_resolution(projective_module(A, 0), 3);
    EXPECT_TRUE(X.complete);
    EXPECT_EQ(X.lo, 0);
    EXPECT_EQ(X.terms.size(), 1u);
}

TEST(Resolution, DualNumbersIsIncomplete) {
    auto A = fixtures::dual_numbers();
    auto X = minimal_projective_resolution(simple_module(A, 0), 3);
    EXPECT_FALSE(X.complete);
    EXPECT_EQ(X.lo, -3);
    EXPECT_EQ(X.trusted_from, -3);
    for (int k = -3; k <= 0; ++k)
        EXPECT_EQ(X.term(k).size(), 1u);
    EXPECT_TRUE(X.is_minimal());
    EXPECT_NO_THROW(X.validate());
}

TEST(Resolution, GlobalDimensionAtMostTwo) {
    for (const auto& A : {a2(), a3(true), a3(false), fixtures::kronecker()})
        for (int v = 0; v < A->num_vertices(); ++v) {
            auto X = minimal_projective_resolution(simple_module(A, v), 2);
            EXPECT_TRUE(X.complete);
            EXPECT_TRUE(X.is_minimal());
            EXPECT_NO_THROW(X.validate());
        }
    // 1 <- P2 <- P3 with the zero relation; the simple at 3 is projective
    auto X = minimal_projective_resolution(simple_module(a3(true), 0), 2);
    EXPECT_EQ(X.lo, -2);
    EXPECT_EQ(minimal_projective_resolution(simple_module(a3(true), 2), 2).lo, 0);
}
