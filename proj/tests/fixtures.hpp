#pragma once

#include "siltkit/corealg/resolution.hpp"

namespace fixtures {

using siltkit::AlgebraPtr;
using siltkit::PathAlgebra;
using siltkit::Path;
using siltkit::Quiver;
using siltkit::Rational;
using siltkit::Relation;

template <class K = Rational>
AlgebraPtr<K> point() {
    Quiver q{{"1"}, {}};
    return PathAlgebra<K>::build(q, {}, 1);
}

// 2 -> 1; vertex index 0 is "1", index 1 is "2"
template <class K = Rational>
AlgebraPtr<K> a2() {
    Quiver q{{"1", "2"}, {{"a", 1, 0}}};
    return PathAlgebra<K>::build(q, {}, 2);
}

// 3 -> 2 -> 1, optionally with b;a = 0 (a: 2->1, b: 3->2, composite a after b)
template <class K = Rational>
AlgebraPtr<K> a3(bool with_relation) {
    Quiver q{{"1", "2", "3"}, {{"a", 1, 0}, {"b", 2, 1}}};
    std::vector<Relation<K>> rels;
    if (with_relation)
        rels.push_back(Relation<K>{{{K(1), Path{2, 0, {0, 1}}}}});
    return PathAlgebra<K>::build(q, rels, with_relation ? 2 : 3);
}

// two arrows 2 => 1
template <class K = Rational>
AlgebraPtr<K> kronecker() {
    Quiver q{{"1", "2"}, {{"a", 1, 0}, {"b", 1, 0}}};
    return PathAlgebra<K>::build(q, {}, 2);
}

// k[x]/(x^2)
template <class K = Rational>
AlgebraPtr<K> dual_numbers() {
    Quiver q{{"1"}, {{"x", 0, 0}}};
    std::vector<Relation<K>> rels{Relation<K>{{{K(1), Path{0, 0, {0, 0}}}}}};
    return PathAlgebra<K>::build(q, rels, 2);
}

} // namespace fixtures
