#pragma once

// Human-readable tables and the line-oriented structured format.

#include "siltkit/correspond/pipeline.hpp"
#include "siltkit/io/parse.hpp"

#include <cstdio>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace siltkit {

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Canonical text of an algebra; parsing it gives back the same algebra.
template <class K>
std::string algebra_text(const PathAlgebra<K>& A) {
    const auto& q = A.quiver();
    std::ostringstream o;
    o << "[field]\n" << characteristic<K>() << "\n[vertices]\n";
    for (std::size_t v = 0; v < q.vertices.size(); ++v)
        o << (v ? " " : "") << q.vertices[v];
    o << "\n[arrows]\n";
    for (const auto& a : q.arrows)
        o << a.name << ": " << q.vertices[static_cast<std::size_t>(a.source)] << " -> "
          << q.vertices[static_cast<std::size_t>(a.target)] << "\n";
    o << "[relations]\n";
    for (const auto& r : A.relations()) {
        bool first = true;
        for (const auto& [c, p] : r.terms) {
            std::string s = to_string(c);
            bool neg = !s.empty() && s[0] == '-';
            if (neg)
                s.erase(0, 1);
            o << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
            if (s != "1")
                o << s << "*";
            o << path_name(q, p);
            first = false;
        }
        o << "\n";
    }
    o << "[bound]\n" << A.nilpotency_bound() << "\n";
    return o.str();
}

template <class K>
std::string algebra_hash(const PathAlgebra<K>& A) {
    return hex64(fnv1a64(algebra_text(A)));
}

namespace detail {

inline int sign_of(const Rational& x) { return sgn(x) < 0 ? -1 : 1; }
inline int sign_of(const PrimeField&) { return 1; }

inline std::string literal_name(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool dash_ok = c == '-' && i > 0 && i + 1 < s.size() && std::isalpha(static_cast<unsigned char>(s[i - 1])) &&
                       std::isalpha(static_cast<unsigned char>(s[i + 1]));
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || dash_ok) ? c : '_';
    }
    if (out.empty() || !std::isalpha(static_cast<unsigned char>(out[0])))
        out = "c" + out;
    return out;
}

template <class K>
std::string summand_list(const PathAlgebra<K>& A, const std::vector<int>& t) {
    if (t.empty())
        return "0";
    std::string s;
    std::size_t i = 0;
    while (i < t.size()) {
        std::size_t j = i;
        while (j < t.size() && t[j] == t[i])
            ++j;
        if (!s.empty())
            s += " + ";
        s += "P" + A.quiver().vertices[static_cast<std::size_t>(t[i])];
        if (j - i > 1)
            s += "^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

} // namespace detail

/// `complex NAME { ... }` in the input syntax.
template <class K>
std::string complex_literal(const ProjComplex<K>& X, const std::string& name) {
    const auto& A = *X.algebra;
    std::ostringstream o;
    o << "complex " << name << " {";
    if (!X.label.empty() && X.label != name)
        o << "  # " << X.label;
    o << "\n";
    for (int k = X.lo; k <= X.hi() && !X.is_zero(); ++k)
        o << "  deg " << k << ": " << detail::summand_list(A, X.term(k)) << "\n";
    for (int k = X.lo; k < X.hi(); ++k) {
        auto m = X.d(k);
        if (m.rows() == 0 || m.cols() == 0)
            continue;
        o << "  d " << k << ": [";
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r)
                o << " | ";
            for (std::size_t c = 0; c < m.cols(); ++c)
                o << (c ? ", " : "") << A.element_to_string(m(r, c));
        }
        o << "]\n";
    }
    o << "}\n";
    return o.str();
}

/// Complex literals for the members followed by the collection statement.
template <class K>
std::string collection_literal(const Collection<K>& C) {
    std::string base = detail::literal_name(C.name);
    std::ostringstream o;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < C.size(); ++i) {
        names.push_back(base + "_m" + std::to_string(i + 1));
        o << complex_literal(C[i], names.back());
    }
    o << (C.kind == CollectionKind::Smc ? "smc " : "silting ") << base << " = [";
    for (std::size_t i = 0; i < names.size(); ++i)
        o << (i ? ", " : "") << names[i];
    o << "]\n";
    return o.str();
}

/// dim H^k(X) e_v for every k in the support, as dimension vectors.
template <class K>
std::string cohomology_summary(const ProjComplex<K>& X) {
    const auto& A = X.algebra;
    std::string s;
    for (int k = X.lo; k <= X.hi() && !X.is_zero(); ++k) {
        std::vector<std::size_t> dv;
        bool any = false;
        for (int v = 0; v < A->num_vertices(); ++v) {
            auto d = hom_dimension(stalk(A, v), X, k);
            any = any || d;
            dv.push_back(d);
        }
        if (!any)
            continue;
        s += (s.empty() ? "" : ", ") + std::string("H^") + std::to_string(k) + " = (";
        for (std::size_t i = 0; i < dv.size(); ++i)
            s += (i ? "," : "") + std::to_string(dv[i]);
        s += ")";
    }
    return s.empty() ? "acyclic" : s;
}

template <class K>
std::string describe_complex(const ProjComplex<K>& X) {
    const auto& A = *X.algebra;
    std::string s;
    for (int k = X.lo; k <= X.hi() && !X.is_zero(); ++k) {
        if (!s.empty()) {
            auto m = X.d(k - 1);
            std::string ent;
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t c = 0; c < m.cols(); ++c)
                    ent += (ent.empty() ? "" : ",") + A.element_to_string(m(r, c));
            s += " --[" + ent + "]--> ";
        }
        s += detail::summand_list(A, X.term(k)) + "@" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
}

template <class K>
std::string render_collection(const Collection<K>& C) {
    std::ostringstream o;
    o << (C.kind == CollectionKind::Smc ? "smc " : "silting ") << C.name << "\n";
    for (std::size_t i = 0; i < C.size(); ++i)
        o << "  " << i + 1 << ". " << C[i].label << " : " << describe_complex(C[i]) << "   ["
          << cohomology_summary(C[i]) << "]\n";
    return o.str();
}

inline std::string render_report(const CheckReport& r) {
    std::ostringstream o;
    o << r.check << ": " << to_string(r.verdict);
    if (r.closure_depth >= 0)
        o << " (closure depth " << r.closure_depth << ")";
    o << "\n";
    for (const auto& it : r.items) {
        o << "  [" << to_string(it.verdict) << "] " << it.name;
        if (!it.detail.empty())
            o << ": " << it.detail;
        o << "\n";
    }
    if (r.witness)
        o << "  witness: " << r.witness->what << "\n";
    return o.str();
}

/// dim Hom(S_i, T_j[m]) as one i-by-j grid per shift m.
template <class K>
std::string render_pattern_table(const CorrespondenceCertificate& cert, const Collection<K>& S,
                                 const Collection<K>& T) {
    std::ostringstream o;
    o << "Hom(S_i, T_j[m]) for " << cert.silting_name << " vs " << cert.smc_name << "\n";
    std::size_t w = 4;
    for (const auto& L : T.members)
        w = std::max(w, L.label.size() + 1);
    std::size_t lw = 4;
    for (const auto& P : S.members)
        lw = std::max(lw, P.label.size() + 1);
    for (int m = cert.window_lo; m <= cert.window_hi; ++m) {
        o << "m = " << m << "\n" << std::string(lw + 2, ' ');
        for (const auto& L : T.members)
            o << std::setw(static_cast<int>(w)) << L.label;
        o << "\n";
        for (std::size_t i = 0; i < S.size(); ++i) {
            o << "  " << std::left << std::setw(static_cast<int>(lw)) << S[i].label << std::right;
            for (std::size_t j = 0; j < T.size(); ++j) {
                std::size_t d = 0;
                for (const auto& e : cert.table)
                    if (e.i == i && e.j == j && e.m == m)
                        d = e.dim;
                o << std::setw(static_cast<int>(w)) << d;
            }
            o << "\n";
        }
    }
    o << "phi:";
    for (std::size_t i = 0; i < cert.phi.size(); ++i)
        o << " " << S[i].label << "->"
          << (cert.phi[i] < T.size() ? T[cert.phi[i]].label : std::string("?"));
    o << "\npattern: " << to_string(cert.verdict) << "\n";
    if (cert.witness)
        o << "  witness: (i=" << cert.witness->i + 1 << ", j=" << cert.witness->j + 1 << ", m=" << cert.witness->m
          << ", dim=" << cert.witness->dim << ") " << cert.witness->what << "\n";
    return o.str();
}

/// Same algebra in canonical basis order (degree, block, name) with signs
/// flipped so that the first nonzero structure constant of every
/// non-idempotent element is positive.
template <class K>
DGAlgebra<K> canonical_form(const DGAlgebra<K>& E) {
    const std::size_t n = E.dim();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(E.degree[a], E.block[a], E.names[a]) < std::tie(E.degree[b], E.block[b], E.names[b]);
    });
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i)
        pos[perm[i]] = i;
    std::vector<int> sign(n, 1);
    std::vector<bool> unit_like(n, false);
    for (const auto& e : E.idempotents)
        for (std::size_t i = 0; i < n; ++i)
            if (!is_zero(e[i]))
                unit_like[i] = true;
    for (std::size_t ni = 0; ni < n; ++ni) {
        std::size_t b = perm[ni];
        if (unit_like[b])
            continue;
        std::optional<int> s;
        for (std::size_t nk = 0; nk < n && !s; ++nk) {
            const K& c = E.d(perm[nk], b);
            if (!is_zero(c))
                s = detail::sign_of(c) * sign[perm[nk]];
        }
        for (std::size_t nk = 0; nk < n && !s; ++nk)
            for (int side = 0; side < 2 && !s; ++side) {
                std::size_t c = perm[nk];
                const auto& terms = side == 0 ? E.product_terms(b, c) : E.product_terms(c, b);
                std::optional<std::pair<std::size_t, K>> first;
                for (const auto& [t, v] : terms)
                    if (!first || pos[t] < pos[first->first])
                        first = std::make_pair(t, v);
                if (first)
                    s = detail::sign_of(first->second) * sign[c] * sign[first->first];
            }
        sign[b] = s.value_or(1);
    }
    auto F = make_dg_algebra<K>({}, {}, {}, E.num_objects());
    F.degree.resize(n);
    F.names.resize(n);
    F.block.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        F.degree[i] = E.degree[perm[i]];
        F.names[i] = E.names[perm[i]];
        F.block[i] = E.block[perm[i]];
    }
    F.d = Matrix<K>(n, n);
    F.prod.assign(n * n, {});
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            K c = E.d(perm[i], perm[j]);
            if (sign[perm[i]] * sign[perm[j]] < 0)
                c = -c;
            F.d(i, j) = c;
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Vec<K> v(n, K(0));
            for (const auto& [t, c] : E.product_terms(perm[a], perm[b])) {
                K x = c;
                if (sign[perm[a]] * sign[perm[b]] * sign[t] < 0)
                    x = -x;
                v[pos[t]] += x;
            }
            set_product(F, a, b, v);
        }
    F.idempotents.clear();
    for (const auto& e : E.idempotents) {
        Vec<K> v(n, K(0));
        for (std::size_t i = 0; i < n; ++i)
            v[pos[i]] = sign[i] < 0 ? K(-e[i]) : e[i];
        F.idempotents.push_back(v);
    }
    F.objects = E.objects;
    F.provenance = E.provenance;
    return F;
}

/// rank of d : E^k -> E^{k+1} for every k with E^k nonzero.
template <class K>
std::map<int, std::size_t> differential_ranks(const DGAlgebra<K>& E) {
    std::map<int, std::size_t> out;
    for (int k : E.degrees()) {
        auto src = E.indices(k), dst = E.indices(k + 1);
        Matrix<K> m(dst.size(), src.size());
        for (std::size_t r = 0; r < dst.size(); ++r)
            for (std::size_t c = 0; c < src.size(); ++c)
                m(r, c) = E.d(dst[r], src[c]);
        out[k] = dst.empty() || src.empty() ? 0 : rank(m);
    }
    return out;
}

template <class K>
std::string vec_string(const DGAlgebra<K>& E, const Vec<K>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (is_zero(v[i]))
            continue;
        std::string c = to_string(v[i]);
        bool neg = c[0] == '-';
        if (neg)
            c.erase(0, 1);
        s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (c != "1")
            s += c + "*";
        s += E.names[i];
    }
    return s.empty() ? "0" : s;
}

inline std::string dims_string(const std::map<int, std::size_t>& m) {
    std::string s = "{";
    for (auto it = m.begin(); it != m.end(); ++it)
        s += (it == m.begin() ? "" : ", ") + std::to_string(it->first) + ":" + std::to_string(it->second);
    return s + "}";
}

/// Columns: element, degree, d(element), products against every basis element.
template <class K>
std::string render_dg_table(const DGAlgebra<K>& E0) {
    auto E = canonical_form(E0);
    const std::size_t n = E.dim();
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"element", "deg", "d"};
    for (std::size_t j = 0; j < n; ++j)
        head.push_back("*" + E.names[j]);
    rows.push_back(head);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> r{E.names[i], std::to_string(E.degree[i]), vec_string(E, E.d.column(i))};
        for (std::size_t j = 0; j < n; ++j) {
            Vec<K> v(n, K(0));
            for (const auto& [t, c] : E.product_terms(i, j))
                v[t] += c;
            r.push_back(vec_string(E, v));
        }
        rows.push_back(r);
    }
    std::vector<std::size_t> w(head.size(), 0);
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c)
            w[c] = std::max(w[c], r[c].size());
    std::ostringstream o;
    if (!E.provenance.empty())
        o << E.provenance << "\n";
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        for (std::size_t c = 0; c < rows[ri].size(); ++c)
            o << (c ? " | " : "") << std::left << std::setw(static_cast<int>(w[c])) << rows[ri][c];
        o << std::right << "\n";
        if (ri == 0) {
            std::size_t total = 0;
            for (auto x : w)
                total += x + 3;
            o << std::string(total - 3, '-') << "\n";
        }
    }
    o << "degrees: " << dims_string(E.degree_dims()) << "\n";
    o << "d ranks: " << dims_string(differential_ranks(E)) << "\n";
    o << "cohomology: " << dims_string(cohomology_dims(E)) << "\n";
    return o.str();
}

/// Line-oriented key: value output with stable key order.
class Structured {
public:
    Structured& put(const std::string& key, const std::string& value) {
        out_ += key + ": " + value + "\n";
        return *this;
    }
    Structured& put(const std::string& key, long long value) { return put(key, std::to_string(value)); }
    Structured& raw(const std::string& text) {
        out_ += text;
        if (!text.empty() && text.back() != '\n')
            out_ += "\n";
        return *this;
    }
    const std::string& str() const { return out_; }

private:
    std::string out_;
};

inline void put_report(Structured& s, const CheckReport& r, const std::string& prefix) {
    s.put(prefix + ".verdict", to_string(r.verdict));
    if (r.closure_depth >= 0)
        s.put(prefix + ".closure-depth", r.closure_depth);
    for (std::size_t i = 0; i < r.items.size(); ++i)
        s.put(prefix + ".item." + std::to_string(i + 1),
              to_string(r.items[i].verdict) + " | " + r.items[i].name + " | " + r.items[i].detail);
    if (r.witness)
        s.put(prefix + ".witness", "i=" + std::to_string(r.witness->i + 1) + " j=" + std::to_string(r.witness->j + 1) +
                                       " m=" + std::to_string(r.witness->m) + " dim=" + std::to_string(r.witness->dim) +
                                       " " + r.witness->what);
}

inline void put_pattern(Structured& s, const CorrespondenceCertificate& c) {
    s.put("pattern.silting", c.silting_name);
    s.put("pattern.smc", c.smc_name);
    s.put("pattern.characteristic", static_cast<long long>(c.characteristic));
    s.put("pattern.window", std::to_string(c.window_lo) + ".." + std::to_string(c.window_hi));
    std::string phi;
    for (std::size_t i = 0; i < c.phi.size(); ++i)
        phi += (i ? " " : "") + std::to_string(i + 1) + "->" +
               (c.phi[i] == static_cast<std::size_t>(-1) ? std::string("?") : std::to_string(c.phi[i] + 1));
    s.put("pattern.phi", phi);
    for (const auto& e : c.table)
        s.put("pattern.hom", std::to_string(e.i + 1) + " " + std::to_string(e.j + 1) + " " + std::to_string(e.m) + " " +
                                 std::to_string(e.dim));
    s.put("pattern.verdict", to_string(c.verdict));
    if (c.witness)
        s.put("pattern.witness", "i=" + std::to_string(c.witness->i + 1) + " j=" + std::to_string(c.witness->j + 1) +
                                     " m=" + std::to_string(c.witness->m) + " dim=" + std::to_string(c.witness->dim) +
                                     " " + c.witness->what);
}

template <class K>
void put_dg(Structured& s, const DGAlgebra<K>& E0, const std::string& prefix) {
    auto E = canonical_form(E0);
    s.put(prefix + ".provenance", E.provenance);
    s.put(prefix + ".dim", static_cast<long long>(E.dim()));
    std::string deg;
    for (std::size_t i = 0; i < E.dim(); ++i)
        deg += (i ? " " : "") + std::to_string(E.degree[i]);
    s.put(prefix + ".degree-column", deg);
    s.put(prefix + ".degrees", dims_string(E.degree_dims()));
    s.put(prefix + ".d-ranks", dims_string(differential_ranks(E)));
    s.put(prefix + ".cohomology", dims_string(cohomology_dims(E)));
    for (std::size_t i = 0; i < E.dim(); ++i)
        s.put(prefix + ".d." + E.names[i], vec_string(E, E.d.column(i)));
}

} // namespace siltkit
