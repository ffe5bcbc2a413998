#pragma once

// Declarative input files.
//
//   [field]      0 | p
//   [vertices]   1 2
//   [arrows]     a: 2 -> 1
//   [relations]  one linear combination per line, paths written
//                target-to-source as ';'-separated arrow ids, e.g. a;b - 2/3*c;d
//   [bound]      nilpotency bound
//
//   complex r1 {
//     deg -1: P2
//     deg 0: P1
//     d -1: [a]                      rows separated by '|', entries by ','
//   }
//   silting S = [proj(1), r1]
//   smc T = [proj(1), res(simple 2)[1]]
//
// An entry of a differential acts by left multiplication e_t A e_s, so with
// the convention here e_1 A has basis {e_1, a} for a: 2 -> 1, which is the
// module with top 1 and socle 2.  A bare scalar stands for a multiple of the
// idempotent on diagonal blocks.  '#' starts a comment.

#include "siltkit/homotopy/approximation.hpp"
#include "siltkit/corealg/resolution.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace siltkit {

namespace io {

struct Token {
    enum Kind { Word, Punct, Newline, End } kind = End;
    std::string text;
    int line = 1;
    int column = 1;
};

/// Words are runs of [A-Za-z0-9_.']; a '-' continues a word when the next
/// character is a letter, so names such as smc-std lex as one word.
inline std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto word_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
    };
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == '#') {
            while (i < src.size() && src[i] != '\n')
                advance(1);
            continue;
        }
        if (c == '\n') {
            out.push_back({Token::Newline, "\n", line, col});
            advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (word_char(c)) {
            std::size_t j = i;
            while (j < src.size() &&
                   (word_char(src[j]) ||
                    (src[j] == '-' && j + 1 < src.size() && std::isalpha(static_cast<unsigned char>(src[j + 1])) &&
                     j > i && std::isalpha(static_cast<unsigned char>(src[j - 1])))))
                ++j;
            out.push_back({Token::Word, src.substr(i, j - i), line, col});
            advance(j - i);
            continue;
        }
        if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            out.push_back({Token::Punct, "->", line, col});
            advance(2);
            continue;
        }
        if (std::string("[]{}(),:;+-*^|=/").find(c) != std::string::npos) {
            out.push_back({Token::Punct, std::string(1, c), line, col});
            advance(1);
            continue;
        }
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::End, "", line, col});
    return out;
}

class Cursor {
public:
    explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& next() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size())
            ++pos_;
        return t;
    }
    bool at_end() const { return peek().kind == Token::End; }
    bool is(const std::string& p) const { return peek().kind != Token::End && peek().text == p; }
    bool is_punct(const std::string& p) const { return peek().kind == Token::Punct && peek().text == p; }
    bool is_newline() const { return peek().kind == Token::Newline; }
    bool is_word() const { return peek().kind == Token::Word; }

    bool accept(const std::string& p) {
        if (peek().kind == Token::Punct && peek().text == p) {
            next();
            return true;
        }
        return false;
    }
    void expect(const std::string& p) {
        if (!accept(p))
            fail("expected '" + p + "'");
    }
    std::string word(const std::string& what) {
        if (!is_word())
            fail("expected " + what);
        return next().text;
    }
    void skip_newlines() {
        while (is_newline())
            next();
    }
    void end_of_line() {
        if (!is_newline() && !at_end())
            fail("unexpected '" + peek().text + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const auto& t = peek();
        throw ParseError(t.line, t.column, msg + (t.kind == Token::End ? " at end of input" : ""));
    }
    [[noreturn]] void fail_at(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.column, msg); }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

inline bool is_integer(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

/// Optional sign, then digits or digits/digits.
inline std::optional<std::string> scalar_literal(Cursor& c) {
    if (!c.is_word() || !is_integer(c.peek().text))
        return std::nullopt;
    std::string s = c.next().text;
    if (c.is_punct("/")) {
        c.next();
        if (!c.is_word() || !is_integer(c.peek().text))
            c.fail("expected denominator");
        s += "/" + c.next().text;
    }
    return s;
}

inline int integer(Cursor& c, const std::string& what) {
    bool neg = c.accept("-");
    if (!neg)
        c.accept("+");
    if (!c.is_word() || !is_integer(c.peek().text))
        c.fail("expected " + what);
    const auto& t = c.next();
    try {
        int v = std::stoi(t.text);
        return neg ? -v : v;
    } catch (const std::exception&) {
        c.fail_at(t, "integer out of range");
    }
}

/// Linear combination of paths before the block is known.
template <class K>
struct RawElement {
    struct Term {
        K coeff;
        std::optional<Path> path;
        Token where;
    };
    std::vector<Term> terms;
};

} // namespace io

template <class K>
struct Document {
    AlgebraPtr<K> algebra;
    std::optional<std::uint64_t> characteristic;
    std::map<std::string, ProjComplex<K>> complexes;
    std::vector<std::string> complex_order;
    std::vector<Collection<K>> collections;

    const Collection<K>* find(const std::string& name) const {
        for (const auto& c : collections)
            if (c.name == name)
                return &c;
        return nullptr;
    }
    const Collection<K>* first(CollectionKind kind) const {
        for (const auto& c : collections)
            if (c.kind == kind)
                return &c;
        return nullptr;
    }
};

namespace io {

template <class K>
class Parser {
public:
    Parser(const std::string& text, AlgebraPtr<K> algebra, int resolution_bound)
        : c_(tokenize(text)), resolution_bound_(resolution_bound) {
        doc_.algebra = std::move(algebra);
    }

    Document<K> run() {
        enum class Section { None, Field, Vertices, Arrows, Relations, Bound } sec = Section::None;
        while (true) {
            c_.skip_newlines();
            if (c_.at_end())
                break;
            if (c_.is_punct("[") && c_.peek(1).kind == Token::Word && c_.peek(2).text == "]" &&
                section_name(c_.peek(1).text)) {
                const Token& start = c_.peek();
                c_.next();
                std::string s = c_.next().text;
                c_.next();
                c_.end_of_line();
                if (algebra_built_)
                    c_.fail_at(start, "algebra sections must precede complexes and collections");
                sec = s == "field" ? Section::Field
                      : s == "vertices" ? Section::Vertices
                      : s == "arrows" ? Section::Arrows
                      : s == "relations" ? Section::Relations
                                         : Section::Bound;
                has_algebra_sections_ = true;
                continue;
            }
            if (c_.is("complex") && c_.peek(1).kind == Token::Word) {
                sec = Section::None;
                parse_complex();
                continue;
            }
            if ((c_.is("silting") || c_.is("smc")) && c_.peek(1).kind == Token::Word && c_.peek(2).text == "=") {
                sec = Section::None;
                parse_collection();
                continue;
            }
            switch (sec) {
            case Section::Field: {
                const auto& t = c_.peek();
                int p = integer(c_, "characteristic");
                if (p < 0)
                    c_.fail_at(t, "characteristic must be non-negative");
                doc_.characteristic = static_cast<std::uint64_t>(p);
                c_.end_of_line();
                break;
            }
            case Section::Vertices:
                while (!c_.is_newline() && !c_.at_end()) {
                    const auto& t = c_.peek();
                    std::string v = c_.word("vertex id");
                    if (std::find(quiver_.vertices.begin(), quiver_.vertices.end(), v) != quiver_.vertices.end())
                        c_.fail_at(t, "duplicate vertex '" + v + "'");
                    quiver_.vertices.push_back(v);
                    c_.accept(",");
                }
                break;
            case Section::Arrows: {
                const auto& t = c_.peek();
                std::string name = c_.word("arrow id");
                c_.expect(":");
                int s = vertex("source vertex");
                c_.expect("->");
                int tg = vertex("target vertex");
                c_.end_of_line();
                if (quiver_.arrow_index(name) >= 0)
                    c_.fail_at(t, "duplicate arrow '" + name + "'");
                quiver_.arrows.push_back({name, s, tg});
                break;
            }
            case Section::Relations: {
                relation_lines_.push_back(c_.peek());
                auto raw = element();
                if (c_.accept("=")) {
                    const auto& z = c_.peek();
                    if (!c_.is_word() || z.text != "0")
                        c_.fail("expected 0 on the right-hand side");
                    c_.next();
                }
                c_.end_of_line();
                Relation<K> rel;
                for (const auto& term : raw.terms) {
                    if (!term.path)
                        c_.fail_at(term.where, "relation terms must be paths");
                    rel.terms.push_back({term.coeff, *term.path});
                }
                relations_.push_back(std::move(rel));
                break;
            }
            case Section::Bound: {
                const auto& t = c_.peek();
                bound_ = integer(c_, "nilpotency bound");
                if (*bound_ < 1)
                    c_.fail_at(t, "nilpotency bound must be positive");
                c_.end_of_line();
                break;
            }
            case Section::None:
                c_.fail("expected a section header, 'complex', 'silting' or 'smc'");
            }
        }
        if (!algebra_built_ && has_algebra_sections_)
            build_algebra(c_.peek());
        return std::move(doc_);
    }

private:
    static bool section_name(const std::string& s) {
        return s == "field" || s == "vertices" || s == "arrows" || s == "relations" || s == "bound";
    }

    int vertex(const std::string& what) {
        const Token at = c_.peek();
        auto name = c_.word(what);
        const auto& q = quiver();
        for (int v = 0; v < q.num_vertices(); ++v)
            if (q.vertices[static_cast<std::size_t>(v)] == name)
                return v;
        c_.fail_at(at, "unknown vertex '" + name + "'");
    }

    const Quiver& quiver() const { return doc_.algebra ? doc_.algebra->quiver() : quiver_; }

    void build_algebra(const Token& at) {
        algebra_built_ = true;
        if (!has_algebra_sections_) {
            if (!doc_.algebra)
                c_.fail_at(at, "no algebra: give an algebra file or [vertices]/[arrows] sections");
            return;
        }
        if (doc_.algebra)
            c_.fail_at(at, "algebra defined twice");
        if (quiver_.vertices.empty())
            c_.fail_at(at, "algebra has no vertices");
        if (!bound_)
            c_.fail_at(at, "missing [bound] section");
        try {
            doc_.algebra = PathAlgebra<K>::build(quiver_, relations_, *bound_);
        } catch (const Error& e) {
            const Token& where = relation_lines_.empty() ? at : relation_lines_.front();
            throw ParseError(where.line, where.column, e.what());
        }
    }

    void ensure_algebra(const Token& at) {
        if (!algebra_built_)
            build_algebra(at);
    }

    /// [sign] term (sign term)*, term = scalar | [scalar '*'] path
    RawElement<K> element() {
        RawElement<K> out;
        bool first = true;
        while (true) {
            const Token where = c_.peek();
            bool neg = false;
            if (c_.accept("-"))
                neg = true;
            else if (!first && !c_.accept("+"))
                break;
            else if (first)
                c_.accept("+");
            first = false;
            K coeff(1);
            bool has_scalar = false;
            if (auto s = scalar_literal(c_)) {
                if (c_.is_punct("*") || !c_.is_word()) {
                    try {
                        coeff = parse_scalar<K>(*s);
                    } catch (const Error& e) {
                        c_.fail_at(where, e.what());
                    }
                    has_scalar = true;
                } else {
                    c_.fail_at(where, "expected '*' after scalar");
                }
            }
            std::optional<Path> path;
            if (!has_scalar || c_.accept("*"))
                path = parse_path();
            if (neg)
                coeff = -coeff;
            out.terms.push_back({coeff, path, where});
        }
        if (out.terms.empty())
            c_.fail("expected an algebra element");
        return out;
    }

    Path parse_path() {
        const auto& q = quiver();
        std::vector<std::pair<std::string, Token>> words;
        do {
            const Token t = c_.peek();
            words.push_back({c_.word("path"), t});
        } while (c_.accept(";"));
        if (words.size() == 1) {
            const auto& [w, t] = words[0];
            if (q.arrow_index(w) < 0) {
                for (int v = 0; v < q.num_vertices(); ++v) {
                    const auto& name = q.vertices[static_cast<std::size_t>(v)];
                    if (w == "e_" + name || w == "e" + name)
                        return Path::trivial(v);
                }
            }
        }
        Path p;
        for (std::size_t i = 0; i < words.size(); ++i) {
            const auto& [w, t] = words[i];
            int a = q.arrow_index(w);
            if (a < 0)
                c_.fail_at(t, "unknown arrow '" + w + "'");
            const auto& arr = q.arrows[static_cast<std::size_t>(a)];
            if (i == 0)
                p.target = arr.target;
            else if (q.arrows[static_cast<std::size_t>(p.arrows.back())].source != arr.target)
                c_.fail_at(t, "arrows do not compose at '" + w + "'");
            p.arrows.push_back(a);
            p.source = arr.source;
        }
        return p;
    }

    Vec<K> resolve(const RawElement<K>& raw, int target, int source) {
        const auto& A = *doc_.algebra;
        Vec<K> e = A.zero();
        for (const auto& term : raw.terms) {
            Vec<K> x;
            if (!term.path) {
                if (target != source) {
                    if (is_zero(term.coeff))
                        continue;
                    c_.fail_at(term.where, "bare scalar in an off-diagonal entry");
                }
                x = A.idempotent_element(target);
            } else {
                if (term.path->target != target || term.path->source != source)
                    c_.fail_at(term.where, "entry not in e_" + A.quiver().vertices[static_cast<std::size_t>(target)] +
                                               " A e_" + A.quiver().vertices[static_cast<std::size_t>(source)]);
                x = A.normal_form(*term.path);
            }
            for (std::size_t k = 0; k < e.size(); ++k)
                e[k] += term.coeff * x[k];
        }
        return e;
    }

    void parse_complex() {
        const Token start = c_.next();
        ensure_algebra(start);
        const Token name_tok = c_.peek();
        std::string name = c_.word("complex name");
        if (doc_.complexes.count(name))
            c_.fail_at(name_tok, "complex '" + name + "' defined twice");
        c_.skip_newlines();
        c_.expect("{");
        std::map<int, std::vector<int>> terms;
        std::map<int, std::pair<Token, std::vector<std::vector<RawElement<K>>>>> diffs;
        while (true) {
            while (c_.is_newline() || c_.is_punct(";"))
                c_.next();
            if (c_.accept("}"))
                break;
            const Token kw = c_.peek();
            std::string w = c_.word("'deg' or 'd'");
            if (w == "deg") {
                int k = integer(c_, "degree");
                c_.expect(":");
                if (terms.count(k))
                    c_.fail_at(kw, "degree " + std::to_string(k) + " given twice");
                terms[k] = summands();
            } else if (w == "d") {
                int k = integer(c_, "degree");
                c_.expect(":");
                if (diffs.count(k))
                    c_.fail_at(kw, "differential " + std::to_string(k) + " given twice");
                diffs[k] = {kw, matrix()};
            } else {
                c_.fail_at(kw, "expected 'deg' or 'd'");
            }
            if (!c_.is_newline() && !c_.is_punct(";") && !c_.is_punct("}"))
                c_.fail("expected end of statement");
        }
        ProjComplex<K> X = zero_complex(doc_.algebra);
        X.label = name;
        if (!terms.empty()) {
            int lo = terms.begin()->first, hi = terms.rbegin()->first;
            X.lo = lo;
            for (int k = lo; k <= hi; ++k)
                X.terms.push_back(terms.count(k) ? terms[k] : std::vector<int>{});
            for (int k = lo; k < hi; ++k) {
                const auto& src = X.term(k);
                const auto& dst = X.term(k + 1);
                AlgMatrix<K> m(dst.size(), src.size(), doc_.algebra->dim());
                auto it = diffs.find(k);
                if (it != diffs.end()) {
                    const auto& [tok, rows] = it->second;
                    bool empty_ok = rows.empty() && (src.empty() || dst.empty());
                    if (!empty_ok && (rows.size() != dst.size() || (!rows.empty() && rows[0].size() != src.size())))
                        c_.fail_at(tok, "differential " + std::to_string(k) + " should be " +
                                            std::to_string(dst.size()) + "x" + std::to_string(src.size()));
                    for (std::size_t r = 0; r < rows.size(); ++r) {
                        if (rows[r].size() != src.size())
                            c_.fail_at(tok, "ragged matrix in differential " + std::to_string(k));
                        for (std::size_t cc = 0; cc < src.size(); ++cc)
                            m(r, cc) = resolve(rows[r][cc], dst[r], src[cc]);
                    }
                    diffs.erase(it);
                } else if (!src.empty() && !dst.empty()) {
                    c_.fail_at(name_tok, "missing differential in degree " + std::to_string(k));
                }
                X.diff.push_back(std::move(m));
            }
        }
        for (const auto& [k, v] : diffs)
            c_.fail_at(v.first, "differential " + std::to_string(k) + " leaves the support");
        X.trim();
        try {
            X.validate();
        } catch (const Error& e) {
            c_.fail_at(name_tok, e.what());
        }
        doc_.complexes[name] = std::move(X);
        doc_.complex_order.push_back(name);
    }

    std::vector<int> summands() {
        std::vector<int> out;
        if (c_.is_word() && c_.peek().text == "0") {
            c_.next();
            return out;
        }
        do {
            const Token t = c_.peek();
            std::string w = c_.word("projective");
            int v;
            if (w == "P" && c_.accept("(")) {
                v = vertex("vertex");
                c_.expect(")");
            } else if (w.size() > 1 && w[0] == 'P') {
                v = -1;
                const auto& q = quiver();
                for (int u = 0; u < q.num_vertices(); ++u)
                    if (q.vertices[static_cast<std::size_t>(u)] == w.substr(1))
                        v = u;
                if (v < 0)
                    c_.fail_at(t, "unknown projective '" + w + "'");
            } else {
                c_.fail_at(t, "expected P<vertex>");
            }
            int mult = 1;
            if (c_.accept("^")) {
                const auto& mt = c_.peek();
                mult = integer(c_, "multiplicity");
                if (mult < 0)
                    c_.fail_at(mt, "negative multiplicity");
            }
            for (int i = 0; i < mult; ++i)
                out.push_back(v);
        } while (c_.accept("+"));
        return out;
    }

    std::vector<std::vector<RawElement<K>>> matrix() {
        std::vector<std::vector<RawElement<K>>> rows;
        c_.expect("[");
        if (c_.accept("]"))
            return rows;
        rows.emplace_back();
        while (true) {
            rows.back().push_back(element());
            if (c_.accept(","))
                continue;
            if (c_.accept("|")) {
                rows.emplace_back();
                continue;
            }
            c_.expect("]");
            break;
        }
        return rows;
    }

    ProjComplex<K> item() {
        std::vector<ProjComplex<K>> parts{atom()};
        while (c_.accept("+"))
            parts.push_back(atom());
        if (parts.size() == 1)
            return parts[0];
        std::string label;
        for (const auto& p : parts)
            label += (label.empty() ? "" : "+") + p.label;
        auto X = direct_sum(parts, doc_.algebra);
        X.label = label;
        return X;
    }

    ProjComplex<K> atom() {
        const Token t = c_.peek();
        std::string w = c_.word("collection member");
        ProjComplex<K> X;
        if ((w == "proj" || w == "res") && c_.is_punct("(")) {
            c_.next();
            if (w == "res") {
                const Token s = c_.peek();
                if (c_.word("'simple'") != "simple")
                    c_.fail_at(s, "expected 'simple'");
            }
            int v = vertex("vertex");
            c_.expect(")");
            if (w == "proj") {
                X = stalk(doc_.algebra, v);
            } else {
                X = resolved_simple(doc_.algebra, v, resolution_bound_);
            }
        } else {
            auto it = doc_.complexes.find(w);
            if (it == doc_.complexes.end())
                c_.fail_at(t, "unknown complex '" + w + "'");
            X = it->second;
        }
        if (c_.accept("[")) {
            int n = integer(c_, "shift");
            c_.expect("]");
            X = shift(X, n);
        }
        return X;
    }

    void parse_collection() {
        const Token kw = c_.next();
        ensure_algebra(kw);
        const Token name_tok = c_.peek();
        std::string name = c_.word("collection name");
        for (const auto& col : doc_.collections)
            if (col.name == name)
                c_.fail_at(name_tok, "collection '" + name + "' defined twice");
        c_.expect("=");
        c_.expect("[");
        Collection<K> C{kw.text == "smc" ? CollectionKind::Smc : CollectionKind::Silting, name, {}};
        c_.skip_newlines();
        if (!c_.accept("]")) {
            while (true) {
                c_.skip_newlines();
                C.members.push_back(item());
                c_.skip_newlines();
                if (c_.accept(","))
                    continue;
                c_.expect("]");
                break;
            }
        }
        c_.end_of_line();
        if (C.members.empty())
            c_.fail_at(name_tok, "empty collection");
        doc_.collections.push_back(std::move(C));
    }

    Cursor c_;
    int resolution_bound_;
    Document<K> doc_;
    Quiver quiver_;
    std::vector<Relation<K>> relations_;
    std::vector<Token> relation_lines_;
    std::optional<int> bound_;
    bool has_algebra_sections_ = false;
    bool algebra_built_ = false;
};

} // namespace io

/// Parses a document; `algebra` supplies the ambient algebra when the text
/// itself has no algebra sections.
template <class K>
Document<K> parse_document(const std::string& text, AlgebraPtr<K> algebra = nullptr, int resolution_bound = 16) {
    return io::Parser<K>(text, std::move(algebra), resolution_bound).run();
}

template <class K>
AlgebraPtr<K> parse_algebra(const std::string& text) {
    auto doc = parse_document<K>(text);
    if (!doc.algebra)
        throw ParseError(1, 1, "no algebra sections");
    return doc.algebra;
}

/// The [field] entry without building anything; 0 when absent.
inline std::uint64_t peek_characteristic(const std::string& text) {
    io::Cursor c(io::tokenize(text));
    while (!c.at_end()) {
        if (c.is_punct("[") && c.peek(1).text == "field" && c.peek(2).text == "]") {
            c.next();
            c.next();
            c.next();
            c.skip_newlines();
            const auto& t = c.peek();
            int p = io::integer(c, "characteristic");
            if (p < 0)
                c.fail_at(t, "characteristic must be non-negative");
            return static_cast<std::uint64_t>(p);
        }
        c.next();
    }
    return 0;
}

} // namespace siltkit
