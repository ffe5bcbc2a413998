#pragma once

// Replayable certificates and the run report of the command-line tool.

#include "siltkit/io/render.hpp"

namespace siltkit {

enum class OutputFormat { Table, Structured };

struct RunConfig {
    std::optional<std::uint64_t> characteristic; // unset: take [field] from the algebra file
    std::uint64_t seed = 1;
    int closure_depth = 3;
    int window_lo = -5;
    int window_hi = 5;
    std::size_t formality_budget = 20000;
    OutputFormat format = OutputFormat::Table;

    void validate() const {
        if (closure_depth < 0)
            throw InvalidArgument("closure depth must be non-negative");
        if (window_lo > window_hi)
            throw InvalidArgument("empty window " + std::to_string(window_lo) + ".." + std::to_string(window_hi));
        if (formality_budget == 0)
            throw InvalidArgument("formality budget must be positive");
        if (characteristic && *characteristic != 0 && !PrimeField::is_prime(*characteristic))
            throw InvalidArgument("characteristic must be 0 or a prime, got " + std::to_string(*characteristic));
    }

    CheckOptions check_options() const {
        CheckOptions o;
        o.iso.seed = seed;
        o.closure_depth = closure_depth;
        return o;
    }
    KoszulOptions koszul_options() const {
        KoszulOptions o;
        o.window_lo = window_lo;
        o.window_hi = window_hi;
        o.formality_budget = formality_budget;
        return o;
    }
};

/// Parses "a..b".
inline std::pair<int, int> parse_window(const std::string& s) {
    auto p = s.find("..");
    if (p == std::string::npos)
        throw InvalidArgument("window must look like a..b, got '" + s + "'");
    try {
        std::size_t used1 = 0, used2 = 0;
        int a = std::stoi(s.substr(0, p), &used1);
        int b = std::stoi(s.substr(p + 2), &used2);
        if (used1 != p || used2 != s.size() - p - 2)
            throw InvalidArgument("");
        return {a, b};
    } catch (const std::exception&) {
        throw InvalidArgument("window must look like a..b, got '" + s + "'");
    }
}

struct Report {
    std::string command;
    std::string inputs_hash;
    std::vector<std::pair<std::string, Verdict>> verdicts;
    std::string tables;
    bool input_error = false;

    void verdict(const std::string& what, Verdict v) { verdicts.push_back({what, v}); }

    int exit_code() const {
        if (input_error)
            return 4;
        bool nc = false;
        for (const auto& [w, v] : verdicts) {
            if (v == Verdict::Fail)
                return 2;
            nc = nc || v == Verdict::NotCertified;
        }
        return nc ? 3 : 0;
    }
};

enum class CertificateKind { Silting, Smc, Pattern, Koszul };

inline std::string to_string(CertificateKind k) {
    switch (k) {
    case CertificateKind::Silting:
        return "silting";
    case CertificateKind::Smc:
        return "smc";
    case CertificateKind::Pattern:
        return "pattern";
    case CertificateKind::Koszul:
        return "koszul";
    }
    return "?";
}

inline CertificateKind certificate_kind(const std::string& s) {
    for (auto k : {CertificateKind::Silting, CertificateKind::Smc, CertificateKind::Pattern, CertificateKind::Koszul})
        if (to_string(k) == s)
            return k;
    throw InvalidArgument("unknown certificate kind '" + s + "'");
}

struct Certificate {
    std::string text;
    Verdict verdict = Verdict::Fail;
};

namespace detail {

template <class K>
Verdict certificate_body(Structured& s, CertificateKind kind, const std::vector<Collection<K>>& cols,
                         const RunConfig& cfg) {
    auto need = [&](std::size_t n) {
        if (cols.size() != n)
            throw InvalidArgument(to_string(kind) + " certificate needs " + std::to_string(n) + " collection(s)");
    };
    switch (kind) {
    case CertificateKind::Silting: {
        need(1);
        auto r = check_silting(cols[0], cfg.check_options());
        put_report(s, r, "silting");
        return r.verdict;
    }
    case CertificateKind::Smc: {
        need(1);
        auto r = check_smc(cols[0], cfg.check_options());
        put_report(s, r, "smc");
        return r.verdict;
    }
    case CertificateKind::Pattern: {
        need(2);
        auto c = pattern_table(cols[0], cols[1]);
        judge_pattern(c, cols[0].size(), cols[1].size());
        put_pattern(s, c);
        return c.verdict;
    }
    case CertificateKind::Koszul: {
        need(2);
        auto k = koszul_pair_check(cols[0], cols[1], cfg.koszul_options());
        put_report(s, k.report, "koszul");
        if (k.E)
            put_dg(s, *k.E, "E");
        if (k.E_shriek)
            put_dg(s, *k.E_shriek, "E!");
        return k.report.verdict;
    }
    }
    return Verdict::Fail;
}

template <class K>
std::string certificate_header(CertificateKind kind, const PathAlgebra<K>& A, const RunConfig& cfg) {
    Structured s;
    s.put("siltkit-certificate", 1);
    s.put("kind", to_string(kind));
    s.put("algebra-hash", algebra_hash(A));
    s.put("characteristic", static_cast<long long>(characteristic<K>()));
    s.put("seed", static_cast<long long>(cfg.seed));
    s.put("closure-depth", cfg.closure_depth);
    s.put("window", std::to_string(cfg.window_lo) + ".." + std::to_string(cfg.window_hi));
    s.put("formality-budget", static_cast<long long>(cfg.formality_budget));
    return s.str();
}

template <class K>
Certificate certificate_from_definitions(CertificateKind kind, const AlgebraPtr<K>& A, const RunConfig& cfg,
                                         const std::string& defs) {
    auto doc = parse_document<K>(defs, A);
    Structured s;
    s.raw(certificate_header(kind, *A, cfg));
    s.raw("begin-definitions");
    s.raw(defs);
    s.raw("end-definitions");
    Certificate c;
    c.verdict = certificate_body(s, kind, doc.collections, cfg);
    s.put("verdict", to_string(c.verdict));
    s.raw("end-certificate");
    c.text = s.str();
    return c;
}

} // namespace detail

/// Serializes the collections, re-reads them and computes the certificate
/// from the re-read values, so that replay sees exactly the same input.
template <class K>
Certificate emit_certificate(CertificateKind kind, const std::vector<Collection<K>>& cols, const RunConfig& cfg) {
    if (cols.empty())
        throw InvalidArgument("certificate without collections");
    std::string defs;
    for (const auto& C : cols)
        defs += collection_literal(C);
    return detail::certificate_from_definitions(kind, cols[0].algebra(), cfg, defs);
}

struct ReplayResult {
    std::size_t certificates = 0;
    std::size_t reproduced = 0;
    std::vector<std::string> problems;
    bool ok() const { return certificates > 0 && reproduced == certificates && problems.empty(); }
};

namespace detail {

inline std::vector<std::string> split_certificates(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (cur.empty() && line.empty())
            continue;
        cur += line + "\n";
        if (line == "end-certificate") {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

inline std::map<std::string, std::string> header_fields(const std::string& block, std::string& defs) {
    std::map<std::string, std::string> f;
    std::istringstream in(block);
    std::string line;
    bool in_defs = false;
    while (std::getline(in, line)) {
        if (line == "begin-definitions") {
            in_defs = true;
            continue;
        }
        if (line == "end-definitions")
            break;
        if (in_defs) {
            defs += line + "\n";
            continue;
        }
        auto p = line.find(": ");
        if (p != std::string::npos)
            f[line.substr(0, p)] = line.substr(p + 2);
    }
    return f;
}

} // namespace detail

/// Recomputes every certificate in `text` from its definitions and compares
/// the output byte for byte.
template <class K>
ReplayResult replay_certificates(const std::string& text, const AlgebraPtr<K>& A) {
    ReplayResult res;
    auto blocks = detail::split_certificates(text);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        ++res.certificates;
        std::string where = "certificate " + std::to_string(b + 1) + ": ";
        std::string defs;
        auto f = detail::header_fields(blocks[b], defs);
        try {
            if (f["siltkit-certificate"] != "1")
                throw InvalidArgument("not a certificate");
            if (f["algebra-hash"] != algebra_hash(*A)) {
                res.problems.push_back(where + "algebra hash mismatch");
                continue;
            }
            if (f["characteristic"] != std::to_string(characteristic<K>())) {
                res.problems.push_back(where + "characteristic mismatch");
                continue;
            }
            RunConfig cfg;
            cfg.seed = std::stoull(f.at("seed"));
            cfg.closure_depth = std::stoi(f.at("closure-depth"));
            std::tie(cfg.window_lo, cfg.window_hi) = parse_window(f.at("window"));
            cfg.formality_budget = std::stoull(f.at("formality-budget"));
            auto again = detail::certificate_from_definitions(certificate_kind(f.at("kind")), A, cfg, defs);
            if (again.text == blocks[b]) {
                ++res.reproduced;
            } else {
                std::istringstream x(again.text), y(blocks[b]);
                std::string lx, ly;
                int line = 0;
                while (true) {
                    ++line;
                    bool gx = static_cast<bool>(std::getline(x, lx)), gy = static_cast<bool>(std::getline(y, ly));
                    if (!gx && !gy)
                        break;
                    if (!gx || !gy || lx != ly) {
                        res.problems.push_back(where + "differs at line " + std::to_string(line) + ": recorded '" +
                                               (gy ? ly : "") + "', recomputed '" + (gx ? lx : "") + "'");
                        break;
                    }
                }
            }
        } catch (const ParseError& e) {
            res.problems.push_back(where + e.what());
        } catch (const std::out_of_range&) {
            res.problems.push_back(where + "missing header field");
        } catch (const std::invalid_argument&) {
            res.problems.push_back(where + "malformed header field");
        } catch (const Error& e) {
            res.problems.push_back(where + e.what());
        }
    }
    return res;
}

} // namespace siltkit
