#include "siltkit/siltkit.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace siltkit;

namespace {

struct InputError : Error {
    explicit InputError(const std::string& w) : Error(w) {}
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw InputError("cannot read '" + path + "'");
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

struct Args {
    std::string command;
    RunConfig cfg;
    bool depth_given = false;
    int depth = 3;
    std::string out_dir;

    std::string algebra_path;
    std::vector<std::string> files;
    std::string name;
    std::string kind; // verify: silting | smc | pattern
    std::vector<MutationStep> script;
    bool force = false;
};

class Runner {
public:
    explicit Runner(const Args& a) : a_(a) {}

    template <class K>
    int run() {
        std::string alg_text = slurp(a_.algebra_path);
        std::string inputs = alg_text;
        AlgebraPtr<K> A;
        try {
            A = parse_algebra<K>(alg_text);
        } catch (const ParseError& e) {
            throw ParseError(e.line(), e.column(), a_.algebra_path + ": " + e.message());
        }
        std::vector<Document<K>> docs;
        for (const auto& f : a_.files) {
            std::string t = slurp(f);
            inputs += "\n" + t;
            if (a_.command == "replay")
                continue;
            try {
                docs.push_back(parse_document<K>(t, A));
            } catch (const ParseError& e) {
                throw ParseError(e.line(), e.column(), f + ": " + e.message());
            }
        }
        report_.command = a_.command;
        report_.inputs_hash = hex64(fnv1a64(inputs));
        out_.put("command", a_.command);
        out_.put("inputs-hash", report_.inputs_hash);
        out_.put("characteristic", static_cast<long long>(characteristic<K>()));
        out_.put("seed", static_cast<long long>(a_.cfg.seed));

        if (a_.command == "verify")
            verify(A, docs);
        else if (a_.command == "mutate")
            mutate(A, docs);
        else if (a_.command == "dgend")
            dgend(A, docs);
        else if (a_.command == "koszul")
            koszul(A, docs);
        else if (a_.command == "graph")
            graph(A);
        else if (a_.command == "replay")
            replay(A, slurp(a_.files.at(0)));
        return finish();
    }

private:
    template <class K>
    const Collection<K>& pick(const std::vector<Document<K>>& docs, CollectionKind kind, const std::string& what) {
        for (const auto& d : docs)
            if (auto c = a_.name.empty() ? d.first(kind) : d.find(a_.name); c && c->kind == kind)
                return *c;
        throw InputError("no " + what + " collection" + (a_.name.empty() ? "" : " named '" + a_.name + "'") +
                         " in the input");
    }

    template <class K>
    std::pair<Collection<K>, Collection<K>> pair(const std::vector<Document<K>>& docs) {
        const Collection<K>* s = nullptr;
        const Collection<K>* t = nullptr;
        for (const auto& d : docs) {
            if (!s)
                s = d.first(CollectionKind::Silting);
            if (!t)
                t = d.first(CollectionKind::Smc);
        }
        if (!s || !t)
            throw InputError("a pair file needs one silting and one smc collection");
        if (s->size() != t->size())
            throw InputError("collections of different sizes");
        return {*s, *t};
    }

    template <class K>
    void certify(CertificateKind kind, const std::vector<Collection<K>>& cols) {
        certificates_ += emit_certificate(kind, cols, a_.cfg).text;
    }

    void verdict(const std::string& what, Verdict v) {
        report_.verdict(what, v);
        out_.put("verdict." + what, to_string(v));
    }

    template <class K>
    void verify(const AlgebraPtr<K>&, const std::vector<Document<K>>& docs) {
        auto opt = a_.cfg.check_options();
        if (a_.kind == "silting") {
            const auto& S = pick(docs, CollectionKind::Silting, "silting");
            auto r = check_silting(S, opt);
            table_ += render_collection(S) + render_report(r);
            put_report(out_, r, "silting");
            verdict("silting", r.verdict);
            certify<K>(CertificateKind::Silting, {S});
        } else if (a_.kind == "smc") {
            const auto& T = pick(docs, CollectionKind::Smc, "smc");
            auto r = check_smc(T, opt);
            table_ += render_collection(T) + render_report(r);
            put_report(out_, r, "smc");
            verdict("smc", r.verdict);
            certify<K>(CertificateKind::Smc, {T});
        } else {
            auto [S, T] = pair(docs);
            auto c = pattern_table(S, T);
            judge_pattern(c, S.size(), T.size());
            table_ += render_collection(S) + render_collection(T) + render_pattern_table(c, S, T);
            put_pattern(out_, c);
            verdict("pattern", c.verdict);
            certify<K>(CertificateKind::Pattern, {S, T});
        }
    }

    template <class K>
    void mutate(const AlgebraPtr<K>&, const std::vector<Document<K>>& docs) {
        auto [S, T] = pair(docs);
        auto opt = a_.cfg.check_options();
        if (a_.script.empty())
            throw InputError("no mutation steps (use --at N --left|--right)");
        for (const auto& st : a_.script)
            if (st.index >= S.size())
                throw InputError("mutation index " + std::to_string(st.index + 1) + " out of range");
        if (!a_.force) {
            auto rs = check_silting(S, opt);
            auto rt = check_smc(T, opt);
            auto c = pattern_table(S, T);
            judge_pattern(c, S.size(), T.size());
            if (!rs.passed() || !rt.passed() || c.verdict != Verdict::Pass) {
                table_ += "input pair is not certified; rerun with --force to mutate anyway\n";
                table_ += render_report(rs) + render_report(rt) + render_pattern_table(c, S, T);
                verdict("input-silting", rs.verdict);
                verdict("input-smc", rt.verdict);
                verdict("input-pattern", c.verdict);
                return;
            }
        }
        PipelineResult<K> res;
        try {
            res = wt_pipeline(S, T, a_.script, opt);
        } catch (const StepFailed& e) {
            table_ += std::string(e.what()) + "\n" + render_report(e.report());
            out_.put("failed-step", static_cast<long long>(e.step()));
            put_report(out_, e.report(), "step");
            verdict("step-" + std::to_string(e.step()), Verdict::Fail);
            return;
        }
        std::string steps;
        for (const auto& st : a_.script)
            steps += (steps.empty() ? "" : " ") + std::to_string(st.index + 1) + (st.side == Side::Left ? "L" : "R");
        table_ += "script: " + steps + "\n" + render_collection(res.silting) + render_collection(res.smc);
        out_.put("script", steps);
        out_.raw(collection_literal(res.silting));
        out_.raw(collection_literal(res.smc));
        for (std::size_t i = 0; i < res.certificates.size(); ++i)
            verdict("pattern-after-step-" + std::to_string(i), res.certificates[i].verdict);
        auto iso = a_.cfg.check_options().iso;
        auto same_s = collections_isomorphic(res.silting, S, iso);
        auto same_t = collections_isomorphic(res.smc, T, iso);
        auto word = [](Tri t) { return t == Tri::True ? "yes" : t == Tri::False ? "no" : "inconclusive"; };
        table_ += std::string("isomorphic to the input pair: ") + word(same_s) + " / " + word(same_t) + "\n";
        out_.put("same-as-input.silting", word(same_s));
        out_.put("same-as-input.smc", word(same_t));
        certify<K>(CertificateKind::Pattern, {res.silting, res.smc});
        result_pair_ = collection_literal(res.silting) + collection_literal(res.smc);
    }

    template <class K>
    void dgend(const AlgebraPtr<K>& A, const std::vector<Document<K>>& docs) {
        std::optional<Collection<K>> C;
        if (a_.name == "silting-std")
            C = standard_silting(A);
        else if (a_.name == "smc-std")
            C = standard_smc(A);
        for (const auto& d : docs)
            if (!C)
                if (auto c = d.find(a_.name))
                    C = *c;
        if (!C)
            throw InputError("unknown collection '" + a_.name + "'");
        auto E = dg_end(*C);
        table_ += render_collection(*C) + render_dg_table(E);
        put_dg(out_, E, "E");
        auto msg = E.check_axioms();
        verdict("dg-axioms", msg.empty() ? Verdict::Pass : Verdict::Fail);
        if (!msg.empty())
            table_ += "dg axioms violated: " + msg + "\n";
    }

    template <class K>
    void koszul(const AlgebraPtr<K>&, const std::vector<Document<K>>& docs) {
        auto [S, T] = pair(docs);
        auto k = koszul_pair_check(S, T, a_.cfg.koszul_options());
        table_ += render_collection(S) + render_collection(T);
        if (k.E)
            table_ += "E = " + render_dg_table(*k.E);
        if (k.E_shriek)
            table_ += "E! = " + render_dg_table(*k.E_shriek);
        if (k.dual_of_E)
            table_ += "Koszul dual of E:\n" + render_dg_table(*k.dual_of_E);
        if (k.dual_of_E_shriek)
            table_ += "Koszul dual of E!:\n" + render_dg_table(*k.dual_of_E_shriek);
        table_ += render_report(k.report);
        put_report(out_, k.report, "koszul");
        verdict("koszul", k.report.verdict);
        certify<K>(CertificateKind::Koszul, {S, T});
    }

    template <class K>
    void graph(const AlgebraPtr<K>& A) {
        int depth = a_.depth_given ? a_.depth : 2;
        const RunConfig& cfg = a_.cfg;
        auto g = mutation_graph(A, cfg.window_lo, cfg.window_hi, depth, cfg.check_options());
        std::ostringstream o;
        o << "nodes: " << g.nodes.size() << ", edges: " << g.edges.size() << ", window " << cfg.window_lo << ".."
          << cfg.window_hi << ", depth " << depth << "\n";
        out_.put("nodes", static_cast<long long>(g.nodes.size()));
        out_.put("edges", static_cast<long long>(g.edges.size()));
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            const auto& n = g.nodes[i];
            std::string ss, ts;
            for (const auto& X : n.silting.members)
                ss += (ss.empty() ? "" : ", ") + describe_complex(X);
            for (const auto& X : n.smc.members)
                ts += (ts.empty() ? "" : ", ") + describe_complex(X);
            o << "node " << i << " (depth " << n.depth << ", pattern " << to_string(n.pattern) << ")\n"
              << "  silting: " << ss << "\n  smc:     " << ts << "\n";
            out_.put("node." + std::to_string(i), "depth=" + std::to_string(n.depth) + " pattern=" +
                                                      to_string(n.pattern) + " silting={" + ss + "} smc={" + ts + "}");
            verdict("pattern-node-" + std::to_string(i), n.pattern);
        }
        for (const auto& e : g.edges) {
            std::string tag = std::string(e.side == Side::Left ? "L" : "R") + std::to_string(e.index + 1);
            o << "edge " << e.from << " -" << tag << "-> " << e.to << "\n";
            out_.put("edge", std::to_string(e.from) + " " + tag + " " + std::to_string(e.to));
        }
        if (g.inconclusive)
            o << "isomorphism test inconclusive for some node pair\n";
        verdict("iso-dedup", g.inconclusive ? Verdict::NotCertified : Verdict::Pass);
        table_ += o.str();
    }

    template <class K>
    void replay(const AlgebraPtr<K>& A, const std::string& text) {
        auto r = replay_certificates<K>(text, A);
        table_ += "certificates: " + std::to_string(r.certificates) + ", reproduced: " + std::to_string(r.reproduced) +
                  "\n";
        for (const auto& p : r.problems)
            table_ += "  " + p + "\n";
        out_.put("certificates", static_cast<long long>(r.certificates));
        out_.put("reproduced", static_cast<long long>(r.reproduced));
        for (const auto& p : r.problems)
            out_.put("problem", p);
        verdict("replay", r.ok() ? Verdict::Pass : Verdict::Fail);
    }

    int finish() {
        int code = report_.exit_code();
        out_.put("exit-code", code);
        if (a_.cfg.format == OutputFormat::Structured)
            std::cout << out_.str();
        else {
            std::cout << table_;
            std::cout << "exit code " << code << "\n";
        }
        if (!a_.out_dir.empty()) {
            std::filesystem::create_directories(a_.out_dir);
            auto write = [&](const std::string& file, const std::string& text) {
                std::ofstream f(std::filesystem::path(a_.out_dir) / file, std::ios::binary);
                if (!f)
                    throw InputError("cannot write to '" + a_.out_dir + "'");
                f << text;
            };
            write(a_.command + ".report", out_.str());
            if (!certificates_.empty())
                write(a_.command + ".cert", certificates_);
            if (!result_pair_.empty())
                write("result.pair", result_pair_);
        }
        return code;
    }

    const Args& a_;
    Report report_;
    Structured out_;
    std::string table_;
    std::string certificates_;
    std::string result_pair_;
};

/// --at/--then open a step, the next --left/--right fixes its side.
std::vector<MutationStep> script_from_argv(int argc, char** argv) {
    std::vector<MutationStep> out;
    bool open = false;
    for (int i = 1; i < argc; ++i) {
        std::string s = argv[i];
        std::string value;
        bool step = false;
        for (const std::string flag : {"--at", "--then"}) {
            if (s == flag && i + 1 < argc) {
                value = argv[++i];
                step = true;
            } else if (s.rfind(flag + "=", 0) == 0) {
                value = s.substr(flag.size() + 1);
                step = true;
            }
        }
        if (step) {
            if (open)
                throw InputError("mutation step without --left or --right");
            int k = 0;
            try {
                k = std::stoi(value);
            } catch (const std::exception&) {
                throw InputError("mutation index must be an integer, got '" + value + "'");
            }
            if (k < 1)
                throw InputError("mutation indices start at 1");
            out.push_back({static_cast<std::size_t>(k - 1), Side::Left});
            open = true;
        } else if (s == "--left" || s == "--right") {
            if (!open)
                throw InputError(s + " without a preceding --at or --then");
            out.back().side = s == "--left" ? Side::Left : Side::Right;
            open = false;
        }
    }
    if (open)
        throw InputError("mutation step without --left or --right");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"siltkit: silting and simple-minded collections, their mutations and dg Koszul duals"};
    app.require_subcommand(1);
    app.fallthrough();
    Args a;
    std::optional<std::uint64_t> chr;
    std::string window, format = "table";
    app.add_option("--char", chr, "field characteristic (0 or a prime); default from the algebra file");
    app.add_option("--seed", a.cfg.seed, "seed of the randomized isomorphism test");
    auto* depth = app.add_option("--depth", a.depth, "closure-search depth; for graph, the BFS depth");
    app.add_option("--window", window, "Koszul window, or shift window for graph, as a..b");
    app.add_option("--formality-budget", a.cfg.formality_budget, "search budget for formality witnesses");
    app.add_option("--format", format, "table or structured")->check(CLI::IsMember({"table", "structured"}));
    app.add_option("--out", a.out_dir, "directory for reports and certificates");

    auto* verify = app.add_subcommand("verify", "check a silting collection, an smc, or the Hom pattern of a pair");
    auto* vs = verify->add_flag("--silting", "verify a silting collection");
    auto* vm = verify->add_flag("--smc", "verify a simple-minded collection");
    auto* vp = verify->add_flag("--pattern", "verify the Hom pattern of a pair");
    verify->add_option("--name", a.name, "collection to verify (default: the first of its kind)");
    verify->add_option("algebra", a.algebra_path)->required();
    verify->add_option("file", a.files)->required()->expected(1);

    auto* mutate = app.add_subcommand("mutate", "mutate a pair in lockstep");
    std::vector<int> at, then;
    int lefts = 0, rights = 0;
    mutate->add_option("--at", at, "index of the first mutation (1-based)");
    mutate->add_option("--then", then, "index of a further mutation");
    mutate->add_flag("--left", lefts, "left mutation at the preceding index");
    mutate->add_flag("--right", rights, "right mutation at the preceding index");
    mutate->add_flag("--force", a.force, "skip certification of the input pair");
    mutate->add_option("algebra", a.algebra_path)->required();
    mutate->add_option("pair", a.files)->required()->expected(1);

    auto* dgend = app.add_subcommand("dgend", "dg endomorphism algebra of a collection");
    std::vector<std::string> dg_args;
    dgend->add_option("algebra", a.algebra_path)->required();
    dgend->add_option("inputs", dg_args, "collection files, then the collection name (silting-std, smc-std built in)")
        ->required();

    auto* koszul = app.add_subcommand("koszul", "Koszul duality check for a pair");
    koszul->add_option("algebra", a.algebra_path)->required();
    koszul->add_option("pair", a.files)->required()->expected(1);

    auto* graph = app.add_subcommand("graph", "silting mutation graph from the standard pair");
    graph->add_option("algebra", a.algebra_path)->required();

    auto* replay = app.add_subcommand("replay", "recompute certificates and compare");
    replay->add_option("algebra", a.algebra_path)->required();
    replay->add_option("certificate", a.files)->required()->expected(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 4;
    }

    try {
        a.command = app.get_subcommands().front()->get_name();
        a.cfg.characteristic = chr;
        a.depth_given = depth->count() > 0;
        if (a.depth_given && a.command != "graph")
            a.cfg.closure_depth = a.depth;
        if (a.depth_given && a.depth < 0)
            throw InputError("depth must be non-negative");
        if (!window.empty())
            std::tie(a.cfg.window_lo, a.cfg.window_hi) = parse_window(window);
        else if (a.command == "graph")
            std::tie(a.cfg.window_lo, a.cfg.window_hi) = std::pair{-1, 1};
        a.cfg.format = format == "structured" ? OutputFormat::Structured : OutputFormat::Table;
        a.cfg.validate();
        if (a.command == "verify") {
            int n = static_cast<int>(vs->count() > 0) + static_cast<int>(vm->count() > 0) +
                    static_cast<int>(vp->count() > 0);
            if (n != 1)
                throw InputError("verify needs exactly one of --silting, --smc, --pattern");
            a.kind = vs->count() ? "silting" : vm->count() ? "smc" : "pattern";
        }
        if (a.command == "mutate")
            a.script = script_from_argv(argc, argv);
        if (a.command == "dgend") {
            a.name = dg_args.back();
            a.files.assign(dg_args.begin(), dg_args.end() - 1);
        }

        std::uint64_t p = a.cfg.characteristic ? *a.cfg.characteristic : peek_characteristic(slurp(a.algebra_path));
        a.cfg.characteristic = p;
        a.cfg.validate();
        Runner r(a);
        if (p == 0)
            return r.run<Rational>();
        PrimeField::Scope scope(p);
        return r.run<PrimeField>();
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 4;
    } catch (const InvalidArgument& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const UnknownVertex& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const PatternFailed& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const MutationNotVerified& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "not certified: " << e.what() << "\n";
        return 3;
    }
}
