#include "microtter/microtter.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace microtter;

int run_prove(const std::string& path, const std::vector<std::string>& set_flags,
              const std::vector<std::string>& clear_flags, std::optional<std::uint32_t> max_weight,
              std::optional<std::uint32_t> ratio, std::optional<std::uint32_t> max_mem,
              std::optional<std::uint32_t> max_seconds,
              std::optional<std::uint64_t> max_generated) {
    ParsedInput input = parse(corpus::read_file(path), path);
    auto flag_ref = [&](ProverOptions& o, const std::string& name) -> bool* {
        if (name == "knuth_bendix") return &o.knuth_bendix;
        if (name == "ur_res") return &o.ur_res;
        if (name == "unit_deletion") return &o.unit_deletion;
        if (name == "para_from_units_only") return &o.para_from_units_only;
        if (name == "para_into_units_only") return &o.para_into_units_only;
        if (name == "bird_print") return &o.bird_print;
        return nullptr;
    };
    for (const std::string& f : set_flags) {
        bool* p = flag_ref(input.options, f);
        if (!p) {
            std::cerr << "unknown flag '" << f << "'\n";
            return 3;
        }
        *p = true;
    }
    for (const std::string& f : clear_flags) {
        bool* p = flag_ref(input.options, f);
        if (!p) {
            std::cerr << "unknown flag '" << f << "'\n";
            return 3;
        }
        *p = false;
    }
    if (max_weight) input.options.max_weight = *max_weight;
    if (ratio) input.options.pick_given_ratio = *ratio;
    if (max_mem) input.options.max_retained = *max_mem;
    if (max_seconds) input.options.max_seconds = *max_seconds;
    if (max_generated) input.options.max_generated = *max_generated;

    Outcome outcome = saturate(input);
    std::cout << render_run_output(outcome, *input.signature, input.options);
    return outcome.exit_status();
}

int run_check(const std::string& path) {
    ParsedProof proof = parse_proof(corpus::read_file(path));
    if (proof.lines.empty()) {
        std::cerr << "no proof lines found in " << path << "\n";
        return 3;
    }
    CheckResult result = check_proof(proof.lines, *proof.signature);
    if (result.valid) {
        std::cout << "proof Valid (" << proof.lines.size() << " lines)\n";
        return 0;
    }
    std::cout << "proof Invalid at line " << result.line << ": " << result.reason << "\n";
    return 1;
}

int run_normalize(const std::string& term_text, const std::string& system, std::uint32_t cap) {
    auto sig = std::make_shared<Signature>();
    oracle::RuleSet rules =
        system == "trc" ? oracle::RuleSet::trc(*sig) : oracle::RuleSet::trcstar(*sig);
    Term t = parse_term(term_text, *sig);
    if (!t.is_ground()) {
        std::cerr << "normalize expects a ground term\n";
        return 3;
    }
    oracle::NormalizeResult n = oracle::normalize(t, rules, cap);
    if (n.capped) {
        std::cout << "step cap exceeded after " << n.steps << " rewrites; last term:\n"
                  << bird_print(n.term, *sig) << "\n";
        return 1;
    }
    std::cout << bird_print(n.term, *sig) << "\n";
    return 0;
}

int run_verify(const std::string& problem_name, const std::string& answer_text,
               const std::string& problems_dir) {
    corpus::Problem problem = corpus::load_problem(problem_name, problems_dir);
    Term answer = parse_term(answer_text, *problem.input.signature);
    if (!answer.is_ground()) {
        std::cerr << "verify expects a ground answer term\n";
        return 3;
    }
    oracle::AnswerVerdict v = corpus::verify_answer(problem, answer);
    switch (v) {
    case oracle::AnswerVerdict::verified: std::cout << "Verified\n"; return 0;
    case oracle::AnswerVerdict::refuted: std::cout << "Refuted\n"; return 1;
    case oracle::AnswerVerdict::unknown: std::cout << "Unknown (cap hit)\n"; return 2;
    }
    return 2;
}

int run_corpus_cmd(const std::string& problems_dir, bool include_long, double budget_scale,
                   const std::string& filter) {
    corpus::CorpusOptions opts;
    opts.include_long = include_long;
    opts.budget_scale = budget_scale;
    opts.filter = filter;
    std::vector<corpus::Report> reports = corpus::run_corpus(problems_dir, opts);
    std::cout << corpus::render_report(reports);
    for (const corpus::Report& r : reports)
        if (r.ran && !r.pass) return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"microtter: a compact saturation prover for the TRC combinator systems"};
    app.require_subcommand(1);

    std::string path, term_text, system = "trcstar", problems_dir = "problems";
    std::string problem_name, answer_text, filter;
    std::vector<std::string> set_flags, clear_flags;
    std::optional<std::uint32_t> max_weight, ratio, max_mem, max_seconds;
    std::optional<std::uint64_t> max_generated;
    std::uint32_t cap = 10000;
    bool include_long = false;
    double budget_scale = 1.0;

    CLI::App* prove = app.add_subcommand("prove", "run the prover on an input file");
    prove->add_option("file", path, "input file")->required();
    prove->add_option("--set", set_flags, "enable a flag (repeatable)");
    prove->add_option("--clear", clear_flags, "disable a flag (repeatable)");
    prove->add_option("--max-weight", max_weight, "override max_weight");
    prove->add_option("--pick-given-ratio", ratio, "override pick_given_ratio");
    prove->add_option("--max-mem", max_mem, "override max_mem (retained clauses)");
    prove->add_option("--max-seconds", max_seconds, "wall clock limit");
    prove->add_option("--max-generated", max_generated, "generated clause limit");

    CLI::App* check = app.add_subcommand("check", "replay a proof listing");
    check->add_option("file", path, "proof file (prover output)")->required();

    CLI::App* normalize = app.add_subcommand("normalize", "oracle normal form of a term");
    normalize->add_option("term", term_text, "term, e.g. \"abst abst k c1 c2\"")->required();
    normalize->add_option("--system", system, "trc or trcstar")
        ->check(CLI::IsMember({"trc", "trcstar"}));
    normalize->add_option("--cap", cap, "rewrite step cap");

    CLI::App* verify = app.add_subcommand("verify", "oracle-check an answer for a problem");
    verify->add_option("problem", problem_name, "problem name")->required();
    verify->add_option("answer", answer_text, "answer term")->required();
    verify->add_option("--problems-dir", problems_dir, "problem file directory");

    CLI::App* corpus_cmd = app.add_subcommand("corpus", "run the bundled problems");
    corpus_cmd->add_option("--problems-dir", problems_dir, "problem file directory");
    corpus_cmd->add_flag("--long", include_long, "include the long-running full F-search");
    corpus_cmd->add_option("--budget-scale", budget_scale, "scale clause/time budgets");
    corpus_cmd->add_option("--only", filter, "run a single problem by name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (prove->parsed())
            return run_prove(path, set_flags, clear_flags, max_weight, ratio, max_mem,
                             max_seconds, max_generated);
        if (check->parsed()) return run_check(path);
        if (normalize->parsed()) return run_normalize(term_text, system, cap);
        if (verify->parsed()) return run_verify(problem_name, answer_text, problems_dir);
        if (corpus_cmd->parsed())
            return run_corpus_cmd(problems_dir, include_long, budget_scale, filter);
    } catch (const microtter::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const microtter::arity_error& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 3;
}
