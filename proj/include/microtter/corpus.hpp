#pragma once

#include "microtter/checker.hpp"
#include "microtter/oracle.hpp"
#include "microtter/saturation.hpp"

#include <fstream>
#include <iomanip>

namespace microtter::corpus {

enum class Expectation {
    answer_f,      // $ans term must satisfy t x y = x x under the oracle
    answer_s,      // $ans term checked against t = eq pair(k t, k p2)
    false_derived, // refutation: the $F clause
};

struct Budget {
    std::uint64_t max_clauses; // highest clause id at success
    std::uint32_t max_seconds;
};

struct ProblemSpec {
    const char* name;
    const char* file;
    Expectation expected;
    Budget budget;
    bool long_running;
    std::uint32_t paper_clauses;
    double paper_seconds;
};

inline const std::vector<ProblemSpec>& registry() {
    static const std::vector<ProblemSpec> problems = {
        {"f_reduced", "f_reduced.in", Expectation::answer_f, {10000, 10}, false, 111, 0.75},
        {"f_full", "f_full.in", Expectation::answer_f, {500000, 600}, true, 22461, 378.27},
        {"s_full", "s_full.in", Expectation::answer_s, {200000, 120}, false, 3831, 28.79},
        {"s_reduced", "s_reduced.in", Expectation::answer_s, {200000, 120}, false, 4003, 34.19},
        {"contradiction", "contradiction.in", Expectation::false_derived, {5000, 5}, false, 84,
         0.31},
        {"prop1b", "prop1b.in", Expectation::false_derived, {8600, 60}, false, 430, 6.27},
        {"prop2a", "prop2a.in", Expectation::false_derived, {12760, 60}, false, 638, 4.66},
        {"prop2b", "prop2b.in", Expectation::false_derived, {2080, 60}, false, 104, 1.11},
        {"prop2c", "prop2c.in", Expectation::false_derived, {1100, 60}, false, 55, 0.53},
    };
    return problems;
}

class unknown_problem : public std::runtime_error {
public:
    explicit unknown_problem(const std::string& name)
        : std::runtime_error("unknown problem '" + name + "'") {}
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Problem {
    ProblemSpec spec;
    ParsedInput input;
};

inline const ProblemSpec& find_spec(std::string_view name) {
    for (const ProblemSpec& p : registry())
        if (name == p.name) return p;
    throw unknown_problem(std::string(name));
}

inline Problem load_problem(std::string_view name, const std::string& problems_dir) {
    const ProblemSpec& spec = find_spec(name);
    std::string path = problems_dir + "/" + spec.file;
    return Problem{spec, parse(read_file(path), path)};
}

/// First $ans argument of the success clause, if any.
inline std::optional<Term> extract_answer(const Clause& success, const Signature& sig) {
    for (const Literal& l : success.literals)
        if (is_ans_literal(l, sig) && !l.args.empty()) return l.args[0];
    return std::nullopt;
}

inline oracle::AnswerVerdict verify_answer(const Problem& problem, const Term& answer) {
    Signature& sig = *problem.input.signature;
    switch (problem.spec.expected) {
    case Expectation::answer_f: return oracle::verify_f_answer(answer, sig);
    case Expectation::answer_s: return oracle::verify_s_answer(answer, sig);
    case Expectation::false_derived: return oracle::AnswerVerdict::unknown;
    }
    return oracle::AnswerVerdict::unknown;
}

struct Report {
    std::string name;
    bool ran = false;
    OutcomeKind kind = OutcomeKind::limit_reached;
    std::uint64_t clauses = 0;   // highest assigned id
    std::uint64_t generated = 0;
    double seconds = 0.0;
    bool pass = false;
    std::string answer;
    std::string notes;
};

struct CorpusOptions {
    bool include_long = false;
    double budget_scale = 1.0;
    std::string filter; // run only this problem when nonempty
};

inline Report run_problem(const Problem& problem, double budget_scale = 1.0) {
    Report r;
    r.name = problem.spec.name;
    r.ran = true;

    ParsedInput input = problem.input;
    std::uint32_t budget_seconds =
        static_cast<std::uint32_t>(problem.spec.budget.max_seconds * budget_scale);
    if (!input.options.max_seconds || *input.options.max_seconds > budget_seconds)
        input.options.max_seconds = budget_seconds;

    Outcome outcome = saturate(input);
    r.kind = outcome.kind;
    r.clauses = outcome.stats.last_id;
    r.generated = outcome.stats.generated;
    r.seconds = outcome.stats.seconds;

    std::uint64_t clause_budget =
        static_cast<std::uint64_t>(problem.spec.budget.max_clauses * budget_scale);
    if (outcome.kind != OutcomeKind::proof_found) {
        r.pass = false;
        r.notes = outcome.kind == OutcomeKind::sos_exhausted ? "sos exhausted"
                                                             : "limit: " + outcome.limit;
        return r;
    }

    bool ok = true;
    CheckResult replay = check_proof(outcome.proof, *input.signature);
    if (!replay.valid) {
        ok = false;
        r.notes += "replay invalid at " + std::to_string(replay.line) + " (" + replay.reason +
                   "); ";
    }
    if (r.clauses > clause_budget) {
        ok = false;
        r.notes += "clause budget exceeded; ";
    }

    const Signature& sig = *input.signature;
    if (problem.spec.expected == Expectation::false_derived) {
        if (!outcome.success || !outcome.success->literals.empty()) {
            ok = false;
            r.notes += "expected $F; ";
        }
    } else {
        auto answer = outcome.success ? extract_answer(*outcome.success, sig) : std::nullopt;
        if (!answer) {
            ok = false;
            r.notes += "expected an answer literal; ";
        } else {
            r.answer = bird_print(*answer, sig);
            oracle::AnswerVerdict v = verify_answer(problem, *answer);
            if (v == oracle::AnswerVerdict::refuted) {
                ok = false;
                r.notes += "oracle refuted the answer; ";
            } else if (v == oracle::AnswerVerdict::unknown) {
                r.notes += "oracle verdict unknown (divergent), accepted; ";
            } else {
                r.notes += "answer oracle-verified; ";
            }
        }
    }
    r.pass = ok;
    return r;
}

inline std::vector<Report> run_corpus(const std::string& problems_dir,
                                      const CorpusOptions& opts = {}) {
    std::vector<Report> out;
    for (const ProblemSpec& spec : registry()) {
        if (!opts.filter.empty() && opts.filter != spec.name) continue;
        Report r;
        r.name = spec.name;
        if (spec.long_running && !opts.include_long && opts.filter.empty()) {
            r.notes = "skipped (long-running; use --long)";
            out.push_back(std::move(r));
            continue;
        }
        out.push_back(run_problem(load_problem(spec.name, problems_dir), opts.budget_scale));
    }
    return out;
}

inline std::string render_report(const std::vector<Report>& reports) {
    std::ostringstream os;
    os << std::left << std::setw(15) << "problem" << std::right << std::setw(10) << "clauses"
       << std::setw(12) << "generated" << std::setw(9) << "seconds"
       << "  " << std::left << std::setw(7) << "result"
       << "notes\n";
    for (const Report& r : reports) {
        os << std::left << std::setw(15) << r.name << std::right;
        if (!r.ran) {
            os << std::setw(10) << "-" << std::setw(12) << "-" << std::setw(9) << "-"
               << "  " << std::left << std::setw(7) << "SKIP" << r.notes << "\n";
            continue;
        }
        std::ostringstream sec;
        sec << std::fixed << std::setprecision(2) << r.seconds;
        os << std::setw(10) << r.clauses << std::setw(12) << r.generated << std::setw(9)
           << sec.str() << "  " << std::left << std::setw(7) << (r.pass ? "pass" : "FAIL");
        if (!r.answer.empty()) os << "$ans " << r.answer << "; ";
        os << r.notes << "\n";
    }
    return os.str();
}

} // namespace microtter::corpus
