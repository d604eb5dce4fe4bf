// Command-line front end: check, run, compile, sample, lambdas.
//
// Exit codes are a stable contract:
//   0 ok, 1 syntax error, 2 type error, 3 reduction error, 4 data error,
//   64 usage (bad flags, unreadable files, missing seed).

#include "lsq/encoding.hpp"
#include "lsq/lambda_s.hpp"
#include "lsq/linalg.hpp"
#include "lsq/parser.hpp"
#include "lsq/printer.hpp"
#include "lsq/reduce.hpp"
#include "lsq/typecheck.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitSyntax = 1;
constexpr int kExitType = 2;
constexpr int kExitReduce = 3;
constexpr int kExitData = 4;
constexpr int kExitUsage = 64;

struct UsageError {
    std::string msg;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError{"cannot read file: " + path};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Shortest round-trip decimal form; identical runs print identical bytes.
std::string fmt_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

struct InputArgs {
    std::string path;
    std::string inline_text;
    bool has_inline = false;
};

void add_input_options(CLI::App *cmd, InputArgs &in) {
    cmd->add_option("file", in.path, "Source file");
    cmd->add_option("-e,--eval", in.inline_text, "Inline source text instead of a file")
        ->each([&in](const std::string &) { in.has_inline = true; });
}

std::string load_text(const InputArgs &in) {
    if (in.has_inline == !in.path.empty()) {
        // both or neither
        throw UsageError{"provide exactly one input: a file argument or -e <text>"};
    }
    return in.has_inline ? in.inline_text : read_file(in.path);
}

bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '\'';
}

// Whether the first significant token is the keyword `def` (a definition
// file) rather than the start of a bare term.
bool looks_like_defs(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++i;
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
            while (i < text.size() && text[i] != '\n') {
                ++i;
            }
            continue;
        }
        break;
    }
    return text.compare(i, 3, "def") == 0 &&
           (i + 3 >= text.size() || !ident_char(text[i + 3]));
}

lsq::SourceFile load_program(const InputArgs &in, bool extensions) {
    lsq::ParseOptions opts;
    opts.extensions = extensions;
    opts.resolve_name = [](const std::string &name) { return lsq::builtin(name); };
    const std::string text = load_text(in);
    if (looks_like_defs(text) || lsq::has_lambda_s_header(text)) {
        return lsq::parse_source(text, opts);
    }
    lsq::SourceFile file;
    file.main = lsq::parse_term(text, opts);
    file.defs.push_back({"main", file.main});
    return file;
}

lsq::TermPtr require_main(const lsq::SourceFile &file) {
    if (!file.main) {
        throw lsq::TypeError(lsq::TypeErrorKind::UnboundVariable, "no main definition");
    }
    return file.main;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct CheckArgs {
    InputArgs input;
    bool extensions = false;
    bool lint = false;
    std::string format = "human";
};

int cmd_check(const CheckArgs &args) {
    const lsq::SourceFile file = load_program(args.input, args.extensions);
    ordered_json defs = ordered_json::array();
    std::string human;
    for (const auto &def : file.defs) {
        const lsq::PropPtr ty = lsq::typecheck({}, def.term);
        human += def.name + " : " + lsq::pretty(ty) + "\n";
        defs.push_back({{"name", def.name}, {"type", lsq::pretty(ty)}});
    }
    if (!file.main) {
        human += "no main\n";
    }
    ordered_json lint = ordered_json::array();
    if (args.lint) {
        bool clean = true;
        for (const auto &def : file.defs) {
            const lsq::LintReport report = lsq::linear_lint(def.term);
            for (const auto &finding : report.findings) {
                clean = false;
                human += "lint " + def.name + ": " + finding.variable + ": " + finding.detail +
                         "\n";
                lint.push_back({{"def", def.name},
                                {"variable", finding.variable},
                                {"detail", finding.detail}});
            }
        }
        if (clean) {
            human += "lint: clean\n";
        }
    }
    if (args.format == "json") {
        ordered_json out{{"defs", defs}, {"has_main", file.main != nullptr}};
        if (args.lint) {
            out["lint"] = lint;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << human;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

struct RunArgs {
    InputArgs input;
    bool extensions = false;
    std::string mode = "det";
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::size_t fuel = lsq::kDefaultFuel;
    bool trace = false;
    std::string strategy = "outermost";
    bool no_renormalize = false;
    std::string format = "human";
};

int cmd_run(const RunArgs &args) {
    lsq::Mode mode;
    if (args.mode == "prob") {
        if (!args.seed_given) {
            throw UsageError{"probabilistic mode requires --seed"};
        }
        mode = lsq::Mode::prob(args.seed, !args.no_renormalize);
    } else {
        mode = lsq::Mode::det(args.strategy == "innermost" ? lsq::Strategy::Innermost
                                                           : lsq::Strategy::Outermost);
    }
    const lsq::SourceFile file = load_program(args.input, args.extensions);
    const lsq::TermPtr main_term = require_main(file);
    lsq::typecheck({}, main_term);
    const lsq::ReductionTrace trace = lsq::normalize(main_term, mode, args.fuel);

    if (args.format == "json") {
        ordered_json out;
        out["result"] = lsq::pretty(trace.final_term);
        out["steps"] = trace.step_count();
        ordered_json collapses = ordered_json::array();
        for (const auto &s : trace.steps) {
            if (s.probabilistic) {
                collapses.push_back(
                    {{"p", s.probability}, {"chose", std::string(1, s.chose)}});
            }
        }
        out["collapses"] = collapses;
        if (args.trace) {
            ordered_json steps = ordered_json::array();
            for (const auto &s : trace.steps) {
                ordered_json js{{"rule", s.rule}, {"path", s.path},
                                {"term", lsq::pretty(s.result)}};
                if (s.probabilistic) {
                    js["p"] = s.probability;
                    js["chose"] = std::string(1, s.chose);
                }
                steps.push_back(std::move(js));
            }
            out["trace"] = steps;
        }
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }

    if (args.trace) {
        std::cout << lsq::trace_to_text(trace);
    } else {
        for (const auto &s : trace.steps) {
            if (s.probabilistic) {
                std::cout << "p=" << fmt_double(s.probability) << " chose=" << s.chose << "\n";
            }
        }
    }
    std::cout << lsq::pretty(trace.final_term) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// compile
// ---------------------------------------------------------------------------

struct CompileArgs {
    std::string matrix_path;
    std::string check_path;
    std::size_t fuel = lsq::kDefaultFuel;
    std::string format = "human";
};

int cmd_compile(const CompileArgs &args) {
    const lsq::CMatrix m = lsq::matrix_from_json(read_file(args.matrix_path));
    const lsq::TermPtr term = lsq::compile_matrix(m);
    double err = 0.0;
    bool checked = false;
    if (!args.check_path.empty()) {
        const lsq::CVector v = lsq::vector_from_json(read_file(args.check_path));
        const lsq::CVector want = lsq::mat_vec(m, v);
        const lsq::TermPtr applied = lsq::app(term, lsq::encode(v));
        const lsq::CVector got =
            lsq::decode(lsq::normal_form(applied, lsq::Mode::det(), args.fuel));
        err = lsq::max_abs_diff(got, want);
        checked = true;
    }
    if (args.format == "json") {
        ordered_json out{{"term", lsq::pretty(term)}};
        if (checked) {
            out["max_abs_error"] = err;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << lsq::pretty(term) << "\n";
        if (checked) {
            std::cout << "max-abs-error: " << fmt_double(err) << "\n";
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

struct SampleArgs {
    InputArgs input;
    bool extensions = false;
    std::size_t shots = 1024;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::size_t fuel = lsq::kDefaultFuel;
    std::string format = "human";
};

std::string outcome_label(std::size_t outcome, std::size_t qubits) {
    if (qubits == 0) {
        return "0";
    }
    std::string bits(qubits, '0');
    for (std::size_t b = 0; b < qubits; ++b) {
        if (outcome >> (qubits - 1 - b) & 1) {
            bits[b] = '1';
        }
    }
    return bits;
}

int cmd_sample(const SampleArgs &args) {
    const lsq::SourceFile file = load_program(args.input, args.extensions);
    const lsq::TermPtr main_term = require_main(file);
    lsq::typecheck({}, main_term);
    const lsq::SampleReport report = lsq::measure(main_term, args.shots, args.seed, args.threads);
    if (args.format == "json") {
        ordered_json counts = ordered_json::object();
        ordered_json freqs = ordered_json::object();
        for (const auto &[outcome, hits] : report.counts) {
            const std::string label = outcome_label(outcome, report.qubits);
            counts[label] = hits;
            freqs[label] = report.frequency(outcome);
        }
        ordered_json out{{"shots", report.shots},
                         {"seed", report.seed},
                         {"qubits", report.qubits},
                         {"counts", counts},
                         {"frequencies", freqs}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "shots: " << report.shots << "\n";
        std::cout << "seed: " << report.seed << "\n";
        std::cout << "qubits: " << report.qubits << "\n";
        for (const auto &[outcome, hits] : report.counts) {
            std::cout << "outcome " << outcome_label(outcome, report.qubits) << ": " << hits
                      << "  freq " << fmt_double(report.frequency(outcome)) << "\n";
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// lambdas
// ---------------------------------------------------------------------------

struct LambdasArgs {
    InputArgs input;
    std::size_t fuel = lsq::kDefaultFuel;
    bool trace = false;
    std::string format = "human";
};

int cmd_lambdas(const LambdasArgs &args) {
    lsq::SSourceFile file;
    const std::string text = load_text(args.input);
    if (lsq::has_lambda_s_header(text) || !args.input.has_inline) {
        file = lsq::parse_s_source(text);
    } else if (looks_like_defs(text)) {
        file = lsq::parse_s_source("%lambda-s\n" + text);
    } else {
        file.main = lsq::parse_s_term(text);
        file.defs.push_back({"main", file.main});
    }
    if (!file.main) {
        throw lsq::TypeError(lsq::TypeErrorKind::UnboundVariable, "no main definition");
    }
    const lsq::STypePtr ty = lsq::s_typecheck({}, file.main);
    const lsq::SRun run = lsq::s_normalize(file.main, args.fuel);
    if (args.format == "json") {
        ordered_json out{{"result", lsq::pretty(run.term)},
                         {"type", lsq::pretty(ty)},
                         {"steps", run.rules.size()}};
        if (args.trace) {
            out["rules"] = run.rules;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        if (args.trace) {
            for (std::size_t i = 0; i < run.rules.size(); ++i) {
                std::cout << "step " << i + 1 << ": " << run.rules[i] << "\n";
            }
        }
        std::cout << lsq::pretty(run.term) << "\n";
    }
    return kExitOk;
}

void add_format_option(CLI::App *cmd, std::string &format) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"human", "json"}))
        ->capture_default_str();
}

void add_fuel_option(CLI::App *cmd, std::size_t &fuel) {
    cmd->add_option("--fuel", fuel, "Maximum number of rewrite steps")
        ->envname("LSQ_FUEL")
        ->capture_default_str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Proof-term calculus with sums and scalars: type checking, rewriting,\n"
                 "vector round-trips, measurement sampling, and a lambda-s interpreter."};
    app.require_subcommand(1);

    CheckArgs check_args;
    CLI::App *check = app.add_subcommand("check", "Parse and type every definition");
    add_input_options(check, check_args.input);
    check->add_flag("--ext", check_args.extensions, "Enable the (+) / & connectives");
    check->add_flag("--lint-linear", check_args.lint, "Also report strict-linearity findings");
    add_format_option(check, check_args.format);

    RunArgs run_args;
    CLI::App *run = app.add_subcommand("run", "Normalize main and print the result");
    add_input_options(run, run_args.input);
    run->add_flag("--ext", run_args.extensions, "Enable the (+) / & connectives");
    run->add_option("--mode", run_args.mode, "Rewrite mode")
        ->check(CLI::IsMember({"det", "prob"}))
        ->capture_default_str();
    run->add_option("--seed", run_args.seed, "Seed for probabilistic collapse")
        ->each([&run_args](const std::string &) { run_args.seed_given = true; });
    add_fuel_option(run, run_args.fuel);
    run->add_flag("--trace", run_args.trace, "Print every rewrite step");
    run->add_option("--strategy", run_args.strategy, "Deterministic strategy")
        ->check(CLI::IsMember({"outermost", "innermost"}))
        ->capture_default_str();
    run->add_flag("--no-renormalize", run_args.no_renormalize,
                  "Keep collapsed branches unnormalized");
    add_format_option(run, run_args.format);

    CompileArgs compile_args;
    CLI::App *compile = app.add_subcommand("compile", "Compile a matrix file to a proof term");
    compile->add_option("--matrix", compile_args.matrix_path, "Matrix JSON file")->required();
    compile->add_option("--check", compile_args.check_path,
                        "Vector JSON file; applies the term and reports max-abs-error "
                        "against the direct matrix-vector product");
    add_fuel_option(compile, compile_args.fuel);
    add_format_option(compile, compile_args.format);

    SampleArgs sample_args;
    CLI::App *sample = app.add_subcommand("sample", "Measure main repeatedly");
    add_input_options(sample, sample_args.input);
    sample->add_flag("--ext", sample_args.extensions, "Enable the (+) / & connectives");
    sample->add_option("--shots", sample_args.shots, "Number of measurements")
        ->capture_default_str();
    sample->add_option("--seed", sample_args.seed, "Base seed (required)")->required();
    sample->add_option("--threads", sample_args.threads, "Worker threads")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
    add_fuel_option(sample, sample_args.fuel);
    add_format_option(sample, sample_args.format);

    LambdasArgs lambdas_args;
    CLI::App *lambdas = app.add_subcommand("lambdas", "Normalize a %lambda-s program");
    add_input_options(lambdas, lambdas_args.input);
    add_fuel_option(lambdas, lambdas_args.fuel);
    lambdas->add_flag("--trace", lambdas_args.trace, "Print the rule of every step");
    add_format_option(lambdas, lambdas_args.format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (check->parsed()) {
            return cmd_check(check_args);
        }
        if (run->parsed()) {
            return cmd_run(run_args);
        }
        if (compile->parsed()) {
            return cmd_compile(compile_args);
        }
        if (sample->parsed()) {
            return cmd_sample(sample_args);
        }
        if (lambdas->parsed()) {
            return cmd_lambdas(lambdas_args);
        }
        return kExitUsage;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.msg << "\n";
        return kExitUsage;
    } catch (const lsq::SyntaxError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSyntax;
    } catch (const lsq::TypeError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitType;
    } catch (const lsq::ReduceError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitReduce;
    } catch (const lsq::DataError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
