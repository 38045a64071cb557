#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nfasat/error.hpp"
#include "nfasat/mset.hpp"
#include "nfasat/pipeline.hpp"

namespace fs = std::filesystem;
using namespace nfasat;

namespace {

enum Exit : int {
    exit_ok = 0,
    exit_verify = 1,
    exit_usage = 2,
    exit_budget = 3,
    exit_sat = 10,
    exit_unsat = 20,
    exit_unknown = 30,
};

ModelSpec parse_model(const std::string& text) {
    try {
        return ModelSpec::parse(text);
    } catch (const Error& e) {
        throw CLI::ValidationError("--model", e.what());
    }
}

struct SampleArgs {
    std::string path;
    std::string format = "lines";
};

struct ModelArgs {
    std::string model = "base";
    std::string level = "max";
    std::string prefix_mode = "sound";
    bool no_redundant = false;
    bool no_dedup = false;
    bool dedup_paths = false;
    bool no_empty_filter = false;
    std::size_t max_entries = EncodeOptions{}.max_db_entries;
    double gen_timeout = 0.0;
    int threads = 0;

    ModelSpec spec() const {
        if (model == "mset") return parse_model("mset:" + level);
        if (model == "prefix") return parse_model("prefix:" + prefix_mode);
        return parse_model(model);
    }

    EncodeOptions options() const {
        EncodeOptions o;
        o.redundant = !no_redundant;
        o.dedup_within = !no_dedup;
        o.dedup_across_paths = dedup_paths;
        o.empty_word_filter = !no_empty_filter;
        o.max_db_entries = max_entries;
        o.threads = threads;
        if (gen_timeout > 0) o.deadline = Deadline::after(std::chrono::duration<double>(gen_timeout));
        return spec().apply(o);
    }
};

void add_sample_args(CLI::App* cmd, SampleArgs& a) {
    cmd->add_option("sample", a.path, "Sample file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--format", a.format, "Sample format")->check(CLI::IsMember({"lines", "abbadingo"}));
}

void add_model_args(CLI::App* cmd, ModelArgs& a) {
    cmd->add_option("--model", a.model, "Encoding model")->check(CLI::IsMember({"base", "all", "mset", "prefix"}));
    cmd->add_option("--level", a.level, "Lattice level for --model mset (integer or 'max')");
    cmd->add_option("--prefix-mode", a.prefix_mode, "Boundary constraint for --model prefix")
        ->check(CLI::IsMember({"sound", "literal"}));
    cmd->add_flag("--no-redundant", a.no_redundant, "Omit the unreachable-state clauses");
    cmd->add_flag("--no-dedup", a.no_dedup, "Keep repeated transition variables inside a path");
    cmd->add_flag("--dedup-paths", a.dedup_paths, "Emit each (variable set, end state) once per word");
    cmd->add_flag("--no-empty-filter", a.no_empty_filter, "Keep paths ending in state 1 when the empty word is negative");
    cmd->add_option("--max-entries", a.max_entries, "Cap on stored c_couples for subsumption")->check(CLI::PositiveNumber);
    cmd->add_option("--gen-timeout", a.gen_timeout, "Generation time limit in seconds (0 = none)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--threads", a.threads, "OpenMP threads for filtering (1 = serial kernels)")
        ->check(CLI::NonNegativeNumber);
}

LabeledSample read_sample(const SampleArgs& a) {
    std::vector<std::string> warnings;
    LabeledSample s = load_sample(a.path, a.format == "abbadingo" ? SampleFormat::abbadingo : SampleFormat::lines,
                                  &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    return s;
}

std::string seconds(double t) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << t;
    return s.str();
}

std::string stats_line(const Encoding& e, double t_gen) {
    const auto& v = e.cnf.vars();
    std::ostringstream s;
    s << "vars=" << v.total() << " clauses=" << e.cnf.clause_count() << " aux=" << v.aux_count()
      << " t_model=" << seconds(t_gen);
    if (e.report.structurally_unsat()) s << " structurally_unsat=yes";
    return s.str();
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

std::string bundled_solver() {
    std::error_code ec;
    const fs::path self = fs::read_symlink("/proc/self/exe", ec);
    const fs::path dir = ec ? fs::path(".") : self.parent_path();
    std::string quoted = "'";
    for (char c : (dir / "nfasat-cdcl").string()) quoted += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return quoted + "' {cnf}";
}

SolverConfig solver_config(const std::string& cmd, double timeout) {
    SolverConfig cfg;
    cfg.command = cmd.empty() ? default_solver_command(bundled_solver()) : cmd;
    if (timeout >= 0) cfg.time_limit = timeout;
    cfg.validate();
    return cfg;
}

std::pair<int, int> parse_k_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int k = std::stoi(text);
            return {k, k};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("--k-range", "expected K or A..B, got '" + text + "'");
    }
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    SampleArgs sample;
    ModelArgs model;
    int k = 1;
    std::string out = "-";
    std::string meta;
};

int cmd_generate(const GenerateArgs& a) {
    const LabeledSample s = read_sample(a.sample);
    const EncodeOptions opts = a.model.options();
    const auto start = std::chrono::steady_clock::now();
    const Encoding e = encode(s, a.k, opts);
    const double t_gen = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (a.out == "-") {
        write_dimacs(e.cnf, std::cout);
        std::cout.flush();
    } else {
        std::ofstream out(a.out, std::ios::binary);
        if (!out) throw Error("cannot write '" + a.out + "'");
        write_dimacs(e.cnf, out);
    }
    if (!a.meta.empty()) write_json(a.meta, encoding_metadata(s, a.k, opts, e));
    (a.out == "-" ? std::cerr : std::cout) << stats_line(e, t_gen) << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    SampleArgs sample;
    ModelArgs model;
    int k = 1;
    std::string k_range;
    std::string solver_cmd;
    double timeout = -1;
    std::string cnf;
    std::string nfa_out;
    std::string meta;
};

int report_run(const SolveArgs& a, const LabeledSample& s, int k, const SolveRun& run) {
    const double t_solve = run.outcome.wall_seconds;
    std::cout << "k=" << k << " status=" << status_name(run.outcome.status) << " vars=" << run.encoding.cnf.vars().total()
              << " clauses=" << run.encoding.cnf.clause_count() << " t_model=" << seconds(run.generation_seconds)
              << " t_solve=" << seconds(t_solve) << " t_total=" << seconds(run.generation_seconds + t_solve) << '\n';
    if (!run.outcome.detail.empty()) std::cout << "note: " << run.outcome.detail << '\n';
    if (run.outcome.status == SolveStatus::unsat) return exit_unsat;
    if (run.outcome.status == SolveStatus::unknown) return exit_unknown;

    if (!run.report->passed()) {
        std::cerr << "error: decoded automaton is inconsistent with the sample (encoder bug)\n"
                  << describe(*run.report, s);
        return exit_verify;
    }
    const nlohmann::json j = nfa_to_json(*run.nfa, s.alphabet());
    if (a.nfa_out.empty()) {
        std::cout << j.dump() << '\n';
    } else {
        write_json(a.nfa_out, j);
        std::cout << "nfa=" << a.nfa_out << '\n';
    }
    return exit_sat;
}

int cmd_solve(const SolveArgs& a) {
    const LabeledSample s = read_sample(a.sample);
    const EncodeOptions opts = a.model.options();
    const SolverConfig cfg = solver_config(a.solver_cmd, a.timeout);
    auto [first, last] = a.k_range.empty() ? std::pair{a.k, a.k} : parse_k_range(a.k_range);
    if (first < 1 || last < first) throw CLI::ValidationError("--k-range", "needs 1 <= A <= B");

    fs::path cnf = a.cnf;
    const bool scratch = cnf.empty();
    if (scratch) cnf = cfg.workspace / ("nfasat-" + std::to_string(::getpid()) + ".cnf");

    int code = exit_unknown;
    bool unsat_below = false;
    for (int k = first; k <= last; ++k) {
        const SolveRun run = solve_sample(s, k, opts, cfg, cnf);
        if (!a.meta.empty() && k == last) write_json(a.meta, encoding_metadata(s, k, opts, run.encoding));
        code = report_run(a, s, k, run);
        if (code == exit_sat) {
            if (first != last && unsat_below) std::cout << "sweep: unsat at k=" << k - 1 << ", sat at k=" << k << '\n';
            break;
        }
        if (code != exit_unsat) break;
        unsat_below = true;
    }
    if (scratch) {
        std::error_code ec;
        fs::remove(cnf, ec);
    }
    return code;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
    SampleArgs sample;
    int k = 1;
    bool serial = false;
};

int cmd_oracle(const OracleArgs& a) {
    const LabeledSample s = read_sample(a.sample);
    const auto nfa = a.serial ? brute_force_search_serial(s, a.k) : brute_force_search(s, a.k);
    if (!nfa) {
        std::cout << "unsat\n";
        return exit_unsat;
    }
    std::cout << "sat\n" << nfa_to_json(*nfa, s.alphabet()).dump() << '\n';
    return exit_sat;
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
    SampleArgs sample;
    ModelArgs model;
    int k = 0;
};

int cmd_stats(const StatsArgs& a) {
    const LabeledSample s = read_sample(a.sample);
    const SampleStats st = sample_stats(s);
    nlohmann::json j = {{"alphabet", s.alphabet()},
                        {"positives", st.positives},
                        {"negatives", st.negatives},
                        {"longest_positive", st.longest_positive},
                        {"longest_negative", st.longest_negative},
                        {"empty_word_positive", st.empty_word_positive},
                        {"empty_word_negative", st.empty_word_negative}};
    if (a.k > 0) {
        const Encoding e = encode(s, a.k, a.model.options());
        j["encoding"] = {{"k", a.k}, {"model", a.model.spec().name}, {"stats", stats_to_json(instance_stats(e.cnf))}};
    }
    std::cout << j.dump(2) << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------- lattice

int cmd_lattice(const SampleArgs& a) {
    const LabeledSample s = read_sample(a);
    std::cout << MultisetLattice(s).to_dot(s);
    return exit_ok;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    std::vector<std::string> samples;
    std::string format = "lines";
    std::vector<int> ks{2, 3};
    std::vector<std::string> models{"base", "all", "mset:max", "prefix"};
    ModelArgs options;
    double gen_timeout = 0;
    double timeout = -1;
    std::string solver_cmd;
    bool generate_only = false;
    int jobs = 1;
    std::string out = "-";
};

int cmd_bench(const BenchArgs& a) {
    BenchConfig cfg;
    for (const std::string& path : a.samples)
        cfg.samples.push_back({fs::path(path).filename().string(), read_sample({path, a.format})});
    cfg.ks = a.ks;
    for (const std::string& m : a.models) cfg.models.push_back(parse_model(m));
    cfg.base_options = a.options.options();
    if (a.gen_timeout > 0) cfg.generation_timeout = a.gen_timeout;
    if (!a.generate_only) cfg.solver = solver_config(a.solver_cmd, a.timeout);
    cfg.generate_only = a.generate_only;
    cfg.jobs = a.jobs;

    const std::vector<BenchRow> rows = run_bench(cfg);
    if (a.out == "-") {
        write_bench_csv(rows, std::cout);
    } else {
        std::ofstream out(a.out);
        if (!out) throw Error("cannot write '" + a.out + "'");
        write_bench_csv(rows, out);
    }
    for (const BenchRow& r : rows)
        if (r.status == "verify-failed") return exit_verify;
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Encode NFA inference from labeled samples into SAT"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write the CNF encoding of a sample");
    add_sample_args(generate, gen.sample);
    add_model_args(generate, gen.model);
    generate->add_option("-k", gen.k, "Number of states")->required()->check(CLI::PositiveNumber);
    generate->add_option("-o,--out", gen.out, "DIMACS output path ('-' = stdout)");
    generate->add_option("--meta", gen.meta, "JSON metadata output path");

    SolveArgs sol;
    auto* solve = app.add_subcommand("solve", "Generate, run the SAT solver, decode and verify");
    add_sample_args(solve, sol.sample);
    add_model_args(solve, sol.model);
    auto* k_opt = solve->add_option("-k", sol.k, "Number of states")->check(CLI::PositiveNumber);
    solve->add_option("--k-range", sol.k_range, "Try K..B upwards, stopping at the first sat")->excludes(k_opt);
    solve->add_option("--solver-cmd", sol.solver_cmd, "Solver command template containing {cnf}");
    solve->add_option("--timeout", sol.timeout, "Solver time limit in seconds");
    solve->add_option("--cnf", sol.cnf, "Keep the generated CNF at this path");
    solve->add_option("--nfa-out", sol.nfa_out, "Write the automaton JSON here instead of stdout");
    solve->add_option("--meta", sol.meta, "JSON metadata output path");

    OracleArgs orc;
    auto* oracle = app.add_subcommand("oracle", "Exhaustive search for a consistent automaton");
    add_sample_args(oracle, orc.sample);
    oracle->add_option("-k", orc.k, "Number of states")->required()->check(CLI::PositiveNumber);
    oracle->add_flag("--serial", orc.serial, "Use the single-threaded reference search");

    StatsArgs sta;
    auto* stats = app.add_subcommand("stats", "Sample statistics, plus encoding statistics when -k is given");
    add_sample_args(stats, sta.sample);
    add_model_args(stats, sta.model);
    stats->add_option("-k", sta.k, "Number of states")->check(CLI::PositiveNumber);

    SampleArgs lat;
    auto* lattice = app.add_subcommand("lattice", "Print the multiset lattice of a sample as dot");
    add_sample_args(lattice, lat);

    BenchArgs ben;
    auto* bench = app.add_subcommand("bench", "Sweep samples x k x models and print a CSV table");
    bench->add_option("samples", ben.samples, "Sample files")->required()->check(CLI::ExistingFile);
    bench->add_option("--format", ben.format, "Sample format")->check(CLI::IsMember({"lines", "abbadingo"}));
    bench->add_option("-k,--ks", ben.ks, "State counts")->check(CLI::PositiveNumber)->delimiter(',');
    bench->add_option("--models", ben.models, "Models: base, all, mset:<level|max>, prefix[:literal]")->delimiter(',');
    bench->add_flag("--no-redundant", ben.options.no_redundant, "Omit the unreachable-state clauses");
    bench->add_flag("--no-dedup", ben.options.no_dedup, "Keep repeated transition variables inside a path");
    bench->add_option("--max-entries", ben.options.max_entries, "Cap on stored c_couples")->check(CLI::PositiveNumber);
    bench->add_option("--gen-timeout", ben.gen_timeout, "Generation time limit per row in seconds")
        ->check(CLI::NonNegativeNumber);
    bench->add_option("--timeout", ben.timeout, "Solver time limit per row in seconds");
    bench->add_option("--solver-cmd", ben.solver_cmd, "Solver command template containing {cnf}");
    bench->add_flag("--generate-only", ben.generate_only, "Measure generation only");
    bench->add_option("-j,--jobs", ben.jobs, "Rows evaluated concurrently")->check(CLI::PositiveNumber);
    bench->add_option("-o,--out", ben.out, "CSV output path ('-' = stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*generate) return cmd_generate(gen);
        if (*solve) {
            if (sol.k_range.empty() && !k_opt->count()) throw CLI::RequiredError("-k or --k-range");
            return cmd_solve(sol);
        }
        if (*oracle) return cmd_oracle(orc);
        if (*stats) return cmd_stats(sta);
        if (*lattice) return cmd_lattice(lat);
        if (*bench) return cmd_bench(ben);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const GenerationTimeout& e) {
        std::cerr << "error: generation timed out: " << e.what() << '\n';
        return exit_budget;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_budget;
    } catch (const OracleBoundError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_budget;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_verify;
    }
    return exit_usage;
}
