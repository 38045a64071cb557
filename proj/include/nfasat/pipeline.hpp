#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nfasat/encoder.hpp"
#include "nfasat/solver.hpp"

namespace nfasat {

/// A named encoder configuration: "base", "all", "mset:<level|max>",
/// "prefix" or "prefix:literal".
struct ModelSpec {
    std::string name;
    Variant variant = Variant::base;
    std::optional<int> level;
    PrefixMode prefix_mode = PrefixMode::sound;

    static ModelSpec parse(const std::string& text);
    EncodeOptions apply(EncodeOptions opts) const;
};

/// One generate/solve/decode/verify run.
struct SolveRun {
    Encoding encoding;
    double generation_seconds = 0.0;
    SolverOutcome outcome;
    std::optional<Nfa> nfa;
    std::optional<VerifyReport> report;
};

/// Encodes, writes `cnf_path`, runs the solver and, on sat, decodes and
/// verifies the automaton. Generation errors propagate.
SolveRun solve_sample(const LabeledSample& s, int k, const EncodeOptions& opts, const SolverConfig& cfg,
                      const std::filesystem::path& cnf_path);

/// Row of the benchmark table: generation time, size, solve time, total.
struct BenchRow {
    std::string sample;
    int k = 0;
    std::string model;
    std::optional<double> t_model;
    std::optional<long long> vars;
    std::optional<std::size_t> clauses;
    std::optional<double> t_solve;
    std::optional<double> t_total;
    std::string status;
};

struct BenchSample {
    std::string id;
    LabeledSample sample;
};

struct BenchConfig {
    std::vector<BenchSample> samples;
    std::vector<int> ks;
    std::vector<ModelSpec> models;
    EncodeOptions base_options;
    /// Per-row generation limit in seconds.
    std::optional<double> generation_timeout;
    SolverConfig solver;
    /// Skip the solver and only measure generation.
    bool generate_only = false;
    /// Rows evaluated concurrently; output order is fixed regardless.
    int jobs = 1;
};

inline constexpr std::string_view bench_csv_header = "sample,k,model,t_model,vars,clauses,t_solve,t_total,status";

/// One row per (sample, k, model) in that nesting order. Failures are
/// recorded in the row status and never abort the sweep.
std::vector<BenchRow> run_bench(const BenchConfig& cfg);

/// Header line, then one line per row; "-" marks missing values.
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace nfasat
