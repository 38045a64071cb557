#include "nfasat/pipeline.hpp"

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "nfasat/error.hpp"

namespace nfasat {

ModelSpec ModelSpec::parse(const std::string& text) {
    ModelSpec m;
    m.name = text;
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (head == "base" && arg.empty()) {
        m.variant = Variant::base;
    } else if (head == "all" && arg.empty()) {
        m.variant = Variant::all;
    } else if (head == "mset") {
        m.variant = Variant::mset;
        if (!arg.empty() && arg != "max") {
            try {
                std::size_t used = 0;
                m.level = std::stoi(arg, &used);
                if (used != arg.size() || *m.level < 0) throw std::invalid_argument(arg);
            } catch (const std::logic_error&) {
                throw Error("bad lattice level in model '" + text + "'");
            }
        }
        m.name = "mset:" + (m.level ? std::to_string(*m.level) : std::string("max"));
    } else if (head == "prefix" && (arg.empty() || arg == "sound" || arg == "literal")) {
        m.variant = Variant::prefix;
        m.prefix_mode = arg == "literal" ? PrefixMode::literal : PrefixMode::sound;
        m.name = arg == "literal" ? "prefix:literal" : "prefix";
    } else {
        throw Error("unknown model '" + text + "' (expected base, all, mset[:level|max], prefix[:literal])");
    }
    return m;
}

EncodeOptions ModelSpec::apply(EncodeOptions opts) const {
    opts.variant = variant;
    opts.mset_level = level;
    opts.prefix_mode = prefix_mode;
    return opts;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

void write_cnf(const CnfInstance& cnf, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    write_dimacs(cnf, out);
}

}  // namespace

SolveRun solve_sample(const LabeledSample& s, int k, const EncodeOptions& opts, const SolverConfig& cfg,
                      const std::filesystem::path& cnf_path) {
    const auto start = std::chrono::steady_clock::now();
    Encoding enc = encode(s, k, opts);
    const double t_gen = seconds_since(start);
    write_cnf(enc.cnf, cnf_path);
    SolveRun run{std::move(enc), t_gen, run_solver(cnf_path, cfg), std::nullopt, std::nullopt};
    if (run.outcome.status == SolveStatus::sat) {
        run.nfa = decode_nfa(run.outcome.model, run.encoding.cnf.vars());
        run.report = verify(*run.nfa, s);
    }
    return run;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
    struct Job {
        std::size_t sample;
        int k;
        std::size_t model;
    };
    std::vector<Job> jobs;
    for (std::size_t si = 0; si < cfg.samples.size(); ++si)
        for (int k : cfg.ks)
            for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) jobs.push_back({si, k, mi});

    std::vector<BenchRow> rows(jobs.size());
    static std::atomic<unsigned> counter{0};
    const auto count = static_cast<std::int64_t>(jobs.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.jobs > 0 ? cfg.jobs : 1)
    for (std::int64_t ji = 0; ji < count; ++ji) {
        const Job& job = jobs[static_cast<std::size_t>(ji)];
        const BenchSample& bs = cfg.samples[job.sample];
        const ModelSpec& model = cfg.models[job.model];
        BenchRow& row = rows[static_cast<std::size_t>(ji)];
        row.sample = bs.id;
        row.k = job.k;
        row.model = model.name;

        EncodeOptions opts = model.apply(cfg.base_options);
        if (cfg.generation_timeout) opts.deadline = Deadline::after(std::chrono::duration<double>(*cfg.generation_timeout));

        std::optional<Encoding> enc;
        const auto start = std::chrono::steady_clock::now();
        try {
            enc.emplace(encode(bs.sample, job.k, opts));
        } catch (const GenerationTimeout&) {
            row.status = "gen-timeout";
            continue;
        } catch (const BudgetExceeded&) {
            row.status = "gen-budget";
            continue;
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
            continue;
        }
        row.t_model = seconds_since(start);
        row.vars = enc->cnf.vars().total();
        row.clauses = enc->cnf.clause_count();
        if (cfg.generate_only) {
            row.status = "generated";
            continue;
        }

        const auto path = cfg.solver.workspace / ("nfasat-bench-" + std::to_string(::getpid()) + "-" +
                                                  std::to_string(counter.fetch_add(1)) + ".cnf");
        try {
            write_cnf(enc->cnf, path);
            const SolverOutcome out = run_solver(path, cfg.solver);
            if (out.status == SolveStatus::unknown) {
                row.status = out.timed_out ? "solve-timeout" : "unknown";
            } else {
                row.t_solve = out.wall_seconds;
                row.t_total = *row.t_model + out.wall_seconds;
                row.status = std::string(status_name(out.status));
                if (out.status == SolveStatus::sat &&
                    !verify(decode_nfa(out.model, enc->cnf.vars()), bs.sample).passed())
                    row.status = "verify-failed";
            }
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
        }
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
    return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
    auto num = [](std::optional<double> v) {
        if (!v) return std::string("-");
        std::ostringstream s;
        s << std::fixed << std::setprecision(3) << *v;
        return s.str();
    };
    auto field = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    out << bench_csv_header << '\n';
    for (const BenchRow& r : rows)
        out << field(r.sample) << ',' << r.k << ',' << field(r.model) << ',' << num(r.t_model) << ','
            << (r.vars ? std::to_string(*r.vars) : "-") << ',' << (r.clauses ? std::to_string(*r.clauses) : "-")
            << ',' << num(r.t_solve) << ',' << num(r.t_total) << ',' << field(r.status) << '\n';
}

}  // namespace nfasat
