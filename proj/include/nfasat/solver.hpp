#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nfasat/cnf.hpp"
#include "nfasat/nfa.hpp"

namespace nfasat {

/// Placeholder substituted with the (shell-quoted) CNF path.
inline constexpr std::string_view cnf_placeholder = "{cnf}";

/// Environment variable holding the default command template.
inline constexpr const char* solver_env_var = "NFASAT_SOLVER";

struct SolverConfig {
    /// Shell command containing cnf_placeholder exactly once,
    /// e.g. "cadical -q {cnf}".
    std::string command;
    /// Seconds; nullopt means no limit. A non-positive limit yields
    /// unknown without starting the solver.
    std::optional<double> time_limit;
    /// Where generated CNF files are written by callers.
    std::filesystem::path workspace = std::filesystem::temp_directory_path();

    /// Throws SolverError unless the template has exactly one placeholder.
    void validate() const;
};

/// Command template from NFASAT_SOLVER, or `fallback` when unset.
std::string default_solver_command(const std::string& fallback = {});

enum class SolveStatus { sat, unsat, unknown };

std::string_view status_name(SolveStatus s);

/// Variable assignment read from "v" lines; unassigned variables are absent.
class Assignment {
public:
    void set(VarId v, bool value);
    std::optional<bool> value(VarId v) const;
    VarId max_var() const noexcept { return static_cast<VarId>(values_.size()) - 1; }
    bool empty() const noexcept { return assigned_ == 0; }

private:
    std::vector<std::int8_t> values_{0};  // 0 unassigned, 1 true, -1 false
    std::size_t assigned_ = 0;
};

struct SolverOutcome {
    SolveStatus status = SolveStatus::unknown;
    Assignment model;  // non-empty iff sat
    double wall_seconds = 0.0;
    bool timed_out = false;
    int exit_code = -1;
    std::string detail;
};

/// Interprets solver stdout: exit code 10/20 first, then "s" lines; "v"
/// lines fill the model. Throws SolverError on malformed "v" lines or a
/// satisfiable answer without a model.
SolverOutcome parse_solver_output(std::string_view output, int exit_code);

/// Runs the configured solver on a DIMACS file as a child process and
/// kills it (with its process group) when the time limit expires.
SolverOutcome run_solver(const std::filesystem::path& cnf, const SolverConfig& cfg);

/// Reads finals and transitions from the fixed variable blocks; auxiliary
/// values are ignored. Throws Error when a fixed variable is unassigned.
Nfa decode_nfa(const Assignment& model, const VarMap& vars);

struct VerifyReport {
    std::vector<Misclassification> errors;
    bool passed() const noexcept { return errors.empty(); }
};

VerifyReport verify(const Nfa& a, const LabeledSample& s);
std::string describe(const VerifyReport& r, const LabeledSample& s);

}  // namespace nfasat
