#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nfasat/cnf.hpp"
#include "nfasat/sample.hpp"

namespace nfasat {

enum class Variant { base, all, mset, prefix };
enum class PrefixMode { sound, literal };

std::string_view variant_name(Variant v);
std::string_view prefix_mode_name(PrefixMode m);

/// Wall-clock limit for generation; checked periodically inside the
/// enumeration loops.
class Deadline {
public:
    Deadline() = default;
    explicit Deadline(std::chrono::steady_clock::time_point at) : at_(at) {}
    static Deadline after(std::chrono::duration<double> d);

    /// Throws GenerationTimeout once the deadline has passed.
    void check() const;
    bool active() const noexcept { return at_.has_value(); }

private:
    std::optional<std::chrono::steady_clock::time_point> at_;
};

struct EncodeOptions {
    Variant variant = Variant::base;
    /// Unreachable-state clauses.
    bool redundant = true;
    /// Collapse repeated transition variables inside one path.
    bool dedup_within = true;
    /// Emit a (variable set, end state) pair only once per word.
    bool dedup_across_paths = false;
    /// Drop paths ending in state 1 when the empty word is negative.
    bool empty_word_filter = true;
    PrefixMode prefix_mode = PrefixMode::sound;
    /// Lattice level for Variant::mset; nullopt means the maximum level.
    std::optional<int> mset_level;
    /// Cap on stored c_couples for the subsumption databases.
    std::size_t max_db_entries = 50'000'000;
    Deadline deadline;
    /// 1 forces the serial filtering kernels; 0 uses the OpenMP default.
    int threads = 0;
};

/// The transition variables along one state path of a word.
struct CTransition {
    std::vector<VarId> vars;   // path order; first occurrences only when deduplicated
    std::vector<State> path;   // starts at state 1, one entry per prefix length

    State end() const { return path.back(); }
};

/// Boundary states of a nested negative-prefix decomposition: the state
/// reached after `cuts[i]` symbols is constrained according to `mode`.
struct PathShape {
    std::vector<std::size_t> cuts;
    PrefixMode mode = PrefixMode::sound;
};

/// Visits every path 1 = i_1, ..., i_{|w|+1} with i_{|w|+1} in `ends` (which
/// must be sorted), in lexicographic path order. With a shape, only paths
/// whose boundary states satisfy the shape are visited.
void for_each_ctransition(const Word& w, int k, int n, std::span<const State> ends, bool dedup,
                          const PathShape* shape, const std::function<void(const CTransition&)>& fn);

std::vector<CTransition> enumerate_ctransitions(const Word& w, int k, int n, std::span<const State> ends,
                                                bool dedup = true);

/// Allowed ending states: 1..k, without state 1 when the empty word is
/// negative and the filter is on.
std::vector<State> end_states(const LabeledSample& s, int k, const EncodeOptions& opts);

/// Per-word generation settings.
struct EmitContext {
    int k = 1;
    int n = 0;
    std::vector<State> ends;
    bool dedup_within = true;
    bool dedup_across_paths = false;
    const PathShape* shape = nullptr;
    /// keep[r] == 0 drops the r-th enumerated path; null keeps everything.
    const std::vector<std::uint8_t>* keep = nullptr;
    Deadline deadline;
};

struct EmitResult {
    std::size_t candidates = 0;
    std::size_t kept = 0;
    bool structurally_unsat = false;
};

/// Unit clause f_1 for a positive empty word, not f_1 for a negative one.
void emit_lambda(const LabeledSample& s, CnfInstance& cnf);

/// Tseitin encoding of "some kept path reaches a final state".
EmitResult emit_positive(CnfInstance& cnf, std::int32_t word, const Word& w, const EmitContext& ctx);

/// One clause per kept path forbidding it to end in a final state.
EmitResult emit_negative(CnfInstance& cnf, std::int32_t word, const Word& w, const EmitContext& ctx);

/// Unreachable-state clauses for states 2..k.
void emit_redundant(int k, int n, CnfInstance& cnf);

struct WordReport {
    std::int32_t word = 0;
    bool positive = true;
    std::size_t length = 0;
    std::size_t candidates = 0;
    std::size_t kept = 0;
    bool structurally_unsat = false;
    std::vector<std::size_t> cuts;  // prefix variant only
};

struct LatticeReport {
    std::size_t nodes = 0;
    int max_level = 0;
    int level_used = 0;
    std::vector<std::size_t> node_hits;  // filtered paths per lattice node
};

struct EncodeReport {
    std::vector<WordReport> words;
    std::vector<std::string> unsat_causes;
    std::size_t db_entries = 0;
    std::size_t filter_hits = 0;
    std::optional<LatticeReport> lattice;
    /// Sum over decomposed positive words of prod_{i<=n}(k-i+1), i.e. the
    /// aux count when interior states are not counted.
    std::size_t boundary_only_aux = 0;

    bool structurally_unsat() const { return !unsat_causes.empty(); }
};

struct Encoding {
    CnfInstance cnf;
    EncodeReport report;
};

/// Global word ids: positives 0..P-1, then negatives P..P+N-1.
inline std::int32_t positive_word_id(std::size_t i) { return static_cast<std::int32_t>(i); }
inline std::int32_t negative_word_id(const LabeledSample& s, std::size_t i) {
    return static_cast<std::int32_t>(s.positives().size() + i);
}

Encoding encode(const LabeledSample& s, int k, const EncodeOptions& opts = {});

struct PredictedCounts {
    std::size_t aux_implies_path = 0;  // binary clauses
    std::size_t path_implies_aux = 0;  // (|w|+2)-ary
    std::size_t aux_disjunction = 0;   // 0 or 1
    std::size_t negative_path = 0;     // (|w|+1)-ary
    std::size_t aux = 0;
    bool structurally_unsat = false;

    bool operator==(const PredictedCounts&) const = default;
};

/// Closed-form per-family counts for one word of length `length` >= 1,
/// exact when repeated transition variables are kept.
PredictedCounts predicted_base_counts(std::size_t length, int k, bool positive, bool empty_word_negative);

/// Sidecar document describing an encoding.
nlohmann::json encoding_metadata(const LabeledSample& s, int k, const EncodeOptions& opts, const Encoding& e);

}  // namespace nfasat
