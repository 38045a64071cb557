#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nfasat/nfa.hpp"
#include "nfasat/sample.hpp"

namespace nfasat {

/// DIMACS variable number, >= 1.
using VarId = std::int32_t;

class Literal {
public:
    constexpr Literal() = default;
    static constexpr Literal pos(VarId v) { return Literal(v); }
    static constexpr Literal neg(VarId v) { return Literal(-v); }

    constexpr VarId var() const { return value_ < 0 ? -value_ : value_; }
    constexpr bool negative() const { return value_ < 0; }
    constexpr Literal operator~() const { return Literal(-value_); }
    constexpr std::int32_t dimacs() const { return value_; }

    constexpr bool operator==(const Literal&) const = default;
    constexpr auto operator<=>(const Literal&) const = default;

private:
    constexpr explicit Literal(std::int32_t v) : value_(v) {}
    std::int32_t value_ = 0;
};

/// Constraint family a clause came from.
enum class Family : std::uint8_t {
    empty_word_accept,   // f_1
    empty_word_reject,   // not f_1
    aux_implies_path,    // not aux or v, not aux or f_j
    path_implies_aux,    // aux or not v... or not f_j
    aux_disjunction,     // one aux per path must hold
    negative_path,       // not v... or not f_j
    prefix_aux_implies_path,
    prefix_path_implies_aux,
    prefix_aux_disjunction,
    prefix_negative_path,
    unreachable_state,   // redundant clauses for unreachable states
    unsat_marker,        // aux and not aux, for words with no candidate path
};

inline constexpr int family_count = 12;

/// Stable short name used in metadata, e.g. "4" or "prop2".
std::string_view family_name(Family f);

/// Who produced a clause: the constraint family and the word it encodes
/// (-1 when the clause is not tied to a word).
struct ClauseTag {
    Family family;
    std::int32_t word;
};

/// Decode metadata of an auxiliary variable.
struct AuxInfo {
    std::int32_t word;                  // global word index (positives first)
    State end;                          // 0 for an unsat marker
    std::vector<State> path;            // empty for an unsat marker
};

/// Fixed numbering of the final-state and transition blocks, followed by
/// auxiliaries allocated in generation order.
class VarMap {
public:
    VarMap(int k, int n);

    int states() const noexcept { return k_; }
    int alphabet_size() const noexcept { return n_; }

    VarId final_var(State j) const;
    VarId delta_var(SymbolId a, State from, State to) const;
    VarId fixed_count() const noexcept { return fixed_; }

    /// Allocates the next auxiliary for `word` along `path` (empty path for
    /// an unsat marker).
    VarId allocate_aux(std::int32_t word, std::span<const State> path);
    VarId aux_count() const noexcept { return static_cast<VarId>(aux_words_.size()); }
    AuxInfo aux_info(VarId v) const;
    VarId total() const noexcept { return fixed_ + aux_count(); }

private:
    int k_;
    int n_;
    VarId fixed_;
    std::vector<std::int32_t> aux_words_;
    std::vector<std::size_t> aux_offsets_{0};
    std::vector<std::int16_t> aux_paths_;
};

/// f_j := j.
VarId var_final(State j, int k);
/// delta(a, i, j) := k + (a-1)k^2 + (i-1)k + j.
VarId var_delta(SymbolId a, State i, State j, int k, int n);

struct InstanceStats {
    VarId variables = 0;
    std::size_t clauses = 0;
    std::map<std::size_t, std::size_t> arity_histogram;
    std::map<Family, std::size_t> family_counts;
    std::map<Family, std::map<std::size_t, std::size_t>> family_arity;
};

/// Clause database with per-clause provenance. Filled through add_clause
/// during generation, then treated as immutable.
class CnfInstance {
public:
    explicit CnfInstance(VarMap vars);

    VarMap& vars() noexcept { return vars_; }
    const VarMap& vars() const noexcept { return vars_; }

    /// Appends a clause. Literals are kept as given, repeats included; an
    /// empty clause, an out-of-range variable or a complementary pair is a
    /// logic_error.
    void add_clause(std::span<const Literal> lits, ClauseTag tag);
    void add_clause(std::initializer_list<Literal> lits, ClauseTag tag) {
        add_clause(std::span<const Literal>(lits.begin(), lits.size()), tag);
    }

    std::size_t clause_count() const noexcept { return tags_.size(); }
    std::span<const Literal> clause(std::size_t i) const;
    const ClauseTag& tag(std::size_t i) const { return tags_.at(i); }

private:
    VarMap vars_;
    std::vector<Literal> literals_;
    std::vector<std::size_t> offsets_{0};
    std::vector<ClauseTag> tags_;
};

/// "p cnf V C" then one zero-terminated clause per line, in insertion order.
/// Returns the number of bytes written; throws Error if the stream fails.
std::size_t write_dimacs(const CnfInstance& inst, std::ostream& out);
std::string dimacs_string(const CnfInstance& inst);

InstanceStats instance_stats(const CnfInstance& inst);
/// Stats restricted to clauses tagged with one word.
InstanceStats word_stats(const CnfInstance& inst, std::int32_t word);

nlohmann::json stats_to_json(const InstanceStats& st);

}  // namespace nfasat
