#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nfasat/sample.hpp"

namespace nfasat {

/// Automaton state, 1..k. State 1 is the initial state.
using State = int;

/// Nondeterministic automaton without epsilon moves.
class Nfa {
public:
    Nfa(int k, int n);

    int states() const noexcept { return k_; }
    int alphabet_size() const noexcept { return n_; }

    bool is_final(State j) const;
    void set_final(State j, bool final = true);
    std::vector<State> finals() const;

    bool has_transition(SymbolId a, State from, State to) const;
    void set_transition(SymbolId a, State from, State to, bool present = true);
    std::vector<State> successors(SymbolId a, State from) const;
    std::size_t transition_count() const;

    bool operator==(const Nfa&) const = default;

private:
    std::size_t index(SymbolId a, State from, State to) const;
    void check_state(State s) const;

    int k_;
    int n_;
    std::vector<std::uint8_t> finals_;
    std::vector<std::uint8_t> delta_;  // [a][from][to], row-major
};

/// Frontier-set simulation from state 1.
bool accepts(const Nfa& a, const Word& w);

bool consistent(const Nfa& a, const LabeledSample& s);

/// Words the automaton gets wrong: accepted negatives and rejected positives.
struct Misclassification {
    Word word;
    bool positive;  // label in the sample
};
std::vector<Misclassification> misclassified(const Nfa& a, const LabeledSample& s);

/// Largest `k + n*k*k` the oracle will enumerate.
inline constexpr int oracle_bit_limit = 24;

/// Exhaustive search over every size-k automaton, in a fixed order: the
/// candidate is the bit string f_1..f_k, delta(1,1,1)..delta(n,k,k) read as a
/// binary number with f_1 most significant, scanned upwards from zero. Returns
/// the first consistent candidate, or nullopt when none exists. Throws
/// OracleBoundError above oracle_bit_limit. Runs on all OpenMP threads;
/// the result does not depend on the thread count.
std::optional<Nfa> brute_force_search(const LabeledSample& s, int k);

/// Single-threaded reference for brute_force_search.
std::optional<Nfa> brute_force_search_serial(const LabeledSample& s, int k);

nlohmann::json nfa_to_json(const Nfa& a, const std::vector<std::string>& alphabet);
/// Inverse of nfa_to_json; symbols are resolved against `alphabet`.
Nfa nfa_from_json(const nlohmann::json& j, const std::vector<std::string>& alphabet);
std::string nfa_to_dot(const Nfa& a, const std::vector<std::string>& alphabet);

}  // namespace nfasat
