#include "nfasat/nfa.hpp"

#include <algorithm>
#include <sstream>

#include "nfasat/error.hpp"

namespace nfasat {

Nfa::Nfa(int k, int n) : k_(k), n_(n) {
    if (k < 1) throw Error("automaton needs at least one state");
    if (n < 0) throw Error("negative alphabet size");
    finals_.assign(static_cast<std::size_t>(k), 0);
    delta_.assign(static_cast<std::size_t>(n) * k * k, 0);
}

void Nfa::check_state(State s) const {
    if (s < 1 || s > k_) throw Error("state " + std::to_string(s) + " outside 1.." + std::to_string(k_));
}

std::size_t Nfa::index(SymbolId a, State from, State to) const {
    if (a < 1 || a > n_) throw Error("symbol " + std::to_string(a) + " outside 1.." + std::to_string(n_));
    check_state(from);
    check_state(to);
    return (static_cast<std::size_t>(a - 1) * k_ + (from - 1)) * k_ + (to - 1);
}

bool Nfa::is_final(State j) const {
    check_state(j);
    return finals_[j - 1] != 0;
}

void Nfa::set_final(State j, bool final) {
    check_state(j);
    finals_[j - 1] = final ? 1 : 0;
}

std::vector<State> Nfa::finals() const {
    std::vector<State> out;
    for (State j = 1; j <= k_; ++j)
        if (finals_[j - 1]) out.push_back(j);
    return out;
}

bool Nfa::has_transition(SymbolId a, State from, State to) const { return delta_[index(a, from, to)] != 0; }

void Nfa::set_transition(SymbolId a, State from, State to, bool present) {
    delta_[index(a, from, to)] = present ? 1 : 0;
}

std::vector<State> Nfa::successors(SymbolId a, State from) const {
    std::vector<State> out;
    for (State to = 1; to <= k_; ++to)
        if (has_transition(a, from, to)) out.push_back(to);
    return out;
}

std::size_t Nfa::transition_count() const { return static_cast<std::size_t>(std::ranges::count(delta_, 1)); }

bool accepts(const Nfa& a, const Word& w) {
    const int k = a.states();
    std::vector<std::uint8_t> frontier(static_cast<std::size_t>(k), 0), next(frontier.size());
    frontier[0] = 1;
    for (SymbolId s : w) {
        std::ranges::fill(next, 0);
        bool any = false;
        for (State i = 1; i <= k; ++i) {
            if (!frontier[i - 1]) continue;
            for (State j = 1; j <= k; ++j)
                if (a.has_transition(s, i, j)) next[j - 1] = any = true;
        }
        if (!any) return false;
        frontier.swap(next);
    }
    for (State j = 1; j <= k; ++j)
        if (frontier[j - 1] && a.is_final(j)) return true;
    return false;
}

std::vector<Misclassification> misclassified(const Nfa& a, const LabeledSample& s) {
    std::vector<Misclassification> out;
    for (const Word& w : s.positives())
        if (!accepts(a, w)) out.push_back({w, true});
    for (const Word& w : s.negatives())
        if (accepts(a, w)) out.push_back({w, false});
    return out;
}

bool consistent(const Nfa& a, const LabeledSample& s) {
    return std::ranges::all_of(s.positives(), [&](const Word& w) { return accepts(a, w); }) &&
           std::ranges::none_of(s.negatives(), [&](const Word& w) { return accepts(a, w); });
}

nlohmann::json nfa_to_json(const Nfa& a, const std::vector<std::string>& alphabet) {
    if (static_cast<int>(alphabet.size()) != a.alphabet_size())
        throw Error("alphabet does not match automaton");
    nlohmann::json transitions = nlohmann::json::array();
    for (SymbolId s = 1; s <= a.alphabet_size(); ++s)
        for (State i = 1; i <= a.states(); ++i)
            for (State j : a.successors(s, i))
                transitions.push_back({{"sym", alphabet[s - 1]}, {"from", i}, {"to", j}});
    return {{"k", a.states()}, {"finals", a.finals()}, {"transitions", transitions}};
}

Nfa nfa_from_json(const nlohmann::json& j, const std::vector<std::string>& alphabet) {
    try {
        Nfa a(j.at("k").get<int>(), static_cast<int>(alphabet.size()));
        for (State f : j.at("finals")) a.set_final(f);
        for (const auto& t : j.at("transitions")) {
            const auto sym = t.at("sym").get<std::string>();
            const auto it = std::ranges::find(alphabet, sym);
            if (it == alphabet.end()) throw Error("unknown symbol '" + sym + "'");
            a.set_transition(static_cast<SymbolId>(it - alphabet.begin() + 1), t.at("from").get<int>(),
                             t.at("to").get<int>());
        }
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed automaton json: ") + e.what());
    }
}

std::string nfa_to_dot(const Nfa& a, const std::vector<std::string>& alphabet) {
    std::ostringstream out;
    out << "digraph nfa {\n  rankdir=LR;\n  init [shape=point];\n";
    for (State i = 1; i <= a.states(); ++i)
        out << "  q" << i << " [shape=" << (a.is_final(i) ? "doublecircle" : "circle") << "];\n";
    out << "  init -> q1;\n";
    for (State i = 1; i <= a.states(); ++i)
        for (State j = 1; j <= a.states(); ++j) {
            std::string label;
            for (SymbolId s = 1; s <= a.alphabet_size(); ++s)
                if (a.has_transition(s, i, j)) label += (label.empty() ? "" : ",") + alphabet[s - 1];
            if (!label.empty()) out << "  q" << i << " -> q" << j << " [label=\"" << label << "\"];\n";
        }
    out << "}\n";
    return out.str();
}

}  // namespace nfasat
