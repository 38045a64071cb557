#include "nfasat/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

#include "nfasat/error.hpp"

namespace nfasat {

std::string_view family_name(Family f) {
    switch (f) {
        case Family::empty_word_accept: return "1";
        case Family::empty_word_reject: return "2";
        case Family::aux_implies_path: return "4";
        case Family::path_implies_aux: return "5";
        case Family::aux_disjunction: return "6";
        case Family::negative_path: return "7";
        case Family::prefix_aux_implies_path: return "8";
        case Family::prefix_path_implies_aux: return "9";
        case Family::prefix_aux_disjunction: return "10";
        case Family::prefix_negative_path: return "11";
        case Family::unreachable_state: return "prop2";
        case Family::unsat_marker: return "unsat_marker";
    }
    return "?";
}

VarId var_final(State j, int k) {
    if (k < 1 || j < 1 || j > k) throw Error("final-state index out of range");
    return j;
}

VarId var_delta(SymbolId a, State i, State j, int k, int n) {
    if (k < 1 || a < 1 || a > n || i < 1 || i > k || j < 1 || j > k)
        throw Error("transition index out of range");
    return k + (a - 1) * k * k + (i - 1) * k + j;
}

VarMap::VarMap(int k, int n) : k_(k), n_(n) {
    if (k < 1) throw Error("k must be at least 1");
    if (k > std::numeric_limits<std::int16_t>::max()) throw Error("too many states");
    if (n < 0) throw Error("negative alphabet size");
    const long long fixed = static_cast<long long>(k) + static_cast<long long>(n) * k * k;
    if (fixed > std::numeric_limits<VarId>::max() / 2) throw Error("variable space overflow");
    fixed_ = static_cast<VarId>(fixed);
}

VarId VarMap::final_var(State j) const { return var_final(j, k_); }

VarId VarMap::delta_var(SymbolId a, State from, State to) const { return var_delta(a, from, to, k_, n_); }

VarId VarMap::allocate_aux(std::int32_t word, std::span<const State> path) {
    if (total() == std::numeric_limits<VarId>::max()) throw BudgetExceeded("variable space exhausted");
    aux_words_.push_back(word);
    aux_paths_.insert(aux_paths_.end(), path.begin(), path.end());
    aux_offsets_.push_back(aux_paths_.size());
    return total();
}

AuxInfo VarMap::aux_info(VarId v) const {
    if (v <= fixed_ || v > total()) throw Error("variable " + std::to_string(v) + " is not auxiliary");
    const auto i = static_cast<std::size_t>(v - fixed_ - 1);
    AuxInfo info{aux_words_[i], 0, {aux_paths_.begin() + static_cast<std::ptrdiff_t>(aux_offsets_[i]),
                                    aux_paths_.begin() + static_cast<std::ptrdiff_t>(aux_offsets_[i + 1])}};
    if (!info.path.empty()) info.end = info.path.back();
    return info;
}

CnfInstance::CnfInstance(VarMap vars) : vars_(std::move(vars)) {}

void CnfInstance::add_clause(std::span<const Literal> lits, ClauseTag tag) {
    if (lits.empty()) throw std::logic_error("empty clause");
    const VarId limit = vars_.total();
    bool has_pos = false, has_neg = false;
    for (Literal l : lits) {
        if (l.var() < 1 || l.var() > limit)
            throw std::logic_error("literal " + std::to_string(l.dimacs()) + " outside variable range");
        (l.negative() ? has_neg : has_pos) = true;
    }
    if (has_pos && has_neg) {
        std::vector<Literal> sorted(lits.begin(), lits.end());
        std::ranges::sort(sorted, [](Literal a, Literal b) { return a.var() < b.var(); });
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i].var() == sorted[i - 1].var() && sorted[i] != sorted[i - 1])
                throw std::logic_error("tautological clause on variable " + std::to_string(sorted[i].var()));
    }
    literals_.insert(literals_.end(), lits.begin(), lits.end());
    offsets_.push_back(literals_.size());
    tags_.push_back(tag);
}

std::span<const Literal> CnfInstance::clause(std::size_t i) const {
    if (i >= tags_.size()) throw std::out_of_range("clause index");
    return std::span<const Literal>(literals_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::size_t write_dimacs(const CnfInstance& inst, std::ostream& out) {
    std::string buf = "p cnf " + std::to_string(inst.vars().total()) + " " +
                      std::to_string(inst.clause_count()) + "\n";
    std::size_t written = 0;
    char num[16];
    auto flush = [&] {
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (!out) throw Error("failed to write DIMACS output");
        written += buf.size();
        buf.clear();
    };
    for (std::size_t c = 0; c < inst.clause_count(); ++c) {
        for (Literal l : inst.clause(c)) {
            const auto res = std::to_chars(num, num + sizeof num, l.dimacs());
            buf.append(num, res.ptr);
            buf += ' ';
        }
        buf += "0\n";
        if (buf.size() > (1u << 16)) flush();
    }
    flush();
    return written;
}

std::string dimacs_string(const CnfInstance& inst) {
    std::ostringstream out;
    write_dimacs(inst, out);
    return out.str();
}

namespace {

InstanceStats collect(const CnfInstance& inst, auto&& keep) {
    InstanceStats st;
    st.variables = inst.vars().total();
    for (std::size_t c = 0; c < inst.clause_count(); ++c) {
        const ClauseTag& t = inst.tag(c);
        if (!keep(t)) continue;
        const std::size_t arity = inst.clause(c).size();
        ++st.clauses;
        ++st.arity_histogram[arity];
        ++st.family_counts[t.family];
        ++st.family_arity[t.family][arity];
    }
    return st;
}

}  // namespace

InstanceStats instance_stats(const CnfInstance& inst) {
    return collect(inst, [](const ClauseTag&) { return true; });
}

InstanceStats word_stats(const CnfInstance& inst, std::int32_t word) {
    return collect(inst, [word](const ClauseTag& t) { return t.word == word; });
}

nlohmann::json stats_to_json(const InstanceStats& st) {
    nlohmann::json arity = nlohmann::json::object();
    for (auto [a, c] : st.arity_histogram) arity[std::to_string(a)] = c;
    nlohmann::json families = nlohmann::json::object();
    for (auto [f, c] : st.family_counts) {
        nlohmann::json by_arity = nlohmann::json::object();
        for (auto [a, cnt] : st.family_arity.at(f)) by_arity[std::to_string(a)] = cnt;
        families[std::string(family_name(f))] = {{"clauses", c}, {"arity", by_arity}};
    }
    return {{"variables", st.variables}, {"clauses", st.clauses}, {"arity", arity}, {"families", families}};
}

}  // namespace nfasat
