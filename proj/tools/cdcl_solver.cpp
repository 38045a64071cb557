// nfasat-cdcl: a small conflict-driven clause-learning SAT solver speaking the
// SAT-competition protocol (DIMACS in, "s"/"v" lines out, exit 10/20).
//
// Two watched literals with blockers, first-UIP learning with local
// minimization, VSIDS, phase saving, Luby restarts and LBD-based clause
// database reduction.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Lit = std::uint32_t;  // 2 * var + negated, var 0-based
constexpr Lit lit_undef = ~Lit{0};

inline Lit make_lit(int dimacs) {
    const auto v = static_cast<Lit>(dimacs < 0 ? -dimacs : dimacs) - 1;
    return 2 * v + (dimacs < 0 ? 1 : 0);
}
inline std::uint32_t var_of(Lit l) { return l >> 1; }
inline Lit neg(Lit l) { return l ^ 1; }

enum : std::int8_t { val_false = -1, val_undef = 0, val_true = 1 };

struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
    bool deleted = false;
    std::uint32_t lbd = 0;
};

struct Watch {
    std::uint32_t clause;
    Lit blocker;
};

class Solver {
public:
    explicit Solver(std::uint32_t vars) : nvars_(vars) {
        assigns_.assign(vars, val_undef);
        level_.assign(vars, 0);
        reason_.assign(vars, no_reason);
        activity_.assign(vars, 0.0);
        phase_.assign(vars, 0);
        seen_.assign(vars, 0);
        watches_.resize(2 * static_cast<std::size_t>(vars));
        heap_index_.assign(vars, -1);
        for (std::uint32_t v = 0; v < vars; ++v) heap_insert(v);
    }

    /// Returns false when the formula is already unsatisfiable.
    bool add_clause(std::vector<Lit> lits) {
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        for (std::size_t i = 1; i < lits.size(); ++i)
            if (lits[i] == neg(lits[i - 1])) return true;  // tautology
        std::erase_if(lits, [&](Lit l) { return value(l) == val_false; });
        if (std::any_of(lits.begin(), lits.end(), [&](Lit l) { return value(l) == val_true; })) return true;
        if (lits.empty()) return false;
        if (lits.size() == 1) {
            enqueue(lits[0], no_reason);
            return propagate() == no_reason;
        }
        attach(static_cast<std::uint32_t>(clauses_.size()), lits);
        clauses_.push_back({std::move(lits), false, false, 0});
        return true;
    }

    bool solve() {
        if (propagate() != no_reason) return false;
        std::uint64_t restart_count = 0;
        for (;;) {
            const std::uint64_t budget = 100 * luby(restart_count++);
            const int r = search(budget);
            if (r != 0) return r > 0;
        }
    }

    bool model_value(std::uint32_t v) const { return assigns_[v] == val_true; }

private:
    static constexpr std::uint32_t no_reason = ~std::uint32_t{0};

    std::int8_t value(Lit l) const {
        const std::int8_t a = assigns_[var_of(l)];
        return (l & 1) ? static_cast<std::int8_t>(-a) : a;
    }

    void attach(std::uint32_t ci, const std::vector<Lit>& lits) {
        watches_[neg(lits[0])].push_back({ci, lits[1]});
        watches_[neg(lits[1])].push_back({ci, lits[0]});
    }

    void enqueue(Lit l, std::uint32_t reason) {
        const std::uint32_t v = var_of(l);
        assigns_[v] = (l & 1) ? val_false : val_true;
        level_[v] = static_cast<std::uint32_t>(trail_lim_.size());
        reason_[v] = reason;
        trail_.push_back(l);
    }

    /// Returns the index of a conflicting clause or no_reason.
    std::uint32_t propagate() {
        while (qhead_ < trail_.size()) {
            const Lit p = trail_[qhead_++];  // p became true; visit clauses watching ~p
            std::vector<Watch>& ws = watches_[p];
            std::size_t i = 0, j = 0;
            const Lit false_lit = neg(p);
            while (i < ws.size()) {
                const Watch w = ws[i];
                if (value(w.blocker) == val_true) {
                    ws[j++] = ws[i++];
                    continue;
                }
                Clause& c = clauses_[w.clause];
                if (c.deleted) {
                    ++i;
                    continue;
                }
                if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
                ++i;
                const Lit first = c.lits[0];
                if (first != w.blocker && value(first) == val_true) {
                    ws[j++] = {w.clause, first};
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.lits.size(); ++k) {
                    if (value(c.lits[k]) != val_false) {
                        std::swap(c.lits[1], c.lits[k]);
                        watches_[neg(c.lits[1])].push_back({w.clause, first});
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = {w.clause, first};
                if (value(first) == val_false) {
                    while (i < ws.size()) ws[j++] = ws[i++];
                    ws.resize(j);
                    qhead_ = trail_.size();
                    return w.clause;
                }
                enqueue(first, w.clause);
            }
            ws.resize(j);
        }
        return no_reason;
    }

    void bump(std::uint32_t v) {
        if ((activity_[v] += var_inc_) > 1e100) {
            for (double& a : activity_) a *= 1e-100;
            var_inc_ *= 1e-100;
        }
        if (heap_index_[v] >= 0) sift_up(static_cast<std::size_t>(heap_index_[v]));
    }

    void analyze(std::uint32_t confl, std::vector<Lit>& learnt, std::uint32_t& bt_level) {
        learnt.assign(1, lit_undef);
        int pending = 0;
        Lit p = lit_undef;
        std::size_t index = trail_.size();
        const auto current = static_cast<std::uint32_t>(trail_lim_.size());
        do {
            const Clause& c = clauses_[confl];
            for (std::size_t k = (p == lit_undef ? 0 : 1); k < c.lits.size(); ++k) {
                const Lit q = c.lits[k];
                const std::uint32_t v = var_of(q);
                if (seen_[v] || level_[v] == 0) continue;
                seen_[v] = 1;
                bump(v);
                if (level_[v] >= current)
                    ++pending;
                else
                    learnt.push_back(q);
            }
            while (!seen_[var_of(trail_[--index])]) {
            }
            p = trail_[index];
            confl = reason_[var_of(p)];
            seen_[var_of(p)] = 0;
            --pending;
            if (pending > 0 && confl != no_reason) {
                // the reason clause must have p first
                Clause& rc = clauses_[confl];
                if (rc.lits[0] != p)
                    for (std::size_t k = 1; k < rc.lits.size(); ++k)
                        if (rc.lits[k] == p) {
                            std::swap(rc.lits[0], rc.lits[k]);
                            break;
                        }
            }
        } while (pending > 0);
        learnt[0] = neg(p);

        // local minimization: drop literals implied by the rest of the clause
        std::vector<Lit> kept{learnt[0]};
        for (std::size_t k = 1; k < learnt.size(); ++k) {
            const std::uint32_t v = var_of(learnt[k]);
            const std::uint32_t r = reason_[v];
            bool redundant = r != no_reason;
            if (redundant)
                for (Lit q : clauses_[r].lits) {
                    const std::uint32_t u = var_of(q);
                    if (u != v && !seen_[u] && level_[u] > 0) {
                        redundant = false;
                        break;
                    }
                }
            if (!redundant) kept.push_back(learnt[k]);
        }
        for (std::size_t k = 1; k < learnt.size(); ++k) seen_[var_of(learnt[k])] = 0;
        learnt.swap(kept);

        bt_level = 0;
        if (learnt.size() > 1) {
            std::size_t max_i = 1;
            for (std::size_t k = 2; k < learnt.size(); ++k)
                if (level_[var_of(learnt[k])] > level_[var_of(learnt[max_i])]) max_i = k;
            std::swap(learnt[1], learnt[max_i]);
            bt_level = level_[var_of(learnt[1])];
        }
        var_inc_ /= 0.95;
    }

    void backtrack(std::uint32_t lvl) {
        if (trail_lim_.size() <= lvl) return;
        for (std::size_t i = trail_.size(); i > trail_lim_[lvl]; --i) {
            const std::uint32_t v = var_of(trail_[i - 1]);
            phase_[v] = assigns_[v] == val_true ? 1 : 0;
            assigns_[v] = val_undef;
            reason_[v] = no_reason;
            if (heap_index_[v] < 0) heap_insert(v);
        }
        trail_.resize(trail_lim_[lvl]);
        trail_lim_.resize(lvl);
        qhead_ = trail_.size();
    }

    std::uint32_t lbd(const std::vector<Lit>& lits) {
        std::vector<std::uint32_t> levels;
        for (Lit l : lits) levels.push_back(level_[var_of(l)]);
        std::sort(levels.begin(), levels.end());
        return static_cast<std::uint32_t>(std::unique(levels.begin(), levels.end()) - levels.begin());
    }

    void reduce_db() {
        std::vector<std::uint32_t> learnts;
        for (std::uint32_t i = 0; i < clauses_.size(); ++i)
            if (clauses_[i].learnt && !clauses_[i].deleted && clauses_[i].lbd > 2) learnts.push_back(i);
        std::sort(learnts.begin(), learnts.end(),
                  [&](std::uint32_t a, std::uint32_t b) { return clauses_[a].lbd > clauses_[b].lbd; });
        std::vector<std::uint8_t> locked(clauses_.size(), 0);
        for (Lit l : trail_)
            if (reason_[var_of(l)] != no_reason) locked[reason_[var_of(l)]] = 1;
        std::size_t removed = 0;
        for (std::size_t i = 0; i < learnts.size() / 2; ++i)
            if (!locked[learnts[i]]) {
                clauses_[learnts[i]].deleted = true;
                clauses_[learnts[i]].lits.clear();
                clauses_[learnts[i]].lits.shrink_to_fit();
                ++removed;
            }
        learnt_count_ -= removed;
        for (auto& ws : watches_)
            std::erase_if(ws, [&](const Watch& w) { return clauses_[w.clause].deleted; });
    }

    std::uint32_t pick_branch() {
        while (!heap_.empty()) {
            const std::uint32_t v = heap_pop();
            if (assigns_[v] == val_undef) return v;
        }
        return ~std::uint32_t{0};
    }

    /// 1 = sat, -1 = unsat, 0 = restart.
    int search(std::uint64_t conflict_budget) {
        std::uint64_t conflicts = 0;
        std::vector<Lit> learnt;
        for (;;) {
            const std::uint32_t confl = propagate();
            if (confl != no_reason) {
                ++conflicts;
                if (trail_lim_.empty()) return -1;
                std::uint32_t bt = 0;
                analyze(confl, learnt, bt);
                backtrack(bt);
                if (learnt.size() == 1) {
                    enqueue(learnt[0], no_reason);
                } else {
                    const auto ci = static_cast<std::uint32_t>(clauses_.size());
                    const std::uint32_t l = lbd(learnt);
                    attach(ci, learnt);
                    clauses_.push_back({learnt, true, false, l});
                    ++learnt_count_;
                    enqueue(learnt[0], ci);
                }
                continue;
            }
            if (conflicts >= conflict_budget) {
                backtrack(0);
                return 0;
            }
            if (learnt_count_ > max_learnts_) {
                reduce_db();
                max_learnts_ += max_learnts_ / 10;
            }
            const std::uint32_t v = pick_branch();
            if (v == ~std::uint32_t{0}) return 1;
            trail_lim_.push_back(static_cast<std::uint32_t>(trail_.size()));
            enqueue(2 * v + (phase_[v] ? 0 : 1), no_reason);
        }
    }

    static std::uint64_t luby(std::uint64_t i) {
        std::uint64_t size = 1, seq = 0;
        while (size < i + 1) {
            ++seq;
            size = 2 * size + 1;
        }
        while (size - 1 != i) {
            size = (size - 1) >> 1;
            --seq;
            i = i % size;
        }
        return std::uint64_t{1} << seq;
    }

    // binary max-heap on activity
    bool heap_less(std::uint32_t a, std::uint32_t b) const { return activity_[a] > activity_[b]; }
    void heap_insert(std::uint32_t v) {
        heap_index_[v] = static_cast<int>(heap_.size());
        heap_.push_back(v);
        sift_up(heap_.size() - 1);
    }
    void sift_up(std::size_t i) {
        const std::uint32_t v = heap_[i];
        while (i > 0) {
            const std::size_t parent = (i - 1) / 2;
            if (!heap_less(v, heap_[parent])) break;
            heap_[i] = heap_[parent];
            heap_index_[heap_[i]] = static_cast<int>(i);
            i = parent;
        }
        heap_[i] = v;
        heap_index_[v] = static_cast<int>(i);
    }
    std::uint32_t heap_pop() {
        const std::uint32_t top = heap_[0];
        heap_index_[top] = -1;
        const std::uint32_t last = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) {
            std::size_t i = 0;
            for (;;) {
                std::size_t child = 2 * i + 1;
                if (child >= heap_.size()) break;
                if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
                if (!heap_less(heap_[child], last)) break;
                heap_[i] = heap_[child];
                heap_index_[heap_[i]] = static_cast<int>(i);
                i = child;
            }
            heap_[i] = last;
            heap_index_[last] = static_cast<int>(i);
        }
        return top;
    }

    std::uint32_t nvars_;
    std::vector<Clause> clauses_;
    std::vector<std::vector<Watch>> watches_;
    std::vector<std::int8_t> assigns_;
    std::vector<std::uint32_t> level_;
    std::vector<std::uint32_t> reason_;
    std::vector<double> activity_;
    std::vector<std::uint8_t> phase_;
    std::vector<std::uint8_t> seen_;
    std::vector<Lit> trail_;
    std::vector<std::uint32_t> trail_lim_;
    std::size_t qhead_ = 0;
    std::vector<std::uint32_t> heap_;
    std::vector<int> heap_index_;
    double var_inc_ = 1.0;
    std::size_t learnt_count_ = 0;
    std::size_t max_learnts_ = 20000;
};

[[noreturn]] void fail(const std::string& msg) {
    std::cerr << "nfasat-cdcl: " << msg << '\n';
    std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2 || std::string(argv[1]) == "-h" || std::string(argv[1]) == "--help") {
        std::cerr << "usage: nfasat-cdcl FILE.cnf\n";
        return argc == 2 ? 0 : 1;
    }
    std::ifstream in(argv[1]);
    if (!in) fail(std::string("cannot open ") + argv[1]);

    std::string line;
    long long nvars = -1, nclauses = -1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            std::istringstream hs(line);
            std::string p, fmt;
            if (!(hs >> p >> fmt >> nvars >> nclauses) || fmt != "cnf" || nvars < 0 || nclauses < 0)
                fail("malformed header: " + line);
            break;
        }
        fail("clause before header");
    }
    if (nvars < 0) fail("missing 'p cnf' header");

    Solver solver(static_cast<std::uint32_t>(nvars));
    bool ok = true;
    std::vector<Lit> clause;
    long long lit = 0;
    std::string tok;
    while (in >> tok) {
        if (tok == "c") {
            std::getline(in, line);
            continue;
        }
        if (tok == "%") break;
        try {
            lit = std::stoll(tok);
        } catch (const std::exception&) {
            fail("bad literal '" + tok + "'");
        }
        if (lit == 0) {
            if (ok) ok = solver.add_clause(std::move(clause));
            clause.clear();
        } else {
            if (lit > nvars || lit < -nvars) fail("literal " + tok + " exceeds declared variables");
            clause.push_back(make_lit(static_cast<int>(lit)));
        }
    }
    if (!clause.empty() && ok) ok = solver.add_clause(std::move(clause));

    if (!ok || !solver.solve()) {
        std::cout << "s UNSATISFIABLE\n" << std::flush;
        return 20;
    }
    std::string out = "s SATISFIABLE\n";
    std::string v = "v";
    for (long long i = 0; i < nvars; ++i) {
        v += ' ';
        v += std::to_string(solver.model_value(static_cast<std::uint32_t>(i)) ? i + 1 : -(i + 1));
        if (v.size() > 70) {
            out += v + '\n';
            v = "v";
        }
    }
    out += v + " 0\n";
    std::cout << out << std::flush;
    return 10;
}
