#pragma once

// Helpers shared by the test programs. The reference computations here are
// deliberately naive (explicit enumeration, no pruning) so they can serve as
// independent oracles for the optimized library code.

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nfasat/pipeline.hpp"

namespace nfasat::testing {

/// Sample over single-character symbols; "" is the empty word.
inline LabeledSample make_sample(const std::vector<std::string>& pos, const std::vector<std::string>& neg,
                                 std::string alphabet = "") {
    std::set<char> chars(alphabet.begin(), alphabet.end());
    for (const auto* list : {&pos, &neg})
        for (const std::string& w : *list) chars.insert(w.begin(), w.end());
    std::vector<std::string> symbols;
    for (char c : chars) symbols.emplace_back(1, c);
    auto to_word = [&](const std::string& text) {
        Word w;
        for (char c : text) w.push_back(static_cast<SymbolId>(std::distance(chars.begin(), chars.find(c))) + 1);
        return w;
    };
    std::vector<Word> p, n;
    for (const std::string& w : pos) p.push_back(to_word(w));
    for (const std::string& w : neg) n.push_back(to_word(w));
    return LabeledSample(std::move(symbols), std::move(p), std::move(n));
}

inline Word word_of(const LabeledSample& s, const std::string& text) {
    Word w;
    for (char c : text) {
        const auto& a = s.alphabet();
        w.push_back(static_cast<SymbolId>(std::find(a.begin(), a.end(), std::string(1, c)) - a.begin()) + 1);
    }
    return w;
}

/// All state sequences 1 = q_0, q_1..q_len with q_len in `ends`, by counting
/// in base k (lexicographic order).
inline std::vector<std::vector<State>> naive_paths(std::size_t len, int k, const std::vector<State>& ends) {
    std::vector<std::vector<State>> out;
    std::vector<State> digits(len, 1);
    for (;;) {
        if (std::find(ends.begin(), ends.end(), digits.back()) != ends.end()) {
            std::vector<State> p{1};
            p.insert(p.end(), digits.begin(), digits.end());
            out.push_back(std::move(p));
        }
        std::size_t i = len;
        while (i > 0 && digits[i - 1] == k) digits[--i] = 1;
        if (i == 0) break;
        ++digits[i - 1];
    }
    return out;
}

inline std::set<VarId> path_vars(const Word& w, const std::vector<State>& path, int k, int n) {
    std::set<VarId> vars;
    for (std::size_t p = 0; p < w.size(); ++p) vars.insert(k + (w[p] - 1) * k * k + (path[p] - 1) * k + path[p + 1]);
    (void)n;
    return vars;
}

/// Acceptance by trying every state path.
inline bool naive_accepts(const Nfa& a, const Word& w) {
    const int k = a.states();
    std::vector<State> all;
    for (State j = 1; j <= k; ++j) all.push_back(j);
    if (w.empty()) return a.is_final(1);
    for (const auto& path : naive_paths(w.size(), k, all)) {
        bool ok = a.is_final(path.back());
        for (std::size_t p = 0; ok && p < w.size(); ++p) ok = a.has_transition(w[p], path[p], path[p + 1]);
        if (ok) return true;
    }
    return false;
}

inline std::vector<State> allowed_ends(const LabeledSample& s, int k) {
    std::vector<State> ends;
    for (State j = s.empty_word_negative() ? 2 : 1; j <= k; ++j) ends.push_back(j);
    return ends;
}

/// Reference subsumption: the number of paths of each word surviving the
/// filter, where `sources(word_id)` lists the negative indices whose
/// couples may filter that word. A path is dropped when some source couple
/// with the same end state has a strictly smaller variable set, or an equal
/// one with an earlier (rank, path index) position; positive words lose
/// every tie.
template <class Sources>
std::vector<std::size_t> naive_kept_counts(const LabeledSample& s, int k, Sources sources) {
    const int n = s.alphabet_size();
    const auto ends = allowed_ends(s, k);
    const auto& neg = s.negatives();
    std::vector<std::size_t> order(neg.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return neg[a].size() < neg[b].size(); });
    std::vector<std::size_t> rank(neg.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

    struct Couple {
        std::set<VarId> vars;
        State end;
        std::size_t rank;
        std::size_t path;
    };
    auto couples_of = [&](const Word& w, std::size_t word_rank) {
        std::vector<Couple> out;
        if (w.empty()) return out;
        const auto paths = naive_paths(w.size(), k, ends);
        for (std::size_t i = 0; i < paths.size(); ++i)
            out.push_back({path_vars(w, paths[i], k, n), paths[i].back(), word_rank, i});
        return out;
    };

    const std::size_t total = s.positives().size() + neg.size();
    std::vector<std::size_t> kept(total, 0);
    for (std::size_t id = 0; id < total; ++id) {
        const bool positive = id < s.positives().size();
        const Word& w = positive ? s.positives()[id] : neg[id - s.positives().size()];
        const std::size_t my_rank = positive ? SIZE_MAX : rank[id - s.positives().size()];
        std::vector<Couple> db;
        for (std::size_t v : sources(id)) {
            auto c = couples_of(neg[v], rank[v]);
            db.insert(db.end(), c.begin(), c.end());
        }
        for (const Couple& q : couples_of(w, my_rank)) {
            bool dropped = false;
            for (const Couple& d : db) {
                if (d.end != q.end || !std::includes(q.vars.begin(), q.vars.end(), d.vars.begin(), d.vars.end()))
                    continue;
                if (d.vars.size() < q.vars.size() || positive ||
                    std::pair(d.rank, d.path) < std::pair(q.rank, q.path)) {
                    dropped = true;
                    break;
                }
            }
            if (!dropped) ++kept[id];
        }
    }
    return kept;
}

/// Longest strict-inclusion chain from the empty multiset, computed by plain
/// recursion over the sample's multisets.
inline int naive_level(const WordMultiset& m, const std::vector<WordMultiset>& all) {
    int best = 0;
    for (const WordMultiset& o : all)
        if (o != m && multiset_included(o, m) && o.size() > 0) best = std::max(best, 1 + naive_level(o, all));
    return m.size() == 0 ? 0 : std::max(best, 1);
}

/// Independent lattice-filter sources: negatives strictly below the word's
/// multiset with level <= l, plus same-multiset negatives when the word's
/// own level is <= l.
inline std::vector<std::size_t> naive_mset_sources(const LabeledSample& s, std::size_t id, int l) {
    const int n = s.alphabet_size();
    std::vector<WordMultiset> all;
    for (const Word& w : s.positives()) all.push_back(multiset_of(w, n));
    for (const Word& w : s.negatives()) all.push_back(multiset_of(w, n));
    const WordMultiset& me = all[id];
    const int my_level = naive_level(me, all);
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < s.negatives().size(); ++v) {
        const WordMultiset& m = all[s.positives().size() + v];
        if (m.size() == 0) continue;
        const bool below = m != me && multiset_included(m, me) && naive_level(m, all) <= l;
        const bool same = m == me && my_level <= l;
        if (below || same) out.push_back(v);
    }
    return out;
}

inline int naive_max_level(const LabeledSample& s) {
    const int n = s.alphabet_size();
    std::vector<WordMultiset> all;
    for (const Word& w : s.positives()) all.push_back(multiset_of(w, n));
    for (const Word& w : s.negatives()) all.push_back(multiset_of(w, n));
    int best = 0;
    for (const auto& m : all) best = std::max(best, naive_level(m, all));
    return best;
}

/// Paths surviving a prefix decomposition with the given cuts.
inline std::size_t naive_prefix_kept(std::size_t len, const std::vector<std::size_t>& cuts, int k,
                                     const std::vector<State>& ends, PrefixMode mode) {
    std::size_t kept = 0;
    for (const auto& path : naive_paths(len, k, ends)) {
        std::vector<State> boundary;
        for (std::size_t c : cuts) boundary.push_back(path[c]);
        const State j = path.back();
        bool ok = std::find(boundary.begin(), boundary.end(), j) == boundary.end();
        if (ok && mode == PrefixMode::literal) {
            std::set<State> distinct(boundary.begin(), boundary.end());
            ok = distinct.size() == boundary.size();
        }
        if (ok) ++kept;
    }
    return kept;
}

/// Random micro sample: n in {1,2}, at most `max_words` words per label, each
/// of length <= max_len, labels never contradict.
inline LabeledSample random_sample(std::mt19937& rng, int max_words = 3, int max_len = 3) {
    const int n = std::uniform_int_distribution<int>(1, 2)(rng);
    const std::string letters = n == 1 ? "a" : "ab";
    auto draw_word = [&] {
        const int len = std::uniform_int_distribution<int>(0, max_len)(rng);
        std::string w;
        for (int i = 0; i < len; ++i) w += letters[std::uniform_int_distribution<int>(0, n - 1)(rng)];
        return w;
    };
    std::set<std::string> used;
    std::vector<std::string> pos, neg;
    const int np = std::uniform_int_distribution<int>(0, max_words)(rng);
    const int nn = std::uniform_int_distribution<int>(0, max_words)(rng);
    for (int i = 0; i < np; ++i)
        if (auto w = draw_word(); used.insert(w).second) pos.push_back(w);
    for (int i = 0; i < nn; ++i)
        if (auto w = draw_word(); used.insert(w).second) neg.push_back(w);
    return make_sample(pos, neg, letters);
}

inline std::vector<LabeledSample> micro_corpus(std::size_t count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<LabeledSample> out;
    while (out.size() < count) out.push_back(random_sample(rng));
    return out;
}

#ifdef NFASAT_CDCL_PATH
inline std::string solver_command() { return std::string("'") + NFASAT_CDCL_PATH + "' {cnf}"; }
#endif

/// Fresh scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("nfasat-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

    std::filesystem::path write(const std::string& name, const std::string& content) const {
        std::ofstream(file(name), std::ios::binary) << content;
        return file(name);
    }

private:
    std::filesystem::path path_;
};

}  // namespace nfasat::testing

#ifdef NFASAT_CDCL_PATH
namespace nfasat::testing {

struct Verdict {
    SolveStatus status = SolveStatus::unknown;
    bool verified = false;  // sat answers only: the decoded automaton is consistent
};

/// Runs the bundled solver on an encoding and checks any model it returns.
inline Verdict solve_encoding(const Encoding& e, const LabeledSample& s, const TempDir& dir) {
    static std::atomic<int> counter{0};
    const auto path = dir.file("e" + std::to_string(counter++) + ".cnf");
    {
        std::ofstream out(path, std::ios::binary);
        write_dimacs(e.cnf, out);
    }
    SolverConfig cfg;
    cfg.command = solver_command();
    const SolverOutcome out = run_solver(path, cfg);
    std::filesystem::remove(path);
    Verdict v{out.status, false};
    if (out.status == SolveStatus::sat) v.verified = verify(decode_nfa(out.model, e.cnf.vars()), s).passed();
    return v;
}

}  // namespace nfasat::testing
#endif
