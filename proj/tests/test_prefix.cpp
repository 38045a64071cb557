#include <doctest.h>

#include "nfasat/prefix.hpp"
#include "support.hpp"

using namespace nfasat;
using nfasat::testing::make_sample;
using nfasat::testing::word_of;

namespace {

EncodeOptions prefix(PrefixMode mode, bool dedup = true) {
    EncodeOptions o;
    o.variant = Variant::prefix;
    o.prefix_mode = mode;
    o.dedup_within = dedup;
    return o;
}

std::set<Word> negative_set(const LabeledSample& s) {
    std::set<Word> out;
    for (const Word& w : s.negatives())
        if (!w.empty()) out.insert(w);
    return out;
}

/// Every cut set whose prefixes are all negative and that skips no negative
/// proper prefix in between, found by trying all subsets.
std::vector<std::vector<std::size_t>> valid_cut_sets(const Word& w, const std::set<Word>& neg) {
    std::vector<std::vector<std::size_t>> out;
    const std::size_t positions = w.size() - 1;
    for (std::uint32_t mask = 0; mask < (1u << positions); ++mask) {
        std::vector<std::size_t> cuts;
        for (std::size_t p = 1; p <= positions; ++p)
            if (mask & (1u << (p - 1))) cuts.push_back(p);
        bool ok = true;
        for (std::size_t p = 1; p <= positions && ok; ++p) {
            const bool is_neg = neg.contains(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p)));
            const bool is_cut = std::ranges::find(cuts, p) != cuts.end();
            ok = is_neg == is_cut;
        }
        if (ok) out.push_back(cuts);
    }
    return out;
}

}  // namespace

TEST_CASE("greedy decompositions") {
    const auto s = make_sample({"abba"}, {"a", "ab", "abb"});
    const Word w = word_of(s, "abba");
    const PrefixDecomposition d = nested_prefix_cuts(w, negative_set(s));
    CHECK(d.cuts == std::vector<std::size_t>{1, 2, 3});
    CHECK(d.parts() == 4);
    CHECK(d.segments == std::vector<Word>{{1}, {2}, {2}, {1}});

    const auto t = make_sample({"abba"}, {"ab"});
    const PrefixDecomposition e = nested_prefix_cuts(word_of(t, "abba"), negative_set(t));
    CHECK(e.cuts == std::vector<std::size_t>{2});
    CHECK(e.segments == std::vector<Word>{{1, 2}, {2, 1}});

    const auto u = make_sample({"abba"}, {"baa"});
    CHECK(nested_prefix_cuts(word_of(u, "abba"), negative_set(u)).parts() == 1);
    // the word itself is not a proper prefix
    const auto v = make_sample({}, {"ab", "a"});
    CHECK(nested_prefix_cuts(word_of(v, "ab"), negative_set(v)).cuts == std::vector<std::size_t>{1});
}

TEST_CASE("the greedy decomposition is the only valid one") {
    const std::vector<Word> words = [] {
        std::vector<Word> out, layer{{}};
        for (int len = 1; len <= 6; ++len) {
            std::vector<Word> next;
            for (const Word& w : layer)
                for (SymbolId a = 1; a <= 2; ++a) {
                    Word x = w;
                    x.push_back(a);
                    next.push_back(x);
                }
            out.insert(out.end(), next.begin(), next.end());
            layer = std::move(next);
        }
        return out;
    }();
    std::mt19937 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        std::set<Word> neg;
        const int count = std::uniform_int_distribution<int>(0, 8)(rng);
        for (int i = 0; i < count; ++i) neg.insert(words[std::uniform_int_distribution<std::size_t>(0, 29)(rng)]);
        const Word& w = words[std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng)];
        const auto valid = valid_cut_sets(w, neg);
        REQUIRE(valid.size() == 1);
        const PrefixDecomposition d = nested_prefix_cuts(w, neg);
        CHECK(d.cuts == valid[0]);
        Word joined;
        for (const Word& seg : d.segments) {
            CHECK_FALSE(seg.empty());
            joined.insert(joined.end(), seg.begin(), seg.end());
        }
        CHECK(joined == w);
    }
}

TEST_CASE("path counts per mode") {
    CHECK(prefix_path_count(3, 2, 3, PrefixMode::literal) == 18);
    CHECK(prefix_path_count(3, 2, 3, PrefixMode::sound) == 18);
    CHECK(prefix_path_count(3, 3, 3, PrefixMode::literal) == 6);
    CHECK(prefix_path_count(3, 3, 3, PrefixMode::sound) == 12);
    CHECK(prefix_path_count(3, 2, 1, PrefixMode::literal) == 0);
    CHECK(prefix_path_count(3, 2, 1, PrefixMode::sound) == 0);
    CHECK(prefix_path_count(4, 1, 3, PrefixMode::sound) == 81);
}

TEST_CASE("enumerated prefix paths match a naive boundary filter") {
    const auto s = make_sample({}, {"a", "ab", "abb"}, "ab");
    const Word w = word_of(s, "abbab");
    const PrefixDecomposition d = nested_prefix_cuts(w, negative_set(s));
    REQUIRE(d.parts() == 4);
    for (int k = 1; k <= 4; ++k)
        for (PrefixMode mode : {PrefixMode::sound, PrefixMode::literal}) {
            std::size_t total = 0;
            for (State j = 1; j <= k; ++j) {
                const auto paths = enumerate_prefix_paths(d, j, k, 2, mode);
                const std::vector<State> end{j};
                CHECK(paths.size() == nfasat::testing::naive_prefix_kept(w.size(), d.cuts, k, end, mode));
                for (const auto& p : paths) CHECK(p.end() == j);
                total += paths.size();
            }
            CHECK(total == prefix_path_count(w.size(), d.parts(), k, mode));
        }
}

TEST_CASE("negative word counts reproduce the closed forms") {
    // |w| = 3 with n = 2 and n = 3 parts, k = 3
    const auto two = make_sample({}, {"a", "abb"}, "ab");
    const auto three = make_sample({}, {"a", "ab", "abb"}, "ab");
    for (PrefixMode mode : {PrefixMode::sound, PrefixMode::literal}) {
        const Encoding e = encode(two, 3, prefix(mode, false));
        CHECK(e.report.words[1].kept == 18);
    }
    CHECK(encode(three, 3, prefix(PrefixMode::literal, false)).report.words[2].kept == 6);
    CHECK(encode(three, 3, prefix(PrefixMode::sound, false)).report.words[2].kept == 12);
    CHECK(encode(make_sample({}, {"a", "ab"}), 1, prefix(PrefixMode::sound)).report.words[1].kept == 0);
}

TEST_CASE("positive word with one negative prefix") {
    const auto s = make_sample({"ab"}, {"a"});
    const Encoding e = encode(s, 3, prefix(PrefixMode::sound, false));
    const InstanceStats st = word_stats(e.cnf, 0);
    CHECK(e.cnf.vars().aux_count() == 6);
    CHECK(st.family_counts.at(Family::prefix_aux_implies_path) == 18);
    CHECK(st.family_counts.at(Family::prefix_path_implies_aux) == 6);
    CHECK(st.family_counts.at(Family::prefix_aux_disjunction) == 1);
    const auto meta = encoding_metadata(s, 3, prefix(PrefixMode::sound, false), e);
    CHECK(meta["prefix"]["aux_per_path"] == 6);
    CHECK(meta["prefix"]["aux_boundary_only"] == 6);
    CHECK(meta["words"][0]["cuts"] == nlohmann::json::array({1}));
}

TEST_CASE("literal mode needs k >= parts for positive words") {
    const auto s = make_sample({"abb"}, {"a", "ab"});
    const Encoding e = encode(s, 2, prefix(PrefixMode::literal));
    CHECK(e.report.structurally_unsat());
    CHECK(e.report.unsat_causes[0].find("k >= 3") != std::string::npos);
}

TEST_CASE("no negative prefixes means the base model") {
    const auto corpus = nfasat::testing::micro_corpus(150, 31);
    int unchanged = 0;
    for (const LabeledSample& s : corpus) {
        const auto neg = negative_set(s);
        bool any = false;
        for (const auto* list : {&s.positives(), &s.negatives()})
            for (const Word& w : *list)
                if (!w.empty() && !nested_prefix_cuts(w, neg).cuts.empty()) any = true;
        if (any) continue;
        ++unchanged;
        for (int k = 1; k <= 3; ++k)
            CHECK(dimacs_string(encode(s, k, prefix(PrefixMode::sound)).cnf) == dimacs_string(encode(s, k).cnf));
    }
    CHECK(unchanged > 10);
}

TEST_CASE("with two parts both modes coincide") {
    const auto s = make_sample({"abab", "ba"}, {"a", "b"});
    for (int k = 1; k <= 3; ++k)
        CHECK(dimacs_string(encode(s, k, prefix(PrefixMode::sound)).cnf) ==
              dimacs_string(encode(s, k, prefix(PrefixMode::literal)).cnf));
}

TEST_CASE("kept paths per word match the naive boundary rule and the size order holds") {
    const auto corpus = nfasat::testing::micro_corpus(150, 61);
    for (const LabeledSample& s : corpus)
        for (int k = 1; k <= 3; ++k) {
            const auto neg = negative_set(s);
            const auto ends = nfasat::testing::allowed_ends(s, k);
            for (PrefixMode mode : {PrefixMode::sound, PrefixMode::literal}) {
                const Encoding e = encode(s, k, prefix(mode));
                for (const WordReport& r : e.report.words) {
                    if (r.length == 0) continue;
                    const Word& w = r.positive ? s.positives()[static_cast<std::size_t>(r.word)]
                                               : s.negatives()[static_cast<std::size_t>(r.word) - s.positives().size()];
                    const auto cuts = nested_prefix_cuts(w, neg).cuts;
                    CHECK(r.cuts == cuts);
                    CHECK(r.kept == nfasat::testing::naive_prefix_kept(w.size(), cuts, k, ends, mode));
                }
            }
            EncodeOptions m;
            m.variant = Variant::mset;
            const std::size_t pref = encode(s, k, prefix(PrefixMode::sound)).cnf.clause_count();
            CHECK(encode(s, k, m).cnf.clause_count() <= pref);
            CHECK(pref <= encode(s, k).cnf.clause_count());
        }
}
