#include <doctest.h>

#include <algorithm>
#include <random>

#include "nfasat/error.hpp"
#include "support.hpp"

using namespace nfasat;
using nfasat::testing::make_sample;

TEST_CASE("line format assigns ids by sorted token") {
    const LabeledSample s = parse_sample("+ a b\n- a\n");
    CHECK(s.alphabet() == std::vector<std::string>{"a", "b"});
    CHECK(s.positives() == std::vector<Word>{{1, 2}});
    CHECK(s.negatives() == std::vector<Word>{{1}});
}

TEST_CASE("a bare label is the empty word") {
    const LabeledSample s = parse_sample("+\n");
    CHECK(s.alphabet().empty());
    REQUIRE(s.positives().size() == 1);
    CHECK(s.positives()[0].empty());
    CHECK(s.negatives().empty());
    CHECK(s.empty_word_positive());
    CHECK(s.word_text(s.positives()[0]) == "λ");
}

TEST_CASE("multi-character tokens and multisets") {
    const LabeledSample s = parse_sample("+ b a\n- a a a b\n");
    CHECK(s.alphabet() == std::vector<std::string>{"a", "b"});
    CHECK(multiset_of(s.positives()[0], 2).counts == std::vector<int>{1, 1});
    CHECK(multiset_of(s.negatives()[0], 2).counts == std::vector<int>{3, 1});

    const LabeledSample t = parse_sample("+ open close\n- close\n");
    CHECK(t.alphabet() == std::vector<std::string>{"close", "open"});
    CHECK(t.positives()[0] == Word{2, 1});
}

TEST_CASE("comments, blank lines, CRLF and the unicode minus") {
    const LabeledSample s = parse_sample("# header\n\n+ a\r\n\xE2\x88\x92 b b\n   - \n");
    CHECK(s.positives() == std::vector<Word>{{1}});
    CHECK(s.negatives() == std::vector<Word>{{2, 2}, {}});
    CHECK(s.empty_word_negative());
}

TEST_CASE("parse errors name the line") {
    auto line_of = [](const std::string& text) {
        try {
            parse_sample(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("+ a\n* b\n") == 2);
    CHECK(line_of("+a\n") == 1);
    CHECK(line_of("+ a b\n\n- a b\n") == 3);
    CHECK_THROWS_AS(parse_sample("+ x\n- x\n"), ParseError);
}

TEST_CASE("duplicate words are dropped with a warning") {
    std::vector<std::string> warnings;
    const LabeledSample s = parse_sample("+ a\n+ a\n- b\n", &warnings);
    CHECK(s.positives().size() == 1);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("line 2") != std::string::npos);
}

TEST_CASE("constructor validates") {
    CHECK_THROWS_AS(LabeledSample({"a"}, {{1}}, {{1}}), Error);
    CHECK_THROWS_AS(LabeledSample({"a"}, {{2}}, {}), Error);
    CHECK_THROWS_AS(LabeledSample({"a", "a"}, {}, {}), Error);
    // ids refer to the supplied order and are remapped to the sorted one
    const LabeledSample s({"b", "a"}, {{1, 2}}, {});
    CHECK(s.alphabet() == std::vector<std::string>{"a", "b"});
    CHECK(s.positives()[0] == Word{2, 1});
}

TEST_CASE("multiset_of") {
    CHECK(multiset_of({1, 2, 1, 2}, 2).counts == std::vector<int>{2, 2});
    CHECK(multiset_of({}, 3).counts == std::vector<int>{0, 0, 0});
    CHECK(multiset_of({1, 1, 1, 2}, 2).counts == std::vector<int>{3, 1});
    CHECK(multiset_of({1, 2, 2}, 2) == multiset_of({2, 2, 1}, 2));
    CHECK(multiset_strictly_included(multiset_of({1}, 2), multiset_of({1, 2}, 2)));
    CHECK_FALSE(multiset_strictly_included(multiset_of({1, 2}, 2), multiset_of({2, 1}, 2)));
    CHECK(multiset_included(multiset_of({1, 2}, 2), multiset_of({2, 1}, 2)));
}

TEST_CASE("sample_stats") {
    const SampleStats st = sample_stats(make_sample({"ab"}, {"a"}));
    CHECK(st.positives == 1);
    CHECK(st.negatives == 1);
    CHECK(st.longest_positive == 2);
    CHECK(st.longest_negative == 1);
    CHECK(st.alphabet_size == 2);
    CHECK(sample_stats(make_sample({""}, {})).empty_word_positive);
    CHECK(sample_stats(LabeledSample{}) == SampleStats{});
}

TEST_CASE("abbadingo import") {
    const LabeledSample s = parse_abbadingo("3 2\n1 2 0 1\n0 1 1\n1 0\n");
    CHECK(s.alphabet() == std::vector<std::string>{"0", "1"});
    CHECK(s.positives() == std::vector<Word>{{1, 2}, {}});
    CHECK(s.negatives() == std::vector<Word>{{2}});
    CHECK_THROWS_AS(parse_abbadingo("2 2\n1 1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_abbadingo("1 2\n1 2 0\n"), ParseError);
    CHECK_THROWS_AS(parse_abbadingo("1 2\n3 1 0\n"), ParseError);
    // declared symbols are part of the alphabet even when unused
    CHECK(parse_abbadingo("1 3\n1 1 0\n").alphabet_size() == 3);
}

TEST_CASE("write/parse round trip and line-order independence") {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        const LabeledSample s = nfasat::testing::random_sample(rng, 4, 4);
        const std::string text = write_sample(s);
        const LabeledSample back = parse_sample(text);
        // symbols that never occur cannot survive the line format
        if (back.alphabet() == s.alphabet()) CHECK(back == s);

        std::vector<std::string> lines;
        std::string line;
        for (char c : text) {
            if (c == '\n') {
                lines.push_back(line);
                line.clear();
            } else {
                line += c;
            }
        }
        std::shuffle(lines.begin(), lines.end(), rng);
        std::string shuffled;
        for (const auto& l : lines) shuffled += l + "\n";
        CHECK(parse_sample(shuffled).alphabet() == back.alphabet());
    }
}

TEST_CASE("multisets ignore order") {
    std::mt19937 rng(11);
    for (int i = 0; i < 100; ++i) {
        Word w;
        const int len = std::uniform_int_distribution<int>(0, 8)(rng);
        for (int j = 0; j < len; ++j) w.push_back(std::uniform_int_distribution<int>(1, 3)(rng));
        Word r(w.rbegin(), w.rend());
        CHECK(multiset_of(w, 3) == multiset_of(r, 3));
        CHECK(multiset_of(w, 3).size() == len);
    }
}
