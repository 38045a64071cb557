#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace nfasat {

/// Symbol index, 1..n in lexicographic order of the symbol tokens.
using SymbolId = int;

/// A word over the alphabet; the empty vector is the empty word.
using Word = std::vector<SymbolId>;

/// Per-symbol occurrence counts (index 0 holds symbol 1).
struct WordMultiset {
    std::vector<int> counts;

    int size() const;
    bool operator==(const WordMultiset&) const = default;
    auto operator<=>(const WordMultiset&) const = default;
};

/// Componentwise `a <= b`.
bool multiset_included(const WordMultiset& a, const WordMultiset& b);
/// Componentwise `a <= b` and `a != b`.
bool multiset_strictly_included(const WordMultiset& a, const WordMultiset& b);

class LabeledSample {
public:
    LabeledSample() = default;

    /// Builds a sample over an explicit alphabet. Symbols are sorted and
    /// duplicate words dropped; throws Error on contradictory labels or
    /// out-of-range symbol ids (ids refer to the sorted alphabet).
    LabeledSample(std::vector<std::string> alphabet, std::vector<Word> positives,
                  std::vector<Word> negatives);

    const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
    int alphabet_size() const noexcept { return static_cast<int>(alphabet_.size()); }
    const std::vector<Word>& positives() const noexcept { return positives_; }
    const std::vector<Word>& negatives() const noexcept { return negatives_; }

    bool empty_word_positive() const;
    bool empty_word_negative() const;

    /// Human-readable rendering of a word, e.g. "a b" or "λ".
    std::string word_text(const Word& w) const;

    bool operator==(const LabeledSample&) const = default;

private:
    std::vector<std::string> alphabet_;
    std::vector<Word> positives_;
    std::vector<Word> negatives_;
};

struct SampleStats {
    std::size_t positives = 0;
    std::size_t negatives = 0;
    std::size_t longest_positive = 0;
    std::size_t longest_negative = 0;
    int alphabet_size = 0;
    bool empty_word_positive = false;
    bool empty_word_negative = false;

    bool operator==(const SampleStats&) const = default;
};

enum class SampleFormat { lines, abbadingo };

/// Parses the line format: `+ tok tok ...` / `- tok ...`, a bare label is the
/// empty word, `#` starts a comment line. Duplicate words within a label are
/// dropped and reported through `warnings` when given.
LabeledSample parse_sample(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Abbadingo-style input: header `count alphabet_size`, then
/// `label length sym...` with label 1 (positive) or 0 (negative).
LabeledSample parse_abbadingo(std::string_view text, std::vector<std::string>* warnings = nullptr);

LabeledSample parse_sample(std::string_view text, SampleFormat format,
                           std::vector<std::string>* warnings = nullptr);

LabeledSample load_sample(const std::string& path, SampleFormat format = SampleFormat::lines,
                          std::vector<std::string>* warnings = nullptr);

/// Line-format serialization; `parse_sample(write_sample(s)) == s` whenever
/// every alphabet symbol occurs in some word.
std::string write_sample(const LabeledSample& s);

WordMultiset multiset_of(const Word& w, int n);

SampleStats sample_stats(const LabeledSample& s);

}  // namespace nfasat
