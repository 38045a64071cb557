#include "nfasat/sample.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "nfasat/error.hpp"

namespace nfasat {

int WordMultiset::size() const { return std::accumulate(counts.begin(), counts.end(), 0); }

bool multiset_included(const WordMultiset& a, const WordMultiset& b) {
    if (a.counts.size() != b.counts.size()) throw Error("multisets over different alphabets");
    for (std::size_t i = 0; i < a.counts.size(); ++i)
        if (a.counts[i] > b.counts[i]) return false;
    return true;
}

bool multiset_strictly_included(const WordMultiset& a, const WordMultiset& b) {
    return multiset_included(a, b) && a != b;
}

namespace {

void drop_duplicates(std::vector<Word>& words) {
    std::set<Word> seen;
    std::erase_if(words, [&](const Word& w) { return !seen.insert(w).second; });
}

}  // namespace

LabeledSample::LabeledSample(std::vector<std::string> alphabet, std::vector<Word> positives,
                             std::vector<Word> negatives) {
    const int n = static_cast<int>(alphabet.size());
    std::vector<int> order(alphabet.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return alphabet[a] < alphabet[b]; });
    std::vector<SymbolId> remap(alphabet.size());
    for (int rank = 0; rank < n; ++rank) {
        if (rank > 0 && alphabet[order[rank]] == alphabet[order[rank - 1]])
            throw Error("duplicate alphabet symbol '" + alphabet[order[rank]] + "'");
        remap[order[rank]] = rank + 1;
        alphabet_.push_back(alphabet[order[rank]]);
    }
    auto translate = [&](std::vector<Word>& words) {
        for (Word& w : words)
            for (SymbolId& s : w) {
                if (s < 1 || s > n) throw Error("symbol id " + std::to_string(s) + " out of range");
                s = remap[s - 1];
            }
        drop_duplicates(words);
    };
    translate(positives);
    translate(negatives);
    const std::set<Word> pos_set(positives.begin(), positives.end());
    for (const Word& w : negatives)
        if (pos_set.contains(w)) throw Error("word '" + word_text(w) + "' labeled both + and -");
    positives_ = std::move(positives);
    negatives_ = std::move(negatives);
}

bool LabeledSample::empty_word_positive() const {
    return std::ranges::any_of(positives_, [](const Word& w) { return w.empty(); });
}

bool LabeledSample::empty_word_negative() const {
    return std::ranges::any_of(negatives_, [](const Word& w) { return w.empty(); });
}

std::string LabeledSample::word_text(const Word& w) const {
    if (w.empty()) return "λ";
    std::string out;
    for (SymbolId s : w) {
        if (!out.empty()) out += ' ';
        out += (s >= 1 && s <= alphabet_size()) ? alphabet_[s - 1] : "?" + std::to_string(s);
    }
    return out;
}

namespace {

struct RawLine {
    std::size_t line;
    bool positive;
    std::vector<std::string> tokens;
};

std::vector<std::string> split_ws(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    for (std::string tok; in >> tok;) out.push_back(std::move(tok));
    return out;
}

/// Assembles a sample from raw token lines, assigning ids by sorted token
/// and enforcing the duplicate/contradiction rules.
LabeledSample assemble(const std::vector<RawLine>& lines, std::set<std::string> symbols,
                       std::vector<std::string>* warnings) {
    for (const RawLine& l : lines) symbols.insert(l.tokens.begin(), l.tokens.end());
    std::vector<std::string> alphabet(symbols.begin(), symbols.end());
    std::map<std::string, SymbolId> index;
    for (std::size_t i = 0; i < alphabet.size(); ++i) index[alphabet[i]] = static_cast<SymbolId>(i + 1);

    std::map<Word, std::pair<bool, std::size_t>> seen;
    std::vector<Word> pos, neg;
    for (const RawLine& l : lines) {
        Word w;
        w.reserve(l.tokens.size());
        for (const std::string& tok : l.tokens) w.push_back(index.at(tok));
        auto [it, inserted] = seen.try_emplace(w, l.positive, l.line);
        if (!inserted) {
            if (it->second.first != l.positive)
                throw ParseError(l.line, "word labeled both + and - (first seen on line " +
                                             std::to_string(it->second.second) + ")");
            if (warnings)
                warnings->push_back("line " + std::to_string(l.line) +
                                    ": duplicate word dropped (first seen on line " +
                                    std::to_string(it->second.second) + ")");
            continue;
        }
        (l.positive ? pos : neg).push_back(std::move(w));
    }
    // ids already follow the sorted alphabet, so the constructor keeps them
    return LabeledSample(std::move(alphabet), std::move(pos), std::move(neg));
}

}  // namespace

LabeledSample parse_sample(std::string_view text, std::vector<std::string>* warnings) {
    static constexpr std::string_view unicode_minus = "\xE2\x88\x92";
    std::vector<RawLine> lines;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos) {
            if (end == text.size()) break;
            continue;
        }
        line.remove_prefix(first);
        if (line.front() == '#') continue;

        bool positive;
        std::size_t label_len;
        if (line.front() == '+') {
            positive = true;
            label_len = 1;
        } else if (line.front() == '-') {
            positive = false;
            label_len = 1;
        } else if (line.starts_with(unicode_minus)) {
            positive = false;
            label_len = unicode_minus.size();
        } else {
            throw ParseError(line_no, "malformed label '" + std::string(line.substr(0, 1)) +
                                          "' (expected '+' or '-')");
        }
        std::string_view rest = line.substr(label_len);
        if (!rest.empty() && rest.front() != ' ' && rest.front() != '\t')
            throw ParseError(line_no, "label must be followed by whitespace");
        lines.push_back({line_no, positive, split_ws(rest)});
        if (end == text.size()) break;
    }
    return assemble(lines, {}, warnings);
}

LabeledSample parse_abbadingo(std::string_view text, std::vector<std::string>* warnings) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw ParseError(0, "missing abbadingo header");
    const auto header = split_ws(line);
    std::size_t count = 0;
    int declared = 0;
    try {
        if (header.size() != 2) throw std::invalid_argument("header");
        count = std::stoul(header[0]);
        declared = std::stoi(header[1]);
        if (declared < 0) throw std::invalid_argument("alphabet size");
    } catch (const std::logic_error&) {
        throw ParseError(line_no, "header must be 'count alphabet_size'");
    }
    std::set<std::string> symbols;
    for (int s = 0; s < declared; ++s) symbols.insert(std::to_string(s));

    std::vector<RawLine> lines;
    while (lines.size() < count && next_line()) {
        auto toks = split_ws(line);
        if (toks.size() < 2) throw ParseError(line_no, "expected 'label length sym...'");
        bool positive;
        if (toks[0] == "1")
            positive = true;
        else if (toks[0] == "0")
            positive = false;
        else
            throw ParseError(line_no, "malformed label '" + toks[0] + "' (expected 1 or 0)");
        std::size_t length = 0;
        try {
            length = std::stoul(toks[1]);
        } catch (const std::logic_error&) {
            throw ParseError(line_no, "malformed length '" + toks[1] + "'");
        }
        if (toks.size() != length + 2)
            throw ParseError(line_no, "declared length " + toks[1] + " but found " +
                                          std::to_string(toks.size() - 2) + " symbols");
        lines.push_back({line_no, positive, {toks.begin() + 2, toks.end()}});
    }
    if (lines.size() < count)
        throw ParseError(line_no, "header announces " + std::to_string(count) + " words, found " +
                                      std::to_string(lines.size()));
    return assemble(lines, std::move(symbols), warnings);
}

LabeledSample parse_sample(std::string_view text, SampleFormat format,
                           std::vector<std::string>* warnings) {
    return format == SampleFormat::abbadingo ? parse_abbadingo(text, warnings)
                                             : parse_sample(text, warnings);
}

LabeledSample load_sample(const std::string& path, SampleFormat format,
                          std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open sample file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sample(buf.str(), format, warnings);
}

std::string write_sample(const LabeledSample& s) {
    std::string out;
    auto emit = [&](char label, const Word& w) {
        out += label;
        for (SymbolId id : w) {
            out += ' ';
            out += s.alphabet()[id - 1];
        }
        out += '\n';
    };
    for (const Word& w : s.positives()) emit('+', w);
    for (const Word& w : s.negatives()) emit('-', w);
    return out;
}

WordMultiset multiset_of(const Word& w, int n) {
    WordMultiset m{std::vector<int>(static_cast<std::size_t>(n), 0)};
    for (SymbolId s : w) {
        if (s < 1 || s > n) throw Error("symbol id " + std::to_string(s) + " out of range");
        ++m.counts[s - 1];
    }
    return m;
}

SampleStats sample_stats(const LabeledSample& s) {
    SampleStats st;
    st.positives = s.positives().size();
    st.negatives = s.negatives().size();
    for (const Word& w : s.positives()) st.longest_positive = std::max(st.longest_positive, w.size());
    for (const Word& w : s.negatives()) st.longest_negative = std::max(st.longest_negative, w.size());
    st.alphabet_size = s.alphabet_size();
    st.empty_word_positive = s.empty_word_positive();
    st.empty_word_negative = s.empty_word_negative();
    return st;
}

}  // namespace nfasat
