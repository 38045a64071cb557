#include "nfasat/prefix.hpp"

#include "nfasat/error.hpp"

namespace nfasat {

PrefixDecomposition nested_prefix_cuts(const Word& w, const std::set<Word>& negatives) {
    PrefixDecomposition dec;
    dec.word = w;
    Word prefix;
    std::size_t last = 0;
    for (std::size_t p = 1; p < w.size(); ++p) {
        prefix.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
        if (!negatives.contains(prefix)) continue;
        dec.cuts.push_back(p);
        dec.segments.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(last),
                                  w.begin() + static_cast<std::ptrdiff_t>(p));
        last = p;
    }
    if (!w.empty()) dec.segments.emplace_back(w.begin() + static_cast<std::ptrdiff_t>(last), w.end());
    return dec;
}

std::vector<CTransition> enumerate_prefix_paths(const PrefixDecomposition& dec, State end, int k, int n,
                                                PrefixMode mode, bool dedup) {
    if (end < 1 || end > k) throw Error("end state out of range");
    const PathShape shape{dec.cuts, mode};
    const State ends[] = {end};
    std::vector<CTransition> out;
    for_each_ctransition(dec.word, k, n, ends, dedup, &shape, [&](const CTransition& ct) { out.push_back(ct); });
    return out;
}

std::size_t prefix_path_count(std::size_t length, std::size_t parts, int k, PrefixMode mode) {
    if (parts == 0 || parts > length) throw Error("decomposition must have between 1 and |w| parts");
    const auto kk = static_cast<std::size_t>(k);
    std::size_t count = 1;
    if (mode == PrefixMode::literal) {
        for (std::size_t i = 1; i <= parts; ++i) count *= (kk + 1 > i) ? kk + 1 - i : 0;
    } else {
        count = kk;
        for (std::size_t i = 1; i < parts; ++i) count *= kk - 1;
    }
    for (std::size_t i = 0; i < length - parts; ++i) count *= kk;
    return count;
}

}  // namespace nfasat
