#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "nfasat/encoder.hpp"

namespace nfasat {

/// w = u_1 ... u_n where every u_1...u_i (i < n) is a negative word and no
/// other proper prefix is.
struct PrefixDecomposition {
    Word word;
    std::vector<std::size_t> cuts;   // 0 < p_1 < ... < p_{n-1} < |w|
    std::vector<Word> segments;

    std::size_t parts() const noexcept { return segments.size(); }
};

/// Greedy left-to-right scan for proper, non-empty prefixes in `negatives`.
PrefixDecomposition nested_prefix_cuts(const Word& w, const std::set<Word>& negatives);

/// Paths of dec.word from state 1 to `end` whose boundary states follow
/// `mode`: sound keeps boundaries different from `end`, literal keeps them
/// pairwise distinct (end included).
std::vector<CTransition> enumerate_prefix_paths(const PrefixDecomposition& dec, State end, int k, int n,
                                                PrefixMode mode, bool dedup = true);

/// Path counts for one end-state-unrestricted word: literal mode gives
/// prod_{i=1}^{parts}(k-i+1) * k^(|w|-parts), sound mode k(k-1)^(parts-1) *
/// k^(|w|-parts).
std::size_t prefix_path_count(std::size_t length, std::size_t parts, int k, PrefixMode mode);

}  // namespace nfasat
