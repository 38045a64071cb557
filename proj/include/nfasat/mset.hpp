#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nfasat/sample.hpp"
#include "nfasat/subsume.hpp"

namespace nfasat {

/// Word multisets of a sample plus bottom and top, ordered by inclusion.
///
/// Node 0 is bottom (the empty multiset), the last node is top (one more
/// than the per-symbol maximum of the sample), and the sample nodes in
/// between are sorted by (level, counts). The level of a node is the length
/// of the longest strict-inclusion chain from bottom to it.
class MultisetLattice {
public:
    struct Node {
        WordMultiset multiset;
        int level = 0;
        bool in_sample = false;                 // some sample word maps here
        std::vector<std::int32_t> positives;    // global word ids, input order
        std::vector<std::int32_t> negatives;
    };

    explicit MultisetLattice(const LabeledSample& s);

    std::size_t size() const noexcept { return nodes_.size(); }
    const Node& node(std::size_t i) const { return nodes_.at(i); }
    std::size_t bottom() const noexcept { return 0; }
    std::size_t top() const noexcept { return nodes_.size() - 1; }

    /// Node holding the word with this global id.
    std::size_t node_of_word(std::int32_t word) const { return word_node_.at(static_cast<std::size_t>(word)); }

    bool strictly_below(std::size_t a, std::size_t b) const { return below_[a * nodes_.size() + b] != 0; }

    /// Highest level among sample nodes other than bottom (0 if none).
    int max_level() const noexcept { return max_level_; }

    /// Sample nodes (bottom excluded) strictly below m whose level is <= l.
    std::vector<std::size_t> base_set(std::size_t m, int l) const;

    std::string to_dot(const LabeledSample& s) const;

private:
    std::vector<Node> nodes_;
    std::vector<std::uint8_t> below_;
    std::vector<std::size_t> word_node_;
    int max_level_ = 0;
};

/// Resolves an optional level (nullopt = maximum) against the lattice.
int effective_level(const MultisetLattice& lat, std::optional<int> level);

/// Negative words whose c_couples filter the words of node m at level l:
/// those of base_set(m, l), plus the node's own negatives when level(m) <= l.
/// Returned as indices into negatives(), in canonical order.
std::vector<std::size_t> filter_sources(const MultisetLattice& lat, const LabeledSample& s, std::size_t m,
                                        int l);

/// Keep masks for the lattice-reduced model. Nodes are processed in
/// ascending (level, counts) order, one database per node.
FilterPlan plan_mset(const LabeledSample& s, int k, const EncodeOptions& opts, LatticeReport* report = nullptr);

}  // namespace nfasat
