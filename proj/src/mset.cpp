#include "nfasat/mset.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "nfasat/error.hpp"

namespace nfasat {

MultisetLattice::MultisetLattice(const LabeledSample& s) {
    const int n = s.alphabet_size();
    const WordMultiset bottom{std::vector<int>(static_cast<std::size_t>(n), 0)};

    // distinct sample multisets with their member words
    std::map<WordMultiset, Node> groups;
    const std::size_t word_count = s.positives().size() + s.negatives().size();
    std::vector<WordMultiset> word_ms(word_count);
    auto add = [&](std::int32_t id, const Word& w, bool positive) {
        WordMultiset m = multiset_of(w, n);
        Node& node = groups[m];
        node.multiset = m;
        node.in_sample = true;
        (positive ? node.positives : node.negatives).push_back(id);
        word_ms[static_cast<std::size_t>(id)] = std::move(m);
    };
    for (std::size_t i = 0; i < s.positives().size(); ++i) add(positive_word_id(i), s.positives()[i], true);
    for (std::size_t i = 0; i < s.negatives().size(); ++i) add(negative_word_id(s, i), s.negatives()[i], false);

    Node bottom_node;
    bottom_node.multiset = bottom;
    if (auto it = groups.find(bottom); it != groups.end()) {
        bottom_node = std::move(it->second);
        groups.erase(it);
    }
    std::vector<Node> middle;
    for (auto& [m, node] : groups) middle.push_back(std::move(node));

    // levels in order of total size: strictly smaller multisets come first
    std::ranges::stable_sort(middle, [](const Node& a, const Node& b) { return a.multiset.size() < b.multiset.size(); });
    for (std::size_t i = 0; i < middle.size(); ++i) {
        int level = 1;  // bottom sits below everything
        for (std::size_t j = 0; j < i; ++j)
            if (multiset_strictly_included(middle[j].multiset, middle[i].multiset))
                level = std::max(level, middle[j].level + 1);
        middle[i].level = level;
        max_level_ = std::max(max_level_, level);
    }
    std::ranges::sort(middle, [](const Node& a, const Node& b) {
        return std::tie(a.level, a.multiset) < std::tie(b.level, b.multiset);
    });

    Node top;
    top.multiset = bottom;
    for (const WordMultiset& m : word_ms)
        for (int i = 0; i < n; ++i) top.multiset.counts[i] = std::max(top.multiset.counts[i], m.counts[i]);
    for (int& c : top.multiset.counts) ++c;
    top.level = max_level_ + 1;

    nodes_.push_back(std::move(bottom_node));
    for (Node& node : middle) nodes_.push_back(std::move(node));
    nodes_.push_back(std::move(top));

    const std::size_t count = nodes_.size();
    below_.assign(count * count, 0);
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = 0; b < count; ++b)
            below_[a * count + b] = multiset_strictly_included(nodes_[a].multiset, nodes_[b].multiset) ? 1 : 0;

    word_node_.assign(word_count, 0);
    for (std::size_t i = 0; i + 1 < count; ++i) {
        for (std::int32_t id : nodes_[i].positives) word_node_[static_cast<std::size_t>(id)] = i;
        for (std::int32_t id : nodes_[i].negatives) word_node_[static_cast<std::size_t>(id)] = i;
    }
}

std::vector<std::size_t> MultisetLattice::base_set(std::size_t m, int l) const {
    if (m >= nodes_.size()) throw Error("lattice node out of range");
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < nodes_.size(); ++i)
        if (strictly_below(i, m) && nodes_[i].level <= l) out.push_back(i);
    return out;
}

std::string MultisetLattice::to_dot(const LabeledSample& s) const {
    auto label = [&](std::size_t i) {
        if (i == bottom()) return std::string("⊥");
        if (i == top()) return std::string("⊤");
        std::string out = "{";
        const auto& counts = nodes_[i].multiset.counts;
        bool first = true;
        for (std::size_t a = 0; a < counts.size(); ++a) {
            if (counts[a] == 0) continue;
            if (!first) out += ",";
            first = false;
            out += s.alphabet()[a] + "^" + std::to_string(counts[a]);
        }
        return out + "}";
    };
    std::ostringstream out;
    out << "digraph lattice {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        out << "  m" << i << " [label=\"" << label(i) << "\\nlevel " << nodes_[i].level << "\\n+"
            << nodes_[i].positives.size() << " -" << nodes_[i].negatives.size() << "\"];\n";
    // cover relation only
    for (std::size_t a = 0; a < nodes_.size(); ++a)
        for (std::size_t b = 0; b < nodes_.size(); ++b) {
            if (!strictly_below(a, b)) continue;
            bool covered = true;
            for (std::size_t c = 0; c < nodes_.size() && covered; ++c)
                if (strictly_below(a, c) && strictly_below(c, b)) covered = false;
            if (covered) out << "  m" << a << " -> m" << b << ";\n";
        }
    out << "}\n";
    return out.str();
}

int effective_level(const MultisetLattice& lat, std::optional<int> level) {
    if (!level) return lat.max_level();
    if (*level < 0) throw Error("lattice level must be non-negative");
    return *level;
}

std::vector<std::size_t> filter_sources(const MultisetLattice& lat, const LabeledSample& s, std::size_t m,
                                        int l) {
    std::vector<std::size_t> nodes = lat.base_set(m, l);
    if (m != lat.bottom() && m != lat.top() && lat.node(m).level <= l) nodes.push_back(m);
    std::vector<std::size_t> out;
    const auto first_negative = static_cast<std::int32_t>(s.positives().size());
    for (std::size_t node : nodes)
        for (std::int32_t id : lat.node(node).negatives) out.push_back(static_cast<std::size_t>(id - first_negative));
    const auto ranks = negative_ranks(s);
    std::ranges::sort(out, [&](std::size_t a, std::size_t b) { return ranks[a] < ranks[b]; });
    return out;
}

FilterPlan plan_mset(const LabeledSample& s, int k, const EncodeOptions& opts, LatticeReport* report) {
    const MultisetLattice lat(s);
    const int level = effective_level(lat, opts.mset_level);
    const int n = s.alphabet_size();
    const auto ends = end_states(s, k, opts);
    const auto ranks = negative_ranks(s);

    FilterPlan plan;
    plan.keep.resize(s.positives().size() + s.negatives().size());
    std::vector<std::size_t> node_hits(lat.size(), 0);

    // one database per node, built from its filter sources and then dropped
    for (std::size_t m = 1; m < lat.top(); ++m) {
        const auto& node = lat.node(m);
        const auto sources = filter_sources(lat, s, m, level);
        CCoupleDb db(k, n, opts.max_db_entries);
        for (std::size_t i : sources) {
            opts.deadline.check();
            for (const CCouple& c : word_couples(s.negatives()[i], k, n, ends, ranks[i])) db.insert(c);
        }
        db.finalize();
        plan.db_entries = std::max(plan.db_entries, db.size());

        const auto first_negative = static_cast<std::int32_t>(s.positives().size());
        for (std::int32_t id : node.positives) {
            const Word& w = s.positives()[static_cast<std::size_t>(id)];
            node_hits[m] += filter_word(db, w, k, n, ends, std::nullopt, opts, plan.keep[static_cast<std::size_t>(id)]);
        }
        for (std::int32_t id : node.negatives) {
            const auto i = static_cast<std::size_t>(id - first_negative);
            node_hits[m] +=
                filter_word(db, s.negatives()[i], k, n, ends, ranks[i], opts, plan.keep[static_cast<std::size_t>(id)]);
        }
        plan.hits += node_hits[m];
    }
    if (report) {
        report->nodes = lat.size();
        report->max_level = lat.max_level();
        report->level_used = level;
        report->node_hits = std::move(node_hits);
    }
    return plan;
}

}  // namespace nfasat
