#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "nfasat/encoder.hpp"

namespace nfasat {

/// Canonical position of a c_couple: negative words ordered by (length,
/// input index), then the path's enumeration rank. Positive words sort after
/// every negative one.
struct Origin {
    std::uint32_t word = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t path = std::numeric_limits<std::uint32_t>::max();

    static constexpr Origin positive() { return {}; }
    auto operator<=>(const Origin&) const = default;
};

/// A (c_transition variable set, ending state) pair.
struct CCouple {
    std::vector<VarId> vars;  // sorted, unique
    State end = 1;
    Origin origin;
};

/// Negative-word c_couples grouped by ending state and scanned by ascending
/// set size. Exact duplicates keep the first inserted origin.
class CCoupleDb {
public:
    CCoupleDb(int k, int n, std::size_t max_entries = 50'000'000);

    /// Returns false for an exact duplicate. Throws BudgetExceeded past the
    /// entry cap. Invalidates ordering until finalize().
    bool insert(const CCouple& c);
    void finalize();

    /// True iff a stored couple with the same end state is a strict subset of
    /// c's variables, or is equal to them and has an earlier origin.
    bool is_subsumed(const CCouple& c) const;

    std::size_t size() const noexcept { return size_; }
    bool exact_signatures() const noexcept { return exact_; }

private:
    struct Entry {
        std::uint64_t signature;
        Origin origin;
        std::uint32_t offset;
        std::uint32_t size;
    };
    struct KeyHash {
        std::size_t operator()(const std::vector<VarId>& v) const noexcept;
    };

    std::uint64_t signature(std::span<const VarId> vars) const;

    int k_;
    int n_;
    bool exact_;
    std::size_t max_entries_;
    std::size_t size_ = 0;
    bool finalized_ = true;
    std::vector<VarId> pool_;
    std::vector<std::vector<Entry>> by_end_;
    std::vector<std::unordered_map<std::vector<VarId>, std::uint32_t, KeyHash>> index_;
};

/// Canonical rank of every negative word (index into negatives()).
std::vector<std::uint32_t> negative_ranks(const LabeledSample& s);

/// Couples of one word over all allowed ending states, in enumeration order.
std::vector<CCouple> word_couples(const Word& w, int k, int n, std::span<const State> ends,
                                  std::uint32_t word_rank);

CCoupleDb build_ccouple_db(const LabeledSample& s, int k, const EncodeOptions& opts);

/// keep[i] = !db.is_subsumed(couples[i]). OpenMP across couples.
void subsumption_filter(const CCoupleDb& db, std::span<const CCouple> couples, std::span<std::uint8_t> keep);
void subsumption_filter_serial(const CCoupleDb& db, std::span<const CCouple> couples,
                               std::span<std::uint8_t> keep);

/// Per-word keep masks (indexed by global word id; empty for the empty word)
/// plus filter statistics.
struct FilterPlan {
    std::vector<std::vector<std::uint8_t>> keep;
    std::size_t db_entries = 0;
    std::size_t hits = 0;
};

/// Keep masks for the fully subsumption-reduced model.
FilterPlan plan_subsumption(const LabeledSample& s, int k, const EncodeOptions& opts);

/// Runs `db` over every path of `w`, appending keep flags in enumeration
/// order. `negative_rank` is the word's canonical rank, or nullopt for a
/// positive word. Returns the number of filtered paths.
std::size_t filter_word(const CCoupleDb& db, const Word& w, int k, int n, std::span<const State> ends,
                        std::optional<std::uint32_t> negative_rank, const EncodeOptions& opts,
                        std::vector<std::uint8_t>& keep);

}  // namespace nfasat
