#include "nfasat/subsume.hpp"

#include <algorithm>
#include <numeric>

#include "nfasat/error.hpp"

namespace nfasat {

std::size_t CCoupleDb::KeyHash::operator()(const std::vector<VarId>& v) const noexcept {
    std::size_t h = v.size();
    for (VarId x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

CCoupleDb::CCoupleDb(int k, int n, std::size_t max_entries)
    : k_(k), n_(n), exact_(static_cast<long long>(n) * k * k <= 64), max_entries_(max_entries) {
    if (k < 1) throw Error("k must be at least 1");
    by_end_.resize(static_cast<std::size_t>(k));
    index_.resize(static_cast<std::size_t>(k));
}

std::uint64_t CCoupleDb::signature(std::span<const VarId> vars) const {
    std::uint64_t sig = 0;
    for (VarId v : vars) {
        // transition variables start right after the k final-state variables
        const auto slot = static_cast<std::uint64_t>(v - k_ - 1);
        sig |= std::uint64_t{1} << (exact_ ? slot : (slot * 0x9E3779B97F4A7C15ULL) >> 58);
    }
    return sig;
}

bool CCoupleDb::insert(const CCouple& c) {
    if (c.end < 1 || c.end > k_) throw Error("c_couple end state out of range");
    if (c.vars.empty()) throw Error("c_couple without transition variables");
    auto& index = index_[static_cast<std::size_t>(c.end - 1)];
    auto& entries = by_end_[static_cast<std::size_t>(c.end - 1)];
    if (index.contains(c.vars)) return false;
    if (size_ >= max_entries_)
        throw BudgetExceeded("c_couple database exceeds " + std::to_string(max_entries_) +
                             " entries; the subsumption-reduced model is intractable here");
    Entry e{signature(c.vars), c.origin, static_cast<std::uint32_t>(pool_.size()),
            static_cast<std::uint32_t>(c.vars.size())};
    pool_.insert(pool_.end(), c.vars.begin(), c.vars.end());
    index.emplace(c.vars, static_cast<std::uint32_t>(entries.size()));
    entries.push_back(e);
    ++size_;
    finalized_ = false;
    return true;
}

void CCoupleDb::finalize() {
    for (auto& entries : by_end_)
        std::ranges::stable_sort(entries, [](const Entry& a, const Entry& b) { return a.size < b.size; });
    finalized_ = true;
}

bool CCoupleDb::is_subsumed(const CCouple& c) const {
    if (!finalized_) throw std::logic_error("c_couple database queried before finalize()");
    if (c.end < 1 || c.end > k_) return false;
    const std::uint64_t sig = signature(c.vars);
    const auto size = static_cast<std::uint32_t>(c.vars.size());
    for (const Entry& e : by_end_[static_cast<std::size_t>(c.end - 1)]) {
        if (e.size > size) break;
        if ((e.signature & ~sig) != 0) continue;
        const auto stored = std::span<const VarId>(pool_).subspan(e.offset, e.size);
        if (e.size < size) {
            if (exact_ || std::ranges::includes(c.vars, stored)) return true;
        } else if (e.origin < c.origin && (exact_ ? e.signature == sig : std::ranges::equal(stored, c.vars))) {
            return true;
        }
    }
    return false;
}

std::vector<std::uint32_t> negative_ranks(const LabeledSample& s) {
    const auto& neg = s.negatives();
    std::vector<std::size_t> order(neg.size());
    std::iota(order.begin(), order.end(), 0);
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return neg[a].size() < neg[b].size(); });
    std::vector<std::uint32_t> rank(neg.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<std::uint32_t>(r);
    return rank;
}

namespace {

CCouple to_couple(const CTransition& ct, Origin origin) {
    CCouple c{ct.vars, ct.end(), origin};
    std::ranges::sort(c.vars);
    c.vars.erase(std::unique(c.vars.begin(), c.vars.end()), c.vars.end());
    return c;
}

constexpr std::size_t batch_size = 1 << 14;

}  // namespace

std::vector<CCouple> word_couples(const Word& w, int k, int n, std::span<const State> ends,
                                  std::uint32_t word_rank) {
    std::vector<CCouple> out;
    std::uint32_t rank = 0;
    for_each_ctransition(w, k, n, ends, true, nullptr,
                         [&](const CTransition& ct) { out.push_back(to_couple(ct, {word_rank, rank++})); });
    return out;
}

CCoupleDb build_ccouple_db(const LabeledSample& s, int k, const EncodeOptions& opts) {
    CCoupleDb db(k, s.alphabet_size(), opts.max_db_entries);
    const auto ends = end_states(s, k, opts);
    const auto ranks = negative_ranks(s);
    std::vector<std::size_t> order(s.negatives().size());
    std::iota(order.begin(), order.end(), 0);
    std::ranges::sort(order, [&](std::size_t a, std::size_t b) { return ranks[a] < ranks[b]; });
    for (std::size_t i : order) {
        const Word& w = s.negatives()[i];
        if (w.empty()) continue;
        std::uint32_t rank = 0;
        for_each_ctransition(w, k, s.alphabet_size(), ends, true, nullptr, [&](const CTransition& ct) {
            if ((rank & 0xFFF) == 0) opts.deadline.check();
            db.insert(to_couple(ct, {ranks[i], rank++}));
        });
    }
    db.finalize();
    return db;
}

void subsumption_filter(const CCoupleDb& db, std::span<const CCouple> couples, std::span<std::uint8_t> keep) {
    if (keep.size() != couples.size()) throw std::logic_error("keep span size mismatch");
    const auto count = static_cast<std::int64_t>(couples.size());
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t i = 0; i < count; ++i) keep[i] = db.is_subsumed(couples[i]) ? 0 : 1;
}

void subsumption_filter_serial(const CCoupleDb& db, std::span<const CCouple> couples,
                               std::span<std::uint8_t> keep) {
    if (keep.size() != couples.size()) throw std::logic_error("keep span size mismatch");
    for (std::size_t i = 0; i < couples.size(); ++i) keep[i] = db.is_subsumed(couples[i]) ? 0 : 1;
}

std::size_t filter_word(const CCoupleDb& db, const Word& w, int k, int n, std::span<const State> ends,
                        std::optional<std::uint32_t> negative_rank, const EncodeOptions& opts,
                        std::vector<std::uint8_t>& keep) {
    std::vector<CCouple> batch;
    batch.reserve(batch_size);
    std::uint32_t rank = 0;
    std::size_t hits = 0;
    auto flush = [&] {
        opts.deadline.check();
        const std::size_t start = keep.size();
        keep.resize(start + batch.size());
        const std::span<std::uint8_t> out(keep.data() + start, batch.size());
        if (opts.threads == 1)
            subsumption_filter_serial(db, batch, out);
        else
            subsumption_filter(db, batch, out);
        hits += static_cast<std::size_t>(std::ranges::count(out, 0));
        batch.clear();
    };
    for_each_ctransition(w, k, n, ends, true, nullptr, [&](const CTransition& ct) {
        const Origin origin = negative_rank ? Origin{*negative_rank, rank} : Origin::positive();
        ++rank;
        batch.push_back(to_couple(ct, origin));
        if (batch.size() == batch_size) flush();
    });
    flush();
    return hits;
}

FilterPlan plan_subsumption(const LabeledSample& s, int k, const EncodeOptions& opts) {
    const CCoupleDb db = build_ccouple_db(s, k, opts);
    const auto ends = end_states(s, k, opts);
    const auto ranks = negative_ranks(s);
    const int n = s.alphabet_size();
    FilterPlan plan;
    plan.db_entries = db.size();
    plan.keep.resize(s.positives().size() + s.negatives().size());
    for (std::size_t i = 0; i < s.positives().size(); ++i) {
        const Word& w = s.positives()[i];
        if (!w.empty())
            plan.hits += filter_word(db, w, k, n, ends, std::nullopt, opts, plan.keep[positive_word_id(i)]);
    }
    for (std::size_t i = 0; i < s.negatives().size(); ++i) {
        const Word& w = s.negatives()[i];
        if (!w.empty())
            plan.hits += filter_word(db, w, k, n, ends, ranks[i], opts, plan.keep[negative_word_id(s, i)]);
    }
    return plan;
}

}  // namespace nfasat
