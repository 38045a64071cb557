#include <atomic>
#include <cstdint>
#include <limits>

#include "nfasat/error.hpp"
#include "nfasat/nfa.hpp"

namespace nfasat {

namespace {

/// Bit-packed candidate automaton for the enumeration kernel. States are
/// 0-based bit positions inside a 32-bit mask.
struct PackedCandidate {
    std::uint32_t finals = 0;
    std::uint32_t delta[oracle_bit_limit][oracle_bit_limit / 4] = {};  // [symbol][from] -> targets
};

class Enumeration {
public:
    Enumeration(const LabeledSample& s, int k) : sample_(s), k_(k), n_(s.alphabet_size()) {
        if (k < 1) throw Error("k must be at least 1");
        const long long bits = static_cast<long long>(k) + static_cast<long long>(n_) * k * k;
        if (bits > oracle_bit_limit)
            throw OracleBoundError("oracle refused: k + n*k^2 = " + std::to_string(bits) +
                                   " exceeds the enumeration bound of " + std::to_string(oracle_bit_limit));
        bits_ = static_cast<int>(bits);
    }

    std::uint64_t candidate_count() const { return std::uint64_t{1} << bits_; }

    void unpack(std::uint64_t c, PackedCandidate& p) const {
        p.finals = 0;
        for (int j = 0; j < k_; ++j)
            if (bit(c, j + 1)) p.finals |= 1u << j;
        int var = k_ + 1;
        for (int a = 0; a < n_; ++a)
            for (int i = 0; i < k_; ++i) {
                std::uint32_t row = 0;
                for (int j = 0; j < k_; ++j, ++var)
                    if (bit(c, var)) row |= 1u << j;
                p.delta[a][i] = row;
            }
    }

    bool consistent(const PackedCandidate& p) const {
        for (const Word& w : sample_.positives())
            if (!accepts(p, w)) return false;
        for (const Word& w : sample_.negatives())
            if (accepts(p, w)) return false;
        return true;
    }

    Nfa materialize(std::uint64_t c) const {
        Nfa a(k_, n_);
        for (State j = 1; j <= k_; ++j) a.set_final(j, bit(c, j));
        int var = k_ + 1;
        for (SymbolId s = 1; s <= n_; ++s)
            for (State i = 1; i <= k_; ++i)
                for (State j = 1; j <= k_; ++j, ++var) a.set_transition(s, i, j, bit(c, var));
        return a;
    }

private:
    // variable v (1-based) is bit (bits - v): f_1 is the most significant
    bool bit(std::uint64_t c, int var) const { return (c >> (bits_ - var)) & 1u; }

    bool accepts(const PackedCandidate& p, const Word& w) const {
        std::uint32_t frontier = 1;
        for (SymbolId s : w) {
            std::uint32_t next = 0;
            for (std::uint32_t f = frontier; f != 0; f &= f - 1) next |= p.delta[s - 1][__builtin_ctz(f)];
            if (next == 0) return false;
            frontier = next;
        }
        return (frontier & p.finals) != 0;
    }

    const LabeledSample& sample_;
    int k_;
    int n_;
    int bits_ = 0;
};

constexpr std::uint64_t chunk_size = std::uint64_t{1} << 14;

}  // namespace

std::optional<Nfa> brute_force_search_serial(const LabeledSample& s, int k) {
    const Enumeration e(s, k);
    PackedCandidate p;
    for (std::uint64_t c = 0; c < e.candidate_count(); ++c) {
        e.unpack(c, p);
        if (e.consistent(p)) return e.materialize(c);
    }
    return std::nullopt;
}

std::optional<Nfa> brute_force_search(const LabeledSample& s, int k) {
    const Enumeration e(s, k);
    const std::uint64_t total = e.candidate_count();
    const auto chunks = static_cast<std::int64_t>((total + chunk_size - 1) / chunk_size);
    constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
    std::atomic<std::uint64_t> best{none};

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t chunk = 0; chunk < chunks; ++chunk) {
        const std::uint64_t begin = static_cast<std::uint64_t>(chunk) * chunk_size;
        if (begin >= best.load(std::memory_order_relaxed)) continue;
        const std::uint64_t end = std::min(total, begin + chunk_size);
        PackedCandidate p;
        for (std::uint64_t c = begin; c < end; ++c) {
            e.unpack(c, p);
            if (!e.consistent(p)) continue;
            std::uint64_t cur = best.load();
            while (c < cur && !best.compare_exchange_weak(cur, c)) {
            }
            break;
        }
    }
    if (best == none) return std::nullopt;
    return e.materialize(best);
}

}  // namespace nfasat
