// Serial reference kernels against their OpenMP counterparts.
//
//   ./build/bench/nfasat-bench --benchmark_filter=Oracle
//
// OMP_NUM_THREADS controls the parallel side; the serial side always runs on
// one thread.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "nfasat/pipeline.hpp"

using namespace nfasat;

namespace {

LabeledSample sample_of(const std::vector<std::string>& pos, const std::vector<std::string>& neg,
                        const std::vector<std::string>& alphabet) {
    auto to_word = [&](const std::string& text) {
        Word w;
        for (char c : text)
            w.push_back(static_cast<SymbolId>(
                std::find(alphabet.begin(), alphabet.end(), std::string(1, c)) - alphabet.begin() + 1));
        return w;
    };
    std::vector<Word> p, n;
    for (const auto& w : pos) p.push_back(to_word(w));
    for (const auto& w : neg) n.push_back(to_word(w));
    return LabeledSample(alphabet, std::move(p), std::move(n));
}

// Needs four states, so at k=3 the oracle scans all 2^21 candidates.
const LabeledSample& oracle_sample() {
    static const LabeledSample s =
        sample_of({"aaa"}, {"", "a", "aa", "aaaa", "aaaaa", "aaaaaa"}, {"a", "b"});
    return s;
}

// Random words of length 5-7 over {a,b}: enough couples for the filter to
// dominate generation time.
const LabeledSample& filter_sample() {
    static const LabeledSample s = [] {
        std::mt19937 rng(7);
        std::vector<std::string> pos, neg;
        std::set<std::string> used;
        while (used.size() < 16) {
            std::string w;
            const int len = std::uniform_int_distribution<int>(5, 7)(rng);
            for (int i = 0; i < len; ++i) w += "ab"[rng() % 2];
            if (used.insert(w).second) (used.size() % 2 ? pos : neg).push_back(w);
        }
        return sample_of(pos, neg, {"a", "b"});
    }();
    return s;
}

void BM_OracleSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(brute_force_search_serial(oracle_sample(), 3));
}

void BM_OracleParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(brute_force_search(oracle_sample(), 3));
}

void encode_with(benchmark::State& st, Variant v, int threads) {
    EncodeOptions o;
    o.variant = v;
    o.threads = threads;
    std::size_t clauses = 0;
    for (auto _ : st) clauses = encode(filter_sample(), static_cast<int>(st.range(0)), o).cnf.clause_count();
    st.counters["clauses"] = static_cast<double>(clauses);
}

void BM_SubsumeSerial(benchmark::State& st) { encode_with(st, Variant::all, 1); }
void BM_SubsumeParallel(benchmark::State& st) { encode_with(st, Variant::all, 0); }
void BM_MsetSerial(benchmark::State& st) { encode_with(st, Variant::mset, 1); }
void BM_MsetParallel(benchmark::State& st) { encode_with(st, Variant::mset, 0); }
void BM_Base(benchmark::State& st) { encode_with(st, Variant::base, 0); }

}  // namespace

BENCHMARK(BM_OracleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Base)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubsumeSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubsumeParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MsetSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MsetParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
