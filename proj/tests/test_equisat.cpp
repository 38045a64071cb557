#include <doctest.h>

#include "support.hpp"

using namespace nfasat;
using nfasat::testing::solve_encoding;

namespace {

struct Config {
    const char* name;
    EncodeOptions opts;
    bool complete;  // unsat answers must match the oracle
};

std::vector<Config> configs() {
    std::vector<Config> out;
    auto add = [&](const char* name, auto tweak, bool complete = true) {
        EncodeOptions o;
        tweak(o);
        out.push_back({name, o, complete});
    };
    add("base", [](EncodeOptions&) {});
    add("base without the end-state filter", [](EncodeOptions& o) { o.empty_word_filter = false; });
    add("base without unreachable-state clauses", [](EncodeOptions& o) { o.redundant = false; });
    add("base with repeats kept", [](EncodeOptions& o) { o.dedup_within = false; });
    add("base with cross-path dedup", [](EncodeOptions& o) { o.dedup_across_paths = true; });
    add("all", [](EncodeOptions& o) { o.variant = Variant::all; });
    add("all, serial kernels", [](EncodeOptions& o) {
        o.variant = Variant::all;
        o.threads = 1;
    });
    add("mset:1", [](EncodeOptions& o) {
        o.variant = Variant::mset;
        o.mset_level = 1;
    });
    add("mset:max", [](EncodeOptions& o) { o.variant = Variant::mset; });
    add("prefix", [](EncodeOptions& o) { o.variant = Variant::prefix; });
    // pairwise-distinct boundaries may lose genuine solutions, so only
    // sat answers are checked for this one
    add(
        "prefix:literal",
        [](EncodeOptions& o) {
            o.variant = Variant::prefix;
            o.prefix_mode = PrefixMode::literal;
        },
        false);
    return out;
}

}  // namespace

TEST_CASE("every model agrees with the oracle on a micro corpus") {
    nfasat::testing::TempDir dir;
    const auto corpus = nfasat::testing::micro_corpus(90, 4242);
    const auto all = configs();
    std::map<std::string, int> mismatches;
    int sat = 0, unsat = 0;
    for (const LabeledSample& s : corpus)
        for (int k = 1; k <= 3; ++k) {
            if (k + s.alphabet_size() * k * k > 12) continue;
            const bool expected = brute_force_search(s, k).has_value();
            (expected ? sat : unsat)++;
            for (const Config& c : all) {
                const auto v = solve_encoding(encode(s, k, c.opts), s, dir);
                const bool got = v.status == SolveStatus::sat;
                if (v.status == SolveStatus::unknown || (got && !v.verified) || (c.complete && got != expected) ||
                    (got && !expected))
                    ++mismatches[c.name];
            }
        }
    for (const Config& c : all) {
        INFO(c.name);
        CHECK(mismatches[c.name] == 0);
    }
    CHECK(sat > 20);
    CHECK(unsat > 20);
}
