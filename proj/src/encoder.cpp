#include "nfasat/encoder.hpp"

#include <algorithm>
#include <set>

#include "nfasat/error.hpp"
#include "nfasat/mset.hpp"
#include "nfasat/prefix.hpp"
#include "nfasat/subsume.hpp"

namespace nfasat {

std::string_view variant_name(Variant v) {
    switch (v) {
        case Variant::base: return "base";
        case Variant::all: return "all";
        case Variant::mset: return "mset";
        case Variant::prefix: return "prefix";
    }
    return "?";
}

std::string_view prefix_mode_name(PrefixMode m) { return m == PrefixMode::sound ? "sound" : "literal"; }

Deadline Deadline::after(std::chrono::duration<double> d) {
    return Deadline(std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(d));
}

void Deadline::check() const {
    if (at_ && std::chrono::steady_clock::now() >= *at_) throw GenerationTimeout("generation deadline reached");
}

void for_each_ctransition(const Word& w, int k, int n, std::span<const State> ends, bool dedup,
                          const PathShape* shape, const std::function<void(const CTransition&)>& fn) {
    if (w.empty()) throw Error("c_transitions need a non-empty word");
    const std::size_t len = w.size();
    std::vector<std::uint8_t> is_cut(len + 1, 0);
    const bool literal = shape && shape->mode == PrefixMode::literal;
    if (shape)
        for (std::size_t c : shape->cuts) {
            if (c == 0 || c >= len) throw Error("prefix cut outside the word");
            is_cut[c] = 1;
        }
    std::vector<State> boundaries;

    CTransition ct;
    ct.path.assign(len + 1, 1);
    ct.vars.reserve(len);

    auto emit = [&] {
        ct.vars.clear();
        for (std::size_t p = 0; p < len; ++p) {
            const VarId v = var_delta(w[p], ct.path[p], ct.path[p + 1], k, n);
            if (dedup && std::ranges::find(ct.vars, v) != ct.vars.end()) continue;
            ct.vars.push_back(v);
        }
        fn(ct);
    };

    auto visit = [&](auto&& self, std::size_t p) -> void {
        if (p == len) {
            for (State j : ends) {
                if (std::ranges::find(boundaries, j) != boundaries.end()) continue;
                ct.path[p] = j;
                emit();
            }
            return;
        }
        for (State s = 1; s <= k; ++s) {
            if (is_cut[p]) {
                if (literal && std::ranges::find(boundaries, s) != boundaries.end()) continue;
                boundaries.push_back(s);
            }
            ct.path[p] = s;
            self(self, p + 1);
            if (is_cut[p]) boundaries.pop_back();
        }
    };
    visit(visit, 1);
}

std::vector<CTransition> enumerate_ctransitions(const Word& w, int k, int n, std::span<const State> ends,
                                                bool dedup) {
    std::vector<CTransition> out;
    for_each_ctransition(w, k, n, ends, dedup, nullptr, [&](const CTransition& ct) { out.push_back(ct); });
    return out;
}

std::vector<State> end_states(const LabeledSample& s, int k, const EncodeOptions& opts) {
    const State first = (opts.empty_word_filter && s.empty_word_negative()) ? 2 : 1;
    std::vector<State> ends;
    for (State j = first; j <= k; ++j) ends.push_back(j);
    return ends;
}

void emit_lambda(const LabeledSample& s, CnfInstance& cnf) {
    const VarId f1 = cnf.vars().final_var(1);
    for (std::size_t i = 0; i < s.positives().size(); ++i)
        if (s.positives()[i].empty()) cnf.add_clause({Literal::pos(f1)}, {Family::empty_word_accept, positive_word_id(i)});
    for (std::size_t i = 0; i < s.negatives().size(); ++i)
        if (s.negatives()[i].empty())
            cnf.add_clause({Literal::neg(f1)}, {Family::empty_word_reject, negative_word_id(s, i)});
}

namespace {

/// Applies the keep mask and the cross-path duplicate rule to each path.
class PathGate {
public:
    explicit PathGate(const EmitContext& ctx) : ctx_(ctx) {}

    bool admit(const CTransition& ct, EmitResult& r) {
        const std::size_t rank = r.candidates++;
        if ((rank & 0xFFF) == 0) ctx_.deadline.check();
        if (ctx_.keep && (rank >= ctx_.keep->size() || !(*ctx_.keep)[rank])) return false;
        if (ctx_.dedup_across_paths) {
            std::vector<VarId> key = ct.vars;
            std::ranges::sort(key);
            key.erase(std::unique(key.begin(), key.end()), key.end());
            key.push_back(-ct.end());
            if (!seen_.insert(std::move(key)).second) return false;
        }
        ++r.kept;
        return true;
    }

    void finish(const EmitResult& r) const {
        if (ctx_.keep && ctx_.keep->size() != r.candidates)
            throw std::logic_error("keep mask does not match the path enumeration");
    }

private:
    const EmitContext& ctx_;
    std::set<std::vector<VarId>> seen_;
};

bool decomposed(const EmitContext& ctx) { return ctx.shape && !ctx.shape->cuts.empty(); }

}  // namespace

EmitResult emit_positive(CnfInstance& cnf, std::int32_t word, const Word& w, const EmitContext& ctx) {
    const bool pre = decomposed(ctx);
    const Family forward = pre ? Family::prefix_aux_implies_path : Family::aux_implies_path;
    const Family backward = pre ? Family::prefix_path_implies_aux : Family::path_implies_aux;
    const Family disjunction = pre ? Family::prefix_aux_disjunction : Family::aux_disjunction;

    EmitResult r;
    PathGate gate(ctx);
    VarMap& vars = cnf.vars();
    std::vector<Literal> auxes;
    std::vector<Literal> clause;
    for_each_ctransition(w, ctx.k, ctx.n, ctx.ends, ctx.dedup_within, ctx.shape, [&](const CTransition& ct) {
        if (!gate.admit(ct, r)) return;
        const VarId aux = vars.allocate_aux(word, ct.path);
        const VarId fj = vars.final_var(ct.end());
        for (VarId v : ct.vars) cnf.add_clause({Literal::neg(aux), Literal::pos(v)}, {forward, word});
        cnf.add_clause({Literal::neg(aux), Literal::pos(fj)}, {forward, word});
        clause.assign(1, Literal::pos(aux));
        for (VarId v : ct.vars) clause.push_back(Literal::neg(v));
        clause.push_back(Literal::neg(fj));
        cnf.add_clause(clause, {backward, word});
        auxes.push_back(Literal::pos(aux));
    });
    gate.finish(r);
    if (auxes.empty()) {
        const VarId marker = vars.allocate_aux(word, {});
        cnf.add_clause({Literal::pos(marker)}, {Family::unsat_marker, word});
        cnf.add_clause({Literal::neg(marker)}, {Family::unsat_marker, word});
        r.structurally_unsat = true;
    } else {
        cnf.add_clause(auxes, {disjunction, word});
    }
    return r;
}

EmitResult emit_negative(CnfInstance& cnf, std::int32_t word, const Word& w, const EmitContext& ctx) {
    const Family family = decomposed(ctx) ? Family::prefix_negative_path : Family::negative_path;
    EmitResult r;
    PathGate gate(ctx);
    std::vector<Literal> clause;
    for_each_ctransition(w, ctx.k, ctx.n, ctx.ends, ctx.dedup_within, ctx.shape, [&](const CTransition& ct) {
        if (!gate.admit(ct, r)) return;
        clause.clear();
        for (VarId v : ct.vars) clause.push_back(Literal::neg(v));
        clause.push_back(Literal::neg(cnf.vars().final_var(ct.end())));
        cnf.add_clause(clause, {family, word});
    });
    gate.finish(r);
    return r;
}

void emit_redundant(int k, int n, CnfInstance& cnf) {
    const VarMap& vars = cnf.vars();
    std::vector<Literal> clause;
    for (State j = 2; j <= k; ++j) {
        std::vector<Literal> incoming;
        for (State i = 1; i <= k; ++i) {
            if (i == j) continue;
            for (SymbolId s = 1; s <= n; ++s) incoming.push_back(Literal::pos(vars.delta_var(s, i, j)));
        }
        auto add = [&](Literal consequent) {
            clause = incoming;
            clause.push_back(consequent);
            cnf.add_clause(clause, {Family::unreachable_state, -1});
        };
        add(Literal::neg(vars.final_var(j)));
        for (SymbolId s = 1; s <= n; ++s)
            for (State i = 1; i <= k; ++i) add(Literal::neg(vars.delta_var(s, j, i)));
    }
}

Encoding encode(const LabeledSample& s, int k, const EncodeOptions& opts) {
    if (k < 1) throw Error("k must be at least 1");
    const int n = s.alphabet_size();
    Encoding enc{CnfInstance(VarMap(k, n)), {}};
    EncodeReport& rep = enc.report;

    std::optional<FilterPlan> plan;
    if (opts.variant == Variant::all) {
        plan = plan_subsumption(s, k, opts);
    } else if (opts.variant == Variant::mset) {
        LatticeReport lat;
        plan = plan_mset(s, k, opts, &lat);
        rep.lattice = std::move(lat);
    }
    if (plan) {
        rep.db_entries = plan->db_entries;
        rep.filter_hits = plan->hits;
    }

    std::set<Word> negative_set;
    if (opts.variant == Variant::prefix)
        for (const Word& w : s.negatives())
            if (!w.empty()) negative_set.insert(w);

    emit_lambda(s, enc.cnf);

    EmitContext base_ctx;
    base_ctx.k = k;
    base_ctx.n = n;
    base_ctx.ends = end_states(s, k, opts);
    base_ctx.dedup_within = opts.dedup_within;
    base_ctx.dedup_across_paths = opts.dedup_across_paths;
    base_ctx.deadline = opts.deadline;

    auto encode_word = [&](std::int32_t id, const Word& w, bool positive) {
        WordReport wr;
        wr.word = id;
        wr.positive = positive;
        wr.length = w.size();
        if (w.empty()) {
            rep.words.push_back(std::move(wr));
            return;
        }
        EmitContext ctx = base_ctx;
        PathShape shape;
        if (plan) ctx.keep = &plan->keep.at(static_cast<std::size_t>(id));
        if (opts.variant == Variant::prefix) {
            shape.cuts = nested_prefix_cuts(w, negative_set).cuts;
            shape.mode = opts.prefix_mode;
            ctx.shape = &shape;
            wr.cuts = shape.cuts;
            if (positive && !shape.cuts.empty()) {
                std::size_t prod = 1;
                for (std::size_t i = 1; i <= shape.cuts.size() + 1; ++i)
                    prod *= (static_cast<std::size_t>(k) + 1 > i) ? static_cast<std::size_t>(k) + 1 - i : 0;
                rep.boundary_only_aux += prod;
            }
        }
        const EmitResult r = positive ? emit_positive(enc.cnf, id, w, ctx) : emit_negative(enc.cnf, id, w, ctx);
        wr.candidates = r.candidates;
        wr.kept = r.kept;
        wr.structurally_unsat = r.structurally_unsat;
        if (r.structurally_unsat) {
            std::string cause = "positive word '" + s.word_text(w) + "' has no candidate accepting path";
            if (opts.variant == Variant::prefix && opts.prefix_mode == PrefixMode::literal &&
                static_cast<std::size_t>(k) < shape.cuts.size() + 1)
                cause += " (literal prefix mode needs k >= " + std::to_string(shape.cuts.size() + 1) + ")";
            rep.unsat_causes.push_back(std::move(cause));
        }
        rep.words.push_back(std::move(wr));
    };

    for (std::size_t i = 0; i < s.positives().size(); ++i) encode_word(positive_word_id(i), s.positives()[i], true);
    for (std::size_t i = 0; i < s.negatives().size(); ++i)
        encode_word(negative_word_id(s, i), s.negatives()[i], false);

    if (opts.redundant) emit_redundant(k, n, enc.cnf);
    return enc;
}

PredictedCounts predicted_base_counts(std::size_t length, int k, bool positive, bool empty_word_negative) {
    if (length == 0) throw Error("predicted counts need a non-empty word");
    std::size_t paths = static_cast<std::size_t>(empty_word_negative ? k - 1 : k);
    for (std::size_t i = 1; i < length; ++i) paths *= static_cast<std::size_t>(k);
    PredictedCounts c;
    if (positive) {
        c.aux_implies_path = (length + 1) * paths;
        c.path_implies_aux = paths;
        c.aux = paths;
        c.aux_disjunction = paths > 0 ? 1 : 0;
        c.structurally_unsat = paths == 0;
    } else {
        c.negative_path = paths;
    }
    return c;
}

nlohmann::json encoding_metadata(const LabeledSample& s, int k, const EncodeOptions& opts, const Encoding& e) {
    using nlohmann::json;
    const VarMap& vars = e.cnf.vars();
    const int n = s.alphabet_size();

    json options = {
        {"redundant", opts.redundant},
        {"dedup_within", opts.dedup_within},
        {"dedup_across_paths", opts.dedup_across_paths},
        {"empty_word_filter", opts.empty_word_filter},
    };
    if (opts.variant == Variant::mset)
        options["level"] = opts.mset_level ? json(*opts.mset_level) : json("max");
    if (opts.variant == Variant::prefix) options["prefix_mode"] = prefix_mode_name(opts.prefix_mode);

    json aux = json::array();
    for (VarId v = vars.fixed_count() + 1; v <= vars.total(); ++v) {
        const AuxInfo info = vars.aux_info(v);
        aux.push_back({{"id", v}, {"word", info.word}, {"end", info.end}, {"path", info.path}});
    }

    json words = json::array();
    for (const WordReport& w : e.report.words) {
        json jw = {{"id", w.word},
                   {"label", w.positive ? "+" : "-"},
                   {"length", w.length},
                   {"candidates", w.candidates},
                   {"kept", w.kept}};
        if (w.structurally_unsat) jw["structurally_unsat"] = true;
        if (opts.variant == Variant::prefix) {
            jw["cuts"] = w.cuts;
            jw["parts"] = w.length == 0 ? 0 : w.cuts.size() + 1;
        }
        words.push_back(std::move(jw));
    }

    const InstanceStats st = instance_stats(e.cnf);
    json meta = {
        {"k", k},
        {"n", n},
        {"alphabet", s.alphabet()},
        {"variant", variant_name(opts.variant)},
        {"options", options},
        {"var_blocks",
         {{"final", {1, k}},
          {"delta", {k + 1, vars.fixed_count()}},
          {"aux", {vars.fixed_count() + 1, vars.total()}}}},
        {"aux", aux},
        {"words", words},
        {"stats", stats_to_json(st)},
        {"structurally_unsat", e.report.structurally_unsat()},
        {"unsat_causes", e.report.unsat_causes},
    };
    if (opts.variant == Variant::all || opts.variant == Variant::mset)
        meta["subsumption"] = {{"db_entries", e.report.db_entries}, {"filter_hits", e.report.filter_hits}};
    if (e.report.lattice) {
        const LatticeReport& l = *e.report.lattice;
        meta["lattice"] = {{"nodes", l.nodes}, {"max_level", l.max_level}, {"level", l.level_used},
                           {"node_hits", l.node_hits}};
    }
    if (opts.variant == Variant::prefix) {
        std::size_t path_aux = 0;
        for (const WordReport& w : e.report.words)
            if (w.positive && !w.cuts.empty()) path_aux += w.kept;
        meta["prefix"] = {{"mode", prefix_mode_name(opts.prefix_mode)},
                          {"aux_per_path", path_aux},
                          {"aux_boundary_only", e.report.boundary_only_aux}};
    }
    return meta;
}

}  // namespace nfasat
