#pragma once

#include <random>
#include <string>

#include "rlub/construct.hpp"
#include "rlub/derivation.hpp"

// Shared instances for the unit and acceptance suites: a small branching
// grammar whose control system generates {{ab},{ab,ac}}, and a four-language
// class over a three-symbol control alphabet that separates the partial
// order from its total extension.

namespace fixtures {

using namespace rlub;

// One symbol per character.
inline Word W(const std::string& chars) {
    Word w;
    for (char ch : chars) w.push_back(std::string(1, ch));
    return w;
}

// Control words written as letter-digit runs: "t1t2t3" -> {t1, t2, t3}.
inline Word T(const std::string& text) {
    Word w;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t j = i + 1;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
            ++j;
        w.push_back(text.substr(i, j - i));
        i = j;
    }
    return w;
}

inline Word reps(char ch, int n) { return W(std::string(n, ch)); }

inline RightLinearGrammar branching_grammar() {
    RightLinearGrammar g;
    g.nonterminals = {"S", "A", "B", "C"};
    g.terminals = {"a", "b", "c", "d"};
    g.start = "S";
    g.rules = {
        {"r1", "S", "a", "A"}, {"r2", "A", "b", "B"},
        {"r3", "A", "b", std::nullopt}, {"r4", "B", std::nullopt, std::nullopt},
        {"r5", "B", "c", "C"}, {"r6", "A", "c", std::nullopt},
        {"r7", "B", "d", std::nullopt},
    };
    return g;
}

inline GenerativeCondition branching_gc() {
    return GenerativeCondition(Interval(1, 2), Interval(1, 1));
}

inline ControlSystem branching_control(bool with_t4_sequence = false) {
    ControlSystem c;
    c.alphabet = {"t1", "t2", "t3", "t4"};
    c.phi = {{"t1", {"r1", "r2"}},
             {"t2", {"r3", "r4", "r5"}},
             {"t3", {"r3", "r6"}},
             {"t4", {"r3", "r6", "r7"}}};
    c.sequences = {{"t1", "t2"}, {"t1", "t3"}};
    if (with_t4_sequence) c.sequences.insert({"t1", "t4"});
    return c;
}

inline Rlub branching_rlub() { return Rlub{branching_grammar(), branching_gc()}; }

inline LanguageClass four_class() {
    LanguageClass cls;
    cls.languages["L1"] = {reps('a', 15)};
    cls.languages["L2"] = {reps('a', 15), reps('b', 7)};
    cls.languages["L3"] = {reps('c', 5)};
    cls.languages["L4"] = {reps('c', 5), reps('d', 4)};
    return cls;
}

inline GenerativeCondition four_gc() {
    return GenerativeCondition(Interval(3, 11), Interval(4, 8));
}

inline PartialOrder chain_t2_t3_order() {
    return close_order({"t1", "t2", "t3"}, {{"t2", "t3"}});
}

inline PartialOrder total_t1_t2_t3_order() {
    return close_order({"t1", "t2", "t3"}, {{"t1", "t2"}, {"t2", "t3"}});
}

inline Encoding four_encoding() {
    Encoding enc;
    enc.theta = {{"L1", {"t1", "t2", "t3"}},
                 {"L2", {"t1", "t3"}},
                 {"L3", {"t2"}},
                 {"L4", {"t3"}}};
    enc.delta["L2"][reps('b', 7)] = 1;
    return enc;
}

// The known-good witness table for four_encoding().
inline WitnessTable four_witnesses() {
    WitnessTable t;
    t.entries["L1"][reps('a', 15)] = {4, 5, 6};
    t.entries["L2"][reps('a', 15)] = {8, 7};
    t.entries["L2"][reps('b', 7)] = {4, 4};
    t.entries["L3"][reps('c', 5)] = {5};
    t.entries["L4"][reps('c', 5)] = {5};
    t.entries["L4"][reps('d', 4)] = {4};
    return t;
}

// Three-rule loop grammar used for the counted-step examples.
inline RightLinearGrammar loop_grammar() {
    RightLinearGrammar g;
    g.nonterminals = {"S"};
    g.terminals = {"a", "b", "c"};
    g.start = "S";
    g.rules = {{"r1", "S", "a", "S"},
               {"r2", "S", "b", "S"},
               {"r3", "S", "c", std::nullopt}};
    return g;
}

struct RandomInstance {
    Rlub h;
    ControlSystem c;
};

// Small random grammar + control system: at most 3 control symbols, at most
// 8 rules, depth bounds at most 3.
inline RandomInstance random_instance(std::mt19937_64& rng) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    RandomInstance ri;
    RightLinearGrammar& g = ri.h.grammar;
    const int n_nts = pick(2, 3);
    const int n_terms = pick(1, 2);
    const std::vector<Sym> nts = {"S", "A", "B"};
    const std::vector<Sym> terms = {"a", "b"};
    for (int i = 0; i < n_nts; ++i) g.nonterminals.insert(nts[i]);
    for (int i = 0; i < n_terms; ++i) g.terminals.insert(terms[i]);
    g.start = "S";
    const int n_rules = pick(2, 8);
    for (int i = 0; i < n_rules; ++i) {
        Rule r;
        r.id = "r" + std::to_string(i + 1);
        r.lhs = nts[pick(0, n_nts - 1)];
        switch (pick(0, 2)) {
            case 0:
                r.terminal = terms[pick(0, n_terms - 1)];
                r.next = nts[pick(0, n_nts - 1)];
                break;
            case 1:
                r.terminal = terms[pick(0, n_terms - 1)];
                break;
            default:
                break;  // epsilon rule
        }
        g.rules.push_back(std::move(r));
    }
    const int hi_t = pick(1, 3);
    const int lo_t = pick(0, hi_t);
    const int lo_b = pick(lo_t, hi_t);
    const int hi_b = pick(lo_b, hi_t);
    ri.h.gc = GenerativeCondition(Interval(lo_t, hi_t), Interval(lo_b, hi_b));

    const int n_controls = pick(1, 3);
    const std::vector<Sym> controls = {"t1", "t2", "t3"};
    for (;;) {
        ri.c.alphabet.clear();
        ri.c.phi.clear();
        std::set<RuleIdSet> images;
        bool injective = true;
        for (int i = 0; i < n_controls; ++i) {
            ri.c.alphabet.insert(controls[i]);
            RuleIdSet ids;
            for (const Rule& r : g.rules)
                if (pick(0, 1)) ids.insert(r.id);
            injective = injective && images.insert(ids).second;
            ri.c.phi[controls[i]] = std::move(ids);
        }
        if (injective) break;
    }
    ri.c.sequences.clear();
    const int n_seqs = pick(1, 2);
    for (int i = 0; i < n_seqs; ++i) {
        Word tau;
        const int len = pick(1, 3);
        for (int k = 0; k < len; ++k) tau.push_back(controls[pick(0, n_controls - 1)]);
        ri.c.sequences.insert(std::move(tau));
    }
    return ri;
}

}  // namespace fixtures
