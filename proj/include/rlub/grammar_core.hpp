#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

// Core value types for right linear grammars with unknown behaviors (RLUBs)
// and their control systems: intervals, generative conditions, grammars,
// partial orders over control alphabets, and finite language classes.
// Everything here is an immutable value after construction and safe to share
// across threads.

namespace rlub {

using Sym = std::string;
using Word = std::vector<Sym>;  // string over some alphabet; empty = epsilon
using SymSet = std::set<Sym>;
using RuleIdSet = std::set<std::string>;

// Symbols joined for human-readable output. Epsilon prints as "".
std::string display(const Word& w);

// Finite integer range [lo, hi] with 0 <= lo <= hi.
struct Interval {
    int lo = 0;
    int hi = 0;

    Interval() = default;
    Interval(int lo_, int hi_);

    bool contains(int k) const { return lo <= k && k <= hi; }
    bool subset_of(const Interval& other) const {
        return other.lo <= lo && hi <= other.hi;
    }
    auto operator<=>(const Interval&) const = default;
};

// Pair of derivation-depth bounds: mu_t caps the depths a control step may
// reach, mu_b the depths guaranteed to be reachable. Requires mu_b <= mu_t.
struct GenerativeCondition {
    Interval mu_t;
    Interval mu_b;

    GenerativeCondition() = default;
    GenerativeCondition(Interval t, Interval b);
};

// One production rule. Exactly three shapes are allowed:
//   terminal && next   A -> aB
//   terminal only      A -> a
//   neither            A -> epsilon
// The fourth combination (next without terminal, "A -> B") is invalid and
// flagged by validate_grammar.
struct Rule {
    std::string id;
    Sym lhs;
    std::optional<Sym> terminal;
    std::optional<Sym> next;

    bool is_epsilon() const { return !terminal && !next; }
    bool same_production(const Rule& o) const {
        return lhs == o.lhs && terminal == o.terminal && next == o.next;
    }
};

struct RightLinearGrammar {
    SymSet nonterminals;
    SymSet terminals;
    Sym start;
    std::vector<Rule> rules;  // order preserved; ids unique

    const Rule* find_rule(const std::string& id) const;
};

// Finite set of rule-id sequences; the empty sequence is allowed.
struct Behavior {
    std::set<std::vector<std::string>> sequences;
};

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> warnings;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

ValidationReport validate_grammar(const RightLinearGrammar& g);

// Partial order over a finite carrier, stored closed (all related pairs,
// including the reflexive ones) so queries are set lookups.
struct PartialOrder {
    SymSet carrier;
    std::set<std::pair<Sym, Sym>> pairs;

    bool leq(const Sym& a, const Sym& b) const {
        return pairs.count({a, b}) != 0;
    }
    bool subset_of(const PartialOrder& other) const;
    bool operator==(const PartialOrder&) const = default;
};

// Builds the reflexive-transitive closure of the generator pairs and checks
// antisymmetry afterwards. Throws std::invalid_argument if a generator uses a
// symbol outside the carrier or if the closure contains a two-way pair of
// distinct symbols.
PartialOrder close_order(SymSet carrier,
                         const std::vector<std::pair<Sym, Sym>>& generators);

// Control system (Gamma, phi, T): control symbols, the rule sets they
// activate, and the admissible control sequences.
struct ControlSystem {
    SymSet alphabet;
    std::map<Sym, RuleIdSet> phi;
    std::set<Word> sequences;
};

ValidationReport validate_control(const ControlSystem& c,
                                  const RightLinearGrammar& g);

// The order induced by rule-set inclusion: a <= b iff phi(a) is a subset of
// phi(b). Injectivity of phi makes this antisymmetric; throws
// std::invalid_argument when phi is not injective.
PartialOrder induced_order(const ControlSystem& c);

// Finite class of non-empty finite languages, keyed by name.
struct LanguageClass {
    std::map<std::string, std::set<Word>> languages;
};

ValidationReport validate_class(const LanguageClass& cls);

// Set of symbols occurring in any of the given words.
SymSet alph(const std::set<Word>& words);
SymSet alph(const LanguageClass& cls);

// A right linear grammar together with its generative condition.
struct Rlub {
    RightLinearGrammar grammar;
    GenerativeCondition gc;
};

}  // namespace rlub
