#pragma once

#include "rlub/condition.hpp"
#include "rlub/grammar_core.hpp"

// Builds the witness grammar and control system from a passing encoding: one
// fresh rule chain per (language, word) deriving exactly that word, a
// division-guided partition of each chain into contiguous blocks, and the
// control function that activates a block wherever the matching image symbol
// sits below the control symbol.

namespace rlub {

struct WordRuleChain {
    std::string language;
    Word word;
    int delta_bit = 0;
    std::vector<std::string> rule_ids;  // application order; derives the word
    std::string epsilon_anchor_id;      // the Z -> epsilon rule for this pair
};

struct GrammarBuild {
    RightLinearGrammar grammar;
    std::vector<WordRuleChain> chains;  // ordered by (language, word)
    std::vector<std::string> warnings;

    const WordRuleChain* find_chain(const std::string& lang, const Word& w) const;
};

// Chain construction. Each word w gets |w| + delta rules; delta = 1 appends
// an epsilon rule behind a trailing fresh nonterminal. Dead Z nonterminals
// with epsilon rules are always emitted (one per pair); they only matter for
// the single-block partition below. A word of length 0 requires delta = 1
// (nothing derives epsilon in zero rule applications) and is flagged with a
// warning. Structurally equal rules (only possible for one-step S -> x
// chains) are shared and carry one canonical id.
GrammarBuild build_grammar(const LanguageClass& cls, const DeltaMap& delta);

// Splits the chain into contiguous blocks of sizes lambda[0], lambda[1], ...
// The single-entry division <1> instead yields one block holding both the
// chain rule and the epsilon anchor. Throws std::invalid_argument when the
// division total differs from the chain length.
std::vector<RuleIdSet> partition_chain(const WordRuleChain& chain,
                                       const Division& lambda);

// Control function and sequence set from the witness table: phi(t) collects
// every block whose image symbol sits at or below t; T is the image set.
// Requires 0 outside mu_b. Structural guarantees are re-checked on every
// build (phi injective, induced order equal to the given one, block/rule
// indexing law, every block carrying a rule that pins its identity); any
// failure aborts with std::logic_error since it indicates inconsistent
// inputs.
ControlSystem build_control(const GrammarBuild& build, const LanguageClass& cls,
                            const Encoding& enc, const WitnessTable& witnesses,
                            const PartialOrder& ord,
                            const GenerativeCondition& gc);

}  // namespace rlub
