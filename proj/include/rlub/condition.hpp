#pragma once

#include "rlub/grammar_core.hpp"
#include "rlub/order_relation.hpp"

// Decides, for a fixed encoding (theta, delta), whether every word of every
// language owns a division witness satisfying the generability conditions:
// condition C (membership soundness s1 plus prefix safety s2, for synchronous
// generation) or condition C' (s1 only, for possibly non-synchronous
// generation).

namespace rlub {

using DeltaMap = std::map<std::string, std::map<Word, int>>;

struct Encoding {
    std::map<std::string, Word> theta;  // language name -> control word
    DeltaMap delta;                     // padding bits; missing entries are 0

    int delta_of(const std::string& lang, const Word& w) const;
};

struct WitnessTable {
    std::map<std::string, std::map<Word, Division>> entries;
};

enum class ConditionMode { C, CPrime };

struct S2Violation {
    std::string other_language;
    Word tau;
};

// s1 for one candidate division: every language whose image is reachable
// from (theta(L), lambda) by a positive-depth witness must contain w.
// Returns the first violating language name.
std::optional<std::string> check_s1(const std::map<std::string, Word>& theta,
                                    const Division& lambda,
                                    const std::string& lang, const Word& w,
                                    const LanguageClass& cls,
                                    const GenerativeCondition& gc,
                                    const PartialOrder& ord);

// s2 for one candidate division: no proper prefix of any image may be
// reachable from (theta(L), lambda) by a positive-depth witness. Control
// sequences that are not such prefixes satisfy the condition vacuously, so
// only prefixes are examined.
std::optional<S2Violation> check_s2(const std::map<std::string, Word>& theta,
                                    const Division& lambda,
                                    const std::string& lang,
                                    const LanguageClass& cls,
                                    const GenerativeCondition& gc,
                                    const PartialOrder& ord);

struct ConditionFailure {
    std::string kind;  // "encoding" | "c1" | "no-division" | "s1" | "s2"
    std::string language;
    Word word;
    Division lambda;
    std::string other_language;
    Word tau;
    std::string detail;
};

struct ConditionResult {
    bool ok = false;
    WitnessTable witnesses;
    std::optional<ConditionFailure> failure;
};

// Lexicographically least division for (lang, w) passing s1 (and s2 in mode
// C) with the given padding bit, or nullopt.
std::optional<Division> find_witness_for_word(
    const LanguageClass& cls, const GenerativeCondition& gc,
    const PartialOrder& ord, const std::map<std::string, Word>& theta,
    const std::string& lang, const Word& w, int delta_bit, ConditionMode mode);

// Full check: alphabet coverage (c1) plus a witness for every word of every
// language (c2 / c2'). On success the table holds the lexicographically
// least witness per word; on failure the innermost violated quantifier
// instance is reported.
ConditionResult check_condition(const LanguageClass& cls,
                                const GenerativeCondition& gc,
                                const PartialOrder& ord, const Encoding& enc,
                                ConditionMode mode);

// Re-validates an externally supplied witness table entry by entry: division
// membership (right length, entries within mu_b, right total) and the s1/s2
// statements for the requested mode.
ValidationReport validate_witnesses(const LanguageClass& cls,
                                    const GenerativeCondition& gc,
                                    const PartialOrder& ord,
                                    const Encoding& enc,
                                    const WitnessTable& table,
                                    ConditionMode mode);

}  // namespace rlub
