#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>

#include "rlub/grammar_core.hpp"

// Exact erasing-mode semantics over finite sets of sentential forms: one
// control step, step-counted generation, full control-sequence evaluation via
// the two-extremes reduction, and seeded behavior sampling for property
// tests. All functions are pure; different control sequences can be
// evaluated in parallel.

namespace rlub {

using Form = Word;  // sequence over V union Sigma; empty = epsilon
using FormSet = std::set<Form>;

// phi(t)^mu without enumeration: all sequences over rule_ids whose length
// lies in lengths.
struct PowerBehavior {
    RuleIdSet rule_ids;
    Interval lengths;
};

struct EngineLimits {
    std::size_t max_forms = 100'000;  // per produced set; aborts the run
};

struct limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// First rules of the non-empty sequences in an explicit behavior.
RuleIdSet prf1(const Behavior& r);
// First rules of phi(t)^mu: phi(t) itself when a sequence of length >= 1
// exists, empty otherwise.
RuleIdSet first_rule_ids(const PowerBehavior& pb);

// Forms in xs to which at least one of the given rules applies. Terminal
// strings are never enabled.
FormSet enabled(const RightLinearGrammar& g, const FormSet& xs,
                const RuleIdSet& first_ids);

// One erasing-mode step: results of applying every sequence of the behavior
// to every enabled form; non-enabled forms are erased. A behavior containing
// only the empty sequence enables nothing and yields the empty set.
FormSet erase_step(const RightLinearGrammar& g, const FormSet& xs,
                   const Behavior& r, const EngineLimits& limits = {});

// Erasing-mode step under phi(t)^mu, computed by level sets: successors of
// the enabled forms at every depth in mu. Equals erase_step over the full
// enumeration of the power behavior without building it.
FormSet erase_step_power(const RightLinearGrammar& g, const FormSet& xs,
                         const PowerBehavior& pb,
                         const EngineLimits& limits = {});

// Step-counted variants: only sequences of length exactly l apply. The
// enabled set is still taken with respect to the whole behavior.
FormSet erase_step_counted(const RightLinearGrammar& g, const FormSet& xs,
                           const Behavior& r, int l,
                           const EngineLimits& limits = {});
FormSet erase_step_counted(const RightLinearGrammar& g, const FormSet& xs,
                           const PowerBehavior& pb, int l,
                           const EngineLimits& limits = {});

// Chained counted steps; behaviors and depth entries pair up index by index.
// Throws std::invalid_argument on a length mismatch.
FormSet run_counted(const RightLinearGrammar& g, const FormSet& xs,
                    std::span<const PowerBehavior> behaviors,
                    std::span<const int> lambda,
                    const EngineLimits& limits = {});

// Full enumeration of phi(t)^mu as an explicit behavior. Throws
// std::invalid_argument when the enumeration would exceed max_sequences.
Behavior enumerate_power(const PowerBehavior& pb, std::size_t max_sequences);

enum class GenMode { syn, nonsyn };

struct RunStep {
    Sym control;
    Interval interval;
    FormSet forms_in;
    FormSet forms_enabled;
    FormSet forms_out;
};

struct ControlRun {
    Word tau;
    Interval interval;
    std::vector<RunStep> steps;

    const FormSet& final_forms() const;
};

// Deterministic chain of erase_step_power steps, one per control symbol, all
// with the same depth interval.
ControlRun run_extreme(const RightLinearGrammar& g, const ControlSystem& c,
                       const Word& tau, const Interval& mu,
                       const EngineLimits& limits = {});

// Forms consisting of terminals only (the empty form counts).
std::set<Word> terminal_strings(const RightLinearGrammar& g, const FormSet& xs);

struct GenerationResult {
    bool defined = false;
    std::set<Word> language;  // meaningful iff defined
    ControlRun upper;         // depths from mu_t
    ControlRun lower;         // depths from mu_b
    std::string reason;       // empty iff defined
};

// Evaluates a control sequence by running the two deterministic extremes
// (all behaviors at mu_t, all at mu_b). The sequence defines a language iff
// both extremes agree on the terminal strings of the final set; synchronous
// mode additionally requires that no intermediate set of either extreme
// contains a terminal string. Throws std::invalid_argument when tau uses
// symbols outside the control alphabet.
GenerationResult language_of(const Rlub& h, const ControlSystem& c,
                             const Word& tau, GenMode mode,
                             const EngineLimits& limits = {});

struct ClassResult {
    bool defined = false;
    std::set<std::set<Word>> languages;
    std::map<Word, std::set<Word>> per_sequence;
    std::optional<Word> undefined_at;
    std::string reason;
};

// Evaluates every control sequence in T; defined iff all of them are.
// An empty T yields the empty class.
ClassResult class_of(const Rlub& h, const ControlSystem& c, GenMode mode,
                     const EngineLimits& limits = {});

// Explicit behavior R with enumerate(lower) as a guaranteed subset and up to
// `budget` extra sampled sequences with lengths drawn from the upper
// interval, so that lower <= R <= upper as behaviors. Both power behaviors
// must share the rule set and the lower interval must sit inside the upper
// one. Throws std::invalid_argument when the lower enumeration alone
// exceeds the budget. Deterministic in the seed.
Behavior sample_behavior(const PowerBehavior& lower, const PowerBehavior& upper,
                         std::uint64_t seed, std::size_t budget);

}  // namespace rlub
