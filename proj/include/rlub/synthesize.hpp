#pragma once

#include "rlub/construct.hpp"
#include "rlub/derivation.hpp"

// End-to-end decision procedure: bounded exhaustive search over encodings for
// one satisfying the generability condition, construction and verification of
// the witness pair on success, and a certified negative on exhaustion. The
// image-length bounds make the search space provably exhaustive, so "no" is
// an answer, not a timeout.

namespace rlub {

struct SearchBounds {
    // Feasible image-length range per language; outside it some word has an
    // empty division set, so no encoding can work.
    std::map<std::string, std::pair<int, int>> image_length;
    bool feasible = true;
    std::string infeasible_language;
};

// Requires 0 outside mu_t (so mu_b has positive entries and word lengths pin
// the image lengths both ways).
SearchBounds compute_bounds(const LanguageClass& cls,
                            const GenerativeCondition& gc);

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_passed() const;
};

// Four-point verification of a grammar/control pair against a language
// class: control sequences cover the alphabet, the rule-set inclusion order
// matches the expected one (the induced order itself when none is given),
// the generated class equals the given one, and distinct control sequences
// generate distinct languages.
VerifyReport verify_pair(const Rlub& h, const ControlSystem& c,
                         const LanguageClass& cls, GenMode mode,
                         const std::optional<PartialOrder>& expected_order =
                             std::nullopt,
                         const EngineLimits& limits = {});

enum class Verdict { yes, no, unsupported, unknown };

std::string to_string(Verdict v);

struct SynthesisCaps {
    double timeout_seconds = 60.0;
    std::uint64_t max_encodings = 10'000'000;
    EngineLimits limits;
};

struct SynthesisStats {
    std::uint64_t encodings_tried = 0;
    double elapsed_seconds = 0.0;
};

struct SynthesisResult {
    Verdict verdict = Verdict::unknown;
    std::optional<Encoding> encoding;
    std::optional<WitnessTable> witnesses;
    std::optional<GrammarBuild> build;
    std::optional<ControlSystem> control;
    std::optional<VerifyReport> verification;
    SearchBounds bounds;
    SynthesisStats stats;
    std::string note;
};

// Searches injective encodings in a fixed order (total image length
// ascending, then length profile, then images lexicographically; per word
// delta 0 before delta 1 and divisions lexicographically), so the reported
// witness encoding is the least passing one and reruns are reproducible.
// Verdicts: yes with a verified witness pair, no on exhaustion, unsupported
// when 0 lies in mu_t, unknown when a resource cap fires first.
SynthesisResult synthesize(const LanguageClass& cls,
                           const GenerativeCondition& gc,
                           const PartialOrder& ord, GenMode mode,
                           const SynthesisCaps& caps = {});

}  // namespace rlub
