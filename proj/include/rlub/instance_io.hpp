#pragma once

#include <json.hpp>

#include "rlub/condition.hpp"
#include "rlub/derivation.hpp"
#include "rlub/synthesize.hpp"

// JSON problem-instance files and result serialization. An instance file is
// one object with optional sections (grammar, gc, control, order, languages,
// encoding, witnesses, control_sequence, mode); each command checks for the
// sections it needs. Strings over an alphabet may be written either as plain
// text, split greedily by longest symbol match, or as arrays of symbols.

namespace rlub {

struct Instance {
    std::optional<RightLinearGrammar> grammar;
    std::optional<GenerativeCondition> gc;
    std::optional<ControlSystem> control;
    std::optional<PartialOrder> order;
    std::optional<LanguageClass> languages;
    std::optional<Encoding> encoding;
    std::optional<WitnessTable> witnesses;
    std::optional<Word> control_sequence;
    std::optional<GenMode> mode;

    // Alphabet used to tokenize terminal words (grammar terminals, else
    // single characters) and control text (control alphabet, else the order
    // carrier).
    SymSet word_alphabet() const;
    std::optional<SymSet> control_alphabet() const;
};

// Greedy longest-match split of text into symbols of the alphabet; throws
// std::invalid_argument when no symbol matches a position.
Word tokenize(const std::string& text, const SymSet& alphabet);

Instance parse_instance(const nlohmann::json& j);
Instance load_instance(const std::string& path);

GenMode parse_mode(const std::string& text);
ConditionMode parse_condition_mode(const std::string& text);

nlohmann::json to_json(const RightLinearGrammar& g);
nlohmann::json to_json(const GenerativeCondition& gc);
nlohmann::json to_json(const ControlSystem& c);
nlohmann::json to_json(const PartialOrder& ord);
nlohmann::json to_json(const LanguageClass& cls);
nlohmann::json to_json(const Encoding& enc);
nlohmann::json to_json(const WitnessTable& table);
nlohmann::json to_json(const ControlRun& run);
nlohmann::json to_json(const GenerationResult& r);
nlohmann::json to_json(const ClassResult& r);
nlohmann::json to_json(const VerifyReport& r);
nlohmann::json to_json(const ConditionResult& r);

// Full synthesis result; on yes the "instance" member is itself a loadable
// instance file describing the built pair.
nlohmann::json synthesis_to_json(const SynthesisResult& r,
                                 const LanguageClass& cls,
                                 const GenerativeCondition& gc,
                                 const PartialOrder& ord, GenMode mode);

}  // namespace rlub
