#include "rlub/instance_io.hpp"

#include <fstream>

namespace rlub {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw std::invalid_argument("instance: " + what);
}

SymSet parse_symbol_set(const json& j, const char* where) {
    if (!j.is_array()) bad(std::string(where) + " must be an array of symbols");
    SymSet out;
    for (const auto& e : j) {
        if (!e.is_string()) bad(std::string(where) + " must contain strings");
        out.insert(e.get<std::string>());
    }
    return out;
}

Word parse_word(const json& j, const SymSet& alphabet, const char* where) {
    if (j.is_array()) {
        Word w;
        for (const auto& e : j) {
            if (!e.is_string()) bad(std::string(where) + ": symbol arrays hold strings");
            w.push_back(e.get<std::string>());
        }
        return w;
    }
    if (j.is_string()) return tokenize(j.get<std::string>(), alphabet);
    bad(std::string(where) + ": expected a string or an array of symbols");
}

Interval parse_interval(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
        !j[1].is_number_integer())
        bad(std::string(where) + " must be [lo, hi]");
    return Interval(j[0].get<int>(), j[1].get<int>());
}

json word_json(const Word& w) { return display(w); }

}  // namespace

Word tokenize(const std::string& text, const SymSet& alphabet) {
    Word out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t best = 0;
        for (const Sym& s : alphabet)
            if (s.size() > best && text.compare(pos, s.size(), s) == 0)
                best = s.size();
        if (best == 0)
            throw std::invalid_argument("cannot tokenize '" + text +
                                        "' at position " + std::to_string(pos) +
                                        ": no alphabet symbol matches");
        out.push_back(text.substr(pos, best));
        pos += best;
    }
    return out;
}

SymSet Instance::word_alphabet() const {
    if (grammar) return grammar->terminals;
    if (languages) {
        // No grammar: treat every character of every word as its own symbol.
        SymSet out;
        for (const auto& [name, words] : languages->languages)
            for (const Word& w : words)
                for (const Sym& s : w) out.insert(s);
        return out;
    }
    return {};
}

std::optional<SymSet> Instance::control_alphabet() const {
    if (control) return control->alphabet;
    if (order) return order->carrier;
    return std::nullopt;
}

GenMode parse_mode(const std::string& text) {
    if (text == "syn") return GenMode::syn;
    if (text == "nonsyn") return GenMode::nonsyn;
    throw std::invalid_argument("mode must be 'syn' or 'nonsyn', got '" + text +
                                "'");
}

ConditionMode parse_condition_mode(const std::string& text) {
    if (text == "C") return ConditionMode::C;
    if (text == "C'" || text == "Cprime") return ConditionMode::CPrime;
    throw std::invalid_argument("condition must be 'C' or \"C'\", got '" + text +
                                "'");
}

Instance parse_instance(const json& j) {
    if (!j.is_object()) bad("top level must be an object");
    Instance ins;

    if (j.contains("grammar")) {
        const json& g = j.at("grammar");
        RightLinearGrammar gram;
        gram.nonterminals = parse_symbol_set(g.at("nonterminals"), "grammar.nonterminals");
        gram.terminals = parse_symbol_set(g.at("terminals"), "grammar.terminals");
        if (!g.contains("start") || !g.at("start").is_string())
            bad("grammar.start must be a symbol");
        gram.start = g.at("start").get<std::string>();
        if (!g.contains("rules") || !g.at("rules").is_array())
            bad("grammar.rules must be an array");
        for (const auto& rj : g.at("rules")) {
            Rule r;
            r.id = rj.at("id").get<std::string>();
            r.lhs = rj.at("lhs").get<std::string>();
            if (rj.contains("terminal")) r.terminal = rj.at("terminal").get<std::string>();
            if (rj.contains("next")) r.next = rj.at("next").get<std::string>();
            gram.rules.push_back(std::move(r));
        }
        if (auto rep = validate_grammar(gram); !rep.ok())
            bad("grammar invalid: " + rep.summary());
        ins.grammar = std::move(gram);
    }

    if (j.contains("gc")) {
        const json& g = j.at("gc");
        ins.gc = GenerativeCondition(parse_interval(g.at("mu_t"), "gc.mu_t"),
                                     parse_interval(g.at("mu_b"), "gc.mu_b"));
    }

    if (j.contains("order")) {
        const json& o = j.at("order");
        if (o.contains("axes")) {
            std::vector<int> axes;
            for (const auto& a : o.at("axes")) axes.push_back(a.get<int>());
            ins.order = product_order(axes);
        } else {
            SymSet carrier = parse_symbol_set(o.at("alphabet"), "order.alphabet");
            std::vector<std::pair<Sym, Sym>> gens;
            if (o.contains("pairs"))
                for (const auto& p : o.at("pairs")) {
                    if (!p.is_array() || p.size() != 2)
                        bad("order.pairs entries must be [a, b]");
                    gens.push_back({p[0].get<std::string>(), p[1].get<std::string>()});
                }
            ins.order = close_order(std::move(carrier), gens);
        }
    }

    if (j.contains("control")) {
        const json& c = j.at("control");
        ControlSystem ctl;
        ctl.alphabet = parse_symbol_set(c.at("alphabet"), "control.alphabet");
        if (!c.contains("phi") || !c.at("phi").is_object())
            bad("control.phi must map symbols to rule-id arrays");
        for (const auto& [t, ids] : c.at("phi").items()) {
            RuleIdSet set;
            for (const auto& id : ids) set.insert(id.get<std::string>());
            ctl.phi[t] = std::move(set);
        }
        if (c.contains("sequences"))
            for (const auto& sj : c.at("sequences"))
                ctl.sequences.insert(parse_word(sj, ctl.alphabet, "control.sequences"));
        if (ins.grammar) {
            if (auto rep = validate_control(ctl, *ins.grammar); !rep.ok())
                bad("control invalid: " + rep.summary());
        }
        ins.control = std::move(ctl);
    }

    if (j.contains("languages")) {
        const json& l = j.at("languages");
        if (!l.is_object()) bad("languages must map names to {words: [...]}");
        LanguageClass cls;
        // Words tokenize over the grammar terminals when a grammar is
        // present, otherwise character by character.
        std::optional<SymSet> sigma;
        if (ins.grammar) sigma = ins.grammar->terminals;
        for (const auto& [name, lj] : l.items()) {
            const json& words = lj.is_object() ? lj.at("words") : lj;
            if (!words.is_array()) bad("languages." + name + " needs a words array");
            auto& target = cls.languages[name];
            for (const auto& wj : words) {
                Word w;
                if (wj.is_array() || sigma)
                    w = parse_word(wj, sigma ? *sigma : SymSet{}, "languages");
                else {
                    for (char ch : wj.get<std::string>())
                        w.push_back(std::string(1, ch));
                }
                target.insert(std::move(w));
            }
        }
        if (auto rep = validate_class(cls); !rep.ok())
            bad("language class invalid: " + rep.summary());
        ins.languages = std::move(cls);
    }

    const std::optional<SymSet> gamma = ins.control_alphabet();

    if (j.contains("encoding")) {
        const json& e = j.at("encoding");
        if (!gamma) bad("encoding needs a control or order section for its alphabet");
        Encoding enc;
        for (const auto& [name, tj] : e.at("theta").items())
            enc.theta[name] = parse_word(tj, *gamma, "encoding.theta");
        if (e.contains("delta")) {
            const SymSet sigma = ins.word_alphabet();
            for (const auto& [name, bits] : e.at("delta").items())
                for (const auto& [wtext, bit] : bits.items())
                    enc.delta[name][tokenize(wtext, sigma)] = bit.get<int>();
        }
        ins.encoding = std::move(enc);
    }

    if (j.contains("witnesses")) {
        const SymSet sigma = ins.word_alphabet();
        WitnessTable table;
        for (const auto& [name, per_word] : j.at("witnesses").items())
            for (const auto& [wtext, arr] : per_word.items()) {
                Division lambda;
                for (const auto& v : arr) lambda.push_back(v.get<int>());
                table.entries[name][tokenize(wtext, sigma)] = std::move(lambda);
            }
        ins.witnesses = std::move(table);
    }

    if (j.contains("control_sequence")) {
        if (!gamma) bad("control_sequence needs a control or order section");
        ins.control_sequence =
            parse_word(j.at("control_sequence"), *gamma, "control_sequence");
    }

    if (j.contains("mode")) ins.mode = parse_mode(j.at("mode").get<std::string>());
    return ins;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("cannot parse '" + path + "': " + e.what());
    }
    // Synthesis output embeds a loadable instance under "instance".
    if (j.is_object() && j.contains("instance") && !j.contains("grammar"))
        return parse_instance(j.at("instance"));
    return parse_instance(j);
}

json to_json(const RightLinearGrammar& g) {
    json rules = json::array();
    for (const Rule& r : g.rules) {
        json rj{{"id", r.id}, {"lhs", r.lhs}};
        if (r.terminal) rj["terminal"] = *r.terminal;
        if (r.next) rj["next"] = *r.next;
        rules.push_back(std::move(rj));
    }
    return json{{"nonterminals", g.nonterminals},
                {"terminals", g.terminals},
                {"start", g.start},
                {"rules", std::move(rules)}};
}

json to_json(const GenerativeCondition& gc) {
    return json{{"mu_t", {gc.mu_t.lo, gc.mu_t.hi}},
                {"mu_b", {gc.mu_b.lo, gc.mu_b.hi}}};
}

json to_json(const ControlSystem& c) {
    json phi = json::object();
    for (const auto& [t, ids] : c.phi) phi[t] = ids;
    json seqs = json::array();
    for (const Word& tau : c.sequences) seqs.push_back(word_json(tau));
    return json{{"alphabet", c.alphabet},
                {"phi", std::move(phi)},
                {"sequences", std::move(seqs)}};
}

json to_json(const PartialOrder& ord) {
    json pairs = json::array();
    for (const auto& [a, b] : ord.pairs)
        if (a != b) pairs.push_back(json::array({a, b}));
    return json{{"alphabet", ord.carrier}, {"pairs", std::move(pairs)}};
}

json to_json(const LanguageClass& cls) {
    json out = json::object();
    for (const auto& [name, words] : cls.languages) {
        json arr = json::array();
        for (const Word& w : words) arr.push_back(word_json(w));
        out[name] = json{{"words", std::move(arr)}};
    }
    return out;
}

json to_json(const Encoding& enc) {
    json theta = json::object();
    for (const auto& [name, image] : enc.theta) theta[name] = word_json(image);
    json delta = json::object();
    for (const auto& [name, bits] : enc.delta) {
        json per = json::object();
        for (const auto& [w, bit] : bits) per[word_json(w)] = bit;
        delta[name] = std::move(per);
    }
    return json{{"theta", std::move(theta)}, {"delta", std::move(delta)}};
}

json to_json(const WitnessTable& table) {
    json out = json::object();
    for (const auto& [name, per_word] : table.entries) {
        json per = json::object();
        for (const auto& [w, lambda] : per_word) per[word_json(w)] = lambda;
        out[name] = std::move(per);
    }
    return out;
}

namespace {

json forms_json(const FormSet& forms) {
    json arr = json::array();
    for (const Form& f : forms) arr.push_back(display(f));
    return arr;
}

json words_json(const std::set<Word>& words) {
    json arr = json::array();
    for (const Word& w : words) arr.push_back(display(w));
    return arr;
}

}  // namespace

json to_json(const ControlRun& run) {
    json steps = json::array();
    for (const RunStep& s : run.steps)
        steps.push_back(json{{"control_symbol", s.control},
                             {"interval", {s.interval.lo, s.interval.hi}},
                             {"forms_in", forms_json(s.forms_in)},
                             {"forms_enabled", forms_json(s.forms_enabled)},
                             {"forms_out", forms_json(s.forms_out)}});
    return steps;
}

json to_json(const GenerationResult& r) {
    json out{{"tau", word_json(r.upper.tau)},
             {"defined", r.defined},
             {"upper", to_json(r.upper)},
             {"lower", to_json(r.lower)}};
    if (r.defined)
        out["language"] = words_json(r.language);
    else
        out["reason"] = r.reason;
    return out;
}

json to_json(const ClassResult& r) {
    json out{{"defined", r.defined}};
    if (r.defined) {
        json langs = json::array();
        for (const auto& lang : r.languages) langs.push_back(words_json(lang));
        out["class"] = std::move(langs);
        json per = json::object();
        for (const auto& [tau, lang] : r.per_sequence)
            per[word_json(tau)] = words_json(lang);
        out["per_sequence"] = std::move(per);
    } else {
        out["undefined_at"] = word_json(r.undefined_at.value_or(Word{}));
        out["reason"] = r.reason;
    }
    return out;
}

json to_json(const VerifyReport& r) {
    json checks = json::array();
    for (const VerifyCheck& c : r.checks) {
        json cj{{"name", c.name}, {"passed", c.passed}};
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    return json{{"all_passed", r.all_passed()}, {"checks", std::move(checks)}};
}

json to_json(const ConditionResult& r) {
    json out{{"ok", r.ok}};
    if (r.ok) {
        out["witnesses"] = to_json(r.witnesses);
    } else if (r.failure) {
        const ConditionFailure& f = *r.failure;
        json fj{{"kind", f.kind}, {"detail", f.detail}};
        if (!f.language.empty()) fj["language"] = f.language;
        if (!f.word.empty() || f.kind == "no-division" || f.kind == "s1" ||
            f.kind == "s2")
            fj["word"] = word_json(f.word);
        if (!f.lambda.empty()) fj["lambda"] = f.lambda;
        if (!f.other_language.empty()) fj["other_language"] = f.other_language;
        if (!f.tau.empty()) fj["tau"] = word_json(f.tau);
        out["failure"] = std::move(fj);
    }
    return out;
}

json synthesis_to_json(const SynthesisResult& r, const LanguageClass& cls,
                       const GenerativeCondition& gc, const PartialOrder& ord,
                       GenMode mode) {
    json out{{"verdict", to_string(r.verdict)}};
    json bounds = json::object();
    for (const auto& [name, range] : r.bounds.image_length)
        bounds[name] = {range.first, range.second};
    out["stats"] = json{{"encodings_tried", r.stats.encodings_tried},
                        {"elapsed_seconds", r.stats.elapsed_seconds},
                        {"bounds", std::move(bounds)}};
    if (!r.note.empty()) out["note"] = r.note;
    if (r.encoding) out["encoding"] = to_json(*r.encoding);
    if (r.witnesses) out["witnesses"] = to_json(*r.witnesses);
    if (r.verification) out["verification"] = to_json(*r.verification);
    if (r.build && r.control) {
        json instance{{"grammar", to_json(r.build->grammar)},
                      {"gc", to_json(gc)},
                      {"control", to_json(*r.control)},
                      {"languages", to_json(cls)},
                      {"order", to_json(ord)},
                      {"mode", mode == GenMode::syn ? "syn" : "nonsyn"}};
        out["instance"] = std::move(instance);
    }
    return out;
}

}  // namespace rlub
