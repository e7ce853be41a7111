#include "rlub/construct.hpp"

#include <algorithm>
#include <stdexcept>

namespace rlub {

namespace {

std::string word_tag(const Word& w) {
    return w.empty() ? "eps" : display(w);
}

bool is_start_terminal_rule(const RightLinearGrammar& g, const Rule& r) {
    return r.lhs == g.start && !r.next;  // S -> x with x a terminal or epsilon
}

}  // namespace

const WordRuleChain* GrammarBuild::find_chain(const std::string& lang,
                                              const Word& w) const {
    for (const WordRuleChain& c : chains)
        if (c.language == lang && c.word == w) return &c;
    return nullptr;
}

GrammarBuild build_grammar(const LanguageClass& cls, const DeltaMap& delta) {
    if (auto rep = validate_class(cls); !rep.ok())
        throw std::invalid_argument("invalid language class: " + rep.summary());

    GrammarBuild out;
    RightLinearGrammar& g = out.grammar;
    g.terminals = alph(cls);

    g.start = "S";
    while (g.terminals.count(g.start)) g.start += "_";
    g.nonterminals.insert(g.start);

    auto delta_of = [&](const std::string& lang, const Word& w) {
        auto it = delta.find(lang);
        if (it == delta.end()) return 0;
        auto jt = it->second.find(w);
        if (jt == it->second.end()) return 0;
        if (jt->second != 0 && jt->second != 1)
            throw std::invalid_argument("delta bits must be 0 or 1");
        return jt->second;
    };

    auto fresh_nonterminal = [&](const std::string& name) {
        if (g.terminals.count(name) || !g.nonterminals.insert(name).second)
            throw std::invalid_argument("generated nonterminal '" + name +
                                        "' is not fresh; rename the colliding symbols");
        return name;
    };

    // Structural sharing: identical productions keep one id.
    std::map<std::tuple<Sym, std::optional<Sym>, std::optional<Sym>>, std::string>
        production_ids;
    auto add_rule = [&](std::string id, Sym lhs, std::optional<Sym> terminal,
                        std::optional<Sym> next) -> std::string {
        auto key = std::make_tuple(lhs, terminal, next);
        auto it = production_ids.find(key);
        if (it != production_ids.end()) return it->second;
        g.rules.push_back(Rule{id, std::move(lhs), std::move(terminal),
                               std::move(next)});
        production_ids.emplace(std::move(key), id);
        return id;
    };

    for (const auto& [lang, words] : cls.languages) {
        for (const Word& w : words) {
            const int bit = delta_of(lang, w);
            const int n = static_cast<int>(w.size()) + bit;
            if (n == 0)
                throw std::invalid_argument(
                    "language '" + lang +
                    "' contains the empty word with delta 0; no rule chain can derive it");
            const std::string tag = lang + "__" + word_tag(w);

            WordRuleChain chain;
            chain.language = lang;
            chain.word = w;
            chain.delta_bit = bit;

            const Sym z = fresh_nonterminal("Z__" + tag);
            chain.epsilon_anchor_id =
                add_rule("r0__" + tag, z, std::nullopt, std::nullopt);

            if (n == 1) {
                // Single-step chain S -> x; shared across pairs when the
                // production coincides.
                if (w.empty()) {
                    out.warnings.push_back(
                        "language '" + lang +
                        "' contains the empty word; derived in one step via an epsilon rule");
                    chain.rule_ids.push_back(
                        add_rule("rS__eps", g.start, std::nullopt, std::nullopt));
                } else {
                    chain.rule_ids.push_back(
                        add_rule("rS__" + w[0], g.start, w[0], std::nullopt));
                }
            } else {
                std::vector<Sym> mids;  // A_1 .. A_{n-1}
                for (int i = 1; i <= n - 1; ++i)
                    mids.push_back(fresh_nonterminal(
                        "A" + std::to_string(i) + "__" + tag));
                for (int i = 1; i <= n; ++i) {
                    const Sym lhs = (i == 1) ? g.start : mids[i - 2];
                    std::optional<Sym> terminal, next;
                    if (i <= static_cast<int>(w.size())) {
                        terminal = w[i - 1];
                        if (i < n) next = mids[i - 1];
                    }
                    chain.rule_ids.push_back(add_rule(
                        "r" + std::to_string(i) + "__" + tag, lhs, terminal, next));
                }
            }
            out.chains.push_back(std::move(chain));
        }
    }

    if (auto rep = validate_grammar(g); !rep.ok())
        throw std::logic_error("constructed grammar failed validation: " +
                               rep.summary());
    return out;
}

std::vector<RuleIdSet> partition_chain(const WordRuleChain& chain,
                                       const Division& lambda) {
    if (seq_sum(lambda) != static_cast<long long>(chain.rule_ids.size()))
        throw std::invalid_argument(
            "division total " + std::to_string(seq_sum(lambda)) +
            " differs from the chain length " +
            std::to_string(chain.rule_ids.size()));
    if (lambda.size() == 1 && lambda[0] == 1)
        return {{chain.epsilon_anchor_id, chain.rule_ids[0]}};
    std::vector<RuleIdSet> blocks;
    std::size_t pos = 0;
    for (int width : lambda) {
        RuleIdSet block;
        for (int k = 0; k < width; ++k) block.insert(chain.rule_ids[pos++]);
        blocks.push_back(std::move(block));
    }
    return blocks;
}

ControlSystem build_control(const GrammarBuild& build, const LanguageClass& cls,
                            const Encoding& enc, const WitnessTable& witnesses,
                            const PartialOrder& ord,
                            const GenerativeCondition& gc) {
    if (gc.mu_b.contains(0))
        throw std::invalid_argument(
            "control construction requires 0 outside mu_b");

    struct Placed {
        const WordRuleChain* chain;
        Division lambda;
        std::vector<RuleIdSet> blocks;
    };
    std::vector<Placed> placed;
    for (const auto& [lang, words] : cls.languages) {
        const Word& image = enc.theta.at(lang);
        auto tit = witnesses.entries.find(lang);
        for (const Word& w : words) {
            if (tit == witnesses.entries.end() || !tit->second.count(w))
                throw std::invalid_argument("no witness for " + lang + "/" +
                                            display(w));
            const Division& lambda = tit->second.at(w);
            if (lambda.size() != image.size())
                throw std::invalid_argument(
                    "witness for " + lang + "/" + display(w) +
                    " does not match the image length");
            const WordRuleChain* chain = build.find_chain(lang, w);
            if (!chain)
                throw std::invalid_argument("no rule chain for " + lang + "/" +
                                            display(w));
            placed.push_back({chain, lambda, partition_chain(*chain, lambda)});
        }
    }

    ControlSystem c;
    c.alphabet = ord.carrier;
    for (const Sym& t : ord.carrier) c.phi[t] = {};
    for (const Placed& p : placed) {
        const Word& image = enc.theta.at(p.chain->language);
        for (std::size_t i = 0; i < p.blocks.size(); ++i)
            for (const Sym& t : ord.carrier)
                if (ord.leq(image[i], t))
                    c.phi[t].insert(p.blocks[i].begin(), p.blocks[i].end());
    }
    for (const auto& [lang, image] : enc.theta)
        if (cls.languages.count(lang)) c.sequences.insert(image);

    // Structural guarantees; failures mean the inputs were not a passing
    // encoding/witness pair.
    for (const Placed& p : placed) {
        for (std::size_t i = 0; i < p.blocks.size(); ++i) {
            bool pinned = false;
            for (const std::string& id : p.blocks[i])
                if (!is_start_terminal_rule(build.grammar,
                                            *build.grammar.find_rule(id)))
                    pinned = true;
            if (!pinned)
                throw std::logic_error(
                    "block " + std::to_string(i + 1) + " of " +
                    p.chain->language + "/" + display(p.chain->word) +
                    " carries only one-step start rules");
        }
        const Word& image = enc.theta.at(p.chain->language);
        for (std::size_t j = 1; j <= p.chain->rule_ids.size(); ++j) {
            const Sym& seg_sym =
                image[seg_index(p.lambda, static_cast<long long>(j)) - 1];
            for (const Sym& t : ord.carrier) {
                const bool in_phi =
                    c.phi.at(t).count(p.chain->rule_ids[j - 1]) != 0;
                if (in_phi != ord.leq(seg_sym, t))
                    throw std::logic_error(
                        "indexing law violated at rule " +
                        p.chain->rule_ids[j - 1] + " and symbol " + t);
            }
        }
    }
    for (std::size_t a = 0; a < placed.size(); ++a)
        for (std::size_t b = 0; b < placed.size(); ++b)
            for (std::size_t i = 0; i < placed[a].blocks.size(); ++i)
                for (std::size_t j = 0; j < placed[b].blocks.size(); ++j) {
                    if (a == b && i == j) continue;
                    for (const std::string& id : placed[a].blocks[i])
                        if (placed[b].blocks[j].count(id) &&
                            !is_start_terminal_rule(build.grammar,
                                                    *build.grammar.find_rule(id)))
                            throw std::logic_error(
                                "blocks of distinct pairs share rule '" + id +
                                "'");
                }
    if (induced_order(c) != ord)  // also throws when phi is not injective
        throw std::logic_error(
            "the rule-set inclusion order of the built control system differs "
            "from the requested order");
    return c;
}

}  // namespace rlub
