#include "rlub/grammar_core.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rlub {

std::string display(const Word& w) {
    std::string out;
    for (const Sym& s : w) out += s;
    return out;
}

Interval::Interval(int lo_, int hi_) : lo(lo_), hi(hi_) {
    if (lo < 0) throw std::invalid_argument("interval bound must be non-negative");
    if (hi < lo) throw std::invalid_argument("interval needs lo <= hi");
}

GenerativeCondition::GenerativeCondition(Interval t, Interval b)
    : mu_t(t), mu_b(b) {
    if (!mu_b.subset_of(mu_t))
        throw std::invalid_argument("generative condition needs mu_b inside mu_t");
}

const Rule* RightLinearGrammar::find_rule(const std::string& id) const {
    for (const Rule& r : rules)
        if (r.id == id) return &r;
    return nullptr;
}

std::string ValidationReport::summary() const {
    if (ok() && warnings.empty()) return "ok";
    std::ostringstream os;
    for (const auto& v : violations) os << "violation: " << v << "\n";
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    return os.str();
}

ValidationReport validate_grammar(const RightLinearGrammar& g) {
    ValidationReport rep;
    for (const Sym& s : g.nonterminals)
        if (g.terminals.count(s))
            rep.violations.push_back("alphabet overlap: symbol '" + s +
                                     "' is both nonterminal and terminal");
    if (!g.nonterminals.count(g.start))
        rep.violations.push_back("start symbol '" + g.start +
                                 "' is not a nonterminal");
    std::set<std::string> seen_ids;
    for (const Rule& r : g.rules) {
        if (r.id.empty()) rep.violations.push_back("rule with empty id");
        if (!seen_ids.insert(r.id).second)
            rep.violations.push_back("duplicate rule id '" + r.id + "'");
        if (!g.nonterminals.count(r.lhs))
            rep.violations.push_back("rule '" + r.id + "': lhs '" + r.lhs +
                                     "' is not a nonterminal");
        if (r.next && !r.terminal)
            rep.violations.push_back("rule '" + r.id +
                                     "': bad rule shape (nonterminal-only right side)");
        if (r.terminal && !g.terminals.count(*r.terminal))
            rep.violations.push_back("rule '" + r.id + "': '" + *r.terminal +
                                     "' is not a terminal");
        if (r.next && !g.nonterminals.count(*r.next))
            rep.violations.push_back("rule '" + r.id + "': '" + *r.next +
                                     "' is not a nonterminal");
    }
    return rep;
}

bool PartialOrder::subset_of(const PartialOrder& other) const {
    return std::includes(other.pairs.begin(), other.pairs.end(),
                         pairs.begin(), pairs.end());
}

PartialOrder close_order(SymSet carrier,
                         const std::vector<std::pair<Sym, Sym>>& generators) {
    PartialOrder ord;
    ord.carrier = std::move(carrier);
    for (const auto& [a, b] : generators) {
        if (!ord.carrier.count(a) || !ord.carrier.count(b))
            throw std::invalid_argument("order generator (" + a + "," + b +
                                        ") uses a symbol outside the carrier");
        ord.pairs.insert({a, b});
    }
    for (const Sym& s : ord.carrier) ord.pairs.insert({s, s});
    // Warshall closure over the (small) carrier.
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<Sym, Sym>> to_add;
        for (const auto& [a, b] : ord.pairs)
            for (const Sym& c : ord.carrier)
                if (ord.pairs.count({b, c}) && !ord.pairs.count({a, c}))
                    to_add.push_back({a, c});
        for (auto& p : to_add) changed |= ord.pairs.insert(std::move(p)).second;
    }
    for (const auto& [a, b] : ord.pairs)
        if (a != b && ord.pairs.count({b, a}))
            throw std::invalid_argument(
                "generators do not close into a partial order: " + a + " and " +
                b + " relate both ways");
    return ord;
}

ValidationReport validate_control(const ControlSystem& c,
                                  const RightLinearGrammar& g) {
    ValidationReport rep;
    if (c.alphabet.empty())
        rep.violations.push_back("control alphabet is empty");
    for (const Sym& t : c.alphabet)
        if (g.nonterminals.count(t) || g.terminals.count(t))
            rep.violations.push_back("control symbol '" + t +
                                     "' collides with a grammar symbol");
    std::set<std::string> rule_ids;
    for (const Rule& r : g.rules) rule_ids.insert(r.id);
    std::map<RuleIdSet, Sym> images;
    for (const auto& [t, ids] : c.phi) {
        if (!c.alphabet.count(t))
            rep.violations.push_back("phi defined on unknown symbol '" + t + "'");
        for (const auto& id : ids)
            if (!rule_ids.count(id))
                rep.violations.push_back("phi(" + t + ") names unknown rule '" +
                                         id + "'");
        auto [it, fresh] = images.insert({ids, t});
        if (!fresh)
            rep.violations.push_back("phi is not injective: phi(" + it->second +
                                     ") = phi(" + t + ")");
    }
    for (const Sym& t : c.alphabet)
        if (!c.phi.count(t))
            rep.violations.push_back("phi undefined on '" + t + "'");
    for (const Word& tau : c.sequences) {
        if (tau.empty())
            rep.violations.push_back("empty control sequence in T");
        for (const Sym& t : tau)
            if (!c.alphabet.count(t))
                rep.violations.push_back("control sequence '" + display(tau) +
                                         "' uses unknown symbol '" + t + "'");
    }
    if (c.sequences.empty())
        rep.warnings.push_back("control-sequence set T is empty; the generated class is empty");
    return rep;
}

PartialOrder induced_order(const ControlSystem& c) {
    std::map<RuleIdSet, Sym> images;
    for (const auto& [t, ids] : c.phi) {
        auto [it, fresh] = images.insert({ids, t});
        if (!fresh)
            throw std::invalid_argument("induced order needs injective phi; phi(" +
                                        it->second + ") = phi(" + t + ")");
    }
    PartialOrder ord;
    ord.carrier = c.alphabet;
    for (const auto& [a, pa] : c.phi)
        for (const auto& [b, pb] : c.phi)
            if (std::includes(pb.begin(), pb.end(), pa.begin(), pa.end()))
                ord.pairs.insert({a, b});
    return ord;
}

ValidationReport validate_class(const LanguageClass& cls) {
    ValidationReport rep;
    std::map<std::set<Word>, std::string> seen;
    for (const auto& [name, words] : cls.languages) {
        if (words.empty())
            rep.violations.push_back("language '" + name + "' is empty");
        auto [it, fresh] = seen.insert({words, name});
        if (!fresh)
            rep.violations.push_back("languages '" + it->second + "' and '" +
                                     name + "' are equal as sets");
    }
    return rep;
}

SymSet alph(const std::set<Word>& words) {
    SymSet out;
    for (const Word& w : words)
        for (const Sym& s : w) out.insert(s);
    return out;
}

SymSet alph(const LanguageClass& cls) {
    SymSet out;
    for (const auto& [name, words] : cls.languages) {
        SymSet part = alph(words);
        out.insert(part.begin(), part.end());
    }
    return out;
}

}  // namespace rlub
