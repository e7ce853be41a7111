#include "rlub/derivation.hpp"

#include <algorithm>
#include <random>

namespace rlub {

namespace {

class RuleTable {
public:
    explicit RuleTable(const RightLinearGrammar& g) {
        for (const Rule& r : g.rules) {
            if (!by_id_.emplace(r.id, &r).second)
                throw std::invalid_argument("duplicate rule id '" + r.id + "'");
        }
    }

    const Rule& at(const std::string& id) const {
        auto it = by_id_.find(id);
        if (it == by_id_.end())
            throw std::invalid_argument("unknown rule id '" + id + "'");
        return *it->second;
    }

private:
    std::map<std::string, const Rule*> by_id_;
};

// All results of rewriting one occurrence of the rule's left side in x.
void apply_rule(const Rule& r, const Form& x, FormSet& out) {
    for (std::size_t p = 0; p < x.size(); ++p) {
        if (x[p] != r.lhs) continue;
        Form y;
        y.reserve(x.size() + 1);
        y.insert(y.end(), x.begin(), x.begin() + p);
        if (r.terminal) y.push_back(*r.terminal);
        if (r.next) y.push_back(*r.next);
        y.insert(y.end(), x.begin() + p + 1, x.end());
        out.insert(std::move(y));
    }
}

bool rule_applies(const Rule& r, const Form& x) {
    return std::find(x.begin(), x.end(), r.lhs) != x.end();
}

void check_cap(const FormSet& s, const EngineLimits& limits) {
    if (s.size() > limits.max_forms)
        throw limit_error("form cap exceeded (" + std::to_string(s.size()) +
                          " > " + std::to_string(limits.max_forms) +
                          "); raise max_forms to continue");
}

FormSet enabled_impl(const RuleTable& table, const FormSet& xs,
                     const RuleIdSet& first_ids) {
    FormSet out;
    for (const Form& x : xs)
        for (const std::string& id : first_ids)
            if (rule_applies(table.at(id), x)) {
                out.insert(x);
                break;
            }
    return out;
}

// Results of applying the full sequence alpha to x; empty when alpha gets
// stuck. alpha = epsilon yields {x}.
FormSet apply_sequence(const RuleTable& table, const Form& x,
                       const std::vector<std::string>& alpha,
                       const EngineLimits& limits) {
    FormSet cur{x};
    for (const std::string& id : alpha) {
        const Rule& r = table.at(id);
        FormSet next;
        for (const Form& f : cur) apply_rule(r, f, next);
        check_cap(next, limits);
        cur = std::move(next);
        if (cur.empty()) break;
    }
    return cur;
}

FormSet one_step_all(const RuleTable& table, const FormSet& xs,
                     const RuleIdSet& rule_ids, const EngineLimits& limits) {
    FormSet out;
    for (const Form& x : xs)
        for (const std::string& id : rule_ids) apply_rule(table.at(id), x, out);
    check_cap(out, limits);
    return out;
}

FormSet erase_step_power_impl(const RuleTable& table, const FormSet& xs,
                              const PowerBehavior& pb,
                              const EngineLimits& limits) {
    FormSet level = enabled_impl(table, xs, first_rule_ids(pb));
    FormSet out;
    if (pb.lengths.contains(0)) out.insert(level.begin(), level.end());
    for (int k = 1; k <= pb.lengths.hi && !level.empty(); ++k) {
        level = one_step_all(table, level, pb.rule_ids, limits);
        if (pb.lengths.contains(k)) {
            out.insert(level.begin(), level.end());
            check_cap(out, limits);
        }
    }
    return out;
}

FormSet counted_power_impl(const RuleTable& table, const FormSet& xs,
                           const PowerBehavior& pb, int l,
                           const EngineLimits& limits) {
    if (!pb.lengths.contains(l)) return {};
    FormSet level = enabled_impl(table, xs, first_rule_ids(pb));
    for (int k = 0; k < l && !level.empty(); ++k)
        level = one_step_all(table, level, pb.rule_ids, limits);
    return level;
}

}  // namespace

RuleIdSet prf1(const Behavior& r) {
    RuleIdSet out;
    for (const auto& alpha : r.sequences)
        if (!alpha.empty()) out.insert(alpha.front());
    return out;
}

RuleIdSet first_rule_ids(const PowerBehavior& pb) {
    if (pb.lengths.hi >= 1 && !pb.rule_ids.empty()) return pb.rule_ids;
    return {};
}

FormSet enabled(const RightLinearGrammar& g, const FormSet& xs,
                const RuleIdSet& first_ids) {
    return enabled_impl(RuleTable(g), xs, first_ids);
}

FormSet erase_step(const RightLinearGrammar& g, const FormSet& xs,
                   const Behavior& r, const EngineLimits& limits) {
    RuleTable table(g);
    FormSet en = enabled_impl(table, xs, prf1(r));
    FormSet out;
    for (const Form& x : en)
        for (const auto& alpha : r.sequences) {
            FormSet ys = apply_sequence(table, x, alpha, limits);
            out.insert(ys.begin(), ys.end());
            check_cap(out, limits);
        }
    return out;
}

FormSet erase_step_counted(const RightLinearGrammar& g, const FormSet& xs,
                           const Behavior& r, int l,
                           const EngineLimits& limits) {
    RuleTable table(g);
    FormSet en = enabled_impl(table, xs, prf1(r));
    FormSet out;
    for (const Form& x : en)
        for (const auto& alpha : r.sequences) {
            if (static_cast<int>(alpha.size()) != l) continue;
            FormSet ys = apply_sequence(table, x, alpha, limits);
            out.insert(ys.begin(), ys.end());
            check_cap(out, limits);
        }
    return out;
}

FormSet erase_step_power(const RightLinearGrammar& g, const FormSet& xs,
                         const PowerBehavior& pb, const EngineLimits& limits) {
    return erase_step_power_impl(RuleTable(g), xs, pb, limits);
}

FormSet erase_step_counted(const RightLinearGrammar& g, const FormSet& xs,
                           const PowerBehavior& pb, int l,
                           const EngineLimits& limits) {
    return counted_power_impl(RuleTable(g), xs, pb, l, limits);
}

FormSet run_counted(const RightLinearGrammar& g, const FormSet& xs,
                    std::span<const PowerBehavior> behaviors,
                    std::span<const int> lambda, const EngineLimits& limits) {
    if (behaviors.size() != lambda.size())
        throw std::invalid_argument("run_counted: behavior and depth sequences differ in length");
    RuleTable table(g);
    FormSet cur = xs;
    for (std::size_t i = 0; i < behaviors.size(); ++i)
        cur = counted_power_impl(table, cur, behaviors[i], lambda[i], limits);
    return cur;
}

Behavior enumerate_power(const PowerBehavior& pb, std::size_t max_sequences) {
    Behavior out;
    std::vector<std::string> ids(pb.rule_ids.begin(), pb.rule_ids.end());
    std::vector<std::string> cur;
    auto rec = [&](auto&& self, int remaining) -> void {
        if (out.sequences.size() > max_sequences)
            throw std::invalid_argument("power-behavior enumeration exceeds " +
                                        std::to_string(max_sequences) +
                                        " sequences");
        if (pb.lengths.contains(static_cast<int>(cur.size())))
            out.sequences.insert(cur);
        if (remaining == 0 || ids.empty()) return;
        for (const auto& id : ids) {
            cur.push_back(id);
            self(self, remaining - 1);
            cur.pop_back();
        }
    };
    rec(rec, pb.lengths.hi);
    return out;
}

const FormSet& ControlRun::final_forms() const {
    static const FormSet empty;
    return steps.empty() ? empty : steps.back().forms_out;
}

ControlRun run_extreme(const RightLinearGrammar& g, const ControlSystem& c,
                       const Word& tau, const Interval& mu,
                       const EngineLimits& limits) {
    RuleTable table(g);
    ControlRun run;
    run.tau = tau;
    run.interval = mu;
    FormSet cur{Form{g.start}};
    for (const Sym& t : tau) {
        auto it = c.phi.find(t);
        if (it == c.phi.end())
            throw std::invalid_argument("control symbol '" + t +
                                        "' has no activated rule set");
        PowerBehavior pb{it->second, mu};
        RunStep step;
        step.control = t;
        step.interval = mu;
        step.forms_in = cur;
        step.forms_enabled = enabled_impl(table, cur, first_rule_ids(pb));
        step.forms_out = erase_step_power_impl(table, cur, pb, limits);
        cur = step.forms_out;
        run.steps.push_back(std::move(step));
    }
    return run;
}

std::set<Word> terminal_strings(const RightLinearGrammar& g, const FormSet& xs) {
    std::set<Word> out;
    for (const Form& x : xs) {
        bool all_terminal = true;
        for (const Sym& s : x)
            if (!g.terminals.count(s)) {
                all_terminal = false;
                break;
            }
        if (all_terminal) out.insert(x);
    }
    return out;
}

GenerationResult language_of(const Rlub& h, const ControlSystem& c,
                             const Word& tau, GenMode mode,
                             const EngineLimits& limits) {
    if (tau.empty())
        throw std::invalid_argument("control sequence must be non-empty");
    for (const Sym& t : tau)
        if (!c.alphabet.count(t))
            throw std::invalid_argument("control sequence uses symbol '" + t +
                                        "' outside the control alphabet");
    GenerationResult res;
    res.upper = run_extreme(h.grammar, c, tau, h.gc.mu_t, limits);
    res.lower = run_extreme(h.grammar, c, tau, h.gc.mu_b, limits);
    const std::set<Word> lang_upper =
        terminal_strings(h.grammar, res.upper.final_forms());
    const std::set<Word> lang_lower =
        terminal_strings(h.grammar, res.lower.final_forms());
    if (lang_upper != lang_lower) {
        res.defined = false;
        res.reason = "the two extreme runs disagree: depths from mu_t give {";
        for (const Word& w : lang_upper) res.reason += " " + display(w);
        res.reason += " }, depths from mu_b give {";
        for (const Word& w : lang_lower) res.reason += " " + display(w);
        res.reason += " }";
        return res;
    }
    if (mode == GenMode::syn) {
        for (const ControlRun* run : {&res.upper, &res.lower}) {
            for (std::size_t i = 0; i + 1 < run->steps.size(); ++i) {
                auto terms = terminal_strings(h.grammar, run->steps[i].forms_out);
                if (!terms.empty()) {
                    res.defined = false;
                    res.reason = "terminal string '" + display(*terms.begin()) +
                                 "' appears after step " + std::to_string(i + 1) +
                                 " of the " +
                                 (run == &res.upper ? "mu_t" : "mu_b") +
                                 " run; synchronous generation fails";
                    return res;
                }
            }
        }
    }
    res.defined = true;
    res.language = lang_upper;
    return res;
}

ClassResult class_of(const Rlub& h, const ControlSystem& c, GenMode mode,
                     const EngineLimits& limits) {
    ClassResult res;
    for (const Word& tau : c.sequences) {
        GenerationResult one = language_of(h, c, tau, mode, limits);
        if (!one.defined) {
            res.defined = false;
            res.undefined_at = tau;
            res.reason = one.reason;
            return res;
        }
        res.per_sequence[tau] = one.language;
        res.languages.insert(one.language);
    }
    res.defined = true;
    return res;
}

Behavior sample_behavior(const PowerBehavior& lower, const PowerBehavior& upper,
                         std::uint64_t seed, std::size_t budget) {
    if (lower.rule_ids != upper.rule_ids)
        throw std::invalid_argument("sample_behavior: rule sets differ");
    if (!lower.lengths.subset_of(upper.lengths))
        throw std::invalid_argument("sample_behavior: lower interval not inside upper");
    Behavior out;
    try {
        out = enumerate_power(lower, budget);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("sample_behavior: lower enumeration exceeds budget");
    }
    std::vector<std::string> ids(upper.rule_ids.begin(), upper.rule_ids.end());
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len_dist(upper.lengths.lo, upper.lengths.hi);
    for (std::size_t k = 0; k < budget; ++k) {
        const int l = len_dist(rng);
        if (l > 0 && ids.empty()) continue;
        std::vector<std::string> alpha;
        alpha.reserve(l);
        for (int i = 0; i < l; ++i)
            alpha.push_back(
                ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)]);
        out.sequences.insert(std::move(alpha));
    }
    return out;
}

}  // namespace rlub
