#include "rlub/condition.hpp"

#include <algorithm>
#include <stdexcept>

namespace rlub {

namespace {

bool all_positive(const Division& lambda) {
    return std::all_of(lambda.begin(), lambda.end(), [](int v) { return v >= 1; });
}

// Cheap necessary condition for a positive-depth witness from
// (tau1, lambda1) to tau2: the first and last symbols must be ordered.
// Inconclusive (true) unless lambda1 is all-positive.
bool endpoints_possible(const Word& tau1, const Division& lambda1,
                        const Word& tau2, const PartialOrder& ord) {
    if (!all_positive(lambda1)) return true;
    return ord.leq(tau1.front(), tau2.front()) &&
           ord.leq(tau1.back(), tau2.back());
}

std::optional<ConditionFailure> validate_encoding(const LanguageClass& cls,
                                                  const PartialOrder& ord,
                                                  const Encoding& enc) {
    auto fail = [&](const std::string& detail) {
        ConditionFailure f;
        f.kind = "encoding";
        f.detail = detail;
        return f;
    };
    std::map<Word, std::string> images;
    for (const auto& [name, words] : cls.languages) {
        auto it = enc.theta.find(name);
        if (it == enc.theta.end())
            return fail("theta undefined on language '" + name + "'");
        if (it->second.empty())
            return fail("theta(" + name + ") is empty");
        for (const Sym& t : it->second)
            if (!ord.carrier.count(t))
                return fail("theta(" + name + ") uses symbol '" + t +
                            "' outside the control alphabet");
        auto [pos, fresh] = images.insert({it->second, name});
        if (!fresh)
            return fail("theta is not injective: theta(" + pos->second +
                        ") = theta(" + name + ")");
        (void)words;
    }
    for (const auto& [name, bits] : enc.delta) {
        auto lit = cls.languages.find(name);
        if (lit == cls.languages.end())
            return fail("delta names unknown language '" + name + "'");
        for (const auto& [w, bit] : bits) {
            if (!lit->second.count(w))
                return fail("delta_" + name + " names a word outside the language: '" +
                            display(w) + "'");
            if (bit != 0 && bit != 1)
                return fail("delta_" + name + "(" + display(w) +
                            ") must be 0 or 1");
        }
    }
    return std::nullopt;
}

}  // namespace

int Encoding::delta_of(const std::string& lang, const Word& w) const {
    auto it = delta.find(lang);
    if (it == delta.end()) return 0;
    auto jt = it->second.find(w);
    return jt == it->second.end() ? 0 : jt->second;
}

std::optional<std::string> check_s1(const std::map<std::string, Word>& theta,
                                    const Division& lambda,
                                    const std::string& lang, const Word& w,
                                    const LanguageClass& cls,
                                    const GenerativeCondition& gc,
                                    const PartialOrder& ord) {
    const Word& image = theta.at(lang);
    for (const auto& [other, words] : cls.languages) {
        const Word& other_image = theta.at(other);
        if (!endpoints_possible(image, lambda, other_image, ord)) continue;
        if (exists_witness({image, lambda}, other_image, gc, ord,
                           /*positive_only=*/true) &&
            !words.count(w))
            return other;
    }
    return std::nullopt;
}

std::optional<S2Violation> check_s2(const std::map<std::string, Word>& theta,
                                    const Division& lambda,
                                    const std::string& lang,
                                    const LanguageClass& cls,
                                    const GenerativeCondition& gc,
                                    const PartialOrder& ord) {
    const Word& image = theta.at(lang);
    for (const auto& [other, words] : cls.languages) {
        (void)words;
        const Word& other_image = theta.at(other);
        for (std::size_t len = 1; len < other_image.size(); ++len) {
            Word prefix(other_image.begin(), other_image.begin() + len);
            if (!endpoints_possible(image, lambda, prefix, ord)) continue;
            if (exists_witness({image, lambda}, prefix, gc, ord,
                               /*positive_only=*/true))
                return S2Violation{other, prefix};
        }
    }
    return std::nullopt;
}

std::optional<Division> find_witness_for_word(
    const LanguageClass& cls, const GenerativeCondition& gc,
    const PartialOrder& ord, const std::map<std::string, Word>& theta,
    const std::string& lang, const Word& w, int delta_bit, ConditionMode mode) {
    const int n = static_cast<int>(theta.at(lang).size());
    const long long target = static_cast<long long>(w.size()) + delta_bit;
    for (const Division& lambda : div_enumerate(n, target, gc.mu_b)) {
        if (check_s1(theta, lambda, lang, w, cls, gc, ord)) continue;
        if (mode == ConditionMode::C &&
            check_s2(theta, lambda, lang, cls, gc, ord))
            continue;
        return lambda;
    }
    return std::nullopt;
}

ConditionResult check_condition(const LanguageClass& cls,
                                const GenerativeCondition& gc,
                                const PartialOrder& ord, const Encoding& enc,
                                ConditionMode mode) {
    ConditionResult res;
    if (auto bad = validate_encoding(cls, ord, enc)) {
        res.failure = std::move(bad);
        return res;
    }
    std::set<Word> images;
    for (const auto& [name, image] : enc.theta)
        if (cls.languages.count(name)) images.insert(image);
    if (alph(images) != ord.carrier) {
        ConditionFailure f;
        f.kind = "c1";
        f.detail = "the encoding images do not use the whole control alphabet";
        res.failure = std::move(f);
        return res;
    }
    for (const auto& [name, words] : cls.languages) {
        for (const Word& w : words) {
            const int bit = enc.delta_of(name, w);
            const int n = static_cast<int>(enc.theta.at(name).size());
            const long long target = static_cast<long long>(w.size()) + bit;
            auto candidates = div_enumerate(n, target, gc.mu_b);
            if (candidates.empty()) {
                ConditionFailure f;
                f.kind = "no-division";
                f.language = name;
                f.word = w;
                f.detail = "no length-" + std::to_string(n) +
                           " division of " + std::to_string(target) +
                           " with entries in [" + std::to_string(gc.mu_b.lo) +
                           "," + std::to_string(gc.mu_b.hi) + "] exists";
                res.failure = std::move(f);
                return res;
            }
            std::optional<Division> witness;
            std::optional<ConditionFailure> first_failure;
            for (const Division& lambda : candidates) {
                if (auto other = check_s1(enc.theta, lambda, name, w, cls, gc, ord)) {
                    if (!first_failure) {
                        ConditionFailure f;
                        f.kind = "s1";
                        f.language = name;
                        f.word = w;
                        f.lambda = lambda;
                        f.other_language = *other;
                        f.detail = "the image of '" + *other +
                                   "' is reachable but '" + display(w) +
                                   "' is not one of its words";
                        first_failure = std::move(f);
                    }
                    continue;
                }
                if (mode == ConditionMode::C) {
                    if (auto viol = check_s2(enc.theta, lambda, name, cls, gc, ord)) {
                        if (!first_failure) {
                            ConditionFailure f;
                            f.kind = "s2";
                            f.language = name;
                            f.word = w;
                            f.lambda = lambda;
                            f.other_language = viol->other_language;
                            f.tau = viol->tau;
                            f.detail = "the proper prefix '" + display(viol->tau) +
                                       "' of the image of '" + viol->other_language +
                                       "' is reachable";
                            first_failure = std::move(f);
                        }
                        continue;
                    }
                }
                witness = lambda;
                break;
            }
            if (!witness) {
                res.failure = std::move(first_failure);
                return res;
            }
            res.witnesses.entries[name][w] = *witness;
        }
    }
    res.ok = true;
    return res;
}

ValidationReport validate_witnesses(const LanguageClass& cls,
                                    const GenerativeCondition& gc,
                                    const PartialOrder& ord,
                                    const Encoding& enc,
                                    const WitnessTable& table,
                                    ConditionMode mode) {
    ValidationReport rep;
    if (auto bad = validate_encoding(cls, ord, enc)) {
        rep.violations.push_back(bad->detail);
        return rep;
    }
    for (const auto& [name, per_word] : table.entries) {
        auto lit = cls.languages.find(name);
        if (lit == cls.languages.end()) {
            rep.violations.push_back("witness table names unknown language '" +
                                     name + "'");
            continue;
        }
        for (const auto& [w, lambda] : per_word) {
            const std::string where = name + "/" + display(w);
            if (!lit->second.count(w)) {
                rep.violations.push_back(where + ": word not in the language");
                continue;
            }
            const long long target =
                static_cast<long long>(w.size()) + enc.delta_of(name, w);
            if (lambda.size() != enc.theta.at(name).size())
                rep.violations.push_back(where + ": witness length differs from the image length");
            else if (!entries_in(lambda, gc.mu_b))
                rep.violations.push_back(where + ": witness entry outside mu_b");
            else if (seq_sum(lambda) != target)
                rep.violations.push_back(where + ": witness total differs from |w| + delta");
            else if (!gc.mu_b.contains(0) && !all_positive(lambda))
                rep.violations.push_back(where + ": zero entry despite 0 not in mu_b");
            else if (auto other = check_s1(enc.theta, lambda, name, w, cls, gc, ord))
                rep.violations.push_back(where + ": s1 fails against '" + *other + "'");
            else if (mode == ConditionMode::C) {
                if (auto viol = check_s2(enc.theta, lambda, name, cls, gc, ord))
                    rep.violations.push_back(where + ": s2 fails at prefix '" +
                                             display(viol->tau) + "' of '" +
                                             viol->other_language + "'");
            }
        }
    }
    for (const auto& [name, words] : cls.languages) {
        auto tit = table.entries.find(name);
        for (const Word& w : words)
            if (tit == table.entries.end() || !tit->second.count(w))
                rep.warnings.push_back("no witness supplied for " + name + "/" +
                                       display(w));
    }
    return rep;
}

}  // namespace rlub
