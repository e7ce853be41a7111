#include "rlub/synthesize.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>

namespace rlub {

namespace {

std::string class_to_text(const std::set<std::set<Word>>& cls) {
    std::ostringstream os;
    os << "{";
    for (const auto& lang : cls) {
        os << " {";
        for (const Word& w : lang) os << " " << display(w);
        os << " }";
    }
    os << " }";
    return os.str();
}

struct SearchClock {
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
            .count();
    }
};

}  // namespace

SearchBounds compute_bounds(const LanguageClass& cls,
                            const GenerativeCondition& gc) {
    if (gc.mu_t.contains(0))
        throw std::invalid_argument("image-length bounds need 0 outside mu_t");
    SearchBounds out;
    for (const auto& [name, words] : cls.languages) {
        int lo = 1, hi = std::numeric_limits<int>::max();
        for (const Word& w : words) {
            const int len = static_cast<int>(w.size());
            // A length-n division of |w|+delta over mu_b exists only when
            // n*lo_b <= |w|+delta <= n*hi_b for delta in {0,1}.
            const int need_lo = (len + gc.mu_b.hi - 1) / gc.mu_b.hi;
            const int need_hi = (len + 1) / gc.mu_b.lo;
            lo = std::max(lo, need_lo);
            hi = std::min(hi, need_hi);
        }
        out.image_length[name] = {lo, hi};
        if (lo > hi && out.feasible) {
            out.feasible = false;
            out.infeasible_language = name;
        }
    }
    return out;
}

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.passed; });
}

VerifyReport verify_pair(const Rlub& h, const ControlSystem& c,
                         const LanguageClass& cls, GenMode mode,
                         const std::optional<PartialOrder>& expected_order,
                         const EngineLimits& limits) {
    VerifyReport rep;

    {
        VerifyCheck chk{"alphabet-coverage", false, ""};
        SymSet used = alph(c.sequences);
        chk.passed = used == c.alphabet;
        if (!chk.passed) {
            chk.detail = "control sequences leave unused symbols:";
            for (const Sym& t : c.alphabet)
                if (!used.count(t)) chk.detail += " " + t;
        }
        rep.checks.push_back(std::move(chk));
    }
    {
        VerifyCheck chk{"order", false, ""};
        try {
            PartialOrder induced = induced_order(c);
            if (!expected_order) {
                chk.passed = true;
                chk.detail = "no expected order supplied; induced order taken as given";
            } else {
                chk.passed = induced == *expected_order;
                if (!chk.passed)
                    chk.detail =
                        "rule-set inclusion order differs from the expected order";
            }
        } catch (const std::exception& e) {
            chk.detail = e.what();
        }
        rep.checks.push_back(std::move(chk));
    }
    ClassResult cr = class_of(h, c, mode, limits);
    {
        VerifyCheck chk{"class", false, ""};
        if (!cr.defined) {
            chk.detail = "class undefined at '" +
                         display(cr.undefined_at.value_or(Word{})) +
                         "': " + cr.reason;
        } else {
            std::set<std::set<Word>> want;
            for (const auto& [name, words] : cls.languages) want.insert(words);
            chk.passed = cr.languages == want;
            if (!chk.passed)
                chk.detail = "generated " + class_to_text(cr.languages) +
                             " but expected " + class_to_text(want);
        }
        rep.checks.push_back(std::move(chk));
    }
    {
        VerifyCheck chk{"sequence-language-injective", false, ""};
        if (cr.defined) {
            chk.passed = cr.languages.size() == cr.per_sequence.size();
            if (!chk.passed)
                chk.detail = "distinct control sequences generate the same language";
        } else {
            chk.detail = "class undefined";
        }
        rep.checks.push_back(std::move(chk));
    }
    return rep;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::unsupported: return "unsupported";
        case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

SynthesisResult synthesize(const LanguageClass& cls,
                           const GenerativeCondition& gc,
                           const PartialOrder& ord, GenMode mode,
                           const SynthesisCaps& caps) {
    if (auto rep = validate_class(cls); !rep.ok())
        throw std::invalid_argument("invalid language class: " + rep.summary());

    SynthesisResult res;
    if (gc.mu_t.contains(0)) {
        res.verdict = Verdict::unsupported;
        res.note =
            "depth intervals containing 0 are outside the decidable range of "
            "this tool";
        return res;
    }
    res.bounds = compute_bounds(cls, gc);
    if (!res.bounds.feasible) {
        res.verdict = Verdict::no;
        res.note = "language '" + res.bounds.infeasible_language +
                   "' admits no image length with a non-empty division set "
                   "for all of its words";
        return res;
    }

    const ConditionMode cmode =
        mode == GenMode::syn ? ConditionMode::C : ConditionMode::CPrime;
    std::vector<std::string> names;
    for (const auto& [name, words] : cls.languages) names.push_back(name);
    const int k = static_cast<int>(names.size());
    std::vector<int> lo(k), hi(k);
    for (int i = 0; i < k; ++i) {
        auto [l, h] = res.bounds.image_length.at(names[i]);
        lo[i] = l;
        hi[i] = h;
    }
    std::vector<Sym> gamma(ord.carrier.begin(), ord.carrier.end());

    SearchClock clock;
    bool capped = false;
    std::string cap_note;
    std::map<std::string, Word> theta;
    std::vector<Word> images(k);
    std::optional<Encoding> found_encoding;
    std::optional<WitnessTable> found_witnesses;

    auto out_of_budget = [&]() {
        if (res.stats.encodings_tried >= caps.max_encodings) {
            cap_note = "encoding cap of " + std::to_string(caps.max_encodings) +
                       " reached";
            return true;
        }
        if ((res.stats.encodings_tried & 0xff) == 0 &&
            clock.seconds() > caps.timeout_seconds) {
            cap_note = "timeout after " + std::to_string(caps.timeout_seconds) +
                       " seconds";
            return true;
        }
        return false;
    };

    // One complete injective theta within the bounds: decide every word.
    auto try_theta = [&]() -> bool {
        ++res.stats.encodings_tried;
        for (int i = 0; i < k; ++i) theta[names[i]] = images[i];
        Encoding enc;
        enc.theta = theta;
        WitnessTable table;
        for (const auto& [name, words] : cls.languages) {
            for (const Word& w : words) {
                std::optional<Division> witness;
                for (int bit = 0; bit <= 1 && !witness; ++bit) {
                    witness = find_witness_for_word(cls, gc, ord, enc.theta,
                                                    name, w, bit, cmode);
                    if (witness && bit == 1) enc.delta[name][w] = 1;
                }
                if (!witness) return false;
                table.entries[name][w] = *witness;
            }
        }
        found_encoding = std::move(enc);
        found_witnesses = std::move(table);
        return true;
    };

    // Images per language, lexicographic, with injectivity and
    // alphabet-coverage pruning.
    auto assign = [&](auto&& self, int idx, const std::vector<int>& profile,
                      SymSet covered, int remaining_len) -> bool {
        if (capped) return false;
        if (idx == k) {
            if (covered.size() != gamma.size()) return false;
            if (out_of_budget()) {
                capped = true;
                return false;
            }
            return try_theta();
        }
        const int n = profile[idx];
        Word image(n, gamma[0]);
        std::vector<int> digits(n, 0);
        for (;;) {
            bool duplicate = false;
            for (int p = 0; p < idx && !duplicate; ++p)
                duplicate = images[p] == image;
            if (!duplicate) {
                SymSet now = covered;
                for (const Sym& s : image) now.insert(s);
                if (static_cast<int>(gamma.size() - now.size()) <=
                    remaining_len - n) {
                    images[idx] = image;
                    if (self(self, idx + 1, profile, std::move(now),
                             remaining_len - n))
                        return true;
                    if (capped) return false;
                }
            }
            int p = n;
            while (p > 0) {
                --p;
                if (digits[p] + 1 < static_cast<int>(gamma.size())) {
                    ++digits[p];
                    image[p] = gamma[digits[p]];
                    std::fill(digits.begin() + p + 1, digits.end(), 0);
                    std::fill(image.begin() + p + 1, image.end(), gamma[0]);
                    break;
                }
                if (p == 0) return false;
            }
        }
    };

    auto profiles = [&](auto&& self, int idx, int budget,
                        std::vector<int>& profile) -> bool {
        if (capped) return false;
        if (idx == k) {
            if (budget != 0) return false;
            int total = 0;
            for (int v : profile) total += v;
            return assign(assign, 0, profile, {}, total);
        }
        int rest_lo = 0, rest_hi = 0;
        for (int j = idx + 1; j < k; ++j) {
            rest_lo += lo[j];
            rest_hi += hi[j];
        }
        for (int n = lo[idx]; n <= hi[idx]; ++n) {
            if (budget - n < rest_lo || budget - n > rest_hi) continue;
            profile[idx] = n;
            if (self(self, idx + 1, budget - n, profile)) return true;
            if (capped) return false;
        }
        return false;
    };

    int total_lo = 0, total_hi = 0;
    for (int i = 0; i < k; ++i) {
        total_lo += lo[i];
        total_hi += hi[i];
    }
    bool found = false;
    std::vector<int> profile(k, 0);
    for (int budget = total_lo; budget <= total_hi && !found && !capped;
         ++budget)
        found = profiles(profiles, 0, budget, profile);

    res.stats.elapsed_seconds = clock.seconds();
    if (capped) {
        res.verdict = Verdict::unknown;
        res.note = cap_note + "; " + std::to_string(res.stats.encodings_tried) +
                   " encodings checked so far";
        return res;
    }
    if (!found) {
        res.verdict = Verdict::no;
        res.note = "all " + std::to_string(res.stats.encodings_tried) +
                   " injective encodings within the image-length bounds fail "
                   "the condition";
        return res;
    }

    res.encoding = std::move(found_encoding);
    res.witnesses = std::move(found_witnesses);
    res.build = build_grammar(cls, res.encoding->delta);
    res.control = build_control(*res.build, cls, *res.encoding, *res.witnesses,
                                ord, gc);
    Rlub h{res.build->grammar, gc};
    res.verification = verify_pair(h, *res.control, cls, mode, ord, caps.limits);
    if (!res.verification->all_passed()) {
        std::string why;
        for (const VerifyCheck& c : res.verification->checks)
            if (!c.passed) why += " [" + c.name + "] " + c.detail;
        throw std::logic_error(
            "synthesized pair failed verification; this is a bug:" + why);
    }
    // Stronger than class equality: each image must generate exactly its own
    // language.
    for (const auto& [name, words] : cls.languages) {
        auto one = language_of(h, *res.control, res.encoding->theta.at(name),
                               mode, caps.limits);
        if (!one.defined || one.language != words)
            throw std::logic_error("the image of '" + name +
                                   "' does not generate that language; this is a bug");
    }
    res.verdict = Verdict::yes;
    res.stats.elapsed_seconds = clock.seconds();
    return res;
}

}  // namespace rlub
