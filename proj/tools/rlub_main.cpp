#include <CLI11.hpp>

#include <iostream>

#include "rlub/instance_io.hpp"

// Command-line front end. Exit codes: 0 positive answer, 2 negative answer
// (undefined / condition fails / verdict no / verification fails), 3
// unsupported or unknown, 1 malformed input or internal error.

namespace {

using nlohmann::json;
using namespace rlub;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;
constexpr int kExitUnknown = 3;

struct CommonOpts {
    std::string instance_path;
    bool as_json = false;
    std::size_t max_forms = 100'000;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_instance = true) {
    auto* opt = cmd->add_option("-i,--instance", opts.instance_path,
                                "problem-instance JSON file");
    if (needs_instance) opt->required();
    cmd->add_flag("--json", opts.as_json, "machine-readable JSON output");
    cmd->add_option("--max-forms", opts.max_forms,
                    "abort a run when one step set exceeds this many forms");
}

template <typename T>
const T& require_section(const std::optional<T>& sec, const char* name) {
    if (!sec)
        throw std::invalid_argument(std::string("this command needs the '") +
                                    name + "' section of the instance file");
    return *sec;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::string cur;
    for (char ch : text + ",") {
        if (ch == ',') {
            if (cur.empty())
                throw std::invalid_argument(std::string(what) +
                                            ": empty entry in '" + text + "'");
            out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (out.empty())
        throw std::invalid_argument(std::string(what) + " must be non-empty");
    return out;
}

void print_forms(std::ostream& os, const FormSet& forms) {
    os << "{";
    for (const Form& f : forms) os << " " << (f.empty() ? "eps" : display(f));
    os << " }";
}

void print_words(std::ostream& os, const std::set<Word>& words) {
    os << "{";
    for (const Word& w : words) os << " " << (w.empty() ? "eps" : display(w));
    os << " }";
}

void print_run(std::ostream& os, const char* label, const ControlRun& run) {
    os << label << " run (depths in [" << run.interval.lo << ","
       << run.interval.hi << "]):\n";
    for (const RunStep& s : run.steps) {
        os << "  --" << s.control << "--> ";
        print_forms(os, s.forms_out);
        os << "\n";
    }
}

int cmd_simulate(const CommonOpts& opts, const std::string& tau_text,
                 const std::string& mode_text, std::uint64_t seed,
                 std::size_t samples) {
    Instance ins = load_instance(opts.instance_path);
    Rlub h{require_section(ins.grammar, "grammar"),
           require_section(ins.gc, "gc")};
    const ControlSystem& c = require_section(ins.control, "control");
    GenMode mode = ins.mode.value_or(GenMode::syn);
    if (!mode_text.empty()) mode = parse_mode(mode_text);
    EngineLimits limits{opts.max_forms};

    std::optional<Word> tau;
    if (!tau_text.empty())
        tau = tokenize(tau_text, c.alphabet);
    else if (ins.control_sequence)
        tau = ins.control_sequence;

    // Optional cross-check: seeded behavior tuples between the two extremes
    // must reproduce the language whenever it is defined.
    auto sampled_consistent = [&](const Word& t, const GenerationResult& base) {
        for (std::size_t s = 0; s < samples; ++s) {
            FormSet cur{Form{h.grammar.start}};
            std::vector<FormSet> trail;
            for (std::size_t i = 0; i < t.size(); ++i) {
                PowerBehavior lowpb{c.phi.at(t[i]), h.gc.mu_b};
                PowerBehavior highpb{c.phi.at(t[i]), h.gc.mu_t};
                Behavior r = sample_behavior(lowpb, highpb,
                                             seed + 7919 * s + i, 64);
                cur = erase_step(h.grammar, cur, r, limits);
                trail.push_back(cur);
            }
            if (terminal_strings(h.grammar, cur) != base.language) return false;
            for (std::size_t i = 0; i + 1 < trail.size(); ++i)
                if (mode == GenMode::syn &&
                    !terminal_strings(h.grammar, trail[i]).empty())
                    return false;
        }
        return true;
    };

    if (tau) {
        GenerationResult r = language_of(h, c, *tau, mode, limits);
        bool samples_ok = true;
        if (r.defined && samples > 0) samples_ok = sampled_consistent(*tau, r);
        if (opts.as_json) {
            json out = to_json(r);
            if (samples > 0) out["sampled_behaviors_consistent"] = samples_ok;
            std::cout << out.dump(2) << "\n";
        } else {
            if (r.defined) {
                std::cout << "defined: ";
                print_words(std::cout, r.language);
                std::cout << "\n";
            } else {
                std::cout << "undefined: " << r.reason << "\n";
            }
            print_run(std::cout, "upper", r.upper);
            print_run(std::cout, "lower", r.lower);
            if (samples > 0)
                std::cout << "sampled behaviors consistent: "
                          << (samples_ok ? "yes" : "NO") << "\n";
        }
        return r.defined && samples_ok ? kExitOk : kExitNegative;
    }

    ClassResult cr = class_of(h, c, mode, limits);
    if (opts.as_json) {
        std::cout << to_json(cr).dump(2) << "\n";
    } else if (cr.defined) {
        std::cout << "class defined:\n";
        for (const auto& [t, lang] : cr.per_sequence) {
            std::cout << "  " << display(t) << " -> ";
            print_words(std::cout, lang);
            std::cout << "\n";
        }
    } else {
        std::cout << "class undefined at '"
                  << display(cr.undefined_at.value_or(Word{}))
                  << "': " << cr.reason << "\n";
    }
    return cr.defined ? kExitOk : kExitNegative;
}

int cmd_check_condition(const CommonOpts& opts,
                        const std::string& condition_text) {
    Instance ins = load_instance(opts.instance_path);
    const LanguageClass& cls = require_section(ins.languages, "languages");
    const GenerativeCondition& gc = require_section(ins.gc, "gc");
    const PartialOrder& ord = require_section(ins.order, "order");
    const Encoding& enc = require_section(ins.encoding, "encoding");
    ConditionMode mode = parse_condition_mode(condition_text);

    ConditionResult res = check_condition(cls, gc, ord, enc, mode);
    if (ins.witnesses) {
        // Externally supplied witnesses are validated on top of the check.
        ValidationReport rep =
            validate_witnesses(cls, gc, ord, enc, *ins.witnesses, mode);
        if (!rep.ok()) {
            if (opts.as_json) {
                json out = to_json(res);
                out["supplied_witnesses_ok"] = false;
                out["supplied_witness_problems"] = rep.violations;
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "supplied witnesses rejected:\n" << rep.summary();
            }
            return kExitNegative;
        }
    }
    if (opts.as_json) {
        json out = to_json(res);
        if (ins.witnesses) out["supplied_witnesses_ok"] = true;
        std::cout << out.dump(2) << "\n";
    } else if (res.ok) {
        std::cout << "condition holds; witnesses:\n"
                  << to_json(res.witnesses).dump(2) << "\n";
    } else {
        std::cout << "condition fails: " << res.failure->detail << "\n";
    }
    return res.ok ? kExitOk : kExitNegative;
}

int cmd_synthesize(const CommonOpts& opts, const std::string& mode_text,
                   double timeout, std::uint64_t max_encodings, int jobs) {
    Instance ins = load_instance(opts.instance_path);
    const LanguageClass& cls = require_section(ins.languages, "languages");
    const GenerativeCondition& gc = require_section(ins.gc, "gc");
    const PartialOrder& ord = require_section(ins.order, "order");
    GenMode mode = ins.mode.value_or(GenMode::syn);
    if (!mode_text.empty()) mode = parse_mode(mode_text);
    if (jobs > 1)
        std::cerr << "note: the search runs on one worker; --jobs capped to 1\n";

    SynthesisCaps caps;
    caps.timeout_seconds = timeout;
    caps.max_encodings = max_encodings;
    caps.limits.max_forms = opts.max_forms;
    SynthesisResult res = synthesize(cls, gc, ord, mode, caps);

    if (opts.as_json) {
        std::cout << synthesis_to_json(res, cls, gc, ord, mode).dump(2) << "\n";
    } else {
        std::cout << "verdict: " << to_string(res.verdict) << "\n";
        if (!res.note.empty()) std::cout << res.note << "\n";
        if (res.encoding) {
            std::cout << "encoding:\n" << to_json(*res.encoding).dump(2) << "\n";
            std::cout << "witnesses:\n"
                      << to_json(*res.witnesses).dump(2) << "\n";
        }
        std::cout << "encodings tried: " << res.stats.encodings_tried << "\n";
    }
    switch (res.verdict) {
        case Verdict::yes: return kExitOk;
        case Verdict::no: return kExitNegative;
        default: return kExitUnknown;
    }
}

int cmd_device_order(const CommonOpts& opts, const std::string& axes_text) {
    std::vector<int> axes = parse_int_list(axes_text, "--axes");
    PartialOrder ord = product_order(axes);
    if (opts.as_json) {
        std::cout << to_json(ord).dump(2) << "\n";
    } else {
        std::cout << ord.carrier.size() << " symbols\n";
        for (const auto& [a, b] : ord.pairs)
            if (a != b) std::cout << "  " << a << " <= " << b << "\n";
    }
    return kExitOk;
}

int cmd_verify(const CommonOpts& opts, const std::string& mode_text) {
    Instance ins = load_instance(opts.instance_path);
    Rlub h{require_section(ins.grammar, "grammar"),
           require_section(ins.gc, "gc")};
    const ControlSystem& c = require_section(ins.control, "control");
    const LanguageClass& cls = require_section(ins.languages, "languages");
    GenMode mode = ins.mode.value_or(GenMode::syn);
    if (!mode_text.empty()) mode = parse_mode(mode_text);
    EngineLimits limits{opts.max_forms};

    VerifyReport rep = verify_pair(h, c, cls, mode, ins.order, limits);
    if (opts.as_json) {
        std::cout << to_json(rep).dump(2) << "\n";
    } else {
        for (const VerifyCheck& chk : rep.checks) {
            std::cout << (chk.passed ? "pass" : "FAIL") << "  " << chk.name;
            if (!chk.detail.empty()) std::cout << "  (" << chk.detail << ")";
            std::cout << "\n";
        }
    }
    return rep.all_passed() ? kExitOk : kExitNegative;
}

int cmd_div(const CommonOpts& opts, int n, int m, const std::string& mu_text) {
    std::vector<int> mu = parse_int_list(mu_text, "--mu");
    if (mu.size() != 2)
        throw std::invalid_argument("--mu expects 'lo,hi'");
    auto divisions = div_enumerate(n, m, Interval(mu[0], mu[1]));
    if (opts.as_json) {
        json out = json::array();
        for (const auto& d : divisions) out.push_back(d);
        std::cout << out.dump() << "\n";
    } else {
        for (const auto& d : divisions) {
            std::cout << "<";
            for (std::size_t i = 0; i < d.size(); ++i)
                std::cout << (i ? "," : "") << d[i];
            std::cout << ">\n";
        }
        std::cout << divisions.size() << " division(s)\n";
    }
    return kExitOk;
}

int cmd_check_relation(const CommonOpts& opts, const std::string& tau1_text,
                       const std::string& lambda1_text,
                       const std::string& tau2_text,
                       const std::string& lambda2_text, bool find_witness,
                       bool positive_only) {
    Instance ins = load_instance(opts.instance_path);
    const GenerativeCondition& gc = require_section(ins.gc, "gc");
    const PartialOrder& ord = require_section(ins.order, "order");
    IndexedPair p1{tokenize(tau1_text, ord.carrier),
                   parse_int_list(lambda1_text, "--lambda1")};
    Word tau2 = tokenize(tau2_text, ord.carrier);

    if (find_witness) {
        auto w = exists_witness(p1, tau2, gc, ord, positive_only);
        if (opts.as_json) {
            json out{{"witness_found", w.has_value()}};
            if (w) out["lambda2"] = *w;
            std::cout << out.dump() << "\n";
        } else if (w) {
            std::cout << "witness: <";
            for (std::size_t i = 0; i < w->size(); ++i)
                std::cout << (i ? "," : "") << (*w)[i];
            std::cout << ">\n";
        } else {
            std::cout << "no witness\n";
        }
        return w ? kExitOk : kExitNegative;
    }
    if (lambda2_text.empty())
        throw std::invalid_argument("provide --lambda2 or --find-witness");
    IndexedPair p2{tau2, parse_int_list(lambda2_text, "--lambda2")};
    bool holds = relation_holds(p1, p2, gc, ord);
    if (opts.as_json)
        std::cout << json{{"holds", holds}}.dump() << "\n";
    else
        std::cout << (holds ? "holds" : "does not hold") << "\n";
    return holds ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "decide and synthesize controlled generation of right linear grammars "
        "with unknown behaviors"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string tau_text, mode_text, condition_text = "C", axes_text;
    std::string tau1_text, lambda1_text, tau2_text, lambda2_text;
    bool find_witness = false, positive_only = false;
    std::uint64_t seed = 1, max_encodings = 10'000'000;
    std::size_t samples = 0;
    double timeout = 60.0;
    int jobs = 1, div_n = 1, div_m = 0;
    std::string mu_text;

    auto* simulate = app.add_subcommand(
        "simulate", "evaluate control sequences by the two extreme runs");
    add_common(simulate, opts);
    simulate->add_option("--tau", tau_text,
                         "control sequence (defaults to every sequence in T)");
    simulate->add_option("--mode", mode_text, "syn or nonsyn");
    simulate->add_option("--samples", samples,
                         "also cross-check this many sampled behavior tuples");
    simulate->add_option("--seed", seed, "seed for sampled behaviors");

    auto* check = app.add_subcommand(
        "check-condition", "check a fixed encoding against the class");
    add_common(check, opts);
    check->add_option("--condition", condition_text, "C or C'");

    auto* synth = app.add_subcommand(
        "synthesize", "search for a generating grammar and control system");
    add_common(synth, opts);
    synth->add_option("--mode", mode_text, "syn or nonsyn");
    synth->add_option("--timeout", timeout, "search wall-clock cap in seconds");
    synth->add_option("--max-encodings", max_encodings,
                      "cap on complete encodings examined");
    synth->add_option("--jobs", jobs, "worker cap (currently 1)");

    auto* device = app.add_subcommand(
        "device-order", "build the composite-device order for given axis sizes");
    add_common(device, opts, /*needs_instance=*/false);
    device->add_option("--axes", axes_text, "axis sizes, e.g. 3,3")->required();

    auto* verify = app.add_subcommand(
        "verify", "verify a grammar/control pair against a language class");
    add_common(verify, opts);
    verify->add_option("--mode", mode_text, "syn or nonsyn");

    auto* divcmd = app.add_subcommand(
        "div", "enumerate bounded-part divisions of an integer");
    add_common(divcmd, opts, /*needs_instance=*/false);
    divcmd->add_option("--n", div_n, "number of parts")->required();
    divcmd->add_option("--m", div_m, "total")->required();
    divcmd->add_option("--mu", mu_text, "part range lo,hi")->required();

    auto* relation = app.add_subcommand(
        "check-relation", "test schedule dominance between indexed pairs");
    add_common(relation, opts);
    relation->add_option("--tau1", tau1_text)->required();
    relation->add_option("--lambda1", lambda1_text)->required();
    relation->add_option("--tau2", tau2_text)->required();
    relation->add_option("--lambda2", lambda2_text);
    relation->add_flag("--find-witness", find_witness,
                       "search for the least right-side depth sequence");
    relation->add_flag("--positive-only", positive_only,
                       "restrict witness entries to >= 1");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed())
            return cmd_simulate(opts, tau_text, mode_text, seed, samples);
        if (check->parsed()) return cmd_check_condition(opts, condition_text);
        if (synth->parsed())
            return cmd_synthesize(opts, mode_text, timeout, max_encodings, jobs);
        if (device->parsed()) return cmd_device_order(opts, axes_text);
        if (verify->parsed()) return cmd_verify(opts, mode_text);
        if (divcmd->parsed()) return cmd_div(opts, div_n, div_m, mu_text);
        if (relation->parsed())
            return cmd_check_relation(opts, tau1_text, lambda1_text, tau2_text,
                                      lambda2_text, find_witness, positive_only);
    } catch (const rlub::limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
