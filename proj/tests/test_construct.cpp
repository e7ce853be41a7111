#include <doctest.h>

#include "fixtures.hpp"
#include "rlub/construct.hpp"
#include "rlub/derivation.hpp"

using namespace rlub;
using fixtures::reps;
using fixtures::T;
using fixtures::W;

namespace {

struct Built {
    LanguageClass cls = fixtures::four_class();
    GenerativeCondition gc = fixtures::four_gc();
    PartialOrder ord = fixtures::chain_t2_t3_order();
    Encoding enc = fixtures::four_encoding();
    WitnessTable table = fixtures::four_witnesses();
    GrammarBuild build;
    ControlSystem control;

    Built() {
        build = build_grammar(cls, enc.delta);
        control = build_control(build, cls, enc, table, ord, gc);
    }
};

RuleIdSet chain_slice(const WordRuleChain& chain, int from, int to) {
    RuleIdSet out;
    for (int i = from; i <= to; ++i) out.insert(chain.rule_ids[i - 1]);
    return out;
}

}  // namespace

TEST_CASE("chain construction") {
    auto build = build_grammar(fixtures::four_class(),
                               fixtures::four_encoding().delta);
    SUBCASE("lengths follow |w| + delta") {
        CHECK(build.find_chain("L1", reps('a', 15))->rule_ids.size() == 15);
        CHECK(build.find_chain("L2", reps('a', 15))->rule_ids.size() == 15);
        CHECK(build.find_chain("L2", reps('b', 7))->rule_ids.size() == 8);
        CHECK(build.find_chain("L3", reps('c', 5))->rule_ids.size() == 5);
        CHECK(build.find_chain("L4", reps('c', 5))->rule_ids.size() == 5);
        CHECK(build.find_chain("L4", reps('d', 4))->rule_ids.size() == 4);
    }
    SUBCASE("a padded chain ends in an epsilon rule") {
        const auto* chain = build.find_chain("L2", reps('b', 7));
        const Rule* last = build.grammar.find_rule(chain->rule_ids.back());
        REQUIRE(last);
        CHECK(last->is_epsilon());
        CHECK_FALSE(last->lhs == build.grammar.start);
    }
    SUBCASE("an unpadded chain ends with a terminal rule") {
        const auto* chain = build.find_chain("L2", reps('a', 15));
        const Rule* last = build.grammar.find_rule(chain->rule_ids.back());
        REQUIRE(last);
        CHECK(last->terminal == Sym("a"));
        CHECK_FALSE(last->next.has_value());
    }
    SUBCASE("each chain really derives its word") {
        for (const WordRuleChain& chain : build.chains) {
            FormSet cur{Form{build.grammar.start}};
            for (const std::string& id : chain.rule_ids) {
                Behavior one;
                one.sequences.insert({id});
                cur = erase_step(build.grammar, cur, one);
            }
            CHECK(cur == FormSet{chain.word});
        }
    }
    SUBCASE("the built grammar validates") {
        CHECK(validate_grammar(build.grammar).ok());
    }
    SUBCASE("every pair owns an epsilon anchor") {
        for (const WordRuleChain& chain : build.chains) {
            const Rule* anchor = build.grammar.find_rule(chain.epsilon_anchor_id);
            REQUIRE(anchor);
            CHECK(anchor->is_epsilon());
        }
    }
}

TEST_CASE("single-step chains and shared start rules") {
    LanguageClass cls;
    cls.languages["X"] = {W("a")};
    cls.languages["Y"] = {W("a"), W("b")};
    auto build = build_grammar(cls, {});
    const auto* cx = build.find_chain("X", W("a"));
    const auto* cy = build.find_chain("Y", W("a"));
    REQUIRE(cx);
    REQUIRE(cy);
    CHECK(cx->rule_ids == cy->rule_ids);  // same production, one id
    CHECK(cx->epsilon_anchor_id != cy->epsilon_anchor_id);
    CHECK(validate_grammar(build.grammar).ok());
}

TEST_CASE("empty words need the padding bit") {
    LanguageClass cls;
    cls.languages["X"] = {Word{}, W("a")};
    SUBCASE("rejected with delta 0") {
        CHECK_THROWS_AS(build_grammar(cls, {}), std::invalid_argument);
    }
    SUBCASE("accepted with delta 1, with a warning") {
        DeltaMap delta;
        delta["X"][Word{}] = 1;
        auto build = build_grammar(cls, delta);
        CHECK_FALSE(build.warnings.empty());
        const auto* chain = build.find_chain("X", Word{});
        REQUIRE(chain);
        CHECK(chain->rule_ids.size() == 1);
        const Rule* r = build.grammar.find_rule(chain->rule_ids[0]);
        CHECK(r->lhs == build.grammar.start);
        CHECK(r->is_epsilon());
    }
}

TEST_CASE("chain partitioning") {
    Built b;
    const auto* chain = b.build.find_chain("L1", reps('a', 15));
    SUBCASE("prefix-sum blocks") {
        auto blocks = partition_chain(*chain, {4, 5, 6});
        REQUIRE(blocks.size() == 3);
        CHECK(blocks[0] == chain_slice(*chain, 1, 4));
        CHECK(blocks[1] == chain_slice(*chain, 5, 9));
        CHECK(blocks[2] == chain_slice(*chain, 10, 15));
    }
    SUBCASE("single-entry division pulls in the epsilon anchor") {
        LanguageClass cls;
        cls.languages["X"] = {W("a")};
        auto build = build_grammar(cls, {});
        const auto* one = build.find_chain("X", W("a"));
        auto blocks = partition_chain(*one, {1});
        REQUIRE(blocks.size() == 1);
        CHECK(blocks[0] == RuleIdSet{one->epsilon_anchor_id, one->rule_ids[0]});
    }
    SUBCASE("one block of five") {
        const auto* five = b.build.find_chain("L3", reps('c', 5));
        auto blocks = partition_chain(*five, {5});
        REQUIRE(blocks.size() == 1);
        CHECK(blocks[0].size() == 5);
    }
    SUBCASE("total mismatch throws") {
        CHECK_THROWS_AS(partition_chain(*chain, {4, 5, 5}),
                        std::invalid_argument);
    }
}

TEST_CASE("control construction reproduces the worked system") {
    Built b;
    const auto* l1 = b.build.find_chain("L1", reps('a', 15));
    const auto* l2a = b.build.find_chain("L2", reps('a', 15));
    const auto* l2b = b.build.find_chain("L2", reps('b', 7));
    const auto* l3 = b.build.find_chain("L3", reps('c', 5));
    const auto* l4c = b.build.find_chain("L4", reps('c', 5));
    const auto* l4d = b.build.find_chain("L4", reps('d', 4));

    SUBCASE("phi(t1) is the union of the first blocks") {
        RuleIdSet expect = chain_slice(*l1, 1, 4);
        for (const auto& id : chain_slice(*l2a, 1, 8)) expect.insert(id);
        for (const auto& id : chain_slice(*l2b, 1, 4)) expect.insert(id);
        CHECK(b.control.phi.at("t1") == expect);
    }
    SUBCASE("phi(t2) holds the middle block and the c-chain") {
        RuleIdSet expect = chain_slice(*l1, 5, 9);
        for (const auto& id : chain_slice(*l3, 1, 5)) expect.insert(id);
        CHECK(b.control.phi.at("t2") == expect);
    }
    SUBCASE("phi(t3) covers everything ordered below t3") {
        RuleIdSet expect = chain_slice(*l1, 5, 9);
        for (const auto& id : chain_slice(*l1, 10, 15)) expect.insert(id);
        for (const auto& id : chain_slice(*l2a, 9, 15)) expect.insert(id);
        for (const auto& id : chain_slice(*l2b, 5, 8)) expect.insert(id);
        for (const auto& id : chain_slice(*l3, 1, 5)) expect.insert(id);
        for (const auto& id : chain_slice(*l4c, 1, 5)) expect.insert(id);
        for (const auto& id : chain_slice(*l4d, 1, 4)) expect.insert(id);
        CHECK(b.control.phi.at("t3") == expect);
    }
    SUBCASE("phi(t2) sits inside phi(t3)") {
        const auto& p2 = b.control.phi.at("t2");
        const auto& p3 = b.control.phi.at("t3");
        CHECK(std::includes(p3.begin(), p3.end(), p2.begin(), p2.end()));
    }
    SUBCASE("T is the image set") {
        CHECK(b.control.sequences ==
              std::set<Word>{T("t1t2t3"), T("t1t3"), {"t2"}, {"t3"}});
    }
    SUBCASE("the rule-set inclusion order is the requested one") {
        CHECK(induced_order(b.control) == b.ord);
    }
    SUBCASE("a four-step lower run from the start reaches the d-word") {
        std::vector<PowerBehavior> pbs{{b.control.phi.at("t3"), b.gc.mu_b}};
        std::vector<int> lambda{4};
        auto out = run_counted(b.build.grammar, {Form{b.build.grammar.start}},
                               pbs, lambda);
        // The c-chains of L3 and L4 are four rules deep at that point; only
        // the d-chain finishes.
        CHECK(terminal_strings(b.build.grammar, out) ==
              std::set<Word>{reps('d', 4)});
        REQUIRE(out.size() == 3);
        int open_forms = 0;
        for (const Form& f : out)
            if (!f.empty() &&
                b.build.grammar.nonterminals.count(f.back()))
                ++open_forms;
        CHECK(open_forms == 2);
        for (const Form& f : out)
            if (f != reps('d', 4)) {
                CHECK(f.size() == 5);
                for (std::size_t i = 0; i + 1 < f.size(); ++i)
                    CHECK(f[i] == "c");
            }
    }
}

TEST_CASE("every word comes out of the lower run over its own image") {
    Built b;
    for (const WordRuleChain& chain : b.build.chains) {
        const Word& image = b.enc.theta.at(chain.language);
        const Division& lambda =
            b.table.entries.at(chain.language).at(chain.word);
        std::vector<PowerBehavior> pbs;
        for (const Sym& t : image) pbs.push_back({b.control.phi.at(t), b.gc.mu_b});
        auto out = run_counted(b.build.grammar, {Form{b.build.grammar.start}},
                               pbs, lambda);
        CHECK(out.count(chain.word));
    }
}

TEST_CASE("control construction rejects bad inputs") {
    Built b;
    SUBCASE("zero in the lower interval") {
        auto gc0 = GenerativeCondition(Interval(0, 11), Interval(0, 8));
        CHECK_THROWS_AS(
            build_control(b.build, b.cls, b.enc, b.table, b.ord, gc0),
            std::invalid_argument);
    }
    SUBCASE("missing witness") {
        auto table = b.table;
        table.entries["L1"].clear();
        CHECK_THROWS_AS(
            build_control(b.build, b.cls, b.enc, table, b.ord, b.gc),
            std::invalid_argument);
    }
    SUBCASE("witness length differing from the image") {
        auto table = b.table;
        table.entries["L1"][reps('a', 15)] = {8, 7};
        CHECK_THROWS_AS(
            build_control(b.build, b.cls, b.enc, table, b.ord, b.gc),
            std::invalid_argument);
    }
}
