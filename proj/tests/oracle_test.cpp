#include <doctest.h>

#include "testutil.hpp"

using namespace flowfoot;
using namespace flowfoot::testing;

TEST_CASE("inflow enumeration counts down-sets exactly") {
    EnumBudget budget;

    // counting entry 2 -> values {0,1,2}
    InflowMap in1{{{0, 1}, FlowValue::counting(2)}};
    CHECK(enum_inflows_below(MonoidTag::Counting, in1, budget).size() == 3);

    // keyset (3,inf] over the default universe {4..7, +inf} -> 2^5 subsets
    InflowMap in2{{{0, 1}, FlowValue::keyset(IntervalSet::above(3))}};
    CHECK(enum_inflows_below(MonoidTag::Keyset, in2, budget).size() == 32);

    // two entries multiply
    InflowMap in3{{{0, 1}, FlowValue::counting(1)}, {{0, 2}, FlowValue::counting(2)}};
    CHECK(enum_inflows_below(MonoidTag::Counting, in3, budget).size() == 6);
}

TEST_CASE("inflow enumeration rejects infeasible down-sets") {
    EnumBudget budget;
    InflowMap inf_entry{{{0, 1}, FlowValue::counting(ExtNat::inf())}};
    CHECK_THROWS_WITH_AS(enum_inflows_below(MonoidTag::Counting, inf_entry, budget),
                         doctest::Contains("OracleInfeasible"), FlowError);

    InflowMap huge;
    for (NodeId i = 1; i <= 9; ++i) huge.emplace(NodePair{0, i}, FlowValue::counting(7));
    CHECK_THROWS_WITH_AS(enum_inflows_below(MonoidTag::Counting, huge, budget),
                         doctest::Contains("OracleInfeasible"), FlowError);
}

TEST_CASE("contextual equivalence by enumeration") {
    EnumBudget budget;
    FlowGraph b = count_insert_before(), a = count_insert_after();
    CHECK(oracle_ctx_equiv(b, b, budget));
    // the insert changes the outflow of the full graphs?  no: the full graphs
    // have no boundary edges, so they are trivially equivalent
    CHECK(oracle_ctx_equiv(b, a, budget));

    // restrictions to {1} differ: the after side emits to node 5
    CHECK_FALSE(oracle_ctx_equiv(restrict_graph(b, {1}), restrict_graph(a, {1}), budget));
    // restrictions to the footprint are equivalent
    CHECK(oracle_ctx_equiv(restrict_graph(b, {1, 5, 6}), restrict_graph(a, {1, 5, 6}), budget));
}

TEST_CASE("footprint sets by subset enumeration") {
    FlowGraph h = keyset_unlink_before();
    EnumBudget budget = tailored_budget(h, h);
    std::set<std::set<NodeId>> all = oracle_footprints(h, h, budget);
    CHECK(all.size() == 8);  // identical graphs: every subset qualifies

    std::set<std::set<NodeId>> fps =
        oracle_footprints(keyset_unlink_before(), keyset_unlink_after(), budget);
    CHECK(fps.count({1, 2, 3}));
    CHECK_FALSE(fps.count({1}));
}

TEST_CASE("footprint enumeration is bounded") {
    EnumBudget budget;
    FlowGraph big(MonoidTag::Counting, {1, 2, 3, 4, 5, 6}, {}, {});
    CHECK_THROWS_WITH_AS(oracle_footprints(big, big, budget),
                         doctest::Contains("OracleInfeasible"), FlowError);
}

TEST_CASE("separation laws hold on randomized triples") {
    for (MonoidTag tag : {MonoidTag::Counting, MonoidTag::Keyset, MonoidTag::MaxCap}) {
        LawReport report = check_separation_laws(tag, 250, 91);
        CAPTURE(tag_name(tag));
        CHECK(report.checked == 250);
        for (const std::string& f : report.failures) {
            CAPTURE(f);
            CHECK(false);
        }
    }
}

TEST_CASE("equivalent updates compose with the same frames") {
    // the unlink pair restricted to its footprint, composed against the frame
    FlowGraph b = keyset_unlink_before(), a = keyset_unlink_after();
    std::set<NodeId> fp{1, 2, 3};
    FlowGraph core_b = restrict_graph(b, fp);
    FlowGraph core_a = restrict_graph(a, fp);
    EnumBudget budget;
    REQUIRE(oracle_ctx_equiv(core_b, core_a, budget));

    // any frame that composes with one side composes with the other
    FlowGraph frame(MonoidTag::Keyset, {200},
                    {{{200, 1}, EdgeFn::identity(MonoidTag::Keyset)}},
                    {});
    ComposeResult cb = compose(core_b, frame);
    ComposeResult ca = compose(core_a, frame);
    CHECK(cb.ok() == ca.ok());
}
