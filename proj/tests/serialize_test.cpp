#include <doctest.h>

#include "testutil.hpp"

using namespace flowfoot;
using namespace flowfoot::testing;

TEST_CASE("shipped counting instance loads correctly") {
    Instance inst = parse_instance(read_file(fixture_path("count_insert.json")));
    CHECK(inst.tag == MonoidTag::Counting);
    CHECK(graphs_equal(inst.before, count_insert_before()));
    CHECK(graphs_equal(inst.after, count_insert_after()));
}

TEST_CASE("shipped maxcap instance loads correctly") {
    Instance inst = parse_instance(read_file(fixture_path("maxcap_swing.json")));
    CHECK(inst.tag == MonoidTag::MaxCap);
    CHECK(graphs_equal(inst.before, maxcap_swing_h1()));
    CHECK(graphs_equal(inst.after, maxcap_swing_h2()));
}

TEST_CASE("shipped composition pair loads correctly") {
    GraphPair pair = parse_graph_pair(read_file(fixture_path("count_compose.json")));
    CHECK(graphs_equal(pair.first, count_pair_h1()));
    CHECK(graphs_equal(pair.second, count_pair_h2()));
}

TEST_CASE("round-trip is the identity on canonical forms") {
    for (const char* name : {"count_insert.json", "maxcap_swing.json"}) {
        Instance inst = parse_instance(read_file(fixture_path(name)));
        std::string bytes = serialize_instance(inst);
        Instance again = parse_instance(bytes);
        CAPTURE(name);
        CHECK(graphs_equal(inst.before, again.before));
        CHECK(graphs_equal(inst.after, again.after));
        CHECK(serialize_instance(again) == bytes);
    }

    Instance gen = gen_list_update(ListOp::Unlink, 5, 99);
    Instance again = parse_instance(serialize_instance(gen));
    CHECK(graphs_equal(gen.before, again.before));
    CHECK(graphs_equal(gen.after, again.after));
}

TEST_CASE("unknown fields are rejected") {
    CHECK_THROWS_WITH_AS(parse_instance(R"({"monoid":"counting","nodes":[1],"extra":1,)"
                                        R"("before":{"edges":[]},"after":{"edges":[]}})"),
                         doctest::Contains("unknown key"), FlowError);
}

TEST_CASE("malformed documents fail with ParseError") {
    CHECK_THROWS_AS(parse_instance("not json"), FlowError);
    CHECK_THROWS_AS(parse_instance(R"({"monoid":"counting"})"), FlowError);
    CHECK_THROWS_AS(parse_instance(R"({"monoid":"widget","nodes":[],)"
                                   R"("before":{"edges":[]},"after":{"edges":[]}})"),
                    FlowError);
    // wrong function family for the monoid
    CHECK_THROWS_AS(
        parse_instance(R"({"monoid":"counting","nodes":[1,2],)"
                       R"("before":{"edges":[{"from":1,"to":2,"fn":{"kind":"cap","c":"1"}}]},)"
                       R"("after":{"edges":[]}})"),
        FlowError);
}

TEST_CASE("mismatched inflows are a precondition violation") {
    const char* doc = R"({
      "monoid": "counting", "nodes": [1],
      "before": {"edges": [], "inflow": [{"from": 0, "to": 1, "value": "1"}]},
      "after":  {"edges": [], "inflow": [{"from": 0, "to": 1, "value": "2"}]}
    })";
    CHECK_THROWS_WITH_AS(parse_instance(doc), doctest::Contains("PreconditionViolation"),
                         FlowError);
}

TEST_CASE("keyset values serialize with sentinel endpoints") {
    Instance inst;
    inst.tag = MonoidTag::Keyset;
    InflowMap in;
    in.emplace(NodePair{0, 1},
               FlowValue::keyset(IntervalSet::integers().unite(
                   IntervalSet::singleton(Bound::pos_inf()))));
    inst.before = FlowGraph(MonoidTag::Keyset, {1},
                            {{{1, 9}, EdgeFn::lambda_neg_inf()}}, in);
    inst.after = inst.before;
    std::string bytes = serialize_instance(inst);
    CHECK(bytes.find("-inf+") != std::string::npos);  // just-above-minus-infinity endpoint
    Instance again = parse_instance(bytes);
    CHECK(graphs_equal(again.before, inst.before));
}

TEST_CASE("footprint results serialize to one json line") {
    FootprintResult res;
    res.nodes = {1, 5, 6};
    res.trace = {{1}, {1, 5}, {1, 5, 6}};
    res.method = Method::New;
    std::string line = footprint_json(res, 42);
    CHECK(line == "{\"footprint\":[1,5,6],\"trace\":[[1],[1,5],[1,5,6]],"
                  "\"method\":\"new\",\"micros\":42}\n");

    FootprintResult top;
    top.top = true;
    top.trace = {{3}};
    top.method = Method::Naive;
    CHECK(footprint_json(top, 7) ==
          "{\"footprint\":\"TOP\",\"trace\":[[3]],\"method\":\"naive\",\"micros\":7}\n");
}
