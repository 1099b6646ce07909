#include "flowfoot/serialize.hpp"

#include <json.hpp>

namespace flowfoot {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& why) { throw FlowError(Errc::ParseError, why); }

void check_keys(const json& obj, const char* where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) bad(std::string(where) + ": expected an object");
    for (const auto& [key, val] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) bad(std::string(where) + ": unknown key \"" + key + "\"");
    }
}

MonoidTag parse_tag(const json& j) {
    if (j == "counting") return MonoidTag::Counting;
    if (j == "keyset") return MonoidTag::Keyset;
    if (j == "maxcap") return MonoidTag::MaxCap;
    bad("monoid: expected counting|keyset|maxcap");
}

json num_to_json(ExtNat n) { return n.is_inf() ? json("inf") : json(std::to_string(n.raw())); }

ExtNat num_from_json(const json& j, const char* where) {
    if (!j.is_string()) bad(std::string(where) + ": expected a number string");
    std::string s = j.get<std::string>();
    if (s == "inf") return ExtNat::inf();
    try {
        std::size_t used = 0;
        std::uint64_t v = std::stoull(s, &used);
        if (used != s.size()) bad(std::string(where) + ": bad number \"" + s + "\"");
        return ExtNat(v);
    } catch (const std::logic_error&) {
        bad(std::string(where) + ": bad number \"" + s + "\"");
    }
}

json bound_to_json(const Bound& b) {
    switch (b.kind) {
        case BoundKind::NegInf: return "-inf";
        case BoundKind::LowInt: return "-inf+";
        case BoundKind::Int: return b.k;
        case BoundKind::HighInt: return "inf-";
        case BoundKind::PosInf: return "inf";
    }
    bad("unreachable bound kind");
}

Bound bound_from_json(const json& j, const char* where) {
    if (j.is_number_integer()) return Bound::at(j.get<std::int64_t>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "-inf") return Bound::neg_inf();
        if (s == "-inf+") return Bound::low_int();
        if (s == "inf-") return Bound::high_int();
        if (s == "inf") return Bound::pos_inf();
    }
    bad(std::string(where) + ": bad interval endpoint");
}

json set_to_json(const IntervalSet& s) {
    json out = json::array();
    for (const Interval& iv : s.intervals())
        out.push_back(json::array({bound_to_json(iv.lo), bound_to_json(iv.hi)}));
    return out;
}

IntervalSet set_from_json(const json& j, const char* where) {
    if (!j.is_array()) bad(std::string(where) + ": expected an array of intervals");
    std::vector<Interval> ivs;
    for (const json& pair : j) {
        if (!pair.is_array() || pair.size() != 2)
            bad(std::string(where) + ": interval must be a [lo, hi] pair");
        ivs.push_back({bound_from_json(pair[0], where), bound_from_json(pair[1], where)});
    }
    return IntervalSet::from_intervals(std::move(ivs));
}

json value_to_json(const FlowValue& v) {
    return v.tag == MonoidTag::Keyset ? set_to_json(v.set) : num_to_json(v.num);
}

FlowValue value_from_json(MonoidTag tag, const json& j, const char* where) {
    switch (tag) {
        case MonoidTag::Counting: return FlowValue::counting(num_from_json(j, where));
        case MonoidTag::MaxCap: return FlowValue::maxcap(num_from_json(j, where));
        case MonoidTag::Keyset: return FlowValue::keyset(set_from_json(j, where));
    }
    bad("unreachable tag");
}

json fn_to_json(const EdgeFn& f) {
    json out;
    switch (f.tag) {
        case MonoidTag::Counting:
            out["kind"] = "scale";
            out["k"] = num_to_json(f.param);
            break;
        case MonoidTag::Keyset:
            out["kind"] = "intersect";
            out["set"] = set_to_json(f.set);
            break;
        case MonoidTag::MaxCap:
            out["kind"] = "cap";
            out["c"] = num_to_json(f.param);
            break;
    }
    return out;
}

EdgeFn fn_from_json(MonoidTag tag, const json& j) {
    if (!j.is_object() || !j.contains("kind")) bad("fn: expected {\"kind\": ...}");
    const json& kind = j["kind"];
    if (kind == "scale") {
        check_keys(j, "fn", {"kind", "k"});
        if (tag != MonoidTag::Counting) bad("scale function in a non-counting instance");
        if (!j.contains("k")) bad("scale: missing k");
        return EdgeFn::scale(num_from_json(j["k"], "scale.k"));
    }
    if (kind == "intersect") {
        check_keys(j, "fn", {"kind", "set"});
        if (tag != MonoidTag::Keyset) bad("intersect function in a non-keyset instance");
        if (!j.contains("set")) bad("intersect: missing set");
        return EdgeFn::intersect(set_from_json(j["set"], "intersect.set"));
    }
    if (kind == "cap") {
        check_keys(j, "fn", {"kind", "c"});
        if (tag != MonoidTag::MaxCap) bad("cap function in a non-maxcap instance");
        if (!j.contains("c")) bad("cap: missing c");
        return EdgeFn::cap(num_from_json(j["c"], "cap.c"));
    }
    bad("fn: unknown kind");
}

NodeId node_from_json(const json& j, const char* where) {
    if (!j.is_number_unsigned() && !j.is_number_integer())
        bad(std::string(where) + ": expected a node id");
    return j.get<NodeId>();
}

EdgeMap edges_from_json(MonoidTag tag, const json& j) {
    if (!j.is_array()) bad("edges: expected an array");
    EdgeMap edges;
    for (const json& e : j) {
        check_keys(e, "edge", {"from", "to", "fn"});
        if (!e.contains("from") || !e.contains("to") || !e.contains("fn"))
            bad("edge: needs from, to, fn");
        NodePair key{node_from_json(e["from"], "edge.from"), node_from_json(e["to"], "edge.to")};
        if (edges.count(key)) bad("edge: duplicate (" + std::to_string(key.first) + ", " +
                                  std::to_string(key.second) + ")");
        edges.emplace(key, fn_from_json(tag, e["fn"]));
    }
    return edges;
}

InflowMap inflow_from_json(MonoidTag tag, const json& j) {
    if (!j.is_array()) bad("inflow: expected an array");
    InflowMap in;
    for (const json& e : j) {
        check_keys(e, "inflow entry", {"from", "to", "value"});
        if (!e.contains("from") || !e.contains("to") || !e.contains("value"))
            bad("inflow entry: needs from, to, value");
        NodePair key{node_from_json(e["from"], "inflow.from"),
                     node_from_json(e["to"], "inflow.to")};
        if (in.count(key)) bad("inflow: duplicate entry");
        in.emplace(key, value_from_json(tag, e["value"], "inflow.value"));
    }
    return in;
}

json edges_to_json(const EdgeMap& edges) {
    json out = json::array();
    for (const auto& [key, fn] : edges)
        out.push_back({{"from", key.first}, {"to", key.second}, {"fn", fn_to_json(fn)}});
    return out;
}

json inflow_to_json(const InflowMap& in) {
    json out = json::array();
    for (const auto& [key, val] : in)
        out.push_back({{"from", key.first}, {"to", key.second}, {"value", value_to_json(val)}});
    return out;
}

}  // namespace

Instance parse_instance(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
    check_keys(doc, "instance", {"monoid", "label", "nodes", "inflow", "before", "after"});
    if (!doc.contains("monoid") || !doc.contains("nodes") || !doc.contains("before") ||
        !doc.contains("after"))
        bad("instance: needs monoid, nodes, before, after");

    Instance inst;
    inst.tag = parse_tag(doc["monoid"]);
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) bad("label: expected a string");
        inst.label = doc["label"].get<std::string>();
    }
    if (!doc["nodes"].is_array()) bad("nodes: expected an array");
    std::set<NodeId> nodes;
    for (const json& n : doc["nodes"]) nodes.insert(node_from_json(n, "nodes"));

    InflowMap shared;
    if (doc.contains("inflow")) shared = inflow_from_json(inst.tag, doc["inflow"]);

    auto side = [&](const char* name) {
        const json& s = doc[name];
        check_keys(s, name, {"edges", "inflow"});
        if (!s.contains("edges")) bad(std::string(name) + ": missing edges");
        InflowMap in = s.contains("inflow") ? inflow_from_json(inst.tag, s["inflow"]) : shared;
        try {
            return FlowGraph(inst.tag, nodes, edges_from_json(inst.tag, s["edges"]), in);
        } catch (const FlowError& e) {
            if (e.code() == Errc::ParseError) throw;
            throw FlowError(Errc::ParseError, std::string(name) + ": " + e.what());
        }
    };
    inst.before = side("before");
    inst.after = side("after");

    if (inst.before.inflow() != inst.after.inflow())
        throw FlowError(Errc::PreconditionViolation, "before/after inflows differ");
    return inst;
}

std::string serialize_instance(const Instance& inst) {
    json doc;
    doc["monoid"] = tag_name(inst.tag);
    doc["label"] = inst.label;
    doc["nodes"] = json::array();
    for (NodeId n : inst.before.nodes()) doc["nodes"].push_back(n);
    doc["inflow"] = inflow_to_json(inst.before.inflow());
    doc["before"] = {{"edges", edges_to_json(inst.before.edges())}};
    doc["after"] = {{"edges", edges_to_json(inst.after.edges())}};
    return doc.dump(2) + "\n";
}

namespace {

json graph_to_json(const FlowGraph& g) {
    json out;
    out["nodes"] = json::array();
    for (NodeId n : g.nodes()) out["nodes"].push_back(n);
    out["edges"] = edges_to_json(g.edges());
    out["inflow"] = inflow_to_json(g.inflow());
    return out;
}

FlowGraph graph_from_json(MonoidTag tag, const json& j, const char* where) {
    check_keys(j, where, {"nodes", "edges", "inflow"});
    if (!j.contains("nodes") || !j.contains("edges"))
        bad(std::string(where) + ": needs nodes and edges");
    std::set<NodeId> nodes;
    for (const json& n : j["nodes"]) nodes.insert(node_from_json(n, "nodes"));
    InflowMap in;
    if (j.contains("inflow")) in = inflow_from_json(tag, j["inflow"]);
    try {
        return FlowGraph(tag, std::move(nodes), edges_from_json(tag, j["edges"]), std::move(in));
    } catch (const FlowError& e) {
        if (e.code() == Errc::ParseError) throw;
        throw FlowError(Errc::ParseError, std::string(where) + ": " + e.what());
    }
}

}  // namespace

GraphPair parse_graph_pair(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
    check_keys(doc, "pair", {"monoid", "label", "graphs"});
    if (!doc.contains("monoid") || !doc.contains("graphs")) bad("pair: needs monoid and graphs");
    if (!doc["graphs"].is_array() || doc["graphs"].size() != 2)
        bad("graphs: expected exactly two graphs");
    GraphPair pair;
    pair.tag = parse_tag(doc["monoid"]);
    if (doc.contains("label")) pair.label = doc["label"].get<std::string>();
    pair.first = graph_from_json(pair.tag, doc["graphs"][0], "graphs[0]");
    pair.second = graph_from_json(pair.tag, doc["graphs"][1], "graphs[1]");
    return pair;
}

std::string serialize_graph_pair(const GraphPair& pair) {
    json doc;
    doc["monoid"] = tag_name(pair.tag);
    doc["label"] = pair.label;
    doc["graphs"] = json::array({graph_to_json(pair.first), graph_to_json(pair.second)});
    return doc.dump(2) + "\n";
}

std::string footprint_json(const FootprintResult& res, std::uint64_t micros) {
    json doc;
    if (res.top) {
        doc["footprint"] = "TOP";
    } else {
        doc["footprint"] = json::array();
        for (NodeId n : res.nodes) doc["footprint"].push_back(n);
    }
    doc["trace"] = json::array();
    for (const auto& z : res.trace) {
        json step = json::array();
        for (NodeId n : z) step.push_back(n);
        doc["trace"].push_back(std::move(step));
    }
    doc["method"] = method_name(res.method);
    doc["micros"] = micros;
    return doc.dump() + "\n";
}

}  // namespace flowfoot
