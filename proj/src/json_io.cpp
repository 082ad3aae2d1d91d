#include "cobex/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cobex {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double number_field(const json& v, const std::string& what) {
    if (!v.is_number()) fail(what + " must be a number");
    return v.get<double>();
}

std::uint32_t mask_from_bitstring(const std::string& key, std::size_t length,
                                  const std::string& what) {
    if (key.size() != length)
        fail("bad " + what + " key '" + key + "': expected " + std::to_string(length) +
             " characters");
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k < key.size(); ++k) {
        if (key[k] == '1')
            mask |= 1u << k;
        else if (key[k] != '0')
            fail("bad " + what + " key '" + key + "': expected only 0 and 1");
    }
    return mask;
}

std::string bitstring_from_mask(std::uint32_t mask, std::size_t length) {
    std::string s(length, '0');
    for (std::size_t k = 0; k < length; ++k)
        if (mask >> k & 1) s[k] = '1';
    return s;
}

// cpt object {bitstring: P(true)} -> dense vector indexed by parent mask
std::vector<double> cpt_from_json(const json& obj, std::size_t parent_count,
                                  const std::string& node) {
    if (!obj.is_object()) fail("cpt of node " + node + " must be an object");
    if (parent_count > 25) fail("node " + node + " has too many parents");
    const std::size_t rows = std::size_t{1} << parent_count;
    if (obj.size() != rows)
        fail("cpt of node " + node + " must have " + std::to_string(rows) + " rows, got " +
             std::to_string(obj.size()));
    std::vector<double> cpt(rows);
    std::vector<bool> present(rows, false);
    for (const auto& [key, value] : obj.items()) {
        const std::uint32_t mask = mask_from_bitstring(key, parent_count, "cpt");
        cpt[mask] = number_field(value, "cpt entry '" + key + "' of node " + node);
        present[mask] = true;
    }
    for (std::size_t m = 0; m < rows; ++m)
        if (!present[m])
            fail("cpt of node " + node + " is missing row '" +
                 bitstring_from_mask(static_cast<std::uint32_t>(m), parent_count) + "'");
    return cpt;
}

}  // namespace

json parse_document(const std::string& text) {
    std::vector<std::set<std::string>> object_keys;
    const json::parser_callback_t reject_duplicates =
        [&object_keys](int, json::parse_event_t event, json& parsed) {
            switch (event) {
                case json::parse_event_t::object_start:
                    object_keys.emplace_back();
                    break;
                case json::parse_event_t::key: {
                    const auto key = parsed.get<std::string>();
                    if (!object_keys.back().insert(key).second)
                        throw std::invalid_argument("duplicate key: " + key);
                    break;
                }
                case json::parse_event_t::object_end:
                    object_keys.pop_back();
                    break;
                default:
                    break;
            }
            return true;
        };
    try {
        return json::parse(text, reject_duplicates);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

JointDistribution distribution_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
        fail("distribution document needs an integer 'n'");
    const int n = doc["n"].get<int>();
    if (n < 1 || n > kMaxVariables)
        fail("variable count must be in [1, " + std::to_string(kMaxVariables) + "], got " +
             std::to_string(n));
    if (!doc.contains("table") || !doc["table"].is_object())
        fail("distribution document needs a 'table' object");
    std::vector<double> probs(std::size_t{1} << n, 0.0);
    for (const auto& [key, value] : doc["table"].items()) {
        const std::uint32_t mask =
            mask_from_bitstring(key, static_cast<std::size_t>(n), "assignment");
        probs[mask] = number_field(value, "probability of '" + key + "'");
    }
    return JointDistribution::from_table(n, std::move(probs));
}

JointDistribution grid_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("cells") || !doc["cells"].is_number_integer())
        fail("grid document needs an integer 'cells'");
    const auto cells = doc["cells"].get<std::int64_t>();
    if (cells < 1) fail("grid needs at least one cell");
    if (!doc.contains("intervals") || !doc["intervals"].is_array())
        fail("grid document needs an 'intervals' array");
    std::vector<Interval> intervals;
    for (const json& pair : doc["intervals"]) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
            !pair[1].is_number_integer())
            fail("each interval must be a [lo, hi] integer pair");
        const auto lo = pair[0].get<std::int64_t>();
        const auto hi = pair[1].get<std::int64_t>();
        if (lo < 0 || hi < 0) fail("interval out of range [1, cells]");
        intervals.push_back(Interval{static_cast<std::uint64_t>(lo),
                                     static_cast<std::uint64_t>(hi)});
    }
    return grid_overlap_distribution(static_cast<std::uint64_t>(cells), intervals);
}

JointDistribution any_distribution_from_json(const json& doc) {
    if (doc.is_object() && doc.contains("cells")) return grid_from_json(doc);
    if (doc.is_object() && doc.contains("n")) return distribution_from_json(doc);
    fail("unrecognized distribution document: expected 'n'/'table' or 'cells'/'intervals'");
}

BayesNet network_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array())
        fail("network document needs a 'nodes' array");
    std::vector<BayesNet::NodeSpec> specs;
    for (const json& item : doc["nodes"]) {
        if (!item.is_object() || !item.contains("name") || !item["name"].is_string())
            fail("each node needs a string 'name'");
        BayesNet::NodeSpec spec;
        spec.name = item["name"].get<std::string>();
        if (item.contains("parents")) {
            if (!item["parents"].is_array())
                fail("parents of node " + spec.name + " must be an array");
            for (const json& p : item["parents"]) {
                if (!p.is_string()) fail("parents of node " + spec.name + " must be names");
                spec.parents.push_back(p.get<std::string>());
            }
        }
        if (!item.contains("cpt")) fail("node " + spec.name + " needs a 'cpt' object");
        spec.cpt = cpt_from_json(item["cpt"], spec.parents.size(), spec.name);
        specs.push_back(std::move(spec));
    }
    BayesNet net(specs);
    validate(net);
    return net;
}

Evidence evidence_from_json(const json& doc) {
    if (!doc.is_object()) fail("evidence document must be an object");
    Evidence e;
    for (const auto& [name, value] : doc.items()) {
        if (!value.is_boolean()) fail("evidence for " + name + " must be true or false");
        e.emplace(name, value.get<bool>());
    }
    return e;
}

FigureDocument figure_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("figure") || !doc["figure"].is_string())
        fail("figure document needs a 'figure' of \"coherence\" or \"expansion\"");
    const std::string kind_name = doc["figure"].get<std::string>();
    FigureKind kind;
    if (kind_name == "coherence")
        kind = FigureKind::Coherence;
    else if (kind_name == "expansion")
        kind = FigureKind::Expansion;
    else
        fail("figure must be \"coherence\" or \"expansion\", got \"" + kind_name + "\"");

    if (!doc.contains("distribution"))
        fail("figure document needs a 'distribution'");
    JointDistribution base = any_distribution_from_json(doc["distribution"]);

    if (!doc.contains("sources") || !doc["sources"].is_array() || doc["sources"].empty())
        fail("figure document needs a non-empty 'sources' array");
    std::vector<SourceParams> sources;
    for (const json& s : doc["sources"]) {
        if (!s.is_object() || !s.contains("p") || !s.contains("q"))
            fail("each source needs 'p' and 'q'");
        sources.push_back(SourceParams{number_field(s["p"], "source p"),
                                       number_field(s["q"], "source q")});
    }

    std::vector<ExtraEdge> edges;
    if (doc.contains("extra_edges")) {
        if (!doc["extra_edges"].is_array()) fail("extra_edges must be an array");
        for (const json& e : doc["extra_edges"]) {
            if (!e.is_object() || !e.contains("from") || !e.contains("to") ||
                !e["from"].is_string() || !e["to"].is_string())
                fail("each extra edge needs string 'from' and 'to'");
            edges.push_back(
                ExtraEdge{e["from"].get<std::string>(), e["to"].get<std::string>()});
        }
    }

    std::vector<SharedSource> shared;
    if (doc.contains("shared_sources")) {
        if (!doc["shared_sources"].is_array()) fail("shared_sources must be an array");
        for (const json& s : doc["shared_sources"]) {
            if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() ||
                !s[1].is_number_integer())
                fail("each shared source must be an [i, j] index pair");
            shared.push_back(SharedSource{s[0].get<int>(), s[1].get<int>()});
        }
    }

    std::map<std::string, std::vector<double>> overrides;
    if (doc.contains("cpt_overrides")) {
        if (!doc["cpt_overrides"].is_object()) fail("cpt_overrides must be an object");
        for (const auto& [name, table] : doc["cpt_overrides"].items()) {
            if (!table.is_object() || table.empty())
                fail("cpt override for " + name + " must be a non-empty object");
            // arity follows from the key length; the network validator
            // checks it against the final parent count
            const std::size_t key_len = table.begin().key().size();
            overrides.emplace(name, cpt_from_json(table, key_len, name));
        }
    }

    return FigureDocument{kind, FigureSpec{std::move(base), std::move(sources),
                                           std::move(edges), std::move(shared),
                                           std::move(overrides)}};
}

}  // namespace cobex
