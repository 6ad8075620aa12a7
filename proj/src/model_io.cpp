#include "mereo/model_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mereo/approximation.hpp"
#include "mereo/errors.hpp"

namespace mereo {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const json& field(const json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end()) throw ParseError(std::string("missing field: ") + name);
    return *it;
}

std::string as_string(const json& v, const std::string& what) {
    if (!v.is_string()) throw ParseError(what + " must be a string");
    return v.get<std::string>();
}

std::vector<std::string> as_string_array(const json& v, const std::string& what) {
    if (!v.is_array()) throw ParseError(what + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(as_string(e, what + " entry"));
    return out;
}

const char* verdict_status_name(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::pass: return "pass";
        case VerdictStatus::fail: return "fail";
        case VerdictStatus::skipped: return "skipped";
    }
    return "?";
}

LoadedModel parse_set_backed(const json& doc, bool as_partition) {
    auto names = as_string_array(field(doc, "universe"), "universe");
    std::shared_ptr<const Universe> u;
    try {
        u = Universe::create(std::move(names));
    } catch (const ModelError& e) {
        throw ParseError(std::string("universe: ") + e.what());
    }

    const json& gs = field(doc, "granules");
    if (!gs.is_array()) throw ParseError("granules must be an array of name arrays");
    std::vector<SubsetValue> blocks;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        auto members = as_string_array(gs[i], "granule " + std::to_string(i));
        try {
            blocks.push_back(SubsetValue::from_names(u, members));
        } catch (const ModelError& e) {
            throw ParseError("granule " + std::to_string(i) + ": " + e.what());
        }
    }

    LoadedModel lm;
    try {
        if (as_partition)
            lm.model = GranularSpaceModel::from_space(
                ApproximationSpace(Partition::from_blocks(std::move(blocks))));
        else
            lm.model = GranularSpaceModel::from_space(
                ApproximationSpace(Cover::from_blocks(std::move(blocks))));
    } catch (const ModelError& e) {
        throw ParseError(e.what());
    }

    if (doc.contains("probe")) {
        const json& p = doc["probe"];
        if (!p.is_object()) throw ParseError("probe must map element names to number arrays");
        for (auto it = p.begin(); it != p.end(); ++it)
            if (u->index(it.key()) < 0)
                throw ParseError("probe names unknown element: " + it.key());
        std::vector<std::vector<double>> features;
        for (const auto& nm : u->names()) {
            auto it = p.find(nm);
            if (it == p.end()) throw ParseError("probe missing element: " + nm);
            if (!it->is_array()) throw ParseError("probe entry for " + nm + " must be an array");
            std::vector<double> f;
            for (const auto& x : *it) {
                if (!x.is_number()) throw ParseError("probe entry for " + nm + " must hold numbers");
                f.push_back(x.get<double>());
            }
            features.push_back(std::move(f));
        }
        try {
            lm.probe.emplace(u, std::move(features));
        } catch (const ModelError& e) {
            throw ParseError(std::string("probe: ") + e.what());
        }
    }
    return lm;
}

LoadedModel parse_abstract(const json& doc) {
    if (doc.contains("probe")) throw ParseError("probe requires a set-backed model");
    GranularSpaceModel::AbstractTables t;
    t.carrier = as_string_array(field(doc, "carrier"), "carrier");
    t.granules = as_string_array(field(doc, "granules"), "granules");

    auto read_map = [&](const char* name, std::vector<std::pair<std::string, std::string>>& out) {
        const json& v = field(doc, name);
        if (!v.is_object()) throw ParseError(std::string(name) + " must map elements to elements");
        for (auto it = v.begin(); it != v.end(); ++it)
            out.emplace_back(it.key(), as_string(it.value(), std::string(name) + " value"));
    };
    read_map("lower", t.lower);
    read_map("upper", t.upper);

    auto read_pairs = [&](const char* name, std::vector<std::pair<std::string, std::string>>& out) {
        const json& v = field(doc, name);
        if (!v.is_array()) throw ParseError(std::string(name) + " must be an array of pairs");
        for (const auto& e : v) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError(std::string(name) + " entries must be two-element arrays");
            out.emplace_back(as_string(e[0], name), as_string(e[1], name));
        }
    };
    read_pairs("parthood", t.parthood);
    read_pairs("leq", t.leq);

    auto read_triples = [&](const char* name, std::vector<std::array<std::string, 3>>& out) {
        const json& v = field(doc, name);
        if (!v.is_array()) throw ParseError(std::string(name) + " must be an array of triples");
        for (const auto& e : v) {
            if (!e.is_array() || e.size() != 3)
                throw ParseError(std::string(name) + " entries must be three-element arrays");
            out.push_back({as_string(e[0], name), as_string(e[1], name), as_string(e[2], name)});
        }
    };
    read_triples("join", t.join);
    read_triples("meet", t.meet);

    if (doc.contains("bottom")) t.bottom = as_string(doc["bottom"], "bottom");
    if (doc.contains("top")) t.top = as_string(doc["top"], "top");

    LoadedModel lm;
    try {
        lm.model = GranularSpaceModel::from_tables(t);
    } catch (const ModelError& e) {
        throw ParseError(e.what());
    }
    return lm;
}

} // namespace

LoadedModel model_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("model document must be a JSON object");
    const json& schema = field(doc, "schema");
    if (!schema.is_number_integer() || schema.get<int>() != 1)
        throw ParseError("unsupported schema version; expected 1");
    std::string mode = as_string(field(doc, "mode"), "mode");
    if (mode == "partition") return parse_set_backed(doc, true);
    if (mode == "cover") return parse_set_backed(doc, false);
    if (mode == "abstract") return parse_abstract(doc);
    throw ParseError("mode must be partition, cover or abstract, got: " + mode);
}

LoadedModel parse_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("model document is not valid JSON: ") + e.what());
    }
    return model_from_json(doc);
}

ordered_json model_to_json(const LoadedModel& lm) {
    ordered_json doc;
    doc["schema"] = 1;
    const GranularSpaceModel& m = lm.model;
    if (m.set_backed()) {
        const ApproximationSpace& sp = *m.space();
        doc["mode"] = sp.mode() == GranulationMode::partition ? "partition" : "cover";
        doc["universe"] = sp.universe()->names();
        auto gs = ordered_json::array();
        for (const auto& b : sp.blocks()) gs.push_back(b.member_names());
        doc["granules"] = std::move(gs);
        if (lm.probe) {
            ordered_json p = ordered_json::object();
            const auto& u = *sp.universe();
            for (int i = 0; i < u.size(); ++i) p[u.name(i)] = lm.probe->feature(i);
            doc["probe"] = std::move(p);
        }
    } else {
        auto t = m.to_tables();
        doc["mode"] = "abstract";
        doc["carrier"] = t.carrier;
        doc["granules"] = t.granules;
        auto emit_map = [](const std::vector<std::pair<std::string, std::string>>& entries) {
            ordered_json o = ordered_json::object();
            for (const auto& [k, v] : entries) o[k] = v;
            return o;
        };
        doc["lower"] = emit_map(t.lower);
        doc["upper"] = emit_map(t.upper);
        auto emit_pairs = [](const std::vector<std::pair<std::string, std::string>>& entries) {
            ordered_json a = ordered_json::array();
            for (const auto& [x, y] : entries) a.push_back(ordered_json::array({x, y}));
            return a;
        };
        doc["parthood"] = emit_pairs(t.parthood);
        doc["leq"] = emit_pairs(t.leq);
        auto emit_triples = [](const std::vector<std::array<std::string, 3>>& entries) {
            ordered_json a = ordered_json::array();
            for (const auto& e : entries) a.push_back(ordered_json::array({e[0], e[1], e[2]}));
            return a;
        };
        doc["join"] = emit_triples(t.join);
        doc["meet"] = emit_triples(t.meet);
        if (t.bottom) doc["bottom"] = *t.bottom;
        if (t.top) doc["top"] = *t.top;
    }
    return doc;
}

std::string serialize_model(const LoadedModel& lm) { return model_to_json(lm).dump(2) + "\n"; }

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

IngestResult ingest_decision_table(
    const std::string& csv_text,
    const std::vector<std::pair<std::string, std::string>>& parthood_pairs) {
    std::vector<std::string> lines;
    for (auto& line : split(csv_text, '\n')) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw ParseError("decision table is empty");
    if (lines.front() != "id,attributes,decision,remark,l,u")
        throw ParseError("decision table header must be id,attributes,decision,remark,l,u");

    DecisionTable table;
    std::map<std::string, std::string> decision_of; // row id -> label
    std::size_t attr_count = 0, attr_len = 0;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        auto cells = split(lines[li], ',');
        std::string where = "row " + std::to_string(li);
        if (cells.size() != 6)
            throw ParseError(where + ": expected 6 comma-separated cells, got " +
                             std::to_string(cells.size()));
        DecisionRow row;
        row.id = cells[0];
        row.decision = cells[2];
        row.remark = cells[3];
        row.lower_id = cells[4];
        row.upper_id = cells[5];
        if (row.id.empty()) throw ParseError(where + ": empty row id");
        if (row.decision.empty()) throw ParseError(where + ": empty decision label");
        if (decision_of.count(row.id)) throw ParseError(where + ": duplicate row id " + row.id);
        for (const auto& tok : split(cells[1], ' ')) {
            if (tok.empty()) continue;
            for (char c : tok)
                if (c != 's' && c != 'm' && c != 'w' && c != 'n')
                    throw ParseError(where + ": attribute valuations use only s, m, w, n");
            row.attributes.push_back(tok);
        }
        if (row.attributes.empty()) throw ParseError(where + ": no attribute valuations");
        if (table.rows.empty()) {
            attr_count = row.attributes.size();
            attr_len = row.attributes.front().size();
        }
        if (row.attributes.size() != attr_count)
            throw ParseError(where + ": expected " + std::to_string(attr_count) +
                             " attribute valuations");
        for (const auto& tok : row.attributes)
            if (tok.size() != attr_len)
                throw ParseError(where + ": attribute valuations must all have length " +
                                 std::to_string(attr_len));
        decision_of[row.id] = row.decision;
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) throw ParseError("decision table has no data rows");

    // Translate row-level l/u references into decision-label space.
    std::vector<std::string> labels;
    std::map<std::string, std::pair<std::string, std::string>> lu_of;
    for (const auto& row : table.rows) {
        auto lo = decision_of.find(row.lower_id);
        if (lo == decision_of.end())
            throw ParseError("row " + row.id + ": l-reference names unknown row " + row.lower_id);
        auto up = decision_of.find(row.upper_id);
        if (up == decision_of.end())
            throw ParseError("row " + row.id + ": u-reference names unknown row " + row.upper_id);
        std::pair<std::string, std::string> lu{lo->second, up->second};
        auto it = lu_of.find(row.decision);
        if (it == lu_of.end()) {
            lu_of.emplace(row.decision, lu);
            labels.push_back(row.decision);
        } else if (it->second != lu) {
            throw ParseError("decision label " + row.decision +
                             " has conflicting approximations across rows");
        }
    }

    GranularSpaceModel::AbstractTables t;
    t.carrier = labels;
    for (const auto& lb : labels) {
        t.lower.emplace_back(lb, lu_of.at(lb).first);
        t.upper.emplace_back(lb, lu_of.at(lb).second);
        t.parthood.emplace_back(lb, lb);
    }
    for (const auto& [x, y] : parthood_pairs) t.parthood.emplace_back(x, y);
    t.leq = t.parthood;

    IngestResult result{std::move(table),
                        ParthoodStructure::from_pairs(labels, parthood_pairs, true),
                        GranularSpaceModel::from_tables(t)};
    return result;
}

ordered_json witness_to_json(const std::vector<WitnessBinding>& witness) {
    ordered_json arr = ordered_json::array();
    for (const auto& w : witness) {
        ordered_json b;
        b["var"] = w.var;
        b["elements"] = w.elements;
        arr.push_back(std::move(b));
    }
    return arr;
}

ordered_json report_to_json(const AxiomReport& report) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : report.verdicts) {
        ordered_json o;
        o["id"] = v.id;
        o["status"] = verdict_status_name(v.status);
        o["witness"] = witness_to_json(v.witness);
        o["note"] = v.note;
        arr.push_back(std::move(o));
    }
    ordered_json doc;
    doc["verdicts"] = std::move(arr);
    doc["all_passed"] = report.all_passed();
    return doc;
}

ordered_json record_to_json(const CounterexampleRecord& rec) {
    ordered_json doc;
    doc["property"] = rec.property_id;
    doc["verdict"] = to_string(rec.verdict);
    doc["witness"] = witness_to_json(rec.witness);
    doc["model_index"] = rec.model_index;
    doc["models_scanned"] = rec.models_scanned;
    if (rec.model)
        doc["model"] = model_to_json(LoadedModel{*rec.model, std::nullopt});
    else
        doc["model"] = nullptr;
    return doc;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace mereo
