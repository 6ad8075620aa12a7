#include "mereo/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mereo/approximation.hpp"
#include "mereo/contact.hpp"
#include "mereo/errors.hpp"
#include "mereo/granular_space.hpp"
#include "mereo/mereology.hpp"
#include "mereo/model_io.hpp"
#include "mereo/report.hpp"
#include "mereo/search.hpp"
#include "mereo/theorems.hpp"

namespace mereo {

namespace {

using nlohmann::ordered_json;

LoadedModel load_model_file(const std::string& path) { return parse_model(read_text_file(path)); }

std::vector<std::string> split_on(const std::string& s, char sep) {
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

std::vector<std::pair<std::string, std::string>> parse_pairs_option(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> pairs;
    if (text.empty()) return pairs;
    for (const auto& item : split_on(text, ',')) {
        auto parts = split_on(item, '<');
        if (parts.size() != 2 || parts[0].empty() || parts[1].empty())
            throw ParseError("parthood pair must look like x<y, got: " + item);
        pairs.emplace_back(parts[0], parts[1]);
    }
    return pairs;
}

// Semicolon-separated element names; set-backed carriers use subset
// literals like {1,2}, whose commas are why ';' is the separator.
std::vector<std::string> parse_element_list(const std::string& text) {
    std::vector<std::string> out;
    for (auto& item : split_on(text, ';'))
        if (!item.empty()) out.push_back(item);
    if (out.empty()) throw ParseError("expected a nonempty ;-separated element list");
    return out;
}

std::string describe_model(const GranularSpaceModel& m) {
    std::ostringstream out;
    if (m.set_backed()) {
        const ApproximationSpace& sp = *m.space();
        out << (sp.mode() == GranulationMode::partition ? "partition" : "cover") << " over {";
        const auto& names = sp.universe()->names();
        for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
        out << "}, granules";
        for (const auto& b : sp.blocks()) out << " " << b.to_string();
    } else {
        out << "abstract carrier of " << m.carrier_size() << " elements";
    }
    return out.str();
}

void print_record(std::ostream& out, const CounterexampleRecord& rec, bool as_json) {
    if (as_json) {
        out << record_to_json(rec).dump(2) << "\n";
        return;
    }
    out << "property: " << rec.property_id << "\n";
    out << "verdict: " << to_string(rec.verdict) << "\n";
    out << "models scanned: " << rec.models_scanned << "\n";
    if (rec.model_index >= 0) out << "model index: " << rec.model_index << "\n";
    if (rec.model) out << "model: " << describe_model(*rec.model) << "\n";
    if (!rec.witness.empty()) out << "witness: " << render_witness(rec.witness) << "\n";
}

int effective_cap(int builtin_cap) {
    const char* env = std::getenv("MEREO_MAX_UNIVERSE");
    if (!env) return builtin_cap;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (!end || *end != '\0' || v < 1) throw ParseError("invalid MEREO_MAX_UNIVERSE value");
    return static_cast<int>(v);
}

void require_within_cap(int requested, int builtin_cap) {
    int cap = effective_cap(builtin_cap);
    if (requested > cap)
        throw ParseError("max universe " + std::to_string(requested) + " exceeds the cap of " +
                         std::to_string(cap) +
                         (std::getenv("MEREO_MAX_UNIVERSE") ? " (MEREO_MAX_UNIVERSE)" : ""));
}

int run_check_ggs(std::ostream& out, const std::string& path, bool as_json) {
    LoadedModel lm = load_model_file(path);
    SpaceClassification cls = classify_space(lm.model);
    if (as_json) {
        ordered_json doc;
        doc["model"] = describe_model(lm.model);
        doc["axioms"] = report_to_json(cls.axioms);
        doc["axioms_pass"] = cls.axioms_pass;
        doc["is_gs"] = cls.is_gs;
        doc["is_hgos"] = cls.is_hgos;
        doc["is_set_hgos"] = cls.is_set_hgos;
        if (cls.most_specific)
            doc["most_specific"] = to_string(*cls.most_specific);
        else
            doc["most_specific"] = nullptr;
        out << doc.dump(2) << "\n";
    } else {
        out << "model: " << describe_model(lm.model) << "\n";
        out << render_report(cls.axioms);
        out << "most specific class: "
            << (cls.most_specific ? to_string(*cls.most_specific) : "unclassifiable") << "\n";
    }
    return cls.axioms.all_passed() ? 0 : 1;
}

int run_approx(std::ostream& out, const std::string& path, const std::string& set_text,
               bool as_json) {
    LoadedModel lm = load_model_file(path);
    if (!lm.model.set_backed())
        throw ParseError("approx requires a partition or cover model");
    const ApproximationSpace& sp = *lm.model.space();
    SubsetValue a = SubsetValue::from_names(sp.universe(), split_on(set_text, ','));
    Regions reg = regions(sp, a);
    Definiteness def = definiteness(sp, a);
    SubsetValue lo = sp.lower(a), up = sp.upper(a);
    if (as_json) {
        ordered_json doc;
        doc["set"] = a.member_names();
        doc["lower"] = lo.member_names();
        doc["upper"] = up.member_names();
        doc["positive"] = reg.positive.member_names();
        doc["negative"] = reg.negative.member_names();
        doc["boundary"] = reg.boundary.member_names();
        doc["lower_definite"] = def.lower_definite;
        doc["upper_definite"] = def.upper_definite;
        doc["definite"] = def.definite;
        doc["weakly_upper_definite"] = def.weakly_upper_definite;
        doc["weakly_definite"] = def.weakly_definite;
        out << doc.dump(2) << "\n";
    } else {
        out << "set: " << a.to_string() << "\n";
        out << "lower: " << lo.to_string() << "  upper: " << up.to_string() << "\n";
        out << "regions: positive " << reg.positive.to_string() << ", negative "
            << reg.negative.to_string() << ", boundary " << reg.boundary.to_string() << "\n";
        out << "definiteness:";
        if (def.lower_definite) out << " lower";
        if (def.upper_definite) out << " upper";
        if (def.definite) out << " definite";
        if (def.weakly_upper_definite) out << " weakly-upper";
        if (def.weakly_definite) out << " weakly-definite";
        if (!def.lower_definite && !def.upper_definite && !def.weakly_upper_definite)
            out << " none";
        out << "\n";
    }
    return 0;
}

int run_contact(std::ostream& out, const std::string& path, const std::string& kind_code,
                bool axioms, bool as_json) {
    LoadedModel lm = load_model_file(path);
    auto kind = contact_kind_from_code(kind_code);
    if (!kind) throw ParseError("contact kind must be one of a, o, 1, 2, 3");
    NamedRelation r = NamedRelation::materialize(lm.model, *kind);
    if (!axioms) {
        if (as_json) {
            ordered_json doc;
            doc["relation"] = r.label();
            doc["elements"] = r.size();
            ordered_json pairs = ordered_json::array();
            for (int a = 0; a < r.size(); ++a)
                for (int b = 0; b < r.size(); ++b)
                    if (r.contains(a, b)) pairs.push_back(ordered_json::array({r.name(a), r.name(b)}));
            doc["pairs"] = std::move(pairs);
            out << doc.dump(2) << "\n";
        } else {
            long count = 0;
            for (int a = 0; a < r.size(); ++a)
                for (int b = 0; b < r.size(); ++b)
                    if (r.contains(a, b)) ++count;
            out << "relation " << r.label() << " over " << r.size() << " elements, " << count
                << " pairs\n";
            for (int a = 0; a < r.size(); ++a)
                for (int b = 0; b < r.size(); ++b)
                    if (r.contains(a, b)) out << "  " << r.name(a) << " ~ " << r.name(b) << "\n";
        }
        return 0;
    }
    AxiomReport rep = contact_axiom_report(lm.model, r);
    ContactClassification cls = classify_contact(rep);
    if (as_json) {
        ordered_json doc;
        doc["relation"] = r.label();
        doc["axioms"] = report_to_json(rep);
        doc["contact"] = to_string(cls.contact);
        doc["precontact"] = to_string(cls.precontact);
        out << doc.dump(2) << "\n";
    } else {
        out << "relation " << r.label() << " on " << describe_model(lm.model) << "\n";
        out << render_report(rep);
        out << "contact: " << to_string(cls.contact) << "  precontact: " << to_string(cls.precontact)
            << "\n";
    }
    return rep.all_passed() ? 0 : 1;
}

int run_mereology(std::ostream& out, const std::string& path, const std::string& pairs_text,
                  const std::string& fusion_set, const std::string& sum_set,
                  const std::string& bounds_set, bool keep_bottom, bool as_json) {
    ParthoodStructure s = [&] {
        if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
            return ingest_decision_table(read_text_file(path), parse_pairs_option(pairs_text))
                .structure;
        if (!pairs_text.empty())
            throw ParseError("--pairs applies only to decision-table (.csv) inputs");
        return ParthoodStructure::from_model(load_model_file(path).model, keep_bottom);
    }();

    const RelationProperties& props = s.properties();
    auto separative = s.is_separative();

    ordered_json doc;
    if (as_json) {
        doc["elements"] = s.size();
        doc["reflexive"] = props.reflexive.holds;
        doc["symmetric"] = props.symmetric.holds;
        doc["transitive"] = props.transitive.holds;
        doc["antisymmetric"] = props.antisymmetric.holds;
        doc["separative"] = separative.separative;
    } else {
        out << "carrier: " << s.size() << " elements\n";
        out << "parthood: " << (props.reflexive.holds ? "reflexive" : "not reflexive") << ", "
            << (props.transitive.holds ? "transitive" : "not transitive") << ", "
            << (props.antisymmetric.holds ? "antisymmetric" : "not antisymmetric") << ", "
            << (separative.separative ? "separative" : "not separative") << "\n";
    }

    auto resolve = [&](const std::string& text) {
        return s.subset_of_names(parse_element_list(text));
    };
    auto names_of = [&](const Bitset& bits) {
        std::vector<std::string> names;
        for (std::size_t i : bits.indices()) names.push_back(s.name(static_cast<int>(i)));
        return names;
    };
    auto render_names = [](const std::vector<std::string>& names) {
        if (names.empty()) return std::string("none");
        std::string line;
        for (std::size_t i = 0; i < names.size(); ++i) line += (i ? ", " : "") + names[i];
        return line;
    };

    if (!fusion_set.empty()) {
        Bitset B = resolve(fusion_set);
        std::vector<std::string> hits;
        for (int a = 0; a < s.size(); ++a)
            if (s.is_fusion(a, B)) hits.push_back(s.name(a));
        if (as_json)
            doc["fusion"] = hits;
        else
            out << "fusions of the set: " << render_names(hits) << "\n";
    }
    if (!sum_set.empty()) {
        Bitset B = resolve(sum_set);
        std::vector<std::string> hits;
        for (int a = 0; a < s.size(); ++a)
            if (s.is_sum(a, B)) hits.push_back(s.name(a));
        if (as_json)
            doc["sum"] = hits;
        else
            out << "sums of the set: " << render_names(hits) << "\n";
    }
    if (!bounds_set.empty()) {
        auto [ub, lb] = s.bounds(resolve(bounds_set));
        if (as_json) {
            doc["upper_bounds"] = names_of(ub);
            doc["lower_bounds"] = names_of(lb);
        } else {
            out << "upper bounds: " << render_names(names_of(ub)) << "\n";
            out << "lower bounds: " << render_names(names_of(lb)) << "\n";
        }
    }
    if (as_json) out << doc.dump(2) << "\n";
    return 0;
}

int run_search(std::ostream& out, const SearchConfig& cfg, bool as_json) {
    int builtin = cfg.family == GranulationFamily::proper_covers ? 6 : 8;
    require_within_cap(cfg.max_universe, builtin);
    CounterexampleRecord rec = find_counterexample(cfg);
    print_record(out, rec, as_json);
    return rec.verdict == SearchVerdict::refuted ? 1 : 0;
}

int run_verify_theorems(std::ostream& out, const std::string& which, int max_universe,
                        bool as_json) {
    bool run1 = which == "1" || which == "all";
    bool run2 = which == "2" || which == "all";
    bool run3 = which == "3" || which == "all";
    if (!run1 && !run2 && !run3)
        throw ParseError("verify-theorems takes 1, 2, 3 or all, got: " + which);

    std::vector<SuiteResult> results;
    if (run1) results.push_back(run_theorem1_suite(max_universe > 0 ? max_universe : 6));
    if (run2) {
        int n = max_universe > 0 ? max_universe : 4;
        require_within_cap(n, 6);
        results.push_back(run_theorem2_suite(n));
    }
    if (run3) {
        int n = max_universe > 0 ? max_universe : 3;
        require_within_cap(n, 6);
        results.push_back(run_theorem3_suite(n));
    }

    bool all_passed = true;
    if (as_json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : results) {
            ordered_json o;
            o["suite"] = r.name;
            o["passed"] = r.passed;
            o["models_checked"] = r.models_checked;
            o["checks_run"] = r.checks_run;
            o["checks_skipped"] = r.checks_skipped;
            o["note"] = r.note;
            o["detail"] = r.detail;
            arr.push_back(std::move(o));
            all_passed = all_passed && r.passed;
        }
        out << arr.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            out << r.name << ": " << (r.passed ? "pass" : "FAIL") << " (" << r.models_checked
                << " models, " << r.checks_run << " checks, " << r.checks_skipped << " skipped";
            if (!r.note.empty()) out << "; " << r.note;
            out << ")\n";
            if (!r.passed) out << "  " << r.detail << "\n";
            all_passed = all_passed && r.passed;
        }
    }
    return all_passed ? 0 : 1;
}

int run_ingest(std::ostream& out, const std::string& path, const std::string& pairs_text,
               bool as_json) {
    IngestResult r = ingest_decision_table(read_text_file(path), parse_pairs_option(pairs_text));
    const RelationProperties& props = r.structure.properties();
    auto separative = r.structure.is_separative();
    if (as_json) {
        ordered_json doc;
        doc["rows"] = r.table.rows.size();
        ordered_json carrier = ordered_json::array();
        ordered_json lower = ordered_json::object(), upper = ordered_json::object();
        auto tables = r.model.to_tables();
        for (const auto& name : tables.carrier) carrier.push_back(name);
        for (const auto& [k, v] : tables.lower) lower[k] = v;
        for (const auto& [k, v] : tables.upper) upper[k] = v;
        doc["carrier"] = std::move(carrier);
        doc["lower"] = std::move(lower);
        doc["upper"] = std::move(upper);
        doc["reflexive"] = props.reflexive.holds;
        doc["transitive"] = props.transitive.holds;
        doc["antisymmetric"] = props.antisymmetric.holds;
        doc["separative"] = separative.separative;
        out << doc.dump(2) << "\n";
    } else {
        out << "rows: " << r.table.rows.size() << "\n";
        auto tables = r.model.to_tables();
        out << "carrier:";
        for (const auto& name : tables.carrier) out << " " << name;
        out << "\n";
        for (const auto& name : tables.carrier) {
            std::string lo, up;
            for (const auto& [k, v] : tables.lower)
                if (k == name) lo = v;
            for (const auto& [k, v] : tables.upper)
                if (k == name) up = v;
            out << "  " << name << ": lower " << lo << ", upper " << up << "\n";
        }
        out << "parthood: " << (props.reflexive.holds ? "reflexive" : "not reflexive") << ", "
            << (props.transitive.holds ? "transitive" : "not transitive") << ", "
            << (props.antisymmetric.holds ? "antisymmetric" : "not antisymmetric") << ", "
            << (separative.separative ? "separative" : "not separative") << "\n";
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite workbench for granulated approximation spaces"};
    app.require_subcommand(1);

    bool as_json = false;
    auto add_json = [&](CLI::App* sc) { sc->add_flag("--json", as_json, "JSON output"); };

    std::string model_path, set_text, kind_code, pairs_text;
    std::string fusion_set, sum_set, bounds_set;
    bool with_axioms = false, keep_bottom = false;

    CLI::App* check = app.add_subcommand("check-ggs", "Check operator-space axioms and classify");
    check->add_option("model", model_path, "model JSON file")->required();
    add_json(check);

    CLI::App* approx = app.add_subcommand("approx", "Approximations and regions of a subset");
    approx->add_option("model", model_path, "model JSON file")->required();
    approx->add_option("--set", set_text, "comma-separated element names")->required();
    add_json(approx);

    CLI::App* contact = app.add_subcommand("contact", "Materialize a contact relation");
    contact->add_option("model", model_path, "model JSON file")->required();
    contact->add_option("--kind", kind_code, "contact kind: a, o, 1, 2 or 3")->required();
    contact->add_flag("--axioms", with_axioms, "check the contact axioms");
    add_json(contact);

    CLI::App* mere = app.add_subcommand("mereology", "Sums, fusions and bounds of a set");
    mere->add_option("model", model_path, "model JSON file or decision-table CSV")->required();
    mere->add_option("--pairs", pairs_text, "declared parthood pairs x<y, comma-separated (CSV only)");
    mere->add_option("--fusion", fusion_set, "report fusions of this ;-separated set");
    mere->add_option("--sum", sum_set, "report sums of this ;-separated set");
    mere->add_option("--bounds", bounds_set, "report bounds of this ;-separated set");
    mere->add_flag("--keep-bottom", keep_bottom, "keep a designated bottom in the carrier");
    add_json(mere);

    SearchConfig cfg;
    std::string family_text = "partitions";
    CLI::App* search = app.add_subcommand("search", "Search granulations for a counterexample");
    search->add_option("--property", cfg.property_id, "registered property id")->required();
    search->add_option("--max-universe", cfg.max_universe, "largest universe size to scan");
    search->add_option("--family", family_text, "partitions (default) or covers");
    search->add_option("--max-blocks", cfg.max_blocks, "cover block limit (default 4)");
    search->add_option("--workers", cfg.parallelism, "parallel scan workers (default 1)");
    search->add_flag("--canonicalize", cfg.canonicalize, "dedupe granulations up to relabeling");
    add_json(search);

    std::string which = "all";
    int vt_max_universe = 0;
    CLI::App* verify = app.add_subcommand("verify-theorems", "Run the theorem suites");
    verify->add_option("which", which, "1, 2, 3 or all (default all)");
    verify->add_option("--max-universe", vt_max_universe, "largest universe size per suite");
    add_json(verify);

    CLI::App* ingest = app.add_subcommand("ingest-table", "Ingest a six-column decision table");
    ingest->add_option("csv", model_path, "decision table CSV file")->required();
    ingest->add_option("--pairs", pairs_text, "declared parthood pairs x<y, comma-separated");
    add_json(ingest);

    std::string case_id;
    CLI::App* repro = app.add_subcommand("reproduce", "Re-run a compiled-in counterexample");
    repro->add_option("case", case_id, "A-Re1-asymmetry, B-ReO-C4 or B-ReO-C5")->required();
    add_json(repro);

    try {
        // CLI11's vector overload consumes arguments back to front.
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return run_check_ggs(out, model_path, as_json);
        if (approx->parsed()) return run_approx(out, model_path, set_text, as_json);
        if (contact->parsed())
            return run_contact(out, model_path, kind_code, with_axioms, as_json);
        if (mere->parsed())
            return run_mereology(out, model_path, pairs_text, fusion_set, sum_set, bounds_set,
                                 keep_bottom, as_json);
        if (search->parsed()) {
            auto family = granulation_family_from_string(family_text);
            if (!family) throw ParseError("family must be partitions or covers");
            cfg.family = *family;
            return run_search(out, cfg, as_json);
        }
        if (verify->parsed()) return run_verify_theorems(out, which, vt_max_universe, as_json);
        if (ingest->parsed()) return run_ingest(out, model_path, pairs_text, as_json);
        if (repro->parsed()) {
            CounterexampleRecord rec = reproduce_appendix(case_id);
            print_record(out, rec, as_json);
            return 1;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand given\n";
    return 2;
}

} // namespace mereo
