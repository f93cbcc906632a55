#include "opp/report.hpp"

#include <sstream>

#include "json.hpp"

namespace opp {

std::string census_report_json(const CensusReport& r) {
    using json = nlohmann::ordered_json;
    json doc;
    doc["schema_version"] = 1;
    doc["geometry"] = r.geometry;
    doc["set_size"] = r.m;
    doc["vertices"] = r.num_vertices;
    doc["objects"] = r.num_objects;
    doc["lines"] = r.num_lines;

    json search;
    search["nodes"] = r.nodes;
    search["restricted"] = r.restricted;
    search["partial"] = r.partial;
    search["roots_completed"] = r.roots_completed;
    search["seconds"] = r.seconds;
    doc["search"] = search;

    json blockers;
    blockers["count"] = r.num_blockers;
    blockers["predicted_total"] = r.predicted_blockers;
    blockers["extrapolation_exact"] = r.extrapolation_exact;
    doc["blockers"] = blockers;

    json minimality;
    minimality["ok"] = r.minimality_ok;
    if (!r.minimality_ok) minimality["violation"] = r.minimality_violation;
    doc["minimality"] = minimality;

    json classification;
    classification["complete"] = r.classification_complete;
    classification["witness_cap"] = r.witness_cap;
    json families = json::array();
    for (const FamilyTally& f : r.families) {
        json fam;
        fam["family"] = family_name(f.family);
        fam["count"] = f.count;
        fam["predicted_total"] = f.predicted_total;
        if (f.subgq_order) {
            fam["subgq_order"] = json::array({f.subgq_order->first, f.subgq_order->second});
        }
        fam["samples"] = f.samples;
        if (r.geometric_checked) {
            json geo;
            geo["expected"] = f.geometric_expected;
            geo["holds"] = f.geometric_holds;
            geo["fails"] = f.geometric_fails;
            fam["geometric"] = geo;
        }
        families.push_back(std::move(fam));
    }
    classification["families"] = families;
    doc["classification"] = classification;

    json tb;
    tb["checked"] = r.geometric_checked;
    if (r.geometric_checked) tb["ok"] = r.geometric_ok;
    doc["theorem_b"] = tb;

    return doc.dump(2) + "\n";
}

std::string census_report_csv(const CensusReport& r) {
    std::ostringstream out;
    out << "family,count,predicted_total,subgq_s,subgq_t,"
           "geometric_expected,geometric_holds,geometric_fails\n";
    for (const FamilyTally& f : r.families) {
        out << family_name(f.family) << ',' << f.count << ',' << f.predicted_total << ',';
        if (f.subgq_order)
            out << f.subgq_order->first << ',' << f.subgq_order->second << ',';
        else
            out << ",,";
        out << (f.geometric_expected ? "true" : "false") << ',' << f.geometric_holds << ','
            << f.geometric_fails << '\n';
    }
    return out.str();
}

}  // namespace opp
