#pragma once

#include <string>

#include "opp/census.hpp"

namespace opp {

// Census reports are the scientific output: a versioned JSON document and
// a flat CSV family table.  Field order is fixed and no timing value other
// than `seconds` appears, so two runs with the same configuration diff
// clean apart from that one field.

std::string census_report_json(const CensusReport& r);
std::string census_report_csv(const CensusReport& r);

}  // namespace opp
