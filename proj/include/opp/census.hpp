#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opp/catalog.hpp"

namespace opp {

struct CensusConfig {
    unsigned m = 2;                   // witness size searched for
    unsigned jobs = 0;                // 0: hardware concurrency
    std::uint64_t witness_cap = 64;   // samples kept per family; counts stay exact
    double time_budget = 0;           // wall seconds; 0: unlimited
    bool restrict_first = false;      // only witnesses containing vertex 0
    bool check_geometric = false;     // run the geometric-line pass per witness
};

struct SearchOutcome {
    std::vector<std::vector<std::uint32_t>> blockers;  // ascending tuples, lex order
    std::uint64_t nodes = 0;
    bool partial = false;
    std::uint32_t roots_completed = 0;  // contiguous prefix fully searched
    bool minimality_ok = true;
    std::vector<std::uint32_t> violation;  // a smaller set with no common opposite
};

// Exhaustive depth-first search over ascending vertex tuples for size-m
// sets with no common opposite object.  Candidate survivors are carried as
// a bitset and intersected per extension; the final level intersects
// non-opposition columns instead of walking every candidate.  Any proper
// subset that already kills all objects is a minimality violation: it is
// recorded and the search stops.
SearchOutcome find_blockers(const OppositionContext& opp, const CensusConfig& cfg);

struct FamilyTally {
    WitnessFamily family = WitnessFamily::Unclassified;
    std::uint64_t count = 0;
    std::uint64_t predicted_total = 0;  // count scaled by V/m when restricted
    std::optional<std::pair<unsigned, unsigned>> subgq_order;
    bool geometric_expected = true;
    std::uint64_t geometric_holds = 0;  // only filled by the geometric pass
    std::uint64_t geometric_fails = 0;
    std::vector<std::vector<std::uint32_t>> samples;
};

struct CensusReport {
    std::string geometry;
    unsigned m = 0;
    std::uint64_t num_vertices = 0, num_objects = 0, num_lines = 0;
    std::uint64_t nodes = 0;
    std::uint64_t num_blockers = 0;
    std::uint64_t predicted_blockers = 0;
    bool restricted = false;
    bool extrapolation_exact = true;  // the V/m scaling divided evenly
    bool partial = false;
    std::uint32_t roots_completed = 0;
    double seconds = 0;
    bool minimality_ok = true;
    std::vector<std::uint32_t> minimality_violation;
    bool classification_complete = true;  // nothing fell through the cascade
    bool geometric_checked = false;
    bool geometric_ok = true;  // every family matched its expectation
    std::uint64_t witness_cap = 0;
    std::vector<FamilyTally> families;

    bool violation_exit() const {
        return !minimality_ok || !classification_complete ||
               (geometric_checked && !geometric_ok);
    }
};

CensusReport run_census(const Geometry& geom, const CensusConfig& cfg);

}  // namespace opp
