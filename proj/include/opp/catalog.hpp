#pragma once

#include <optional>
#include <unordered_map>

#include "opp/geometry_id.hpp"

namespace opp {

// The classification families for minimal sets without a common opposite,
// tried in this order.  The first three are plain lines of the geometry;
// the residue families live inside the residue of the common subspace of
// the witness; the last four are ovoids or spreads of a subquadrangle.
enum class WitnessFamily {
    GrassmannLine,
    DualPolarLine,
    HalfSpinLine,
    HyperbolicLineInResidue,
    DualHyperbolicLineInResidue,
    OvoidInIdealSubGQ,
    SpreadInSubGQ,
    GQOvoidInSubGQ,
    GQSpreadInSubGQ,
    Unclassified,
};
const char* family_name(WitnessFamily f);

struct ClassifyResult {
    WitnessFamily family = WitnessFamily::Unclassified;
    unsigned common_dim = 0;  // vector dimension of the shared subspace, when used
    std::optional<std::pair<unsigned, unsigned>> subgq_order;
    unsigned transversals = 0;  // size of the transversal regulus, dual hyperbolic case
};

// Closure of a pairwise non-collinear point set T in a rank-2 incidence
// structure: X = T together with all {x,y}^perp for pairs in T, carrying
// the induced lines (ambient lines meeting X in at least 2 points).  The
// checks accept weak orders (thin lines included) and report the measured
// order verbatim.
struct SubGQ {
    bool ok = false;
    unsigned s = 0, t = 0;                  // measured order of the closure
    std::vector<std::uint32_t> xpoints;     // sorted point indices
    std::vector<std::vector<std::uint32_t>> xlines;  // induced lines
};
// T must hit every induced line exactly once and have size 1 + s*t of the
// measured closure order; the closure must satisfy the one-or-all axiom
// with unique joining lines, constant line size, constant point degree
// equal to the ambient degree, and the (1+s)(1+st) point count.
SubGQ ovoid_closure(const IncidenceGQ& gq, const std::vector<std::uint32_t>& tset);

// Hit-count audit for a confirmed ovoid witness: every ambient point sees
// exactly one member of T if it lies outside the closure or in T itself,
// and exactly t+1 members if it lies in the closure but not in T.
bool audit_ovoid_hits(const IncidenceGQ& gq, const std::vector<std::uint32_t>& tset,
                      const SubGQ& sub);

class Classifier {
public:
    explicit Classifier(const Geometry& geom);

    ClassifyResult classify(const std::vector<std::uint32_t>& witness);

    // A geometric line: a vertex set such that every object of the
    // opposite type is non-opposite to exactly one member or to all.
    bool is_geometric_line(const std::vector<std::uint32_t>& witness) const;

    // Families expected to fail the geometric-line test.
    static bool expected_geometric(WitnessFamily f);

private:
    const Geometry* geom_;
    std::unordered_map<Subspace, std::unique_ptr<Residue>, SubspaceHash> residues_;

    const Residue* residue_for(const Subspace& u);
    std::optional<Subspace> common_subspace(const std::vector<std::uint32_t>& witness,
                                            unsigned dim) const;

    bool hyperbolic_line_in_residue(const std::vector<std::uint32_t>& witness,
                                    ClassifyResult& out);
    bool dual_hyperbolic_line(const std::vector<std::uint32_t>& witness,
                              ClassifyResult& out);
    bool residue_ovoid(const std::vector<std::uint32_t>& witness, ClassifyResult& out);
    bool residue_spread(const std::vector<std::uint32_t>& witness, ClassifyResult& out);
    bool ambient_gq_ovoid(const std::vector<std::uint32_t>& witness, ClassifyResult& out);
    bool ambient_gq_spread(const std::vector<std::uint32_t>& witness, ClassifyResult& out);
};

}  // namespace opp
