#pragma once

#include <vector>

#include "ffcone/rational.hpp"

namespace ffcone {

enum class HullCaseId { NoLargeSubspace, HalfDimSubspace };

const char* hull_case_name(HullCaseId id);

/// The two necessary-condition hulls in the exponent square.
/// NoLargeSubspace: (0,0), (0,1), ((d-1)/d, 1), P0 = ((d-1)/d, 1/d).
/// HalfDimSubspace: (0,0), (0,1), ((d-1)/d, 1),
///                  P1 = ((d-1)/d, 1/(d-2)),
///                  P2 = ((d^2-3d+2)/(d^2-2d+2), (d-2)/(d^2-2d+2)).
struct HullCase {
    HullCaseId id;
    int d;
    std::vector<ExponentPair> vertices;

    static HullCase no_large_subspace(int d);
    static HullCase half_dim_subspace(int d);

    static ExponentPair p0(int d);
    static ExponentPair p1(int d);
    static ExponentPair p2(int d);
};

enum class HullPosition { Inside, Boundary, Outside };

const char* hull_position_name(HullPosition pos);

/// Exact point-in-convex-polygon test; Boundary covers edges and
/// vertices.
HullPosition hull_classify(const ExponentPair& pair, const HullCase& hull);

/// Vertex centroid; lies strictly inside a nondegenerate hull.
ExponentPair hull_centroid(const HullCase& hull);

}  // namespace ffcone
