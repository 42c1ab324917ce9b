// Classify a few expectation points for the two-projector example and dump
// a small sample of the region boundary.

#include <cstdio>

#include "qbound/geometry.hpp"
#include "qbound/operators.hpp"

int main() {
    using namespace qbound;

    const OperatorSet ops = fig1_set();
    auto [p, q] = fig1_projectors();
    std::printf("tr(PQ) = %.12f\n", (p * q).trace().real());

    for (const auto& point : {std::vector<double>{0.8, 0.8}, {0.0, 0.0}, {0.5, 0.3}}) {
        const MembershipVerdict v = membership(point, ops);
        std::printf("point (%.2f, %.2f): %s  margin % .6f\n", point[0], point[1],
                    v.inside ? "inside " : "outside", v.margin);
    }

    std::puts("\ndirection -> touch point, support:");
    for (const BoundarySample& s : boundary_sample(ops, 8, 1)) {
        std::printf("  (% .4f, % .4f) -> (%.6f, %.6f)  h = %.6f\n", s.direction[0], s.direction[1],
                    s.touch[0], s.touch[1], s.support);
    }
    return 0;
}
