// Prints the parameter regions of the Werner and qutrit isotropic families.

#include <cstdio>

#include "densecode/densecode.hpp"

int main() {
    using namespace densecode;
    for (const StateFamily& family : {StateFamily::make_werner(), StateFamily::make_isotropic(3)}) {
        const RegionMap map = build_region_map(family, 1000);
        std::printf("%s (dense coding from p = %.6f)\n", family.label().c_str(), map.dense_coding_threshold);
        for (const Segment& s : map.segments) {
            std::printf("  %c%.6f, %.6f%c  %s%s\n", s.lo_closed ? '[' : '(', s.lo, s.hi, s.hi_closed ? ']' : ')',
                        s.labels.steerable ? "steerable" : "unsteerable",
                        s.labels.dense_codeable ? " + dense-codeable" : "");
        }
    }
    const ProtocolOutcome out = controlled_dense_coding_run(ControlBasis(0.3));
    std::printf("controlled dense coding at theta = 0.3: success %.6f\n", out.success_probability);
}
