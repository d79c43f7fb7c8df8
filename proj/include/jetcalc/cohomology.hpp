#pragma once

#include "jetcalc/jets.hpp"

#include <string>
#include <vector>

namespace jc {

struct TruncPosition {
    int p = 0;
    long dim_window = 0; // windowed cycle space at this position
    long dim_boundary = 0;
    bool contained = false; // windowed cycles lie inside boundaries
    bool asserted = false;  // whether `contained` feeds into ok
};

struct TruncCohReport {
    bool ok = false;
    int m = 0, r = 0, k = 0, d = 0, window = 0;
    long holonomic_dim = 0; // windowed kernel at position 0
    long prolong_dim = 0;   // jets of sections with coefficient degree <= window
    bool position0_ok = false;
    std::vector<TruncPosition> positions;
    std::string detail;
};

// Exactness bookkeeping for the operator-level complex
//   J^k --D--> T* (x) J^{k-1} --D--> wedge^2 T* (x) J^{k-2} --> ...
// over polynomial coefficients. The complex is restricted to coefficient
// degree <= d, cycles are windowed to degree <= d-k before the boundary test,
// and the final position is reported but not asserted. At position 0 the
// windowed kernel is compared against the jets of degree <= d-k sections.
TruncCohReport spencer_truncated_report(int m, int r, int k, int d);

} // namespace jc
