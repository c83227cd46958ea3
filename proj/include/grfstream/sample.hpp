#pragma once

#include <vector>

namespace grfstream {

/// One stream element: a real-valued feature vector plus a dense class id.
struct Sample {
    std::vector<double> features;
    int label = 0;
};

} // namespace grfstream
