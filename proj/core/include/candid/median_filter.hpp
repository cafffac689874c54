#pragma once

#include "candid/plane.hpp"

namespace candid {

// Square median prefilter. Border samples come from edge replication;
// window = 1 is the identity.
struct MedianFilterSpec {
    int window = 7;
};

// Output pixel (x, y) is the exact median of the window x window neighborhood
// (odd sample count, so the median is always a single input value). Uses a
// sliding-histogram implementation that is bit-identical to gathering and
// sorting the neighborhood at every pixel.
Frame median_filter(const Frame& frame, const MedianFilterSpec& spec = {});

}  // namespace candid
