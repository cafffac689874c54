#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "candid/plane.hpp"

namespace candid {

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const { return tp + fp + tn + fn; }
    ConfusionCounts& operator+=(const ConfusionCounts& other);
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// Score mask (0/1) against ground truth. Label 255 is a positive, 0 and 50
// (shadow) are negatives, 85 (outside region of interest) and 170 (unknown)
// are skipped entirely.
void accumulate(const MaskFrame& mask, const GroundTruthFrame& gt, ConfusionCounts& counts);

struct Metrics {
    double pr = 0.0;
    double re = 0.0;
    double fm = 0.0;
    double sp = 0.0;
    double pwc = 0.0;         // percent, [0, 100]
    bool degenerate = false;  // some ratio was 0/0 and reported as 0

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

// pr = tp/(tp+fp), re = tp/(tp+fn), fm = 2*pr*re/(pr+re), sp = tn/(tn+fp),
// pwc = 100*(fp+fn)/total. Any 0/0 becomes 0 and sets the degenerate flag.
// Throws DataError when no pixels were scored.
Metrics compute_metrics(const ConfusionCounts& counts);

struct SequenceScore {
    std::string name;
    Metrics metrics;
    ConfusionCounts counts;
    std::uint64_t frames_scored = 0;
};

// Score a directory of predicted masks against a directory of ground-truth
// frames, pairing files by sorted order. The first skip_frames pairs are
// excluded (warm-up). Throws DataError on count or dimension mismatch.
SequenceScore evaluate_sequence(const std::filesystem::path& mask_dir,
                                const std::filesystem::path& gt_dir,
                                const std::string& mask_pattern, const std::string& gt_pattern,
                                std::uint64_t skip_frames, const std::string& name);

// Unweighted mean of the per-sequence metrics; degenerate if any input is.
Metrics aggregate_metrics(const std::vector<SequenceScore>& scores);

// CSV with header `sequence,pr,re,fm,sp,pwc`, one row per sequence and a
// final `__avg__` row, values with 4 decimal places.
std::string metrics_csv(const std::vector<SequenceScore>& scores);

}  // namespace candid
