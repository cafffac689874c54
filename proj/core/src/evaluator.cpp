#include "candid/evaluator.hpp"

#include <cstdio>

#include "candid/frame_io.hpp"

namespace candid {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& other) {
    tp += other.tp;
    fp += other.fp;
    tn += other.tn;
    fn += other.fn;
    return *this;
}

void accumulate(const MaskFrame& mask, const GroundTruthFrame& gt, ConfusionCounts& counts) {
    if (!mask.same_dims(gt))
        throw DataError("accumulate: mask is " + std::to_string(mask.width()) + "x" +
                        std::to_string(mask.height()) + " but ground truth is " +
                        std::to_string(gt.width()) + "x" + std::to_string(gt.height()));
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const std::uint8_t label = gt[i];
        if (label == 85 || label == 170) continue;  // outside ROI / unknown
        const bool positive = label == 255;         // 0 and 50 (shadow) are negatives
        const bool predicted = mask[i] != 0;
        if (positive)
            predicted ? ++counts.tp : ++counts.fn;
        else
            predicted ? ++counts.fp : ++counts.tn;
    }
}

Metrics compute_metrics(const ConfusionCounts& counts) {
    const std::uint64_t total = counts.total();
    if (total == 0) throw DataError("no pixels were scored (all excluded or empty input)");
    Metrics m;
    auto ratio = [&m](std::uint64_t num, std::uint64_t den) {
        if (den == 0) {
            m.degenerate = true;
            return 0.0;
        }
        return static_cast<double>(num) / static_cast<double>(den);
    };
    m.pr = ratio(counts.tp, counts.tp + counts.fp);
    m.re = ratio(counts.tp, counts.tp + counts.fn);
    if (m.pr + m.re > 0.0)
        m.fm = 2.0 * m.pr * m.re / (m.pr + m.re);
    else
        m.degenerate = true;
    m.sp = ratio(counts.tn, counts.tn + counts.fp);
    m.pwc = 100.0 * static_cast<double>(counts.fp + counts.fn) / static_cast<double>(total);
    return m;
}

SequenceScore evaluate_sequence(const std::filesystem::path& mask_dir,
                                const std::filesystem::path& gt_dir,
                                const std::string& mask_pattern, const std::string& gt_pattern,
                                std::uint64_t skip_frames, const std::string& name) {
    auto mask_paths = list_files(mask_dir, mask_pattern);
    auto gt_paths = list_files(gt_dir, gt_pattern);
    if (mask_paths.size() != gt_paths.size())
        throw DataError("frame count mismatch: " + std::to_string(mask_paths.size()) +
                        " masks in " + mask_dir.string() + " vs " +
                        std::to_string(gt_paths.size()) + " ground-truth frames in " +
                        gt_dir.string());
    if (skip_frames >= mask_paths.size())
        throw DataError("skipping " + std::to_string(skip_frames) + " of " +
                        std::to_string(mask_paths.size()) + " frames leaves nothing to score");

    SequenceScore score;
    score.name = name;
    for (std::size_t i = skip_frames; i < mask_paths.size(); ++i) {
        MaskFrame mask = read_mask(mask_paths[i]);
        GroundTruthFrame gt = read_ground_truth(gt_paths[i]);
        accumulate(mask, gt, score.counts);
        ++score.frames_scored;
    }
    score.metrics = compute_metrics(score.counts);
    return score;
}

Metrics aggregate_metrics(const std::vector<SequenceScore>& scores) {
    if (scores.empty()) throw DataError("no sequences to aggregate");
    Metrics avg;
    for (const auto& score : scores) {
        avg.pr += score.metrics.pr;
        avg.re += score.metrics.re;
        avg.fm += score.metrics.fm;
        avg.sp += score.metrics.sp;
        avg.pwc += score.metrics.pwc;
        avg.degenerate = avg.degenerate || score.metrics.degenerate;
    }
    const double count = static_cast<double>(scores.size());
    avg.pr /= count;
    avg.re /= count;
    avg.fm /= count;
    avg.sp /= count;
    avg.pwc /= count;
    return avg;
}

std::string metrics_csv(const std::vector<SequenceScore>& scores) {
    std::string csv = "sequence,pr,re,fm,sp,pwc\n";
    auto append = [&csv](const std::string& name, const Metrics& m) {
        char values[128];
        std::snprintf(values, sizeof(values), ",%.4f,%.4f,%.4f,%.4f,%.4f\n", m.pr, m.re, m.fm,
                      m.sp, m.pwc);
        csv += name;
        csv += values;
    };
    for (const auto& score : scores) append(score.name, score.metrics);
    append("__avg__", aggregate_metrics(scores));
    return csv;
}

}  // namespace candid
