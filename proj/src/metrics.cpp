#include "oms/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "oms/oms.h"

namespace oms {

namespace {

struct Counts
{
  std::size_t pred = 0;
  std::size_t gt = 0;
  std::size_t inter = 0;
};

template <class A, class B>
Counts count_overlap(const A & pred, const B & gt)
{
  if (pred.geometry() != gt.geometry()) {
    throw ValidationError("mask dimensions differ");
  }
  Counts c;
  const auto p = pred.pixels();
  const auto g = gt.pixels();
  for (std::size_t i = 0; i < p.size(); ++i) {
    c.pred += p[i];
    c.gt += g[i];
    c.inter += p[i] & g[i];
  }
  return c;
}

// Sums in ascending order so the result does not depend on frame order.
double sorted_sum(std::vector<double> values)
{
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (double v : values) {
    total += v;
  }
  return total;
}

}  // namespace

std::optional<double> iou(const SegMask & pred, const SegMask & gt)
{
  const Counts c = count_overlap(pred, gt);
  const std::size_t uni = c.pred + c.gt - c.inter;
  if (uni == 0) {
    return std::nullopt;
  }
  return static_cast<double>(c.inter) / static_cast<double>(uni);
}

std::optional<bool> detection(const SegMask & pred, const SegMask & gt)
{
  const Counts c = count_overlap(pred, gt);
  if (c.gt == 0) {
    return std::nullopt;
  }
  const std::size_t outside = c.pred - c.inter;
  // 2*inter >= gt is the exact integer form of inter >= 0.5*gt
  return 2 * c.inter >= c.gt && c.inter > outside;
}

double bf_ratio(const BinaryFrame & dvs_frame, const SegMask & gt)
{
  const Counts c = count_overlap(dvs_frame, gt);
  const std::size_t inside = c.inter;
  const std::size_t outside = c.pred - c.inter;
  if (inside == 0) {
    return std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(outside) / static_cast<double>(inside);
}

FrameScore score_frame(const SegMask & pred, const SegMask & gt)
{
  const Counts c = count_overlap(pred, gt);
  FrameScore s;
  s.gt_area = c.gt;
  s.pred_area = c.pred;
  s.inter_area = c.inter;
  s.outside_inter_area = c.pred - c.inter;
  if (c.gt == 0) {
    return s;
  }
  s.evaluated = true;
  s.iou = static_cast<double>(c.inter) / static_cast<double>(c.pred + c.gt - c.inter);
  s.detected = 2 * c.inter >= c.gt && c.inter > s.outside_inter_area;
  return s;
}

SequenceReport evaluate_sequence(
  std::span<const SegMask> oms_outputs, std::span<const SegMask> motion_masks,
  std::span<const BinaryFrame> dvs_frames)
{
  if (oms_outputs.size() != motion_masks.size() || oms_outputs.size() != dvs_frames.size()) {
    throw ValidationError(
      "sequence lengths differ: " + std::to_string(oms_outputs.size()) + " predictions, " +
      std::to_string(motion_masks.size()) + " masks, " + std::to_string(dvs_frames.size()) + " frames");
  }

  SequenceReport report;
  report.frames.resize(dvs_frames.size());
  const long long n = static_cast<long long>(dvs_frames.size());
  // validate up front so the parallel loop cannot throw
  for (long long i = 0; i < n; ++i) {
    const auto & g = dvs_frames[i].geometry();
    if (oms_outputs[i].geometry() != g || motion_masks[i].geometry() != g) {
      throw ValidationError("frame " + std::to_string(i) + " dimensions differ between inputs");
    }
  }

#pragma omp parallel for schedule(static) if (n > 8)
  for (long long i = 0; i < n; ++i) {
    const SegMask pred = apply_mask(dvs_frames[i], oms_outputs[i]);
    const SegMask gt = apply_mask(dvs_frames[i], motion_masks[i]);
    FrameScore s = score_frame(pred, gt);
    if (s.evaluated) {
      s.br = bf_ratio(dvs_frames[i], motion_masks[i]);
    }
    report.frames[static_cast<std::size_t>(i)] = s;
  }

  std::vector<double> ious;
  std::vector<double> brs;
  std::size_t detected = 0;
  for (const FrameScore & s : report.frames) {
    if (!s.evaluated) {
      ++report.frames_skipped;
      continue;
    }
    ++report.frames_evaluated;
    ious.push_back(s.iou);
    brs.push_back(s.br);
    detected += s.detected ? 1 : 0;
  }
  if (report.frames_evaluated == 0) {
    return report;
  }

  const double count = static_cast<double>(report.frames_evaluated);
  const double mean = sorted_sum(ious) / count;
  for (double & v : ious) {
    v = (v - mean) * (v - mean);
  }
  report.mean_iou = 100.0 * mean;
  report.iou_std = 100.0 * std::sqrt(sorted_sum(ious) / count);
  report.detection_rate = 100.0 * static_cast<double>(detected) / count;
  report.br_mean = sorted_sum(brs) / count;
  return report;
}

}  // namespace oms
