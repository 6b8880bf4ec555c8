#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "oms/image.h"

namespace oms {

struct FrameScore
{
  bool evaluated = false;  ///< false when the masked ground truth is empty
  double iou = 0.0;
  bool detected = false;
  std::size_t gt_area = 0;
  std::size_t pred_area = 0;
  std::size_t inter_area = 0;
  std::size_t outside_inter_area = 0;  ///< |pred & ~gt|
  double br = 0.0;                     ///< bf_ratio of the raw DVS frame

  friend bool operator==(const FrameScore &, const FrameScore &) = default;
};

struct SequenceReport
{
  double mean_iou = 0.0;        ///< percent
  double iou_std = 0.0;         ///< percent, population standard deviation
  double detection_rate = 0.0;  ///< percent
  std::size_t frames_evaluated = 0;
  std::size_t frames_skipped = 0;
  double br_mean = 0.0;
  std::vector<FrameScore> frames;

  friend bool operator==(const SequenceReport &, const SequenceReport &) = default;
};

/// |pred & gt| / |pred | gt|, or nullopt when both masks are empty.
std::optional<double> iou(const SegMask & pred, const SegMask & gt);

/// True iff |pred & gt| >= 0.5 |gt| and |pred & gt| > |pred & ~gt|.
/// nullopt when gt is empty (the frame is not scored).
std::optional<bool> detection(const SegMask & pred, const SegMask & gt);

/// Active DVS pixels outside gt divided by those inside; +inf when none
/// are inside.
double bf_ratio(const BinaryFrame & dvs_frame, const SegMask & gt);

/// Scores an already-masked prediction against an already-masked gt.
FrameScore score_frame(const SegMask & pred, const SegMask & gt);

/// Masks every DVS frame with the OMS output (prediction) and with the
/// motion mask (ground truth), then aggregates IoU and detection over the
/// frames whose masked ground truth is non-empty. Aggregates sum sorted
/// values, so consistently permuting all three inputs leaves them bitwise
/// unchanged.
SequenceReport evaluate_sequence(
  std::span<const SegMask> oms_outputs, std::span<const SegMask> motion_masks,
  std::span<const BinaryFrame> dvs_frames);

}  // namespace oms
