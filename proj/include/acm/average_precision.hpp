#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "acm/geometry.hpp"
#include "acm/rotated_iou.hpp"

namespace acm {

struct Detection {
  std::string image_id;
  int class_id = 0;
  double score = 0.0;
  RotatedBox box;
};

struct GroundTruth {
  std::string image_id;
  int class_id = 0;
  RotatedBox box;
  bool difficult = false;
};

// COCO-style single-class AP with 101-point interpolation. Detections that
// only overlap difficult ground truth are dropped from the PR curve entirely.
inline double average_precision(const std::vector<Detection>& dets,
                                const std::vector<GroundTruth>& gts, double iou_thresh) {
  int n_pos = 0;
  std::map<std::string, std::vector<int>> by_image;
  for (size_t i = 0; i < gts.size(); ++i) {
    by_image[gts[i].image_id].push_back(static_cast<int>(i));
    if (!gts[i].difficult) ++n_pos;
  }
  if (n_pos == 0) return 0.0;

  std::vector<int> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&dets](int a, int b) { return dets[a].score > dets[b].score; });

  std::vector<bool> matched(gts.size(), false);
  std::vector<double> precisions;
  std::vector<double> recalls;
  int tp = 0;
  int fp = 0;
  for (int di : order) {
    const Detection& d = dets[di];
    const auto it = by_image.find(d.image_id);
    int best_gt = -1;
    double best_iou = 0.0;
    bool hits_difficult = false;
    if (it != by_image.end()) {
      for (int gi : it->second) {
        const GroundTruth& g = gts[gi];
        const double iou = skew_iou(d.box, g.box);
        if (iou < iou_thresh) continue;
        if (g.difficult) {
          hits_difficult = true;
        } else if (!matched[gi] && iou > best_iou) {
          best_iou = iou;
          best_gt = gi;
        }
      }
    }
    if (best_gt >= 0) {
      matched[best_gt] = true;
      ++tp;
    } else if (hits_difficult) {
      continue;
    } else {
      ++fp;
    }
    precisions.push_back(static_cast<double>(tp) / (tp + fp));
    recalls.push_back(static_cast<double>(tp) / n_pos);
  }

  double ap = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double r = k / 100.0;
    double best = 0.0;
    for (size_t i = 0; i < precisions.size(); ++i)
      if (recalls[i] >= r) best = std::max(best, precisions[i]);
    ap += best;
  }
  return ap / 101.0;
}

struct ApSuiteResult {
  std::map<int, double> ap50;
  std::map<int, double> ap75;
  std::map<int, double> ap5095;
  double mean_ap50 = 0.0;
  double mean_ap75 = 0.0;
  double mean_ap5095 = 0.0;
};

// Macro-averaged AP50 / AP75 / AP50:95 over every class with ground truth.
inline ApSuiteResult ap_suite(const std::vector<Detection>& dets,
                              const std::vector<GroundTruth>& gts) {
  std::set<int> classes;
  for (const GroundTruth& g : gts) classes.insert(g.class_id);

  ApSuiteResult res;
  for (int cls : classes) {
    std::vector<Detection> cd;
    std::vector<GroundTruth> cg;
    for (const Detection& d : dets)
      if (d.class_id == cls) cd.push_back(d);
    for (const GroundTruth& g : gts)
      if (g.class_id == cls) cg.push_back(g);

    res.ap50[cls] = average_precision(cd, cg, 0.50);
    res.ap75[cls] = average_precision(cd, cg, 0.75);
    double sum = 0.0;
    for (int k = 0; k < 10; ++k) sum += average_precision(cd, cg, (50 + 5 * k) / 100.0);
    res.ap5095[cls] = sum / 10.0;
  }
  if (!classes.empty()) {
    for (int cls : classes) {
      res.mean_ap50 += res.ap50[cls];
      res.mean_ap75 += res.ap75[cls];
      res.mean_ap5095 += res.ap5095[cls];
    }
    res.mean_ap50 /= classes.size();
    res.mean_ap75 /= classes.size();
    res.mean_ap5095 /= classes.size();
  }
  return res;
}

}  // namespace acm
