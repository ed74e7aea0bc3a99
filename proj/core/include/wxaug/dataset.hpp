#pragma once

#include <string>
#include <vector>

#include "wxaug/eval.hpp"
#include "wxaug/frame.hpp"

namespace wxaug {

/// A fully materialized dataset image: decoded frame plus its labels.
struct DatasetImage {
  std::string image_id;
  Frame frame;
  std::vector<GroundTruthBox> ground_truth;
};

using Dataset = std::vector<DatasetImage>;

/// All ground truth of a dataset in one list (image_ids already set).
std::vector<GroundTruthBox> all_ground_truth(const Dataset& dataset);

}  // namespace wxaug
