// Copyright 2026 The DataCollab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DATACOLLAB_DATASET_HPP_
#define DATACOLLAB_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "datacollab/learner.hpp"
#include "datacollab/numerics.hpp"
#include "datacollab/random.hpp"

namespace datacollab {

struct LabeledData {
  Matrix x;
  Labels labels;
  Eigen::Index num_classes = 0;

  Eigen::Index size() const { return x.rows(); }
};

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

// IDX image file (optionally gzip-compressed) as a count x (rows*cols)
// matrix with pixels scaled to [0, 1]. Throws FormatError naming the byte
// offset on bad magic or a truncated payload.
Matrix ReadIdxImages(const std::filesystem::path& path);
Labels ReadIdxLabels(const std::filesystem::path& path);

// Reads an image/label file pair and checks the counts agree.
LabeledData LoadMnist(const std::filesystem::path& images_path,
                      const std::filesystem::path& labels_path);

// Gaussian blobs with unit within-class variance. Class c has mean
// (separation / sqrt(2)) * e_c, so every pair of class means is exactly
// `separation` apart. Rows are shuffled. Requires classes <= dim.
LabeledData GenerateSynthetic(Eigen::Index classes, Eigen::Index per_class, Eigen::Index dim,
                              double separation, Seed seed);

// Rows selected by index, in the given order.
LabeledData Subset(const LabeledData& data, std::span<const Eigen::Index> rows);
LabeledData Head(const LabeledData& data, Eigen::Index count);

}  // namespace datacollab

#endif  // DATACOLLAB_DATASET_HPP_
