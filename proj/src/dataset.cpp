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

#include "datacollab/dataset.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numeric>
#include <string>

#include "datacollab/errors.hpp"

namespace datacollab {
namespace {

// gzread passes uncompressed files through unchanged, so one reader covers
// both .gz and raw IDX.
class GzReader {
 public:
  explicit GzReader(const std::filesystem::path& path)
      : path_(path.string()), file_(gzopen(path_.c_str(), "rb"), &gzclose) {
    if (!file_) throw FormatError("idx: cannot open " + path_);
  }

  void Read(void* dst, std::size_t n, const char* what) {
    auto* out = static_cast<unsigned char*>(dst);
    std::size_t done = 0;
    while (done < n) {
      const unsigned chunk = static_cast<unsigned>(std::min<std::size_t>(n - done, 1u << 30));
      const int got = gzread(file_.get(), out + done, chunk);
      if (got <= 0) {
        throw FormatError("idx: " + path_ + ": truncated " + what + " at byte offset " +
                          std::to_string(offset_ + done));
      }
      done += static_cast<std::size_t>(got);
    }
    offset_ += n;
  }

  std::uint32_t ReadBigEndian32(const char* what) {
    unsigned char b[4];
    Read(b, 4, what);
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
           (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
  }

  std::size_t offset() const { return offset_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::unique_ptr<gzFile_s, int (*)(gzFile)> file_;
  std::size_t offset_ = 0;
};

void CheckMagic(GzReader& in, std::uint32_t expected) {
  const std::uint32_t magic = in.ReadBigEndian32("magic");
  if (magic != expected) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "0x%08x (expected 0x%08x)", magic, expected);
    throw FormatError("idx: " + in.path() + ": bad magic " + buf + " at byte offset 0");
  }
}

}  // namespace

Matrix ReadIdxImages(const std::filesystem::path& path) {
  GzReader in(path);
  CheckMagic(in, kIdxImageMagic);
  const std::uint32_t count = in.ReadBigEndian32("image count");
  const std::uint32_t rows = in.ReadBigEndian32("row count");
  const std::uint32_t cols = in.ReadBigEndian32("column count");
  const std::size_t pixels = std::size_t{rows} * cols;
  std::vector<unsigned char> raw(std::size_t{count} * pixels);
  in.Read(raw.data(), raw.size(), "pixel payload");

  Matrix out(count, static_cast<Eigen::Index>(pixels));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < pixels; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          raw[i * pixels + j] / 255.0;
    }
  }
  return out;
}

Labels ReadIdxLabels(const std::filesystem::path& path) {
  GzReader in(path);
  CheckMagic(in, kIdxLabelMagic);
  const std::uint32_t count = in.ReadBigEndian32("label count");
  std::vector<unsigned char> raw(count);
  in.Read(raw.data(), raw.size(), "label payload");
  Labels out(raw.begin(), raw.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] > 9) {
      throw FormatError("idx: " + in.path() + ": label " + std::to_string(out[i]) +
                        " out of range at byte offset " + std::to_string(8 + i));
    }
  }
  return out;
}

LabeledData LoadMnist(const std::filesystem::path& images_path,
                      const std::filesystem::path& labels_path) {
  LabeledData out{ReadIdxImages(images_path), ReadIdxLabels(labels_path), 10};
  if (static_cast<std::size_t>(out.x.rows()) != out.labels.size()) {
    throw FormatError("idx: " + std::to_string(out.x.rows()) + " images but " +
                      std::to_string(out.labels.size()) + " labels (count field at byte offset 4)");
  }
  return out;
}

LabeledData GenerateSynthetic(Eigen::Index classes, Eigen::Index per_class, Eigen::Index dim,
                              double separation, Seed seed) {
  if (classes < 1 || per_class < 1 || dim < 1) {
    throw ArgumentError("generate_synthetic: counts must be >= 1");
  }
  if (classes > dim) throw ArgumentError("generate_synthetic: classes must not exceed dim");
  Rng rng(seed);
  const Eigen::Index n = classes * per_class;
  Matrix x = StandardNormal(n, dim, rng);
  Labels labels(static_cast<std::size_t>(n));
  const double offset = separation / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto c = static_cast<Label>(i / per_class);
    labels[static_cast<std::size_t>(i)] = c;
    x(i, c) += offset;
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::shuffle(order.begin(), order.end(), rng);
  return Subset(LabeledData{std::move(x), std::move(labels), classes}, order);
}

LabeledData Subset(const LabeledData& data, std::span<const Eigen::Index> rows) {
  LabeledData out{Matrix(static_cast<Eigen::Index>(rows.size()), data.x.cols()), {},
                  data.num_classes};
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= data.x.rows()) throw ArgumentError("subset: row out of range");
    out.x.row(static_cast<Eigen::Index>(i)) = data.x.row(rows[i]);
    out.labels.push_back(data.labels[static_cast<std::size_t>(rows[i])]);
  }
  return out;
}

LabeledData Head(const LabeledData& data, Eigen::Index count) {
  count = std::min(count, data.size());
  std::vector<Eigen::Index> rows(static_cast<std::size_t>(count));
  std::iota(rows.begin(), rows.end(), Eigen::Index{0});
  return Subset(data, rows);
}

}  // namespace datacollab
