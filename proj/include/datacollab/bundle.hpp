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

// Flat matrix bundle used to export pipeline state.
//
// Binary layout, all integers little-endian:
//
//   bytes 0..7   magic "DCBUNDL1"
//   u32          number of entries
//   per entry:
//     u32        name length in bytes
//     bytes      name (UTF-8, no terminator)
//     u64        rows
//     u64        cols
//     f64[rows*cols]  entries in row-major order, IEEE-754 little-endian
//
// The CSV form writes one file per matrix: a "# name,rows,cols" header line
// followed by rows of comma-separated values printed with 17 significant
// digits, so the values round-trip exactly.

#ifndef DATACOLLAB_BUNDLE_HPP_
#define DATACOLLAB_BUNDLE_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "datacollab/numerics.hpp"
#include "datacollab/protocol.hpp"

namespace datacollab {

struct NamedMatrix {
  std::string name;
  Matrix value;
};

using Bundle = std::vector<NamedMatrix>;

void WriteBundle(const std::filesystem::path& path, std::span<const NamedMatrix> bundle);
Bundle ReadBundle(const std::filesystem::path& path);

void WriteMatrixCsv(const std::filesystem::path& path, const NamedMatrix& entry);
NamedMatrix ReadMatrixCsv(const std::filesystem::path& path);

// Everything the analyst receives from users: per party x_tilde,
// x_tilde_anc and y, named "party<id>/x_tilde" etc.
Bundle AnalystInputs(std::span<const IntermediateRep> reps);

// Analyst-held state: z, per-party g, and the kernel model.
Bundle AnalystState(const TrainedPipeline& pipeline);

// One user's private map: "party<id>/f" and "party<id>/center".
Bundle UserState(const TrainedPipeline& pipeline, PartyId party_id);

}  // namespace datacollab

#endif  // DATACOLLAB_BUNDLE_HPP_
