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

#include "datacollab/bundle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "datacollab/errors.hpp"

namespace datacollab {
namespace {

constexpr std::array<char, 8> kMagic = {'D', 'C', 'B', 'U', 'N', 'D', 'L', '1'};

template <typename T>
void PutLe(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T GetLe(std::istream& in, const std::string& what) {
  std::array<unsigned char, sizeof(T)> bytes{};
  const auto offset = static_cast<long long>(in.tellg());
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) {
    throw FormatError("bundle: truncated " + what + " at byte offset " + std::to_string(offset));
  }
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

std::string PartyPrefix(PartyId id) { return "party" + std::to_string(id) + "/"; }

}  // namespace

void WriteBundle(const std::filesystem::path& path, std::span<const NamedMatrix> bundle) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("bundle: cannot open " + path.string() + " for writing");
  out.write(kMagic.data(), kMagic.size());
  PutLe<std::uint32_t>(out, static_cast<std::uint32_t>(bundle.size()));
  for (const NamedMatrix& entry : bundle) {
    PutLe<std::uint32_t>(out, static_cast<std::uint32_t>(entry.name.size()));
    out.write(entry.name.data(), static_cast<std::streamsize>(entry.name.size()));
    PutLe<std::uint64_t>(out, static_cast<std::uint64_t>(entry.value.rows()));
    PutLe<std::uint64_t>(out, static_cast<std::uint64_t>(entry.value.cols()));
    for (Eigen::Index i = 0; i < entry.value.rows(); ++i) {
      for (Eigen::Index j = 0; j < entry.value.cols(); ++j) {
        PutLe<std::uint64_t>(out, std::bit_cast<std::uint64_t>(entry.value(i, j)));
      }
    }
  }
  if (!out) throw FormatError("bundle: write failed for " + path.string());
}

Bundle ReadBundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("bundle: cannot open " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw FormatError("bundle: bad magic at byte offset 0");

  const auto count = GetLe<std::uint32_t>(in, "entry count");
  Bundle out;
  out.reserve(count);
  for (std::uint32_t e = 0; e < count; ++e) {
    const auto name_len = GetLe<std::uint32_t>(in, "name length");
    std::string name(name_len, '\0');
    in.read(name.data(), name_len);
    if (!in) throw FormatError("bundle: truncated name of entry " + std::to_string(e));
    const auto rows = GetLe<std::uint64_t>(in, "row count");
    const auto cols = GetLe<std::uint64_t>(in, "column count");
    Matrix value(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < value.rows(); ++i) {
      for (Eigen::Index j = 0; j < value.cols(); ++j) {
        value(i, j) = std::bit_cast<double>(GetLe<std::uint64_t>(in, "matrix entry"));
      }
    }
    out.push_back({std::move(name), std::move(value)});
  }
  return out;
}

void WriteMatrixCsv(const std::filesystem::path& path, const NamedMatrix& entry) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("csv: cannot open " + path.string() + " for writing");
  out << "# " << entry.name << ',' << entry.value.rows() << ',' << entry.value.cols() << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < entry.value.rows(); ++i) {
    for (Eigen::Index j = 0; j < entry.value.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", entry.value(i, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

NamedMatrix ReadMatrixCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("csv: cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  if (header.rfind("# ", 0) != 0) throw FormatError("csv: missing '# name,rows,cols' header");
  const auto c2 = header.rfind(',');
  const auto c1 = header.rfind(',', c2 - 1);
  if (c1 == std::string::npos || c2 == std::string::npos || c1 < 2) {
    throw FormatError("csv: malformed header '" + header + "'");
  }
  NamedMatrix out;
  out.name = header.substr(2, c1 - 2);
  const long rows = std::stol(header.substr(c1 + 1, c2 - c1 - 1));
  const long cols = std::stol(header.substr(c2 + 1));
  out.value.resize(rows, cols);
  std::string line;
  for (long i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw FormatError("csv: expected " + std::to_string(rows) + " rows");
    std::istringstream fields(line);
    std::string cell;
    for (long j = 0; j < cols; ++j) {
      if (!std::getline(fields, cell, ',')) {
        throw FormatError("csv: row " + std::to_string(i) + " is short");
      }
      out.value(i, j) = std::stod(cell);
    }
  }
  return out;
}

Bundle AnalystInputs(std::span<const IntermediateRep> reps) {
  Bundle out;
  for (const IntermediateRep& rep : reps) {
    const std::string prefix = PartyPrefix(rep.party_id);
    out.push_back({prefix + "x_tilde", rep.x_tilde});
    out.push_back({prefix + "x_tilde_anc", rep.x_tilde_anc});
    out.push_back({prefix + "y", rep.y});
  }
  return out;
}

Bundle AnalystState(const TrainedPipeline& pipeline) {
  Bundle out;
  out.push_back({"z", pipeline.collaboration.z});
  for (std::size_t i = 0; i < pipeline.party_ids.size(); ++i) {
    out.push_back({PartyPrefix(pipeline.party_ids[i]) + "g", pipeline.collaboration.g[i]});
  }
  out.push_back({"model/support", pipeline.model.support});
  out.push_back({"model/dual", pipeline.model.dual});
  out.push_back({"model/scales", pipeline.model.scales});
  Matrix params(1, 2);
  params << pipeline.model.lambda, static_cast<double>(pipeline.model.knn_k);
  out.push_back({"model/lambda_knn", params});
  return out;
}

Bundle UserState(const TrainedPipeline& pipeline, PartyId party_id) {
  const auto it = std::find(pipeline.party_ids.begin(), pipeline.party_ids.end(), party_id);
  if (it == pipeline.party_ids.end()) {
    throw ArgumentError("user_state: unknown party id " + std::to_string(party_id));
  }
  const LinearMap& map = pipeline.maps[static_cast<std::size_t>(it - pipeline.party_ids.begin())];
  const std::string prefix = PartyPrefix(party_id);
  return {{prefix + "f", map.f_matrix()}, {prefix + "center", map.center()}};
}

}  // namespace datacollab
