// Copyright 2026 The attnkg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ATTNKG_KG_H_
#define ATTNKG_KG_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "attnkg/linker.h"
#include "attnkg/relmap.h"
#include "json.hpp"

namespace attnkg {

enum class FactCategory { kMapped, kPartiallyUnmapped, kCompletelyUnmapped };

std::string_view CategoryName(FactCategory c);
std::optional<FactCategory> ParseCategory(std::string_view name);

// Mapped when all three slots are in the KG schema, completely unmapped when
// none is, partially unmapped otherwise.
FactCategory Classify(bool head_linked, bool relation_mapped, bool tail_linked);

struct OpenFact {
  FactCategory category = FactCategory::kCompletelyUnmapped;
  std::string head_surface;
  std::optional<std::string> head_entity;
  std::string relation_surface;
  std::optional<std::string> relation_kg;
  std::string relation_normalized;
  std::string tail_surface;
  std::optional<std::string> tail_entity;
  float normalized_degree = 0.0f;
  std::string doc_id;
  int64_t sent_id = 0;
  // Number of duplicate facts merged into this one.
  int64_t support = 1;

  using Key = std::tuple<std::string, std::string, std::string>;
  // Entity ids where present, normalized surfaces otherwise.
  Key DedupKey() const;
  bool CategoryConsistent() const;

  bool operator==(const OpenFact &) const = default;
};

OpenFact ToOpenFact(const LinkedFact &fact);

class OpenKG {
 public:
  OpenKG() = default;
  // Facts must already be deduplicated and ordered; see Assemble().
  explicit OpenKG(std::vector<OpenFact> facts);

  const std::vector<OpenFact> &facts() const { return facts_; }
  size_t size() const { return facts_.size(); }

  size_t CountCategory(FactCategory c) const {
    return category_counts_[static_cast<size_t>(c)];
  }
  // Indices of facts with the given (head_entity, relation_kg).
  std::vector<size_t> BySlot(const std::string &head_entity,
                             const std::string &relation_kg) const;
  std::vector<OpenFact> MappedFacts() const;

  bool operator==(const OpenKG &other) const { return facts_ == other.facts_; }

 private:
  std::vector<OpenFact> facts_;
  std::array<size_t, 3> category_counts_{};
  std::map<std::pair<std::string, std::string>, std::vector<size_t>> by_slot_;
};

// Sets relation_kg on every fact from the curated relation map.
void MapRelations(std::vector<LinkedFact> &facts, const RelationMap &relmap);

// One OpenFact per input, duplicates merged into their highest-degree
// witness, ordered by (category, key).
OpenKG Assemble(const std::vector<LinkedFact> &facts);
OpenKG AssembleOpenFacts(std::vector<OpenFact> facts);

enum class ExportFormat { kJsonl, kTsv, kDot };
std::optional<ExportFormat> ParseExportFormat(std::string_view name);

nlohmann::json OpenFactToJson(const OpenFact &fact);
OpenFact OpenFactFromJson(const nlohmann::json &j);

// Returns the number of bytes written.
size_t Export(const OpenKG &kg, ExportFormat format, std::ostream &out);

OpenKG ReadOpenKGJsonl(std::istream &in);
OpenKG ReadOpenKGFile(const std::string &path);

}  // namespace attnkg

#endif  // ATTNKG_KG_H_
