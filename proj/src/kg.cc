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

#include "attnkg/kg.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace attnkg {

using json = nlohmann::json;

namespace {

std::string KeyPart(const std::optional<std::string> &id, char tag,
                    const std::string &fallback) {
  if (id) return std::string("e:") + *id;
  return std::string(1, tag) + ":" + fallback;
}

std::string FormatDegree(float d) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(d));
  return buf;
}

std::string DotQuote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  out += '"';
  return out;
}

// Witness preference among duplicates: higher degree, then earliest
// provenance, then surfaces.
bool Preferred(const OpenFact &a, const OpenFact &b) {
  if (a.normalized_degree != b.normalized_degree) {
    return a.normalized_degree > b.normalized_degree;
  }
  return std::tie(a.doc_id, a.sent_id, a.head_surface, a.relation_surface,
                  a.tail_surface) < std::tie(b.doc_id, b.sent_id,
                                             b.head_surface, b.relation_surface,
                                             b.tail_surface);
}

json OptString(const std::optional<std::string> &s) {
  return s ? json(*s) : json(nullptr);
}

std::optional<std::string> OptStringFrom(const json &j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>();
}

}  // namespace

std::string_view CategoryName(FactCategory c) {
  switch (c) {
    case FactCategory::kMapped: return "mapped";
    case FactCategory::kPartiallyUnmapped: return "partially_unmapped";
    case FactCategory::kCompletelyUnmapped: return "completely_unmapped";
  }
  return "completely_unmapped";
}

std::optional<FactCategory> ParseCategory(std::string_view name) {
  if (name == "mapped") return FactCategory::kMapped;
  if (name == "partially_unmapped") return FactCategory::kPartiallyUnmapped;
  if (name == "completely_unmapped") return FactCategory::kCompletelyUnmapped;
  return std::nullopt;
}

FactCategory Classify(bool head_linked, bool relation_mapped,
                      bool tail_linked) {
  if (head_linked && relation_mapped && tail_linked) {
    return FactCategory::kMapped;
  }
  if (!head_linked && !relation_mapped && !tail_linked) {
    return FactCategory::kCompletelyUnmapped;
  }
  return FactCategory::kPartiallyUnmapped;
}

OpenFact::Key OpenFact::DedupKey() const {
  return {KeyPart(head_entity, 's', NormalizeMention(head_surface)),
          KeyPart(relation_kg, 'p', relation_normalized),
          KeyPart(tail_entity, 's', NormalizeMention(tail_surface))};
}

bool OpenFact::CategoryConsistent() const {
  return category == Classify(head_entity.has_value(), relation_kg.has_value(),
                              tail_entity.has_value());
}

OpenFact ToOpenFact(const LinkedFact &lf) {
  OpenFact f;
  f.head_surface = lf.fact.head_surface();
  if (lf.head_link) f.head_entity = lf.head_link->entity_id;
  f.relation_surface = lf.fact.relation_surface();
  f.relation_kg = lf.relation_kg;
  f.relation_normalized = lf.relation_normalized;
  f.tail_surface = lf.fact.tail_surface();
  if (lf.tail_link) f.tail_entity = lf.tail_link->entity_id;
  f.normalized_degree = lf.fact.normalized_degree;
  f.doc_id = lf.fact.doc_id;
  f.sent_id = lf.fact.sent_id;
  f.category = Classify(f.head_entity.has_value(), f.relation_kg.has_value(),
                        f.tail_entity.has_value());
  return f;
}

OpenKG::OpenKG(std::vector<OpenFact> facts) : facts_(std::move(facts)) {
  for (size_t i = 0; i < facts_.size(); ++i) {
    const OpenFact &f = facts_[i];
    ++category_counts_[static_cast<size_t>(f.category)];
    if (f.head_entity && f.relation_kg) {
      by_slot_[{*f.head_entity, *f.relation_kg}].push_back(i);
    }
  }
}

std::vector<size_t> OpenKG::BySlot(const std::string &head_entity,
                                   const std::string &relation_kg) const {
  auto it = by_slot_.find({head_entity, relation_kg});
  return it == by_slot_.end() ? std::vector<size_t>{} : it->second;
}

std::vector<OpenFact> OpenKG::MappedFacts() const {
  std::vector<OpenFact> out;
  for (const OpenFact &f : facts_) {
    if (f.category == FactCategory::kMapped) out.push_back(f);
  }
  return out;
}

void MapRelations(std::vector<LinkedFact> &facts, const RelationMap &relmap) {
  for (LinkedFact &lf : facts) {
    lf.relation_kg = lf.relation_normalized.empty()
                         ? std::nullopt
                         : relmap.MapRelation(lf.relation_normalized);
  }
}

OpenKG AssembleOpenFacts(std::vector<OpenFact> facts) {
  std::map<std::pair<FactCategory, OpenFact::Key>, OpenFact> merged;
  for (OpenFact &f : facts) {
    f.category = Classify(f.head_entity.has_value(), f.relation_kg.has_value(),
                          f.tail_entity.has_value());
    auto key = std::make_pair(f.category, f.DedupKey());
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(std::move(key), std::move(f));
      continue;
    }
    int64_t support = it->second.support + f.support;
    if (Preferred(f, it->second)) it->second = std::move(f);
    it->second.support = support;
  }
  std::vector<OpenFact> out;
  out.reserve(merged.size());
  for (auto &[key, f] : merged) out.push_back(std::move(f));
  return OpenKG(std::move(out));
}

OpenKG Assemble(const std::vector<LinkedFact> &facts) {
  std::vector<OpenFact> open;
  open.reserve(facts.size());
  for (const LinkedFact &lf : facts) open.push_back(ToOpenFact(lf));
  return AssembleOpenFacts(std::move(open));
}

std::optional<ExportFormat> ParseExportFormat(std::string_view name) {
  if (name == "jsonl") return ExportFormat::kJsonl;
  if (name == "tsv") return ExportFormat::kTsv;
  if (name == "dot") return ExportFormat::kDot;
  return std::nullopt;
}

json OpenFactToJson(const OpenFact &f) {
  return {{"category", CategoryName(f.category)},
          {"head_surface", f.head_surface},
          {"head_entity", OptString(f.head_entity)},
          {"relation_surface", f.relation_surface},
          {"relation_kg", OptString(f.relation_kg)},
          {"relation_normalized", f.relation_normalized},
          {"tail_surface", f.tail_surface},
          {"tail_entity", OptString(f.tail_entity)},
          {"normalized_degree", f.normalized_degree},
          {"doc_id", f.doc_id},
          {"sent_id", f.sent_id},
          {"support", f.support}};
}

OpenFact OpenFactFromJson(const json &j) {
  OpenFact f;
  auto cat = ParseCategory(j.at("category").get<std::string>());
  if (!cat) throw Error("unknown category");
  f.category = *cat;
  f.head_surface = j.at("head_surface").get<std::string>();
  f.head_entity = OptStringFrom(j.at("head_entity"));
  f.relation_surface = j.at("relation_surface").get<std::string>();
  f.relation_kg = OptStringFrom(j.at("relation_kg"));
  f.relation_normalized = j.at("relation_normalized").get<std::string>();
  f.tail_surface = j.at("tail_surface").get<std::string>();
  f.tail_entity = OptStringFrom(j.at("tail_entity"));
  f.normalized_degree = j.at("normalized_degree").get<float>();
  f.doc_id = j.at("doc_id").get<std::string>();
  f.sent_id = j.at("sent_id").get<int64_t>();
  f.support = j.at("support").get<int64_t>();
  if (!f.CategoryConsistent()) throw Error("category disagrees with links");
  return f;
}

size_t Export(const OpenKG &kg, ExportFormat format, std::ostream &out) {
  std::ostringstream buf;
  switch (format) {
    case ExportFormat::kJsonl:
      for (const OpenFact &f : kg.facts()) {
        buf << OpenFactToJson(f).dump() << '\n';
      }
      break;
    case ExportFormat::kTsv:
      for (const OpenFact &f : kg.facts()) {
        buf << f.head_entity.value_or(f.head_surface) << '\t'
            << f.relation_kg.value_or(f.relation_surface) << '\t'
            << f.tail_entity.value_or(f.tail_surface) << '\t'
            << CategoryName(f.category) << '\t'
            << FormatDegree(f.normalized_degree) << '\n';
      }
      break;
    case ExportFormat::kDot:
      buf << "digraph open_kg {\n";
      for (const OpenFact &f : kg.facts()) {
        buf << "  " << DotQuote(f.head_entity.value_or(f.head_surface))
            << " -> " << DotQuote(f.tail_entity.value_or(f.tail_surface))
            << " [label="
            << DotQuote(f.relation_kg.value_or(f.relation_surface))
            << ", schema="
            << (f.category == FactCategory::kMapped ? "fixed" : "open")
            << "];\n";
      }
      buf << "}\n";
      break;
  }
  const std::string bytes = buf.str();
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing knowledge graph");
  return bytes.size();
}

OpenKG ReadOpenKGJsonl(std::istream &in) {
  std::vector<OpenFact> facts;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      facts.push_back(OpenFactFromJson(json::parse(line)));
    } catch (const std::exception &e) {
      throw Error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return OpenKG(std::move(facts));
}

OpenKG ReadOpenKGFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return ReadOpenKGJsonl(in);
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace attnkg
