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

#include "attnkg/fact_io.h"

#include <fstream>

namespace attnkg {

using json = nlohmann::json;

namespace {

json ChunkToJson(const NounChunk &c) {
  json j = {{"first_token", c.first_token},
            {"last_token", c.last_token},
            {"surface", c.surface}};
  if (c.resolved_surface) j["resolved_surface"] = *c.resolved_surface;
  return j;
}

NounChunk ChunkFromJson(const json &j) {
  NounChunk c;
  c.first_token = j.at("first_token").get<int>();
  c.last_token = j.at("last_token").get<int>();
  c.surface = j.at("surface").get<std::string>();
  if (auto it = j.find("resolved_surface"); it != j.end() && !it->is_null()) {
    c.resolved_surface = it->get<std::string>();
  }
  return c;
}

json LinkToJson(const std::optional<EntityLink> &link) {
  if (!link) return nullptr;
  return {{"entity_id", link->entity_id},
          {"prior", link->prior},
          {"context_sim", link->context_sim},
          {"score", link->score}};
}

std::optional<EntityLink> LinkFromJson(const json &j) {
  if (j.is_null()) return std::nullopt;
  return EntityLink{j.at("entity_id").get<std::string>(),
                    j.at("prior").get<float>(), j.at("context_sim").get<float>(),
                    j.at("score").get<float>()};
}

template <typename T, typename Decode>
std::vector<T> ReadJsonLines(std::istream &in, Decode decode) {
  std::vector<T> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      out.push_back(decode(json::parse(line)));
    } catch (const json::exception &e) {
      throw Error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::ifstream OpenIn(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

std::ofstream OpenOut(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

}  // namespace

json CandidateToJson(const CandidateFact &f) {
  json tokens = json::array();
  for (const TokenAnnotation &t : f.relation_tokens) {
    tokens.push_back({{"text", t.text},
                      {"lemma", t.lemma},
                      {"pos", t.pos},
                      {"char_start", t.char_start},
                      {"char_end", t.char_end}});
  }
  return {{"doc_id", f.doc_id},
          {"sent_id", f.sent_id},
          {"head", ChunkToJson(f.head)},
          {"tail", ChunkToJson(f.tail)},
          {"direction", DirectionName(f.direction)},
          {"relation_positions", f.relation_positions},
          {"relation_tokens", std::move(tokens)},
          {"sentence_tokens", f.sentence_tokens},
          {"raw_degree", f.raw_degree},
          {"normalized_degree", f.normalized_degree},
          {"head_surface", f.head_surface()},
          {"relation_surface", f.relation_surface()},
          {"tail_surface", f.tail_surface()}};
}

CandidateFact CandidateFromJson(const json &j) {
  CandidateFact f;
  f.doc_id = j.at("doc_id").get<std::string>();
  f.sent_id = j.at("sent_id").get<int64_t>();
  f.head = ChunkFromJson(j.at("head"));
  f.tail = ChunkFromJson(j.at("tail"));
  auto dir = ParseDirection(j.at("direction").get<std::string>());
  if (!dir) throw Error("unknown direction");
  f.direction = *dir;
  f.relation_positions = j.at("relation_positions").get<std::vector<int>>();
  for (const json &t : j.at("relation_tokens")) {
    f.relation_tokens.push_back({t.at("text").get<std::string>(),
                                 t.at("lemma").get<std::string>(),
                                 t.at("pos").get<std::string>(),
                                 t.at("char_start").get<int64_t>(),
                                 t.at("char_end").get<int64_t>()});
  }
  f.sentence_tokens = j.at("sentence_tokens").get<std::vector<std::string>>();
  f.raw_degree = j.at("raw_degree").get<float>();
  f.normalized_degree = j.at("normalized_degree").get<float>();
  return f;
}

json LinkedToJson(const LinkedFact &lf) {
  json j = CandidateToJson(lf.fact);
  j["relation_normalized"] = lf.relation_normalized;
  j["head_link"] = LinkToJson(lf.head_link);
  j["tail_link"] = LinkToJson(lf.tail_link);
  j["relation_kg"] = lf.relation_kg ? json(*lf.relation_kg) : json(nullptr);
  return j;
}

LinkedFact LinkedFromJson(const json &j) {
  LinkedFact lf;
  lf.fact = CandidateFromJson(j);
  lf.relation_normalized = j.at("relation_normalized").get<std::string>();
  lf.head_link = LinkFromJson(j.at("head_link"));
  lf.tail_link = LinkFromJson(j.at("tail_link"));
  if (const json &r = j.at("relation_kg"); !r.is_null()) {
    lf.relation_kg = r.get<std::string>();
  }
  return lf;
}

json RejectedToJson(const RejectedFact &r) {
  json j = CandidateToJson(r.fact);
  j["reason"] = RejectReasonName(r.reason);
  return j;
}

void WriteCandidates(const std::vector<CandidateFact> &facts,
                     std::ostream &out) {
  for (const CandidateFact &f : facts) out << CandidateToJson(f).dump() << '\n';
  if (!out) throw Error("failed writing candidate facts");
}

std::vector<CandidateFact> ReadCandidates(std::istream &in) {
  return ReadJsonLines<CandidateFact>(in, CandidateFromJson);
}

void WriteLinked(const std::vector<LinkedFact> &facts, std::ostream &out) {
  for (const LinkedFact &f : facts) out << LinkedToJson(f).dump() << '\n';
  if (!out) throw Error("failed writing linked facts");
}

std::vector<LinkedFact> ReadLinked(std::istream &in) {
  return ReadJsonLines<LinkedFact>(in, LinkedFromJson);
}

void WriteCandidatesFile(const std::vector<CandidateFact> &facts,
                         const std::string &path) {
  std::ofstream out = OpenOut(path);
  WriteCandidates(facts, out);
}

std::vector<CandidateFact> ReadCandidatesFile(const std::string &path) {
  std::ifstream in = OpenIn(path);
  try {
    return ReadCandidates(in);
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
}

void WriteLinkedFile(const std::vector<LinkedFact> &facts,
                     const std::string &path) {
  std::ofstream out = OpenOut(path);
  WriteLinked(facts, out);
}

std::vector<LinkedFact> ReadLinkedFile(const std::string &path) {
  std::ifstream in = OpenIn(path);
  try {
    return ReadLinked(in);
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
}

void WriteRejectedFile(const std::vector<RejectedFact> &facts,
                       const std::string &path) {
  std::ofstream out = OpenOut(path);
  for (const RejectedFact &r : facts) out << RejectedToJson(r).dump() << '\n';
  if (!out) throw Error("failed writing " + path);
}

}  // namespace attnkg
