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

#include "attnkg/corpus.h"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "attnkg/codec.h"
#include "json.hpp"

namespace attnkg {

using json = nlohmann::json;

namespace {

constexpr std::array<std::string_view, 17> kUniversalPos = {
    "ADJ",  "ADP",   "ADV",  "AUX",  "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON",  "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};

RecordError MakeError(RecordErrorKind kind, size_t line, std::string message) {
  return RecordError{kind, line, std::move(message)};
}

std::string_view LayoutName(AttentionLayout layout) {
  return layout == AttentionLayout::kReduced ? "reduced" : "per_head";
}

}  // namespace

std::string_view HeadReductionName(HeadReduction r) {
  switch (r) {
    case HeadReduction::kNone: return "none";
    case HeadReduction::kMean: return "mean";
    case HeadReduction::kMax: return "max";
  }
  return "none";
}

std::optional<HeadReduction> ParseHeadReduction(std::string_view name) {
  if (name == "none") return HeadReduction::kNone;
  if (name == "mean") return HeadReduction::kMean;
  if (name == "max") return HeadReduction::kMax;
  return std::nullopt;
}

std::string_view RecordErrorKindName(RecordErrorKind kind) {
  switch (kind) {
    case RecordErrorKind::kMalformedRecord: return "MalformedRecord";
    case RecordErrorKind::kShapeMismatch: return "ShapeMismatch";
    case RecordErrorKind::kBadEncoding: return "BadEncoding";
    case RecordErrorKind::kValidation: return "ValidationError";
  }
  return "Unknown";
}

std::string RecordError::ToString() const {
  std::string out(RecordErrorKindName(kind));
  if (line > 0) out += " at line " + std::to_string(line);
  out += ": " + message;
  return out;
}

bool AttentionTensor::operator==(const AttentionTensor &other) const {
  if (layout != other.layout || dim != other.dim ||
      layer_spec != other.layer_spec ||
      reduction_applied != other.reduction_applied ||
      values.size() != other.values.size()) {
    return false;
  }
  if (layout == AttentionLayout::kPerHead && num_heads != other.num_heads) {
    return false;
  }
  for (size_t i = 0; i < values.size(); ++i) {
    if (std::bit_cast<uint32_t>(values[i]) !=
        std::bit_cast<uint32_t>(other.values[i])) {
      return false;
    }
  }
  return true;
}

bool IsUniversalPos(std::string_view tag) {
  return std::find(kUniversalPos.begin(), kUniversalPos.end(), tag) !=
         kUniversalPos.end();
}

std::optional<RecordError> ValidateRecord(const SentenceRecord &record) {
  auto fail = [](RecordErrorKind kind, std::string msg) {
    return MakeError(kind, 0, std::move(msg));
  };
  const int n = static_cast<int>(record.tokens.size());
  const AttentionTensor &att = record.attention;
  if (att.dim != n) {
    return fail(RecordErrorKind::kShapeMismatch,
                "attention dim " + std::to_string(att.dim) + " != " +
                    std::to_string(n) + " tokens");
  }
  size_t heads = 1;
  if (att.layout == AttentionLayout::kPerHead) {
    if (att.num_heads < 1) {
      return fail(RecordErrorKind::kValidation, "num_heads must be positive");
    }
    heads = static_cast<size_t>(att.num_heads);
  }
  if (att.values.size() != heads * n * n) {
    return fail(RecordErrorKind::kShapeMismatch,
                "attention holds " + std::to_string(att.values.size()) +
                    " values, expected " + std::to_string(heads * n * n));
  }
  if ((att.layout == AttentionLayout::kReduced) !=
      (att.reduction_applied != HeadReduction::kNone)) {
    return fail(RecordErrorKind::kValidation,
                "layout and reduction_applied disagree");
  }
  for (float v : att.values) {
    if (!(v >= 0.0f) || !std::isfinite(v)) {
      return fail(RecordErrorKind::kValidation,
                  "attention entries must be finite and non-negative");
    }
  }
  int64_t prev_end = -1;
  for (int i = 0; i < n; ++i) {
    const TokenAnnotation &t = record.tokens[i];
    if (t.char_start >= t.char_end) {
      return fail(RecordErrorKind::kValidation,
                  "token " + std::to_string(i) + " has empty span");
    }
    if (t.char_start < 0 || t.char_start < prev_end) {
      return fail(RecordErrorKind::kValidation,
                  "token " + std::to_string(i) + " overlaps or is out of order");
    }
    if (t.char_end > static_cast<int64_t>(record.text.size())) {
      return fail(RecordErrorKind::kValidation,
                  "token " + std::to_string(i) + " extends past the text");
    }
    if (!IsUniversalPos(t.pos)) {
      return fail(RecordErrorKind::kValidation,
                  "token " + std::to_string(i) + " has unknown POS '" + t.pos +
                      "'");
    }
    prev_end = t.char_end;
  }
  int prev_last = -1;
  for (size_t c = 0; c < record.chunks.size(); ++c) {
    const NounChunk &ch = record.chunks[c];
    if (ch.first_token < 0 || ch.first_token > ch.last_token ||
        ch.last_token >= n) {
      return fail(RecordErrorKind::kValidation,
                  "chunk " + std::to_string(c) + " is out of bounds");
    }
    if (ch.first_token <= prev_last) {
      return fail(RecordErrorKind::kValidation,
                  "chunk " + std::to_string(c) + " overlaps or is out of order");
    }
    prev_last = ch.last_token;
  }
  return std::nullopt;
}

AttentionTensor ReduceAttention(const AttentionTensor &attention,
                                HeadReduction op) {
  if (attention.layout == AttentionLayout::kReduced) {
    throw AlreadyReducedError();
  }
  if (op == HeadReduction::kNone) {
    throw Error("head reduction operator must be mean or max");
  }
  const size_t cells = static_cast<size_t>(attention.dim) * attention.dim;
  const int heads = attention.num_heads;
  AttentionTensor out;
  out.layout = AttentionLayout::kReduced;
  out.num_heads = 1;
  out.dim = attention.dim;
  out.layer_spec = attention.layer_spec;
  out.reduction_applied = op;
  out.values.assign(cells, 0.0f);
  for (size_t c = 0; c < cells; ++c) {
    float acc = attention.values[c];
    for (int h = 1; h < heads; ++h) {
      float v = attention.values[h * cells + c];
      acc = op == HeadReduction::kMax ? std::max(acc, v) : acc + v;
    }
    out.values[c] = op == HeadReduction::kMean && heads > 1
                        ? acc / static_cast<float>(heads)
                        : acc;
  }
  return out;
}

AttentionTensor EnsureReduced(const AttentionTensor &attention,
                              HeadReduction op) {
  if (attention.layout == AttentionLayout::kReduced) return attention;
  return ReduceAttention(attention, op);
}

ReadResult ParseRecordLine(std::string_view line, size_t line_no) {
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    return MakeError(RecordErrorKind::kMalformedRecord, line_no,
                     "line is not a JSON object");
  }
  SentenceRecord rec;
  std::string data_b64;
  try {
    rec.doc_id = j.at("doc_id").get<std::string>();
    rec.sent_id = j.at("sent_id").get<int64_t>();
    if (rec.sent_id < 0) {
      return MakeError(RecordErrorKind::kMalformedRecord, line_no,
                       "sent_id must be non-negative");
    }
    rec.text = j.at("text").get<std::string>();
    for (const json &t : j.at("tokens")) {
      TokenAnnotation tok;
      tok.text = t.at("text").get<std::string>();
      tok.lemma = t.at("lemma").get<std::string>();
      tok.pos = t.at("pos").get<std::string>();
      tok.char_start = t.at("char_start").get<int64_t>();
      tok.char_end = t.at("char_end").get<int64_t>();
      rec.tokens.push_back(std::move(tok));
    }
    for (const json &c : j.at("chunks")) {
      NounChunk chunk;
      chunk.first_token = c.at("first_token").get<int>();
      chunk.last_token = c.at("last_token").get<int>();
      chunk.surface = c.at("surface").get<std::string>();
      auto it = c.find("resolved_surface");
      if (it != c.end() && !it->is_null()) {
        chunk.resolved_surface = it->get<std::string>();
      }
      rec.chunks.push_back(std::move(chunk));
    }
    const json &a = j.at("attention");
    std::string layout = a.at("layout").get<std::string>();
    if (layout == "reduced") {
      rec.attention.layout = AttentionLayout::kReduced;
    } else if (layout == "per_head") {
      rec.attention.layout = AttentionLayout::kPerHead;
      rec.attention.num_heads = a.at("num_heads").get<int>();
    } else {
      return MakeError(RecordErrorKind::kMalformedRecord, line_no,
                       "unknown attention layout '" + layout + "'");
    }
    rec.attention.dim = a.at("dim").get<int>();
    rec.attention.layer_spec = a.at("layer_spec").get<std::string>();
    auto reduction =
        ParseHeadReduction(a.at("reduction_applied").get<std::string>());
    if (!reduction) {
      return MakeError(RecordErrorKind::kMalformedRecord, line_no,
                       "unknown reduction_applied");
    }
    rec.attention.reduction_applied = *reduction;
    data_b64 = a.at("data_b64").get<std::string>();
  } catch (const json::exception &e) {
    return MakeError(RecordErrorKind::kMalformedRecord, line_no, e.what());
  }

  if (rec.attention.dim < 0 || rec.attention.num_heads < 1) {
    return MakeError(RecordErrorKind::kMalformedRecord, line_no,
                     "attention dim/num_heads out of range");
  }
  auto bytes = Base64Decode(data_b64);
  if (!bytes) {
    return MakeError(RecordErrorKind::kBadEncoding, line_no,
                     "data_b64 is not valid base64");
  }
  const size_t heads = rec.attention.layout == AttentionLayout::kPerHead
                           ? static_cast<size_t>(rec.attention.num_heads)
                           : 1;
  const size_t expected =
      heads * static_cast<size_t>(rec.attention.dim) * rec.attention.dim;
  if (bytes->size() != expected * 4) {
    return MakeError(RecordErrorKind::kBadEncoding, line_no,
                     "payload has " + std::to_string(bytes->size()) +
                         " bytes, declared shape needs " +
                         std::to_string(expected * 4));
  }
  rec.attention.values = *UnpackFloats(*bytes);
  if (rec.attention.layout == AttentionLayout::kReduced) {
    rec.attention.num_heads = 1;
  }

  if (auto err = ValidateRecord(rec)) {
    err->line = line_no;
    return *err;
  }
  return rec;
}

std::optional<ReadResult> RecordReader::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    return ParseRecordLine(line, line_);
  }
  if (in_.bad()) throw Error("read failure after line " + std::to_string(line_));
  return std::nullopt;
}

std::string RecordToJsonLine(const SentenceRecord &record) {
  json j;
  j["doc_id"] = record.doc_id;
  j["sent_id"] = record.sent_id;
  j["text"] = record.text;
  json tokens = json::array();
  for (const TokenAnnotation &t : record.tokens) {
    tokens.push_back({{"text", t.text},
                      {"lemma", t.lemma},
                      {"pos", t.pos},
                      {"char_start", t.char_start},
                      {"char_end", t.char_end}});
  }
  j["tokens"] = std::move(tokens);
  json chunks = json::array();
  for (const NounChunk &c : record.chunks) {
    json cj = {{"first_token", c.first_token},
               {"last_token", c.last_token},
               {"surface", c.surface}};
    if (c.resolved_surface) cj["resolved_surface"] = *c.resolved_surface;
    chunks.push_back(std::move(cj));
  }
  j["chunks"] = std::move(chunks);
  const AttentionTensor &a = record.attention;
  json aj;
  aj["layout"] = LayoutName(a.layout);
  if (a.layout == AttentionLayout::kPerHead) aj["num_heads"] = a.num_heads;
  aj["dim"] = a.dim;
  aj["layer_spec"] = a.layer_spec;
  aj["reduction_applied"] = HeadReductionName(a.reduction_applied);
  aj["data_b64"] = Base64Encode(PackFloats(a.values));
  j["attention"] = std::move(aj);
  return j.dump();
}

size_t WriteRecords(const std::vector<SentenceRecord> &records,
                    std::ostream &out) {
  for (size_t i = 0; i < records.size(); ++i) {
    if (auto err = ValidateRecord(records[i])) {
      err->message = "record " + std::to_string(i) + ": " + err->message;
      throw ValidationError(*err);
    }
  }
  for (const SentenceRecord &r : records) {
    out << RecordToJsonLine(r) << '\n';
  }
  out.flush();
  if (!out) throw Error("failed writing records");
  return records.size();
}

}  // namespace attnkg
