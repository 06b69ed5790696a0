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

#ifndef ATTNKG_CORPUS_H_
#define ATTNKG_CORPUS_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "attnkg/text.h"

namespace attnkg {

// Sentence annotation interchange format (.senrec.jsonl).
//
// Each line holds one sentence with word-level tokens, noun chunks and the
// attention matrix of one layer. values[i][j] is the weight with which token
// i (the attending token) attends to token j.

struct TokenAnnotation {
  std::string text;
  std::string lemma;
  std::string pos;  // Universal POS tag.
  int64_t char_start = 0;
  int64_t char_end = 0;

  bool operator==(const TokenAnnotation &) const = default;
};

struct NounChunk {
  int first_token = 0;
  int last_token = 0;  // inclusive
  std::string surface;
  std::optional<std::string> resolved_surface;

  int size() const { return last_token - first_token + 1; }
  bool Contains(int token) const {
    return token >= first_token && token <= last_token;
  }
  bool operator==(const NounChunk &) const = default;
};

enum class AttentionLayout { kReduced, kPerHead };
enum class HeadReduction { kNone, kMean, kMax };

std::string_view HeadReductionName(HeadReduction r);
std::optional<HeadReduction> ParseHeadReduction(std::string_view name);

struct AttentionTensor {
  AttentionLayout layout = AttentionLayout::kReduced;
  int num_heads = 1;  // meaningful for kPerHead only
  int dim = 0;
  std::vector<float> values;  // [T,T] or [H,T,T], row-major
  std::string layer_spec = "last";
  HeadReduction reduction_applied = HeadReduction::kMean;

  // Reduced layout only.
  float at(int attending, int attended) const {
    return values[static_cast<size_t>(attending) * dim + attended];
  }
  float at(int head, int attending, int attended) const {
    return values[(static_cast<size_t>(head) * dim + attending) * dim +
                  attended];
  }

  bool operator==(const AttentionTensor &other) const;
};

struct SentenceRecord {
  std::string doc_id;
  int64_t sent_id = 0;
  std::string text;
  std::vector<TokenAnnotation> tokens;
  std::vector<NounChunk> chunks;
  AttentionTensor attention;

  bool operator==(const SentenceRecord &) const = default;
};

enum class RecordErrorKind {
  kMalformedRecord,
  kShapeMismatch,
  kBadEncoding,
  kValidation,
};

std::string_view RecordErrorKindName(RecordErrorKind kind);

struct RecordError {
  RecordErrorKind kind;
  size_t line = 0;  // 1-based; 0 when not tied to a file position
  std::string message;

  std::string ToString() const;
};

// Raised by writers when asked to emit an invalid record.
class ValidationError : public Error {
 public:
  explicit ValidationError(RecordError error)
      : Error(error.ToString()), error_(std::move(error)) {}
  const RecordError &error() const { return error_; }

 private:
  RecordError error_;
};

// Raised when reduce_attention is applied to an already reduced tensor.
class AlreadyReducedError : public Error {
 public:
  AlreadyReducedError() : Error("attention is already reduced") {}
};

bool IsUniversalPos(std::string_view tag);

// Checks every record invariant. Returns the first violation found.
std::optional<RecordError> ValidateRecord(const SentenceRecord &record);

// Collapses the head axis with mean or max.
AttentionTensor ReduceAttention(const AttentionTensor &attention,
                                HeadReduction op);

// Returns a reduced view of the attention, reducing per-head payloads with op.
AttentionTensor EnsureReduced(const AttentionTensor &attention,
                              HeadReduction op);

using ReadResult = std::variant<SentenceRecord, RecordError>;

// Single-pass reader over newline-delimited records. Blank lines are skipped.
// Each bad line yields a RecordError carrying its line number; reading then
// continues with the next line.
class RecordReader {
 public:
  explicit RecordReader(std::istream &in) : in_(in) {}

  // Returns nullopt at end of stream.
  std::optional<ReadResult> Next();

  size_t line() const { return line_; }

 private:
  std::istream &in_;
  size_t line_ = 0;
};

// Parses one JSON line. line_no is only used for error reporting.
ReadResult ParseRecordLine(std::string_view line, size_t line_no);

// Serializes one record to a single JSON line without trailing newline.
std::string RecordToJsonLine(const SentenceRecord &record);

// Validates all records first, then writes them. Throws ValidationError
// before any bytes are written, or Error on sink failure.
size_t WriteRecords(const std::vector<SentenceRecord> &records,
                    std::ostream &out);

}  // namespace attnkg

#endif  // ATTNKG_CORPUS_H_
