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

#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <sstream>

#include "attnkg/codec.h"
#include "testing/fixtures.h"
#include "testing/synthetic.h"

namespace attnkg {
namespace {

using testing::Figure2Record;
using testing::MakeRecord;

AttentionTensor PerHead(int heads, int dim, std::vector<float> values) {
  AttentionTensor t;
  t.layout = AttentionLayout::kPerHead;
  t.num_heads = heads;
  t.dim = dim;
  t.values = std::move(values);
  t.reduction_applied = HeadReduction::kNone;
  return t;
}

std::vector<ReadResult> ReadAll(const std::string &text) {
  std::istringstream in(text);
  RecordReader reader(in);
  std::vector<ReadResult> out;
  while (auto r = reader.Next()) out.push_back(std::move(*r));
  return out;
}

TEST(CodecTest, Base64KnownVectors) {
  EXPECT_EQ(Base64Encode("f"), "Zg==");
  EXPECT_EQ(Base64Encode("fo"), "Zm8=");
  EXPECT_EQ(Base64Encode("foo"), "Zm9v");
  EXPECT_EQ(*Base64Decode("Zm8="), "fo");
  EXPECT_EQ(*Base64Decode(""), "");
  EXPECT_FALSE(Base64Decode("Zm8").has_value());
  EXPECT_FALSE(Base64Decode("Z!8=").has_value());
}

TEST(CodecTest, FloatsAreLittleEndian) {
  std::string bytes = PackFloats({1.0f});
  ASSERT_EQ(bytes.size(), 4u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[3]), 0x3F);
  EXPECT_EQ(static_cast<unsigned char>(bytes[2]), 0x80);
  EXPECT_EQ(bytes[0], 0);
}

TEST(ReadRecordsTest, WriterOutputRoundTrips) {
  SentenceRecord rec = Figure2Record();
  std::ostringstream out;
  ASSERT_EQ(WriteRecords({rec}, out), 1u);
  std::vector<ReadResult> got = ReadAll(out.str());
  ASSERT_EQ(got.size(), 1u);
  const auto *r = std::get_if<SentenceRecord>(&got[0]);
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->attention.dim, 5);
  EXPECT_EQ(*r, rec);
}

TEST(ReadRecordsTest, ShapeMismatchCarriesLineNumber) {
  SentenceRecord good = Figure2Record();
  SentenceRecord bad = good;
  bad.tokens.pop_back();
  std::string text = RecordToJsonLine(good) + "\n" + RecordToJsonLine(bad) +
                     "\n" + RecordToJsonLine(good) + "\n";
  std::vector<ReadResult> got = ReadAll(text);
  ASSERT_EQ(got.size(), 3u);
  const auto *err = std::get_if<RecordError>(&got[1]);
  ASSERT_NE(err, nullptr);
  EXPECT_EQ(err->kind, RecordErrorKind::kShapeMismatch);
  EXPECT_EQ(err->line, 2u);
  EXPECT_TRUE(std::holds_alternative<SentenceRecord>(got[2]));
}

TEST(ReadRecordsTest, EmptyStreamYieldsNothing) {
  EXPECT_TRUE(ReadAll("").empty());
  EXPECT_TRUE(ReadAll("\n\n").empty());
}

TEST(ReadRecordsTest, MalformedJsonAndMissingFields) {
  std::vector<ReadResult> got = ReadAll("{not json\n{\"doc_id\": \"d\"}\n");
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(std::get<RecordError>(got[0]).kind,
            RecordErrorKind::kMalformedRecord);
  EXPECT_EQ(std::get<RecordError>(got[1]).kind,
            RecordErrorKind::kMalformedRecord);
  EXPECT_EQ(std::get<RecordError>(got[1]).line, 2u);
}

TEST(ReadRecordsTest, BadPayloadIsBadEncoding) {
  std::string line = RecordToJsonLine(Figure2Record());
  auto j = nlohmann::json::parse(line);
  j["attention"]["data_b64"] = "AAAA";  // one float, shape needs 25
  std::vector<ReadResult> got = ReadAll(j.dump());
  EXPECT_EQ(std::get<RecordError>(got[0]).kind, RecordErrorKind::kBadEncoding);
  j["attention"]["data_b64"] = "not base64!";
  got = ReadAll(j.dump());
  EXPECT_EQ(std::get<RecordError>(got[0]).kind, RecordErrorKind::kBadEncoding);
}

TEST(ReadRecordsTest, UnknownPosIsRejected) {
  SentenceRecord rec = Figure2Record();
  rec.tokens[1].pos = "VB";
  std::string line = RecordToJsonLine(rec);
  EXPECT_EQ(std::get<RecordError>(ReadAll(line)[0]).kind,
            RecordErrorKind::kValidation);
}

TEST(WriteRecordsTest, ZeroRecords) {
  std::ostringstream out;
  EXPECT_EQ(WriteRecords({}, out), 0u);
  EXPECT_TRUE(out.str().empty());
}

TEST(WriteRecordsTest, ThreeRecordsRoundTrip) {
  std::mt19937_64 rng(3);
  std::vector<SentenceRecord> recs;
  for (int i = 0; i < 3; ++i) {
    recs.push_back(testing::RandomPairRecord(rng, 4 + i));
    recs.back().sent_id = i;
  }
  std::ostringstream out;
  EXPECT_EQ(WriteRecords(recs, out), 3u);
  std::vector<ReadResult> got = ReadAll(out.str());
  ASSERT_EQ(got.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(std::get<SentenceRecord>(got[i]), recs[i]);
}

TEST(WriteRecordsTest, InvalidChunkOrderWritesNothing) {
  SentenceRecord good = Figure2Record();
  SentenceRecord bad = good;
  std::swap(bad.chunks[0], bad.chunks[1]);
  std::ostringstream out;
  EXPECT_THROW(WriteRecords({good, bad}, out), ValidationError);
  EXPECT_TRUE(out.str().empty());
}

// Every f32 bit pattern that is a valid entry survives the text encoding.
TEST(WriteRecordsTest, RoundTripIsBitExactOnRandomPayloads) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int t = testing::UniformInt(rng, 2, 9);
    SentenceRecord rec = testing::RandomPairRecord(rng, t);
    for (float &v : rec.attention.values) {
      // Random non-negative finite bit patterns, denormals included.
      uint32_t bits = static_cast<uint32_t>(rng()) & 0x7F7FFFFFu;
      v = std::bit_cast<float>(bits);
    }
    if (trial % 3 == 0) {
      const int heads = 3;
      std::vector<float> vals(static_cast<size_t>(heads) * t * t);
      for (float &v : vals) v = testing::UnitFloat(rng);
      rec.attention = PerHead(heads, t, vals);
    }
    std::ostringstream out;
    WriteRecords({rec}, out);
    auto got = ReadAll(out.str());
    ASSERT_EQ(got.size(), 1u);
    ASSERT_TRUE(std::holds_alternative<SentenceRecord>(got[0]))
        << std::get<RecordError>(got[0]).ToString();
    EXPECT_EQ(std::get<SentenceRecord>(got[0]), rec);
  }
}

TEST(ReduceAttentionTest, MeanAndMax) {
  AttentionTensor t =
      PerHead(2, 2, {0.6f, 0.4f, 0.5f, 0.5f, 0.2f, 0.8f, 0.1f, 0.9f});
  AttentionTensor mean = ReduceAttention(t, HeadReduction::kMean);
  EXPECT_EQ(mean.layout, AttentionLayout::kReduced);
  EXPECT_EQ(mean.reduction_applied, HeadReduction::kMean);
  const std::vector<float> want_mean = {0.4f, 0.6f, 0.3f, 0.7f};
  for (int i = 0; i < 4; ++i) EXPECT_FLOAT_EQ(mean.values[i], want_mean[i]);
  AttentionTensor mx = ReduceAttention(t, HeadReduction::kMax);
  EXPECT_EQ(mx.values, (std::vector<float>{0.6f, 0.8f, 0.5f, 0.9f}));
}

TEST(ReduceAttentionTest, SingleHeadIsIdentity) {
  AttentionTensor t = PerHead(1, 2, {0.1f, 0.2f, 0.3f, 0.4f});
  EXPECT_EQ(ReduceAttention(t, HeadReduction::kMean).values, t.values);
  EXPECT_EQ(ReduceAttention(t, HeadReduction::kMax).values, t.values);
}

TEST(ReduceAttentionTest, AlreadyReduced) {
  EXPECT_THROW(ReduceAttention(Figure2Record().attention, HeadReduction::kMean),
               AlreadyReducedError);
}

TEST(ReduceAttentionTest, BoundsAgainstScalarLoop) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int h = testing::UniformInt(rng, 1, 6);
    const int t = testing::UniformInt(rng, 1, 6);
    std::vector<float> vals(static_cast<size_t>(h) * t * t);
    for (float &v : vals) v = testing::UnitFloat(rng);
    AttentionTensor in = PerHead(h, t, vals);
    AttentionTensor mean = ReduceAttention(in, HeadReduction::kMean);
    AttentionTensor mx = ReduceAttention(in, HeadReduction::kMax);
    for (int i = 0; i < t; ++i) {
      for (int j = 0; j < t; ++j) {
        float lo = in.at(0, i, j), hi = in.at(0, i, j);
        for (int k = 1; k < h; ++k) {
          lo = std::min(lo, in.at(k, i, j));
          if (in.at(k, i, j) > hi) hi = in.at(k, i, j);
        }
        EXPECT_EQ(mx.at(i, j), hi);
        EXPECT_GE(mean.at(i, j), lo * (1 - 1e-6f));
        EXPECT_LE(mean.at(i, j), hi * (1 + 1e-6f));
      }
    }
  }
}

}  // namespace
}  // namespace attnkg
