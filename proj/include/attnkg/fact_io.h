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

#ifndef ATTNKG_FACT_IO_H_
#define ATTNKG_FACT_IO_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "attnkg/filters.h"
#include "attnkg/linker.h"
#include "attnkg/matcher.h"
#include "json.hpp"

namespace attnkg {

// JSON Lines encodings of the intermediate fact files. Every encoder emits
// one object; decoders throw Error on missing or mistyped fields.

nlohmann::json CandidateToJson(const CandidateFact &fact);
CandidateFact CandidateFromJson(const nlohmann::json &j);

nlohmann::json LinkedToJson(const LinkedFact &fact);
LinkedFact LinkedFromJson(const nlohmann::json &j);

nlohmann::json RejectedToJson(const RejectedFact &fact);

void WriteCandidates(const std::vector<CandidateFact> &facts, std::ostream &out);
std::vector<CandidateFact> ReadCandidates(std::istream &in);

void WriteLinked(const std::vector<LinkedFact> &facts, std::ostream &out);
std::vector<LinkedFact> ReadLinked(std::istream &in);

// File-path conveniences.
void WriteCandidatesFile(const std::vector<CandidateFact> &facts,
                         const std::string &path);
std::vector<CandidateFact> ReadCandidatesFile(const std::string &path);
void WriteLinkedFile(const std::vector<LinkedFact> &facts,
                     const std::string &path);
std::vector<LinkedFact> ReadLinkedFile(const std::string &path);
void WriteRejectedFile(const std::vector<RejectedFact> &facts,
                       const std::string &path);

}  // namespace attnkg

#endif  // ATTNKG_FACT_IO_H_
