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

#ifndef ATTNKG_CODEC_H_
#define ATTNKG_CODEC_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace attnkg {

// Standard base64 with padding. Decoding returns nullopt on any malformed
// input rather than guessing.
std::string Base64Encode(std::string_view bytes);
std::optional<std::string> Base64Decode(std::string_view text);

// Little-endian IEEE-754 packing of f32 arrays.
std::string PackFloats(const std::vector<float> &values);
std::optional<std::vector<float>> UnpackFloats(std::string_view bytes);

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view bytes);

}  // namespace attnkg

#endif  // ATTNKG_CODEC_H_
