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

#ifndef ATTNKG_TEXT_H_
#define ATTNKG_TEXT_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace attnkg {

// Base class for every error the library raises across a module boundary.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ASCII lowercase; bytes outside ASCII pass through untouched.
std::string CaseFold(std::string_view s);

// Splits on runs of ASCII whitespace, dropping empty pieces.
std::vector<std::string> SplitWhitespace(std::string_view s);

// Splits on a single delimiter, keeping empty fields.
std::vector<std::string> Split(std::string_view s, char delim);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

std::string_view Trim(std::string_view s);

// Reads every line of a text file. Throws Error naming the path on failure.
std::vector<std::string> ReadLines(const std::string &path);

}  // namespace attnkg

#endif  // ATTNKG_TEXT_H_
