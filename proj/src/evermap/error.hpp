/*
 * Copyright 2026 The Evermap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EVERMAP_ERROR_HPP_
#define EVERMAP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace evermap {

enum class ErrorKind {
  kInvalidArgument,
  kParse,
  kOutOfRange,
  kNoInPipeSamples,
  kIllPosed,
  kNumeric,
  kIo,
};

// Every failure raised by the library carries a kind so the C boundary can
// map it onto a status code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failures always name the offending line (1-based).
class ParseError : public Error {
 public:
  ParseError(std::string source, int line, const std::string& message)
      : Error(ErrorKind::kParse,
              source + ":" + std::to_string(line) + ": " + message),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

}  // namespace evermap

#endif  // EVERMAP_ERROR_HPP_
