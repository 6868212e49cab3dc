// Copyright 2026 The gemify Authors.
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

#ifndef GEMIFY_ERRORS_H_
#define GEMIFY_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gemify {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text could not be ingested (bad encoding, misaligned sidecar).
class IngestError : public Error {
 public:
  IngestError(const std::string &message, size_t offset)
      : Error(message + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

// A lexicon or rule file is unreadable or malformed.
class LexiconError : public Error {
 public:
  LexiconError(const std::string &file, int line, const std::string &message)
      : Error(file + ":" + std::to_string(line) + ": " + message),
        file_(file),
        line_(line) {}
  const std::string &file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

// A stage posted to the fact store without being registered and scheduled,
// or a stage list violates the declared order.
class StageError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage failed. Carries the stage name and the last clause the
// stage was working on (-1 if none).
class PipelineError : public Error {
 public:
  PipelineError(const std::string &stage, int last_clause,
                const std::string &message)
      : Error("stage " + stage + " failed at clause " +
              std::to_string(last_clause) + ": " + message),
        stage_(stage),
        last_clause_(last_clause) {}
  const std::string &stage() const { return stage_; }
  int last_clause() const { return last_clause_; }

 private:
  std::string stage_;
  int last_clause_;
};

// GEM XML that is malformed or outside the supported DTD subset.
class GemParseError : public Error {
 public:
  GemParseError(int line, int column, const std::string &message)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Malformed gold, standoff or couple file.
class FormatError : public Error {
 public:
  FormatError(int line, const std::string &message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Scope accuracy requested against an empty gold couple set.
class EmptyGoldError : public Error {
 public:
  EmptyGoldError() : Error("gold couple set is empty") {}
};

// Invalid run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gemify

#endif  // GEMIFY_ERRORS_H_
