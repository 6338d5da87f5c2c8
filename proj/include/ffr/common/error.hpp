// Copyright 2026 The FFR Toolkit Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ffr {

/// Every failure the toolkit reports. The CLI maps these onto exit codes and
/// the CMS HTTP server onto status codes, so new values must be added to both.
enum class Errc {
  // corpus
  MalformedRow,
  LineCountMismatch,
  InvalidUtf8,
  EmptyCorpus,
  SpecMismatch,
  // tokenizer
  SequenceTooLong,
  // seq2seq
  ShapeMismatch,
  AllMasked,
  EmptyTarget,
  NonFiniteGradient,
  BadMagic,
  ShapeManifestMismatch,
  TruncatedFile,
  // metrics
  LengthMismatch,
  EmptyHypothesisSet,
  DomainError,
  NoScores,
  // cms
  EmptyTask,
  DuplicateItemId,
  MissingField,
  UnknownTask,
  UnknownItem,
  UnknownAnnotator,
  TaskComplete,
  OutOfRange,
  PhaseViolation,
  DuplicateSubmission,
  CorruptLine,
  // shared
  InvalidArgument,
  Io,
};

std::string_view to_string(Errc code) noexcept;

/// True for failures caused by the filesystem rather than by bad input.
bool is_io_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ffr
