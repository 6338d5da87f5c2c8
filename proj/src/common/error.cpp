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

#include "ffr/common/error.hpp"

namespace ffr {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::LineCountMismatch: return "LineCountMismatch";
    case Errc::InvalidUtf8: return "InvalidUtf8";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::SpecMismatch: return "SpecMismatch";
    case Errc::SequenceTooLong: return "SequenceTooLong";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::AllMasked: return "AllMasked";
    case Errc::EmptyTarget: return "EmptyTarget";
    case Errc::NonFiniteGradient: return "NonFiniteGradient";
    case Errc::BadMagic: return "BadMagic";
    case Errc::ShapeManifestMismatch: return "ShapeManifestMismatch";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::EmptyHypothesisSet: return "EmptyHypothesisSet";
    case Errc::DomainError: return "DomainError";
    case Errc::NoScores: return "NoScores";
    case Errc::EmptyTask: return "EmptyTask";
    case Errc::DuplicateItemId: return "DuplicateItemId";
    case Errc::MissingField: return "MissingField";
    case Errc::UnknownTask: return "UnknownTask";
    case Errc::UnknownItem: return "UnknownItem";
    case Errc::UnknownAnnotator: return "UnknownAnnotator";
    case Errc::TaskComplete: return "TaskComplete";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::PhaseViolation: return "PhaseViolation";
    case Errc::DuplicateSubmission: return "DuplicateSubmission";
    case Errc::CorruptLine: return "CorruptLine";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

bool is_io_error(Errc code) noexcept { return code == Errc::Io; }

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace ffr
