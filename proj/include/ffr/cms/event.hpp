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

// Annotation tasks and the events of the append-only log. Every event is one
// JSON object on one line:
//
//   {"seq":1,"ts":"...","type":"create_task","task":{...}}
//   {"seq":2,"ts":"...","type":"score","task":"t1","annotator":"a",
//    "item":"i1","phase":"P1","score":0.8}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ffr::cms {

using json = nlohmann::ordered_json;

/// P1: scored from source and prediction only. P2: scored with the
/// reference revealed.
enum class Phase { P1, P2 };

std::string_view to_string(Phase phase) noexcept;
/// Accepts "P1"/"P2" (any case) and the integers 1/2. Throws InvalidArgument.
Phase parse_phase(const json& value);

struct ItemSpec {
  std::string id;
  std::string source;
  std::string prediction;
  std::string reference;

  bool operator==(const ItemSpec&) const = default;
};

inline constexpr std::size_t kDefaultAnnotatorCount = 5;

struct TaskSpec {
  /// Assigned by the store when absent.
  std::optional<std::string> id;
  double alpha = 0.7;
  /// Defaults to kDefaultAnnotatorCount generated names.
  std::vector<std::string> annotators;
  std::vector<ItemSpec> items;

  bool operator==(const TaskSpec&) const = default;
};

/// Parses a POST /tasks body: {id?, alpha?, annotators?, items:[{id?,
/// source, prediction, reference}]}. Item ids default to their 1-based
/// position. Throws MissingField, EmptyTask, DuplicateItemId, DomainError
/// and InvalidArgument.
TaskSpec task_spec_from_json(const json& j);
json task_spec_to_json(const TaskSpec& spec);

/// Fills in default annotators and checks every invariant of a task.
void validate_task_spec(TaskSpec& spec);

struct CreateTaskEvent {
  TaskSpec task;
};

struct ScoreEvent {
  std::string task;
  std::string annotator;
  std::string item;
  Phase phase = Phase::P1;
  double score = 0.0;
};

struct Event {
  std::uint64_t seq = 0;
  std::string timestamp;
  std::variant<CreateTaskEvent, ScoreEvent> body;
};

json event_to_json(const Event& e);
/// Throws MissingField or InvalidArgument on malformed events.
Event event_from_json(const json& j);

}  // namespace ffr::cms
