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

#include "ffr/cms/event.hpp"

#include <cmath>
#include <set>

#include "ffr/common/error.hpp"

namespace ffr::cms {
namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(Errc::MissingField, where + " is missing \"" + key + "\"");
  }
  return j.at(key);
}

std::string require_string(const json& j, const char* key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_string()) throw Error(Errc::InvalidArgument, where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

double require_number(const json& j, const char* key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_number()) throw Error(Errc::InvalidArgument, where + ": \"" + key + "\" must be a number");
  return v.get<double>();
}

}  // namespace

std::string_view to_string(Phase phase) noexcept { return phase == Phase::P1 ? "P1" : "P2"; }

Phase parse_phase(const json& value) {
  if (value.is_number_integer()) {
    const auto n = value.get<std::int64_t>();
    if (n == 1) return Phase::P1;
    if (n == 2) return Phase::P2;
  } else if (value.is_string()) {
    const auto s = value.get<std::string>();
    if (s == "P1" || s == "p1") return Phase::P1;
    if (s == "P2" || s == "p2") return Phase::P2;
  }
  throw Error(Errc::InvalidArgument, "phase must be \"P1\" or \"P2\", got " + value.dump());
}

void validate_task_spec(TaskSpec& spec) {
  if (spec.items.empty()) throw Error(Errc::EmptyTask, "task has no items");
  if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0)) {
    throw Error(Errc::DomainError, "alpha = " + std::to_string(spec.alpha) + " is outside [0, 1]");
  }
  if (spec.id && spec.id->empty()) throw Error(Errc::InvalidArgument, "task id must not be empty");
  if (spec.annotators.empty()) {
    for (std::size_t i = 1; i <= kDefaultAnnotatorCount; ++i) {
      spec.annotators.push_back("annotator-" + std::to_string(i));
    }
  }
  std::set<std::string> seen;
  for (const auto& a : spec.annotators) {
    if (a.empty()) throw Error(Errc::InvalidArgument, "annotator names must not be empty");
    if (!seen.insert(a).second) throw Error(Errc::InvalidArgument, "duplicate annotator \"" + a + "\"");
  }
  seen.clear();
  for (const auto& item : spec.items) {
    if (item.id.empty()) throw Error(Errc::InvalidArgument, "item ids must not be empty");
    if (!seen.insert(item.id).second) {
      throw Error(Errc::DuplicateItemId, "duplicate item id \"" + item.id + "\"");
    }
  }
}

TaskSpec task_spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::InvalidArgument, "task must be a JSON object");
  TaskSpec spec;
  if (j.contains("id") && !j.at("id").is_null()) spec.id = require_string(j, "id", "task");
  if (j.contains("alpha") && !j.at("alpha").is_null()) spec.alpha = require_number(j, "alpha", "task");
  if (j.contains("annotators") && !j.at("annotators").is_null()) {
    const json& a = j.at("annotators");
    if (a.is_number_unsigned() || (a.is_number_integer() && a.get<std::int64_t>() > 0)) {
      // A bare count requests generated names.
      for (std::int64_t i = 1; i <= a.get<std::int64_t>(); ++i) {
        spec.annotators.push_back("annotator-" + std::to_string(i));
      }
    } else if (a.is_array()) {
      for (const auto& name : a) {
        if (!name.is_string()) throw Error(Errc::InvalidArgument, "annotators must be strings");
        spec.annotators.push_back(name.get<std::string>());
      }
    } else {
      throw Error(Errc::InvalidArgument, "annotators must be a list of names or a positive count");
    }
  }
  const json& items = require(j, "items", "task");
  if (!items.is_array()) throw Error(Errc::InvalidArgument, "task: \"items\" must be an array");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const json& it = items[i];
    const std::string where = "item " + std::to_string(i + 1);
    ItemSpec item;
    if (it.is_object() && it.contains("id") && !it.at("id").is_null()) {
      const json& id = it.at("id");
      item.id = id.is_string() ? id.get<std::string>() : id.dump();
    } else {
      item.id = std::to_string(i + 1);
    }
    item.source = require_string(it, "source", where);
    item.prediction = require_string(it, "prediction", where);
    item.reference = require_string(it, "reference", where);
    spec.items.push_back(std::move(item));
  }
  validate_task_spec(spec);
  return spec;
}

json task_spec_to_json(const TaskSpec& spec) {
  json items = json::array();
  for (const auto& it : spec.items) {
    items.push_back({{"id", it.id}, {"source", it.source}, {"prediction", it.prediction},
                     {"reference", it.reference}});
  }
  json j;
  if (spec.id) j["id"] = *spec.id;
  j["alpha"] = spec.alpha;
  j["annotators"] = spec.annotators;
  j["items"] = std::move(items);
  return j;
}

json event_to_json(const Event& e) {
  json j{{"seq", e.seq}, {"ts", e.timestamp}};
  if (const auto* c = std::get_if<CreateTaskEvent>(&e.body)) {
    j["type"] = "create_task";
    j["task"] = task_spec_to_json(c->task);
  } else {
    const auto& s = std::get<ScoreEvent>(e.body);
    j["type"] = "score";
    j["task"] = s.task;
    j["annotator"] = s.annotator;
    j["item"] = s.item;
    j["phase"] = to_string(s.phase);
    j["score"] = s.score;
  }
  return j;
}

Event event_from_json(const json& j) {
  Event e;
  const json& seq = require(j, "seq", "event");
  if (!seq.is_number_unsigned()) throw Error(Errc::InvalidArgument, "event: \"seq\" must be a positive integer");
  e.seq = seq.get<std::uint64_t>();
  e.timestamp = require_string(j, "ts", "event");
  const std::string type = require_string(j, "type", "event");
  if (type == "create_task") {
    CreateTaskEvent c{task_spec_from_json(require(j, "task", "event"))};
    if (!c.task.id) throw Error(Errc::MissingField, "create_task event has no task id");
    e.body = std::move(c);
  } else if (type == "score") {
    ScoreEvent s;
    s.task = require_string(j, "task", "event");
    s.annotator = require_string(j, "annotator", "event");
    s.item = require_string(j, "item", "event");
    s.phase = parse_phase(require(j, "phase", "event"));
    s.score = require_number(j, "score", "event");
    e.body = std::move(s);
  } else {
    throw Error(Errc::InvalidArgument, "unknown event type \"" + type + "\"");
  }
  return e;
}

}  // namespace ffr::cms
