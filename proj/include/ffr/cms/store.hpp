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

// In-memory annotation state backed by an append-only JSON Lines event log.
//
// Each annotator first scores every item from source and prediction alone
// (phase 1); only then are references revealed, one item at a time, for the
// reference-aware score (phase 2). Scores are immutable once accepted.

#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ffr/cms/event.hpp"

namespace ffr::cms {

using Clock = std::function<std::string()>;

/// UTC wall-clock time as "YYYY-MM-DDTHH:MM:SS.mmmZ".
std::string utc_now();

struct StoreOptions {
  /// Event log; replayed on construction, then appended to. Empty keeps the
  /// store in memory only.
  std::optional<std::filesystem::path> log_path;
  Clock clock = utc_now;
  /// Replay the log but never write to it.
  bool read_only = false;
};

enum class TaskStatus { Open, Closed };
std::string_view to_string(TaskStatus status) noexcept;

class Store {
 public:
  explicit Store(StoreOptions options = {});
  ~Store();

  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  /// Throws EmptyTask, DuplicateItemId, DomainError, InvalidArgument (also
  /// for a task id already in use) and Io.
  std::string create_task(TaskSpec spec);

  /// Task summary without references: {id, alpha, status, annotators,
  /// items: [{id, source, prediction}], progress}. Throws UnknownTask.
  json task_json(const std::string& task) const;

  std::vector<std::string> task_ids() const;

  /// The annotator's next item. Phase-1 views carry only id, source and
  /// prediction; phase-2 views add the reference and the frozen t. Throws
  /// UnknownTask, UnknownAnnotator and TaskComplete.
  json next_item(const std::string& task, const std::string& annotator) const;

  /// Records a score. Throws OutOfRange, UnknownTask, UnknownAnnotator,
  /// UnknownItem, PhaseViolation, DuplicateSubmission and Io.
  json submit_score(const std::string& task, const std::string& annotator,
                    const std::string& item, Phase phase, double score);

  /// Per-item, per-annotator scores with t_total, item and task CMS, and a
  /// coverage matrix. Partial tasks are reported with completeness flags.
  json report(const std::string& task) const;

  /// Full canonical state, including timestamps; equal for a live store and
  /// a replay of its log.
  json state_json() const;

  std::uint64_t event_count() const;

  /// Builds a read-only store from a log. Throws CorruptLine naming the
  /// 1-based line of the first malformed or inconsistent event.
  static std::unique_ptr<Store> replay(const std::filesystem::path& log_path);

 private:
  struct Cell {
    std::optional<double> t, t_r;
    std::string t_time, t_r_time;
  };
  struct TaskState {
    TaskSpec spec;
    std::map<std::string, std::size_t> item_index;
    std::map<std::string, std::size_t> annotator_index;
    std::vector<std::vector<Cell>> cells;  // [annotator][item]
    std::vector<std::size_t> p1_done, p2_done;
    std::string created;
    bool closed() const;
  };

  const TaskState& task(const std::string& id) const;
  std::size_t annotator(const TaskState& t, const std::string& name) const;
  std::size_t item(const TaskState& t, const std::string& id) const;
  void check_score(const ScoreEvent& s) const;
  void apply(const Event& e);
  void append(const Event& e);
  void load(const std::filesystem::path& path);
  json report_locked(const TaskState& t) const;

  StoreOptions options_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, TaskState> tasks_;
  std::vector<std::string> order_;
  std::uint64_t seq_ = 0;
  std::ofstream log_;
};

}  // namespace ffr::cms
