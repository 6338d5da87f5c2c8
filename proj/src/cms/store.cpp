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

#include "ffr/cms/store.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iterator>
#include <mutex>

#include "ffr/common/error.hpp"
#include "ffr/metrics/metrics.hpp"

namespace ffr::cms {

std::string utc_now() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  const std::time_t secs = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

std::string_view to_string(TaskStatus status) noexcept {
  return status == TaskStatus::Open ? "OPEN" : "CLOSED";
}

bool Store::TaskState::closed() const {
  for (std::size_t done : p2_done) {
    if (done != spec.items.size()) return false;
  }
  return true;
}

Store::Store(StoreOptions options) : options_(std::move(options)) {
  if (!options_.log_path) return;
  const auto& path = *options_.log_path;
  bool needs_newline = false;
  if (std::filesystem::exists(path)) {
    load(path);
    std::ifstream in(path, std::ios::binary);
    in.seekg(0, std::ios::end);
    if (in.tellg() > 0) {
      in.seekg(-1, std::ios::end);
      needs_newline = in.get() != '\n';
    }
  }
  if (options_.read_only) return;
  log_.open(path, std::ios::binary | std::ios::app);
  if (!log_) throw Error(Errc::Io, "cannot open event log " + path.string());
  if (needs_newline) log_ << '\n' << std::flush;
}

Store::~Store() = default;

std::unique_ptr<Store> Store::replay(const std::filesystem::path& log_path) {
  if (!std::filesystem::exists(log_path)) throw Error(Errc::Io, "no event log at " + log_path.string());
  StoreOptions opts;
  opts.log_path = log_path;
  opts.read_only = true;
  return std::make_unique<Store>(std::move(opts));
}

void Store::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read event log " + path.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string::npos ? text.size() : nl;
    const std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw Error(Errc::CorruptLine, where + ": not a JSON object");
    try {
      const Event e = event_from_json(j);
      if (e.seq != seq_ + 1) {
        throw Error(Errc::InvalidArgument, "expected seq " + std::to_string(seq_ + 1) + ", found " +
                                               std::to_string(e.seq));
      }
      if (const auto* c = std::get_if<CreateTaskEvent>(&e.body)) {
        if (tasks_.count(*c->task.id)) {
          throw Error(Errc::InvalidArgument, "task \"" + *c->task.id + "\" created twice");
        }
      } else {
        check_score(std::get<ScoreEvent>(e.body));
      }
      apply(e);
    } catch (const Error& err) {
      throw Error(Errc::CorruptLine, where + ": " + err.what());
    }
  }
}

const Store::TaskState& Store::task(const std::string& id) const {
  const auto it = tasks_.find(id);
  if (it == tasks_.end()) throw Error(Errc::UnknownTask, "no task \"" + id + "\"");
  return it->second;
}

std::size_t Store::annotator(const TaskState& t, const std::string& name) const {
  const auto it = t.annotator_index.find(name);
  if (it == t.annotator_index.end()) {
    throw Error(Errc::UnknownAnnotator, "annotator \"" + name + "\" is not registered for task \"" +
                                            *t.spec.id + "\"");
  }
  return it->second;
}

std::size_t Store::item(const TaskState& t, const std::string& id) const {
  const auto it = t.item_index.find(id);
  if (it == t.item_index.end()) {
    throw Error(Errc::UnknownItem, "task \"" + *t.spec.id + "\" has no item \"" + id + "\"");
  }
  return it->second;
}

void Store::check_score(const ScoreEvent& s) const {
  if (!(s.score >= 0.0 && s.score <= 1.0)) {
    throw Error(Errc::OutOfRange, "score " + std::to_string(s.score) + " is outside [0, 1]");
  }
  const TaskState& t = task(s.task);
  const std::size_t a = annotator(t, s.annotator);
  const std::size_t i = item(t, s.item);
  const Cell& cell = t.cells[a][i];
  if (s.phase == Phase::P1) {
    if (cell.t) throw Error(Errc::DuplicateSubmission, s.annotator + " already scored " + s.item + " in P1");
    return;
  }
  if (cell.t_r) throw Error(Errc::DuplicateSubmission, s.annotator + " already scored " + s.item + " in P2");
  if (!cell.t) {
    throw Error(Errc::PhaseViolation, s.annotator + " has no P1 score for " + s.item);
  }
  if (t.p1_done[a] != t.spec.items.size()) {
    throw Error(Errc::PhaseViolation, s.annotator + " has finished P1 on " + std::to_string(t.p1_done[a]) +
                                          " of " + std::to_string(t.spec.items.size()) + " items");
  }
}

void Store::apply(const Event& e) {
  seq_ = e.seq;
  if (const auto* c = std::get_if<CreateTaskEvent>(&e.body)) {
    TaskState t;
    t.spec = c->task;
    t.created = e.timestamp;
    for (std::size_t i = 0; i < t.spec.items.size(); ++i) t.item_index[t.spec.items[i].id] = i;
    for (std::size_t a = 0; a < t.spec.annotators.size(); ++a) t.annotator_index[t.spec.annotators[a]] = a;
    t.cells.assign(t.spec.annotators.size(), std::vector<Cell>(t.spec.items.size()));
    t.p1_done.assign(t.spec.annotators.size(), 0);
    t.p2_done.assign(t.spec.annotators.size(), 0);
    order_.push_back(*t.spec.id);
    tasks_.emplace(*t.spec.id, std::move(t));
    return;
  }
  const auto& s = std::get<ScoreEvent>(e.body);
  TaskState& t = tasks_.at(s.task);
  const std::size_t a = t.annotator_index.at(s.annotator);
  Cell& cell = t.cells[a][t.item_index.at(s.item)];
  if (s.phase == Phase::P1) {
    cell.t = s.score;
    cell.t_time = e.timestamp;
    ++t.p1_done[a];
  } else {
    cell.t_r = s.score;
    cell.t_r_time = e.timestamp;
    ++t.p2_done[a];
  }
}

void Store::append(const Event& e) {
  if (!log_.is_open()) return;
  log_ << event_to_json(e).dump() << '\n';
  log_.flush();
  if (!log_) throw Error(Errc::Io, "failed to append to event log");
}

std::string Store::create_task(TaskSpec spec) {
  validate_task_spec(spec);
  std::unique_lock lock(mutex_);
  if (options_.read_only) throw Error(Errc::InvalidArgument, "store is read-only");
  if (spec.id) {
    if (tasks_.count(*spec.id)) throw Error(Errc::InvalidArgument, "task \"" + *spec.id + "\" already exists");
  } else {
    std::size_t n = tasks_.size() + 1;
    while (tasks_.count("task-" + std::to_string(n))) ++n;
    spec.id = "task-" + std::to_string(n);
  }
  Event e{seq_ + 1, options_.clock(), CreateTaskEvent{spec}};
  append(e);
  apply(e);
  return *spec.id;
}

json Store::submit_score(const std::string& task_id, const std::string& annotator_name,
                         const std::string& item_id, Phase phase, double score) {
  std::unique_lock lock(mutex_);
  if (options_.read_only) throw Error(Errc::InvalidArgument, "store is read-only");
  ScoreEvent s{task_id, annotator_name, item_id, phase, score};
  check_score(s);
  Event e{seq_ + 1, options_.clock(), s};
  append(e);
  apply(e);

  const TaskState& t = tasks_.at(task_id);
  const Cell& cell = t.cells[t.annotator_index.at(annotator_name)][t.item_index.at(item_id)];
  json ack{{"task", task_id},   {"annotator", annotator_name}, {"item", item_id},
           {"phase", to_string(phase)}, {"score", score}, {"seq", e.seq}};
  if (phase == Phase::P2) ack["t_total"] = metrics::cms_total(*cell.t, *cell.t_r, t.spec.alpha);
  ack["status"] = to_string(t.closed() ? TaskStatus::Closed : TaskStatus::Open);
  return ack;
}

std::vector<std::string> Store::task_ids() const {
  std::shared_lock lock(mutex_);
  return order_;
}

std::uint64_t Store::event_count() const {
  std::shared_lock lock(mutex_);
  return seq_;
}

json Store::task_json(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const TaskState& t = task(id);
  json items = json::array();
  for (const auto& it : t.spec.items) {
    items.push_back({{"id", it.id}, {"source", it.source}, {"prediction", it.prediction}});
  }
  json progress = json::object();
  for (std::size_t a = 0; a < t.spec.annotators.size(); ++a) {
    progress[t.spec.annotators[a]] = {{"p1", t.p1_done[a]}, {"p2", t.p2_done[a]}};
  }
  return json{{"id", id},
              {"alpha", t.spec.alpha},
              {"status", to_string(t.closed() ? TaskStatus::Closed : TaskStatus::Open)},
              {"created", t.created},
              {"annotators", t.spec.annotators},
              {"item_count", t.spec.items.size()},
              {"items", std::move(items)},
              {"progress", std::move(progress)}};
}

json Store::next_item(const std::string& task_id, const std::string& annotator_name) const {
  std::shared_lock lock(mutex_);
  const TaskState& t = task(task_id);
  const std::size_t a = annotator(t, annotator_name);
  const std::size_t n = t.spec.items.size();
  const bool phase1 = t.p1_done[a] < n;
  if (!phase1 && t.p2_done[a] == n) {
    throw Error(Errc::TaskComplete, annotator_name + " has scored every item of \"" + task_id + "\" in both phases");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Cell& cell = t.cells[a][i];
    if (phase1 ? cell.t.has_value() : cell.t_r.has_value()) continue;
    const ItemSpec& it = t.spec.items[i];
    json view{{"id", it.id}, {"source", it.source}, {"prediction", it.prediction}};
    if (!phase1) {
      view["reference"] = it.reference;
      view["t"] = *cell.t;
    }
    return json{{"task", task_id},
                {"annotator", annotator_name},
                {"phase", phase1 ? "P1" : "P2"},
                {"position", i + 1},
                {"item", std::move(view)},
                {"progress", {{"p1", t.p1_done[a]}, {"p2", t.p2_done[a]}, {"total", n}}}};
  }
  throw Error(Errc::TaskComplete, "no item left");  // unreachable: counts and cells agree
}

json Store::report(const std::string& task_id) const {
  std::shared_lock lock(mutex_);
  return report_locked(task(task_id));
}

json Store::report_locked(const TaskState& t) const {
  const auto& names = t.spec.annotators;
  json items = json::array();
  json coverage = json::object();
  for (const auto& name : names) coverage[name] = json::array();
  json incomplete = json::array();
  std::vector<double> item_scores;

  for (std::size_t i = 0; i < t.spec.items.size(); ++i) {
    json scores = json::object();
    std::vector<double> totals;
    bool complete = true;
    for (std::size_t a = 0; a < names.size(); ++a) {
      const Cell& cell = t.cells[a][i];
      json entry = json::object();
      if (cell.t) entry["t"] = *cell.t;
      if (cell.t_r) entry["t_r"] = *cell.t_r;
      if (cell.t && cell.t_r) {
        const double total = metrics::cms_total(*cell.t, *cell.t_r, t.spec.alpha);
        entry["t_total"] = total;
        totals.push_back(total);
      } else {
        complete = false;
      }
      coverage[names[a]].push_back(cell.t_r ? "both" : cell.t ? "p1" : "none");
      scores[names[a]] = std::move(entry);
    }
    json row{{"id", t.spec.items[i].id}, {"scores", std::move(scores)}, {"complete", complete}};
    if (totals.empty()) {
      row["cms"] = nullptr;
    } else {
      const double cms = metrics::cms_item(std::span<const double>(totals));
      row["cms"] = cms;
      item_scores.push_back(cms);
    }
    row["annotators_scored"] = totals.size();
    if (!complete) incomplete.push_back(t.spec.items[i].id);
    items.push_back(std::move(row));
  }

  json progress = json::object();
  for (std::size_t a = 0; a < names.size(); ++a) {
    progress[names[a]] = {{"p1", t.p1_done[a]}, {"p2", t.p2_done[a]}};
  }
  const bool complete = incomplete.empty();
  return json{{"task", *t.spec.id},
              {"alpha", t.spec.alpha},
              {"status", to_string(t.closed() ? TaskStatus::Closed : TaskStatus::Open)},
              {"annotators", names},
              {"complete", complete},
              {"task_cms", item_scores.empty() ? json(nullptr) : json(metrics::cms_task(item_scores))},
              {"scored_items", item_scores.size()},
              {"item_count", t.spec.items.size()},
              {"incomplete_items", std::move(incomplete)},
              {"items", std::move(items)},
              {"coverage", std::move(coverage)},
              {"progress", std::move(progress)}};
}

json Store::state_json() const {
  std::shared_lock lock(mutex_);
  json tasks = json::array();
  for (const auto& id : order_) {
    const TaskState& t = tasks_.at(id);
    json scores = json::array();
    for (std::size_t a = 0; a < t.spec.annotators.size(); ++a) {
      for (std::size_t i = 0; i < t.spec.items.size(); ++i) {
        const Cell& c = t.cells[a][i];
        if (!c.t && !c.t_r) continue;
        json s{{"annotator", t.spec.annotators[a]}, {"item", t.spec.items[i].id}};
        if (c.t) {
          s["t"] = *c.t;
          s["t_time"] = c.t_time;
        }
        if (c.t_r) {
          s["t_r"] = *c.t_r;
          s["t_r_time"] = c.t_r_time;
        }
        scores.push_back(std::move(s));
      }
    }
    tasks.push_back({{"spec", task_spec_to_json(t.spec)},
                     {"created", t.created},
                     {"status", to_string(t.closed() ? TaskStatus::Closed : TaskStatus::Open)},
                     {"scores", std::move(scores)}});
  }
  return json{{"events", seq_}, {"tasks", std::move(tasks)}};
}

}  // namespace ffr::cms
