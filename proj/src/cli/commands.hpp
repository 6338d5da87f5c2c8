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

// Subcommand bodies. Option structs mirror the flags declared in cli.cpp.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace ffr::cli {

using json = nlohmann::ordered_json;

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool quiet = false;
  bool json = false;

  /// Prints `j` in --json mode, otherwise `text` (unless empty).
  void emit(const nlohmann::ordered_json& j, const std::string& text) const;
  void note(const std::string& message) const;
};

struct CorpusInput {
  std::string in;
  std::string src;
  std::string tgt;
  bool header = false;
};

struct CorpusOutput {
  std::string out;
  std::string out_src;
  std::string out_tgt;
};

struct CleanArgs {
  CorpusInput input;
  CorpusOutput output;
  std::vector<std::string> rules;
  double max_ratio = 3.0;
};

struct StatsArgs {
  CorpusInput input;
  std::vector<std::size_t> bounds{5, 10, 30};
};

struct NormalizeArgs {
  CorpusInput input;
  CorpusOutput output;
  std::string lines;
  std::string form = "nfc";
  bool parallel = false;
  std::string families;
  std::string side = "source";
  bool fold_open_vowels = false;
  bool keep_case = false;
};

struct SplitArgs {
  CorpusInput input;
  std::vector<double> fractions;
  std::vector<std::size_t> counts;
  std::string out_dir;
  bool stratify = false;
};

struct VocabArgs {
  CorpusInput input;
  std::string side = "source";
  std::size_t min_freq = 1;
  std::optional<std::size_t> max_size;
  bool keep_case = false;
  std::string out;
};

struct TrainArgs {
  std::string config;
};

struct TranslateArgs {
  std::string model_dir;
  std::string in;
  std::string text;
  std::string out;
  std::size_t max_len = 128;
  bool attention = false;
};

struct EvalArgs {
  std::string metric = "bleu";
  std::string refs;
  std::string hyps;
  std::size_t max_n = 4;
  std::string smoothing = "add-one-2plus";
  bool scale100 = false;
};

struct CmsServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string store;
};

struct CmsCreateArgs {
  std::string store;
  std::string spec;
  std::string items;
  std::string id;
  double alpha = 0.7;
  std::vector<std::string> annotators;
  std::size_t sample = 0;
};

struct CmsReportArgs {
  std::string store;
  std::string task;
};

int cmd_clean(const CleanArgs& a, const Context& ctx);
int cmd_stats(const StatsArgs& a, const Context& ctx);
int cmd_normalize(const NormalizeArgs& a, const Context& ctx);
int cmd_split(const SplitArgs& a, const Context& ctx);
int cmd_vocab(const VocabArgs& a, const Context& ctx);
int cmd_train(const TrainArgs& a, const Context& ctx);
int cmd_translate(const TranslateArgs& a, const Context& ctx);
int cmd_eval(const EvalArgs& a, const Context& ctx);
int cmd_cms_serve(const CmsServeArgs& a, const Context& ctx);
int cmd_cms_create(const CmsCreateArgs& a, const Context& ctx);
int cmd_cms_report(const CmsReportArgs& a, const Context& ctx);

}  // namespace ffr::cli
