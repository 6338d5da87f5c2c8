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

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ffr/common/error.hpp"
#include "ffr/tokenizer/tokenizer.hpp"

namespace ffr::tokenizer {
namespace {

constexpr int kFormatVersion = 1;

const std::array<std::string, kNumSpecials> kSpecialNames{"<pad>", "<sos>", "<eos>", "<unk>"};

}  // namespace

Vocabulary Vocabulary::build(std::span<const std::string> sentences, const VocabOptions& options) {
  if (sentences.empty()) throw Error(Errc::EmptyCorpus, "cannot build a vocabulary from no sentences");
  if (options.min_freq == 0) throw Error(Errc::InvalidArgument, "min_freq must be at least 1");
  if (options.max_size && *options.max_size < kNumSpecials) {
    throw Error(Errc::InvalidArgument, "max_size must leave room for the 4 special tokens");
  }

  struct Entry {
    std::size_t count = 0;
    std::size_t first_seen = 0;
  };
  std::unordered_map<std::string, Entry> entries;
  std::vector<std::string> order;
  for (const auto& sentence : sentences) {
    for (auto& token : tokenize(sentence, options.tokenizer)) {
      auto [it, inserted] = entries.try_emplace(token, Entry{0, order.size()});
      if (inserted) order.push_back(std::move(token));
      ++it->second.count;
    }
  }

  std::vector<std::string> kept;
  for (const auto& t : order) {
    if (entries[t].count >= options.min_freq) kept.push_back(t);
  }
  std::stable_sort(kept.begin(), kept.end(), [&](const std::string& a, const std::string& b) {
    return entries[a].count > entries[b].count;
  });
  if (options.max_size && kept.size() > *options.max_size - kNumSpecials) {
    kept.resize(*options.max_size - kNumSpecials);
  }

  std::vector<std::size_t> counts;
  counts.reserve(kept.size());
  for (const auto& t : kept) counts.push_back(entries[t].count);
  return from_tokens(std::move(kept), std::move(counts));
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens, std::vector<std::size_t> counts) {
  if (!counts.empty() && counts.size() != tokens.size()) {
    throw Error(Errc::InvalidArgument, "token and count lists differ in length");
  }
  Vocabulary v;
  v.tokens_ = std::move(tokens);
  v.counts_ = std::move(counts);
  v.index();
  return v;
}

void Vocabulary::index() {
  lookup_.clear();
  lookup_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    auto [it, inserted] = lookup_.emplace(tokens_[i], static_cast<TokenId>(kNumSpecials + i));
    if (!inserted) throw Error(Errc::InvalidArgument, "duplicate vocabulary token '" + tokens_[i] + "'");
  }
}

TokenId Vocabulary::id(std::string_view token) const {
  auto it = lookup_.find(std::string(token));
  return it == lookup_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(std::string_view token) const {
  return lookup_.contains(std::string(token));
}

const std::string& Vocabulary::token(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= size()) {
    throw Error(Errc::InvalidArgument, "token id " + std::to_string(id) + " outside vocabulary");
  }
  if (static_cast<std::size_t>(id) < kNumSpecials) return kSpecialNames[static_cast<std::size_t>(id)];
  return tokens_[static_cast<std::size_t>(id) - kNumSpecials];
}

std::size_t Vocabulary::frequency(std::string_view token) const {
  const TokenId i = id(token);
  if (i == kUnk || counts_.empty()) return 0;
  return counts_[static_cast<std::size_t>(i) - kNumSpecials];
}

std::string Vocabulary::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = kFormatVersion;
  j["specials"] = kSpecialNames;
  j["tokens"] = tokens_;
  if (!counts_.empty()) j["counts"] = counts_;
  return j.dump(1);
}

Vocabulary Vocabulary::from_json(std::string_view json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("vocabulary is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("tokens") || !j["tokens"].is_array()) {
    throw Error(Errc::InvalidArgument, "vocabulary JSON lacks a tokens array");
  }
  if (j.value("version", 0) != kFormatVersion) {
    throw Error(Errc::InvalidArgument, "unsupported vocabulary version");
  }
  if (j.contains("specials") && j["specials"].get<std::vector<std::string>>() !=
                                    std::vector<std::string>(kSpecialNames.begin(), kSpecialNames.end())) {
    throw Error(Errc::InvalidArgument, "vocabulary specials do not match <pad>,<sos>,<eos>,<unk>");
  }
  std::vector<std::size_t> counts;
  if (j.contains("counts")) counts = j["counts"].get<std::vector<std::size_t>>();
  return from_tokens(j["tokens"].get<std::vector<std::string>>(), std::move(counts));
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << to_json() << '\n';
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace ffr::tokenizer
