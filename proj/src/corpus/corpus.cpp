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
#include <fstream>
#include <sstream>

#include "ffr/common/error.hpp"
#include "ffr/corpus/corpus.hpp"
#include "ffr/textnorm/unicode.hpp"

namespace ffr::corpus {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::Io, "read failed for " + path.string());
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

// Splits on LF. A trailing LF does not start an extra (empty) line, and a
// CR before the LF is tolerated.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

void require_utf8(std::string_view text, std::size_t line_no, const std::string& where) {
  if (!unicode::is_valid_utf8(text)) {
    throw Error(Errc::InvalidUtf8, where + " line " + std::to_string(line_no) + " is not valid UTF-8");
  }
}

}  // namespace

std::string_view to_string(Origin origin) noexcept {
  switch (origin) {
    case Origin::JW: return "JW";
    case Origin::BL: return "BL";
    case Origin::Other: return "OTHER";
  }
  return "OTHER";
}

std::vector<std::string> Corpus::sentences(Side s) const {
  std::vector<std::string> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.side(s));
  return out;
}

Corpus parse_tsv(std::string_view text, const LoadOptions& options) {
  Corpus corpus;
  const auto lines = split_lines(text);
  for (std::size_t i = options.header ? 1 : 0; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    const std::size_t line_no = i + 1;
    require_utf8(line, line_no, "TSV");
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      const std::size_t columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), '\t')) + 1;
      throw Error(Errc::MalformedRow, "TSV line " + std::to_string(line_no) + " has " +
                                          std::to_string(columns) + " columns, expected 2");
    }
    corpus.pairs.push_back(SentencePair{static_cast<std::int64_t>(corpus.pairs.size()),
                                        std::string(line.substr(0, tab)),
                                        std::string(line.substr(tab + 1)), options.origin});
  }
  return corpus;
}

Corpus load_tsv(const std::filesystem::path& path, const LoadOptions& options) {
  return parse_tsv(read_file(path), options);
}

Corpus load_paired(const std::filesystem::path& source, const std::filesystem::path& target,
                   const LoadOptions& options) {
  const std::string src_text = read_file(source);
  const std::string tgt_text = read_file(target);
  const auto src = split_lines(src_text);
  const auto tgt = split_lines(tgt_text);
  if (src.size() != tgt.size()) {
    throw Error(Errc::LineCountMismatch, source.string() + " has " + std::to_string(src.size()) +
                                             " lines but " + target.string() + " has " +
                                             std::to_string(tgt.size()));
  }
  Corpus corpus;
  corpus.pairs.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    require_utf8(src[i], i + 1, source.string());
    require_utf8(tgt[i], i + 1, target.string());
    corpus.pairs.push_back(SentencePair{static_cast<std::int64_t>(i), std::string(src[i]),
                                        std::string(tgt[i]), options.origin});
  }
  return corpus;
}

Corpus load_parallel(const std::filesystem::path& path, Format format,
                     const std::filesystem::path& companion, const LoadOptions& options) {
  if (format == Format::Tsv) return load_tsv(path, options);
  if (companion.empty()) {
    throw Error(Errc::InvalidArgument, "paired text format needs a target-side file");
  }
  return load_paired(path, companion, options);
}

std::string to_tsv(const Corpus& corpus) {
  std::string out;
  for (const auto& p : corpus.pairs) {
    out += p.source;
    out += '\t';
    out += p.target;
    out += '\n';
  }
  return out;
}

void export_tsv(const Corpus& corpus, const std::filesystem::path& path) {
  write_file(path, to_tsv(corpus));
}

void export_paired(const Corpus& corpus, const std::filesystem::path& source,
                   const std::filesystem::path& target) {
  std::string src, tgt;
  for (const auto& p : corpus.pairs) {
    src += p.source + '\n';
    tgt += p.target + '\n';
  }
  write_file(source, src);
  write_file(target, tgt);
}

void export_parallel(const Corpus& corpus, const std::filesystem::path& path, Format format,
                     const std::filesystem::path& companion) {
  if (format == Format::Tsv) {
    export_tsv(corpus, path);
    return;
  }
  if (companion.empty()) {
    throw Error(Errc::InvalidArgument, "paired text format needs a target-side file");
  }
  export_paired(corpus, path, companion);
}

}  // namespace ffr::corpus
