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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <numeric>
#include <set>
#include <sstream>

#include "ffr/cms/http_server.hpp"
#include "ffr/cms/store.hpp"
#include "ffr/common/error.hpp"
#include "ffr/common/rng.hpp"
#include "ffr/corpus/corpus.hpp"
#include "ffr/metrics/metrics.hpp"
#include "ffr/seq2seq/checkpoint.hpp"
#include "ffr/seq2seq/train.hpp"
#include "ffr/seq2seq/translate.hpp"
#include "ffr/textnorm/textnorm.hpp"
#include "ffr/textnorm/unicode.hpp"
#include "ffr/tokenizer/tokenizer.hpp"

namespace ffr::cli {
namespace fs = std::filesystem;

void Context::emit(const nlohmann::ordered_json& j, const std::string& text) const {
  if (json) {
    out << j.dump(2) << '\n';
  } else if (!text.empty()) {
    out << text;
    if (text.back() != '\n') out << '\n';
  }
}

void Context::note(const std::string& message) const {
  if (!quiet) err << message << '\n';
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(Errc::Io, "failed writing " + path.string());
}

// LF-separated lines; a trailing LF does not start another line and a CR
// before the LF is dropped.
std::vector<std::string> read_lines(const fs::path& path) {
  const std::string text = read_file(path);
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!unicode::is_valid_utf8(line)) {
      throw Error(Errc::InvalidUtf8, path.string() + ":" + std::to_string(lines.size() + 1) + " is not valid UTF-8");
    }
    lines.push_back(std::move(line));
    pos = nl + 1;
  }
  return lines;
}

void write_lines(const fs::path& path, std::span<const std::string> lines) {
  std::string text;
  for (const auto& l : lines) text += l + '\n';
  write_file(path, text);
}

corpus::Corpus load(const CorpusInput& in) {
  corpus::LoadOptions opts;
  opts.header = in.header;
  if (!in.in.empty()) {
    if (!in.src.empty() || !in.tgt.empty()) {
      throw Error(Errc::InvalidArgument, "give either --in or --src/--tgt, not both");
    }
    return corpus::load_tsv(in.in, opts);
  }
  if (in.src.empty() || in.tgt.empty()) {
    throw Error(Errc::InvalidArgument, "an input corpus is required: --in FILE.tsv or --src A --tgt B");
  }
  return corpus::load_paired(in.src, in.tgt, opts);
}

bool save(const corpus::Corpus& c, const CorpusOutput& out) {
  if (!out.out.empty()) {
    corpus::export_tsv(c, out.out);
    return true;
  }
  if (!out.out_src.empty() || !out.out_tgt.empty()) {
    if (out.out_src.empty() || out.out_tgt.empty()) {
      throw Error(Errc::InvalidArgument, "--out-src and --out-tgt must be given together");
    }
    corpus::export_paired(c, out.out_src, out.out_tgt);
    return true;
  }
  return false;
}

corpus::Side parse_side(const std::string& s) {
  if (s == "source" || s == "src") return corpus::Side::Source;
  if (s == "target" || s == "tgt") return corpus::Side::Target;
  throw Error(Errc::InvalidArgument, "side must be \"source\" or \"target\", got \"" + s + "\"");
}

textnorm::Form form_of(const std::string& name) {
  const auto f = textnorm::parse_form(name);
  if (!f) throw Error(Errc::InvalidArgument, "unknown normalization form \"" + name + "\" (nfc, nfd, strip)");
  return *f;
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

// ---------------------------------------------------------------------------
// Training configuration

struct TrainPlan {
  fs::path train, valid, out_dir;
  bool header = false;
  std::optional<textnorm::Form> form;
  bool lowercase = true;
  tokenizer::VocabOptions vocab;
  seq2seq::ModelConfig model;
  seq2seq::TrainConfig training;
};

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
      throw Error(Errc::InvalidArgument, where + ": unknown key \"" + it.key() + "\"");
    }
  }
}

template <typename T>
void take(const json& j, const char* key, T& into) {
  if (j.contains(key) && !j.at(key).is_null()) into = j.at(key).get<T>();
}

TrainPlan read_train_config(const fs::path& path, const Context& ctx) {
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(Errc::InvalidArgument, path.string() + " is not a JSON object");
  reject_unknown(j, {"train", "valid", "header", "out_dir", "normalize", "lowercase", "vocab", "model", "training", "seed"},
                 "config");
  const fs::path base = path.parent_path();
  auto resolve = [&base](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };

  TrainPlan plan;
  if (!j.contains("train")) throw Error(Errc::MissingField, "config: missing \"train\"");
  plan.train = resolve(j.at("train").get<std::string>());
  if (j.contains("valid") && !j.at("valid").is_null()) plan.valid = resolve(j.at("valid").get<std::string>());
  plan.out_dir = resolve(j.value("out_dir", std::string("run")));
  take(j, "header", plan.header);
  if (j.contains("normalize") && !j.at("normalize").is_null()) {
    const auto name = j.at("normalize").get<std::string>();
    if (name != "none") plan.form = form_of(name);
  }
  take(j, "lowercase", plan.lowercase);
  plan.vocab.tokenizer.lowercase = plan.lowercase;

  // An explicit --seed wins over the file.
  std::uint64_t seed = 0;
  take(j, "seed", seed);
  if (ctx.seed_given) seed = ctx.seed;

  if (j.contains("vocab")) {
    const json& v = j.at("vocab");
    reject_unknown(v, {"min_freq", "max_size"}, "config.vocab");
    take(v, "min_freq", plan.vocab.min_freq);
    if (v.contains("max_size") && !v.at("max_size").is_null()) plan.vocab.max_size = v.at("max_size").get<std::size_t>();
  }
  if (j.contains("model")) {
    const json& m = j.at("model");
    reject_unknown(m, {"embed_dim", "hidden_dim", "attn_dim", "num_layers", "max_src_len", "max_tgt_len"},
                   "config.model");
    take(m, "embed_dim", plan.model.embed_dim);
    take(m, "hidden_dim", plan.model.hidden_dim);
    take(m, "attn_dim", plan.model.attn_dim);
    take(m, "num_layers", plan.model.num_layers);
    take(m, "max_src_len", plan.model.max_src_len);
    take(m, "max_tgt_len", plan.model.max_tgt_len);
  }
  plan.model.seed = seed;
  plan.training.seed = seed;
  if (j.contains("training")) {
    const json& t = j.at("training");
    reject_unknown(t, {"epochs", "batch_size", "learning_rate", "optimizer", "beta1", "beta2", "epsilon",
                       "teacher_forcing", "grad_clip", "parallel", "valid_bleu", "max_decode_len"},
                   "config.training");
    take(t, "epochs", plan.training.epochs);
    take(t, "batch_size", plan.training.batch_size);
    take(t, "learning_rate", plan.training.learning_rate);
    if (t.contains("optimizer")) {
      const auto name = t.at("optimizer").get<std::string>();
      const auto kind = seq2seq::parse_optimizer(name);
      if (!kind) throw Error(Errc::InvalidArgument, "config.training: unknown optimizer \"" + name + "\"");
      plan.training.optimizer = *kind;
    }
    take(t, "beta1", plan.training.beta1);
    take(t, "beta2", plan.training.beta2);
    take(t, "epsilon", plan.training.epsilon);
    take(t, "teacher_forcing", plan.training.teacher_forcing);
    take(t, "grad_clip", plan.training.grad_clip);
    bool parallel = false;
    take(t, "parallel", parallel);
    plan.training.execution = parallel ? Execution::Parallel : Execution::Serial;
    take(t, "valid_bleu", plan.training.valid_bleu);
    take(t, "max_decode_len", plan.training.max_decode_len);
  }
  plan.training.validate();
  return plan;
}

corpus::Corpus prepare(const fs::path& path, const TrainPlan& plan) {
  corpus::LoadOptions opts;
  opts.header = plan.header;
  corpus::Corpus c = corpus::load_tsv(path, opts);
  if (plan.form) c = textnorm::normalize_corpus(c, *plan.form);
  return c;
}

std::vector<tokenizer::EncodedPair> encode_all(const corpus::Corpus& c, const tokenizer::Vocabulary& sv,
                                               const tokenizer::Vocabulary& tv, const TrainPlan& plan) {
  std::vector<tokenizer::EncodedPair> out;
  out.reserve(c.size());
  for (const auto& p : c.pairs) {
    out.push_back(tokenizer::encode_pair(p.source, p.target, sv, tv, plan.vocab.tokenizer,
                                         plan.model.max_src_len, plan.model.max_tgt_len));
  }
  return out;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

// ---------------------------------------------------------------------------

int cmd_clean(const CleanArgs& a, const Context& ctx) {
  const corpus::Corpus c = load(a.input);
  corpus::CleanRules rules = a.rules.empty() ? corpus::CleanRules::all() : corpus::CleanRules{};
  for (const auto& name : a.rules) {
    const auto r = corpus::parse_clean_rule(name);
    if (!r) throw Error(Errc::InvalidArgument, "unknown cleaning rule \"" + name + "\"");
    rules.rules.push_back(*r);
  }
  rules.max_length_ratio = a.max_ratio;
  const auto [cleaned, report] = corpus::clean(c, rules);
  if (!save(cleaned, a.output)) ctx.out << corpus::to_tsv(cleaned);

  json dropped = json::object();
  std::string text = "input " + std::to_string(report.input_count) + ", kept " +
                     std::to_string(report.output_count) + "\n";
  for (const auto& [rule, n] : report.dropped_by_rule) {
    dropped[rule] = n;
    text += "  " + rule + ": " + std::to_string(n) + "\n";
  }
  const json j{{"input", report.input_count}, {"output", report.output_count}, {"dropped", dropped}};
  if (ctx.json) {
    // Without an output file the corpus itself went to stdout.
    if (!a.output.out.empty() || !a.output.out_src.empty()) ctx.emit(j, "");
    else ctx.err << j.dump() << '\n';
  } else if (!ctx.quiet) {
    ctx.err << text;
  }
  return 0;
}

int cmd_stats(const StatsArgs& a, const Context& ctx) {
  const corpus::Corpus c = load(a.input);
  corpus::BucketSpec spec;
  spec.upper_bounds = a.bounds;
  const corpus::LengthBucketReport r = corpus::length_stats(c, spec);
  json j{{"labels", r.labels},
         {"source", {{"counts", r.source.counts}, {"max_len", r.source.max_len}}},
         {"target", {{"counts", r.target.counts}, {"max_len", r.target.max_len}}},
         {"total", r.total}};
  std::ostringstream text;
  text << std::left << std::setw(10) << "bucket" << std::right << std::setw(10) << "source" << std::setw(10)
       << "target" << '\n';
  for (std::size_t b = 0; b < r.labels.size(); ++b) {
    text << std::left << std::setw(10) << r.labels[b] << std::right << std::setw(10) << r.source.counts[b]
         << std::setw(10) << r.target.counts[b] << '\n';
  }
  text << std::left << std::setw(10) << "total" << std::right << std::setw(10) << r.total << std::setw(10)
       << r.total << '\n';
  text << std::left << std::setw(10) << "max len" << std::right << std::setw(10) << r.source.max_len
       << std::setw(10) << r.target.max_len << '\n';
  ctx.emit(j, text.str());
  return 0;
}

int cmd_normalize(const NormalizeArgs& a, const Context& ctx) {
  const textnorm::Form form = form_of(a.form);
  const Execution exec = a.parallel ? Execution::Parallel : Execution::Serial;

  if (!a.lines.empty()) {
    const std::vector<std::string> lines = read_lines(a.lines);
    const std::vector<std::string> out = textnorm::normalize_lines(lines, form, exec);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) changed += lines[i] != out[i];
    if (!a.output.out.empty()) write_lines(a.output.out, out);
    else for (const auto& l : out) ctx.out << l << '\n';
    ctx.note(std::to_string(lines.size()) + " lines, " + std::to_string(changed) + " changed (" +
             std::string(textnorm::to_string(form)) + ")");
    return 0;
  }

  const corpus::Corpus c = load(a.input);
  if (!a.families.empty()) {
    textnorm::FamilyOptions fo;
    fo.lowercase = !a.keep_case;
    fo.fold_open_vowels = a.fold_open_vowels;
    const auto fams = textnorm::find_diacritic_families(c, parse_side(a.side), fo);
    write_file(a.families, textnorm::families_to_jsonl(fams));
    ctx.note(std::to_string(fams.size()) + " diacritic families written to " + a.families);
  }
  const corpus::Corpus n = textnorm::normalize_corpus(c, form, exec);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    changed += c.pairs[i].source != n.pairs[i].source || c.pairs[i].target != n.pairs[i].target;
  }
  if (!save(n, a.output) && a.families.empty()) ctx.out << corpus::to_tsv(n);
  const json j{{"form", textnorm::to_string(form)}, {"pairs", n.size()}, {"changed", changed}};
  if (ctx.json && (!a.output.out.empty() || !a.output.out_src.empty() || !a.families.empty())) ctx.emit(j, "");
  else ctx.note(std::to_string(n.size()) + " pairs, " + std::to_string(changed) + " changed (" +
                std::string(textnorm::to_string(form)) + ")");
  return 0;
}

int cmd_split(const SplitArgs& a, const Context& ctx) {
  const corpus::Corpus c = load(a.input);
  corpus::SplitSpec spec;
  spec.seed = ctx.seed;
  spec.stratify_by_origin = a.stratify;
  if (!a.counts.empty() == !a.fractions.empty()) {
    throw Error(Errc::InvalidArgument, "give exactly one of --fractions or --counts");
  }
  if (!a.counts.empty()) {
    if (a.counts.size() != 3) throw Error(Errc::InvalidArgument, "--counts needs train,valid,test");
    spec.sizes = corpus::SplitCounts{a.counts[0], a.counts[1], a.counts[2]};
  } else {
    if (a.fractions.size() != 3) throw Error(Errc::InvalidArgument, "--fractions needs train,valid,test");
    spec.sizes = corpus::SplitFractions{a.fractions[0], a.fractions[1], a.fractions[2]};
  }
  const corpus::SplitResult r = corpus::split(c, spec);
  const fs::path dir = a.out_dir.empty() ? fs::path(".") : fs::path(a.out_dir);
  fs::create_directories(dir);
  corpus::export_tsv(r.train, dir / "train.tsv");
  corpus::export_tsv(r.valid, dir / "valid.tsv");
  corpus::export_tsv(r.test, dir / "test.tsv");
  const json j{{"train", r.train.size()}, {"valid", r.valid.size()}, {"test", r.test.size()}, {"seed", ctx.seed}};
  ctx.emit(j, "train " + std::to_string(r.train.size()) + ", valid " + std::to_string(r.valid.size()) +
                  ", test " + std::to_string(r.test.size()) + " -> " + dir.string());
  return 0;
}

int cmd_vocab(const VocabArgs& a, const Context& ctx) {
  const corpus::Corpus c = load(a.input);
  tokenizer::VocabOptions opts;
  opts.min_freq = a.min_freq;
  opts.max_size = a.max_size;
  opts.tokenizer.lowercase = !a.keep_case;
  const auto v = tokenizer::Vocabulary::build(c.sentences(parse_side(a.side)), opts);
  if (a.out.empty()) ctx.out << v.to_json() << '\n';
  else v.save(a.out);
  const json j{{"size", v.size()}, {"side", a.side}, {"out", a.out}};
  if (!a.out.empty()) ctx.emit(j, std::to_string(v.size()) + " entries -> " + a.out);
  return 0;
}

int cmd_train(const TrainArgs& a, const Context& ctx) {
  const TrainPlan plan = read_train_config(a.config, ctx);
  const corpus::Corpus train_c = prepare(plan.train, plan);
  const corpus::Corpus valid_c = plan.valid.empty() ? corpus::Corpus{} : prepare(plan.valid, plan);

  const auto sv = tokenizer::Vocabulary::build(train_c.sentences(corpus::Side::Source), plan.vocab);
  const auto tv = tokenizer::Vocabulary::build(train_c.sentences(corpus::Side::Target), plan.vocab);
  const auto train_set = encode_all(train_c, sv, tv, plan);
  const auto valid_set = encode_all(valid_c, sv, tv, plan);

  seq2seq::ModelConfig mc = plan.model;
  mc.src_vocab = sv.size();
  mc.tgt_vocab = tv.size();
  mc.validate();
  ctx.note("training on " + std::to_string(train_set.size()) + " pairs, vocab " + std::to_string(sv.size()) +
           "/" + std::to_string(tv.size()) + ", " + std::to_string(plan.training.epochs) + " epochs");

  const auto result = seq2seq::train(seq2seq::init_model(mc), train_set, valid_set, plan.training,
                                     [&ctx](const seq2seq::EpochRecord& r) {
                                       ctx.note("epoch " + std::to_string(r.epoch) + "  train " +
                                                fixed(r.train_loss) + "  valid " + fixed(r.valid_loss) +
                                                "  bleu " + fixed(r.valid_bleu));
                                     });

  fs::create_directories(plan.out_dir);
  seq2seq::save_checkpoint(result.params, mc, plan.out_dir / "model.ckpt");
  sv.save(plan.out_dir / "src_vocab.json");
  tv.save(plan.out_dir / "tgt_vocab.json");
  const json pipeline{{"normalize", plan.form ? json(textnorm::to_string(*plan.form)) : json("none")},
                      {"lowercase", plan.lowercase},
                      {"max_src_len", mc.max_src_len},
                      {"max_tgt_len", mc.max_tgt_len}};
  write_file(plan.out_dir / "pipeline.json", pipeline.dump(2) + "\n");

  json epochs = json::array();
  for (const auto& r : result.history.epochs) {
    epochs.push_back({{"epoch", r.epoch},
                      {"train_loss", r.train_loss},
                      {"valid_loss", number_or_null(r.valid_loss)},
                      {"valid_bleu", number_or_null(r.valid_bleu)}});
  }
  const json history{{"epochs", epochs},
                     {"best_epoch", result.history.best_epoch ? json(*result.history.best_epoch) : json(nullptr)}};
  write_file(plan.out_dir / "history.json", history.dump(2) + "\n");

  // Evaluate what was saved: the checkpoint stores 32-bit floats.
  const auto saved = seq2seq::load_checkpoint(plan.out_dir / "model.ckpt");
  const double acc = seq2seq::token_accuracy(saved.params, train_set, plan.training.execution);
  const json j{{"out_dir", plan.out_dir.string()},
               {"epochs", result.history.epochs.size()},
               {"best_epoch", history["best_epoch"]},
               {"final_train_loss", result.history.epochs.empty() ? json(nullptr) : json(result.history.epochs.back().train_loss)},
               {"train_token_accuracy", acc},
               {"parameters", result.params.parameter_count()}};
  ctx.emit(j, "saved " + (plan.out_dir / "model.ckpt").string() + "; train token accuracy " + fixed(acc));
  return 0;
}

int cmd_translate(const TranslateArgs& a, const Context& ctx) {
  const fs::path dir = a.model_dir;
  const auto ck = seq2seq::load_checkpoint(dir / "model.ckpt");
  const auto sv = tokenizer::Vocabulary::load(dir / "src_vocab.json");
  const auto tv = tokenizer::Vocabulary::load(dir / "tgt_vocab.json");
  if (sv.size() != ck.config.src_vocab || tv.size() != ck.config.tgt_vocab) {
    throw Error(Errc::ShapeManifestMismatch, "vocabulary sizes do not match the checkpoint");
  }
  std::optional<textnorm::Form> form;
  tokenizer::TokenizerOptions topts;
  if (fs::exists(dir / "pipeline.json")) {
    const json p = json::parse(read_file(dir / "pipeline.json"));
    const auto name = p.value("normalize", std::string("none"));
    if (name != "none") form = form_of(name);
    topts.lowercase = p.value("lowercase", true);
  }

  std::vector<std::string> inputs;
  if (!a.text.empty()) inputs.push_back(a.text);
  if (!a.in.empty()) {
    const auto lines = read_lines(a.in);
    inputs.insert(inputs.end(), lines.begin(), lines.end());
  }
  if (a.text.empty() && a.in.empty()) throw Error(Errc::InvalidArgument, "give --text or --in");

  json rows = json::array();
  std::vector<std::string> outputs;
  for (const auto& raw : inputs) {
    const std::string s = form ? textnorm::normalize(raw, *form) : raw;
    const auto t = seq2seq::translate(ck.params, s, sv, tv, a.max_len, topts);
    outputs.push_back(t.text);
    json row{{"source", raw}, {"translation", t.text}};
    if (a.attention) {
      json att = json::array();
      for (std::size_t r = 0; r < t.attention.rows(); ++r) {
        const auto v = t.attention.row(r);
        att.push_back(std::vector<double>(v.begin(), v.end()));
      }
      std::vector<std::string> emitted;
      for (auto id : t.ids) emitted.push_back(tv.token(id));
      row["source_tokens"] = t.source_tokens;
      row["output_tokens"] = emitted;
      row["attention"] = std::move(att);
    }
    rows.push_back(std::move(row));
  }
  if (!a.out.empty()) write_lines(a.out, outputs);
  if (ctx.json) {
    ctx.out << json{{"translations", rows}}.dump(2) << '\n';
  } else if (a.out.empty()) {
    for (const auto& o : outputs) ctx.out << o << '\n';
  }
  return 0;
}

int cmd_eval(const EvalArgs& a, const Context& ctx) {
  const auto refs = read_lines(a.refs);
  const auto hyps = read_lines(a.hyps);
  if (refs.size() != hyps.size()) {
    throw Error(Errc::LengthMismatch, a.refs + " has " + std::to_string(refs.size()) + " lines, " + a.hyps +
                                          " has " + std::to_string(hyps.size()));
  }
  const double scale = a.scale100 ? 100.0 : 1.0;
  json details{{"sentences", refs.size()}};
  double score = 0.0;
  if (a.metric == "bleu") {
    const auto r = metrics::bleu_corpus(std::span<const std::string>(refs), std::span<const std::string>(hyps), a.max_n);
    score = r.score;
    details["precisions"] = r.precisions;
    details["brevity_penalty"] = r.brevity_penalty;
    details["hyp_len"] = r.hyp_len;
    details["ref_len"] = r.ref_len;
  } else if (a.metric == "sentence-bleu" || a.metric == "gleu") {
    if (hyps.empty()) throw Error(Errc::EmptyHypothesisSet, "no hypotheses");
    std::vector<metrics::Tokens> rt, ht;
    for (const auto& s : refs) rt.push_back(metrics::split(s));
    for (const auto& s : hyps) ht.push_back(metrics::split(s));
    std::vector<double> scores;
    if (a.metric == "gleu") {
      scores = metrics::sentence_scores(rt, ht, metrics::SentenceMetric::Gleu);
    } else {
      const auto sm = metrics::parse_smoothing(a.smoothing);
      if (!sm) throw Error(Errc::InvalidArgument, "unknown smoothing \"" + a.smoothing + "\"");
      for (std::size_t i = 0; i < rt.size(); ++i) scores.push_back(metrics::bleu_sentence(rt[i], ht[i], a.max_n, *sm));
    }
    score = std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
    std::vector<double> scaled(scores);
    for (double& s : scaled) s *= scale;
    details["per_sentence"] = scaled;
  } else {
    throw Error(Errc::InvalidArgument, "unknown metric \"" + a.metric + "\" (bleu, sentence-bleu, gleu)");
  }
  const json j{{"metric", a.metric}, {"score", score * scale}, {"details", details}};
  ctx.emit(j, a.metric + " " + fixed(score * scale, a.scale100 ? 2 : 4));
  return 0;
}

int cmd_cms_serve(const CmsServeArgs& a, const Context& ctx) {
  cms::StoreOptions opts;
  if (!a.store.empty()) opts.log_path = a.store;
  cms::Store store(std::move(opts));
  cms::HttpServer server(store);
  const int port = server.bind(a.host, a.port);
  if (port < 0) throw Error(Errc::Io, "cannot bind " + a.host + ":" + std::to_string(a.port));
  ctx.note("cms service on http://" + a.host + ":" + std::to_string(port) + " (" +
           std::to_string(store.task_ids().size()) + " tasks, " + std::to_string(store.event_count()) + " events)");
  if (!server.serve()) throw Error(Errc::Io, "server stopped unexpectedly");
  return 0;
}

int cmd_cms_create(const CmsCreateArgs& a, const Context& ctx) {
  cms::TaskSpec spec;
  if (!a.spec.empty()) {
    json j = json::parse(read_file(a.spec), nullptr, false);
    if (j.is_discarded()) throw Error(Errc::InvalidArgument, a.spec + " is not valid JSON");
    spec = cms::task_spec_from_json(j);
  } else if (!a.items.empty()) {
    // TSV rows: source, prediction, reference.
    const auto lines = read_lines(a.items);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      std::vector<std::string> cols;
      std::size_t pos = 0;
      for (;;) {
        const std::size_t tab = lines[i].find('\t', pos);
        cols.push_back(lines[i].substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
        if (tab == std::string::npos) break;
        pos = tab + 1;
      }
      if (cols.size() != 3) {
        throw Error(Errc::MalformedRow, a.items + ":" + std::to_string(i + 1) +
                                            ": expected source<TAB>prediction<TAB>reference");
      }
      spec.items.push_back({std::to_string(i + 1), cols[0], cols[1], cols[2]});
    }
    spec.alpha = a.alpha;
    spec.annotators = a.annotators;
  } else {
    throw Error(Errc::InvalidArgument, "give --spec FILE.json or --items FILE.tsv");
  }
  if (!a.id.empty()) spec.id = a.id;
  if (a.sample > 0 && a.sample < spec.items.size()) {
    // Seeded sample, kept in original order.
    std::vector<std::size_t> idx(spec.items.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    Rng rng(ctx.seed);
    rng.shuffle(std::span<std::size_t>(idx));
    idx.resize(a.sample);
    std::sort(idx.begin(), idx.end());
    std::vector<cms::ItemSpec> picked;
    for (std::size_t i : idx) picked.push_back(spec.items[i]);
    spec.items = std::move(picked);
  }
  cms::StoreOptions opts;
  opts.log_path = a.store;
  cms::Store store(std::move(opts));
  const std::string id = store.create_task(std::move(spec));
  ctx.emit(store.task_json(id), id);
  return 0;
}

int cmd_cms_report(const CmsReportArgs& a, const Context& ctx) {
  const auto store = cms::Store::replay(a.store);
  std::vector<std::string> ids = store->task_ids();
  if (!a.task.empty()) ids = {a.task};
  json reports = json::array();
  std::ostringstream text;
  for (const auto& id : ids) {
    const json r = store->report(id);
    text << "task " << id << "  alpha " << r["alpha"].get<double>() << "  " << r["status"].get<std::string>()
         << "  CMS " << (r["task_cms"].is_null() ? std::string("n/a") : fixed(r["task_cms"].get<double>()))
         << "  (" << r["scored_items"].get<std::size_t>() << "/" << r["item_count"].get<std::size_t>()
         << " items scored)\n";
    for (const auto& item : r["items"]) {
      text << "  " << std::left << std::setw(12) << item["id"].get<std::string>() << std::right
           << (item["cms"].is_null() ? std::string("     n/a") : fixed(item["cms"].get<double>()))
           << (item["complete"].get<bool>() ? "" : "  incomplete") << '\n';
    }
    reports.push_back(r);
  }
  ctx.emit(a.task.empty() ? json{{"reports", reports}} : reports.at(0), text.str());
  return 0;
}

}  // namespace ffr::cli
