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

#include "ffr/cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>

#include "commands.hpp"
#include "ffr/common/error.hpp"

namespace ffr::cli {
namespace {

void add_input(CLI::App* cmd, CorpusInput& in) {
  cmd->add_option("--in", in.in, "Parallel corpus as TSV (source<TAB>target)");
  cmd->add_option("--src", in.src, "Source side, one sentence per line");
  cmd->add_option("--tgt", in.tgt, "Target side, one sentence per line");
  cmd->add_flag("--header", in.header, "Skip the first TSV row");
}

void add_output(CLI::App* cmd, CorpusOutput& out) {
  cmd->add_option("--out", out.out, "Write the corpus as TSV");
  cmd->add_option("--out-src", out.out_src, "Write the source side");
  cmd->add_option("--out-tgt", out.out_tgt, "Write the target side");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fon-French translation toolkit: corpus preparation, training, evaluation and CMS annotation"};
  app.name("ffr");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  // Global flags may follow the subcommand too.
  app.fallthrough();

  Context ctx{out, err};
  app.add_option("--seed", ctx.seed, "Seed for every random choice")->each([&ctx](const std::string&) {
    ctx.seed_given = true;
  });
  app.add_flag("--quiet,-q", ctx.quiet, "Suppress progress messages");
  app.add_flag("--json", ctx.json, "Machine-readable output");

  std::function<int()> action;
  std::string command;

  CleanArgs clean;
  auto* c = app.add_subcommand("clean", "Apply cleaning rules to a parallel corpus");
  add_input(c, clean.input);
  add_output(c, clean.output);
  c->add_option("--rules", clean.rules, "Comma-separated rules (default: all)")->delimiter(',');
  c->add_option("--max-ratio", clean.max_ratio, "Token-length ratio bound for drop_length_ratio");
  c->callback([&] { action = [&] { return cmd_clean(clean, ctx); }; });

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "Sentence-length bucket counts per side");
  add_input(s, stats.input);
  s->add_option("--bounds", stats.bounds, "Inclusive upper bounds of all but the last bucket")->delimiter(',');
  s->callback([&] { action = [&] { return cmd_stats(stats, ctx); }; });

  NormalizeArgs norm;
  auto* n = app.add_subcommand("normalize", "Unicode normalization and diacritic families");
  add_input(n, norm.input);
  add_output(n, norm.output);
  n->add_option("--lines", norm.lines, "Normalize a plain text file line by line instead of a corpus");
  n->add_option("--form", norm.form, "nfc, nfd or strip")->check(CLI::IsMember({"nfc", "nfd", "strip"}));
  n->add_flag("--parallel", norm.parallel, "Normalize on all OpenMP threads");
  n->add_option("--families", norm.families, "Write diacritic families as JSON Lines");
  n->add_option("--side", norm.side, "Corpus side for --families")->check(CLI::IsMember({"source", "target"}));
  n->add_flag("--fold-open-vowels", norm.fold_open_vowels, "Fold open vowels into o and e in family skeletons");
  n->add_flag("--no-lower", norm.keep_case, "Do not lowercase tokens when grouping families");
  n->callback([&] { action = [&] { return cmd_normalize(norm, ctx); }; });

  SplitArgs split;
  auto* sp = app.add_subcommand("split", "Seeded train/valid/test split");
  add_input(sp, split.input);
  sp->add_option("--fractions", split.fractions, "train,valid,test fractions summing to 1")->delimiter(',');
  sp->add_option("--counts", split.counts, "train,valid,test counts summing to the corpus size")->delimiter(',');
  sp->add_option("--out-dir", split.out_dir, "Directory for train.tsv, valid.tsv and test.tsv");
  sp->add_flag("--stratify", split.stratify, "Keep the origin mix in every part");
  sp->callback([&] { action = [&] { return cmd_split(split, ctx); }; });

  VocabArgs vocab;
  auto* v = app.add_subcommand("vocab", "Build a vocabulary for one corpus side");
  add_input(v, vocab.input);
  v->add_option("--side", vocab.side, "source or target")->check(CLI::IsMember({"source", "target"}));
  v->add_option("--min-freq", vocab.min_freq, "Drop tokens seen fewer times");
  v->add_option("--max-size", vocab.max_size, "Cap on entries, specials included");
  v->add_flag("--no-lower", vocab.keep_case, "Do not lowercase");
  v->add_option("--out", vocab.out, "Output JSON file (default: stdout)");
  v->callback([&] { action = [&] { return cmd_vocab(vocab, ctx); }; });

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Train a model from a JSON configuration");
  t->add_option("--config", train.config, "Training configuration")->required();
  t->callback([&] { action = [&] { return cmd_train(train, ctx); }; });

  TranslateArgs tr;
  auto* tx = app.add_subcommand("translate", "Greedy translation with a trained model");
  tx->add_option("--model", tr.model_dir, "Directory written by `train`")->required();
  tx->add_option("--in", tr.in, "Sentences to translate, one per line");
  tx->add_option("--text", tr.text, "A single sentence");
  tx->add_option("--out", tr.out, "Write translations here");
  tx->add_option("--max-len", tr.max_len, "Maximum emitted tokens");
  tx->add_flag("--attention", tr.attention, "Include attention matrices in --json output");
  tx->callback([&] { action = [&] { return cmd_translate(tr, ctx); }; });

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Score hypotheses against references");
  e->add_option("--metric", ev.metric, "bleu, sentence-bleu or gleu")
      ->check(CLI::IsMember({"bleu", "sentence-bleu", "gleu"}));
  e->add_option("--refs", ev.refs, "Reference sentences, one per line")->required();
  e->add_option("--hyps", ev.hyps, "Hypotheses, one per line")->required();
  e->add_option("--max-n", ev.max_n, "Highest n-gram order");
  e->add_option("--smoothing", ev.smoothing, "Sentence BLEU smoothing: none or add-one-2plus");
  e->add_flag("--scale100", ev.scale100, "Report on a 0-100 scale");
  e->callback([&] { action = [&] { return cmd_eval(ev, ctx); }; });

  auto* cms = app.add_subcommand("cms", "Context-Meaning-Similarity annotation service");
  cms->require_subcommand(1);

  CmsServeArgs serve;
  auto* cs = cms->add_subcommand("serve", "Run the HTTP service");
  cs->add_option("--host", serve.host, "Bind address");
  cs->add_option("--port", serve.port, "Port (0 picks a free one)");
  cs->add_option("--store", serve.store, "Event log (JSON Lines)");
  cs->callback([&] { action = [&] { return cmd_cms_serve(serve, ctx); }; });

  CmsCreateArgs create;
  auto* cc = cms->add_subcommand("create", "Create a task in an event log");
  cc->add_option("--store", create.store, "Event log (JSON Lines)")->required();
  cc->add_option("--spec", create.spec, "Task as JSON, the POST /tasks body");
  cc->add_option("--items", create.items, "TSV of source, prediction, reference");
  cc->add_option("--id", create.id, "Task id");
  cc->add_option("--alpha", create.alpha, "Weight of the reference-free score");
  cc->add_option("--annotators", create.annotators, "Comma-separated annotator names")->delimiter(',');
  cc->add_option("--sample", create.sample, "Keep a seeded random sample of this many items");
  cc->callback([&] { action = [&] { return cmd_cms_create(create, ctx); }; });

  CmsReportArgs report;
  auto* cr = cms->add_subcommand("report", "Print CMS reports from an event log");
  cr->add_option("--store", report.store, "Event log (JSON Lines)")->required();
  cr->add_option("--task", report.task, "Only this task");
  cr->callback([&] { action = [&] { return cmd_cms_report(report, ctx); }; });

  std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 parses a reversed vector
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& pe) {
    return app.exit(pe, out, err) == 0 ? kExitOk : kExitInvalid;
  }

  for (const auto* sub : app.get_subcommands()) {
    command = sub->get_name();
    for (const auto* inner : sub->get_subcommands()) command += " " + inner->get_name();
  }
  try {
    return action ? action() : kExitInvalid;
  } catch (const Error& ex) {
    if (ctx.json) out << json{{"error", to_string(ex.code())}, {"message", ex.what()}}.dump() << '\n';
    err << "ffr " << command << ": " << ex.what() << '\n';
    return is_io_error(ex.code()) ? kExitIo : kExitInvalid;
  } catch (const std::filesystem::filesystem_error& ex) {
    err << "ffr " << command << ": " << ex.what() << '\n';
    return kExitIo;
  } catch (const nlohmann::json::exception& ex) {
    err << "ffr " << command << ": bad JSON: " << ex.what() << '\n';
    return kExitInvalid;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace ffr::cli
