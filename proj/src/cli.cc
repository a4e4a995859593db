// src/cli.cc

// Copyright 2026  The sctc-mdd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "sctc/cli.h"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sctc/aligner.h"
#include "sctc/ctc.h"
#include "sctc/decoder.h"
#include "sctc/error.h"
#include "sctc/grad_check.h"
#include "sctc/inventory.h"
#include "sctc/io.h"
#include "sctc/mdd.h"
#include "sctc/sctc_sb.h"
#include "sctc/toy_trainer.h"

namespace sctc {
namespace {

using Json = nlohmann::ordered_json;

enum class Format { kText, kJson };

struct GlobalOptions {
  std::string attr_table;
  std::string format;
  std::uint64_t seed = 1;
  bool verbose = false;
};

class Context {
 public:
  Context(const GlobalOptions &options, std::ostream &out)
      : options_(options), out_(out) {}

  const AttributeTable &table() {
    if (options_.attr_table.empty()) return AttributeTable::Default();
    if (!loaded_) {
      loaded_ = AttributeTable::Parse(ReadTextFile(options_.attr_table));
    }
    return *loaded_;
  }

  // Each command has a natural default; --format overrides it.
  Format format(Format fallback) const {
    if (options_.format == "json") return Format::kJson;
    if (options_.format == "text") return Format::kText;
    return fallback;
  }

  std::uint64_t seed() const { return options_.seed; }
  std::ostream &out() { return out_; }

  void Emit(const Json &json) { out_ << json.dump(2) << '\n'; }

 private:
  const GlobalOptions &options_;
  std::ostream &out_;
  std::optional<AttributeTable> loaded_;
};

// Left-aligns the first `left` columns and right-aligns the rest.
std::string FormatTable(const std::vector<std::vector<std::string>> &rows,
                        std::size_t left = 1) {
  std::vector<std::size_t> widths;
  for (const auto &row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto &row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      const std::string pad(widths[c] - row[c].size(), ' ');
      line += c < left ? row[c] + pad : pad + row[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

std::string FormatRate(const std::optional<double> &rate) {
  if (!rate) return "NA";
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << *rate;
  return os.str();
}

Json RateJson(const std::optional<double> &rate) {
  return rate ? Json(*rate) : Json("NA");
}

Json CountsJson(const MddCounts &c) {
  return Json{{"TA", c.true_accept},      {"FR", c.false_reject},
              {"FA", c.false_accept},     {"TR", c.true_reject()},
              {"CD", c.correct_diagnosis}, {"DE", c.diagnosis_error}};
}

Json ClassificationJson(const MddCounts &counts,
                        const InsertionTally &insertions) {
  const MddRates rates = ComputeRates(counts);
  return Json{{"counts", CountsJson(counts)},
              {"insertions",
               {{"annotated", insertions.annotated},
                {"recognized", insertions.recognized}}},
              {"rates",
               {{"FRR", RateJson(rates.false_rejection)},
                {"FAR", RateJson(rates.false_acceptance)},
                {"DER", RateJson(rates.diagnostic_error)}}}};
}

std::vector<std::string> ClassificationRow(const std::string &label,
                                           const MddCounts &c,
                                           const InsertionTally &ins) {
  const MddRates r = ComputeRates(c);
  return {label,
          std::to_string(c.true_accept),
          std::to_string(c.false_reject),
          std::to_string(c.false_accept),
          std::to_string(c.correct_diagnosis),
          std::to_string(c.diagnosis_error),
          FormatRate(r.false_rejection),
          FormatRate(r.false_acceptance),
          FormatRate(r.diagnostic_error),
          std::to_string(ins.annotated),
          std::to_string(ins.recognized)};
}

const std::vector<std::string> kClassificationHeader = {
    "", "TA", "FR", "FA", "CD", "DE", "FRR", "FAR", "DER", "ins_ann",
    "ins_rec"};

// Runs fn(i) for i in [0, n) on a few threads; results keep input order.
template <typename Result, typename Fn>
std::vector<Result> ParallelMap(std::size_t n, Fn fn) {
  std::vector<Result> results(n);
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) results[i] = fn(i);
    }));
  }
  for (auto &job : jobs) job.get();  // rethrows the first failure
  return results;
}

// "a b c" splits on whitespace, "abc" splits into characters.
std::vector<std::string> SplitAlignArgument(const std::string &text) {
  if (text.find_first_of(" \t") != std::string::npos) return SplitTokens(text);
  std::vector<std::string> tokens;
  for (char c : text) tokens.emplace_back(1, c);
  return tokens;
}

std::string OpCode(EditOp op) {
  switch (op) {
    case EditOp::kMatch: return "M";
    case EditOp::kSubstitute: return "S";
    case EditOp::kInsert: return "I";
    case EditOp::kDelete: return "D";
  }
  return "?";
}

std::string OpName(EditOp op) {
  switch (op) {
    case EditOp::kMatch: return "match";
    case EditOp::kSubstitute: return "substitute";
    case EditOp::kInsert: return "insert";
    case EditOp::kDelete: return "delete";
  }
  return "?";
}

// --- map -------------------------------------------------------------------

void RunMap(Context &ctx, const std::vector<std::string> &words) {
  const AttributeTable &table = ctx.table();
  const TokenSequence phonemes = ParsePhonemeSequence(table, JoinTokens(words));
  const auto sequences = PhonemesToAllAttributeSequences(table, phonemes);
  const auto &attrs = table.attribute_order();
  if (ctx.format(Format::kText) == Format::kJson) {
    Json attributes = Json::object();
    for (std::size_t i = 0; i < attrs.size(); ++i)
      attributes[attrs[i].name] = sequences[i].tokens;
    ctx.Emit(Json{{"phonemes", phonemes.tokens}, {"attributes", attributes}});
    return;
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"phoneme"});
  for (const auto &p : phonemes.tokens) rows.back().push_back(p);
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    rows.push_back({attrs[i].name});
    for (const auto &t : sequences[i].tokens) rows.back().push_back(t);
  }
  ctx.out() << FormatTable(rows, rows.front().size());
}

// --- loss ------------------------------------------------------------------

void RunLoss(Context &ctx, const std::string &logits_path,
             const std::string &target_text, bool per_category) {
  const AttributeTable &table = ctx.table();
  const Matrix logits = ReadMatrixCsv(std::filesystem::path(logits_path));
  const TokenSequence phonemes = ParsePhonemeSequence(table, target_text);
  const CategoryLayout layout = MakeAttributeLayout();
  const Format format = ctx.format(Format::kText);

  if (logits.cols() == layout.width) {
    const SctcResult result =
        SctcSbLoss(logits, layout, MakeMultiLabelTarget(table, layout, phonemes));
    if (format == Format::kJson) {
      Json json{{"model", "sctc-sb"},
                {"frames", logits.rows()},
                {"nll", result.total_neg_log_likelihood}};
      if (per_category) {
        Json cats = Json::object();
        for (std::size_t i = 0; i < layout.size(); ++i)
          cats[layout.categories[i].name] = result.per_category_nll[i];
        json["per_category"] = cats;
      }
      ctx.Emit(json);
      return;
    }
    std::ostringstream value;
    value << std::setprecision(17) << result.total_neg_log_likelihood;
    std::vector<std::vector<std::string>> rows = {{"nll", value.str()}};
    if (per_category) {
      for (std::size_t i = 0; i < layout.size(); ++i) {
        std::ostringstream v;
        v << std::setprecision(17) << result.per_category_nll[i];
        rows.push_back({layout.categories[i].name, v.str()});
      }
    }
    ctx.out() << FormatTable(rows);
    return;
  }

  const auto &symbols = table.phonemes();
  if (logits.cols() != symbols.size() + 1)
    throw Error(ErrorCode::kLayoutMismatch,
                "logits have " + std::to_string(logits.cols()) +
                    " columns; expected " + std::to_string(layout.width) +
                    " (attributes) or " + std::to_string(symbols.size() + 1) +
                    " (phonemes)");
  LabelSequence labels;
  for (const auto &p : phonemes.tokens)
    labels.push_back(static_cast<int>(
        std::find(symbols.begin(), symbols.end(), p) - symbols.begin()));
  const CtcResult result = CtcLoss(logits, labels);
  if (format == Format::kJson) {
    ctx.Emit(Json{{"model", "ctc"},
                  {"frames", logits.rows()},
                  {"nll", result.neg_log_likelihood}});
    return;
  }
  std::ostringstream value;
  value << std::setprecision(17) << result.neg_log_likelihood;
  ctx.out() << FormatTable({{"nll", value.str()}});
}

// --- grad-check ------------------------------------------------------------

struct GradCheckOptions {
  std::string logits;
  std::string target;
  std::size_t frames = 20;
  std::size_t categories = kNumAttributes;
  double step = 1e-5;
};

void RunGradCheck(Context &ctx, const GradCheckOptions &opt) {
  const AttributeTable &table = ctx.table();
  Matrix logits;
  TokenSequence phonemes;
  CategoryLayout layout;
  if (!opt.logits.empty()) {
    if (opt.target.empty())
      throw Error(ErrorCode::kBadConfig, "--logits requires --target");
    logits = ReadMatrixCsv(std::filesystem::path(opt.logits));
    phonemes = ParsePhonemeSequence(table, opt.target);
    layout = MakeAttributeLayout();
  } else {
    if (opt.categories == 0 || opt.categories > kNumAttributes)
      throw Error(ErrorCode::kBadConfig,
                  "--categories must be in [1, " +
                      std::to_string(kNumAttributes) + "]");
    if (opt.frames == 0) throw Error(ErrorCode::kBadConfig, "--frames must be > 0");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < opt.categories; ++i)
      names.push_back(table.attribute_order()[i].name);
    layout = MakeLayout(names);
    std::mt19937_64 rng(ctx.seed());
    std::normal_distribution<double> normal(0.0, 1.0);
    logits = Matrix(opt.frames, layout.width);
    for (double &v : logits.Data()) v = normal(rng);
    // Half the frames is always feasible: a collapsed sequence of U tokens
    // needs at most 2U - 1 frames.
    std::uniform_int_distribution<std::size_t> length(1, (opt.frames + 1) / 2);
    std::uniform_int_distribution<std::size_t> pick(0, table.phonemes().size() - 1);
    phonemes.alphabet_id = std::string(kPhonemeAlphabet);
    for (std::size_t u = length(rng); u > 0; --u)
      phonemes.tokens.push_back(table.phonemes()[pick(rng)]);
  }
  const GradCheckReport report = CheckSctcGradient(
      logits, layout, MakeMultiLabelTarget(table, layout, phonemes), opt.step);
  if (ctx.format(Format::kText) == Format::kJson) {
    ctx.Emit(Json{{"frames", logits.rows()},
                  {"categories", layout.size()},
                  {"target", phonemes.tokens},
                  {"max_relative_error", report.max_relative_error},
                  {"worst", {{"frame", report.worst_row},
                             {"column", report.worst_col},
                             {"analytic", report.analytic},
                             {"numeric", report.numeric}}}});
    return;
  }
  std::ostringstream err, a, n;
  err << std::scientific << std::setprecision(3) << report.max_relative_error;
  a << std::setprecision(10) << report.analytic;
  n << std::setprecision(10) << report.numeric;
  ctx.out() << FormatTable({{"frames", std::to_string(logits.rows())},
                            {"categories", std::to_string(layout.size())},
                            {"target", JoinTokens(phonemes.tokens)},
                            {"max_relative_error", err.str()},
                            {"worst_frame", std::to_string(report.worst_row)},
                            {"worst_column", std::to_string(report.worst_col)},
                            {"analytic", a.str()},
                            {"numeric", n.str()}});
}

// --- decode ----------------------------------------------------------------

struct Decoded {
  std::vector<std::string> names;  // attribute names, or {"phoneme"}
  std::vector<TokenSequence> sequences;
};

Decoded DecodeFile(const AttributeTable &table, const std::string &path) {
  const Matrix logits = ReadMatrixCsv(std::filesystem::path(path));
  const CategoryLayout layout = MakeAttributeLayout();
  Decoded decoded;
  if (logits.cols() == layout.width) {
    for (const auto &c : layout.categories) decoded.names.push_back(c.name);
    decoded.sequences = DecodeAll(logits, layout);
  } else if (logits.cols() == table.phonemes().size() + 1) {
    decoded.names = {"phoneme"};
    decoded.sequences = {GreedyDecodePhoneme(logits, table)};
  } else {
    throw Error(ErrorCode::kLayoutMismatch,
                path + ": " + std::to_string(logits.cols()) +
                    " columns is neither an attribute nor a phoneme layout");
  }
  return decoded;
}

void RunDecode(Context &ctx, const std::vector<std::string> &paths) {
  const AttributeTable &table = ctx.table();
  const auto results = ParallelMap<Decoded>(
      paths.size(), [&](std::size_t i) { return DecodeFile(table, paths[i]); });
  if (ctx.format(Format::kText) == Format::kJson) {
    Json files = Json::array();
    for (std::size_t f = 0; f < paths.size(); ++f) {
      Json seqs = Json::object();
      for (std::size_t i = 0; i < results[f].names.size(); ++i)
        seqs[results[f].names[i]] = results[f].sequences[i].tokens;
      files.push_back(Json{{"file", paths[f]}, {"sequences", seqs}});
    }
    ctx.Emit(files);
    return;
  }
  for (std::size_t f = 0; f < paths.size(); ++f) {
    if (paths.size() > 1) ctx.out() << "# " << paths[f] << '\n';
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < results[f].names.size(); ++i)
      rows.push_back({results[f].names[i],
                      JoinTokens(results[f].sequences[i].tokens)});
    ctx.out() << FormatTable(rows, 2);
  }
}

// --- align -----------------------------------------------------------------

void RunAlign(Context &ctx, const std::string &ref, const std::string &hyp) {
  const Alignment a = Align(SplitAlignArgument(ref), SplitAlignArgument(hyp));
  if (ctx.format(Format::kText) == Format::kJson) {
    Json ops = Json::array();
    for (const auto &pair : a.ops) {
      ops.push_back(Json{{"op", OpName(pair.op)},
                         {"ref", pair.ref ? Json(*pair.ref) : Json(nullptr)},
                         {"hyp", pair.hyp ? Json(*pair.hyp) : Json(nullptr)}});
    }
    ctx.Emit(Json{{"ops", ops},
                  {"S", a.substitutions},
                  {"D", a.deletions},
                  {"I", a.insertions},
                  {"M", a.matches},
                  {"distance", a.Distance()}});
    return;
  }
  std::vector<std::vector<std::string>> rows = {{"ref"}, {"hyp"}, {"op"}};
  for (const auto &pair : a.ops) {
    rows[0].push_back(pair.ref.value_or("*"));
    rows[1].push_back(pair.hyp.value_or("*"));
    rows[2].push_back(OpCode(pair.op));
  }
  ctx.out() << FormatTable(rows, rows[0].size());
  ctx.out() << "S=" << a.substitutions << " D=" << a.deletions
            << " I=" << a.insertions << " M=" << a.matches
            << " distance=" << a.Distance() << '\n';
}

// --- mdd-eval --------------------------------------------------------------

std::string StripCodePrefix(const Error &e) {
  const std::string what = e.what();
  const std::string prefix = std::string(ErrorCodeName(e.code())) + ": ";
  return what.starts_with(prefix) ? what.substr(prefix.size()) : what;
}

std::vector<AnnotatedUtterance> ReadEvaluationFile(const AttributeTable &table,
                                                   const std::string &path) {
  std::istringstream in(ReadTextFile(path));
  std::vector<AnnotatedUtterance> utterances;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      std::vector<std::string> fields;
      std::stringstream ss(line);
      for (std::string field; std::getline(ss, field, '|');)
        fields.push_back(field);
      if (fields.size() != 3)
        throw Error(ErrorCode::kParse,
                    "expected canonical|annotated|recognized, got " +
                        std::to_string(fields.size()) + " fields");
      AnnotatedUtterance u{ParsePhonemeSequence(table, fields[0]),
                           ParsePhonemeSequence(table, fields[1]),
                           ParsePhonemeSequence(table, fields[2])};
      if (u.canonical.empty())
        throw Error(ErrorCode::kEmptyCanonical, "canonical sequence is empty");
      utterances.push_back(std::move(u));
    } catch (const Error &e) {
      throw Error(e.code(), path + ":" + std::to_string(line_no) + ": " +
                                StripCodePrefix(e));
    }
  }
  return utterances;
}

struct UtteranceMdd {
  MddClassification phoneme;
  std::vector<MddClassification> attributes;
};

void RunMddEval(Context &ctx, const std::string &path, const std::string &level) {
  const AttributeTable &table = ctx.table();
  const auto utterances = ReadEvaluationFile(table, path);
  const bool do_phoneme = level != "attribute";
  const bool do_attribute = level != "phoneme";
  const auto &attrs = table.attribute_order();

  const auto per_utt = ParallelMap<UtteranceMdd>(
      utterances.size(), [&](std::size_t i) {
        UtteranceMdd r;
        if (do_phoneme) r.phoneme = ClassifyPositions(utterances[i]);
        if (do_attribute) {
          for (const auto &a : attrs)
            r.attributes.push_back(AttributeLevelMdd(table, utterances[i], a.name));
        }
        return r;
      });

  MddCounts phoneme_counts;
  InsertionTally phoneme_ins;
  std::vector<MddCounts> attr_counts(attrs.size());
  std::vector<InsertionTally> attr_ins(attrs.size());
  for (const auto &r : per_utt) {
    phoneme_counts += r.phoneme.counts;
    phoneme_ins += r.phoneme.insertions;
    for (std::size_t a = 0; a < r.attributes.size(); ++a) {
      attr_counts[a] += r.attributes[a].counts;
      attr_ins[a] += r.attributes[a].insertions;
    }
  }
  MddCounts pooled;
  InsertionTally pooled_ins;
  for (std::size_t a = 0; a < attrs.size(); ++a) {
    pooled += attr_counts[a];
    pooled_ins += attr_ins[a];
  }

  if (ctx.format(Format::kJson) == Format::kJson) {
    Json report{{"utterances", utterances.size()}};
    if (do_phoneme)
      report["phoneme"] = ClassificationJson(phoneme_counts, phoneme_ins);
    if (do_attribute) {
      Json per = Json::object();
      for (std::size_t a = 0; a < attrs.size(); ++a)
        per[attrs[a].name] = ClassificationJson(attr_counts[a], attr_ins[a]);
      report["attribute"] = Json{{"pooled", ClassificationJson(pooled, pooled_ins)},
                                 {"per_attribute", per}};
    }
    ctx.Emit(report);
    return;
  }
  std::vector<std::vector<std::string>> rows = {kClassificationHeader};
  if (do_phoneme)
    rows.push_back(ClassificationRow("phoneme", phoneme_counts, phoneme_ins));
  if (do_attribute) {
    rows.push_back(ClassificationRow("attribute", pooled, pooled_ins));
    for (std::size_t a = 0; a < attrs.size(); ++a)
      rows.push_back(ClassificationRow("  " + attrs[a].name, attr_counts[a],
                                       attr_ins[a]));
  }
  ctx.out() << "utterances " << utterances.size() << '\n' << FormatTable(rows);
}

// --- train-toy -------------------------------------------------------------

struct TrainToyOptions {
  std::string out_dir;
  std::string save_corpus;
  std::size_t utterances = 200;
  std::size_t heldout = 50;
  CorpusConfig corpus;
  TrainConfig train;
};

Json ScoreJson(const AttributeScore &s) {
  return Json{{"error_rate", s.error_rate},
              {"accuracy", s.accuracy},
              {"precision", RateJson(s.prf.precision)},
              {"recall", RateJson(s.prf.recall)},
              {"f1", RateJson(s.prf.f1)}};
}

void RunTrainToy(Context &ctx, TrainToyOptions opt) {
  const AttributeTable &table = ctx.table();
  if (opt.heldout == 0 || opt.heldout >= opt.utterances)
    throw Error(ErrorCode::kBadConfig,
                "--heldout must be in [1, --utterances)");
  opt.corpus.seed = ctx.seed();
  opt.corpus.num_utterances = opt.utterances;
  opt.train.seed = ctx.seed();
  opt.corpus.Validate();
  opt.train.Validate();

  const SyntheticCorpus corpus = GenerateCorpus(opt.corpus, table.phonemes());
  auto [train_set, heldout_set] = SplitCorpus(corpus, opt.utterances - opt.heldout);
  const TrainResult trained = Train(train_set, table, opt.train);
  const EvaluationReport eval = Evaluate(trained.model, heldout_set, table);

  const std::filesystem::path dir(opt.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  SaveModel(trained.model, dir / "model.csv");
  if (!opt.save_corpus.empty()) SaveCorpus(corpus, opt.save_corpus);

  Json per = Json::object();
  for (const auto &s : eval.attributes) per[s.attribute] = ScoreJson(s);
  const Json metrics{
      {"corpus",
       {{"seed", opt.corpus.seed},
        {"utterances", opt.utterances},
        {"heldout", opt.heldout},
        {"feature_dim", opt.corpus.feature_dim},
        {"center_scale", opt.corpus.center_scale},
        {"noise_scale", opt.corpus.noise_scale}}},
      {"train",
       {{"seed", opt.train.seed},
        {"learning_rate", opt.train.learning_rate},
        {"weight_decay", opt.train.weight_decay},
        {"epochs", opt.train.epochs},
        {"batch_size", opt.train.batch_size},
        {"warmup_fraction", opt.train.warmup_fraction}}},
      {"epoch_loss", trained.epoch_loss},
      {"heldout",
       {{"mean_error_rate", eval.mean_error_rate}, {"per_attribute", per}}}};
  std::ofstream file(dir / "metrics.json");
  file << metrics.dump(2) << '\n';
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + (dir / "metrics.json").string());

  if (ctx.format(Format::kText) == Format::kJson) {
    ctx.Emit(metrics);
    return;
  }
  std::ostringstream first, last, aer;
  first << std::setprecision(6) << trained.epoch_loss.front();
  last << std::setprecision(6) << trained.epoch_loss.back();
  aer << std::fixed << std::setprecision(3) << eval.mean_error_rate;
  ctx.out() << FormatTable({{"model", (dir / "model.csv").string()},
                            {"metrics", (dir / "metrics.json").string()},
                            {"first_epoch_loss", first.str()},
                            {"last_epoch_loss", last.str()},
                            {"heldout_mean_aer", aer.str()}});
}

// --- report ----------------------------------------------------------------

struct ReportOptions {
  std::string canonical;
  std::string annotated;
  std::string recognized;
  std::string logits;
  std::string decoded;
};

// Lines of "<attribute> <tokens...>", as written by `decode --format text`.
std::vector<TokenSequence> ReadDecodedFile(const AttributeTable &table,
                                           const std::string &path) {
  std::istringstream in(ReadTextFile(path));
  std::vector<std::optional<TokenSequence>> found(kNumAttributes);
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = SplitTokens(line);
    if (tokens.empty() || tokens.front().starts_with("#")) continue;
    const std::size_t index = table.AttributeIndex(tokens.front());
    tokens.erase(tokens.begin());
    TokenSequence seq{AttributeAlphabet(table.attribute_order()[index].name),
                      std::move(tokens)};
    ValidateTokenSequence(seq);
    found[index] = std::move(seq);
  }
  std::vector<TokenSequence> sequences;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (!found[i])
      throw Error(ErrorCode::kParse, path + ": no line for attribute " +
                                         table.attribute_order()[i].name);
    sequences.push_back(*found[i]);
  }
  return sequences;
}

void RunReport(Context &ctx, const ReportOptions &opt) {
  const AttributeTable &table = ctx.table();
  const int sources = !opt.recognized.empty() + !opt.logits.empty() +
                      !opt.decoded.empty();
  if (sources != 1)
    throw Error(ErrorCode::kBadConfig,
                "exactly one of --recognized, --logits, --decoded is required");
  AnnotatedUtterance u{ParsePhonemeSequence(table, opt.canonical),
                       ParsePhonemeSequence(table, opt.annotated),
                       {std::string(kPhonemeAlphabet), {}}};
  std::vector<TokenSequence> recognized;
  if (!opt.recognized.empty()) {
    u.recognized = ParsePhonemeSequence(table, opt.recognized);
    recognized = PhonemesToAllAttributeSequences(table, u.recognized);
  } else if (!opt.logits.empty()) {
    recognized = DecodeAll(ReadMatrixCsv(std::filesystem::path(opt.logits)),
                           MakeAttributeLayout());
  } else {
    recognized = ReadDecodedFile(table, opt.decoded);
  }
  const auto entries = DiagnosisReport(table, u, recognized);
  if (ctx.format(Format::kText) == Format::kJson) {
    Json list = Json::array();
    for (const auto &e : entries) {
      Json findings = Json::array();
      for (const auto &f : e.findings)
        findings.push_back(Json{{"attribute", f.attribute},
                                {"expected", f.expected},
                                {"detected", f.detected ? Json(*f.detected)
                                                        : Json(nullptr)}});
      list.push_back(Json{{"position", e.position},
                          {"canonical", e.canonical},
                          {"annotated", e.annotated ? Json(*e.annotated)
                                                    : Json(nullptr)},
                          {"findings", findings}});
    }
    ctx.Emit(Json{{"entries", list}});
    return;
  }
  ctx.out() << RenderDiagnosisReport(entries);
}

}  // namespace

int RunCli(int argc, const char *const *argv, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Separable CTC attribute modelling and mispronunciation "
               "detection tools",
               "sctc-mdd"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--attr-table", global.attr_table,
                 "Attribute table TSV (default: the built-in table)");
  app.add_option("--format", global.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", global.seed, "Random seed")->capture_default_str();
  app.add_flag("--verbose", global.verbose, "Report timing on stderr");

  std::vector<std::string> map_words;
  auto *map = app.add_subcommand("map", "Map a phoneme sequence to the 35 attribute sequences");
  map->add_option("phonemes", map_words, "Phoneme sequence")->required();

  std::string loss_logits, loss_target;
  bool loss_per_category = false;
  auto *loss = app.add_subcommand("loss", "Loss of a logits CSV against a phoneme target");
  loss->add_option("--logits", loss_logits, "T x K logits CSV")->required();
  loss->add_option("--target", loss_target, "Target phoneme sequence")->required();
  loss->add_flag("--per-category", loss_per_category, "Show each category's NLL");

  GradCheckOptions gc;
  auto *grad = app.add_subcommand("grad-check", "Finite-difference check of the SCTC-SB gradient");
  grad->add_option("--logits", gc.logits, "T x 71 logits CSV (default: random)");
  grad->add_option("--target", gc.target, "Target phoneme sequence");
  grad->add_option("--frames", gc.frames, "Frames of the random instance")->capture_default_str();
  grad->add_option("--categories", gc.categories, "Categories of the random instance")->capture_default_str();
  grad->add_option("--step", gc.step, "Central difference step")->capture_default_str();

  std::vector<std::string> decode_paths;
  auto *decode = app.add_subcommand("decode", "Greedy decoding of logits CSV files");
  decode->add_option("logits", decode_paths, "Logits CSV files")->required();

  std::string align_ref, align_hyp;
  auto *align = app.add_subcommand("align", "Levenshtein alignment of two sequences");
  align->add_option("ref", align_ref, "Reference (whitespace-separated, or one token per character)")->required();
  align->add_option("hyp", align_hyp, "Hypothesis")->required();

  std::string mdd_input, mdd_level = "both";
  auto *mdd = app.add_subcommand("mdd-eval", "Mispronunciation detection and diagnosis metrics");
  mdd->add_option("input", mdd_input, "Lines of canonical|annotated|recognized")->required();
  mdd->add_option("--level", mdd_level, "Evaluation level")
      ->check(CLI::IsMember({"phoneme", "attribute", "both"}))
      ->capture_default_str();

  TrainToyOptions toy;
  auto *train = app.add_subcommand("train-toy", "Train the linear model on a synthetic corpus");
  train->add_option("--out", toy.out_dir, "Output directory")->required();
  train->add_option("--save-corpus", toy.save_corpus, "Also write the corpus here");
  train->add_option("--utterances", toy.utterances, "Corpus size")->capture_default_str();
  train->add_option("--heldout", toy.heldout, "Held-out utterances")->capture_default_str();
  train->add_option("--feature-dim", toy.corpus.feature_dim, "Feature dimension")->capture_default_str();
  train->add_option("--center-scale", toy.corpus.center_scale, "Class centre magnitude")->capture_default_str();
  train->add_option("--noise", toy.corpus.noise_scale, "Feature noise std")->capture_default_str();
  train->add_option("--epochs", toy.train.epochs, "Epochs")->capture_default_str();
  train->add_option("--lr", toy.train.learning_rate, "Peak learning rate")->capture_default_str();
  train->add_option("--weight-decay", toy.train.weight_decay, "Decoupled weight decay")->capture_default_str();
  train->add_option("--batch-size", toy.train.batch_size, "Batch size")->capture_default_str();

  ReportOptions rep;
  auto *report = app.add_subcommand("report", "Attribute-level diagnosis of one utterance");
  report->add_option("--canonical", rep.canonical, "Canonical phonemes")->required();
  report->add_option("--annotated", rep.annotated, "Annotated phonemes")->required();
  report->add_option("--recognized", rep.recognized, "Recognized phonemes");
  report->add_option("--logits", rep.logits, "T x 71 logits CSV to decode");
  report->add_option("--decoded", rep.decoded, "Output of `decode --format text`");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const auto start = std::chrono::steady_clock::now();
  Context ctx(global, out);
  try {
    if (*map) RunMap(ctx, map_words);
    else if (*loss) RunLoss(ctx, loss_logits, loss_target, loss_per_category);
    else if (*grad) RunGradCheck(ctx, gc);
    else if (*decode) RunDecode(ctx, decode_paths);
    else if (*align) RunAlign(ctx, align_ref, align_hyp);
    else if (*mdd) RunMddEval(ctx, mdd_input, mdd_level);
    else if (*train) RunTrainToy(ctx, toy);
    else if (*report) RunReport(ctx, rep);
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kIo ? kExitIo : kExitValidation;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  if (global.verbose) {
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    err << "elapsed " << elapsed.count() << " s\n";
  }
  return kExitOk;
}

}  // namespace sctc
