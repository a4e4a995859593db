// src/toy_trainer.cc

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

#include "sctc/toy_trainer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include "sctc/decoder.h"
#include "sctc/error.h"
#include "sctc/io.h"

namespace sctc {

void CorpusConfig::Validate() const {
  auto fail = [](const std::string &what) {
    throw Error(ErrorCode::kBadConfig, what);
  };
  if (feature_dim < 8) fail("feature_dim must be at least 8");
  if (min_phonemes == 0 || min_phonemes > max_phonemes)
    fail("need 1 <= min_phonemes <= max_phonemes");
  if (min_frames_per_phoneme == 0 ||
      min_frames_per_phoneme > max_frames_per_phoneme)
    fail("need 1 <= min_frames_per_phoneme <= max_frames_per_phoneme");
  if (!(center_scale > 0.0)) fail("center_scale must be positive");
  if (!(noise_scale >= 0.0)) fail("noise_scale must be non-negative");
}

SyntheticCorpus GenerateCorpus(const CorpusConfig &config,
                               const std::vector<std::string> &phoneme_set) {
  config.Validate();
  if (phoneme_set.empty())
    throw Error(ErrorCode::kBadConfig, "empty phoneme set");
  for (const auto &p : phoneme_set) {
    if (!IsCanonicalPhoneme(p))
      throw Error(ErrorCode::kBadConfig, "'" + p + "' is not a phoneme");
  }

  SyntheticCorpus corpus;
  corpus.config = config;
  corpus.phoneme_set = phoneme_set;

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gaussian(0.0, 1.0);
  corpus.centers = Matrix(phoneme_set.size() + 1, config.feature_dim);
  if (config.sparse_centers) {
    if (config.feature_dim < corpus.centers.rows())
      throw Error(ErrorCode::kBadConfig,
                  "sparse centres need feature_dim >= " +
                      std::to_string(corpus.centers.rows()));
    std::vector<std::size_t> axes(config.feature_dim);
    std::iota(axes.begin(), axes.end(), 0);
    std::shuffle(axes.begin(), axes.end(), rng);
    std::uniform_real_distribution<double> magnitude(0.75, 1.25);
    for (std::size_t r = 0; r < corpus.centers.rows(); ++r)
      corpus.centers(r, axes[r]) = config.center_scale * magnitude(rng);
  } else {
    for (double &x : corpus.centers.Data()) x = config.center_scale * gaussian(rng);
  }

  std::uniform_int_distribution<std::size_t> pick_phoneme(0, phoneme_set.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_length(config.min_phonemes,
                                                         config.max_phonemes);
  std::uniform_int_distribution<std::size_t> pick_frames(
      config.min_frames_per_phoneme, config.max_frames_per_phoneme);
  const int transition_row = static_cast<int>(phoneme_set.size());

  for (std::size_t n = 0; n < config.num_utterances; ++n) {
    SyntheticUtterance utt;
    std::ostringstream id;
    id << "utt" << std::setw(5) << std::setfill('0') << n;
    utt.id = id.str();
    utt.phonemes.alphabet_id = std::string(kPhonemeAlphabet);

    const std::size_t length = pick_length(rng);
    for (std::size_t u = 0; u < length; ++u) {
      const std::size_t p = pick_phoneme(rng);
      utt.phonemes.tokens.push_back(phoneme_set[p]);
      if (u > 0) {
        for (std::size_t f = 0; f < config.transition_frames; ++f)
          utt.frame_labels.push_back(kTransitionFrame);
      }
      const std::size_t frames = pick_frames(rng);
      for (std::size_t f = 0; f < frames; ++f)
        utt.frame_labels.push_back(static_cast<int>(p));
    }

    utt.features = Matrix(utt.frame_labels.size(), config.feature_dim);
    for (std::size_t t = 0; t < utt.frame_labels.size(); ++t) {
      const int label = utt.frame_labels[t];
      const auto center =
          corpus.centers.Row(label == kTransitionFrame ? transition_row : label);
      for (std::size_t d = 0; d < config.feature_dim; ++d) {
        double noise = config.noise_scale > 0.0
                           ? config.noise_scale * gaussian(rng)
                           : 0.0;
        utt.features(t, d) = center[d] + noise;
      }
    }
    corpus.utterances.push_back(std::move(utt));
  }
  return corpus;
}

std::pair<SyntheticCorpus, SyntheticCorpus> SplitCorpus(
    const SyntheticCorpus &corpus, std::size_t num_first) {
  num_first = std::min(num_first, corpus.utterances.size());
  SyntheticCorpus first = corpus, second = corpus;
  first.utterances.assign(corpus.utterances.begin(),
                          corpus.utterances.begin() + num_first);
  second.utterances.assign(corpus.utterances.begin() + num_first,
                           corpus.utterances.end());
  first.config.num_utterances = first.utterances.size();
  second.config.num_utterances = second.utterances.size();
  return {std::move(first), std::move(second)};
}

void SaveCorpus(const SyntheticCorpus &corpus, const std::filesystem::path &dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string());
  std::ofstream manifest(dir / "manifest.tsv");
  if (!manifest)
    throw Error(ErrorCode::kIo, "cannot write " + (dir / "manifest.tsv").string());
  for (const auto &utt : corpus.utterances) {
    WriteMatrixCsv(dir / (utt.id + ".csv"), utt.features);
    manifest << utt.id << '\t' << JoinTokens(utt.phonemes.tokens) << '\n';
  }
  if (!manifest) throw Error(ErrorCode::kIo, "manifest write failed");
}

SyntheticCorpus LoadCorpus(const std::filesystem::path &dir,
                           const AttributeTable &table) {
  std::istringstream manifest(ReadTextFile(dir / "manifest.tsv"));
  SyntheticCorpus corpus;
  corpus.phoneme_set = table.phonemes();
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(manifest, line)) {
    ++line_number;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(ErrorCode::kParse, "manifest line " +
                                         std::to_string(line_number) +
                                         " has no tab");
    SyntheticUtterance utt;
    utt.id = line.substr(0, tab);
    utt.phonemes = ParsePhonemeSequence(table, line.substr(tab + 1));
    utt.features = ReadMatrixCsv(dir / (utt.id + ".csv"));
    corpus.utterances.push_back(std::move(utt));
  }
  corpus.config.num_utterances = corpus.utterances.size();
  if (!corpus.utterances.empty())
    corpus.config.feature_dim = corpus.utterances.front().features.cols();
  return corpus;
}

Matrix LinearModel::Forward(const Matrix &features) const {
  if (features.cols() != input_dim() || bias.size() != output_dim())
    throw Error(ErrorCode::kDimensionMismatch,
                "features have " + std::to_string(features.cols()) +
                    " columns, model expects " + std::to_string(input_dim()));
  Matrix out(features.rows(), output_dim());
  for (std::size_t t = 0; t < features.rows(); ++t) {
    auto row = out.Row(t);
    std::copy(bias.begin(), bias.end(), row.begin());
    for (std::size_t f = 0; f < input_dim(); ++f) {
      const double x = features(t, f);
      if (x == 0.0) continue;
      auto w = weights.Row(f);
      for (std::size_t k = 0; k < row.size(); ++k) row[k] += x * w[k];
    }
  }
  return out;
}

LinearModel InitLinearModel(std::size_t input_dim, std::size_t output_dim,
                            std::uint64_t seed, double scale) {
  LinearModel model{Matrix(input_dim, output_dim),
                    std::vector<double>(output_dim, 0.0)};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gaussian(0.0, scale);
  for (double &w : model.weights.Data()) w = gaussian(rng);
  return model;
}

void SaveModel(const LinearModel &model, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << model.input_dim() << ',' << model.output_dim() << '\n'
      << std::setprecision(17);
  for (std::size_t f = 0; f < model.input_dim(); ++f) {
    for (std::size_t k = 0; k < model.output_dim(); ++k)
      out << (k ? "," : "") << model.weights(f, k);
    out << '\n';
  }
  for (std::size_t k = 0; k < model.output_dim(); ++k)
    out << (k ? "," : "") << model.bias[k];
  out << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

LinearModel LoadModel(const std::filesystem::path &path) {
  // The checkpoint is a matrix CSV with one extra (bias) row beyond the
  // header's row count.
  std::istringstream in(ReadTextFile(path));
  std::string header;
  std::getline(in, header);
  std::istringstream header_stream(header);
  std::size_t rows = 0, cols = 0;
  char comma = 0;
  if (!(header_stream >> rows >> comma >> cols) || comma != ',')
    throw Error(ErrorCode::kParse, "bad checkpoint header in " + path.string());
  std::ostringstream body;
  body << rows + 1 << ',' << cols << '\n' << in.rdbuf();
  std::istringstream matrix_stream(body.str());
  Matrix all = ReadMatrixCsv(matrix_stream);
  LinearModel model{Matrix(rows, cols), std::vector<double>(cols)};
  for (std::size_t f = 0; f < rows; ++f)
    for (std::size_t k = 0; k < cols; ++k) model.weights(f, k) = all(f, k);
  for (std::size_t k = 0; k < cols; ++k) model.bias[k] = all(rows, k);
  return model;
}

void TrainConfig::Validate() const {
  auto fail = [](const std::string &what) {
    throw Error(ErrorCode::kBadConfig, what);
  };
  if (!(learning_rate >= 0.0)) fail("learning_rate must be non-negative");
  if (!(weight_decay >= 0.0)) fail("weight_decay must be non-negative");
  if (epochs == 0) fail("epochs must be positive");
  if (batch_size == 0) fail("batch_size must be positive");
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0))
    fail("warmup_fraction must be in [0, 1)");
  if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0))
    fail("Adam betas must be in [0, 1)");
  if (!(epsilon > 0.0)) fail("epsilon must be positive");
}

double ScheduledLearningRate(const TrainConfig &config, std::size_t step,
                             std::size_t total_steps) {
  const auto warmup = static_cast<std::size_t>(
      std::floor(config.warmup_fraction * static_cast<double>(total_steps)));
  if (warmup == 0 || step >= warmup) return config.learning_rate;
  return config.learning_rate * static_cast<double>(step) /
         static_cast<double>(warmup);
}

AdamW::AdamW(std::size_t num_params, const TrainConfig &config)
    : beta1_(config.beta1),
      beta2_(config.beta2),
      epsilon_(config.epsilon),
      weight_decay_(config.weight_decay),
      m_(num_params, 0.0),
      v_(num_params, 0.0) {}

void AdamW::Step(std::span<double> params, std::span<const double> grads,
                 double lr) {
  ++step_;
  const double correction1 = 1.0 - std::pow(beta1_, static_cast<double>(step_));
  const double correction2 = 1.0 - std::pow(beta2_, static_cast<double>(step_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grads[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grads[i] * grads[i];
    const double m_hat = m_[i] / correction1;
    const double v_hat = v_[i] / correction2;
    params[i] -= lr * weight_decay_ * params[i];
    params[i] -= lr * m_hat / (std::sqrt(v_hat) + epsilon_);
  }
}

double AccumulateUtteranceGradient(const LinearModel &model,
                                   const Matrix &features,
                                   const CategoryLayout &layout,
                                   const MultiLabelTarget &target, double scale,
                                   Matrix &weight_grad,
                                   std::vector<double> &bias_grad) {
  const Matrix logits = model.Forward(features);
  const SctcResult result = SctcSbLoss(logits, layout, target);
  if (!std::isfinite(result.total_neg_log_likelihood))
    throw Error(ErrorCode::kDivergedLoss, "non-finite utterance loss");
  for (std::size_t t = 0; t < features.rows(); ++t) {
    auto g = result.grad.Row(t);
    for (std::size_t k = 0; k < g.size(); ++k) bias_grad[k] += scale * g[k];
    for (std::size_t f = 0; f < features.cols(); ++f) {
      const double x = scale * features(t, f);
      if (x == 0.0) continue;
      auto w = weight_grad.Row(f);
      for (std::size_t k = 0; k < g.size(); ++k) w[k] += x * g[k];
    }
  }
  return result.total_neg_log_likelihood;
}

TrainResult Train(const SyntheticCorpus &corpus, const AttributeTable &table,
                  const TrainConfig &config) {
  const std::size_t input_dim =
      corpus.utterances.empty() ? corpus.config.feature_dim
                                : corpus.utterances.front().features.cols();
  const CategoryLayout layout = MakeAttributeLayout();
  return Train(corpus, table, config,
               InitLinearModel(input_dim, layout.width, config.seed));
}

TrainResult Train(const SyntheticCorpus &corpus, const AttributeTable &table,
                  const TrainConfig &config, LinearModel initial) {
  config.Validate();
  if (corpus.utterances.empty())
    throw Error(ErrorCode::kBadConfig, "training corpus is empty");
  const CategoryLayout layout = MakeAttributeLayout();
  if (initial.output_dim() != layout.width)
    throw Error(ErrorCode::kDimensionMismatch,
                "model has " + std::to_string(initial.output_dim()) +
                    " outputs, layout needs " + std::to_string(layout.width));

  std::vector<MultiLabelTarget> targets;
  targets.reserve(corpus.utterances.size());
  for (const auto &utt : corpus.utterances)
    targets.push_back(MakeMultiLabelTarget(table, layout, utt.phonemes));

  TrainResult result;
  result.model = std::move(initial);
  LinearModel &model = result.model;
  const std::size_t num_weights = model.weights.Data().size();

  // Weights and bias are optimised as one flat parameter vector.
  std::vector<double> params(num_weights + model.bias.size());
  std::vector<double> grads(params.size());
  AdamW optimizer(params.size(), config);

  const std::size_t n = corpus.utterances.size();
  const std::size_t batches_per_epoch = (n + config.batch_size - 1) / config.batch_size;
  const std::size_t total_steps = batches_per_epoch * config.epochs;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 shuffle_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);

  Matrix weight_grad(model.input_dim(), model.output_dim());
  std::vector<double> bias_grad(model.output_dim());
  std::size_t step = 0;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t end = std::min(n, start + config.batch_size);
      const double scale = 1.0 / static_cast<double>(end - start);
      std::fill(weight_grad.Data().begin(), weight_grad.Data().end(), 0.0);
      std::fill(bias_grad.begin(), bias_grad.end(), 0.0);
      for (std::size_t b = start; b < end; ++b) {
        const auto &utt = corpus.utterances[order[b]];
        epoch_loss += AccumulateUtteranceGradient(
            model, utt.features, layout, targets[order[b]], scale, weight_grad,
            bias_grad);
      }

      auto weights = model.weights.Data();
      std::copy(weights.begin(), weights.end(), params.begin());
      std::copy(model.bias.begin(), model.bias.end(), params.begin() + num_weights);
      auto wg = weight_grad.Data();
      std::copy(wg.begin(), wg.end(), grads.begin());
      std::copy(bias_grad.begin(), bias_grad.end(), grads.begin() + num_weights);

      ++step;
      optimizer.Step(params, grads,
                     ScheduledLearningRate(config, step, total_steps));

      for (double p : params) {
        if (!std::isfinite(p))
          throw Error(ErrorCode::kDivergedLoss, "parameters became non-finite");
      }
      std::copy(params.begin(), params.begin() + num_weights, weights.begin());
      std::copy(params.begin() + num_weights, params.end(), model.bias.begin());
    }
    result.epoch_loss.push_back(epoch_loss / static_cast<double>(n));
  }
  return result;
}

EvaluationReport EvaluateLogits(const std::vector<Matrix> &logits,
                                const std::vector<TokenSequence> &references,
                                const AttributeTable &table) {
  if (logits.size() != references.size())
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(logits.size()) + " logit matrices for " +
                    std::to_string(references.size()) + " references");
  const CategoryLayout layout = MakeAttributeLayout();
  const auto &attributes = table.attribute_order();
  std::vector<std::size_t> edits(attributes.size(), 0);
  std::size_t ref_tokens = 0;
  EvaluationReport report;
  report.attributes.resize(attributes.size());

  for (std::size_t u = 0; u < logits.size(); ++u) {
    if (logits[u].cols() != layout.width)
      throw Error(ErrorCode::kDimensionMismatch,
                  "utterance " + std::to_string(u) + " logits have " +
                      std::to_string(logits[u].cols()) + " columns");
    const auto decoded = DecodeAll(logits[u], layout);
    const auto refs = PhonemesToAllAttributeSequences(table, references[u]);
    ref_tokens += references[u].size();
    for (std::size_t a = 0; a < attributes.size(); ++a) {
      edits[a] += Align(refs[a], decoded[a]).Distance();
      report.attributes[a].prf += AttributePrf(refs[a], decoded[a]);
    }
  }
  if (ref_tokens == 0)
    throw Error(ErrorCode::kEmptyReference, "evaluation set has no tokens");

  double sum = 0.0;
  for (std::size_t a = 0; a < attributes.size(); ++a) {
    auto &score = report.attributes[a];
    score.attribute = attributes[a].name;
    score.error_rate = 100.0 * static_cast<double>(edits[a]) /
                       static_cast<double>(ref_tokens);
    score.accuracy = 100.0 - score.error_rate;
    sum += score.error_rate;
  }
  report.mean_error_rate = sum / static_cast<double>(attributes.size());
  return report;
}

EvaluationReport Evaluate(const LinearModel &model,
                          const SyntheticCorpus &heldout,
                          const AttributeTable &table) {
  std::vector<Matrix> logits;
  std::vector<TokenSequence> references;
  for (const auto &utt : heldout.utterances) {
    logits.push_back(model.Forward(utt.features));
    references.push_back(utt.phonemes);
  }
  return EvaluateLogits(logits, references, table);
}

}  // namespace sctc
