// include/sctc/toy_trainer.h

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

#ifndef SCTC_TOY_TRAINER_H_
#define SCTC_TOY_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sctc/inventory.h"
#include "sctc/matrix.h"
#include "sctc/mdd.h"
#include "sctc/sctc_sb.h"

namespace sctc {

// Synthetic stand-in for acoustic features. Each phoneme owns a fixed random
// cluster centre; an utterance is a random phoneme string rendered as a run
// of noisy frames per phoneme, with short transition frames (their own
// centre) between consecutive phonemes.
//
// Sparse centres put each phoneme (and the transition) on its own randomly
// chosen feature axis with a random magnitude in [0.75, 1.25] * center_scale,
// an idealised encoder output; this needs feature_dim >= phonemes + 1. Dense
// centres are isotropic Gaussian. The default magnitudes are sized for the
// default 1e-4 learning rate.
struct CorpusConfig {
  std::uint64_t seed = 1;
  std::size_t num_utterances = 100;
  std::size_t feature_dim = 48;
  std::size_t min_phonemes = 8;
  std::size_t max_phonemes = 16;
  std::size_t min_frames_per_phoneme = 1;
  std::size_t max_frames_per_phoneme = 3;
  std::size_t transition_frames = 1;
  bool sparse_centers = true;
  double center_scale = 100.0;
  double noise_scale = 1.0;

  void Validate() const;  // throws kBadConfig
};

inline constexpr int kTransitionFrame = -1;

struct SyntheticUtterance {
  std::string id;
  Matrix features;             // T x feature_dim
  TokenSequence phonemes;
  std::vector<int> frame_labels;  // phoneme index per frame, or kTransitionFrame
};

struct SyntheticCorpus {
  CorpusConfig config;
  std::vector<std::string> phoneme_set;
  // One row per phoneme in phoneme_set order, then the transition centre.
  Matrix centers;
  std::vector<SyntheticUtterance> utterances;
};

SyntheticCorpus GenerateCorpus(const CorpusConfig &config,
                               const std::vector<std::string> &phoneme_set);

// First `num_first` utterances, then the rest. Both halves keep the centres.
std::pair<SyntheticCorpus, SyntheticCorpus> SplitCorpus(
    const SyntheticCorpus &corpus, std::size_t num_first);

// Directory of <utt_id>.csv feature matrices plus manifest.tsv
// ("utt_id<TAB>phoneme tokens").
void SaveCorpus(const SyntheticCorpus &corpus, const std::filesystem::path &dir);
SyntheticCorpus LoadCorpus(const std::filesystem::path &dir,
                           const AttributeTable &table);

struct LinearModel {
  Matrix weights;            // input_dim x output_dim
  std::vector<double> bias;  // output_dim

  std::size_t input_dim() const { return weights.rows(); }
  std::size_t output_dim() const { return weights.cols(); }

  // features (T x input_dim) -> logits (T x output_dim). Throws
  // kDimensionMismatch.
  Matrix Forward(const Matrix &features) const;
  bool operator==(const LinearModel &) const = default;
};

// Gaussian weights with standard deviation `scale`, zero bias.
LinearModel InitLinearModel(std::size_t input_dim, std::size_t output_dim,
                            std::uint64_t seed, double scale = 1e-4);

// Checkpoint CSV: header "F,width", F weight rows, then one bias row.
void SaveModel(const LinearModel &model, const std::filesystem::path &path);
LinearModel LoadModel(const std::filesystem::path &path);

struct TrainConfig {
  double learning_rate = 1e-4;
  double weight_decay = 0.005;
  std::size_t epochs = 30;
  std::size_t batch_size = 32;
  double warmup_fraction = 0.10;
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void Validate() const;  // throws kBadConfig
};

// Linear warmup from 0 to the base rate over the first warmup steps, then
// constant. `step` is 1-based.
double ScheduledLearningRate(const TrainConfig &config, std::size_t step,
                             std::size_t total_steps);

// Adam moments with bias correction and decoupled weight decay:
// p -= lr * (m_hat / (sqrt(v_hat) + eps) + weight_decay * p).
class AdamW {
 public:
  AdamW(std::size_t num_params, const TrainConfig &config);

  void Step(std::span<double> params, std::span<const double> grads, double lr);
  std::size_t steps_taken() const { return step_; }

 private:
  double beta1_, beta2_, epsilon_, weight_decay_;
  std::size_t step_ = 0;
  std::vector<double> m_, v_;
};

// SCTC-SB loss of one utterance under the model, with the gradient written
// into `weight_grad` / `bias_grad` (accumulated, scaled by `scale`).
double AccumulateUtteranceGradient(const LinearModel &model,
                                   const Matrix &features,
                                   const CategoryLayout &layout,
                                   const MultiLabelTarget &target, double scale,
                                   Matrix &weight_grad,
                                   std::vector<double> &bias_grad);

struct TrainResult {
  LinearModel model;
  std::vector<double> epoch_loss;  // mean per-utterance loss of each epoch
};

// Mini-batch AdamW on the SCTC-SB loss over all 35 attributes, starting
// from InitLinearModel(F, 71, config.seed). Single-threaded and
// deterministic. Throws kDivergedLoss on a non-finite loss.
TrainResult Train(const SyntheticCorpus &corpus, const AttributeTable &table,
                  const TrainConfig &config);

// Same, continuing from an explicit model.
TrainResult Train(const SyntheticCorpus &corpus, const AttributeTable &table,
                  const TrainConfig &config, LinearModel initial);

struct AttributeScore {
  std::string attribute;
  double error_rate = 0.0;  // percent, corpus-level
  double accuracy = 0.0;
  PrfResult prf;
};

struct EvaluationReport {
  std::vector<AttributeScore> attributes;
  double mean_error_rate = 0.0;
};

// Scores decoded logits against reference phoneme sequences: per-attribute
// corpus-level AER (total edits over total reference tokens) and PRF.
EvaluationReport EvaluateLogits(const std::vector<Matrix> &logits,
                                const std::vector<TokenSequence> &references,
                                const AttributeTable &table);

EvaluationReport Evaluate(const LinearModel &model,
                          const SyntheticCorpus &heldout,
                          const AttributeTable &table);

}  // namespace sctc

#endif  // SCTC_TOY_TRAINER_H_
