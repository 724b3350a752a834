#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lstmcs/lstm.hpp"
#include "lstmcs/matrix.hpp"
#include "lstmcs/solvers.hpp"

namespace lstmcs {

struct TrainingPair {
    Vector residual;      // raw, as produced by the removal recursion
    std::size_t target;   // hot index of the next-largest entry
    std::size_t channel;  // originating column of the sparse ensemble
};

// one removal depth across the channels of one sparse-matrix sample; the
// recurrent state is zeroed at the start and carried across the pairs,
// mirroring one outer iteration of the solver
struct TrainingSequence {
    std::vector<TrainingPair> pairs;
};

// per channel, orders the non-zeros by decreasing magnitude (ties to the
// lower index), truncates to k_max, and emits the removal-residual/next-entry
// pairs; include_initial_pair additionally emits (y, top entry) first.
// Sequences group the d-th pair of every channel that has one.
std::vector<TrainingSequence> generate_training_pairs(const Matrix& s, const Matrix& a,
                                                      std::size_t k_max, bool include_initial_pair);

double cross_entropy(const Vector& p, std::size_t target);

struct SequenceEval {
    std::vector<StepCache> steps;
    double loss = 0.0;
};

// inputs are max-abs-normalized exactly like the solver normalizes residuals,
// so training and inference see the same scale
SequenceEval forward_sequence(const LstmParams& params, const TrainingSequence& seq);
double sequence_loss(const LstmParams& params, const TrainingSequence& seq);

using GradientSet = LstmWeights;

// exact reverse-mode gradient of the summed cross-entropy over the sequence;
// frozen tensors of the reduced variant come back zero
GradientSet backprop_sequence(const LstmParams& params, const TrainingSequence& seq,
                              double* loss_out = nullptr);

// (f(x+h) - f(x-h)) / 2h
double central_difference(const std::function<double(double)>& f, double x, double h);

// central differences over every tensor entry
GradientSet fd_gradient_oracle(const LstmParams& params, const TrainingSequence& seq, double h);

// entrywise relative error is only meaningful above the finite-difference
// noise floor (~eps*loss/2h, about 5e-11 here), hence the magnitude split
struct GradCheck {
    double max_tensor_rel = 0.0;   // max over tensors of ||a - fd|| / ||fd||
    double max_rel_error = 0.0;    // over entries with max(|a|,|fd|) >= 1e-4
    double max_small_abs = 0.0;    // absolute gap over the remaining entries
    bool ok(double rel_tol = 1e-5, double abs_tol = 1e-8) const {
        return max_tensor_rel <= rel_tol && max_rel_error <= rel_tol && max_small_abs <= abs_tol;
    }
};

GradCheck compare_gradients(GradientSet& analytic, GradientSet& fd);

// weight-space helpers shared by the optimizer and the train loop
void add_scaled(LstmWeights& dst, double alpha, const LstmWeights& src);
void scale_weights(LstmWeights& w, double alpha);

// entrywise clamp to [-threshold, threshold]
void clip_gradients(GradientSet& g, double threshold);

// 0.9 in the first and last tenth of the planned updates, 0.995 between;
// update_index is 1-based
double momentum_at(std::size_t update_index, std::size_t total_updates);

struct TrainOptions {
    std::size_t ncell = 512;
    Variant variant = Variant::reduced;
    std::size_t epochs = 25;
    std::size_t batch_size = 20;
    double step_size = 0.05;
    double clip_threshold = 1.0;
    bool include_initial_pair = true;  // recorded; pair generation happens upstream
    bool early_stopping = true;
    std::uint64_t seed = 0;
};

// solved noiselessly with the in-training model each epoch
struct ValidationSet {
    Matrix a;
    std::vector<Matrix> signals;
    SolverConfig solve;
};

struct EpochLog {
    std::size_t epoch = 0;
    double mean_batch_loss = 0.0;
    double validation_nmse = 0.0;  // NaN when no validation set is attached
    double wall_seconds = 0.0;
};

struct TrainResult {
    LstmParams params;
    std::vector<EpochLog> log;
    std::size_t best_epoch = 0;
};

// accelerated-gradient loop: per update the gradient is taken at the
// momentum lookahead, clipped entrywise, folded into one large update over
// the mini-batch. Same seed and data give a bit-identical model.
TrainResult train(const std::vector<TrainingSequence>& data, const LstmDims& dims,
                  const TrainOptions& opts, const std::optional<ValidationSet>& validation);

}  // namespace lstmcs
