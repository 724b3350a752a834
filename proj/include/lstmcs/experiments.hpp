#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lstmcs/config.hpp"
#include "lstmcs/csv.hpp"
#include "lstmcs/matrix.hpp"
#include "lstmcs/solvers.hpp"
#include "lstmcs/training.hpp"

namespace lstmcs {

// one MMV problem drawn from the configured source; for image datasets s
// holds transform-domain block columns
struct MmvInstance {
    Matrix s;
    std::uint64_t signal_seed = 0;
    std::uint64_t noise_seed = 0;
};

// reconstruction recipe: which (instance, column) pairs tile the image, in
// raster block order
struct ImageRef {
    std::string name;
    Matrix original;  // pixel domain, side x side
    std::vector<std::pair<std::size_t, std::size_t>> parts;
};

struct Dataset {
    Matrix a;
    std::vector<MmvInstance> test;
    std::vector<ImageRef> images;  // empty for synthetic data
    std::size_t side = 0;
    std::size_t block = 0;
    TransformKind transform = TransformKind::none;
};

// builds the measurement operator and the test split; reads every input file
// up front so failures cannot leave partial outputs
Dataset assemble_test_dataset(const ExperimentConfig& cfg);

// training split (disjoint from test by construction); optionally fills a
// validation set drawn after the training split
std::vector<TrainingSequence> assemble_training_sequences(const ExperimentConfig& cfg,
                                                          const Matrix& a,
                                                          std::optional<ValidationSet>* validation);

// dispatch by solver name ("lstm", "omp", "somp", "oracle"); k_override
// replaces the config budget when nonzero
SolverResult run_named_solver(const std::string& name, const Matrix& a, const Matrix& y,
                              const ExperimentConfig& cfg, const LstmParams* model,
                              std::size_t k_override = 0);

struct TimingRow {
    std::string solver;
    std::uint64_t instance = 0;
    std::size_t repeats = 0;
    double mean_s_per_vector = 0.0;
    double std_s_per_vector = 0.0;
};

struct RunReport {
    std::vector<ResultRow> rows;
    std::vector<TimingRow> timing;
    std::vector<EpochLog> train_log;
    std::size_t best_epoch = 0;
    std::vector<std::string> written;  // paths, in emission order
};

RunReport run_train(const ExperimentConfig& cfg);
RunReport run_solve(const ExperimentConfig& cfg);
RunReport run_sweep(const ExperimentConfig& cfg, SweepAxis axis);
RunReport run_timing(const ExperimentConfig& cfg);
RunReport run_gen_data(const ExperimentConfig& cfg);

}  // namespace lstmcs
