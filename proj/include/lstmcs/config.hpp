#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lstmcs/lstm.hpp"
#include "lstmcs/signal.hpp"
#include "lstmcs/transforms.hpp"

namespace lstmcs {

enum class ExperimentKind { synthetic, mnist, images };
ExperimentKind parse_experiment_kind(const std::string& s);
std::string experiment_kind_name(ExperimentKind k);

enum class SweepAxis { k, sigma, m_over_n };
SweepAxis parse_sweep_axis(const std::string& s);
std::string sweep_axis_name(SweepAxis a);

// flat `key = value` experiment description; the canonical key set is exactly
// the fields below and unknown keys are rejected
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::synthetic;

    std::size_t n = 144;
    std::size_t m = 72;
    std::size_t l = 4;
    std::size_t block_size = 12;
    TransformKind transform = TransformKind::none;

    SparsityPattern pattern = SparsityPattern::joint;
    AmplitudeLaw amplitude = AmplitudeLaw::uniform_signed;
    std::size_t k = 4;
    std::vector<std::size_t> k_grid{4, 6, 8, 10, 12, 14, 16};

    double sigma = 0.0;
    std::vector<double> sigma_grid{0.5, 0.2, 0.1, 0.05, 0.01, 0.005};
    std::vector<double> mn_grid{0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50};

    std::size_t trials = 200;
    std::size_t test_instances = 16;
    std::size_t train_instances = 200;
    std::size_t validation_instances = 0;
    std::uint64_t seed = 1;

    std::vector<std::string> solvers{"omp", "somp"};
    std::string model_path;
    std::string output_dir = "out";

    std::size_t ncell = 512;
    Variant variant = Variant::reduced;
    std::size_t epochs = 25;
    std::size_t batch_size = 20;
    double step_size = 0.05;
    double clip_threshold = 1.0;
    bool include_initial_pair = true;
    bool early_stopping = true;

    std::size_t k_max = 0;  // solver budget; 0 means "use k"
    double res_min = 1e-9;
    bool shared_support = false;

    std::string idx_images;
    std::string idx_labels;
    std::string pgm_dir;
    std::size_t timing_repeats = 5;

    std::size_t solver_k_max() const { return k_max == 0 ? k : k_max; }
};

// text -> config; unknown or duplicate keys and malformed values are hard errors
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// one canonical `key = value` line per key, in canonical order
std::string emit_config(const ExperimentConfig& cfg);

// `key=value` command-line override applied on top of a parsed config
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

// command-independent structural checks (grids nonempty, dims coherent)
void validate_config(const ExperimentConfig& cfg);

}  // namespace lstmcs
