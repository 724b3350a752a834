#include "lstmcs/config.hpp"

#include <functional>
#include <set>
#include <sstream>

#include "lstmcs/errors.hpp"
#include "lstmcs/image_io.hpp"
#include "lstmcs/textfmt.hpp"

namespace lstmcs {

ExperimentKind parse_experiment_kind(const std::string& s) {
    if (s == "synthetic") return ExperimentKind::synthetic;
    if (s == "mnist") return ExperimentKind::mnist;
    if (s == "images") return ExperimentKind::images;
    throw ConfigError("unknown experiment kind '" + s + "' (synthetic, mnist, images)");
}

std::string experiment_kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::synthetic: return "synthetic";
        case ExperimentKind::mnist: return "mnist";
        case ExperimentKind::images: return "images";
    }
    throw ConfigError("bad experiment kind value");
}

SweepAxis parse_sweep_axis(const std::string& s) {
    if (s == "k") return SweepAxis::k;
    if (s == "sigma") return SweepAxis::sigma;
    if (s == "m_over_n") return SweepAxis::m_over_n;
    throw ConfigError("unknown sweep axis '" + s + "' (k, sigma, m_over_n)");
}

std::string sweep_axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::k: return "k";
        case SweepAxis::sigma: return "sigma";
        case SweepAxis::m_over_n: return "m_over_n";
    }
    throw ConfigError("bad sweep axis value");
}

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

std::string join_strings(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += v[i];
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    if (trim(s).empty()) return out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_double_strict(trim(tok)));
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
    std::vector<std::size_t> out;
    if (trim(s).empty()) return out;
    for (const auto& tok : split(s, ',')) out.push_back(parse_size_strict(trim(tok)));
    return out;
}

std::vector<std::string> parse_string_list(const std::string& s) {
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    for (const auto& tok : split(s, ',')) out.push_back(trim(tok));
    return out;
}

struct KeySpec {
    const char* name;
    std::function<void(ExperimentConfig&, const std::string&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

const std::vector<KeySpec>& key_table() {
    static const std::vector<KeySpec> table = {
        {"experiment",
         [](ExperimentConfig& c, const std::string& v) { c.experiment = parse_experiment_kind(v); },
         [](const ExperimentConfig& c) { return experiment_kind_name(c.experiment); }},
        {"n", [](ExperimentConfig& c, const std::string& v) { c.n = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.n); }},
        {"m", [](ExperimentConfig& c, const std::string& v) { c.m = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.m); }},
        {"l", [](ExperimentConfig& c, const std::string& v) { c.l = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.l); }},
        {"block_size",
         [](ExperimentConfig& c, const std::string& v) { c.block_size = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.block_size); }},
        {"transform",
         [](ExperimentConfig& c, const std::string& v) { c.transform = parse_transform(v); },
         [](const ExperimentConfig& c) { return transform_name(c.transform); }},
        {"pattern",
         [](ExperimentConfig& c, const std::string& v) { c.pattern = parse_pattern(v); },
         [](const ExperimentConfig& c) { return pattern_name(c.pattern); }},
        {"amplitude",
         [](ExperimentConfig& c, const std::string& v) { c.amplitude = parse_amplitude_law(v); },
         [](const ExperimentConfig& c) { return amplitude_law_name(c.amplitude); }},
        {"k", [](ExperimentConfig& c, const std::string& v) { c.k = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.k); }},
        {"k_grid", [](ExperimentConfig& c, const std::string& v) { c.k_grid = parse_size_list(v); },
         [](const ExperimentConfig& c) { return join_sizes(c.k_grid); }},
        {"sigma", [](ExperimentConfig& c, const std::string& v) { c.sigma = parse_double_strict(v); },
         [](const ExperimentConfig& c) { return format_double(c.sigma); }},
        {"sigma_grid",
         [](ExperimentConfig& c, const std::string& v) { c.sigma_grid = parse_double_list(v); },
         [](const ExperimentConfig& c) { return join_doubles(c.sigma_grid); }},
        {"mn_grid", [](ExperimentConfig& c, const std::string& v) { c.mn_grid = parse_double_list(v); },
         [](const ExperimentConfig& c) { return join_doubles(c.mn_grid); }},
        {"trials", [](ExperimentConfig& c, const std::string& v) { c.trials = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.trials); }},
        {"test_instances",
         [](ExperimentConfig& c, const std::string& v) { c.test_instances = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.test_instances); }},
        {"train_instances",
         [](ExperimentConfig& c, const std::string& v) { c.train_instances = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.train_instances); }},
        {"validation_instances",
         [](ExperimentConfig& c, const std::string& v) { c.validation_instances = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.validation_instances); }},
        {"seed", [](ExperimentConfig& c, const std::string& v) { c.seed = parse_u64_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.seed); }},
        {"solvers",
         [](ExperimentConfig& c, const std::string& v) { c.solvers = parse_string_list(v); },
         [](const ExperimentConfig& c) { return join_strings(c.solvers); }},
        {"model_path", [](ExperimentConfig& c, const std::string& v) { c.model_path = v; },
         [](const ExperimentConfig& c) { return c.model_path; }},
        {"output_dir", [](ExperimentConfig& c, const std::string& v) { c.output_dir = v; },
         [](const ExperimentConfig& c) { return c.output_dir; }},
        {"ncell", [](ExperimentConfig& c, const std::string& v) { c.ncell = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.ncell); }},
        {"variant",
         [](ExperimentConfig& c, const std::string& v) { c.variant = parse_variant(v); },
         [](const ExperimentConfig& c) { return variant_name(c.variant); }},
        {"epochs", [](ExperimentConfig& c, const std::string& v) { c.epochs = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.epochs); }},
        {"batch_size",
         [](ExperimentConfig& c, const std::string& v) { c.batch_size = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.batch_size); }},
        {"step_size",
         [](ExperimentConfig& c, const std::string& v) { c.step_size = parse_double_strict(v); },
         [](const ExperimentConfig& c) { return format_double(c.step_size); }},
        {"clip_threshold",
         [](ExperimentConfig& c, const std::string& v) { c.clip_threshold = parse_double_strict(v); },
         [](const ExperimentConfig& c) { return format_double(c.clip_threshold); }},
        {"include_initial_pair",
         [](ExperimentConfig& c, const std::string& v) { c.include_initial_pair = parse_bool_strict(v); },
         [](const ExperimentConfig& c) { return std::string(c.include_initial_pair ? "true" : "false"); }},
        {"early_stopping",
         [](ExperimentConfig& c, const std::string& v) { c.early_stopping = parse_bool_strict(v); },
         [](const ExperimentConfig& c) { return std::string(c.early_stopping ? "true" : "false"); }},
        {"k_max", [](ExperimentConfig& c, const std::string& v) { c.k_max = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.k_max); }},
        {"res_min",
         [](ExperimentConfig& c, const std::string& v) { c.res_min = parse_double_strict(v); },
         [](const ExperimentConfig& c) { return format_double(c.res_min); }},
        {"shared_support",
         [](ExperimentConfig& c, const std::string& v) { c.shared_support = parse_bool_strict(v); },
         [](const ExperimentConfig& c) { return std::string(c.shared_support ? "true" : "false"); }},
        {"idx_images", [](ExperimentConfig& c, const std::string& v) { c.idx_images = v; },
         [](const ExperimentConfig& c) { return c.idx_images; }},
        {"idx_labels", [](ExperimentConfig& c, const std::string& v) { c.idx_labels = v; },
         [](const ExperimentConfig& c) { return c.idx_labels; }},
        {"pgm_dir", [](ExperimentConfig& c, const std::string& v) { c.pgm_dir = v; },
         [](const ExperimentConfig& c) { return c.pgm_dir; }},
        {"timing_repeats",
         [](ExperimentConfig& c, const std::string& v) { c.timing_repeats = parse_size_strict(v); },
         [](const ExperimentConfig& c) { return std::to_string(c.timing_repeats); }},
    };
    return table;
}

const KeySpec* find_key(const std::string& name) {
    for (const auto& spec : key_table())
        if (name == spec.name) return &spec;
    return nullptr;
}

void set_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
    const KeySpec* spec = find_key(key);
    if (!spec) throw ConfigError("unknown config key '" + key + "'");
    try {
        spec->set(cfg, value);
    } catch (const ParseError& e) {
        throw ConfigError("key '" + key + "': " + e.what());
    }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                              line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (!seen.insert(key).second)
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        set_key(cfg, key, value);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    const auto bytes = read_file_bytes(path);
    return parse_config_text(std::string(bytes.begin(), bytes.end()));
}

std::string emit_config(const ExperimentConfig& cfg) {
    std::string out;
    for (const auto& spec : key_table()) {
        out += spec.name;
        out += " = ";
        out += spec.get(cfg);
        out += '\n';
    }
    return out;
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like key=value, got '" + assignment + "'");
    set_key(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.n == 0 || cfg.m == 0) throw ConfigError("n and m must be positive");
    if (cfg.m > cfg.n) throw ConfigError("m must not exceed n");
    if (cfg.l == 0) throw ConfigError("l must be positive");
    if (cfg.block_size == 0) throw ConfigError("block_size must be positive");
    if (cfg.k == 0) throw ConfigError("k must be positive");
    if (cfg.k > cfg.n) throw ConfigError("k must not exceed n");
    if (cfg.k_grid.empty()) throw ConfigError("k_grid must be nonempty");
    for (std::size_t kk : cfg.k_grid)
        if (kk == 0 || kk > cfg.n) throw ConfigError("k_grid values must lie in 1..n");
    if (cfg.sigma < 0.0) throw ConfigError("sigma must be >= 0");
    if (cfg.sigma_grid.empty()) throw ConfigError("sigma_grid must be nonempty");
    for (double s : cfg.sigma_grid)
        if (s < 0.0) throw ConfigError("sigma_grid values must be >= 0");
    if (cfg.mn_grid.empty()) throw ConfigError("mn_grid must be nonempty");
    for (double r : cfg.mn_grid)
        if (r <= 0.0 || r > 1.0) throw ConfigError("mn_grid values must lie in (0, 1]");
    if (cfg.trials == 0) throw ConfigError("trials must be positive");
    if (cfg.test_instances == 0) throw ConfigError("test_instances must be positive");
    if (cfg.ncell == 0) throw ConfigError("ncell must be positive");
    if (cfg.epochs == 0) throw ConfigError("epochs must be positive");
    if (cfg.batch_size == 0) throw ConfigError("batch_size must be positive");
    if (cfg.step_size < 0.0) throw ConfigError("step_size must be >= 0");
    if (cfg.clip_threshold <= 0.0) throw ConfigError("clip_threshold must be positive");
    if (cfg.res_min < 0.0) throw ConfigError("res_min must be >= 0");
    if (cfg.timing_repeats == 0) throw ConfigError("timing_repeats must be positive");
    for (const auto& s : cfg.solvers)
        if (s != "lstm" && s != "omp" && s != "somp" && s != "oracle")
            throw ConfigError("unknown solver '" + s + "' (lstm, omp, somp, oracle)");
    if (cfg.experiment == ExperimentKind::synthetic && cfg.pattern == SparsityPattern::image_derived)
        throw ConfigError("pattern image_derived needs an image experiment");
}

}  // namespace lstmcs
