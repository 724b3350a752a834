#include "lstmcs/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <limits>
#include <mutex>
#include <thread>

#include <sys/utsname.h>

#include "lstmcs/errors.hpp"
#include "lstmcs/image_io.hpp"
#include "lstmcs/model_io.hpp"
#include "lstmcs/rng.hpp"
#include "lstmcs/textfmt.hpp"
#include "lstmcs/transforms.hpp"

namespace lstmcs {

namespace {

namespace fs = std::filesystem;

// seed derivation tags; every random draw hangs off cfg.seed through these,
// so results depend only on the config, never on scheduling or split sizes
constexpr std::uint64_t kTagEnsemble = 1;
constexpr std::uint64_t kTagInit = 7;
constexpr std::uint64_t kTagTest = 2'000'000;
constexpr std::uint64_t kTagTrain = 3'000'000;
constexpr std::uint64_t kTagValidation = 4'000'000;
constexpr std::uint64_t kTagNoise = 5'000'000;
constexpr std::uint64_t kTagSweepK = 6'000'000;
constexpr std::uint64_t kTagSweepSigma = 6'100'000;
constexpr std::uint64_t kTagSweepMn = 6'200'000;
constexpr std::uint64_t kTagSweepMnEnsemble = 6'300'000;

Matrix ensemble_for(const ExperimentConfig& cfg) {
    return gen_measurement_ensemble(cfg.m, cfg.n, derive_seed(cfg.seed, kTagEnsemble)).a;
}

SolverConfig solver_config(const ExperimentConfig& cfg, std::size_t k_override) {
    SolverConfig sc;
    sc.k_max = k_override != 0 ? k_override : cfg.solver_k_max();
    sc.res_min = cfg.res_min;
    sc.shared_support = cfg.shared_support;
    return sc;
}

void require_solvers(const ExperimentConfig& cfg) {
    if (cfg.solvers.empty()) throw ConfigError("solvers must name at least one solver");
}

bool wants_lstm(const ExperimentConfig& cfg) {
    return std::find(cfg.solvers.begin(), cfg.solvers.end(), "lstm") != cfg.solvers.end();
}

LstmParams load_solver_model(const ExperimentConfig& cfg) {
    if (cfg.model_path.empty())
        throw ConfigError("solver 'lstm' needs model_path");
    LstmParams params = load_model(cfg.model_path);
    if (params.dims.m != cfg.m || params.dims.n != cfg.n)
        throw ConfigError("model is " + std::to_string(params.dims.m) + "x" +
                          std::to_string(params.dims.n) + " but the experiment needs " +
                          std::to_string(cfg.m) + "x" + std::to_string(cfg.n));
    return params;
}

std::string zero_pad(std::size_t v, int width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*zu", width, v);
    return buf;
}

void ensure_dir(const std::string& path) {
    if (path.empty()) return;
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) throw Error("cannot create directory '" + path + "': " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void emit_text(RunReport& report, const std::string& dir, const std::string& name,
               const std::string& text) {
    const std::string path = join_path(dir, name);
    write_text_file(path, text);
    report.written.push_back(path);
}

// validation guard shared by the image loaders
void check_block_geometry(const ExperimentConfig& cfg, std::size_t side) {
    if (side % cfg.block_size != 0)
        throw ConfigError("image side " + std::to_string(side) + " is not divisible by block_size " +
                          std::to_string(cfg.block_size));
    if (cfg.n != cfg.block_size * cfg.block_size)
        throw ConfigError("n must equal block_size^2 for image experiments (n=" +
                          std::to_string(cfg.n) + ", block_size=" + std::to_string(cfg.block_size) +
                          ")");
}

// digits: one image per class 0..l-1 forms a group; instance (group, tile)
// stacks the classes' same-position tiles as channels
struct MnistSource {
    std::vector<Matrix> cropped;          // pixel images in file order
    std::vector<std::vector<std::size_t>> by_class;  // image indices per class
    std::size_t side = 0;
};

MnistSource load_mnist_source(const ExperimentConfig& cfg) {
    if (cfg.idx_images.empty() || cfg.idx_labels.empty())
        throw ConfigError("mnist experiments need idx_images and idx_labels");
    const IdxTensor images = ingest_idx(cfg.idx_images);
    const IdxTensor labels = ingest_idx(cfg.idx_labels);
    if (images.dims.size() != 3)
        throw ConfigError("idx_images must be rank 3 (count x rows x cols)");
    if (labels.dims.size() != 1)
        throw ConfigError("idx_labels must be rank 1");
    const std::size_t count = images.dims[0];
    const std::size_t rows = images.dims[1];
    const std::size_t cols = images.dims[2];
    if (labels.dims[0] != count)
        throw ConfigError("idx_labels counts " + std::to_string(labels.dims[0]) +
                          " entries for " + std::to_string(count) + " images");
    if (rows < 24 || cols < 24)
        throw ConfigError("idx images must be at least 24x24");

    // center crop to 24x24: a 28x28 digit keeps rows and columns 2..25
    const std::size_t side = 24;
    const std::size_t r0 = (rows - side) / 2;
    const std::size_t c0 = (cols - side) / 2;
    check_block_geometry(cfg, side);

    MnistSource src;
    src.side = side;
    src.cropped.reserve(count);
    src.by_class.assign(cfg.l, {});
    for (std::size_t i = 0; i < count; ++i) {
        Matrix img(side, side);
        for (std::size_t r = 0; r < side; ++r)
            for (std::size_t c = 0; c < side; ++c)
                img(r, c) = images.unit((i * rows + r0 + r) * cols + c0 + c);
        src.cropped.push_back(std::move(img));
        const std::uint8_t label = labels.raw[i];
        if (label < cfg.l) src.by_class[label].push_back(i);
    }
    return src;
}

std::vector<std::string> list_pgm_files(const std::string& dir) {
    if (dir.empty()) throw ConfigError("images experiments need pgm_dir");
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    if (ec) throw ConfigError("cannot read pgm_dir '" + dir + "': " + ec.message());
    std::vector<std::string> files;
    for (const auto& entry : it)
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    return files;
}

struct ImageData {
    std::vector<MmvInstance> instances;
    std::vector<ImageRef> refs;
    std::size_t side = 0;
};

// group indices [first, first + count) of the digit source
ImageData mnist_groups(const ExperimentConfig& cfg, const MnistSource& src, std::size_t first,
                       std::size_t count) {
    std::size_t available = src.cropped.size();
    for (std::size_t c = 0; c < cfg.l; ++c) available = std::min(available, src.by_class[c].size());
    if (first + count > available)
        throw ConfigError("dataset needs " + std::to_string(first + count) +
                          " images per class but the smallest class has " +
                          std::to_string(available));

    const std::size_t tiles = (src.side / cfg.block_size) * (src.side / cfg.block_size);
    ImageData out;
    out.side = src.side;
    for (std::size_t g = 0; g < count; ++g) {
        const std::size_t base = out.instances.size();
        for (std::size_t t = 0; t < tiles; ++t) {
            MmvInstance inst;
            inst.s = Matrix(cfg.n, cfg.l);
            inst.noise_seed = derive_seed(cfg.seed, kTagNoise + (first + g) * tiles + t);
            out.instances.push_back(std::move(inst));
        }
        for (std::size_t c = 0; c < cfg.l; ++c) {
            const Matrix& pixels = src.cropped[src.by_class[c][first + g]];
            Matrix domain = cfg.transform == TransformKind::none
                                ? pixels
                                : block_transform(pixels, cfg.block_size, cfg.transform, true);
            const Matrix blocks = blockize(domain, cfg.block_size);
            ImageRef ref;
            ref.name = "g" + zero_pad(first + g, 3) + "_c" + std::to_string(c);
            ref.original = pixels;
            for (std::size_t t = 0; t < tiles; ++t) {
                out.instances[base + t].s.set_col(c, blocks.col(t));
                ref.parts.emplace_back(base + t, c);
            }
            out.refs.push_back(std::move(ref));
        }
    }
    return out;
}

// natural images: an instance is l consecutive block columns of one image
ImageData image_groups(const ExperimentConfig& cfg, const std::vector<std::string>& files,
                       std::size_t first, std::size_t count) {
    if (first + count > files.size())
        throw ConfigError("dataset needs " + std::to_string(first + count) + " PGM files but '" +
                          cfg.pgm_dir + "' holds " + std::to_string(files.size()));
    ImageData out;
    std::size_t instance_base = 0;
    for (std::size_t f = 0; f < first + count; ++f) {
        const Matrix pixels = ingest_pgm(files[f]);
        if (pixels.rows() != pixels.cols())
            throw ConfigError("'" + files[f] + "' is not square");
        if (out.side == 0) {
            out.side = pixels.rows();
            check_block_geometry(cfg, out.side);
        } else if (pixels.rows() != out.side) {
            throw ConfigError("'" + files[f] + "' is " + std::to_string(pixels.rows()) +
                              " px but earlier images were " + std::to_string(out.side));
        }
        const std::size_t tiles = (out.side / cfg.block_size) * (out.side / cfg.block_size);
        if (tiles % cfg.l != 0)
            throw ConfigError("image tile count " + std::to_string(tiles) +
                              " is not divisible by l=" + std::to_string(cfg.l));
        const std::size_t groups = tiles / cfg.l;
        if (f < first) {
            instance_base += groups;
            continue;
        }

        Matrix domain = cfg.transform == TransformKind::none
                            ? pixels
                            : block_transform(pixels, cfg.block_size, cfg.transform, true);
        const Matrix blocks = blockize(domain, cfg.block_size);
        const std::size_t base = out.instances.size();
        for (std::size_t q = 0; q < groups; ++q) {
            MmvInstance inst;
            inst.s = Matrix(cfg.n, cfg.l);
            for (std::size_t j = 0; j < cfg.l; ++j) inst.s.set_col(j, blocks.col(q * cfg.l + j));
            inst.noise_seed = derive_seed(cfg.seed, kTagNoise + instance_base + q);
            out.instances.push_back(std::move(inst));
        }
        ImageRef ref;
        ref.name = fs::path(files[f]).stem().string();
        ref.original = pixels;
        for (std::size_t b = 0; b < tiles; ++b) ref.parts.emplace_back(base + b / cfg.l, b % cfg.l);
        out.refs.push_back(std::move(ref));
        instance_base += groups;
    }
    return out;
}

ImageData load_image_split(const ExperimentConfig& cfg, std::size_t first, std::size_t count) {
    if (cfg.experiment == ExperimentKind::mnist)
        return mnist_groups(cfg, load_mnist_source(cfg), first, count);
    return image_groups(cfg, list_pgm_files(cfg.pgm_dir), first, count);
}

std::vector<MmvInstance> synthetic_instances(const ExperimentConfig& cfg, std::uint64_t tag,
                                             std::size_t count, std::size_t k) {
    std::vector<MmvInstance> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        MmvInstance inst;
        inst.signal_seed = derive_seed(cfg.seed, tag + i);
        inst.noise_seed = derive_seed(cfg.seed, kTagNoise + tag + i);
        inst.s = gen_sparse_ensemble(cfg.n, cfg.l, k, cfg.pattern, cfg.amplitude, inst.signal_seed).s;
        out.push_back(std::move(inst));
    }
    return out;
}

Matrix measure_instance(const Matrix& a, const MmvInstance& inst, double sigma) {
    MeasurementEnsemble ens;
    ens.a = a;
    NoiseSpec noise;
    noise.sigma = sigma;
    noise.seed = inst.noise_seed;
    return measure(ens, inst.s, noise);
}

// stitches per-instance estimates back into a pixel image
Matrix reconstruct_image(const Dataset& ds, const ImageRef& ref,
                         const std::vector<Matrix>& shats) {
    Matrix cols(ds.a.cols(), ref.parts.size());
    for (std::size_t b = 0; b < ref.parts.size(); ++b)
        cols.set_col(b, shats[ref.parts[b].first].col(ref.parts[b].second));
    Matrix domain = deblockize(cols, ds.side, ds.side, ds.block);
    if (ds.transform == TransformKind::none) return domain;
    return block_transform(domain, ds.block, ds.transform, false);
}

// deterministic work queue: slots are indexed by (point, trial) so thread
// scheduling cannot reorder or perturb results
template <typename Job>
void run_jobs(std::size_t count, const Job& job) {
    unsigned threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string machine_summary() {
    std::string out;
    utsname un{};
    if (uname(&un) == 0) {
        out += std::string("system: ") + un.sysname + " " + un.release + " (" + un.machine + ")\n";
    }
    out += "hardware_concurrency: " + std::to_string(std::thread::hardware_concurrency()) + "\n";
#ifdef __VERSION__
    out += std::string("compiler: ") + __VERSION__ + "\n";
#endif
    out += "pointer_bits: " + std::to_string(sizeof(void*) * 8) + "\n";
    return out;
}

std::string training_log_csv(const std::vector<EpochLog>& log) {
    std::string out = "epoch,mean_batch_loss,validation_nmse,wall_seconds\n";
    for (const auto& e : log) {
        out += std::to_string(e.epoch);
        out += ',';
        out += format_double(e.mean_batch_loss);
        out += ',';
        out += format_double(e.validation_nmse);
        out += ',';
        out += format_double(e.wall_seconds);
        out += '\n';
    }
    return out;
}

std::string timing_csv(const std::vector<TimingRow>& rows) {
    std::string out = "solver,instance,repeats,mean_s_per_vector,std_s_per_vector\n";
    for (const auto& r : rows) {
        out += r.solver;
        out += ',';
        out += std::to_string(r.instance);
        out += ',';
        out += std::to_string(r.repeats);
        out += ',';
        out += format_double(r.mean_s_per_vector);
        out += ',';
        out += format_double(r.std_s_per_vector);
        out += '\n';
    }
    return out;
}

ResultRow base_row(const ExperimentConfig& cfg) {
    ResultRow row;
    row.experiment = experiment_kind_name(cfg.experiment);
    row.m_over_n = static_cast<double>(cfg.m) / static_cast<double>(cfg.n);
    row.sigma = cfg.sigma;
    row.k = cfg.solver_k_max();
    return row;
}

void finish_row(ResultRow& row, double err) {
    row.nmse = err;
    row.recovered = err <= 0.6;
}

}  // namespace

Dataset assemble_test_dataset(const ExperimentConfig& cfg) {
    Dataset ds;
    ds.a = ensemble_for(cfg);
    ds.block = cfg.block_size;
    ds.transform = cfg.transform;
    if (cfg.experiment == ExperimentKind::synthetic) {
        ds.test = synthetic_instances(cfg, kTagTest, cfg.test_instances, cfg.k);
        return ds;
    }
    ImageData data = load_image_split(cfg, 0, cfg.test_instances);
    ds.test = std::move(data.instances);
    ds.images = std::move(data.refs);
    ds.side = data.side;
    return ds;
}

std::vector<TrainingSequence> assemble_training_sequences(const ExperimentConfig& cfg,
                                                          const Matrix& a,
                                                          std::optional<ValidationSet>* validation) {
    std::vector<TrainingSequence> sequences;
    std::vector<Matrix> validation_signals;

    if (cfg.experiment == ExperimentKind::synthetic) {
        for (std::size_t i = 0; i < cfg.train_instances; ++i) {
            const Matrix s = gen_sparse_ensemble(cfg.n, cfg.l, cfg.k, cfg.pattern, cfg.amplitude,
                                                 derive_seed(cfg.seed, kTagTrain + i))
                                 .s;
            auto seqs = generate_training_pairs(s, a, cfg.solver_k_max(), cfg.include_initial_pair);
            std::move(seqs.begin(), seqs.end(), std::back_inserter(sequences));
        }
        for (std::size_t i = 0; i < cfg.validation_instances; ++i)
            validation_signals.push_back(gen_sparse_ensemble(cfg.n, cfg.l, cfg.k, cfg.pattern,
                                                             cfg.amplitude,
                                                             derive_seed(cfg.seed, kTagValidation + i))
                                             .s);
    } else {
        ImageData train =
            load_image_split(cfg, cfg.test_instances, cfg.train_instances + cfg.validation_instances);
        std::size_t split = train.instances.size();
        if (cfg.validation_instances > 0) {
            // instances of the trailing validation groups
            const std::size_t per_group = train.instances.size() /
                                          (cfg.train_instances + cfg.validation_instances);
            split = cfg.train_instances * per_group;
        }
        for (std::size_t i = 0; i < train.instances.size(); ++i) {
            if (i < split) {
                auto seqs = generate_training_pairs(train.instances[i].s, a, cfg.solver_k_max(),
                                                    cfg.include_initial_pair);
                std::move(seqs.begin(), seqs.end(), std::back_inserter(sequences));
            } else {
                validation_signals.push_back(train.instances[i].s);
            }
        }
    }

    if (validation != nullptr) {
        if (validation_signals.empty()) {
            validation->reset();
        } else {
            ValidationSet vs;
            vs.a = a;
            vs.signals = std::move(validation_signals);
            vs.solve = solver_config(cfg, 0);
            *validation = std::move(vs);
        }
    }
    return sequences;
}

SolverResult run_named_solver(const std::string& name, const Matrix& a, const Matrix& y,
                              const ExperimentConfig& cfg, const LstmParams* model,
                              std::size_t k_override) {
    const SolverConfig sc = solver_config(cfg, k_override);
    if (name == "omp") return omp_solve_mmv(a, y, sc);
    if (name == "somp") return somp_solve(a, y, sc);
    if (name == "lstm") {
        if (model == nullptr) throw ConfigError("solver 'lstm' needs a trained model");
        return lstm_cs_solve(a, y, *model, sc);
    }
    if (name == "oracle") {
        const auto t0 = std::chrono::steady_clock::now();
        SolverResult out;
        out.shat = Matrix(a.cols(), y.cols());
        double sq = 0.0;
        for (std::size_t j = 0; j < y.cols(); ++j) {
            const OracleResult best = exhaustive_oracle(a, y.col(j), sc.k_max);
            for (std::size_t d = 0; d < best.support.size(); ++d)
                out.shat(best.support[d], j) = best.coeffs[d];
            out.supports.push_back(best.support);
            sq += best.residual_norm * best.residual_norm;
        }
        out.residual_norms.push_back(std::sqrt(sq));
        out.iterations = sc.k_max;
        out.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
    }
    throw ConfigError("unknown solver '" + name + "' (lstm, omp, somp, oracle)");
}

RunReport run_train(const ExperimentConfig& cfg) {
    validate_config(cfg);
    if (cfg.model_path.empty()) throw ConfigError("train needs model_path");
    if (cfg.train_instances == 0) throw ConfigError("train_instances must be positive");

    const Matrix a = ensemble_for(cfg);
    std::optional<ValidationSet> validation;
    std::vector<TrainingSequence> sequences = assemble_training_sequences(cfg, a, &validation);
    if (sequences.empty()) throw ConfigError("training produced no sequences (all-zero signals?)");

    LstmDims dims{cfg.m, cfg.n, cfg.ncell};
    TrainOptions opts;
    opts.ncell = cfg.ncell;
    opts.variant = cfg.variant;
    opts.epochs = cfg.epochs;
    opts.batch_size = cfg.batch_size;
    opts.step_size = cfg.step_size;
    opts.clip_threshold = cfg.clip_threshold;
    opts.include_initial_pair = cfg.include_initial_pair;
    opts.early_stopping = cfg.early_stopping;
    opts.seed = derive_seed(cfg.seed, kTagInit);

    TrainResult result = train(sequences, dims, opts, validation);

    RunReport report;
    report.train_log = result.log;
    report.best_epoch = result.best_epoch;

    const fs::path model_parent = fs::path(cfg.model_path).parent_path();
    if (!model_parent.empty()) ensure_dir(model_parent.string());
    save_model(result.params, cfg.model_path);
    report.written.push_back(cfg.model_path);

    ensure_dir(cfg.output_dir);
    emit_text(report, cfg.output_dir, "training_log.csv", training_log_csv(result.log));
    emit_text(report, cfg.output_dir, "config_echo.cfg", emit_config(cfg));
    return report;
}

RunReport run_solve(const ExperimentConfig& cfg) {
    validate_config(cfg);
    require_solvers(cfg);
    std::optional<LstmParams> model;
    if (wants_lstm(cfg)) model = load_solver_model(cfg);

    const Dataset ds = assemble_test_dataset(cfg);
    std::vector<Matrix> measured;
    measured.reserve(ds.test.size());
    for (const auto& inst : ds.test) measured.push_back(measure_instance(ds.a, inst, cfg.sigma));

    RunReport report;
    std::vector<std::pair<std::string, Matrix>> reconstructions;
    for (const auto& solver : cfg.solvers) {
        std::vector<Matrix> shats;
        std::vector<double> walls;
        shats.reserve(ds.test.size());
        for (std::size_t i = 0; i < ds.test.size(); ++i) {
            SolverResult res =
                run_named_solver(solver, ds.a, measured[i], cfg, model ? &*model : nullptr);
            shats.push_back(std::move(res.shat));
            walls.push_back(res.wall_seconds);
        }
        if (ds.images.empty()) {
            for (std::size_t i = 0; i < ds.test.size(); ++i) {
                ResultRow row = base_row(cfg);
                row.solver = solver;
                row.k = cfg.k;
                row.trial = ds.test[i].signal_seed;
                row.wall_time_s = walls[i];
                finish_row(row, nmse(ds.test[i].s, shats[i]));
                report.rows.push_back(std::move(row));
            }
        } else {
            for (const auto& ref : ds.images) {
                const Matrix recon = reconstruct_image(ds, ref, shats);
                ResultRow row = base_row(cfg);
                row.solver = solver;
                row.trial = ds.test[ref.parts.front().first].noise_seed;
                double wall = 0.0;
                std::size_t counted = 0;
                std::size_t last = SIZE_MAX;
                for (const auto& part : ref.parts) {
                    if (part.first == last) continue;  // parts of one instance share a solve
                    last = part.first;
                    wall += walls[part.first];
                    ++counted;
                }
                row.wall_time_s = counted > 0 ? wall / static_cast<double>(counted) : 0.0;
                finish_row(row, nmse(ref.original, recon));
                report.rows.push_back(std::move(row));
                reconstructions.emplace_back("recon_" + solver + "_" + ref.name + ".pgm", recon);
            }
        }
    }

    ensure_dir(cfg.output_dir);
    emit_text(report, cfg.output_dir, "results.csv",
              result_csv(report.rows));
    for (const auto& [name, image] : reconstructions) {
        const std::string path = join_path(cfg.output_dir, name);
        emit_pgm(image, path);
        report.written.push_back(path);
    }
    emit_text(report, cfg.output_dir, "config_echo.cfg", emit_config(cfg));
    return report;
}

RunReport run_sweep(const ExperimentConfig& cfg, SweepAxis axis) {
    validate_config(cfg);
    require_solvers(cfg);
    if (axis != SweepAxis::sigma && cfg.experiment != ExperimentKind::synthetic)
        throw ConfigError("sweep axis '" + sweep_axis_name(axis) + "' needs experiment = synthetic");
    if (axis == SweepAxis::m_over_n && wants_lstm(cfg))
        throw ConfigError("m_over_n sweeps cannot use the lstm solver: the model input width is fixed");

    std::optional<LstmParams> model;
    if (wants_lstm(cfg)) model = load_solver_model(cfg);

    RunReport report;
    std::vector<double> axis_values;  // one per point, for the summary

    if (axis == SweepAxis::sigma && cfg.experiment != ExperimentKind::synthetic) {
        // fixed image test set, noise redrawn per trial
        const Dataset ds = assemble_test_dataset(cfg);
        const std::size_t points = cfg.sigma_grid.size();
        const std::size_t jobs = points * cfg.trials;
        std::vector<std::vector<ResultRow>> slots(jobs);
        run_jobs(jobs, [&](std::size_t idx) {
            const std::size_t g = idx / cfg.trials;
            const std::size_t t = idx % cfg.trials;
            const double sigma = cfg.sigma_grid[g];
            const std::uint64_t job_seed =
                derive_seed(derive_seed(cfg.seed, kTagSweepSigma + g), t);
            std::vector<Matrix> measured(ds.test.size());
            for (std::size_t i = 0; i < ds.test.size(); ++i) {
                MeasurementEnsemble ens;
                ens.a = ds.a;
                NoiseSpec noise{sigma, derive_seed(job_seed, i + 1)};
                measured[i] = measure(ens, ds.test[i].s, noise);
            }
            for (const auto& solver : cfg.solvers) {
                std::vector<Matrix> shats(ds.test.size());
                double wall = 0.0;
                for (std::size_t i = 0; i < ds.test.size(); ++i) {
                    SolverResult res =
                        run_named_solver(solver, ds.a, measured[i], cfg, model ? &*model : nullptr);
                    shats[i] = std::move(res.shat);
                    wall += res.wall_seconds;
                }
                double err_sum = 0.0;
                for (const auto& ref : ds.images)
                    err_sum += nmse(ref.original, reconstruct_image(ds, ref, shats));
                ResultRow row = base_row(cfg);
                row.solver = solver;
                row.sigma = sigma;
                row.trial = job_seed;
                row.wall_time_s = wall;
                finish_row(row, err_sum / static_cast<double>(ds.images.size()));
                slots[idx].push_back(std::move(row));
            }
        });
        for (auto& slot : slots)
            std::move(slot.begin(), slot.end(), std::back_inserter(report.rows));
        axis_values = cfg.sigma_grid;
    } else {
        // synthetic axes share one job structure: fresh signal and noise per trial
        struct Point {
            std::size_t k;
            double sigma;
            Matrix a;
            std::uint64_t tag;
        };
        std::vector<Point> grid;
        const Matrix shared_a = ensemble_for(cfg);
        if (axis == SweepAxis::k) {
            for (std::size_t g = 0; g < cfg.k_grid.size(); ++g) {
                grid.push_back({cfg.k_grid[g], cfg.sigma, shared_a, kTagSweepK + g});
                axis_values.push_back(static_cast<double>(cfg.k_grid[g]));
            }
        } else if (axis == SweepAxis::sigma) {
            for (std::size_t g = 0; g < cfg.sigma_grid.size(); ++g) {
                grid.push_back({cfg.k, cfg.sigma_grid[g], shared_a, kTagSweepSigma + g});
                axis_values.push_back(cfg.sigma_grid[g]);
            }
        } else {
            for (std::size_t g = 0; g < cfg.mn_grid.size(); ++g) {
                const double ratio = cfg.mn_grid[g];
                auto m_g = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(cfg.n)));
                m_g = std::clamp<std::size_t>(m_g, 1, cfg.n);
                Matrix a_g =
                    gen_measurement_ensemble(m_g, cfg.n, derive_seed(cfg.seed, kTagSweepMnEnsemble + g))
                        .a;
                grid.push_back({cfg.k, cfg.sigma, std::move(a_g), kTagSweepMn + g});
                axis_values.push_back(static_cast<double>(m_g) / static_cast<double>(cfg.n));
            }
        }

        const std::size_t jobs = grid.size() * cfg.trials;
        std::vector<std::vector<ResultRow>> slots(jobs);
        run_jobs(jobs, [&](std::size_t idx) {
            const std::size_t g = idx / cfg.trials;
            const std::size_t t = idx % cfg.trials;
            const Point& pt = grid[g];
            const std::uint64_t job_seed = derive_seed(derive_seed(cfg.seed, pt.tag), t);
            const Matrix s = gen_sparse_ensemble(cfg.n, cfg.l, pt.k, cfg.pattern, cfg.amplitude,
                                                 derive_seed(job_seed, 2))
                                 .s;
            MeasurementEnsemble ens;
            ens.a = pt.a;
            NoiseSpec noise{pt.sigma, derive_seed(job_seed, 1)};
            const Matrix y = measure(ens, s, noise);
            for (const auto& solver : cfg.solvers) {
                const std::size_t budget = cfg.k_max != 0 ? cfg.k_max : pt.k;
                SolverResult res =
                    run_named_solver(solver, pt.a, y, cfg, model ? &*model : nullptr, budget);
                ResultRow row = base_row(cfg);
                row.solver = solver;
                row.k = pt.k;
                row.sigma = pt.sigma;
                row.m_over_n = static_cast<double>(pt.a.rows()) / static_cast<double>(cfg.n);
                row.trial = job_seed;
                row.wall_time_s = res.wall_seconds;
                finish_row(row, nmse(s, res.shat));
                slots[idx].push_back(std::move(row));
            }
        });
        for (auto& slot : slots)
            std::move(slot.begin(), slot.end(), std::back_inserter(report.rows));
    }

    // per (solver, point) aggregates; rows sit in slot order, so the row for
    // (point g, trial t, solver s) is at index (g * trials + t) * nsolvers + s
    std::string summary = "solver,k,m_over_n,sigma,mean_nmse,recovery_fraction\n";
    std::string boundary = "solver,k,m_over_n_90\n";
    const std::size_t points = axis_values.size();
    const std::size_t nsolvers = cfg.solvers.size();
    for (std::size_t sidx = 0; sidx < nsolvers; ++sidx) {
        const std::string& solver = cfg.solvers[sidx];
        double boundary_ratio = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t g = 0; g < points; ++g) {
            double err_sum = 0.0;
            std::size_t recovered = 0;
            for (std::size_t t = 0; t < cfg.trials; ++t) {
                const ResultRow& row = report.rows[(g * cfg.trials + t) * nsolvers + sidx];
                err_sum += row.nmse;
                recovered += row.recovered ? 1 : 0;
            }
            const ResultRow& first = report.rows[g * cfg.trials * nsolvers + sidx];
            const double k_val = static_cast<double>(first.k);
            const double mn_val = first.m_over_n;
            const double sigma_val = first.sigma;
            const double mean_err = err_sum / static_cast<double>(cfg.trials);
            const double fraction =
                static_cast<double>(recovered) / static_cast<double>(cfg.trials);
            summary += solver;
            summary += ',';
            summary += format_double(k_val);
            summary += ',';
            summary += format_double(mn_val);
            summary += ',';
            summary += format_double(sigma_val);
            summary += ',';
            summary += format_double(mean_err);
            summary += ',';
            summary += format_double(fraction);
            summary += '\n';
            if (axis == SweepAxis::m_over_n && std::isnan(boundary_ratio) && fraction >= 0.9)
                boundary_ratio = axis_values[g];
        }
        if (axis == SweepAxis::m_over_n) {
            boundary += solver;
            boundary += ',';
            boundary += std::to_string(cfg.k);
            boundary += ',';
            boundary += format_double(boundary_ratio);
            boundary += '\n';
        }
    }

    ensure_dir(cfg.output_dir);
    emit_text(report, cfg.output_dir, "results.csv",
              result_csv(report.rows));
    emit_text(report, cfg.output_dir, "summary.csv", summary);
    if (axis == SweepAxis::m_over_n)
        emit_text(report, cfg.output_dir, "phase_boundary.csv", boundary);
    emit_text(report, cfg.output_dir, "config_echo.cfg", emit_config(cfg));
    return report;
}

RunReport run_timing(const ExperimentConfig& cfg) {
    validate_config(cfg);
    require_solvers(cfg);
    std::optional<LstmParams> model;
    if (wants_lstm(cfg)) model = load_solver_model(cfg);

    const Dataset ds = assemble_test_dataset(cfg);
    std::vector<Matrix> measured;
    measured.reserve(ds.test.size());
    for (const auto& inst : ds.test) measured.push_back(measure_instance(ds.a, inst, cfg.sigma));

    RunReport report;
    for (const auto& solver : cfg.solvers) {
        for (std::size_t i = 0; i < ds.test.size(); ++i) {
            std::vector<double> samples;
            samples.reserve(cfg.timing_repeats);
            for (std::size_t r = 0; r < cfg.timing_repeats; ++r) {
                const SolverResult res =
                    run_named_solver(solver, ds.a, measured[i], cfg, model ? &*model : nullptr);
                samples.push_back(res.wall_seconds / static_cast<double>(cfg.l));
            }
            double mean = 0.0;
            for (double s : samples) mean += s;
            mean /= static_cast<double>(samples.size());
            double var = 0.0;
            for (double s : samples) var += (s - mean) * (s - mean);
            var = samples.size() > 1 ? var / static_cast<double>(samples.size() - 1) : 0.0;
            TimingRow row;
            row.solver = solver;
            row.instance = i;
            row.repeats = cfg.timing_repeats;
            row.mean_s_per_vector = mean;
            row.std_s_per_vector = std::sqrt(var);
            report.timing.push_back(std::move(row));
        }
    }

    ensure_dir(cfg.output_dir);
    emit_text(report, cfg.output_dir, "timing.csv", timing_csv(report.timing));
    emit_text(report, cfg.output_dir, "machine.txt", machine_summary());
    emit_text(report, cfg.output_dir, "config_echo.cfg", emit_config(cfg));
    return report;
}

RunReport run_gen_data(const ExperimentConfig& cfg) {
    validate_config(cfg);
    if (cfg.experiment != ExperimentKind::synthetic)
        throw ConfigError("gen-data needs experiment = synthetic");

    const Dataset ds = assemble_test_dataset(cfg);
    RunReport report;
    ensure_dir(cfg.output_dir);
    emit_text(report, cfg.output_dir, "a.csv", matrix_csv(ds.a));
    for (std::size_t i = 0; i < ds.test.size(); ++i) {
        emit_text(report, cfg.output_dir, "s_" + zero_pad(i, 3) + ".csv", matrix_csv(ds.test[i].s));
        emit_text(report, cfg.output_dir, "y_" + zero_pad(i, 3) + ".csv",
                  matrix_csv(measure_instance(ds.a, ds.test[i], cfg.sigma)));
    }
    emit_text(report, cfg.output_dir, "config_echo.cfg", emit_config(cfg));
    return report;
}

}  // namespace lstmcs
