#include "lstmcs/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "lstmcs/errors.hpp"
#include "lstmcs/linalg.hpp"
#include "lstmcs/signal.hpp"

namespace lstmcs {

std::vector<TrainingSequence> generate_training_pairs(const Matrix& s, const Matrix& a,
                                                      std::size_t k_max, bool include_initial_pair) {
    if (a.cols() != s.rows())
        throw ShapeError("generate_training_pairs: matrix " + a.shape_str() + " vs signals " +
                         s.shape_str());
    if (k_max == 0) throw ConfigError("k_max must be positive");

    const std::size_t l = s.cols();
    std::vector<std::vector<TrainingPair>> per_channel(l);
    for (std::size_t j = 0; j < l; ++j) {
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < s.rows(); ++i)
            if (s(i, j) != 0.0) order.push_back(i);
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            const double ax = std::abs(s(x, j)), ay = std::abs(s(y, j));
            return ax != ay ? ax > ay : x < y;
        });
        if (order.size() > k_max) order.resize(k_max);
        if (order.empty()) continue;

        Vector r = matvec(a, s.col(j));
        if (include_initial_pair) per_channel[j].push_back({r, order[0], j});
        for (std::size_t d = 1; d < order.size(); ++d) {
            axpy(-s(order[d - 1], j), a.col(order[d - 1]), r);
            per_channel[j].push_back({r, order[d], j});
        }
    }

    std::size_t depth = 0;
    for (const auto& pc : per_channel) depth = std::max(depth, pc.size());
    std::vector<TrainingSequence> seqs(depth);
    for (std::size_t d = 0; d < depth; ++d)
        for (std::size_t j = 0; j < l; ++j)
            if (d < per_channel[j].size()) seqs[d].pairs.push_back(per_channel[j][d]);
    return seqs;
}

double cross_entropy(const Vector& p, std::size_t target) {
    if (target >= p.size()) throw ShapeError("cross_entropy: target out of range");
    return -std::log(p[target]);
}

namespace {

Vector normalized_input(const Vector& r) {
    const double scale = max_abs(r);
    if (scale == 0.0) return r;
    Vector x = r;
    for (double& t : x) t /= scale;
    return x;
}

}  // namespace

SequenceEval forward_sequence(const LstmParams& params, const TrainingSequence& seq) {
    SequenceEval ev;
    ev.steps.reserve(seq.pairs.size());
    auto state = zero_state(params.dims.ncell);
    for (const auto& pair : seq.pairs) {
        ev.steps.push_back(forward_step(params, normalized_input(pair.residual), state));
        ev.loss += cross_entropy(ev.steps.back().p, pair.target);
    }
    return ev;
}

double sequence_loss(const LstmParams& params, const TrainingSequence& seq) {
    return forward_sequence(params, seq).loss;
}

namespace {

void outer_acc(Matrix& g, const Vector& row, const Vector& col) {
    for (std::size_t i = 0; i < g.rows(); ++i) {
        const double ri = row[i];
        if (ri == 0.0) continue;
        double* dst = g.data() + i * g.cols();
        for (std::size_t j = 0; j < g.cols(); ++j) dst[j] += ri * col[j];
    }
}

}  // namespace

GradientSet backprop_sequence(const LstmParams& params, const TrainingSequence& seq, double* loss_out) {
    const SequenceEval ev = forward_sequence(params, seq);
    if (loss_out) *loss_out = ev.loss;

    const auto& w = params.w;
    const std::size_t ncell = params.dims.ncell;
    const bool full = params.variant == Variant::full;

    GradientSet g = make_zero_weights(params.dims);
    Vector dv_carry(ncell, 0.0), dc_carry(ncell, 0.0);

    for (std::size_t t = ev.steps.size(); t-- > 0;) {
        const StepCache& st = ev.steps[t];
        const std::size_t target = seq.pairs[t].target;

        Vector dz = st.p;
        dz[target] -= 1.0;
        outer_acc(g.u, dz, st.v);

        Vector dv = matvec_t(w.u, dz);
        for (std::size_t k = 0; k < ncell; ++k) dv[k] += dv_carry[k];

        Vector tanh_c(ncell), d_ao(ncell), dc(ncell);
        for (std::size_t k = 0; k < ncell; ++k) {
            tanh_c[k] = std::tanh(st.c[k]);
            d_ao[k] = dv[k] * tanh_c[k] * st.o[k] * (1.0 - st.o[k]);
            dc[k] = dv[k] * st.o[k] * (1.0 - tanh_c[k] * tanh_c[k]) + dc_carry[k];
        }
        if (full) {
            // the output gate reads c(t) through its peephole
            const Vector peek = matvec_t(w.wp_o, d_ao);
            for (std::size_t k = 0; k < ncell; ++k) dc[k] += peek[k];
        }

        Vector d_ai(ncell), d_ag(ncell), d_af;
        for (std::size_t k = 0; k < ncell; ++k) {
            d_ai[k] = dc[k] * st.y_g[k] * st.i[k] * (1.0 - st.i[k]);
            d_ag[k] = dc[k] * st.i[k] * (1.0 - st.y_g[k] * st.y_g[k]);
        }
        if (full) {
            d_af.resize(ncell);
            for (std::size_t k = 0; k < ncell; ++k)
                d_af[k] = dc[k] * st.c_prev[k] * st.f[k] * (1.0 - st.f[k]);
        }

        outer_acc(g.w_o, d_ao, st.x);
        outer_acc(g.wrec_o, d_ao, st.v_prev);
        for (std::size_t k = 0; k < ncell; ++k) g.b_o[k] += d_ao[k];
        outer_acc(g.w_i, d_ai, st.x);
        outer_acc(g.wrec_i, d_ai, st.v_prev);
        for (std::size_t k = 0; k < ncell; ++k) g.b_i[k] += d_ai[k];
        outer_acc(g.w_g, d_ag, st.x);
        outer_acc(g.wrec_g, d_ag, st.v_prev);
        for (std::size_t k = 0; k < ncell; ++k) g.b_g[k] += d_ag[k];
        if (full) {
            outer_acc(g.wp_o, d_ao, st.c);
            outer_acc(g.w_f, d_af, st.x);
            outer_acc(g.wrec_f, d_af, st.v_prev);
            outer_acc(g.wp_f, d_af, st.c_prev);
            outer_acc(g.wp_i, d_ai, st.c_prev);
            for (std::size_t k = 0; k < ncell; ++k) g.b_f[k] += d_af[k];
        }

        dv_carry = matvec_t(w.wrec_o, d_ao);
        {
            const Vector vi = matvec_t(w.wrec_i, d_ai);
            const Vector vg = matvec_t(w.wrec_g, d_ag);
            for (std::size_t k = 0; k < ncell; ++k) dv_carry[k] += vi[k] + vg[k];
        }
        for (std::size_t k = 0; k < ncell; ++k) dc_carry[k] = dc[k] * st.f[k];
        if (full) {
            const Vector vf = matvec_t(w.wrec_f, d_af);
            const Vector pf = matvec_t(w.wp_f, d_af);
            const Vector pi = matvec_t(w.wp_i, d_ai);
            for (std::size_t k = 0; k < ncell; ++k) {
                dv_carry[k] += vf[k];
                dc_carry[k] += pf[k] + pi[k];
            }
        }
    }
    return g;
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
    if (h <= 0.0) throw ConfigError("finite-difference step must be positive");
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

GradientSet fd_gradient_oracle(const LstmParams& params, const TrainingSequence& seq, double h) {
    if (h <= 0.0) throw ConfigError("finite-difference step must be positive");
    LstmParams probe = params;
    GradientSet g = make_zero_weights(params.dims);
    auto probe_refs = tensor_refs(probe.w);
    auto grad_refs = tensor_refs(g);
    for (std::size_t t = 0; t < probe_refs.size(); ++t) {
        for (std::size_t i = 0; i < probe_refs[t].size; ++i) {
            double* slot = &probe_refs[t].data[i];
            const double saved = *slot;
            grad_refs[t].data[i] = central_difference(
                [&](double theta) {
                    *slot = theta;
                    return sequence_loss(probe, seq);
                },
                saved, h);
            *slot = saved;
        }
    }
    return g;
}

GradCheck compare_gradients(GradientSet& analytic, GradientSet& fd) {
    GradCheck out;
    auto ra = tensor_refs(analytic), rf = tensor_refs(fd);
    for (std::size_t t = 0; t < ra.size(); ++t) {
        if (ra[t].size != rf[t].size) throw ShapeError("compare_gradients: tensor shape mismatch");
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < ra[t].size; ++i) {
            const double a = ra[t].data[i], f = rf[t].data[i];
            num += (a - f) * (a - f);
            den += f * f;
            const double scale = std::max(std::abs(a), std::abs(f));
            if (scale < 1e-4)
                out.max_small_abs = std::max(out.max_small_abs, std::abs(a - f));
            else
                out.max_rel_error = std::max(out.max_rel_error, std::abs(a - f) / scale);
        }
        if (den > 0.0)
            out.max_tensor_rel = std::max(out.max_tensor_rel, std::sqrt(num / den));
        else if (num > 0.0)
            out.max_tensor_rel = std::numeric_limits<double>::infinity();
    }
    return out;
}

void add_scaled(LstmWeights& dst, double alpha, const LstmWeights& src) {
    auto rd = tensor_refs(dst);
    auto rs = tensor_refs(const_cast<LstmWeights&>(src));
    for (std::size_t t = 0; t < rd.size(); ++t) {
        if (rd[t].size != rs[t].size) throw ShapeError("add_scaled: tensor shape mismatch");
        for (std::size_t i = 0; i < rd[t].size; ++i) rd[t].data[i] += alpha * rs[t].data[i];
    }
}

void scale_weights(LstmWeights& w, double alpha) {
    for (auto& ref : tensor_refs(w))
        for (std::size_t i = 0; i < ref.size; ++i) ref.data[i] *= alpha;
}

void clip_gradients(GradientSet& g, double threshold) {
    if (threshold <= 0.0) throw ConfigError("clip threshold must be positive");
    for (auto& ref : tensor_refs(g))
        for (std::size_t i = 0; i < ref.size; ++i)
            ref.data[i] = std::clamp(ref.data[i], -threshold, threshold);
}

double momentum_at(std::size_t update_index, std::size_t total_updates) {
    if (update_index == 0 || update_index > total_updates)
        throw ConfigError("update index " + std::to_string(update_index) + " outside 1.." +
                          std::to_string(total_updates));
    const std::size_t tenth = (total_updates + 9) / 10;
    if (update_index <= tenth || update_index > total_updates - tenth) return 0.9;
    return 0.995;
}

TrainResult train(const std::vector<TrainingSequence>& data, const LstmDims& dims,
                  const TrainOptions& opts, const std::optional<ValidationSet>& validation) {
    if (data.empty()) throw ConfigError("training set is empty");
    if (opts.batch_size == 0) throw ConfigError("batch_size must be positive");
    if (opts.epochs == 0) throw ConfigError("epochs must be positive");
    for (const auto& seq : data)
        for (const auto& pair : seq.pairs) {
            if (pair.residual.size() != dims.m)
                throw ShapeError("training pair residual length does not match dims.m");
            if (pair.target >= dims.n) throw ShapeError("training pair target outside dims.n");
        }

    LstmDims d = dims;
    d.ncell = opts.ncell;
    LstmParams params = init_params(d, opts.variant, opts.seed);
    LstmWeights delta = make_zero_weights(d);

    const std::size_t batches = (data.size() + opts.batch_size - 1) / opts.batch_size;
    const std::size_t total_updates = batches * opts.epochs;

    TrainResult out;
    out.best_epoch = 0;
    double best_nmse = std::numeric_limits<double>::infinity();
    LstmParams best_params = params;

    std::size_t update = 0;
    for (std::size_t epoch = 1; epoch <= opts.epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        double loss_acc = 0.0;
        for (std::size_t b = 0; b < batches; ++b) {
            ++update;
            const double mu = momentum_at(update, total_updates);

            LstmParams lookahead = params;
            add_scaled(lookahead.w, mu, delta);

            GradientSet grads = make_zero_weights(d);
            double batch_loss = 0.0;
            const std::size_t begin = b * opts.batch_size;
            const std::size_t end = std::min(begin + opts.batch_size, data.size());
            for (std::size_t s = begin; s < end; ++s) {
                double seq_loss = 0.0;
                GradientSet gs = backprop_sequence(lookahead, data[s], &seq_loss);
                add_scaled(grads, 1.0, gs);
                batch_loss += seq_loss;
            }
            if (!std::isfinite(batch_loss))
                throw Error("training diverged: non-finite loss at epoch " + std::to_string(epoch) +
                            ", batch " + std::to_string(b + 1));

            clip_gradients(grads, opts.clip_threshold);
            scale_weights(delta, mu);
            add_scaled(delta, -opts.step_size, grads);
            add_scaled(params.w, 1.0, delta);
            loss_acc += batch_loss;
        }

        EpochLog row;
        row.epoch = epoch;
        row.mean_batch_loss = loss_acc / static_cast<double>(batches);
        row.validation_nmse = std::numeric_limits<double>::quiet_NaN();
        if (validation && !validation->signals.empty()) {
            double acc = 0.0;
            for (const auto& s : validation->signals) {
                const Matrix y = matmul(validation->a, s);
                const SolverResult sol = lstm_cs_solve(validation->a, y, params, validation->solve);
                acc += nmse(s, sol.shat);
            }
            row.validation_nmse = acc / static_cast<double>(validation->signals.size());
            if (row.validation_nmse < best_nmse) {
                best_nmse = row.validation_nmse;
                best_params = params;
                out.best_epoch = epoch;
            }
        }
        row.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.log.push_back(row);
    }

    const bool use_best = opts.early_stopping && validation && !validation->signals.empty();
    out.params = use_best ? best_params : params;
    if (!use_best) out.best_epoch = opts.epochs;
    return out;
}

}  // namespace lstmcs
