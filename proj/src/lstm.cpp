#include "lstmcs/lstm.hpp"

#include <cmath>

#include "lstmcs/errors.hpp"
#include "lstmcs/linalg.hpp"
#include "lstmcs/rng.hpp"

namespace lstmcs {

Variant parse_variant(const std::string& s) {
    if (s == "full") return Variant::full;
    if (s == "reduced") return Variant::reduced;
    throw ConfigError("unknown variant: " + s);
}

std::string variant_name(Variant v) { return v == Variant::full ? "full" : "reduced"; }

std::vector<TensorRef> tensor_refs(LstmWeights& w) {
    auto m = [](const char* name, Matrix& t, bool frozen) {
        return TensorRef{name, t.data(), t.size(), frozen};
    };
    auto v = [](const char* name, Vector& t, bool frozen) {
        return TensorRef{name, t.data(), t.size(), frozen};
    };
    return {
        m("w_o", w.w_o, false),     m("w_f", w.w_f, true),      m("w_i", w.w_i, false),
        m("w_g", w.w_g, false),     m("wrec_o", w.wrec_o, false), m("wrec_f", w.wrec_f, true),
        m("wrec_i", w.wrec_i, false), m("wrec_g", w.wrec_g, false), m("wp_o", w.wp_o, true),
        m("wp_f", w.wp_f, true),    m("wp_i", w.wp_i, true),    v("b_o", w.b_o, false),
        v("b_f", w.b_f, true),      v("b_i", w.b_i, false),     v("b_g", w.b_g, false),
        m("u", w.u, false),
    };
}

LstmWeights make_zero_weights(const LstmDims& d) {
    LstmWeights w;
    w.w_o = Matrix(d.ncell, d.m);
    w.w_f = Matrix(d.ncell, d.m);
    w.w_i = Matrix(d.ncell, d.m);
    w.w_g = Matrix(d.ncell, d.m);
    w.wrec_o = Matrix(d.ncell, d.ncell);
    w.wrec_f = Matrix(d.ncell, d.ncell);
    w.wrec_i = Matrix(d.ncell, d.ncell);
    w.wrec_g = Matrix(d.ncell, d.ncell);
    w.wp_o = Matrix(d.ncell, d.ncell);
    w.wp_f = Matrix(d.ncell, d.ncell);
    w.wp_i = Matrix(d.ncell, d.ncell);
    w.b_o = Vector(d.ncell, 0.0);
    w.b_f = Vector(d.ncell, 0.0);
    w.b_i = Vector(d.ncell, 0.0);
    w.b_g = Vector(d.ncell, 0.0);
    w.u = Matrix(d.n, d.ncell);
    return w;
}

LstmParams init_params(const LstmDims& dims, Variant variant, std::uint64_t seed) {
    if (dims.m == 0 || dims.n == 0 || dims.ncell == 0)
        throw ConfigError("init_params: all dims must be positive");
    LstmParams p;
    p.dims = dims;
    p.variant = variant;
    p.w = make_zero_weights(dims);
    Rng rng(seed);
    for (auto& ref : tensor_refs(p.w)) {
        const bool is_bias = ref.name[0] == 'b';
        if (is_bias) continue;
        if (variant == Variant::reduced && ref.frozen_in_reduced) continue;
        for (std::size_t i = 0; i < ref.size; ++i) ref.data[i] = rng.uniform(-0.05, 0.05);
    }
    return p;
}

LstmState zero_state(std::size_t ncell) { return {Vector(ncell, 0.0), Vector(ncell, 0.0)}; }

namespace {

// pre + W x + Wrec v_prev (+ Wp c when given)
Vector gate_preact(const Matrix& w, const Vector& x, const Matrix& wrec, const Vector& v_prev,
                   const Matrix* wp, const Vector* c, const Vector& b) {
    Vector a = b;
    const Vector wx = matvec(w, x);
    const Vector wv = matvec(wrec, v_prev);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += wx[i] + wv[i];
    if (wp) {
        const Vector wc = matvec(*wp, *c);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += wc[i];
    }
    return a;
}

}  // namespace

StepCache forward_step(const LstmParams& params, const Vector& x, LstmState& state) {
    const auto& w = params.w;
    const std::size_t ncell = params.dims.ncell;
    if (x.size() != params.dims.m)
        throw ShapeError("forward_step: input length " + std::to_string(x.size()) + ", expected " +
                         std::to_string(params.dims.m));
    if (state.c.size() != ncell || state.v.size() != ncell)
        throw ShapeError("forward_step: state size does not match ncell");

    const bool full = params.variant == Variant::full;
    StepCache s;
    s.x = x;
    s.c_prev = state.c;
    s.v_prev = state.v;

    s.y_g = tanh_vec(gate_preact(w.w_g, x, w.wrec_g, state.v, nullptr, nullptr, w.b_g));
    s.i = sigmoid(gate_preact(w.w_i, x, w.wrec_i, state.v, full ? &w.wp_i : nullptr, &s.c_prev, w.b_i));
    s.f = full ? sigmoid(gate_preact(w.w_f, x, w.wrec_f, state.v, &w.wp_f, &s.c_prev, w.b_f))
               : Vector(ncell, 1.0);

    s.c.resize(ncell);
    for (std::size_t k = 0; k < ncell; ++k) s.c[k] = s.f[k] * s.c_prev[k] + s.i[k] * s.y_g[k];

    // the output gate peeks at the updated cell state, not the previous one
    s.o = sigmoid(gate_preact(w.w_o, x, w.wrec_o, state.v, full ? &w.wp_o : nullptr, &s.c, w.b_o));

    s.v.resize(ncell);
    for (std::size_t k = 0; k < ncell; ++k) s.v[k] = s.o[k] * std::tanh(s.c[k]);

    s.z = matvec(w.u, s.v);
    s.p = softmax(s.z);

    state.c = s.c;
    state.v = s.v;
    return s;
}

Vector channel_probabilities(const LstmParams& params, const Vector& v) {
    return softmax(matvec(params.w.u, v));
}

}  // namespace lstmcs
