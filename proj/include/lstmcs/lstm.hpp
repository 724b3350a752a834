#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lstmcs/matrix.hpp"

namespace lstmcs {

// reduced drops the peephole connections and pins the forget gate to 1;
// the frozen tensors stay allocated (and serialized) as zeros so both
// variants share one parameter layout
enum class Variant : std::uint32_t { full = 0, reduced = 1 };

Variant parse_variant(const std::string& s);
std::string variant_name(Variant v);

struct LstmDims {
    std::size_t m = 0;      // residual length, input size
    std::size_t n = 0;      // sparse vector length, output size
    std::size_t ncell = 0;  // cells per gate
};

struct LstmWeights {
    // gate order everywhere: output, forget, input, cell-input
    Matrix w_o, w_f, w_i, w_g;          // ncell x m
    Matrix wrec_o, wrec_f, wrec_i, wrec_g;  // ncell x ncell
    Matrix wp_o, wp_f, wp_i;            // ncell x ncell, full peephole matrices
    Vector b_o, b_f, b_i, b_g;          // ncell
    Matrix u;                           // n x ncell
};

struct TensorRef {
    const char* name;
    double* data;
    std::size_t size;
    bool frozen_in_reduced;
};

// fixed canonical order shared by serialization, initialization and the
// optimizer: w_o..w_g, wrec_o..wrec_g, wp_o..wp_i, b_o..b_g, u
std::vector<TensorRef> tensor_refs(LstmWeights& w);

struct LstmParams {
    LstmDims dims;
    Variant variant = Variant::reduced;
    LstmWeights w;
};

LstmWeights make_zero_weights(const LstmDims& dims);

// weights i.i.d. uniform(-0.05, 0.05) drawn in canonical tensor order,
// biases zero; frozen tensors of the reduced variant are left at zero
LstmParams init_params(const LstmDims& dims, Variant variant, std::uint64_t seed);

struct LstmState {
    Vector c, v;
};

LstmState zero_state(std::size_t ncell);

// everything the backward pass needs about one step
struct StepCache {
    Vector x;       // input residual as fed to the gates
    Vector y_g, i, f, o;
    Vector c_prev, v_prev;
    Vector c, v;
    Vector z, p;    // logits and softmax output
};

// one recurrence step; state is advanced in place and also captured in the
// returned cache together with the softmax head output
StepCache forward_step(const LstmParams& params, const Vector& x, LstmState& state);

// softmax(U v) without advancing any state
Vector channel_probabilities(const LstmParams& params, const Vector& v);

}  // namespace lstmcs
