#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tsrnn/types.hpp"

namespace tsrnn {

// One peephole LSTM layer. Peepholes are diagonal (vectors), gates are
//   i = sigma(Wxi x + Whi h' + wci.*c' + bi)
//   f = sigma(Wxf x + Whf h' + wcf.*c' + bf)
//   c = f.*c' + i.*tanh(Wxc x + Whc h' + bc)
//   o = sigma(Wxo x + Who h' + wco.*c + bo)
//   h = o.*tanh(c)
struct LstmLayerParams {
    Mat Wxi, Wxf, Wxc, Wxo;  // [hidden x input]
    Mat Whi, Whf, Whc, Who;  // [hidden x hidden]
    Vec wci, wcf, wco;       // [hidden]
    Vec bi, bf, bc, bo;      // [hidden]

    int hidden() const { return static_cast<int>(bi.size()); }
    int input() const { return static_cast<int>(Wxi.cols()); }

    static LstmLayerParams zeros(int input, int hidden);
    void check_dims() const;
};

// Per-step activations cached for backpropagation through time.
struct LstmCache {
    Mat x;       // [T x input]
    Mat i, f, o; // gate activations, [T x hidden]
    Mat g;       // tanh cell candidate, [T x hidden]
    Mat c, h;    // [T x hidden]
};

// Single step from (h_prev, c_prev); gate outputs optionally reported for caching.
void lstm_step(const LstmLayerParams& p, const Vec& x_t, const Vec& h_prev, const Vec& c_prev,
               Vec& h_t, Vec& c_t, Vec* i_t = nullptr, Vec* f_t = nullptr, Vec* g_t = nullptr,
               Vec* o_t = nullptr);

// Run the layer over steps 0..steps-1 of inputs with h0 = c0 = 0. Returns the
// hidden sequence [steps x hidden]; fills cache when given.
Mat lstm_forward(const LstmLayerParams& p, const Mat& inputs, int steps,
                 LstmCache* cache = nullptr);

// BPTT for one layer. dh is the gradient w.r.t. every hidden output
// [steps x hidden]; accumulates into grads and returns the gradient w.r.t.
// the layer inputs [steps x input].
Mat lstm_backward(const LstmLayerParams& p, const LstmCache& cache, const Mat& dh,
                  LstmLayerParams& grads);

// Visit every parameter tensor of a layer as a flat double span.
using TensorVisitor =
    std::function<void(const std::string& name, double* data, std::size_t size)>;
void visit_lstm_tensors(LstmLayerParams& p, const std::string& prefix, const TensorVisitor& fn);

}  // namespace tsrnn
