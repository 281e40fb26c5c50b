#include "tsrnn/lstm.hpp"

namespace tsrnn {

namespace {

inline Vec sigmoid(const Vec& z) {
    return z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

}  // namespace

LstmLayerParams LstmLayerParams::zeros(int input, int hidden) {
    LstmLayerParams p;
    p.Wxi = p.Wxf = p.Wxc = p.Wxo = Mat::Zero(hidden, input);
    p.Whi = p.Whf = p.Whc = p.Who = Mat::Zero(hidden, hidden);
    p.wci = p.wcf = p.wco = Vec::Zero(hidden);
    p.bi = p.bf = p.bc = p.bo = Vec::Zero(hidden);
    return p;
}

void LstmLayerParams::check_dims() const {
    const int h = hidden(), in = input();
    auto bad = [&](const Mat& m, int r, int c) { return m.rows() != r || m.cols() != c; };
    if (bad(Wxi, h, in) || bad(Wxf, h, in) || bad(Wxc, h, in) || bad(Wxo, h, in) ||
        bad(Whi, h, h) || bad(Whf, h, h) || bad(Whc, h, h) || bad(Who, h, h) ||
        wci.size() != h || wcf.size() != h || wco.size() != h || bf.size() != h ||
        bc.size() != h || bo.size() != h)
        throw InvalidInputError("inconsistent LSTM layer dimensions");
}

void lstm_step(const LstmLayerParams& p, const Vec& x_t, const Vec& h_prev, const Vec& c_prev,
               Vec& h_t, Vec& c_t, Vec* i_out, Vec* f_out, Vec* g_out, Vec* o_out) {
    if (x_t.size() != p.input() || h_prev.size() != p.hidden() || c_prev.size() != p.hidden())
        throw InvalidInputError("lstm_step: dimension mismatch");

    Vec i = sigmoid(p.Wxi * x_t + p.Whi * h_prev + p.wci.cwiseProduct(c_prev) + p.bi);
    Vec f = sigmoid(p.Wxf * x_t + p.Whf * h_prev + p.wcf.cwiseProduct(c_prev) + p.bf);
    Vec g = (p.Wxc * x_t + p.Whc * h_prev + p.bc).array().tanh();
    c_t = f.cwiseProduct(c_prev) + i.cwiseProduct(g);
    Vec o = sigmoid(p.Wxo * x_t + p.Who * h_prev + p.wco.cwiseProduct(c_t) + p.bo);
    h_t = o.cwiseProduct(c_t.array().tanh().matrix());

    if (i_out) *i_out = std::move(i);
    if (f_out) *f_out = std::move(f);
    if (g_out) *g_out = std::move(g);
    if (o_out) *o_out = std::move(o);
}

Mat lstm_forward(const LstmLayerParams& p, const Mat& inputs, int steps, LstmCache* cache) {
    if (steps < 1) throw InvalidInputError("lstm_forward: need at least one step");
    if (steps > inputs.rows()) throw InvalidInputError("lstm_forward: steps exceed input rows");
    const int h = p.hidden();

    if (cache) {
        cache->x = inputs.topRows(steps);
        cache->i.resize(steps, h);
        cache->f.resize(steps, h);
        cache->o.resize(steps, h);
        cache->g.resize(steps, h);
        cache->c.resize(steps, h);
        cache->h.resize(steps, h);
    }

    Mat hidden(steps, h);
    Vec h_prev = Vec::Zero(h), c_prev = Vec::Zero(h);
    Vec h_t(h), c_t(h), i_t, f_t, g_t, o_t;
    for (int t = 0; t < steps; ++t) {
        Vec x_t = inputs.row(t).transpose();
        lstm_step(p, x_t, h_prev, c_prev, h_t, c_t, cache ? &i_t : nullptr,
                  cache ? &f_t : nullptr, cache ? &g_t : nullptr, cache ? &o_t : nullptr);
        hidden.row(t) = h_t.transpose();
        if (cache) {
            cache->i.row(t) = i_t.transpose();
            cache->f.row(t) = f_t.transpose();
            cache->g.row(t) = g_t.transpose();
            cache->o.row(t) = o_t.transpose();
            cache->c.row(t) = c_t.transpose();
            cache->h.row(t) = h_t.transpose();
        }
        h_prev = h_t;
        c_prev = c_t;
    }
    return hidden;
}

Mat lstm_backward(const LstmLayerParams& p, const LstmCache& cache, const Mat& dh,
                  LstmLayerParams& grads) {
    const int steps = static_cast<int>(cache.h.rows());
    const int h = p.hidden();
    Mat dx(steps, p.input());

    Vec dh_next = Vec::Zero(h);  // gradient into h_t from step t+1
    Vec dc_next = Vec::Zero(h);  // gradient into c_t from step t+1 (cell path + peepholes)
    for (int t = steps - 1; t >= 0; --t) {
        const Vec i = cache.i.row(t).transpose();
        const Vec f = cache.f.row(t).transpose();
        const Vec o = cache.o.row(t).transpose();
        const Vec g = cache.g.row(t).transpose();
        const Vec c = cache.c.row(t).transpose();
        const Vec x = cache.x.row(t).transpose();
        const Vec h_prev = t > 0 ? Vec(cache.h.row(t - 1).transpose()) : Vec(Vec::Zero(h));
        const Vec c_prev = t > 0 ? Vec(cache.c.row(t - 1).transpose()) : Vec(Vec::Zero(h));
        const Vec tanh_c = c.array().tanh();

        Vec dh_t = dh.row(t).transpose() + dh_next;
        Vec da_o = dh_t.cwiseProduct(tanh_c)
                       .cwiseProduct(o)
                       .cwiseProduct(Vec::Ones(h) - o);
        Vec dc = dh_t.cwiseProduct(o).cwiseProduct(
                     (Vec::Ones(h) - tanh_c.cwiseProduct(tanh_c))) +
                 dc_next + da_o.cwiseProduct(p.wco);

        Vec da_i = dc.cwiseProduct(g).cwiseProduct(i).cwiseProduct(Vec::Ones(h) - i);
        Vec da_f = dc.cwiseProduct(c_prev).cwiseProduct(f).cwiseProduct(Vec::Ones(h) - f);
        Vec da_c = dc.cwiseProduct(i).cwiseProduct(Vec::Ones(h) - g.cwiseProduct(g));

        grads.Wxi.noalias() += da_i * x.transpose();
        grads.Wxf.noalias() += da_f * x.transpose();
        grads.Wxc.noalias() += da_c * x.transpose();
        grads.Wxo.noalias() += da_o * x.transpose();
        grads.Whi.noalias() += da_i * h_prev.transpose();
        grads.Whf.noalias() += da_f * h_prev.transpose();
        grads.Whc.noalias() += da_c * h_prev.transpose();
        grads.Who.noalias() += da_o * h_prev.transpose();
        grads.wci += da_i.cwiseProduct(c_prev);
        grads.wcf += da_f.cwiseProduct(c_prev);
        grads.wco += da_o.cwiseProduct(c);
        grads.bi += da_i;
        grads.bf += da_f;
        grads.bc += da_c;
        grads.bo += da_o;

        dx.row(t) = (p.Wxi.transpose() * da_i + p.Wxf.transpose() * da_f +
                     p.Wxc.transpose() * da_c + p.Wxo.transpose() * da_o)
                        .transpose();
        dh_next = p.Whi.transpose() * da_i + p.Whf.transpose() * da_f +
                  p.Whc.transpose() * da_c + p.Who.transpose() * da_o;
        dc_next = dc.cwiseProduct(f) + da_i.cwiseProduct(p.wci) + da_f.cwiseProduct(p.wcf);
    }
    return dx;
}

void visit_lstm_tensors(LstmLayerParams& p, const std::string& prefix, const TensorVisitor& fn) {
    auto mat = [&](const char* name, Mat& m) {
        fn(prefix + name, m.data(), static_cast<std::size_t>(m.size()));
    };
    auto vec = [&](const char* name, Vec& v) {
        fn(prefix + name, v.data(), static_cast<std::size_t>(v.size()));
    };
    mat("Wxi", p.Wxi); mat("Wxf", p.Wxf); mat("Wxc", p.Wxc); mat("Wxo", p.Wxo);
    mat("Whi", p.Whi); mat("Whf", p.Whf); mat("Whc", p.Whc); mat("Who", p.Who);
    vec("wci", p.wci); vec("wcf", p.wcf); vec("wco", p.wco);
    vec("bi", p.bi); vec("bf", p.bf); vec("bc", p.bc); vec("bo", p.bo);
}

}  // namespace tsrnn
