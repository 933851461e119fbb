#include "mopn/actor.hpp"

#include <cmath>

namespace mopn {

Tape::Id gru_cell(Tape& tape, const GruNodes& p, Tape::Id x, Tape::Id h_prev) {
    const Tape::Id z = tape.sigmoid(
        tape.add(tape.add(tape.matmul(p.Wz, x), tape.matmul(p.Uz, h_prev)), p.bz));
    const Tape::Id r = tape.sigmoid(
        tape.add(tape.add(tape.matmul(p.Wr, x), tape.matmul(p.Ur, h_prev)), p.br));
    const Tape::Id hc = tape.tanh(
        tape.add(tape.add(tape.matmul(p.Wh, x), tape.matmul(p.Uh, tape.mul(r, h_prev))), p.bh));
    // h' = (1-z)*h + z*hc
    return tape.add(tape.mul(tape.affine(z, -1.0, 1.0), h_prev), tape.mul(z, hc));
}

ActorModel ActorModel::create(const ProblemKind& kind, std::size_t embed, Rng& rng) {
    ActorModel m{kind, embed, {}};
    const std::size_t d = kind.input_width();
    const std::size_t l = embed;
    m.params.add("enc.W", d, l);
    m.params.add("enc.b", l, 1);
    for (const char* g : {"z", "r", "h"}) {
        m.params.add(std::string("gru.W") + g, l, l);
        m.params.add(std::string("gru.U") + g, l, l);
        m.params.add(std::string("gru.b") + g, l, 1);
    }
    m.params.add("attn.va", l, 1);
    m.params.add("attn.Wa", l, 2 * l);
    m.params.add("attn.vb", l, 1);
    m.params.add("attn.Wb", l, 2 * l);
    m.params.init_xavier(rng);
    return m;
}

namespace {

GruNodes gru_nodes(Tape& tape, const ActorModel& model) {
    const ParamStore& p = model.params;
    return GruNodes{
        tape.param(p.index_of("gru.Wz")), tape.param(p.index_of("gru.Uz")),
        tape.param(p.index_of("gru.bz")), tape.param(p.index_of("gru.Wr")),
        tape.param(p.index_of("gru.Ur")), tape.param(p.index_of("gru.br")),
        tape.param(p.index_of("gru.Wh")), tape.param(p.index_of("gru.Uh")),
        tape.param(p.index_of("gru.bh")),
    };
}

struct AttnNodes {
    Tape::Id va, vb;
    Tape::Id Wae, Wad, Wbe, Wbd;  // column halves of Wa, Wb
    Tape::Id Ea, Eb;              // e * Wae^T, e * Wbe^T, precomputed per rollout
};

AttnNodes attn_nodes(Tape& tape, const ActorModel& model, Tape::Id e) {
    const std::size_t l = model.embed;
    AttnNodes a;
    a.va = tape.param(model.params.index_of("attn.va"));
    a.vb = tape.param(model.params.index_of("attn.vb"));
    const Tape::Id Wa = tape.param(model.params.index_of("attn.Wa"));
    const Tape::Id Wb = tape.param(model.params.index_of("attn.Wb"));
    a.Wae = tape.cols(Wa, 0, l);
    a.Wad = tape.cols(Wa, l, l);
    a.Wbe = tape.cols(Wb, 0, l);
    a.Wbd = tape.cols(Wb, l, l);
    a.Ea = tape.matmul_tb(e, a.Wae);
    a.Eb = tape.matmul_tb(e, a.Wbe);
    return a;
}

// Selection distribution for one step, with the per-city terms of the
// affine maps precomputed in `attn`.
Tape::Id attend_step(Tape& tape, const AttnNodes& attn, Tape::Id e, Tape::Id d,
                     const std::vector<std::uint8_t>& visited) {
    // u_i = va . tanh(Wae e_i + Wad d); glimpse softmax is over all cities.
    const Tape::Id u = tape.matmul(
        tape.tanh(tape.add_row_broadcast(attn.Ea, tape.matmul(attn.Wad, d))), attn.va);
    const Tape::Id a = tape.softmax(u);
    const Tape::Id b = tape.matmul_ta(e, a);
    const Tape::Id ut = tape.matmul(
        tape.tanh(tape.add_row_broadcast(attn.Eb, tape.matmul(attn.Wbd, b))), attn.vb);
    return tape.masked_softmax(ut, visited);
}

std::size_t choose(const Tensor& p, const std::vector<std::uint8_t>& visited,
                   DecodeMode mode, Rng* rng) {
    const std::size_t n = p.rows();
    if (mode == DecodeMode::Greedy) {
        std::size_t best = n;
        double bestp = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!visited[i] && p[i] > bestp) {
                bestp = p[i];
                best = i;
            }
        }
        return best;
    }
    if (rng == nullptr) throw InvalidArgument("sampling rollout needs an rng");
    const double r = rng->uniform();
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (visited[i]) continue;
        acc += p[i];
        last = i;
        if (r < acc) return i;
    }
    return last;  // guard against cumulative rounding
}

}  // namespace

Tape::Id taped_encode(Tape& tape, const ActorModel& model, Tape::Id leaf_matrix) {
    if (tape.val(leaf_matrix).cols() != model.input_width()) {
        throw ShapeError("leaf width does not match model input width");
    }
    const Tape::Id w = tape.param(model.params.index_of("enc.W"));
    const Tape::Id b = tape.param(model.params.index_of("enc.b"));
    return tape.add_row_broadcast(tape.matmul(leaf_matrix, w), b);
}

Tensor encode(const LeafInstance& leaf, const ActorModel& model) {
    Tape tape(&model.params);
    return tape.val(taped_encode(tape, model, tape.constant(leaf.matrix)));
}

Tape::Id decode_step(Tape& tape, const ActorModel& model, Tape::Id input, Tape::Id hidden) {
    return gru_cell(tape, gru_nodes(tape, model), input, hidden);
}

Tape::Id attend(Tape& tape, const ActorModel& model, Tape::Id e, Tape::Id d,
                const std::vector<std::uint8_t>& visited) {
    return attend_step(tape, attn_nodes(tape, model, e), e, d, visited);
}

Tape::Id taped_rollout(Tape& tape, const ActorModel& model, Tape::Id leaf_matrix,
                       DecodeMode mode, Rng* rng, RolloutResult& out,
                       bool record_step_probs) {
    const std::size_t n = tape.val(leaf_matrix).rows();
    if (n < 2) throw InvalidArgument("rollout needs at least 2 cities");
    const std::size_t l = model.embed;

    const Tape::Id e = taped_encode(tape, model, leaf_matrix);
    const GruNodes gru = gru_nodes(tape, model);
    const AttnNodes attn = attn_nodes(tape, model, e);

    std::vector<std::uint8_t> visited(n, 0);
    Tape::Id hidden = tape.constant(Tensor(l, 1));  // zero initial state
    Tape::Id input = tape.constant(Tensor(l, 1));   // zero vector s at t=1
    Tape::Id log_prob = tape.constant(Tensor(1, 1));

    out.tour.order.clear();
    out.tour.order.reserve(n);
    out.step_probs.clear();
    out.log_prob = 0.0;

    for (std::size_t t = 0; t < n; ++t) {
        hidden = gru_cell(tape, gru, input, hidden);
        const Tape::Id p = attend_step(tape, attn, e, hidden, visited);
        const Tensor& probs = tape.val(p);
        const std::size_t city = choose(probs, visited, mode, rng);
        if (record_step_probs) {
            out.step_probs.emplace_back(probs.data().begin(), probs.data().end());
        }
        log_prob = tape.add(log_prob, tape.log(tape.pick(p, city)));
        visited[city] = 1;
        out.tour.order.push_back(city);
        input = tape.row_as_col(e, city);
    }
    out.log_prob = tape.val(log_prob)[0];
    return log_prob;
}

RolloutResult rollout(const LeafInstance& leaf, const ActorModel& model, DecodeMode mode,
                      Rng* rng, bool record_step_probs) {
    Tape tape(&model.params);
    RolloutResult out;
    taped_rollout(tape, model, tape.constant(leaf.matrix), mode, rng, out, record_step_probs);
    return out;
}

}  // namespace mopn
