#include "mopn/critic.hpp"

namespace mopn {

CriticModel CriticModel::create(const ProblemKind& kind, std::size_t h1, std::size_t h2,
                                Rng& rng) {
    CriticModel m{kind, h1, h2, {}};
    const std::size_t d = kind.input_width();
    m.params.add("c1.W", d, h1);
    m.params.add("c1.b", h1, 1);
    m.params.add("c2.W", h1, h2);
    m.params.add("c2.b", h2, 1);
    m.params.add("c3.W", h2, h2);
    m.params.add("c3.b", h2, 1);
    m.params.add("c4.W", h2, 1);
    m.params.add("c4.b", 1, 1);
    m.params.init_xavier(rng);
    return m;
}

Tape::Id taped_critic_value(Tape& tape, const CriticModel& model, Tape::Id leaf_matrix) {
    if (tape.val(leaf_matrix).cols() != model.kind.input_width()) {
        throw ShapeError("leaf width does not match critic input width");
    }
    auto conv = [&](Tape::Id x, const char* w, const char* b) {
        return tape.add_row_broadcast(
            tape.matmul(x, tape.param(model.params.index_of(w))),
            tape.param(model.params.index_of(b)));
    };
    Tape::Id x = tape.relu(conv(leaf_matrix, "c1.W", "c1.b"));
    x = tape.relu(conv(x, "c2.W", "c2.b"));
    x = tape.relu(conv(x, "c3.W", "c3.b"));
    x = conv(x, "c4.W", "c4.b");
    return tape.mean_all(x);
}

double critic_value(const LeafInstance& leaf, const CriticModel& model) {
    Tape tape(&model.params);
    return tape.val(taped_critic_value(tape, model, tape.constant(leaf.matrix)))[0];
}

}  // namespace mopn
