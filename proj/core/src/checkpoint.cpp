#include "mopn/checkpoint.hpp"

#include <fstream>

#include "json.hpp"

namespace mopn {

namespace {

constexpr int kVersion = 1;

nlohmann::json params_to_json(const ParamStore& store) {
    auto arr = nlohmann::json::array();
    for (std::size_t i = 0; i < store.count(); ++i) {
        const Tensor& t = store.value(i);
        nlohmann::json p;
        p["name"] = store.name(i);
        p["rows"] = t.rows();
        p["cols"] = t.cols();
        p["values"] = std::vector<double>(t.data().begin(), t.data().end());
        arr.push_back(std::move(p));
    }
    return arr;
}

void params_from_json(const nlohmann::json& arr, ParamStore& store) {
    if (!arr.is_array() || arr.size() != store.count()) {
        throw ParseError("checkpoint parameter count mismatch");
    }
    for (const auto& p : arr) {
        const std::string name = p.at("name").get<std::string>();
        Tensor& t = store.value(name);
        if (p.at("rows").get<std::size_t>() != t.rows() ||
            p.at("cols").get<std::size_t>() != t.cols()) {
            throw ParseError("checkpoint parameter shape mismatch for " + name);
        }
        const auto values = p.at("values").get<std::vector<double>>();
        if (values.size() != t.size()) {
            throw ParseError("checkpoint parameter size mismatch for " + name);
        }
        std::copy(values.begin(), values.end(), t.data().begin());
    }
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const ActorModel& actor,
                     const CriticModel& critic, const CheckpointMeta& meta) {
    nlohmann::json j;
    j["format"] = "mopn-checkpoint";
    j["version"] = kVersion;
    j["meta"] = {
        {"kind", meta.kind.name()},   {"embed", meta.embed},
        {"critic_h1", meta.critic_h1}, {"critic_h2", meta.critic_h2},
        {"scale", meta.scale},        {"strategy", meta.strategy},
        {"epoch", meta.epoch},        {"seed", meta.seed},
    };
    j["actor"] = params_to_json(actor.params);
    j["critic"] = params_to_json(critic.params);
    std::ofstream out(path);
    if (!out) throw Error("cannot write checkpoint to " + path.string());
    out << j.dump();
    out << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open checkpoint " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("corrupt checkpoint " + path.string() + ": " + e.what());
    }
    if (j.value("format", "") != "mopn-checkpoint") {
        throw ParseError(path.string() + " is not a checkpoint file");
    }
    if (j.value("version", -1) != kVersion) {
        throw ParseError("unsupported checkpoint version in " + path.string());
    }
    const auto& m = j.at("meta");
    CheckpointMeta meta;
    meta.kind = ProblemKind::from_name(m.at("kind").get<std::string>());
    meta.embed = m.at("embed").get<std::size_t>();
    meta.critic_h1 = m.at("critic_h1").get<std::size_t>();
    meta.critic_h2 = m.at("critic_h2").get<std::size_t>();
    meta.scale = m.at("scale").get<std::size_t>();
    meta.strategy = m.at("strategy").get<std::string>();
    meta.epoch = m.at("epoch").get<std::size_t>();
    meta.seed = m.at("seed").get<std::uint64_t>();

    Rng zero(0);
    Checkpoint ckpt{meta, ActorModel::create(meta.kind, meta.embed, zero),
                    CriticModel::create(meta.kind, meta.critic_h1, meta.critic_h2, zero)};
    params_from_json(j.at("actor"), ckpt.actor.params);
    params_from_json(j.at("critic"), ckpt.critic.params);
    return ckpt;
}

}  // namespace mopn
