// Command-line surface for the whole pipeline: dataset generation,
// training, inference, evaluation and the brute-force oracle.
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mopn/pareto.hpp"
#include "mopn/trainer.hpp"
#include "mopn/tsplib.hpp"

using namespace mopn;
namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Binds config-file keys to CLI options: every key in the file must be a
// known option name, and command-line flags override file values.
class ConfigBinder {
  public:
    void bind(const std::string& key, CLI::Option* opt, std::function<void(const json&)> apply) {
        entries_.push_back({key, opt, std::move(apply)});
    }

    void apply_file(const fs::path& path) const {
        std::ifstream in(path);
        if (!in) throw InvalidArgument("cannot read config file: " + path.string());
        json cfg;
        try {
            cfg = json::parse(in);
        } catch (const json::exception& e) {
            throw ParseError(path.string() + ": " + e.what());
        }
        if (!cfg.is_object()) throw ParseError(path.string() + ": config must be a JSON object");
        for (const auto& [key, value] : cfg.items()) {
            const auto it = std::find_if(entries_.begin(), entries_.end(),
                                         [&](const Entry& e) { return e.key == key; });
            if (it == entries_.end()) {
                throw InvalidArgument(path.string() + ": unknown config key \"" + key + "\"");
            }
            if (it->opt->count() == 0) {
                try {
                    it->apply(value);
                } catch (const json::exception& e) {
                    throw ParseError(path.string() + ": key \"" + key + "\": " + e.what());
                }
            }
        }
    }

  private:
    struct Entry {
        std::string key;
        CLI::Option* opt;
        std::function<void(const json&)> apply;
    };

    std::vector<Entry> entries_;
};

std::string instance_stem(const std::string& kind, std::size_t scale, std::size_t index) {
    return kind + "S" + std::to_string(scale) + "-" + std::to_string(index);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << text;
}

// --- gen-data -------------------------------------------------------------

struct GenDataArgs {
    std::string kind = "T1O2";
    std::size_t scale = 100;
    std::size_t count = 20;
    std::uint64_t seed = 0;
    std::string out = ".";
};

int cmd_gen_data(const GenDataArgs& a) {
    if (a.count == 0) throw InvalidArgument("count must be positive");
    const ProblemKind kind = ProblemKind::from_name(a.kind);
    fs::create_directories(a.out);
    for (std::size_t i = 1; i <= a.count; ++i) {
        const RootInstance rins = generate_random_rins(kind, a.scale, mix_seed(a.seed, i));
        const fs::path path = fs::path(a.out) / (instance_stem(a.kind, a.scale, i) + ".json");
        write_text(path, rins.to_json());
    }
    std::cout << "wrote " << a.count << " instances to " << a.out << "\n";
    return 0;
}

// --- train ----------------------------------------------------------------

struct TrainArgs {
    std::string kind = "T1O2";
    std::string strategy = "GTS";
    std::size_t scale = 40;
    std::size_t rm_scale = 40;
    std::size_t batch = 200;
    double lr = 1e-4;
    std::size_t epochs = 1;
    std::size_t dataset_size = 10000;
    std::uint64_t seed = 0;
    std::size_t embed = 128;
    std::size_t critic_h1 = 128;
    std::size_t critic_h2 = 20;
    std::size_t threads = 1;
    bool deterministic = false;
    std::string from_checkpoint;
    std::string out = "checkpoint.json";
    std::string log;
    bool dry_run = false;
};

json train_args_json(const TrainArgs& a) {
    return json{{"kind", a.kind},
                {"strategy", a.strategy},
                {"scale", a.scale},
                {"rm-scale", a.rm_scale},
                {"batch", a.batch},
                {"lr", a.lr},
                {"epochs", a.epochs},
                {"dataset-size", a.dataset_size},
                {"seed", a.seed},
                {"embed", a.embed},
                {"critic-h1", a.critic_h1},
                {"critic-h2", a.critic_h2},
                {"threads", a.threads},
                {"deterministic", a.deterministic},
                {"from-checkpoint", a.from_checkpoint},
                {"out", a.out},
                {"log", a.log}};
}

int cmd_train(const TrainArgs& a) {
    TrainConfig cfg;
    cfg.kind = ProblemKind::from_name(a.kind);
    cfg.strategy = strategy_from_name(a.strategy);
    cfg.scale = a.scale;
    cfg.rm_scale = a.rm_scale;
    cfg.batch = a.batch;
    cfg.lr = a.lr;
    cfg.epochs = a.epochs;
    cfg.dataset_size = a.dataset_size;
    cfg.seed = a.seed;
    cfg.embed = a.embed;
    cfg.critic_h1 = a.critic_h1;
    cfg.critic_h2 = a.critic_h2;
    cfg.threads = a.deterministic ? 1 : a.threads;

    if (a.dry_run) {
        std::cout << train_args_json(a).dump(2) << "\n";
        return 0;
    }

    std::optional<Checkpoint> init;
    if (cfg.strategy == Strategy::TSTL) {
        if (a.from_checkpoint.empty()) {
            throw InvalidArgument("TS-TL requires --from-checkpoint");
        }
        init = load_checkpoint(a.from_checkpoint);
    } else if (!a.from_checkpoint.empty()) {
        throw InvalidArgument("--from-checkpoint is only valid with --strategy TS-TL");
    }

    const TrainedModels models = train_strategy(cfg, init ? &*init : nullptr,
                                                [](const EpochRecord& r) {
                                                    std::cerr << "epoch " << r.epoch
                                                              << " mean cost " << r.mean_cost
                                                              << " (" << r.seconds << " s)\n";
                                                });

    CheckpointMeta meta;
    meta.kind = cfg.kind;
    meta.embed = cfg.embed;
    meta.critic_h1 = cfg.critic_h1;
    meta.critic_h2 = cfg.critic_h2;
    meta.scale = cfg.train_scale();
    meta.strategy = a.strategy;
    meta.epoch = cfg.epochs;
    meta.seed = cfg.seed;
    save_checkpoint(a.out, models.actor, models.critic, meta);
    const std::string csv = epoch_log_csv(models.log);
    if (a.log.empty()) {
        std::cout << csv;
    } else {
        write_text(a.log, csv);
    }
    std::cout << "checkpoint written to " << a.out << "\n";
    return 0;
}

// --- shared loading helpers -----------------------------------------------

RootInstance load_instance(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read instance: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), {});
    return RootInstance::from_json(text);
}

WeightSet sweep_for(const ProblemKind& kind, std::size_t divisions) {
    if (divisions == 0) divisions = kind.objective_count == 2 ? 99 : 13;
    return simplex_lattice(kind.objective_count, divisions);
}

// --- infer ----------------------------------------------------------------

struct InferArgs {
    std::string checkpoint;
    std::string instance;
    std::string tsplib_a, tsplib_b;
    std::size_t divisions = 0;
    std::string out;
};

int cmd_infer(const InferArgs& a) {
    const Checkpoint ckpt = load_checkpoint(a.checkpoint);
    std::shared_ptr<const RootInstance> rins;
    if (!a.tsplib_a.empty() || !a.tsplib_b.empty()) {
        if (a.tsplib_a.empty() || a.tsplib_b.empty() || !a.instance.empty()) {
            throw InvalidArgument("provide either --instance or both --tsplib-a and --tsplib-b");
        }
        rins = std::make_shared<RootInstance>(load_tsplib_pair(a.tsplib_a, a.tsplib_b));
    } else {
        if (a.instance.empty()) throw InvalidArgument("--instance (or a TSPLIB pair) is required");
        rins = std::make_shared<RootInstance>(load_instance(a.instance));
    }
    const WeightSet sweep = sweep_for(rins->kind(), a.divisions);
    const auto t0 = Clock::now();
    const ParetoFront front = solve_front(ckpt.actor, rins, sweep);
    const double secs = seconds_since(t0);
    const std::string csv = front_to_csv(front);
    if (a.out.empty()) {
        std::cout << csv;
    } else {
        write_text(a.out, csv);
    }
    std::cerr << "front of " << front.size() << " points from " << sweep.size()
              << " weights in " << secs << " s (forward propagation only)\n";
    return 0;
}

// --- oracle ---------------------------------------------------------------

struct OracleArgs {
    std::string instance;
    std::string out;
};

int cmd_oracle(const OracleArgs& a) {
    const RootInstance rins = load_instance(a.instance);
    const ParetoFront front = brute_force_front(rins);
    const std::string csv = front_to_csv(front);
    if (a.out.empty()) {
        std::cout << csv;
    } else {
        write_text(a.out, csv);
    }
    std::cerr << "exact front of " << front.size() << " points over "
              << brute_force_tour_count(rins.n()) << " cycles\n";
    return 0;
}

// --- eval -----------------------------------------------------------------

struct EvalArgs {
    std::vector<std::string> checkpoints;
    std::string data;
    std::size_t divisions = 0;
    bool no_oracle = false;
    std::string out;
};

struct MethodScore {
    std::string name;
    double hv_sum = 0.0;
    double spc_sum = 0.0;
    double time_sum = 0.0;
    double ratio_sum = 0.0;
};

int cmd_eval(const EvalArgs& a) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(a.data)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw InvalidArgument("no instance files in " + a.data);

    std::vector<Checkpoint> ckpts;
    for (const auto& c : a.checkpoints) ckpts.push_back(load_checkpoint(c));

    std::ostringstream report;
    report.precision(6);
    std::vector<MethodScore> totals;
    for (const auto& c : a.checkpoints) {
        totals.push_back({fs::path(c).stem().string()});
    }
    totals.push_back({"baseline"});
    bool oracle_used = false;

    for (const auto& file : files) {
        auto rins = std::make_shared<const RootInstance>(load_instance(file));
        for (const auto& c : ckpts) {
            if (!(c.actor.kind == rins->kind())) {
                throw InvalidArgument("checkpoint kind " + c.actor.kind.name() +
                                      " does not match instance kind " + rins->kind().name() +
                                      " (" + file.string() + ")");
            }
        }
        const WeightSet sweep = sweep_for(rins->kind(), a.divisions);
        const bool with_oracle = !a.no_oracle && rins->n() <= kMaxBruteForceCities;

        std::vector<ParetoFront> fronts;
        std::vector<double> times;
        for (const auto& c : ckpts) {
            const auto t0 = Clock::now();
            fronts.push_back(solve_front(c.actor, rins, sweep));
            times.push_back(seconds_since(t0));
        }
        {
            const auto t0 = Clock::now();
            fronts.push_back(heuristic_baseline(*rins, sweep));
            times.push_back(seconds_since(t0));
        }
        std::optional<std::size_t> oracle_idx;
        if (with_oracle) {
            oracle_used = true;
            const auto t0 = Clock::now();
            fronts.push_back(brute_force_front(*rins));
            times.push_back(seconds_since(t0));
            oracle_idx = fronts.size() - 1;
            if (totals.size() < fronts.size()) totals.push_back({"oracle"});
        }

        const ObjectiveVector ref = reference_point(fronts);
        const auto extremes = extreme_points(fronts);
        std::vector<double> hvs;
        for (const auto& f : fronts) hvs.push_back(hv(f, ref));

        report << "instance " << file.filename().string() << " (n=" << rins->n() << ")\n";
        for (std::size_t m = 0; m < fronts.size(); ++m) {
            const double s = spc(fronts[m], extremes);
            report << "  " << totals[m].name << ": hv=" << hvs[m] << " spc=" << s
                   << " seconds=" << times[m];
            totals[m].hv_sum += hvs[m];
            totals[m].spc_sum += s;
            totals[m].time_sum += times[m];
            if (oracle_idx && hvs[*oracle_idx] > 0.0) {
                const double ratio = hvs[m] / hvs[*oracle_idx];
                report << " hv_ratio=" << ratio;
                totals[m].ratio_sum += ratio;
            }
            report << "\n";
        }
    }

    const auto count = static_cast<double>(files.size());
    report << "aggregate over " << files.size() << " instances\n";
    for (const auto& t : totals) {
        report << "  " << t.name << ": hv=" << t.hv_sum / count << " spc=" << t.spc_sum / count
               << " seconds=" << t.time_sum / count;
        if (oracle_used) report << " hv_ratio=" << t.ratio_sum / count;
        report << "\n";
    }

    if (a.out.empty()) {
        std::cout << report.str();
    } else {
        write_text(a.out, report.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-objective TSP pointer-network pipeline"};
    app.require_subcommand(1);

    GenDataArgs gen;
    std::string gen_config;
    auto* gen_cmd = app.add_subcommand("gen-data", "Generate a seeded testing dataset");
    ConfigBinder gen_bind;
    gen_bind.bind("kind", gen_cmd->add_option("--kind", gen.kind, "Problem kind (T1O2/T2O2/T2O3)"),
                  [&](const json& v) { gen.kind = v.get<std::string>(); });
    gen_bind.bind("scale", gen_cmd->add_option("--scale", gen.scale, "Cities per instance"),
                  [&](const json& v) { gen.scale = v.get<std::size_t>(); });
    gen_bind.bind("count", gen_cmd->add_option("--count", gen.count, "Number of instances"),
                  [&](const json& v) { gen.count = v.get<std::size_t>(); });
    gen_bind.bind("seed", gen_cmd->add_option("--seed", gen.seed, "Dataset seed"),
                  [&](const json& v) { gen.seed = v.get<std::uint64_t>(); });
    gen_bind.bind("out", gen_cmd->add_option("--out", gen.out, "Output directory"),
                  [&](const json& v) { gen.out = v.get<std::string>(); });
    gen_cmd->add_option("--config", gen_config, "JSON config file");

    TrainArgs tr;
    std::string tr_config;
    auto* tr_cmd = app.add_subcommand("train", "Train an actor-critic checkpoint");
    ConfigBinder tr_bind;
    tr_bind.bind("kind", tr_cmd->add_option("--kind", tr.kind, "Problem kind"),
                 [&](const json& v) { tr.kind = v.get<std::string>(); });
    tr_bind.bind("strategy",
                 tr_cmd->add_option("--strategy", tr.strategy, "GTS, TS-RM or TS-TL"),
                 [&](const json& v) { tr.strategy = v.get<std::string>(); });
    tr_bind.bind("scale", tr_cmd->add_option("--scale", tr.scale, "Target problem scale"),
                 [&](const json& v) { tr.scale = v.get<std::size_t>(); });
    tr_bind.bind("rm-scale", tr_cmd->add_option("--rm-scale", tr.rm_scale, "TS-RM dataset scale"),
                 [&](const json& v) { tr.rm_scale = v.get<std::size_t>(); });
    tr_bind.bind("batch", tr_cmd->add_option("--batch", tr.batch, "Batch size"),
                 [&](const json& v) { tr.batch = v.get<std::size_t>(); });
    tr_bind.bind("lr", tr_cmd->add_option("--lr", tr.lr, "Adam learning rate"),
                 [&](const json& v) { tr.lr = v.get<double>(); });
    tr_bind.bind("epochs", tr_cmd->add_option("--epochs", tr.epochs, "Epoch count"),
                 [&](const json& v) { tr.epochs = v.get<std::size_t>(); });
    tr_bind.bind("dataset-size",
                 tr_cmd->add_option("--dataset-size", tr.dataset_size, "Leaf instances per epoch"),
                 [&](const json& v) { tr.dataset_size = v.get<std::size_t>(); });
    tr_bind.bind("seed", tr_cmd->add_option("--seed", tr.seed, "Training seed"),
                 [&](const json& v) { tr.seed = v.get<std::uint64_t>(); });
    tr_bind.bind("embed", tr_cmd->add_option("--embed", tr.embed, "Embedding width"),
                 [&](const json& v) { tr.embed = v.get<std::size_t>(); });
    tr_bind.bind("critic-h1", tr_cmd->add_option("--critic-h1", tr.critic_h1, "Critic width 1"),
                 [&](const json& v) { tr.critic_h1 = v.get<std::size_t>(); });
    tr_bind.bind("critic-h2", tr_cmd->add_option("--critic-h2", tr.critic_h2, "Critic width 2"),
                 [&](const json& v) { tr.critic_h2 = v.get<std::size_t>(); });
    tr_bind.bind("threads", tr_cmd->add_option("--threads", tr.threads, "Worker thread cap"),
                 [&](const json& v) { tr.threads = v.get<std::size_t>(); });
    tr_bind.bind("deterministic",
                 tr_cmd->add_flag("--deterministic", tr.deterministic,
                                  "Force serialized reduction"),
                 [&](const json& v) { tr.deterministic = v.get<bool>(); });
    tr_bind.bind("from-checkpoint",
                 tr_cmd->add_option("--from-checkpoint", tr.from_checkpoint,
                                    "Initial checkpoint (TS-TL)"),
                 [&](const json& v) { tr.from_checkpoint = v.get<std::string>(); });
    tr_bind.bind("out", tr_cmd->add_option("--out", tr.out, "Checkpoint output path"),
                 [&](const json& v) { tr.out = v.get<std::string>(); });
    tr_bind.bind("log", tr_cmd->add_option("--log", tr.log, "Epoch CSV log path"),
                 [&](const json& v) { tr.log = v.get<std::string>(); });
    tr_cmd->add_flag("--dry-run", tr.dry_run, "Echo the effective config and exit");
    tr_cmd->add_option("--config", tr_config, "JSON config file");

    InferArgs inf;
    std::string inf_config;
    auto* inf_cmd = app.add_subcommand("infer", "Produce a Pareto front from a checkpoint");
    ConfigBinder inf_bind;
    inf_bind.bind("checkpoint",
                  inf_cmd->add_option("--checkpoint", inf.checkpoint, "Checkpoint path")
                      ->required(),
                  [&](const json& v) { inf.checkpoint = v.get<std::string>(); });
    inf_bind.bind("instance", inf_cmd->add_option("--instance", inf.instance, "Instance JSON"),
                  [&](const json& v) { inf.instance = v.get<std::string>(); });
    inf_bind.bind("tsplib-a",
                  inf_cmd->add_option("--tsplib-a", inf.tsplib_a, "First TSPLIB EUC_2D file"),
                  [&](const json& v) { inf.tsplib_a = v.get<std::string>(); });
    inf_bind.bind("tsplib-b",
                  inf_cmd->add_option("--tsplib-b", inf.tsplib_b, "Second TSPLIB EUC_2D file"),
                  [&](const json& v) { inf.tsplib_b = v.get<std::string>(); });
    inf_bind.bind("divisions",
                  inf_cmd->add_option("--divisions", inf.divisions,
                                      "Simplex-lattice divisions H (0 = default per kind)"),
                  [&](const json& v) { inf.divisions = v.get<std::size_t>(); });
    inf_bind.bind("out", inf_cmd->add_option("--out", inf.out, "Front CSV path (default stdout)"),
                  [&](const json& v) { inf.out = v.get<std::string>(); });
    inf_cmd->add_option("--config", inf_config, "JSON config file");

    EvalArgs ev;
    std::string ev_config;
    auto* ev_cmd = app.add_subcommand("eval", "Indicator report over a testing dataset");
    ConfigBinder ev_bind;
    ev_bind.bind("checkpoint",
                 ev_cmd->add_option("--checkpoint", ev.checkpoints,
                                    "Checkpoint path (repeatable)"),
                 [&](const json& v) { ev.checkpoints = v.get<std::vector<std::string>>(); });
    ev_bind.bind("data", ev_cmd->add_option("--data", ev.data, "Instance directory")->required(),
                 [&](const json& v) { ev.data = v.get<std::string>(); });
    ev_bind.bind("divisions",
                 ev_cmd->add_option("--divisions", ev.divisions,
                                    "Simplex-lattice divisions H (0 = default per kind)"),
                 [&](const json& v) { ev.divisions = v.get<std::size_t>(); });
    ev_bind.bind("no-oracle",
                 ev_cmd->add_flag("--no-oracle", ev.no_oracle,
                                  "Skip the brute-force oracle even when n <= 10"),
                 [&](const json& v) { ev.no_oracle = v.get<bool>(); });
    ev_bind.bind("out", ev_cmd->add_option("--out", ev.out, "Report path (default stdout)"),
                 [&](const json& v) { ev.out = v.get<std::string>(); });
    ev_cmd->add_option("--config", ev_config, "JSON config file");

    OracleArgs orc;
    auto* orc_cmd = app.add_subcommand("oracle", "Exact brute-force front for a small instance");
    orc_cmd->add_option("--instance", orc.instance, "Instance JSON")->required();
    orc_cmd->add_option("--out", orc.out, "Front CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) {
            if (!gen_config.empty()) gen_bind.apply_file(gen_config);
            return cmd_gen_data(gen);
        }
        if (tr_cmd->parsed()) {
            if (!tr_config.empty()) tr_bind.apply_file(tr_config);
            return cmd_train(tr);
        }
        if (inf_cmd->parsed()) {
            if (!inf_config.empty()) inf_bind.apply_file(inf_config);
            return cmd_infer(inf);
        }
        if (ev_cmd->parsed()) {
            if (!ev_config.empty()) ev_bind.apply_file(ev_config);
            return cmd_eval(ev);
        }
        if (orc_cmd->parsed()) return cmd_oracle(orc);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
