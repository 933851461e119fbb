#include "mopn/instance.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace mopn {

namespace {
const std::array<std::string, 3> kTagNames = {"T1O2", "T2O2", "T2O3"};
}

ProblemKind ProblemKind::from_tag(ProblemTag tag) {
    switch (tag) {
        case ProblemTag::T1O2: return {tag, 2, {2, 2}};
        case ProblemTag::T2O2: return {tag, 2, {2, 1}};
        case ProblemTag::T2O3: return {tag, 3, {2, 2, 1}};
    }
    throw InvalidArgument("unknown problem tag");
}

ProblemKind ProblemKind::from_name(const std::string& name) {
    for (std::size_t i = 0; i < kTagNames.size(); ++i) {
        if (kTagNames[i] == name) return from_tag(static_cast<ProblemTag>(i));
    }
    throw InvalidArgument("unknown problem kind: " + name);
}

const std::string& ProblemKind::name() const {
    return kTagNames[static_cast<std::size_t>(tag)];
}

std::size_t ProblemKind::d_max() const {
    return *std::max_element(feature_dims.begin(), feature_dims.end());
}

std::size_t ProblemKind::raw_width() const {
    std::size_t s = 0;
    for (auto d : feature_dims) s += d;
    return s;
}

std::size_t ProblemKind::input_width() const {
    return objective_count * d_max() + objective_count;
}

std::size_t ProblemKind::feature_offset(std::size_t m) const {
    std::size_t off = 0;
    for (std::size_t i = 0; i < m; ++i) off += feature_dims[i];
    return off;
}

WeightVector::WeightVector(std::vector<double> values) : w(std::move(values)) {
    if (w.empty()) throw InvalidArgument("empty weight vector");
    double sum = 0.0;
    for (double v : w) {
        if (v < 0.0) throw InvalidArgument("negative weight component");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("weights do not sum to 1");
}

WeightVector WeightVector::random(std::size_t m, Rng& rng) {
    std::vector<double> cuts(m - 1);
    for (auto& c : cuts) c = rng.uniform();
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> w(m);
    double prev = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        w[i] = cuts[i] - prev;
        prev = cuts[i];
    }
    w[m - 1] = 1.0 - prev;
    return WeightVector(std::move(w));
}

bool Tour::is_permutation_of(std::size_t n) const {
    if (order.size() != n) return false;
    std::vector<std::uint8_t> seen(n, 0);
    for (auto c : order) {
        if (c >= n || seen[c]) return false;
        seen[c] = 1;
    }
    return true;
}

RootInstance::RootInstance(ProblemKind kind, Tensor features)
    : kind_(std::move(kind)), features_(std::move(features)) {
    if (features_.rows() < 2) throw InvalidArgument("instance needs at least 2 cities");
    if (features_.cols() != kind_.raw_width()) {
        throw InvalidArgument("feature width does not match problem kind");
    }
    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (features_[i] < 0.0 || features_[i] > 1.0) {
            throw InvalidArgument("feature outside [0,1]; normalize the instance");
        }
    }
}

double RootInstance::edge_cost(std::size_t m, std::size_t i, std::size_t j) const {
    const std::size_t off = kind_.feature_offset(m);
    if (kind_.feature_dims[m] == 2) {
        const double dx = features_(i, off) - features_(j, off);
        const double dy = features_(i, off + 1) - features_(j, off + 1);
        return std::sqrt(dx * dx + dy * dy);
    }
    return std::abs(features_(i, off) - features_(j, off));
}

std::string RootInstance::to_json() const {
    nlohmann::json j;
    j["format"] = "mopn-instance";
    j["version"] = 1;
    j["kind"] = kind_.name();
    j["n"] = n();
    auto rows = nlohmann::json::array();
    for (std::size_t r = 0; r < n(); ++r) {
        auto row = nlohmann::json::array();
        for (std::size_t c = 0; c < features_.cols(); ++c) row.push_back(features_(r, c));
        rows.push_back(std::move(row));
    }
    j["features"] = std::move(rows);
    return j.dump(2);
}

RootInstance RootInstance::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance parse failed: ") + e.what());
    }
    if (!j.is_object() || j.value("format", "") != "mopn-instance") {
        throw ParseError("not a mopn-instance file");
    }
    if (j.value("version", 0) != 1) throw ParseError("unsupported instance version");
    const ProblemKind kind = ProblemKind::from_name(j.at("kind").get<std::string>());
    const auto& rows = j.at("features");
    const std::size_t n = j.at("n").get<std::size_t>();
    if (!rows.is_array() || rows.size() != n) throw ParseError("feature row count mismatch");
    Tensor feat(n, kind.raw_width());
    for (std::size_t r = 0; r < n; ++r) {
        const auto& row = rows[r];
        if (!row.is_array() || row.size() != kind.raw_width()) {
            throw ParseError("feature row width mismatch at row " + std::to_string(r));
        }
        for (std::size_t c = 0; c < kind.raw_width(); ++c) feat(r, c) = row[c].get<double>();
    }
    return RootInstance(kind, std::move(feat));
}

RootInstance generate_random_rins(const ProblemKind& kind, std::size_t n, std::uint64_t seed) {
    if (n < 2) throw InvalidArgument("instance needs at least 2 cities");
    Rng rng(seed);
    Tensor feat(n, kind.raw_width());
    for (std::size_t i = 0; i < feat.size(); ++i) feat[i] = rng.uniform();
    return RootInstance(kind, std::move(feat));
}

LeafInstance build_leaf(std::shared_ptr<const RootInstance> rins, WeightVector w) {
    const ProblemKind& kind = rins->kind();
    if (w.size() != kind.objective_count) {
        throw InvalidArgument("weight length does not match objective count");
    }
    const std::size_t dmax = kind.d_max();
    const std::size_t m = kind.objective_count;
    Tensor mat(rins->n(), kind.input_width());
    const Tensor& feat = rins->features();
    for (std::size_t r = 0; r < rins->n(); ++r) {
        std::size_t col = 0;
        for (std::size_t obj = 0; obj < m; ++obj) {
            const std::size_t off = kind.feature_offset(obj);
            const std::size_t d = kind.feature_dims[obj];
            for (std::size_t k = 0; k < d; ++k) mat(r, col++) = feat(r, off + k);
            for (std::size_t k = d; k < dmax; ++k) mat(r, col++) = 1.0;
        }
        for (std::size_t k = 0; k < m; ++k) mat(r, col++) = w[k];
    }
    return LeafInstance{std::move(mat), std::move(rins), std::move(w)};
}

ObjectiveVector tour_objective(const RootInstance& rins, const Tour& tour) {
    if (!tour.is_permutation_of(rins.n())) throw InvalidArgument("invalid tour");
    const std::size_t m = rins.kind().objective_count;
    const std::size_t n = rins.n();
    ObjectiveVector out;
    out.c.assign(m, 0.0);
    for (std::size_t obj = 0; obj < m; ++obj) {
        double s = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            s += rins.edge_cost(obj, tour.order[i], tour.order[i + 1]);
        }
        s += rins.edge_cost(obj, tour.order[n - 1], tour.order[0]);
        out.c[obj] = s;
    }
    return out;
}

double scalarized_cost(const ObjectiveVector& c, const WeightVector& w) {
    if (c.size() != w.size()) throw InvalidArgument("objective/weight length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += w[i] * c[i];
    return s;
}

}  // namespace mopn
