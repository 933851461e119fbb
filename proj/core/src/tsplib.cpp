#include "mopn/tsplib.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mopn {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& what) {
    throw ParseError(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

TsplibFile parse_tsplib(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());

    TsplibFile out;
    std::size_t dimension = 0;
    bool saw_coords = false;
    std::string line;
    std::size_t lineno = 0;

    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t == "EOF") break;
        if (t == "NODE_COORD_SECTION") {
            if (dimension == 0) fail(path, lineno, "NODE_COORD_SECTION before DIMENSION");
            saw_coords = true;
            out.coords.reserve(dimension);
            for (std::size_t i = 0; i < dimension; ++i) {
                if (!std::getline(in, line)) fail(path, lineno + i + 1, "unexpected end of coordinates");
                std::istringstream ss(trim(line));
                long label;
                double x, y;
                if (!(ss >> label >> x >> y)) {
                    fail(path, lineno + i + 1, "non-numeric node coordinate line");
                }
                out.coords.push_back({x, y});
            }
            lineno += dimension;
            continue;
        }
        const auto colon = t.find(':');
        const std::string key = trim(colon == std::string::npos ? t : t.substr(0, colon));
        const std::string value = colon == std::string::npos ? "" : trim(t.substr(colon + 1));
        if (key == "NAME") {
            out.name = value;
        } else if (key == "DIMENSION") {
            try {
                dimension = std::stoul(value);
            } catch (const std::exception&) {
                fail(path, lineno, "bad DIMENSION value '" + value + "'");
            }
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (value != "EUC_2D") fail(path, lineno, "unsupported EDGE_WEIGHT_TYPE " + value);
        }
        // TYPE, COMMENT and unknown keys are ignored.
    }
    if (!saw_coords) throw ParseError(path.string() + ": missing NODE_COORD_SECTION");
    if (out.coords.size() != dimension) {
        throw ParseError(path.string() + ": coordinate count does not match DIMENSION");
    }
    return out;
}

RootInstance load_tsplib_pair(const std::filesystem::path& pathA,
                              const std::filesystem::path& pathB) {
    const TsplibFile a = parse_tsplib(pathA);
    const TsplibFile b = parse_tsplib(pathB);
    if (a.coords.size() != b.coords.size()) {
        throw ParseError("dimension mismatch: " + pathA.string() + " has " +
                         std::to_string(a.coords.size()) + " cities, " + pathB.string() +
                         " has " + std::to_string(b.coords.size()));
    }
    const std::size_t n = a.coords.size();
    Tensor feat(n, 4);
    for (std::size_t i = 0; i < n; ++i) {
        feat(i, 0) = a.coords[i][0];
        feat(i, 1) = a.coords[i][1];
        feat(i, 2) = b.coords[i][0];
        feat(i, 3) = b.coords[i][1];
    }
    // Per-column min-max normalization to [0,1].
    for (std::size_t c = 0; c < 4; ++c) {
        double lo = feat(0, c), hi = feat(0, c);
        for (std::size_t i = 1; i < n; ++i) {
            lo = std::min(lo, feat(i, c));
            hi = std::max(hi, feat(i, c));
        }
        const double span = hi - lo;
        for (std::size_t i = 0; i < n; ++i) {
            feat(i, c) = span > 0.0 ? (feat(i, c) - lo) / span : 0.0;
        }
    }
    return RootInstance(ProblemKind::from_tag(ProblemTag::T1O2), std::move(feat));
}

}  // namespace mopn
