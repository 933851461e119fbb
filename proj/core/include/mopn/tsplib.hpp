#ifndef MOPN_TSPLIB_HPP
#define MOPN_TSPLIB_HPP

#include <filesystem>
#include <vector>

#include "mopn/instance.hpp"

namespace mopn {

/// Parsed EUC_2D TSPLIB file: raw (unnormalized) coordinates, 0-based.
struct TsplibFile {
    std::string name;
    std::vector<std::array<double, 2>> coords;
};

/// Supported keys: NAME, TYPE, COMMENT, DIMENSION, EDGE_WEIGHT_TYPE
/// (must be EUC_2D), NODE_COORD_SECTION, EOF. Unknown keys are ignored.
TsplibFile parse_tsplib(const std::filesystem::path& path);

/// Combine two EUC_2D files of equal dimension into a T1O2 instance.
/// Each of the four coordinate columns is independently min-max
/// normalized to [0,1].
RootInstance load_tsplib_pair(const std::filesystem::path& pathA,
                              const std::filesystem::path& pathB);

}  // namespace mopn

#endif
