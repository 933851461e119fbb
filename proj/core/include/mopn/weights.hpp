#ifndef MOPN_WEIGHTS_HPP
#define MOPN_WEIGHTS_HPP

#include <string>
#include <vector>

#include "mopn/instance.hpp"

namespace mopn {

/// Simplex-lattice weight vector set: all vectors whose components are
/// multiples of 1/H and sum to 1, in lexicographic descending order.
/// Count is C(H+M-1, M-1).
struct WeightSet {
    std::vector<WeightVector> vectors;
    std::size_t M = 0;
    std::size_t H = 0;

    std::size_t size() const { return vectors.size(); }
    std::string to_csv() const;
};

WeightSet simplex_lattice(std::size_t M, std::size_t H);

}  // namespace mopn

#endif
