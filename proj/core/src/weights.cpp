#include "mopn/weights.hpp"

#include <sstream>

namespace mopn {

namespace {

// Integer compositions of `remaining` into `slots` parts, first part
// descending: yields lexicographic descending vectors after division by H.
void emit(std::vector<std::size_t>& parts, std::size_t slot, std::size_t remaining,
          std::size_t h, std::vector<WeightVector>& out) {
    if (slot + 1 == parts.size()) {
        parts[slot] = remaining;
        std::vector<double> w(parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) {
            w[i] = static_cast<double>(parts[i]) / static_cast<double>(h);
        }
        out.emplace_back(std::move(w));
        return;
    }
    for (std::size_t v = remaining + 1; v-- > 0;) {
        parts[slot] = v;
        emit(parts, slot + 1, remaining - v, h, out);
    }
}

}  // namespace

WeightSet simplex_lattice(std::size_t M, std::size_t H) {
    if (M < 2) throw InvalidArgument("simplex_lattice: need at least 2 objectives");
    if (H == 0) throw InvalidArgument("simplex_lattice: H must be positive");
    WeightSet set;
    set.M = M;
    set.H = H;
    std::vector<std::size_t> parts(M, 0);
    emit(parts, 0, H, H, set.vectors);
    return set;
}

std::string WeightSet::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    for (const auto& v : vectors) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out << ',';
            out << v[i];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace mopn
