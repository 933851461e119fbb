#ifndef MOPN_TESTS_FINITE_DIFF_HPP
#define MOPN_TESTS_FINITE_DIFF_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "mopn/params.hpp"

namespace mopn::testing {

struct GradMismatch {
    std::string param;
    std::size_t index = 0;
    double analytic = 0.0;
    double numeric = 0.0;
};

/// Central finite differences of `loss` w.r.t. every scalar in `store`,
/// compared against `analytic` (one tensor per parameter). Returns the
/// worst offender, or nullopt-style empty param name if all pass.
inline std::vector<GradMismatch> check_gradients(
    ParamStore& store, const std::vector<Tensor>& analytic,
    const std::function<double()>& loss, double step = 1e-5, double rel_tol = 1e-4,
    double abs_tol = 1e-8) {
    std::vector<GradMismatch> bad;
    for (std::size_t p = 0; p < store.count(); ++p) {
        Tensor& w = store.value(p);
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double orig = w[i];
            w[i] = orig + step;
            const double up = loss();
            w[i] = orig - step;
            const double down = loss();
            w[i] = orig;
            const double numeric = (up - down) / (2.0 * step);
            const double a = analytic[p][i];
            const double err = std::abs(a - numeric);
            const double scale = std::max(std::abs(a), std::abs(numeric));
            if (err > abs_tol && err > rel_tol * scale) {
                bad.push_back({store.name(p), i, a, numeric});
            }
        }
    }
    return bad;
}

}  // namespace mopn::testing

#endif
