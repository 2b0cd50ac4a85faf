#ifndef SPINDISCORD_QUADRATURE_HPP
#define SPINDISCORD_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spindiscord/errors.hpp"

namespace spindiscord {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;       // absolute error estimate
    std::size_t panels = 0;
};

namespace detail {

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel eval_panel(const F& f, double lo, double hi) {
    // depth 0: single Gauss-Kronrod applications; subdivision is ours.  The
    // error estimate is the difference between two rule orders rather than
    // the library's internal QUADPACK-style estimate, which floors out near
    // removable singularities instead of tracking the true error.
    using coarse = boost::math::quadrature::gauss_kronrod<double, 15>;
    using fine = boost::math::quadrature::gauss_kronrod<double, 31>;
    Panel p;
    p.lo = lo;
    p.hi = hi;
    const double low_order = coarse::integrate(f, lo, hi, 0);
    p.value = fine::integrate(f, lo, hi, 0);
    p.error = std::abs(p.value - low_order);
    return p;
}

}  // namespace detail

// Adaptive absolute-tolerance integration on [a, b].  The worst panel is
// bisected until the summed error estimate drops below abs_tol or the panel
// budget runs out.  Optional breakpoints force initial panel boundaries at
// known awkward spots of the integrand.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b,
                                    double abs_tol = 1e-10,
                                    const std::vector<double>& breakpoints = {},
                                    std::size_t max_panels = 10000) {
    std::vector<double> edges{a};
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<detail::Panel> queue;
    double total = 0.0, err = 0.0;
    std::size_t panels = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto p = detail::eval_panel(f, edges[i], edges[i + 1]);
        total += p.value;
        err += p.error;
        queue.push(p);
        ++panels;
    }

    while (err > abs_tol && panels < max_panels) {
        auto worst = queue.top();
        queue.pop();
        total -= worst.value;
        err -= worst.error;
        double mid = 0.5 * (worst.lo + worst.hi);
        for (auto& half : {detail::eval_panel(f, worst.lo, mid),
                           detail::eval_panel(f, mid, worst.hi)}) {
            total += half.value;
            err += half.error;
            queue.push(half);
        }
        ++panels;
    }

    if (err > abs_tol)
        throw QuadratureError("quadrature did not converge within panel budget",
                              err);
    return {total, err, panels};
}

}  // namespace spindiscord

#endif
