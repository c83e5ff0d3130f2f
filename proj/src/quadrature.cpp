#include "zcsync/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace zcsync {

namespace {

// Kronrod abscissae; odd indices are the 7-point Gauss nodes.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
};

struct ByError {
    bool operator()(const Segment& x, const Segment& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.lo > y.lo;
    }
};

Segment kronrod15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    return {lo, hi, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    std::span<const double> breakpoints, const QuadratureOptions& options) {
    if (a == b) return {0.0, 0.0, 0, true};
    const double sign = b < a ? -1.0 : 1.0;
    if (b < a) std::swap(a, b);

    std::vector<double> cuts{a};
    for (double p : breakpoints) {
        if (p > a && p < b) cuts.push_back(p);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Segment, std::vector<Segment>, ByError> queue;
    int evaluations = 0;
    double total = 0.0;
    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Segment s = kronrod15(f, cuts[i], cuts[i + 1]);
        evaluations += 15;
        total += s.value;
        total_error += s.error;
        queue.push(s);
    }

    bool converged = false;
    while (true) {
        if (total_error <= std::max(options.abs_tol, options.rel_tol * std::fabs(total))) {
            converged = true;
            break;
        }
        if (static_cast<int>(queue.size()) >= options.max_intervals) break;
        Segment worst = queue.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) break; // interval exhausted
        queue.pop();
        Segment left = kronrod15(f, worst.lo, mid);
        Segment right = kronrod15(f, mid, worst.hi);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    // Re-sum in interval order so the value does not carry the incremental
    // update's rounding.
    std::vector<Segment> parts;
    parts.reserve(queue.size());
    while (!queue.empty()) {
        parts.push_back(queue.top());
        queue.pop();
    }
    std::sort(parts.begin(), parts.end(), [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
    double value = 0.0;
    double error = 0.0;
    for (const auto& s : parts) {
        value += s.value;
        error += s.error;
    }
    return {sign * value, error, evaluations, converged};
}

} // namespace zcsync
