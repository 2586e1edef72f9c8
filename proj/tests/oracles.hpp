// Independent reference computations used as test oracles. Everything here
// is deliberately written with plain scalar loops, no shared code with the
// library implementations under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

// One Adam step on a single scalar, straight from the standard recurrences.
struct ScalarAdam {
    double m = 0.0;
    double v = 0.0;
    long t = 0;

    double step(double theta, double g, double alpha, double beta1,
                double beta2, double eps) {
        t += 1;
        m = beta1 * m + (1.0 - beta1) * g;
        v = beta2 * v + (1.0 - beta2) * g * g;
        const double mhat = m / (1.0 - std::pow(beta1, static_cast<double>(t)));
        const double vhat = v / (1.0 - std::pow(beta2, static_cast<double>(t)));
        return theta - alpha * mhat / (std::sqrt(vhat) + eps);
    }
};

// Euclidean norm via explicit summation.
inline double norm_by_summation(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x * x;
    return std::sqrt(sum);
}

// Kolmogorov-Smirnov statistic of samples against the uniform distribution
// on [lo, hi). Samples are copied and sorted.
inline double ks_statistic_uniform(std::vector<double> samples, double lo,
                                   double hi) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double cdf = (samples[i] - lo) / (hi - lo);
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
    }
    return d;
}

// Umbrella Laplacian energy by direct summation over vertices.
inline double laplacian_by_summation(
    const std::vector<std::vector<double>>& verts,
    const std::vector<std::vector<int>>& neighbors) {
    double total = 0.0;
    for (size_t i = 0; i < verts.size(); ++i) {
        const size_t n = verts[i].size();
        std::vector<double> mean(n, 0.0);
        for (int j : neighbors[i]) {
            for (size_t k = 0; k < n; ++k) {
                mean[k] += verts[static_cast<size_t>(j)][k];
            }
        }
        for (size_t k = 0; k < n; ++k) {
            mean[k] /= static_cast<double>(neighbors[i].size());
            const double diff = verts[i][k] - mean[k];
            total += diff * diff;
        }
    }
    return total;
}

// Central finite difference of a scalar function of a flat vector.
inline std::vector<double> central_difference(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h) {
    std::vector<double> grad(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        const double saved = x[i];
        x[i] = saved + h;
        const double fp = f(x);
        x[i] = saved - h;
        const double fm = f(x);
        x[i] = saved;
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

} // namespace oracle
