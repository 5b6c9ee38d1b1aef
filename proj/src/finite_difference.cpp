#include "multipoint/finite_difference.hpp"

#include <algorithm>
#include <array>

#include "multipoint/errors.hpp"

namespace multipoint {

std::vector<double> first_derivative_weights(double z, std::span<const double> x) {
    const std::size_t n = x.size();
    // c[j][m]: weight of node j for the m-th derivative, m in {0, 1}.
    std::vector<std::array<double, 2>> c(n, {0.0, 0.0});
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min<std::size_t>(i, 1);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = c[j][1];
    return w;
}

GridFunction differentiate(const GridFunction& u, int order) {
    const std::size_t n = u.size();
    if (n < 3) throw ValidationError("grid too short for finite differences (< 3 points)");
    if (order < 2 || order % 2 != 0) throw ValidationError("finite-difference order must be even and >= 2");
    const std::size_t width = std::min<std::size_t>(static_cast<std::size_t>(order) + 1, n - (n % 2 == 0 ? 1 : 0));
    const std::size_t half = width / 2;

    // Stencil weights depend only on the position relative to the ends.
    std::vector<double> offsets(width);
    for (std::size_t j = 0; j < width; ++j) offsets[j] = static_cast<double>(j);
    std::vector<std::vector<double>> edge(half + 1);
    for (std::size_t p = 0; p <= half; ++p) edge[p] = first_derivative_weights(static_cast<double>(p), offsets);

    const double inv_h = 1.0 / u.h();
    const std::size_t d = u.dim();
    GridFunction out(u.interval(), u.t0(), u.t_end(), n, d);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t start;
        const std::vector<double>* w;
        std::vector<double> mirrored;
        if (k < half) {
            start = 0;
            w = &edge[k];
        } else if (k + half >= n) {
            // Mirror of the left-edge stencil: reverse nodes and flip the sign.
            const std::size_t p = n - 1 - k;
            start = n - width;
            mirrored.resize(width);
            for (std::size_t j = 0; j < width; ++j) mirrored[j] = -edge[p][width - 1 - j];
            w = &mirrored;
        } else {
            start = k - half;
            w = &edge[half];
        }
        std::span<Complex> dst = out[k];
        for (std::size_t j = 0; j < width; ++j) {
            const double wj = (*w)[j] * inv_h;
            if (wj == 0.0) continue;
            const auto src = u[start + j];
            for (std::size_t c = 0; c < d; ++c) dst[c] += wj * src[c];
        }
    }
    return out;
}

}  // namespace multipoint
