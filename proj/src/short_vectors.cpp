#include "optmod/short_vectors.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "optmod/errors.hpp"

namespace optmod::lattice {

namespace {

void check_gram(const GramMatrix& g)
{
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (g[i].size() != n)
            throw InvalidInput("gram matrix is not square");
        if (g[i][i] <= 0 || g[i][i] % 2 != 0)
            throw InvalidInput("gram matrix diagonal must be positive and even");
        for (std::size_t j = 0; j < n; ++j)
            if (g[i][j] != g[j][i])
                throw InvalidInput("gram matrix is not symmetric");
    }
}

// Gram-Schmidt data of the form x^T A x with A = G/2: mu and squared lengths.
void gram_schmidt(const GramMatrix& g, std::vector<std::vector<double>>& mu, std::vector<double>& bstar)
{
    const std::size_t n = g.size();
    mu.assign(n, std::vector<double>(n, 0.0));
    bstar.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            double v = 0.5 * static_cast<double>(g[i][j]);
            for (std::size_t k = 0; k < j; ++k)
                v -= mu[j][k] * mu[i][k] * bstar[k];
            mu[i][j] = v / bstar[j];
        }
        double v = 0.5 * static_cast<double>(g[i][i]);
        for (std::size_t k = 0; k < i; ++k)
            v -= mu[i][k] * mu[i][k] * bstar[k];
        bstar[i] = v;
    }
}

// b_k <- b_k - q b_j on the Gram matrix.
void reduce_row(GramMatrix& g, std::size_t k, std::size_t j, std::int64_t q)
{
    const std::size_t n = g.size();
    const std::int64_t gkk = g[k][k] - 2 * q * g[k][j] + q * q * g[j][j];
    for (std::size_t i = 0; i < n; ++i) {
        if (i == k)
            continue;
        g[k][i] -= q * g[j][i];
        g[i][k] = g[k][i];
    }
    g[k][k] = gkk;
}

void swap_rows(GramMatrix& g, std::size_t a, std::size_t b)
{
    std::swap(g[a], g[b]);
    for (auto& row : g)
        std::swap(row[a], row[b]);
}

}  // namespace

GramMatrix lll_reduce(const GramMatrix& input)
{
    check_gram(input);
    GramMatrix g = input;
    const std::size_t n = g.size();
    if (n < 2)
        return g;
    std::vector<std::vector<double>> mu;
    std::vector<double> bstar;
    std::size_t k = 1;
    int guard = 0;
    while (k < n) {
        if (++guard > 100000)
            throw InternalError("lll_reduce: no convergence");
        for (std::size_t jj = k; jj-- > 0;) {
            gram_schmidt(g, mu, bstar);
            const auto q = static_cast<std::int64_t>(std::llround(mu[k][jj]));
            if (q != 0)
                reduce_row(g, k, jj, q);
        }
        gram_schmidt(g, mu, bstar);
        if (bstar[k] < (0.99 - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
            swap_rows(g, k, k - 1);
            k = k > 1 ? k - 1 : 1;
        } else {
            ++k;
        }
    }
    return g;
}

std::vector<std::int64_t> theta_counts(const GramMatrix& input, std::int64_t bound)
{
    if (bound < 0)
        throw DomainError("theta_counts: negative bound");
    const GramMatrix g = lll_reduce(input);
    const std::size_t n = g.size();
    std::vector<std::int64_t> counts(static_cast<std::size_t>(bound) + 1, 0);
    if (n == 0) {
        counts[0] = 1;
        return counts;
    }

    // Q(x) = sum_i q[i][i] (x_i + sum_{j > i} q[i][j] x_j)^2.
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            q[i][j] = 0.5 * static_cast<double>(g[i][j]);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l)
                q[k][l] -= q[k][i] * q[i][l];
    }

    std::vector<std::int64_t> x(n, 0);
    const double slack = 1e-6 * (1.0 + static_cast<double>(bound));
    std::function<void(std::size_t, double)> recurse = [&](std::size_t level, double remaining) {
        double center = 0.0;
        for (std::size_t j = level + 1; j < n; ++j)
            center -= q[level][j] * static_cast<double>(x[j]);
        const double radius = std::sqrt(std::max(0.0, remaining + slack) / q[level][level]);
        const auto lo = static_cast<std::int64_t>(std::ceil(center - radius));
        const auto hi = static_cast<std::int64_t>(std::floor(center + radius));
        for (std::int64_t v = lo; v <= hi; ++v) {
            x[level] = v;
            const double t = static_cast<double>(v) - center;
            const double rest = remaining - q[level][level] * t * t;
            if (level > 0) {
                recurse(level - 1, rest);
                continue;
            }
            // Exact evaluation.
            __int128 twice = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    twice += static_cast<__int128>(g[i][j]) * x[i] * x[j];
            const auto value = static_cast<std::int64_t>(twice / 2);
            if (value <= bound)
                ++counts[static_cast<std::size_t>(value)];
        }
        x[level] = 0;
    };
    recurse(n - 1, static_cast<double>(bound));
    if (counts[0] != 1)
        throw InternalError("theta_counts: zero vector counted " + std::to_string(counts[0]) + " times");
    return counts;
}

std::int64_t minimum(const GramMatrix& g, std::int64_t bound)
{
    const auto counts = theta_counts(g, bound);
    for (std::size_t i = 1; i < counts.size(); ++i)
        if (counts[i] > 0)
            return static_cast<std::int64_t>(i);
    return 0;
}

std::int64_t determinant(const GramMatrix& g)
{
    // Bareiss fraction-free elimination.
    const std::size_t n = g.size();
    std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = g[i][j];
    __int128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * static_cast<std::int64_t>(n == 0 ? 1 : m[n - 1][n - 1]);
}

}  // namespace optmod::lattice
