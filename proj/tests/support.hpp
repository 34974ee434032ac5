// Generators and conversions shared by the unit tests.

#pragma once

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "unruhx/model.hpp"
#include "unruhx/qmat.hpp"

namespace support {

using unruhx::CMatrix;
using unruhx::Complex;

inline oracle::M4 to_m4(const CMatrix& m) {
    oracle::M4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = m(i, j);
    return out;
}

inline CMatrix from_m4(const oracle::M4& m) {
    CMatrix out(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out(i, j) = m[i][j];
    return out;
}

inline double max_diff(const oracle::M4& a, const CMatrix& b) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(a[i][j] - b(i, j)));
    return d;
}

inline CMatrix random_matrix(oracle::Rng& rng, std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    return m;
}

inline CMatrix random_hermitian(oracle::Rng& rng, std::size_t n) {
    const CMatrix g = random_matrix(rng, n);
    return Complex(0.5) * (g + unruhx::dagger(g));
}

// G G^dagger / tr, optionally of reduced rank.
inline CMatrix random_density(oracle::Rng& rng, std::size_t n, std::size_t rank = 0) {
    if (rank == 0) rank = n;
    CMatrix g(n, rank);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < rank; ++j) g(i, j) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    CMatrix rho = g * unruhx::dagger(g);
    rho *= Complex(1.0 / unruhx::trace(rho).real());
    return rho;
}

// Gram-Schmidt on a random complex matrix.
inline CMatrix random_unitary(oracle::Rng& rng, std::size_t n) {
    CMatrix u = random_matrix(rng, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(u(i, k)) * u(i, j);
            for (std::size_t i = 0; i < n; ++i) u(i, j) -= dot * u(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(u(i, j));
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) u(i, j) /= norm;
    }
    return u;
}

// Valid X parameters: a random point of the tetrahedron via Bell-diagonal
// weights, mapped back to (c1, c2, c3).
inline unruhx::XParams random_xparams(oracle::Rng& rng) {
    double w[4], sum = 0.0;
    for (double& x : w) sum += (x = -std::log(rng.uniform(1e-12, 1.0)));
    for (double& x : w) x /= sum;
    // spectrum 1/4(1+c1-c2+c3), 1/4(1-c1+c2+c3), 1/4(1+c1+c2-c3), 1/4(1-c1-c2-c3)
    const double c1 = (w[0] - w[1] + w[2] - w[3]);
    const double c2 = (-w[0] + w[1] + w[2] - w[3]);
    const double c3 = (w[0] + w[1] - w[2] - w[3]);
    return {c1, c2, c3};
}

}  // namespace support
