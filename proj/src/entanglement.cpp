#include "unruhx/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace unruhx {

namespace {

void require_two_qubits(const DensityMatrix& rho, const char* op) {
    if (rho.num_qubits() != 2) {
        throw DimensionError(std::string(op) + ": expected a two-qubit state, got " +
                             std::to_string(rho.num_qubits()) + " qubits");
    }
}

}  // namespace

std::string_view method_name(ConcurrenceMethod m) noexcept {
    return m == ConcurrenceMethod::spectral ? "spectral" : "x_shortcut";
}

CMatrix spin_flip(const CMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) throw DimensionError("spin_flip: expected 4x4");
    // sigma_y (x) sigma_y is real: anti-diagonal (-1, 1, 1, -1).
    static const CMatrix yy{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}};
    return yy * conjugate(rho) * yy;
}

ConcurrenceResult concurrence(const DensityMatrix& rho) {
    require_two_qubits(rho, "concurrence");
    const CMatrix root = psd_sqrt(rho);
    CMatrix r = root * spin_flip(rho.matrix()) * root;
    // Symmetrize away rounding before the Hermitian eigensolve.
    r = 0.5 * (r + dagger(r));
    const std::vector<double> ev = hermitian_eigenvalues(r);

    ConcurrenceResult res;
    res.method = ConcurrenceMethod::spectral;
    // Exact zeros come back as ~1e-17 and their square roots would leak
    // ~1e-8 into the value, so anything under the rounding floor is zero.
    const double floor = 32.0 * std::numeric_limits<double>::epsilon() * std::max(ev.back(), 0.0);
    for (std::size_t k = 0; k < 4; ++k)
        res.lambdas[k] = ev[k] > floor ? std::sqrt(ev[k]) : 0.0;
    std::sort(res.lambdas.begin(), res.lambdas.end(), std::greater<>());
    res.value = std::max(0.0, res.lambdas[0] - res.lambdas[1] - res.lambdas[2] - res.lambdas[3]);
    return res;
}

bool is_x_type(const CMatrix& rho, double tol) {
    if (rho.rows() != 4 || rho.cols() != 4) throw DimensionError("is_x_type: expected 4x4");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const bool on_x = (i == j) || (i + j == 3);
            if (!on_x && std::abs(rho(i, j)) >= tol) return false;
        }
    return true;
}

bool is_x_type(const DensityMatrix& rho, double tol) { return is_x_type(rho.matrix(), tol); }

ConcurrenceResult concurrence_x(const DensityMatrix& rho) {
    require_two_qubits(rho, "concurrence_x");
    if (!is_x_type(rho)) {
        throw ValidationError("concurrence_x: state is not X-type; use the spectral concurrence");
    }
    const auto& m = rho.matrix();
    const double outer = std::abs(m(0, 3));
    const double inner = std::abs(m(1, 2));
    // Nonphysical inputs can carry negative populations.
    const double g_outer = std::sqrt(std::max(0.0, m(0, 0).real() * m(3, 3).real()));
    const double g_inner = std::sqrt(std::max(0.0, m(1, 1).real() * m(2, 2).real()));

    ConcurrenceResult res;
    res.method = ConcurrenceMethod::x_shortcut;
    res.lambdas = {g_outer + outer, std::abs(g_outer - outer), g_inner + inner,
                   std::abs(g_inner - inner)};
    std::sort(res.lambdas.begin(), res.lambdas.end(), std::greater<>());
    res.value = 2.0 * std::max({0.0, outer - g_inner, inner - g_outer});
    return res;
}

ConcurrenceResult concurrence_auto(const DensityMatrix& rho) {
    return is_x_type(rho) ? concurrence_x(rho) : concurrence(rho);
}

PptResult ppt_test(const DensityMatrix& rho, double tol) {
    require_two_qubits(rho, "ppt_test");
    const std::vector<double> ev = hermitian_eigenvalues(partial_transpose(rho, rho.subsystems()[1]));
    PptResult res;
    res.min_eigenvalue = ev.front();
    for (double e : ev)
        if (e < -tol) res.negativity += -e;
    res.verdict = res.min_eigenvalue < -tol ? PptVerdict::entangled : PptVerdict::ppt;
    return res;
}

}  // namespace unruhx
