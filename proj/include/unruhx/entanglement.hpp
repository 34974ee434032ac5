// entanglement.hpp
// Two-qubit entanglement measures: Wootters concurrence (spectral and
// X-state forms) and the partial-transpose (PPT) test with negativity.

#pragma once

#include <array>
#include <string_view>

#include "unruhx/qmat.hpp"

namespace unruhx {

enum class ConcurrenceMethod { spectral, x_shortcut };

std::string_view method_name(ConcurrenceMethod m) noexcept;

struct ConcurrenceResult {
    double value = 0.0;
    // Square roots of the eigenvalues of rho * rho~, descending.
    std::array<double, 4> lambdas{};
    ConcurrenceMethod method = ConcurrenceMethod::spectral;
};

enum class PptVerdict { entangled, ppt };

struct PptResult {
    double min_eigenvalue = 0.0;
    double negativity = 0.0;
    PptVerdict verdict = PptVerdict::ppt;
};

inline constexpr double kXTypeTol = 1e-10;
inline constexpr double kPptTol = 1e-10;

// (sigma_y (x) sigma_y) conj(rho) (sigma_y (x) sigma_y)
CMatrix spin_flip(const CMatrix& rho);

// lambda_i from the Hermitian form sqrt(rho) rho~ sqrt(rho).
ConcurrenceResult concurrence(const DensityMatrix& rho);

// 2 max{0, |rho14| - sqrt(rho22 rho33), |rho23| - sqrt(rho11 rho44)}.
// Throws ValidationError for non-X input.
ConcurrenceResult concurrence_x(const DensityMatrix& rho);

// X fast path when the state is X-type, spectral otherwise.
ConcurrenceResult concurrence_auto(const DensityMatrix& rho);

bool is_x_type(const CMatrix& rho, double tol = kXTypeTol);
bool is_x_type(const DensityMatrix& rho, double tol = kXTypeTol);

// Partial transpose on the second subsystem. Negativity sums the eigenvalues
// below -tol, so it is exactly zero whenever the verdict is ppt.
PptResult ppt_test(const DensityMatrix& rho, double tol = kPptTol);

}  // namespace unruhx
