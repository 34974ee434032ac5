// qmat.hpp
// Dense complex matrices and qubit-labelled density matrices for Hilbert
// spaces of at most five qubits.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unruhx/errors.hpp"

namespace unruhx {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr std::size_t kMaxDimension = 32;

// Row-major dense complex matrix. Value type; copy freely.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(std::span<const double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return data_; }

    bool all_finite() const noexcept;

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(Complex s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex s, CMatrix a);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix dagger(const CMatrix& a);
CMatrix conjugate(const CMatrix& a);
Complex trace(const CMatrix& a);

// max_ij |a_ij - b_ij|
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs(const CMatrix& a);
double frobenius_norm(const CMatrix& a);
// max_ij |h_ij - conj(h_ji)|
double hermitian_residual(const CMatrix& h);

// Ascending eigenvalues with the matching orthonormal eigenvectors stored as
// the columns of `vectors`.
struct EigenSystem {
    std::vector<double> values;
    CMatrix vectors;
};

// Cyclic complex Jacobi on the Hermitized input (h + h^dagger)/2. Throws
// HermiticityError if the input is non-Hermitian beyond kHermitianTol.
EigenSystem hermitian_eigensystem(const CMatrix& h);
std::vector<double> hermitian_eigenvalues(const CMatrix& h);

// Qubit subsystems. R is the region-I Rindler mode seen by the accelerated
// observer, RII its causally disconnected partner.
enum class QubitLabel { A, R, RII, EA, ER };

std::string_view label_name(QubitLabel label) noexcept;
QubitLabel parse_label(std::string_view name);

enum class Physicality { checked, nonphysical };

// Square 2^k x 2^k matrix over k uniquely labelled qubits. The first label is
// the most significant bit of the basis index, so |mn> = |m>_first |n>_second.
//
// Construction rejects non-finite entries, non-Hermitian input and, unless
// flagged nonphysical, a trace away from 1 or an eigenvalue below -kPsdTol.
class DensityMatrix {
public:
    DensityMatrix(CMatrix mat, std::vector<QubitLabel> subsystems,
                  Physicality physicality = Physicality::checked);

    const CMatrix& matrix() const noexcept { return mat_; }
    const std::vector<QubitLabel>& subsystems() const noexcept { return subsystems_; }
    std::size_t num_qubits() const noexcept { return subsystems_.size(); }
    std::size_t dim() const noexcept { return mat_.rows(); }
    bool nonphysical() const noexcept { return physicality_ == Physicality::nonphysical; }
    Physicality physicality() const noexcept { return physicality_; }

    bool contains(QubitLabel label) const noexcept;
    std::size_t position(QubitLabel label) const;

    const Complex& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

private:
    CMatrix mat_;
    std::vector<QubitLabel> subsystems_;
    Physicality physicality_;
};

// Reduced state over `keep`, in the order those labels appear in rho.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const QubitLabel> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<QubitLabel> keep);

// Same state with subsystems permuted into `order` (a permutation of rho's labels).
DensityMatrix reorder(const DensityMatrix& rho, std::span<const QubitLabel> order);

CMatrix partial_transpose(const DensityMatrix& rho, QubitLabel on);

// Hermitian PSD square root. Eigenvalues in [-kPsdTol, 0) are clamped to 0;
// more negative ones raise NonphysicalError unless rho is flagged nonphysical.
CMatrix psd_sqrt(const DensityMatrix& rho);

struct Diagnostics {
    double hermitian_residual;
    double trace_residual;
    double min_eigenvalue;
};

// Pure diagnostic; never throws for square input.
Diagnostics diagnose(const CMatrix& rho);

// Operator on n qubits acting as `op` (2x2) on qubit `target` and identity elsewhere.
CMatrix lift_operator(const CMatrix& op, std::size_t num_qubits, std::size_t target);

// Operator from n to n+1 qubits: `iso` (4x2, rows indexed by (system, ancilla))
// acts on qubit `target`, and the ancilla is appended as the last qubit.
CMatrix lift_isometry(const CMatrix& iso, std::size_t num_qubits, std::size_t target);

}  // namespace unruhx
