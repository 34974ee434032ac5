#include "unruhx/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace unruhx {

namespace {

std::string dims(const CMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": shape mismatch " + dims(a) + " vs " + dims(b));
    }
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Bit of qubit `pos` (0 = most significant) in an index over n qubits.
inline std::size_t bit_of(std::size_t index, std::size_t n, std::size_t pos) {
    return (index >> (n - 1 - pos)) & 1u;
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError("CMatrix: " + std::to_string(data_.size()) + " entries for a " +
                             std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
    }
    if (!all_finite()) throw ValidationError("CMatrix: non-finite entry");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionError("CMatrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    if (!all_finite()) throw ValidationError("CMatrix: non-finite entry");
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
    CMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

bool CMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    require_same_shape(*this, other, "add");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    require_same_shape(*this, other, "sub");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("mul: inner dimensions differ " + dims(a) + " * " + dims(b));
    }
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return c;
}

CMatrix dagger(const CMatrix& a) {
    CMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

CMatrix conjugate(const CMatrix& a) {
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = std::conj(a(i, j));
    return c;
}

Complex trace(const CMatrix& a) {
    if (!a.square()) throw DimensionError("trace: non-square " + dims(a));
    Complex t{};
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    return m;
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

double frobenius_norm(const CMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double hermitian_residual(const CMatrix& h) {
    if (!h.square()) throw DimensionError("hermitian_residual: non-square " + dims(h));
    double m = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = i; j < h.cols(); ++j)
            m = std::max(m, std::abs(h(i, j) - std::conj(h(j, i))));
    return m;
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

namespace {

constexpr double kJacobiOffTol = 1e-13;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eigensystem(const CMatrix& h) {
    if (!h.square()) throw DimensionError("hermitian_eigensystem: non-square " + dims(h));
    if (h.rows() > kMaxDimension) {
        throw DimensionError("hermitian_eigensystem: dimension " + std::to_string(h.rows()) +
                             " exceeds " + std::to_string(kMaxDimension));
    }
    const double residual = hermitian_residual(h);
    if (residual > kHermitianTol) {
        std::ostringstream os;
        os << "hermitian_eigensystem: input is not Hermitian (residual " << residual << ")";
        throw HermiticityError(os.str(), residual);
    }

    const std::size_t n = h.rows();
    CMatrix a = 0.5 * (h + dagger(h));
    CMatrix v = CMatrix::identity(n);
    const double threshold = kJacobiOffTol * std::max(1.0, frobenius_norm(a));

    for (int sweep = 0; sweep < kJacobiMaxSweeps && off_diagonal_norm(a) > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double g = std::abs(apq);
                if (g < 1e-300) continue;

                // U = D(phase) * R(theta) zeroes a(p,q); D removes the phase of
                // a(p,q) so that the remaining 2x2 problem is real symmetric.
                const Complex phase = apq / g;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * g);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const Complex u_pp = c;
                const Complex u_pq = s;
                const Complex u_qp = -s * std::conj(phase);
                const Complex u_qq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * u_pp + akq * u_qp;
                    a(k, q) = akp * u_pq + akq * u_qq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
                    a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * u_pp + vkq * u_qp;
                    v(k, q) = vkp * u_pq + vkq * u_qq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem es{std::vector<double>(n), CMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
    }
    return es;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
    return hermitian_eigensystem(h).values;
}

// ---------------------------------------------------------------------------
// Labels and density matrices

std::string_view label_name(QubitLabel label) noexcept {
    switch (label) {
        case QubitLabel::A: return "A";
        case QubitLabel::R: return "R";
        case QubitLabel::RII: return "RII";
        case QubitLabel::EA: return "EA";
        case QubitLabel::ER: return "ER";
    }
    return "?";
}

QubitLabel parse_label(std::string_view name) {
    for (auto l : {QubitLabel::A, QubitLabel::R, QubitLabel::RII, QubitLabel::EA, QubitLabel::ER})
        if (label_name(l) == name) return l;
    throw LabelError("unknown qubit label '" + std::string(name) + "'");
}

DensityMatrix::DensityMatrix(CMatrix mat, std::vector<QubitLabel> subsystems,
                             Physicality physicality)
    : mat_(std::move(mat)), subsystems_(std::move(subsystems)), physicality_(physicality) {
    if (!mat_.square() || !is_power_of_two(mat_.rows())) {
        throw DimensionError("DensityMatrix: expected 2^k square matrix, got " + dims(mat_));
    }
    if (mat_.rows() != (std::size_t{1} << subsystems_.size())) {
        throw DimensionError("DensityMatrix: " + std::to_string(subsystems_.size()) +
                             " labels for dimension " + std::to_string(mat_.rows()));
    }
    for (std::size_t i = 0; i < subsystems_.size(); ++i)
        for (std::size_t j = i + 1; j < subsystems_.size(); ++j)
            if (subsystems_[i] == subsystems_[j])
                throw LabelError("DensityMatrix: duplicate label " +
                                 std::string(label_name(subsystems_[i])));
    if (!mat_.all_finite()) throw ValidationError("DensityMatrix: non-finite entry");

    const double herm = hermitian_residual(mat_);
    if (herm > kHermitianTol) {
        std::ostringstream os;
        os << "DensityMatrix: not Hermitian (residual " << herm << ")";
        throw HermiticityError(os.str(), herm);
    }
    if (physicality_ == Physicality::nonphysical) return;

    const double tr = trace(mat_).real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream os;
        os << "DensityMatrix: trace " << tr << " differs from 1";
        throw NonphysicalError(os.str(), hermitian_eigenvalues(mat_).front());
    }
    const double min_eig = hermitian_eigenvalues(mat_).front();
    if (min_eig < -kPsdTol) {
        std::ostringstream os;
        os << "DensityMatrix: minimum eigenvalue " << min_eig << " is negative";
        throw NonphysicalError(os.str(), min_eig);
    }
}

bool DensityMatrix::contains(QubitLabel label) const noexcept {
    return std::find(subsystems_.begin(), subsystems_.end(), label) != subsystems_.end();
}

std::size_t DensityMatrix::position(QubitLabel label) const {
    auto it = std::find(subsystems_.begin(), subsystems_.end(), label);
    if (it == subsystems_.end())
        throw LabelError("label " + std::string(label_name(label)) + " not present");
    return static_cast<std::size_t>(it - subsystems_.begin());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const QubitLabel> keep) {
    if (keep.empty()) throw LabelError("partial_trace: empty keep set");
    const std::size_t n = rho.num_qubits();
    std::vector<bool> kept(n, false);
    for (auto l : keep) {
        const std::size_t pos = rho.position(l);
        if (kept[pos]) throw LabelError("partial_trace: label listed twice");
        kept[pos] = true;
    }
    std::vector<std::size_t> kept_pos, traced_pos;
    std::vector<QubitLabel> out_labels;
    for (std::size_t i = 0; i < n; ++i) {
        if (kept[i]) {
            kept_pos.push_back(i);
            out_labels.push_back(rho.subsystems()[i]);
        } else {
            traced_pos.push_back(i);
        }
    }

    // Full index from kept bits `k` and traced bits `t`.
    auto compose = [&](std::size_t k, std::size_t t) {
        std::size_t idx = 0;
        for (std::size_t b = 0; b < kept_pos.size(); ++b)
            idx |= ((k >> (kept_pos.size() - 1 - b)) & 1u) << (n - 1 - kept_pos[b]);
        for (std::size_t b = 0; b < traced_pos.size(); ++b)
            idx |= ((t >> (traced_pos.size() - 1 - b)) & 1u) << (n - 1 - traced_pos[b]);
        return idx;
    };

    const std::size_t dk = std::size_t{1} << kept_pos.size();
    const std::size_t dt = std::size_t{1} << traced_pos.size();
    CMatrix out(dk, dk);
    for (std::size_t i = 0; i < dk; ++i)
        for (std::size_t j = 0; j < dk; ++j) {
            Complex s{};
            for (std::size_t t = 0; t < dt; ++t) s += rho(compose(i, t), compose(j, t));
            out(i, j) = s;
        }
    return DensityMatrix(std::move(out), std::move(out_labels), rho.physicality());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<QubitLabel> keep) {
    return partial_trace(rho, std::span<const QubitLabel>(keep.begin(), keep.size()));
}

DensityMatrix reorder(const DensityMatrix& rho, std::span<const QubitLabel> order) {
    const std::size_t n = rho.num_qubits();
    if (order.size() != n) throw LabelError("reorder: order must list every label once");
    std::vector<std::size_t> src(n);  // src[new position] = old position
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        src[i] = rho.position(order[i]);
        if (seen[src[i]]) throw LabelError("reorder: label listed twice");
        seen[src[i]] = true;
    }
    auto map_index = [&](std::size_t new_idx) {
        std::size_t old_idx = 0;
        for (std::size_t b = 0; b < n; ++b)
            old_idx |= bit_of(new_idx, n, b) << (n - 1 - src[b]);
        return old_idx;
    };
    const std::size_t d = rho.dim();
    CMatrix out(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) out(i, j) = rho(map_index(i), map_index(j));
    return DensityMatrix(std::move(out), {order.begin(), order.end()}, rho.physicality());
}

CMatrix partial_transpose(const DensityMatrix& rho, QubitLabel on) {
    const std::size_t n = rho.num_qubits();
    const std::size_t mask = std::size_t{1} << (n - 1 - rho.position(on));
    const std::size_t d = rho.dim();
    CMatrix out(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            // swap the `on` bits of row and column
            const std::size_t ii = (i & ~mask) | (j & mask);
            const std::size_t jj = (j & ~mask) | (i & mask);
            out(i, j) = rho(ii, jj);
        }
    return out;
}

CMatrix psd_sqrt(const DensityMatrix& rho) {
    const EigenSystem es = hermitian_eigensystem(rho.matrix());
    const std::size_t d = rho.dim();
    CMatrix out(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        double lambda = es.values[k];
        if (lambda < -kPsdTol && !rho.nonphysical()) {
            std::ostringstream os;
            os << "psd_sqrt: eigenvalue " << lambda << " below tolerance";
            throw NonphysicalError(os.str(), lambda);
        }
        lambda = std::max(lambda, 0.0);
        if (lambda == 0.0) continue;
        const double s = std::sqrt(lambda);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                out(i, j) += s * es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    return out;
}

Diagnostics diagnose(const CMatrix& rho) {
    Diagnostics diag{};
    diag.hermitian_residual = hermitian_residual(rho);
    diag.trace_residual = std::abs(trace(rho) - Complex{1.0, 0.0});
    // Eigenvalues of the Hermitian part, whatever the residual.
    const CMatrix herm = 0.5 * (rho + dagger(rho));
    diag.min_eigenvalue = hermitian_eigenvalues(herm).front();
    return diag;
}

CMatrix lift_operator(const CMatrix& op, std::size_t num_qubits, std::size_t target) {
    if (op.rows() != 2 || op.cols() != 2) throw DimensionError("lift_operator: expected 2x2");
    if (target >= num_qubits) throw LabelError("lift_operator: target out of range");
    const std::size_t d = std::size_t{1} << num_qubits;
    const std::size_t mask = std::size_t{1} << (num_qubits - 1 - target);
    CMatrix out(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        const std::size_t s = (j & mask) ? 1 : 0;
        for (std::size_t sp = 0; sp < 2; ++sp) {
            const std::size_t i = sp ? (j | mask) : (j & ~mask);
            out(i, j) = op(sp, s);
        }
    }
    return out;
}

CMatrix lift_isometry(const CMatrix& iso, std::size_t num_qubits, std::size_t target) {
    if (iso.rows() != 4 || iso.cols() != 2) throw DimensionError("lift_isometry: expected 4x2");
    if (target >= num_qubits) throw LabelError("lift_isometry: target out of range");
    const std::size_t d_in = std::size_t{1} << num_qubits;
    const std::size_t mask = std::size_t{1} << (num_qubits - 1 - target);
    CMatrix out(2 * d_in, d_in);
    for (std::size_t j = 0; j < d_in; ++j) {
        const std::size_t s = (j & mask) ? 1 : 0;
        for (std::size_t sp = 0; sp < 2; ++sp) {
            const std::size_t base = sp ? (j | mask) : (j & ~mask);
            for (std::size_t e = 0; e < 2; ++e) out((base << 1) | e, j) = iso(2 * sp + e, s);
        }
    }
    return out;
}

}  // namespace unruhx
