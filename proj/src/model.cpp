#include "unruhx/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace unruhx {

namespace {

const CMatrix& pauli_x() {
    static const CMatrix m{{0.0, 1.0}, {1.0, 0.0}};
    return m;
}
const CMatrix& pauli_y() {
    static const CMatrix m{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}};
    return m;
}
const CMatrix& pauli_z() {
    static const CMatrix m{{1.0, 0.0}, {0.0, -1.0}};
    return m;
}

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << what << " = " << p << " outside [0, 1]";
        throw ValidationError(os.str());
    }
}

std::string format_g(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

std::array<double, 4> XParams::bell_diagonal_spectrum() const noexcept {
    return {0.25 * (1 + c1 - c2 + c3), 0.25 * (1 - c1 + c2 + c3), 0.25 * (1 + c1 + c2 - c3),
            0.25 * (1 - c1 - c2 - c3)};
}

double XParams::min_eigenvalue() const noexcept {
    const auto s = bell_diagonal_spectrum();
    return *std::min_element(s.begin(), s.end());
}

double XParams::best_sign_min_eigenvalue() const noexcept {
    double best = -1.0;
    for (int mask = 0; mask < 8; ++mask) {
        const XParams signed_params{(mask & 1) ? -std::abs(c1) : std::abs(c1),
                                    (mask & 2) ? -std::abs(c2) : std::abs(c2),
                                    (mask & 4) ? -std::abs(c3) : std::abs(c3)};
        best = std::max(best, signed_params.min_eigenvalue());
    }
    return best;
}

bool XParams::valid() const noexcept { return min_eigenvalue() >= -kXParamsTol; }

XParams parse_preset(std::string_view preset) {
    if (preset == "bell") return XParams::bell();
    constexpr std::string_view prefix = "werner:";
    if (preset.starts_with(prefix)) {
        const std::string_view tail = preset.substr(prefix.size());
        double c = 0.0;
        const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), c);
        if (ec == std::errc{} && ptr == tail.data() + tail.size() && c >= 0.0 && c <= 1.0)
            return XParams::werner(c);
    }
    throw ValidationError("unknown preset '" + std::string(preset) +
                          "' (expected bell or werner:<c> with c in [0,1])");
}

InvalidXParamsError::InvalidXParamsError(const XParams& params, double min_eig,
                                         double best_sign_min_eig)
    : NonphysicalError("X-state parameters (" + format_g(params.c1) + ", " + format_g(params.c2) +
                           ", " + format_g(params.c3) +
                           ") are not a density matrix: minimum eigenvalue " + format_g(min_eig) +
                           "; best over all sign assignments " + format_g(best_sign_min_eig),
                       min_eig),
      params_(params),
      best_(best_sign_min_eig) {}

AccelParams AccelParams::from_r(double r) {
    constexpr double quarter_pi = std::numbers::pi / 4.0;
    // Literal decimal renderings of pi/4 may overshoot by a few ulps.
    if (!(r >= 0.0 && r <= quarter_pi + 1e-9)) {
        throw ValidationError("acceleration parameter r = " + format_g(r) +
                              " outside [0, pi/4]");
    }
    return AccelParams{std::min(r, quarter_pi)};
}

AccelParams r_from_acceleration(double omega, double a, double c_light) {
    if (!(omega > 0.0) || !(a > 0.0) || !(c_light > 0.0)) {
        throw ValidationError("omega, a and c_light must all be positive");
    }
    // exp(-x) + 1 lies in (1, 2], so cos r lies in [2^-1/2, 1).
    const double boltzmann = std::exp(-2.0 * std::numbers::pi * omega * c_light / a);
    const double cos_r = 1.0 / std::sqrt(boltzmann + 1.0);
    return AccelParams::from_r(std::acos(std::clamp(cos_r, std::numbers::sqrt2 / 2.0, 1.0)));
}

std::string_view channel_name(ChannelKind kind) noexcept {
    return kind == ChannelKind::amplitude ? "amplitude" : "phase";
}

ChannelKind parse_channel(std::string_view name) {
    if (name == "amplitude") return ChannelKind::amplitude;
    if (name == "phase") return ChannelKind::phase;
    throw ValidationError("unknown channel '" + std::string(name) +
                          "' (expected amplitude or phase)");
}

void ChannelSpec::validate() const {
    require_probability(p_a, "p_A");
    require_probability(p_r, "p_R");
}

DensityMatrix x_state(const XParams& params, bool allow_nonphysical) {
    for (double c : {params.c1, params.c2, params.c3}) {
        if (!(c >= -1.0 && c <= 1.0))
            throw ValidationError("X-state parameter " + format_g(c) + " outside [-1, 1]");
    }
    if (!params.valid() && !allow_nonphysical) {
        throw InvalidXParamsError(params, params.min_eigenvalue(),
                                  params.best_sign_min_eigenvalue());
    }
    CMatrix rho = CMatrix::identity(4);
    rho += params.c1 * kron(pauli_x(), pauli_x());
    rho += params.c2 * kron(pauli_y(), pauli_y());
    rho += params.c3 * kron(pauli_z(), pauli_z());
    rho *= 0.25;
    return DensityMatrix(std::move(rho), {QubitLabel::A, QubitLabel::R},
                         params.valid() ? Physicality::checked : Physicality::nonphysical);
}

CMatrix unruh_isometry(const AccelParams& accel) {
    CMatrix v(4, 2);
    v(0, 0) = std::cos(accel.r);  // |0_I 0_II>
    v(3, 0) = std::sin(accel.r);  // |1_I 1_II>
    v(2, 1) = 1.0;                // |1_I 0_II>
    return v;
}

DensityMatrix apply_unruh(const DensityMatrix& rho, const AccelParams& accel) {
    const std::size_t target = rho.position(QubitLabel::R);
    const CMatrix w = lift_isometry(unruh_isometry(accel), rho.num_qubits(), target);
    std::vector<QubitLabel> extended = rho.subsystems();
    extended.push_back(QubitLabel::RII);
    const DensityMatrix full(w * rho.matrix() * dagger(w), std::move(extended),
                             rho.physicality());
    return partial_trace(full, rho.subsystems());
}

CMatrix channel_isometry(const ChannelSpec& spec, Side side) {
    spec.validate();
    const double p = side == Side::A ? spec.p_a : spec.p_r;
    const double q = 1.0 - p;
    CMatrix v(4, 2);
    v(0, 0) = 1.0;
    v(2, 1) = std::sqrt(q);  // |1>_S |0>_E
    if (spec.kind == ChannelKind::amplitude) {
        v(1, 1) = std::sqrt(p);  // |0>_S |1>_E
    } else {
        v(3, 1) = std::sqrt(p);  // |1>_S |1>_E
    }
    return v;
}

KrausSet kraus_from_isometry(const CMatrix& iso) {
    if (iso.rows() != 4 || iso.cols() != 2) throw DimensionError("kraus_from_isometry: expected 4x2");
    KrausSet k;
    for (std::size_t mu = 0; mu < 2; ++mu) {
        CMatrix m(2, 2);
        for (std::size_t s = 0; s < 2; ++s)
            for (std::size_t sp = 0; sp < 2; ++sp) m(s, sp) = iso(2 * s + mu, sp);
        k.operators.push_back(std::move(m));
    }
    CMatrix completeness(2, 2);
    for (const auto& m : k.operators) completeness += dagger(m) * m;
    const double residual = max_abs_diff(completeness, CMatrix::identity(2));
    if (residual > kCompletenessTol) {
        throw ValidationError("kraus_from_isometry: completeness residual " + format_g(residual));
    }
    return k;
}

DensityMatrix evolve_total(const DensityMatrix& rho_ar, const ChannelSpec& spec) {
    if (rho_ar.num_qubits() != 2 || !rho_ar.contains(QubitLabel::A) ||
        !rho_ar.contains(QubitLabel::R)) {
        throw LabelError("evolve_total: expected a state over {A, R}");
    }
    const std::array<QubitLabel, 2> ar{QubitLabel::A, QubitLabel::R};
    const DensityMatrix ordered = reorder(rho_ar, ar);

    // (A, R) -> (A, R, EA) -> (A, R, EA, ER)
    const CMatrix wa = lift_isometry(channel_isometry(spec, Side::A), 2, 0);
    const CMatrix wr = lift_isometry(channel_isometry(spec, Side::R), 3, 1);
    const CMatrix w = wr * wa;
    return DensityMatrix(w * ordered.matrix() * dagger(w),
                         {QubitLabel::A, QubitLabel::R, QubitLabel::EA, QubitLabel::ER},
                         rho_ar.physicality());
}

DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausSet& kraus, QubitLabel target) {
    const std::size_t pos = rho.position(target);
    CMatrix completeness(2, 2);
    for (const auto& m : kraus.operators) completeness += dagger(m) * m;
    if (max_abs_diff(completeness, CMatrix::identity(2)) > kCompletenessTol) {
        throw ValidationError("apply_kraus: operators are not complete");
    }
    CMatrix out(rho.dim(), rho.dim());
    for (const auto& m : kraus.operators) {
        const CMatrix lifted = lift_operator(m, rho.num_qubits(), pos);
        out += lifted * rho.matrix() * dagger(lifted);
    }
    return DensityMatrix(std::move(out), rho.subsystems(), rho.physicality());
}

std::string_view partition_name(Partition p) noexcept {
    switch (p) {
        case Partition::AR: return "AR";
        case Partition::AEa: return "AEa";
        case Partition::AEr: return "AEr";
        case Partition::REr: return "REr";
        case Partition::REa: return "REa";
        case Partition::EaEr: return "EaEr";
    }
    return "?";
}

Partition parse_partition(std::string_view name) {
    for (auto p : kAllPartitions) {
        const auto canonical = partition_name(p);
        if (canonical.size() == name.size() &&
            std::equal(canonical.begin(), canonical.end(), name.begin(), [](char x, char y) {
                return std::tolower(static_cast<unsigned char>(x)) ==
                       std::tolower(static_cast<unsigned char>(y));
            }))
            return p;
    }
    throw ValidationError("unknown partition '" + std::string(name) +
                          "' (expected AR, AEa, AEr, REr, REa or EaEr)");
}

std::pair<QubitLabel, QubitLabel> partition_labels(Partition p) noexcept {
    switch (p) {
        case Partition::AR: return {QubitLabel::A, QubitLabel::R};
        case Partition::AEa: return {QubitLabel::A, QubitLabel::EA};
        case Partition::AEr: return {QubitLabel::A, QubitLabel::ER};
        case Partition::REr: return {QubitLabel::R, QubitLabel::ER};
        case Partition::REa: return {QubitLabel::R, QubitLabel::EA};
        case Partition::EaEr: return {QubitLabel::EA, QubitLabel::ER};
    }
    return {QubitLabel::A, QubitLabel::R};
}

DensityMatrix reduce(const DensityMatrix& total, std::pair<QubitLabel, QubitLabel> labels) {
    if (labels.first == labels.second) throw LabelError("reduce: labels must be distinct");
    const std::array<QubitLabel, 2> pair{labels.first, labels.second};
    return reorder(partial_trace(total, pair), pair);
}

DensityMatrix reduce(const DensityMatrix& total, Partition partition) {
    return reduce(total, partition_labels(partition));
}

DensityMatrix evolve_from_params(const XParams& params, const AccelParams& accel,
                                 const ChannelSpec& spec, bool allow_nonphysical) {
    return evolve_total(apply_unruh(x_state(params, allow_nonphysical), accel), spec);
}

}  // namespace unruhx
