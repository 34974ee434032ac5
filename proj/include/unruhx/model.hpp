// model.hpp
// X-type initial states, the fermionic Unruh map for Rob's mode, and the
// amplitude/phase damping environments attached to both qubits.

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unruhx/qmat.hpp"

namespace unruhx {

// rho = 1/4 (I + sum_i c_i sigma_i (x) sigma_i), signed c_i in [-1, 1].
// The Bell state |Phi+> is (1, -1, 1); (1, 1, 1) is not a state.
struct XParams {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    // Eigenvalues 1/4(1+c1-c2+c3), 1/4(1-c1+c2+c3), 1/4(1+c1+c2-c3), 1/4(1-c1-c2-c3).
    std::array<double, 4> bell_diagonal_spectrum() const noexcept;
    double min_eigenvalue() const noexcept;
    // Largest achievable minimum eigenvalue over the 8 sign assignments of |c_i|.
    double best_sign_min_eigenvalue() const noexcept;
    bool valid() const noexcept;

    static XParams bell() { return {1.0, -1.0, 1.0}; }
    static XParams werner(double c) { return {c, -c, c}; }
};

inline constexpr double kXParamsTol = 1e-12;

// Parses "bell" or "werner:<c>".
XParams parse_preset(std::string_view preset);

// Raised when X-state parameters are not a density matrix. Carries both the
// minimum eigenvalue of the signed input and the best case over sign choices.
class InvalidXParamsError : public NonphysicalError {
public:
    InvalidXParamsError(const XParams& params, double min_eig, double best_sign_min_eig);
    const XParams& params() const noexcept { return params_; }
    double best_sign_min_eigenvalue() const noexcept { return best_; }

private:
    XParams params_;
    double best_;
};

// Acceleration parameter r in [0, pi/4]; cos r = (exp(-2 pi omega c / a) + 1)^(-1/2).
struct AccelParams {
    double r = 0.0;

    static AccelParams from_r(double r);
};

AccelParams r_from_acceleration(double omega, double a, double c_light);

enum class ChannelKind { amplitude, phase };
enum class Side { A, R };

std::string_view channel_name(ChannelKind kind) noexcept;
ChannelKind parse_channel(std::string_view name);

struct ChannelSpec {
    ChannelKind kind = ChannelKind::amplitude;
    double p_a = 0.0;
    double p_r = 0.0;

    static ChannelSpec equal(ChannelKind kind, double p) { return {kind, p, p}; }
    void validate() const;
};

struct KrausSet {
    std::vector<CMatrix> operators;
};

inline constexpr double kCompletenessTol = 1e-12;

DensityMatrix x_state(const XParams& params, bool allow_nonphysical = false);

// 4x2 isometry |0> -> cos r |0_I 0_II> + sin r |1_I 1_II>, |1> -> |1_I 0_II>.
CMatrix unruh_isometry(const AccelParams& accel);

// Extends R to (R, RII) and traces RII out. Other qubits are untouched.
DensityMatrix apply_unruh(const DensityMatrix& rho, const AccelParams& accel);

// 4x2 isometry with rows indexed (system, environment).
//   amplitude: |1> -> sqrt(q)|1,0> + sqrt(p)|0,1>
//   phase:     |1> -> sqrt(q)|1,0> + sqrt(p)|1,1>
// and |0> -> |0,0> for both.
CMatrix channel_isometry(const ChannelSpec& spec, Side side);

// M_mu = <mu|_E V; throws ValidationError if completeness fails.
KrausSet kraus_from_isometry(const CMatrix& iso);

// Attaches EA, ER in |0> and applies the two channel isometries.
// Output subsystems are (A, R, EA, ER).
DensityMatrix evolve_total(const DensityMatrix& rho_ar, const ChannelSpec& spec);

DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausSet& kraus, QubitLabel target);

// Two-qubit bipartitions of the (A, R, EA, ER) state.
enum class Partition { AR, AEa, AEr, REr, REa, EaEr };

inline constexpr std::array<Partition, 6> kAllPartitions = {
    Partition::AR, Partition::AEa, Partition::AEr, Partition::REr, Partition::REa, Partition::EaEr};

std::string_view partition_name(Partition p) noexcept;
Partition parse_partition(std::string_view name);
std::pair<QubitLabel, QubitLabel> partition_labels(Partition p) noexcept;

DensityMatrix reduce(const DensityMatrix& total, std::pair<QubitLabel, QubitLabel> labels);
DensityMatrix reduce(const DensityMatrix& total, Partition partition);

// x_state -> apply_unruh -> evolve_total.
DensityMatrix evolve_from_params(const XParams& params, const AccelParams& accel,
                                 const ChannelSpec& spec, bool allow_nonphysical = false);

}  // namespace unruhx
