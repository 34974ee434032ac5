// analytic.hpp
// Closed-form reduced states for the damped Unruh-X system: a verbatim
// transcription of the published matrices (misprints included), corrected
// forms, and an entry-by-entry audit of both against the numerical evolution.

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unruhx/model.hpp"

namespace unruhx {

struct GreekCoeffs {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double eps_small = 0.0;  // (1 - c3) cos^2 r
    double eps_big = 0.0;    // (1 + c3) cos^2 r
    double delta = 0.0;
    double chi = 0.0;
    double varpi = 0.0;
    double c_plus = 0.0;
    double c_minus = 0.0;
    double q = 1.0;
    double cos_r = 1.0;
};

GreekCoeffs greek_coeffs(const XParams& params, double r, double p);

// Equation ids used throughout reports.
//   eq8            Unruh-traced initial state (no environment)
//   r1ad..r4ad     amplitude damping: AR, REr, REa, EaEr
//   a1ad..a4ad     phase damping:     AR, REr, REa, EaEr
std::string_view equation_id(Partition partition, ChannelKind kind);
inline constexpr std::string_view kUnruhEquationId = "eq8";

// Partitions that have a published closed form.
inline constexpr std::array<Partition, 4> kPrintedPartitions = {Partition::AR, Partition::REr,
                                                                Partition::REa, Partition::EaEr};

// Basis order of the published matrix. The REa matrices are written in the
// |e_A r> order; all others follow the partition's own label order.
std::pair<QubitLabel, QubitLabel> printed_basis(Partition partition);

// Matrix exactly as published, including the 1/4 prefactor. Throws
// ValidationError for partitions without a published form.
CMatrix analytic_reduced(Partition partition, ChannelKind kind, const XParams& params, double r,
                         double p);
CMatrix analytic_unruh_state(const XParams& params, double r);

// Same tables with the misprinted entries fixed: r1ad (1,1) and a3ad (4,4),
// plus eq8 (4,4).
CMatrix corrected_reduced(Partition partition, ChannelKind kind, const XParams& params, double r,
                          double p);
CMatrix corrected_unruh_state(const XParams& params, double r);

enum class AuditStatus { match, mismatch };

inline constexpr double kAuditTol = 1e-9;

// One comparison. Matrix entries use 1-based (i, j); scalar diagnostics
// (trace, eigenvalue, concurrence and similarity claims) use entry (0, 0)
// and name the quantity in `note`.
struct ErrataRecord {
    std::string equation_id;
    std::string partition;
    std::array<int, 2> entry{0, 0};
    double paper_value = 0.0;
    double numeric_value = 0.0;
    double residual = 0.0;
    AuditStatus status = AuditStatus::match;
    std::string note;

    bool is_entry() const noexcept { return entry[0] > 0; }
};

struct ErrataReport {
    std::vector<ErrataRecord> records;

    std::size_t count(AuditStatus status, bool entries_only) const;
    void append(const ErrataReport& other);
};

ErrataReport audit(const XParams& params, double r, double p, ChannelKind kind,
                   bool allow_nonphysical = false);

// Top-level JSON array; keys equation_id, partition, entry, paper_value,
// numeric_value, residual, status, note.
std::string to_json(const ErrataReport& report, int indent = 2);

}  // namespace unruhx
