// sweep.hpp
// (r, p) grid sweeps of every bipartition's concurrence and negativity, and
// location of sudden-death / sudden-birth boundaries along one axis.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "unruhx/model.hpp"

namespace unruhx {

// Inclusive uniform grid: steps points from min to max.
struct Grid {
    double min = 0.0;
    double max = 1.0;
    std::size_t steps = 2;

    double at(std::size_t i) const noexcept;
    std::vector<double> values() const;
};

// How the swept decay value p maps onto the two environments.
enum class DecaySchedule { equal, sweep_r_fixed_a, sweep_a_fixed_r };

struct SweepConfig {
    XParams params = XParams::bell();
    ChannelKind channel = ChannelKind::amplitude;
    DecaySchedule schedule = DecaySchedule::equal;
    double fixed_p = 0.0;  // the non-swept side for the two fixed schedules
    Grid r_grid{0.0, 0.7853981633974483, 65};
    Grid p_grid{0.0, 1.0, 65};
    std::vector<Partition> partitions{kAllPartitions.begin(), kAllPartitions.end()};
    bool allow_nonphysical = false;
    unsigned threads = 0;  // 0 = hardware concurrency

    void validate() const;
    ChannelSpec channel_at(double p) const;
};

struct PointMeasures {
    double concurrence = 0.0;
    double negativity = 0.0;
};

struct SweepRow {
    double r = 0.0;
    double p = 0.0;
    std::vector<PointMeasures> measures;  // parallel to SweepTable::partitions
};

struct SweepTable {
    std::vector<Partition> partitions;
    std::vector<SweepRow> rows;
    bool nonphysical = false;
};

// Concurrence (X fast path when X-type, spectral otherwise) and negativity
// of each requested partition at one (r, p) point.
std::vector<PointMeasures> evaluate_point(const SweepConfig& cfg, double r, double p);

// Rows are r-major (r outer ascending, p inner ascending) whatever the
// thread count.
SweepTable run_sweep(const SweepConfig& cfg);

enum class BoundaryKind { SD, SB };
enum class Axis { r, p };

struct BoundaryQuery {
    BoundaryKind kind = BoundaryKind::SD;
    Partition partition = Partition::AR;
    Axis scan_axis = Axis::p;
    double fixed_value = 0.0;
    double zero_tol = 1e-9;
    double axis_tol = 1e-6;
};

inline constexpr std::size_t kBoundaryPrescan = 64;

struct BoundaryResult {
    BoundaryQuery query;
    std::optional<double> value;   // nullopt: no transition in range
    std::size_t multiplicity = 0;  // interior transitions of this kind in the pre-scan
};

// Pre-scans the scan axis (range taken from the matching grid of cfg) at 64
// uniform points, brackets the first transition and bisects to axis_tol.
// SD: concurrence goes from > zero_tol to <= zero_tol; SB the reverse.
// Crossings that bisect down onto either end of the range are dropped, so
// a measure that only vanishes at the endpoint itself reports no boundary.
BoundaryResult find_boundary(const SweepConfig& cfg, const BoundaryQuery& query);

std::string_view boundary_kind_name(BoundaryKind kind) noexcept;
BoundaryKind parse_boundary_kind(std::string_view name);
std::string_view axis_name(Axis axis) noexcept;

// Header r,p,C_<part>...,N_<part>... in canonical partition order; values
// with 9 significant digits. Returns the number of bytes written.
std::size_t write_csv(const SweepTable& table, std::ostream& out);
std::size_t write_csv(const SweepTable& table, const std::filesystem::path& path);

// fixed_axis,value,boundary_axis,value,kind,partition,multiplicity
std::size_t write_boundary_csv(const std::vector<BoundaryResult>& results, std::ostream& out);

std::string format_value(double v);

}  // namespace unruhx
