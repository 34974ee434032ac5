#include "unruhx/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "unruhx/entanglement.hpp"

namespace unruhx {

double Grid::at(std::size_t i) const noexcept {
    if (i + 1 >= steps) return max;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::vector<double> Grid::values() const {
    std::vector<double> v(steps);
    for (std::size_t i = 0; i < steps; ++i) v[i] = at(i);
    return v;
}

void SweepConfig::validate() const {
    if (r_grid.steps < 2 || p_grid.steps < 2) throw ValidationError("grids need at least 2 steps");
    if (!(r_grid.min <= r_grid.max) || !(p_grid.min <= p_grid.max))
        throw ValidationError("grid min must not exceed max");
    AccelParams::from_r(r_grid.min);
    AccelParams::from_r(r_grid.max);
    channel_at(p_grid.min).validate();
    channel_at(p_grid.max).validate();
    // Rejects invalid X parameters before any grid point is computed.
    x_state(params, allow_nonphysical);
}

ChannelSpec SweepConfig::channel_at(double p) const {
    switch (schedule) {
        case DecaySchedule::equal: return {channel, p, p};
        case DecaySchedule::sweep_r_fixed_a: return {channel, fixed_p, p};
        case DecaySchedule::sweep_a_fixed_r: return {channel, p, fixed_p};
    }
    return {channel, p, p};
}

std::vector<PointMeasures> evaluate_point(const SweepConfig& cfg, double r, double p) {
    const DensityMatrix total = evolve_from_params(cfg.params, AccelParams::from_r(r),
                                                   cfg.channel_at(p), cfg.allow_nonphysical);
    std::vector<PointMeasures> out;
    out.reserve(cfg.partitions.size());
    for (Partition part : cfg.partitions) {
        const DensityMatrix rho = reduce(total, part);
        out.push_back({concurrence_auto(rho).value, ppt_test(rho).negativity});
    }
    return out;
}

SweepTable run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    SweepTable table;
    table.partitions = cfg.partitions;
    table.nonphysical = !cfg.params.valid();

    const std::size_t nr = cfg.r_grid.steps, np = cfg.p_grid.steps;
    table.rows.resize(nr * np);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t k = next++; k < nr * np; k = next++) {
            try {
                SweepRow& row = table.rows[k];
                row.r = cfg.r_grid.at(k / np);
                row.p = cfg.p_grid.at(k % np);
                row.measures = evaluate_point(cfg, row.r, row.p);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, nr * np));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);
    return table;
}

std::string_view boundary_kind_name(BoundaryKind kind) noexcept {
    return kind == BoundaryKind::SD ? "SD" : "SB";
}

BoundaryKind parse_boundary_kind(std::string_view name) {
    if (name == "SD" || name == "sd") return BoundaryKind::SD;
    if (name == "SB" || name == "sb") return BoundaryKind::SB;
    throw ValidationError("unknown boundary kind '" + std::string(name) + "' (expected SD or SB)");
}

std::string_view axis_name(Axis axis) noexcept { return axis == Axis::r ? "r" : "p"; }

BoundaryResult find_boundary(const SweepConfig& cfg, const BoundaryQuery& query) {
    SweepConfig point_cfg = cfg;
    point_cfg.partitions = {query.partition};
    point_cfg.validate();

    const Grid& range = query.scan_axis == Axis::p ? cfg.p_grid : cfg.r_grid;
    auto entangled = [&](double x) {
        const double r = query.scan_axis == Axis::r ? x : query.fixed_value;
        const double p = query.scan_axis == Axis::p ? x : query.fixed_value;
        return evaluate_point(point_cfg, r, p).front().concurrence > query.zero_tol;
    };
    // SD: entangled -> separable; SB: separable -> entangled.
    const bool before = query.kind == BoundaryKind::SD;

    const Grid scan{range.min, range.max, kBoundaryPrescan};
    std::vector<bool> state(kBoundaryPrescan);
    for (std::size_t i = 0; i < kBoundaryPrescan; ++i) state[i] = entangled(scan.at(i));

    std::vector<std::size_t> brackets;
    for (std::size_t i = 0; i + 1 < kBoundaryPrescan; ++i)
        if (state[i] == before && state[i + 1] != before) brackets.push_back(i);

    BoundaryResult result{query, std::nullopt, brackets.size()};
    for (std::size_t i : brackets) {
        double lo = scan.at(i), hi = scan.at(i + 1);
        while (hi - lo > query.axis_tol) {
            const double mid = 0.5 * (lo + hi);
            (entangled(mid) == before ? lo : hi) = mid;
        }
        // A crossing that converges onto an end of the range is the limit
        // value there (e.g. C -> 0 only as p -> 1), not a transition.
        if (lo == range.min || hi == range.max) {
            --result.multiplicity;
            continue;
        }
        result.value = 0.5 * (lo + hi);
        break;
    }
    return result;
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::size_t write_csv(const SweepTable& table, std::ostream& out) {
    // Columns follow the canonical partition order.
    std::vector<std::size_t> columns;
    for (Partition part : kAllPartitions) {
        auto it = std::find(table.partitions.begin(), table.partitions.end(), part);
        if (it != table.partitions.end())
            columns.push_back(static_cast<std::size_t>(it - table.partitions.begin()));
    }

    std::string text = "r,p";
    for (std::size_t c : columns) text += ",C_" + std::string(partition_name(table.partitions[c]));
    for (std::size_t c : columns) text += ",N_" + std::string(partition_name(table.partitions[c]));
    text += '\n';
    for (const auto& row : table.rows) {
        text += format_value(row.r) + "," + format_value(row.p);
        for (std::size_t c : columns) text += "," + format_value(row.measures[c].concurrence);
        for (std::size_t c : columns) text += "," + format_value(row.measures[c].negativity);
        text += '\n';
    }
    out << text;
    if (!out) throw IoError("write_csv: stream write failed");
    return text.size();
}

std::size_t write_csv(const SweepTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
    const std::size_t n = write_csv(table, out);
    out.flush();
    if (!out) throw IoError("cannot write " + path.string() + ": " + std::strerror(errno));
    return n;
}

std::size_t write_boundary_csv(const std::vector<BoundaryResult>& results, std::ostream& out) {
    std::string text = "fixed_axis,value,boundary_axis,value,kind,partition,multiplicity\n";
    for (const auto& res : results) {
        const Axis fixed = res.query.scan_axis == Axis::p ? Axis::r : Axis::p;
        text += std::string(axis_name(fixed)) + "," + format_value(res.query.fixed_value) + "," +
                std::string(axis_name(res.query.scan_axis)) + "," +
                (res.value ? format_value(*res.value) : std::string("none")) + "," +
                std::string(boundary_kind_name(res.query.kind)) + "," +
                std::string(partition_name(res.query.partition)) + "," +
                std::to_string(res.multiplicity) + "\n";
    }
    out << text;
    if (!out) throw IoError("write_boundary_csv: stream write failed");
    return text.size();
}

}  // namespace unruhx
