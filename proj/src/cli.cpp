#include "unruhx/cli.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "unruhx/analytic.hpp"
#include "unruhx/entanglement.hpp"
#include "unruhx/sweep.hpp"

namespace unruhx::cli {

namespace {

using json = nlohmann::ordered_json;

// Raw command-line values; unset options stay empty so that config-file
// values can fill them.
struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> out;
    bool json_output = false;
    bool allow_nonphysical = false;
    std::optional<std::string> preset;

    std::optional<double> c1, c2, c3;
    std::optional<std::string> r;
    std::optional<double> omega, a, c_light;
    std::optional<double> p, p_a, p_r;
    std::optional<std::string> channel;
    std::optional<std::string> partition;
    std::vector<std::string> partitions;

    std::optional<std::string> r_min, r_max;
    std::optional<std::size_t> r_steps;
    std::optional<double> p_min, p_max;
    std::optional<std::size_t> p_steps;
    std::optional<unsigned> threads;

    std::optional<std::string> kind;
    std::optional<std::string> fix;
    double zero_tol = 1e-9;
    double axis_tol = 1e-6;
};

// Values read from a --config document.
struct FileConfig {
    std::optional<XParams> c;
    std::optional<std::string> channel;
    std::optional<double> p, p_a, p_r;
    std::optional<double> r, omega, a, c_light;
    std::optional<Grid> r_grid, p_grid;
    std::vector<std::string> partitions;
    std::optional<bool> allow_nonphysical;
    std::optional<std::string> out;
};

double parse_double(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ValidationError("invalid " + std::string(what) + " '" + std::string(text) + "'");
    return v;
}

double json_angle(const json& v, std::string_view key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_angle(v.get<std::string>());
    throw ValidationError("config key '" + std::string(key) + "' must be a number or \"pi/4\"");
}

double json_number(const json& v, std::string_view key) {
    if (!v.is_number()) throw ValidationError("config key '" + std::string(key) + "' must be a number");
    return v.get<double>();
}

Grid json_grid(const json& v, std::string_view key, bool angular) {
    if (!v.is_object()) throw ValidationError("config key '" + std::string(key) + "' must be an object");
    Grid g;
    for (auto it = v.begin(); it != v.end(); ++it) {
        if (it.key() == "min") {
            g.min = angular ? json_angle(it.value(), "min") : json_number(it.value(), "min");
        } else if (it.key() == "max") {
            g.max = angular ? json_angle(it.value(), "max") : json_number(it.value(), "max");
        } else if (it.key() == "steps") {
            if (!it.value().is_number_unsigned())
                throw ValidationError("grid steps must be a positive integer");
            g.steps = it.value().get<std::size_t>();
        } else {
            throw ValidationError("unknown key '" + it.key() + "' in " + std::string(key));
        }
    }
    return g;
}

FileConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path + ": " + std::strerror(errno));
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config " + path + " must be a JSON object");

    FileConfig cfg;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        if (key == "c") {
            if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
                !v[2].is_number())
                throw ValidationError("config key 'c' must be an array of 3 numbers");
            cfg.c = XParams{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
        } else if (key == "channel") {
            if (!v.is_string()) throw ValidationError("config key 'channel' must be a string");
            cfg.channel = v.get<std::string>();
        } else if (key == "p") {
            cfg.p = json_number(v, key);
        } else if (key == "p_a") {
            cfg.p_a = json_number(v, key);
        } else if (key == "p_r") {
            cfg.p_r = json_number(v, key);
        } else if (key == "r") {
            cfg.r = json_angle(v, key);
        } else if (key == "omega") {
            cfg.omega = json_number(v, key);
        } else if (key == "a") {
            cfg.a = json_number(v, key);
        } else if (key == "c_light") {
            cfg.c_light = json_number(v, key);
        } else if (key == "r_grid") {
            cfg.r_grid = json_grid(v, key, true);
        } else if (key == "p_grid") {
            cfg.p_grid = json_grid(v, key, false);
        } else if (key == "partitions") {
            if (!v.is_array()) throw ValidationError("config key 'partitions' must be an array");
            for (const auto& e : v) {
                if (!e.is_string()) throw ValidationError("partition names must be strings");
                cfg.partitions.push_back(e.get<std::string>());
            }
        } else if (key == "allow_nonphysical") {
            if (!v.is_boolean()) throw ValidationError("config key 'allow_nonphysical' must be a boolean");
            cfg.allow_nonphysical = v.get<bool>();
        } else if (key == "out") {
            if (!v.is_string()) throw ValidationError("config key 'out' must be a string");
            cfg.out = v.get<std::string>();
        } else {
            throw ValidationError("unknown config key '" + key + "'");
        }
    }
    return cfg;
}

// Flags merged over the config file.
struct Resolved {
    Flags flags;
    FileConfig file;

    bool allow_nonphysical() const {
        return flags.allow_nonphysical || file.allow_nonphysical.value_or(false);
    }

    std::optional<std::string> out() const { return flags.out ? flags.out : file.out; }

    XParams params() const {
        std::optional<XParams> base;
        if (flags.preset) {
            base = parse_preset(*flags.preset);
        } else if (file.c) {
            base = file.c;
        }
        if (!base && !(flags.c1 && flags.c2 && flags.c3)) {
            throw ValidationError("state parameters missing: give --c1 --c2 --c3, --preset or config 'c'");
        }
        XParams x = base.value_or(XParams{});
        if (flags.c1) x.c1 = *flags.c1;
        if (flags.c2) x.c2 = *flags.c2;
        if (flags.c3) x.c3 = *flags.c3;
        return x;
    }

    std::optional<double> accel_r() const {
        if (flags.r) return AccelParams::from_r(parse_angle(*flags.r)).r;
        if (flags.omega || flags.a || flags.c_light) {
            if (!(flags.omega && flags.a && flags.c_light))
                throw ValidationError("--omega, --a and --c-light must be given together");
            return r_from_acceleration(*flags.omega, *flags.a, *flags.c_light).r;
        }
        if (file.r) return AccelParams::from_r(*file.r).r;
        if (file.omega || file.a || file.c_light) {
            if (!(file.omega && file.a && file.c_light))
                throw ValidationError("config keys omega, a and c_light must be given together");
            return r_from_acceleration(*file.omega, *file.a, *file.c_light).r;
        }
        return std::nullopt;
    }

    std::optional<ChannelKind> channel() const {
        if (flags.channel) return parse_channel(*flags.channel);
        if (file.channel) return parse_channel(*file.channel);
        return std::nullopt;
    }

    // (p_A, p_R) for single-point commands.
    std::pair<double, double> decay() const {
        auto pick = [](const std::optional<double>& f, const std::optional<double>& c) {
            return f ? f : c;
        };
        const auto p = pick(flags.p, file.p);
        const auto pa = flags.p_a ? flags.p_a : (flags.p ? std::nullopt : file.p_a);
        const auto pr = flags.p_r ? flags.p_r : (flags.p ? std::nullopt : file.p_r);
        if (pa || pr) {
            if (pa && pr) return {*pa, *pr};
            if (p) return {pa.value_or(*p), pr.value_or(*p)};
            throw ValidationError("give both p_a and p_r, or p");
        }
        if (!p) throw ValidationError("decay parameter missing: give --p or --p-a/--p-r");
        return {*p, *p};
    }

    std::vector<Partition> partitions() const {
        const auto& names = !flags.partitions.empty() ? flags.partitions : file.partitions;
        if (names.empty()) return {kAllPartitions.begin(), kAllPartitions.end()};
        std::vector<Partition> parts;
        for (const auto& n : names) {
            const Partition p = parse_partition(n);
            if (std::find(parts.begin(), parts.end(), p) == parts.end()) parts.push_back(p);
        }
        return parts;
    }

    Partition partition() const {
        if (flags.partition) return parse_partition(*flags.partition);
        const auto parts = flags.partitions.empty() ? file.partitions : flags.partitions;
        if (parts.size() == 1) return parse_partition(parts.front());
        throw ValidationError("partition missing: give --partition");
    }

    SweepConfig sweep_config() const {
        SweepConfig cfg;
        cfg.params = params();
        cfg.channel = channel().value_or(ChannelKind::amplitude);
        cfg.allow_nonphysical = allow_nonphysical();
        cfg.partitions = partitions();
        if (file.r_grid) cfg.r_grid = *file.r_grid;
        if (file.p_grid) cfg.p_grid = *file.p_grid;
        if (flags.r_min) cfg.r_grid.min = parse_angle(*flags.r_min);
        if (flags.r_max) cfg.r_grid.max = parse_angle(*flags.r_max);
        if (flags.r_steps) cfg.r_grid.steps = *flags.r_steps;
        if (flags.p_min) cfg.p_grid.min = *flags.p_min;
        if (flags.p_max) cfg.p_grid.max = *flags.p_max;
        if (flags.p_steps) cfg.p_grid.steps = *flags.p_steps;
        if (flags.threads) cfg.threads = *flags.threads;

        const auto pa = flags.p_a ? flags.p_a : file.p_a;
        const auto pr = flags.p_r ? flags.p_r : file.p_r;
        if (pa && pr) throw ValidationError("sweep needs one side swept: give at most one of p_a, p_r");
        if (pa) {
            cfg.schedule = DecaySchedule::sweep_r_fixed_a;
            cfg.fixed_p = *pa;
        } else if (pr) {
            cfg.schedule = DecaySchedule::sweep_a_fixed_r;
            cfg.fixed_p = *pr;
        }
        return cfg;
    }
};

void emit(const Resolved& res, const std::string& text, std::ostream& out) {
    if (const auto path = res.out()) {
        std::ofstream file(*path, std::ios::binary);
        if (!file) throw IoError("cannot open " + *path + ": " + std::strerror(errno));
        file << text;
        file.flush();
        if (!file) throw IoError("cannot write " + *path + ": " + std::strerror(errno));
    } else {
        out << text;
    }
}

json params_json(const XParams& x) { return json::array({x.c1, x.c2, x.c3}); }

json matrix_json(const CMatrix& m) {
    json re = json::array(), im = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json rr = json::array(), ii = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            rr.push_back(m(i, j).real());
            ii.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ii));
    }
    return json{{"re", re}, {"im", im}};
}

std::string text_matrix(const CMatrix& m) {
    bool complex_entries = false;
    for (const auto& z : m.entries()) complex_entries |= z.imag() != 0.0;
    std::string s;
    char buf[64];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += " ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (complex_entries) {
                std::snprintf(buf, sizeof buf, " %14.9f%+.9fi", m(i, j).real(), m(i, j).imag());
            } else {
                std::snprintf(buf, sizeof buf, " %14.9f", m(i, j).real());
            }
            s += buf;
        }
        s += '\n';
    }
    return s;
}

int cmd_evolve(const Resolved& res, std::ostream& out) {
    const XParams x = res.params();
    const auto r = res.accel_r();
    if (!r) throw ValidationError("acceleration missing: give --r or --omega/--a/--c-light");
    const auto [pa, pr] = res.decay();
    const ChannelSpec spec{res.channel().value_or(ChannelKind::amplitude), pa, pr};
    const Partition part = res.partition();

    const DensityMatrix total =
        evolve_from_params(x, AccelParams::from_r(*r), spec, res.allow_nonphysical());
    const DensityMatrix rho = reduce(total, part);
    const ConcurrenceResult conc = concurrence_auto(rho);
    const PptResult ppt = ppt_test(rho);
    const auto labels = partition_labels(part);

    std::string text;
    if (res.flags.json_output) {
        json doc;
        doc["params"] = params_json(x);
        doc["nonphysical"] = !x.valid();
        doc["channel"] = channel_name(spec.kind);
        doc["r"] = *r;
        doc["p_a"] = spec.p_a;
        doc["p_r"] = spec.p_r;
        doc["partition"] = partition_name(part);
        doc["labels"] = {label_name(labels.first), label_name(labels.second)};
        doc["matrix"] = matrix_json(rho.matrix());
        doc["concurrence"] = conc.value;
        doc["concurrence_method"] = method_name(conc.method);
        doc["lambdas"] = conc.lambdas;
        doc["negativity"] = ppt.negativity;
        doc["ppt_min_eigenvalue"] = ppt.min_eigenvalue;
        doc["verdict"] = ppt.verdict == PptVerdict::entangled ? "entangled" : "ppt";
        text = doc.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "partition " << partition_name(part) << "  basis |" << label_name(labels.first) << ' '
           << label_name(labels.second) << ">  channel " << channel_name(spec.kind)
           << "  r " << format_value(*r) << "  p_A " << format_value(spec.p_a) << "  p_R "
           << format_value(spec.p_r) << (x.valid() ? "" : "  [nonphysical]") << "\n";
        os << "rho =\n" << text_matrix(rho.matrix());
        os << "concurrence " << format_value(conc.value) << " (" << method_name(conc.method) << ")\n";
        os << "negativity " << format_value(ppt.negativity) << "\n";
        os << "ppt_min_eigenvalue " << format_value(ppt.min_eigenvalue) << "\n";
        os << "verdict " << (ppt.verdict == PptVerdict::entangled ? "entangled" : "ppt") << "\n";
        text = os.str();
    }
    emit(res, text, out);
    return kExitOk;
}

json sweep_metadata(const SweepConfig& cfg, const SweepTable& table) {
    json doc;
    doc["params"] = params_json(cfg.params);
    doc["nonphysical"] = table.nonphysical;
    doc["channel"] = channel_name(cfg.channel);
    doc["r_grid"] = {{"min", cfg.r_grid.min}, {"max", cfg.r_grid.max}, {"steps", cfg.r_grid.steps}};
    doc["p_grid"] = {{"min", cfg.p_grid.min}, {"max", cfg.p_grid.max}, {"steps", cfg.p_grid.steps}};
    json parts = json::array();
    for (Partition p : cfg.partitions) parts.push_back(partition_name(p));
    doc["partitions"] = parts;
    doc["rows"] = table.rows.size();
    return doc;
}

int cmd_sweep(const Resolved& res, std::ostream& out, std::ostream& err) {
    const SweepConfig cfg = res.sweep_config();
    const SweepTable table = run_sweep(cfg);
    const json meta = sweep_metadata(cfg, table);
    if (const auto path = res.out()) {
        const std::size_t bytes = write_csv(table, std::filesystem::path(*path));
        const std::string meta_path = *path + ".meta.json";
        std::ofstream mf(meta_path, std::ios::binary);
        if (!mf) throw IoError("cannot open " + meta_path + ": " + std::strerror(errno));
        mf << meta.dump(2) << "\n";
        if (!mf) throw IoError("cannot write " + meta_path + ": " + std::strerror(errno));
        if (res.flags.json_output) {
            out << meta.dump(2) << "\n";
        } else {
            out << "wrote " << table.rows.size() << " rows (" << bytes << " bytes) to " << *path
                << (table.nonphysical ? " [nonphysical]" : "") << "\n";
        }
    } else {
        write_csv(table, out);
        err << "# " << meta.dump() << "\n";
    }
    return kExitOk;
}

int cmd_boundary(const Resolved& res, std::ostream& out) {
    SweepConfig cfg = res.sweep_config();
    BoundaryQuery query;
    if (!res.flags.kind) throw ValidationError("boundary needs --kind SD|SB");
    query.kind = parse_boundary_kind(*res.flags.kind);
    query.partition = res.partition();
    query.zero_tol = res.flags.zero_tol;
    query.axis_tol = res.flags.axis_tol;
    if (!(query.zero_tol >= 0.0) || !(query.axis_tol > 0.0))
        throw ValidationError("tolerances must be positive");

    if (res.flags.fix) {
        const std::string& fix = *res.flags.fix;
        const auto eq = fix.find('=');
        if (eq == std::string::npos) throw ValidationError("--fix expects r=<value> or p=<value>");
        const std::string axis = fix.substr(0, eq);
        const std::string value = fix.substr(eq + 1);
        if (axis == "r") {
            query.scan_axis = Axis::p;
            query.fixed_value = AccelParams::from_r(parse_angle(value)).r;
        } else if (axis == "p") {
            query.scan_axis = Axis::r;
            query.fixed_value = parse_double(value, "p");
            ChannelSpec::equal(cfg.channel, query.fixed_value).validate();
        } else {
            throw ValidationError("--fix axis must be r or p");
        }
    } else if (const auto r = res.accel_r()) {
        query.scan_axis = Axis::p;
        query.fixed_value = *r;
    } else {
        throw ValidationError("boundary needs --fix r=<value> or --fix p=<value>");
    }

    const BoundaryResult result = find_boundary(cfg, query);
    std::string text;
    if (res.flags.json_output) {
        json doc;
        doc["fixed_axis"] = axis_name(query.scan_axis == Axis::p ? Axis::r : Axis::p);
        doc["fixed_value"] = query.fixed_value;
        doc["boundary_axis"] = axis_name(query.scan_axis);
        doc["boundary_value"] = result.value ? json(*result.value) : json("none");
        doc["kind"] = boundary_kind_name(query.kind);
        doc["partition"] = partition_name(query.partition);
        doc["multiplicity"] = result.multiplicity;
        doc["nonphysical"] = !cfg.params.valid();
        text = doc.dump(2) + "\n";
    } else {
        std::ostringstream os;
        write_boundary_csv({result}, os);
        text = os.str();
    }
    emit(res, text, out);
    return kExitOk;
}

int cmd_verify(const Resolved& res, std::ostream& out, std::ostream& err) {
    const XParams x = res.params();
    std::vector<ChannelKind> kinds;
    if (const auto ch = res.channel()) {
        kinds = {*ch};
    } else {
        kinds = {ChannelKind::amplitude, ChannelKind::phase};
    }

    // A single point from --r/--p, otherwise the configured grid.
    std::vector<std::pair<double, double>> points;
    const auto r = res.accel_r();
    const auto p = res.flags.p ? res.flags.p : res.file.p;
    if (r && p) {
        points.emplace_back(*r, *p);
    } else {
        const SweepConfig cfg = res.sweep_config();
        if (!(res.file.r_grid || res.flags.r_steps) || !(res.file.p_grid || res.flags.p_steps))
            throw ValidationError("verify needs --r and --p, or r_grid and p_grid");
        for (double rv : cfg.r_grid.values())
            for (double pv : cfg.p_grid.values()) points.emplace_back(rv, pv);
    }

    ErrataReport report;
    for (const auto& [rv, pv] : points) {
        bool unruh_done = false;
        for (ChannelKind kind : kinds) {
            ErrataReport part = audit(x, rv, pv, kind, res.allow_nonphysical());
            if (unruh_done) {
                std::erase_if(part.records, [](const ErrataRecord& rec) {
                    return rec.equation_id == kUnruhEquationId;
                });
            }
            unruh_done = true;
            if (points.size() > 1) {
                for (auto& rec : part.records)
                    rec.note = "r=" + format_value(rv) + " p=" + format_value(pv) + "; " + rec.note;
            }
            report.append(part);
        }
    }

    std::ostringstream summary;
    summary << "entries: " << report.count(AuditStatus::match, true) << " match, "
            << report.count(AuditStatus::mismatch, true) << " mismatch\n";
    const std::size_t diag_mismatch =
        report.count(AuditStatus::mismatch, false) - report.count(AuditStatus::mismatch, true);
    const std::size_t diag_match =
        report.count(AuditStatus::match, false) - report.count(AuditStatus::match, true);
    summary << "diagnostics: " << diag_match << " match, " << diag_mismatch << " mismatch\n";
    for (const auto& rec : report.records) {
        if (rec.status != AuditStatus::mismatch) continue;
        summary << "  " << rec.equation_id << " " << rec.partition;
        if (rec.is_entry()) summary << " (" << rec.entry[0] << "," << rec.entry[1] << ")";
        summary << " paper " << format_value(rec.paper_value) << " numeric "
                << format_value(rec.numeric_value) << " residual " << format_value(rec.residual)
                << " - " << rec.note << "\n";
    }
    if (!x.valid()) summary << "note: parameters are nonphysical\n";

    const std::string doc = to_json(report) + "\n";
    if (res.out()) {
        emit(res, doc, out);
        out << summary.str();
    } else {
        out << doc;
        err << summary.str();
    }
    return kExitOk;
}

void add_shared(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON config file");
    sub->add_option("--out", f.out, "Output path");
    sub->add_flag("--json", f.json_output, "JSON output");
    sub->add_flag("--allow-nonphysical", f.allow_nonphysical, "Accept non-PSD X parameters");
    sub->add_option("--preset", f.preset, "bell | werner:<c>");
    sub->add_option("--c1", f.c1);
    sub->add_option("--c2", f.c2);
    sub->add_option("--c3", f.c3);
    sub->add_option("--channel", f.channel, "amplitude | phase");
}

void add_accel(CLI::App* sub, Flags& f) {
    sub->add_option("--r", f.r, "Acceleration parameter in radians, or pi/4");
    sub->add_option("--omega", f.omega);
    sub->add_option("--a", f.a);
    sub->add_option("--c-light", f.c_light);
}

void add_decay(CLI::App* sub, Flags& f) {
    sub->add_option("--p", f.p, "Decay probability for both environments");
    sub->add_option("--p-a", f.p_a);
    sub->add_option("--p-r", f.p_r);
}

void add_grid(CLI::App* sub, Flags& f) {
    sub->add_option("--r-min", f.r_min);
    sub->add_option("--r-max", f.r_max);
    sub->add_option("--r-steps", f.r_steps);
    sub->add_option("--p-min", f.p_min);
    sub->add_option("--p-max", f.p_max);
    sub->add_option("--p-steps", f.p_steps);
    sub->add_option("--threads", f.threads);
}

}  // namespace

double parse_angle(std::string_view text) {
    if (text == "pi/4") return std::numbers::pi / 4.0;
    return parse_double(text, "angle");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement of damped X-type states seen by an accelerated observer", "unruhx"};
    app.require_subcommand(1);
    Flags f;

    auto* evolve = app.add_subcommand("evolve", "Evolve one point and report a bipartition");
    add_shared(evolve, f);
    add_accel(evolve, f);
    add_decay(evolve, f);
    evolve->add_option("--partition", f.partition, "AR | AEa | AEr | REr | REa | EaEr");

    auto* sweep = app.add_subcommand("sweep", "Grid sweep over (r, p) to CSV");
    add_shared(sweep, f);
    add_decay(sweep, f);
    add_grid(sweep, f);
    sweep->add_option("--partitions", f.partitions)->delimiter(',');

    auto* boundary = app.add_subcommand("boundary", "Locate a sudden death / birth boundary");
    add_shared(boundary, f);
    add_accel(boundary, f);
    add_decay(boundary, f);
    add_grid(boundary, f);
    boundary->add_option("--kind", f.kind, "SD | SB");
    boundary->add_option("--partition", f.partition);
    boundary->add_option("--fix", f.fix, "r=<value> (scan p) or p=<value> (scan r)");
    boundary->add_option("--zero-tol", f.zero_tol);
    boundary->add_option("--axis-tol", f.axis_tol);

    auto* verify = app.add_subcommand("verify", "Audit the published closed forms");
    add_shared(verify, f);
    add_accel(verify, f);
    add_decay(verify, f);
    add_grid(verify, f);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        Resolved res{f, {}};
        if (f.config) res.file = load_config(*f.config);
        if (evolve->parsed()) return cmd_evolve(res, out);
        if (sweep->parsed()) return cmd_sweep(res, out, err);
        if (boundary->parsed()) return cmd_boundary(res, out);
        return cmd_verify(res, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

}  // namespace unruhx::cli
