#include "unruhx/analytic.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "unruhx/entanglement.hpp"

namespace unruhx {

namespace {

CMatrix quarter(std::initializer_list<std::initializer_list<Complex>> rows) {
    CMatrix m(rows);
    m *= 0.25;
    return m;
}

// Published amplitude-damping forms.
CMatrix printed_amplitude(Partition partition, const GreekCoeffs& g, double p) {
    const double q = g.q;
    const double s = std::sqrt(p * q);
    const double b = g.beta, gm = g.gamma, e = g.eps_small;
    const double cm = g.c_minus * g.cos_r, cp = g.c_plus * g.cos_r;
    switch (partition) {
        case Partition::AR:
            return quarter({{g.alpha, 0, 0, q * cm},
                            {0, q * (gm + b * p), q * cp, 0},
                            {0, q * cp, q * (e + b * p), 0},
                            {q * cm, 0, 0, b * q * q}});
        case Partition::REr:
            return quarter({{2 * g.cos_r * g.cos_r, 0, 0, 0},
                            {0, p * (b + gm), s * (b + gm), 0},
                            {0, s * (b + gm), q * (b + gm), 0},
                            {0, 0, 0, 0}});
        case Partition::REa:
            return quarter({{g.delta, 0, 0, s * cm},
                            {0, q * (gm + b * q), s * cp, 0},
                            {0, s * cp, p * (e + b * p), 0},
                            {s * cm, 0, 0, b * p * q}});
        case Partition::EaEr:
            return quarter({{g.chi, 0, 0, p * cm},
                            {0, p * (gm + b * q), p * cp, 0},
                            {0, p * cp, p * (e + b * q), 0},
                            {p * cm, 0, 0, b * p * p}});
        default: break;
    }
    throw ValidationError("no published amplitude-damping form for partition " +
                          std::string(partition_name(partition)));
}

// Published phase-damping forms.
CMatrix printed_phase(Partition partition, const GreekCoeffs& g, double p) {
    const double q = g.q;
    const double s = std::sqrt(p * q);
    const double b = g.beta, gm = g.gamma, e = g.eps_small, E = g.eps_big;
    const double cm = g.c_minus * g.cos_r, cp = g.c_plus * g.cos_r;
    switch (partition) {
        case Partition::AR:
            return quarter({{E, 0, 0, q * cm}, {0, gm, q * cp, 0}, {0, q * cp, e, 0}, {q * cm, 0, 0, b}});
        case Partition::REr:
            return quarter({{2 * g.cos_r * g.cos_r, 0, 0, 0},
                            {0, 0, 0, 0},
                            {0, 0, q * (b + gm), s * (b + gm)},
                            {0, 0, s * (b + gm), p * (b + gm)}});
        case Partition::REa:
            return quarter({{e * q + E, 0, s * e, 0},
                            {0, gm + b * q, 0, b * s},
                            {s * e, 0, e * p, 0},
                            {0, b * s, 0, b * p * p}});
        case Partition::EaEr:
            return quarter({{g.varpi, s * (gm + b * q), s * (e + b * q), b * p * q},
                            {s * (gm + b * q), (gm + b * q) * p, b * p * q, b * p * s},
                            {s * (e + b * q), b * p * q, p * (e + b * q), b * p * s},
                            {b * p * q, b * p * s, b * p * s, b * p * p}});
        default: break;
    }
    throw ValidationError("no published phase-damping form for partition " +
                          std::string(partition_name(partition)));
}

void check_inputs(double r, double p) {
    AccelParams::from_r(r);
    ChannelSpec::equal(ChannelKind::amplitude, p).validate();
}

std::string format_g(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string entry_key(int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

ErrataRecord make_record(std::string_view eq, std::string_view partition, std::array<int, 2> entry,
                         double paper, double numeric, std::string note) {
    ErrataRecord rec;
    rec.equation_id = std::string(eq);
    rec.partition = std::string(partition);
    rec.entry = entry;
    rec.paper_value = paper;
    rec.numeric_value = numeric;
    rec.residual = std::abs(paper - numeric);
    rec.status = rec.residual > kAuditTol ? AuditStatus::mismatch : AuditStatus::match;
    rec.note = std::move(note);
    return rec;
}

// Entry, trace and minimum-eigenvalue records for one published matrix.
void compare_matrix(ErrataReport& report, std::string_view eq, std::string_view partition,
                    const CMatrix& printed, const CMatrix& numeric, std::string_view basis) {
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            const Complex pv = printed(i - 1, j - 1);
            const Complex nv = numeric(i - 1, j - 1);
            std::string note = "entry " + entry_key(i, j) + " in basis " + std::string(basis);
            if (std::abs(nv.imag()) > kAuditTol) note += "; numeric entry has imaginary part";
            auto rec = make_record(eq, partition, {i, j}, pv.real(), nv.real(), std::move(note));
            rec.residual = std::abs(pv - nv);
            rec.status = rec.residual > kAuditTol ? AuditStatus::mismatch : AuditStatus::match;
            report.records.push_back(std::move(rec));
        }
    report.records.push_back(make_record(eq, partition, {0, 0}, trace(printed).real(),
                                         trace(numeric).real(), "trace"));
    report.records.push_back(make_record(eq, partition, {0, 0}, diagnose(printed).min_eigenvalue,
                                         diagnose(numeric).min_eigenvalue, "min_eigenvalue"));
}

std::string basis_name(std::pair<QubitLabel, QubitLabel> labels) {
    return "|" + std::string(label_name(labels.first)) + " " + std::string(label_name(labels.second)) +
           ">";
}

}  // namespace

GreekCoeffs greek_coeffs(const XParams& x, double r, double p) {
    GreekCoeffs g;
    const double s2 = std::sin(r) * std::sin(r);
    const double c2 = std::cos(r) * std::cos(r);
    g.cos_r = std::cos(r);
    g.q = 1.0 - p;
    g.beta = (1 + x.c3) + s2 * (1 - x.c3);
    g.gamma = (1 - x.c3) + s2 * (1 + x.c3);
    g.eps_small = (1 - x.c3) * c2;
    g.eps_big = (1 + x.c3) * c2;
    g.alpha = g.eps_big + p * (2 * g.eps_small + g.beta * p);
    g.delta = g.eps_big + g.q * (g.beta * p + g.eps_small) + g.gamma * p;
    g.chi = g.eps_big + g.q * (g.beta * g.q + g.eps_small + g.gamma);
    g.varpi = g.eps_big + g.q * (g.beta * g.q + g.eps_small + g.gamma);
    g.c_plus = x.c1 + x.c2;
    g.c_minus = x.c1 - x.c2;
    return g;
}

std::string_view equation_id(Partition partition, ChannelKind kind) {
    const bool amp = kind == ChannelKind::amplitude;
    switch (partition) {
        case Partition::AR: return amp ? "r1ad" : "a1ad";
        case Partition::REr: return amp ? "r2ad" : "a2ad";
        case Partition::REa: return amp ? "r3ad" : "a3ad";
        case Partition::EaEr: return amp ? "r4ad" : "a4ad";
        default: break;
    }
    throw ValidationError("no published form for partition " + std::string(partition_name(partition)));
}

std::pair<QubitLabel, QubitLabel> printed_basis(Partition partition) {
    if (partition == Partition::REa) return {QubitLabel::EA, QubitLabel::R};
    return partition_labels(partition);
}

CMatrix analytic_reduced(Partition partition, ChannelKind kind, const XParams& params, double r,
                         double p) {
    check_inputs(r, p);
    const GreekCoeffs g = greek_coeffs(params, r, p);
    return kind == ChannelKind::amplitude ? printed_amplitude(partition, g, p)
                                          : printed_phase(partition, g, p);
}

CMatrix analytic_unruh_state(const XParams& x, double r) {
    check_inputs(r, 0.0);
    const double c = std::cos(r), s2 = std::sin(r) * std::sin(r);
    const double cm = (x.c1 - x.c2) * c, cp = (x.c1 + x.c2) * c;
    return quarter({{(1 + x.c3) * c * c, 0, 0, cm},
                    {0, (1 + x.c3) * s2 + (1 - x.c3), cp, 0},
                    {0, cp, (1 - x.c3) * c * c, 0},
                    {cm, 0, 0, (1 - x.c3) + (1 + x.c3) * s2}});
}

CMatrix corrected_reduced(Partition partition, ChannelKind kind, const XParams& params, double r,
                          double p) {
    CMatrix m = analytic_reduced(partition, kind, params, r, p);
    const GreekCoeffs g = greek_coeffs(params, r, p);
    if (kind == ChannelKind::amplitude && partition == Partition::AR) {
        m(0, 0) = 0.25 * (g.eps_big + p * (g.gamma + g.eps_small) + g.beta * p * p);
    } else if (kind == ChannelKind::phase && partition == Partition::REa) {
        m(3, 3) = 0.25 * g.beta * p;
    }
    return m;
}

CMatrix corrected_unruh_state(const XParams& params, double r) {
    CMatrix m = analytic_unruh_state(params, r);
    m(3, 3) = 0.25 * greek_coeffs(params, r, 0.0).beta;
    return m;
}

std::size_t ErrataReport::count(AuditStatus status, bool entries_only) const {
    std::size_t n = 0;
    for (const auto& rec : records)
        if (rec.status == status && (!entries_only || rec.is_entry())) ++n;
    return n;
}

void ErrataReport::append(const ErrataReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
}

ErrataReport audit(const XParams& params, double r, double p, ChannelKind kind,
                   bool allow_nonphysical) {
    check_inputs(r, p);
    ErrataReport report;
    const AccelParams accel = AccelParams::from_r(r);
    const DensityMatrix unruh = apply_unruh(x_state(params, allow_nonphysical), accel);
    const DensityMatrix total = evolve_total(unruh, ChannelSpec::equal(kind, p));

    compare_matrix(report, kUnruhEquationId, "AR", analytic_unruh_state(params, r), unruh.matrix(),
                   "|A R>");

    for (Partition part : kPrintedPartitions) {
        const auto basis = printed_basis(part);
        compare_matrix(report, equation_id(part, kind), partition_name(part),
                       analytic_reduced(part, kind, params, r, p), reduce(total, basis).matrix(),
                       basis_name(basis));
    }

    if (kind == ChannelKind::amplitude) {
        const DensityMatrix rer = reduce(total, Partition::REr);
        const DensityMatrix aea = reduce(total, Partition::AEa);
        report.records.push_back(make_record(
            "r2ad", "REr", {0, 0}, 0.0, concurrence_auto(rer).value,
            "concurrence C_REr; text claims it always equals zero, computed value from the evolved state"));
        report.records.push_back(make_record(
            "r2ad", "AEa", {0, 0}, 0.0, concurrence_auto(aea).value,
            "concurrence C_AEa; text claims it equals zero"));
        report.records.push_back(make_record(
            "r2ad", "AEa", {0, 0}, 0.0, max_abs_diff(aea.matrix(), rer.matrix()),
            "similarity claim: max |rho_AEa - rho_REr|; equal only at r = 0"));
    } else {
        for (Partition part : {Partition::REr, Partition::REa, Partition::EaEr}) {
            const PptResult ppt = ppt_test(reduce(total, part));
            report.records.push_back(make_record(
                equation_id(part, kind), partition_name(part), {0, 0}, 0.0, ppt.negativity,
                "negativity; text states no entanglement by the Peres criterion (PPT min eigenvalue " +
                    format_g(ppt.min_eigenvalue) + ")"));
        }
    }
    return report;
}

std::string to_json(const ErrataReport& report, int indent) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& rec : report.records) {
        nlohmann::ordered_json j;
        j["equation_id"] = rec.equation_id;
        j["partition"] = rec.partition;
        j["entry"] = {rec.entry[0], rec.entry[1]};
        j["paper_value"] = rec.paper_value;
        j["numeric_value"] = rec.numeric_value;
        j["residual"] = rec.residual;
        j["status"] = rec.status == AuditStatus::match ? "match" : "mismatch";
        j["note"] = rec.note;
        doc.push_back(std::move(j));
    }
    return doc.dump(indent);
}

}  // namespace unruhx
