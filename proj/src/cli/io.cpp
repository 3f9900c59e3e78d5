#include "momentopt/cli/io.hpp"

#include <cfloat>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "momentopt/errors.hpp"

namespace momentopt::cli {

namespace {

[[noreturn]] void malformed(const std::string& what) {
    throw Error(ErrorKind::MalformedInput, what);
}

void append_number(std::string& out, double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    out.append(buf, static_cast<std::size_t>(len));
}

double parse_field(std::string_view field, std::size_t line) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || field.empty() || !std::isfinite(v)) {
        malformed("density csv: line " + std::to_string(line) + ": bad number '" +
                  std::string(field) + "'");
    }
    return v;
}

}  // namespace

DensityTable table_of(const SolutionProfile& profile) {
    DensityTable t;
    t.r.assign(profile.grid.nodes().begin(), profile.grid.nodes().end());
    t.u = profile.u;
    t.du = profile.du;
    t.lambda = profile.lambda;
    t.theta = profile.theta;
    return t;
}

std::string format_density_csv(const DensityTable& table) {
    std::string out = kDensityHeader;
    out += '\n';
    out.reserve(table.r.size() * 5 * 24);
    for (std::size_t i = 0; i < table.r.size(); ++i) {
        append_number(out, table.r[i]);
        out += ',';
        append_number(out, table.u[i]);
        out += ',';
        append_number(out, table.du[i]);
        out += ',';
        append_number(out, table.lambda[i]);
        out += ',';
        append_number(out, table.theta[i]);
        out += '\n';
    }
    return out;
}

void write_density_csv(const std::string& path, const SolutionProfile& profile) {
    write_text(path, format_density_csv(table_of(profile)));
}

DensityTable parse_density_csv(const std::string& text) {
    if (text.empty() || text.back() != '\n') malformed("density csv: missing final newline (truncated?)");
    DensityTable t;
    std::size_t pos = 0;
    std::size_t line = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view row(text.data() + pos, eol - pos);
        pos = eol + 1;
        ++line;
        if (!row.empty() && row.back() == '\r') malformed("density csv: CRLF line endings");
        if (line == 1) {
            if (row != kDensityHeader) {
                malformed("density csv: header must be '" + std::string(kDensityHeader) + "'");
            }
            continue;
        }
        double values[5];
        std::size_t field = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = row.find(',', start);
            const std::string_view piece =
                row.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            if (field >= 5) malformed("density csv: line " + std::to_string(line) + ": too many fields");
            values[field++] = parse_field(piece, line);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (field != 5) malformed("density csv: line " + std::to_string(line) + ": expected 5 fields");
        t.r.push_back(values[0]);
        t.u.push_back(values[1]);
        t.du.push_back(values[2]);
        t.lambda.push_back(values[3]);
        t.theta.push_back(values[4]);
    }
    if (t.r.size() < 3) malformed("density csv: need at least 3 data rows");
    return t;
}

DensityTable read_density_csv(const std::string& path) { return parse_density_csv(read_text(path)); }

SolutionProfile profile_from_table(DensityTable table, double epsilon, double c_const) {
    SolutionProfile prof;
    prof.epsilon = epsilon;
    prof.c_const = c_const;
    try {
        prof.grid = RadialGrid::from_nodes(table.r);
    } catch (const Error& e) {
        malformed(std::string("density csv: ") + e.what());
    }
    prof.p_star = table.r.front();
    prof.u = std::move(table.u);
    prof.du = std::move(table.du);
    prof.lambda = std::move(table.lambda);
    prof.theta = std::move(table.theta);
    prof.xi.resize(prof.lambda.size());
    for (std::size_t i = 0; i < prof.lambda.size(); ++i) {
        const double l = prof.lambda[i];
        if (l < 0.0) malformed("density csv: negative lambda");
        prof.xi[i] = l >= DBL_MIN ? std::log(l) : -INFINITY;
    }
    return prof;
}

void write_oracle_csv(const std::string& path, const OracleResult& oracle) {
    std::string out = "r,u\n";
    for (std::size_t i = 0; i < oracle.grid.size(); ++i) {
        append_number(out, oracle.grid[i]);
        out += ',';
        append_number(out, oracle.u_opt[i]);
        out += '\n';
    }
    write_text(path, out);
}

Json number_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

Json report_json(const EnergyReport& r) {
    Json j;
    j["epsilon"] = number_or_null(r.epsilon);
    j["c_const"] = number_or_null(r.c_const);
    j["p_star"] = number_or_null(r.p_star);
    j["moment"] = number_or_null(r.moment);
    j["primal_energy_support"] = number_or_null(r.primal_energy_support);
    j["primal_energy_full"] = number_or_null(r.primal_energy_full);
    j["xi_energy"] = number_or_null(r.xi_energy);
    j["dual_energy"] = number_or_null(r.dual_energy);
    j["duality_gap_rel"] = number_or_null(r.duality_gap_rel);
    Json res;
    res["el"] = number_or_null(r.residual_el);
    res["constitutive"] = number_or_null(r.residual_constitutive);
    res["normalization"] = number_or_null(r.residual_normalization);
    res["boundary"] = number_or_null(r.residual_boundary);
    res["gradient_excess"] = number_or_null(r.residual_gradient_excess);
    j["residuals"] = res;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::BadConfig, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorKind::BadConfig, "write failed for '" + path + "'");
}

void write_json(const std::string& path, const Json& doc) { write_text(path, doc.dump(2) + "\n"); }

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::MalformedInput, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace momentopt::cli
