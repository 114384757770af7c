#include "heckelab/report_io.hpp"

#include <stdexcept>

#include "heckelab/numeric.hpp"

namespace heckelab {

namespace {

std::string opt_int(const std::optional<std::int64_t>& v) {
    return v ? std::to_string(*v) : std::string();
}
std::string opt_dbl(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}
std::string json_int(const std::optional<std::int64_t>& v) {
    return v ? std::to_string(*v) : std::string("null");
}
std::string json_dbl(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("null");
}
std::string json_str(const std::optional<std::string>& v) {
    return v ? "\"" + *v + "\"" : std::string("null");
}

}  // namespace

std::string to_csv(const ReportRow& row) {
    std::string out = row.experiment;
    out += ',' + opt_int(row.x);
    out += ',' + opt_int(row.q);
    out += ',' + opt_int(row.k);
    out += ',' + (row.kernel ? *row.kernel : std::string());
    out += ',' + opt_dbl(row.sum);
    out += ',' + opt_dbl(row.c1);
    out += ',' + opt_dbl(row.main_term);
    out += ',' + opt_dbl(row.ratio);
    out += ',' + opt_dbl(row.fit_a);
    out += ',' + opt_dbl(row.fit_b);
    out += ',' + opt_dbl(row.bracket);
    return out;
}

std::string to_json(const ReportRow& row) {
    std::string out = "{\"experiment\":\"" + row.experiment + "\"";
    out += ",\"x\":" + json_int(row.x);
    out += ",\"q\":" + json_int(row.q);
    out += ",\"k\":" + json_int(row.k);
    out += ",\"kernel\":" + json_str(row.kernel);
    out += ",\"S\":" + json_dbl(row.sum);
    out += ",\"c1\":" + json_dbl(row.c1);
    out += ",\"main\":" + json_dbl(row.main_term);
    out += ",\"ratio\":" + json_dbl(row.ratio);
    out += ",\"fitA\":" + json_dbl(row.fit_a);
    out += ",\"fitB\":" + json_dbl(row.fit_b);
    out += ",\"bracket\":" + json_dbl(row.bracket);
    out += "}";
    return out;
}

ReportRow make_row(const ProgressionSumReport& rep) {
    ReportRow row;
    // Reports with q below the proved range are tagged, not refused.
    row.experiment = rep.outside_paper_range ? "theorem1-smallq" : "theorem1";
    row.x = rep.x;
    row.q = rep.q;
    row.sum = rep.sum;
    row.c1 = rep.c1;
    row.main_term = rep.main_term;
    row.ratio = rep.ratio;
    row.fit_a = rep.fit_a;
    row.fit_b = rep.fit_b;
    row.bracket = rep.bracket;
    return row;
}

ReportRow make_row(const ShiftedSumReport& rep) {
    ReportRow row;
    row.experiment = "theorem3";
    row.x = rep.x;
    row.k = rep.k;
    row.kernel = kernel_name(rep.kernel);
    row.sum = rep.sum;
    row.c1 = rep.c2;
    row.main_term = rep.main_term;
    row.ratio = rep.ratio;
    row.fit_a = rep.fit_a;
    row.fit_b = rep.fit_b;
    row.bracket = rep.bracket;
    return row;
}

ReportRow make_c1_row(std::int64_t q, const C1Result& c1) {
    ReportRow row;
    row.experiment = "c1";
    row.q = q;
    row.c1 = c1.value;
    row.bracket = c1.bracket;
    return row;
}

ReportRow make_c2_row(const KernelFunction& kernel, const C2Result& c2) {
    ReportRow row;
    row.experiment = "c2";
    row.k = kernel.k;
    row.kernel = kernel_name(kernel.id);
    row.c1 = c2.value;
    row.bracket = c2.bracket;
    return row;
}

ReportFormat report_format_from_name(const std::string& name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    throw std::invalid_argument("unknown format '" + name + "' (expected csv or json)");
}

std::string render_report(const std::vector<ReportRow>& rows, ReportFormat format,
                          const std::vector<std::string>& metadata) {
    std::string out;
    if (format == ReportFormat::csv) {
        out = kReportCsvHeader;
        out += '\n';
        for (const auto& row : rows) {
            out += to_csv(row);
            out += '\n';
        }
        for (const auto& line : metadata) {
            out += "# " + line;
            out += '\n';
        }
    } else {
        out = "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out += (i == 0 ? "\n  " : ",\n  ");
            out += to_json(rows[i]);
        }
        out += "\n]\n";
    }
    return out;
}

}  // namespace heckelab
