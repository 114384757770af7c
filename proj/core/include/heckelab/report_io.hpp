#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heckelab/sums.hpp"

namespace heckelab {

// One output row of the experiment reports. Columns are fixed; fields that
// do not apply to a given experiment stay empty in CSV and null in JSON.
// Floats are printed with 15 significant digits (see format_double), so
// identical runs emit identical bytes.
struct ReportRow {
    std::string experiment;
    std::optional<std::int64_t> x;
    std::optional<std::int64_t> q;
    std::optional<std::int64_t> k;
    std::optional<std::string> kernel;
    std::optional<double> sum;
    std::optional<double> c1;
    std::optional<double> main_term;
    std::optional<double> ratio;
    std::optional<double> fit_a;
    std::optional<double> fit_b;
    std::optional<double> bracket;
};

inline constexpr const char* kReportCsvHeader =
    "experiment,x,q,k,kernel,S,c1,main,ratio,fitA,fitB,bracket";

std::string to_csv(const ReportRow& row);
std::string to_json(const ReportRow& row);

ReportRow make_row(const ProgressionSumReport& rep);
ReportRow make_row(const ShiftedSumReport& rep);
ReportRow make_c1_row(std::int64_t q, const C1Result& c1);
ReportRow make_c2_row(const KernelFunction& kernel, const C2Result& c2);

enum class ReportFormat { csv, json };
ReportFormat report_format_from_name(const std::string& name);

// Renders a whole report: CSV emits the header then one line per row plus
// optional '#' metadata lines; JSON emits an array of objects.
std::string render_report(const std::vector<ReportRow>& rows, ReportFormat format,
                          const std::vector<std::string>& metadata = {});

}  // namespace heckelab
