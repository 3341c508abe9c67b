#pragma once

// Benchmark arithmetic and reporting: the negated sum-of-squares loss between
// an expected and a produced score grid, percentage improvement between two
// losses, and a paired text/CSV comparison report.

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "autoparl/dataset.hpp"
#include "autoparl/errors.hpp"
#include "autoparl/types.hpp"

namespace autoparl {

// L = -sum over all cells of (actual - expected)^2; 0 iff the grids agree.
inline double bench_loss(const Grid& expected, const Grid& actual) {
    if (!expected.same_shape(actual))
        throw Error(ErrorKind::dimension,
                    "score grids disagree in shape: " + std::to_string(expected.rows) + "x" +
                        std::to_string(expected.cols) + " vs " + std::to_string(actual.rows) +
                        "x" + std::to_string(actual.cols));
    double acc = 0.0;
    for (int r = 0; r < expected.rows; ++r)
        for (int c = 0; c < expected.cols; ++c) {
            const double d = actual.at(r, c) - expected.at(r, c);
            acc += d * d;
        }
    return -acc;
}

// Datasets must agree on stance columns (same names, same order) and row count.
inline double bench_loss(const Dataset& expected, const Dataset& actual) {
    if (expected.stances != actual.stances)
        throw Error(ErrorKind::schema, "datasets disagree on stance columns");
    return bench_loss(expected.grid(), actual.grid());
}

// 100 * (|baseline| - |improved|) / |baseline|.
inline double improvement_pct(double loss_baseline, double loss_improved) {
    if (loss_baseline == 0.0)
        throw Error(ErrorKind::undefined_improvement,
                    "improvement is undefined for a zero baseline loss");
    return 100.0 * (std::fabs(loss_baseline) - std::fabs(loss_improved)) /
           std::fabs(loss_baseline);
}

enum class BenchCondition { amp, single_value };

inline const char* to_string(BenchCondition condition) {
    return condition == BenchCondition::amp ? "amp" : "single-value";
}

inline BenchCondition parse_bench_condition(const std::string& text) {
    if (text == "amp") return BenchCondition::amp;
    if (text == "single-value") return BenchCondition::single_value;
    throw Error(ErrorKind::schema, "unknown benchmark condition '" + text + "'");
}

struct BenchResult {
    std::string model;
    BenchCondition condition = BenchCondition::amp;
    double loss = 0.0;
    std::vector<double> cell_errors;  // squared per-cell errors, row-major
};

inline BenchResult make_bench_result(const std::string& model, BenchCondition condition,
                                     const Dataset& expected, const Dataset& actual) {
    if (expected.stances != actual.stances)
        throw Error(ErrorKind::schema, "datasets disagree on stance columns");
    const Grid e = expected.grid();
    const Grid a = actual.grid();
    BenchResult result;
    result.model = model;
    result.condition = condition;
    result.loss = bench_loss(e, a);
    result.cell_errors.reserve(e.cells.size());
    for (int r = 0; r < e.rows; ++r)
        for (int c = 0; c < e.cols; ++c) {
            const double d = a.at(r, c) - e.at(r, c);
            result.cell_errors.push_back(d * d);
        }
    return result;
}

struct BenchReportRow {
    std::string model;
    double loss_amp = 0.0;
    double loss_single = 0.0;
    double improvement = 0.0;  // percent
};

struct BenchReport {
    std::vector<BenchReportRow> rows;
    double mean_improvement = 0.0;
    std::string text;  // aligned table for humans
    std::string csv;   // model,condition,loss,improvement_pct
};

namespace detail {

inline std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

}  // namespace detail

// Pairs each model's amp and single-value results and renders the comparison.
// Every model must appear under both conditions, otherwise pairing fails.
inline BenchReport render_report(const std::vector<BenchResult>& results) {
    if (results.empty())
        throw Error(ErrorKind::validation, "no benchmark results to report");
    std::vector<std::string> order;
    std::map<std::string, const BenchResult*> amp, single;
    for (const BenchResult& r : results) {
        auto& slot = (r.condition == BenchCondition::amp) ? amp : single;
        if (slot.count(r.model))
            throw Error(ErrorKind::pairing, "duplicate " + std::string(to_string(r.condition)) +
                                                " result for model '" + r.model + "'");
        slot[r.model] = &r;
        bool seen = false;
        for (const std::string& m : order) seen = seen || m == r.model;
        if (!seen) order.push_back(r.model);
    }
    BenchReport report;
    double sum_improvement = 0.0;
    for (const std::string& model : order) {
        if (!amp.count(model))
            throw Error(ErrorKind::pairing, "model '" + model + "' has no amp result");
        if (!single.count(model))
            throw Error(ErrorKind::pairing, "model '" + model + "' has no single-value result");
        BenchReportRow row;
        row.model = model;
        row.loss_amp = amp[model]->loss;
        row.loss_single = single[model]->loss;
        row.improvement = improvement_pct(row.loss_single, row.loss_amp);
        sum_improvement += row.improvement;
        report.rows.push_back(row);
    }
    report.mean_improvement = sum_improvement / static_cast<double>(report.rows.size());

    std::size_t name_width = std::string("model").size();
    for (const BenchReportRow& row : report.rows) name_width = std::max(name_width, row.model.size());
    auto pad = [&](const std::string& s) {
        std::string out = s;
        out.resize(name_width, ' ');
        return out;
    };
    std::string text = pad("model") + "  amp loss  single-value loss  improvement %\n";
    for (const BenchReportRow& row : report.rows) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s  %8s  %17s  %13s\n", pad(row.model).c_str(),
                      detail::fixed(row.loss_amp, 2).c_str(),
                      detail::fixed(row.loss_single, 2).c_str(),
                      detail::fixed(row.improvement, 1).c_str());
        text += buf;
    }
    {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s  %8s  %17s  %13s\n", pad("mean").c_str(), "", "",
                      detail::fixed(report.mean_improvement, 1).c_str());
        text += buf;
    }
    report.text = text;

    std::string csv = "model,condition,loss,improvement_pct\n";
    for (const BenchReportRow& row : report.rows) {
        csv += csv::escape(row.model) + ",amp," + detail::fixed(row.loss_amp, 2) + "," +
               detail::fixed(row.improvement, 1) + "\n";
        csv += csv::escape(row.model) + ",single-value," + detail::fixed(row.loss_single, 2) +
               ",\n";
    }
    csv += "mean,,," + detail::fixed(report.mean_improvement, 1) + "\n";
    report.csv = csv;
    return report;
}

}  // namespace autoparl
