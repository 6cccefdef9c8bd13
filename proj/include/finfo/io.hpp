#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "finfo/errors.hpp"
#include "finfo/series.hpp"

namespace finfo {

/// Analysis defaults: 252-day windows, k = 3 neighbors, 1e-10 jitter and
/// smoothing, 50 bins, unit lag, theta_NMI = 0.05, theta_KL = 2, beta = 1.
struct AnalysisConfig {
    int window = 252;
    int knn_k = 3;
    double jitter_sigma = 1e-10;
    int bins = 50;
    double smoothing = 1e-10;
    int lag = 1;
    double theta_nmi = 0.05;
    double theta_kl = 2.0;
    double beta = 1.0;
    int stride = 1;
    std::uint64_t seed = 0;

    void validate() const {
        if (window < 30) throw validation_error("AnalysisConfig: window must be >= 30");
        if (knn_k < 1) throw validation_error("AnalysisConfig: knn_k must be >= 1");
        if (!(jitter_sigma >= 0.0)) throw validation_error("AnalysisConfig: jitter_sigma >= 0");
        if (bins < 2) throw validation_error("AnalysisConfig: bins must be >= 2");
        if (!(smoothing >= 0.0)) throw validation_error("AnalysisConfig: smoothing >= 0");
        if (lag < 0) throw validation_error("AnalysisConfig: lag must be >= 0");
        if (stride < 1) throw validation_error("AnalysisConfig: stride must be >= 1");
    }
};

namespace io {

/// Fixed 9-significant-digit rendering so emitted files are stable across platforms.
inline std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        // Trim surrounding whitespace and a trailing CR from Windows files.
        const auto begin = field.find_first_not_of(" \t\r");
        const auto end = field.find_last_not_of(" \t\r");
        fields.push_back(begin == std::string::npos ? "" : field.substr(begin, end - begin + 1));
    }
    return fields;
}

inline double parse_double(const std::string& text, long line_no, const char* what) {
    try {
        std::size_t consumed = 0;
        const double v = std::stod(text, &consumed);
        if (consumed != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ingestion_error(std::string("cannot parse ") + what + " '" + text + "'", line_no);
    }
}

} // namespace detail

/// Load a `date,price` CSV into a PriceSeries. Duplicate dates and non-positive
/// prices are rejected. Unsorted rows are sorted with a warning unless `strict`.
inline PriceSeries load_prices(const std::string& path, bool strict = false) {
    std::ifstream in(path);
    if (!in) throw ingestion_error("cannot open '" + path + "'");
    PriceSeries out;
    std::string line;
    long line_no = 0;
    bool sorted = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line_no == 1 && line.find("date") != std::string::npos)) continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() != 2) {
            throw ingestion_error("expected 2 fields (date,price), got " +
                                      std::to_string(fields.size()),
                                  line_no);
        }
        const double price = detail::parse_double(fields[1], line_no, "price");
        if (!(price > 0.0)) {
            throw ingestion_error("non-positive price '" + fields[1] + "'", line_no);
        }
        if (!out.timestamps.empty() && !(out.timestamps.back() < fields[0])) {
            if (out.timestamps.back() == fields[0]) {
                throw ingestion_error("duplicate date '" + fields[0] + "'", line_no);
            }
            sorted = false;
        }
        out.timestamps.push_back(fields[0]);
        out.prices.push_back(price);
    }
    if (out.prices.empty()) throw ingestion_error("empty input '" + path + "'");
    if (!sorted) {
        if (strict) throw ingestion_error("input '" + path + "' is not time-sorted");
        std::cerr << "warning: '" << path << "' was not time-sorted; sorting\n";
        std::vector<std::size_t> order(out.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return out.timestamps[a] < out.timestamps[b];
        });
        PriceSeries sorted_out;
        for (std::size_t i : order) {
            sorted_out.timestamps.push_back(out.timestamps[i]);
            sorted_out.prices.push_back(out.prices[i]);
        }
        out = std::move(sorted_out);
    }
    out.validate();
    return out;
}

/// Load a `timestamp,value` CSV (as emitted by the series writers).
inline ReturnSeries load_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ingestion_error("cannot open '" + path + "'");
    ReturnSeries out;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1 &&
            (line.find("timestamp") != std::string::npos || line.find("date") != std::string::npos)) {
            continue;
        }
        const auto fields = detail::split_csv_line(line);
        if (fields.size() < 2) {
            throw ingestion_error("expected at least 2 fields (timestamp,value)", line_no);
        }
        out.timestamps.push_back(fields[0]);
        out.values.push_back(detail::parse_double(fields[1], line_no, "value"));
    }
    if (out.values.empty()) throw ingestion_error("empty input '" + path + "'");
    out.validate();
    return out;
}

/// Load a `date,asset1,asset2,...` CSV of aligned asset returns.
struct AssetPanel {
    std::vector<Timestamp> timestamps;
    std::vector<std::string> names;
    std::vector<double> data; // row-major, timestamps x names
};

inline AssetPanel load_asset_panel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ingestion_error("cannot open '" + path + "'");
    AssetPanel out;
    std::string line;
    long line_no = 0;
    std::size_t n_cols = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = detail::split_csv_line(line);
        if (line_no == 1) {
            if (fields.size() < 3) {
                throw ingestion_error("need a date column plus at least 2 assets", line_no);
            }
            out.names.assign(fields.begin() + 1, fields.end());
            n_cols = out.names.size();
            continue;
        }
        if (fields.size() != n_cols + 1) {
            throw ingestion_error("row width differs from header", line_no);
        }
        out.timestamps.push_back(fields[0]);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            out.data.push_back(detail::parse_double(fields[j], line_no, "value"));
        }
    }
    if (out.timestamps.empty()) throw ingestion_error("empty input '" + path + "'");
    return out;
}

/// Load a `timestamp,signal` CSV.
inline SignalSeries load_signals(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ingestion_error("cannot open '" + path + "'");
    SignalSeries out;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line_no == 1 && line.find("timestamp") != std::string::npos)) continue;
        const auto fields = detail::split_csv_line(line);
        if (fields.size() < 2) {
            throw ingestion_error("expected at least 2 fields (timestamp,signal)", line_no);
        }
        const double v = detail::parse_double(fields[1], line_no, "signal");
        if (v != -1.0 && v != 0.0 && v != 1.0) {
            throw ingestion_error("signal must be -1, 0 or +1", line_no);
        }
        out.timestamps.push_back(fields[0]);
        out.signals.push_back(static_cast<int>(v));
    }
    if (out.signals.empty()) throw ingestion_error("empty input '" + path + "'");
    out.validate();
    return out;
}

/// A named-column table of one timestamp column plus value columns, the common
/// output schema of every subcommand.
struct OutputTable {
    std::vector<std::string> columns; // excluding the leading "timestamp"
    std::vector<Timestamp> timestamps;
    std::vector<std::vector<std::string>> cells; // one row per timestamp
};

inline OutputTable table_from_series(const TimedSeries& s, const std::string& name = "value") {
    OutputTable t;
    t.columns = {name};
    t.timestamps = s.timestamps;
    t.cells.reserve(s.size());
    for (double v : s.values) t.cells.push_back({format_value(v)});
    return t;
}

inline OutputTable table_from_regimes(const RegimeSeries& s) {
    OutputTable t;
    t.columns = {"value", "z_score", "flag"};
    t.timestamps = s.timestamps;
    for (std::size_t i = 0; i < s.size(); ++i) {
        t.cells.push_back({format_value(s.kl_nats[i]), format_value(s.z_score[i]),
                           s.flag[i] ? "1" : "0"});
    }
    return t;
}

inline OutputTable table_from_signals(const SignalSeries& s) {
    OutputTable t;
    t.columns = {"signal"};
    t.timestamps = s.timestamps;
    for (int v : s.signals) t.cells.push_back({std::to_string(v)});
    return t;
}

inline void write_csv(const OutputTable& t, std::ostream& os) {
    os << "timestamp";
    for (const auto& c : t.columns) os << ',' << c;
    os << '\n';
    for (std::size_t i = 0; i < t.timestamps.size(); ++i) {
        os << t.timestamps[i];
        for (const auto& cell : t.cells[i]) os << ',' << cell;
        os << '\n';
    }
}

/// Tidy long-format table (timestamp,series,value) for external plotting.
inline void write_long_format(const OutputTable& t, std::ostream& os) {
    os << "timestamp,series,value\n";
    for (std::size_t i = 0; i < t.timestamps.size(); ++i) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            os << t.timestamps[i] << ',' << t.columns[c] << ',' << t.cells[i][c] << '\n';
        }
    }
}

inline void write_table_file(const OutputTable& t, const std::string& path, bool long_format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ingestion_error("cannot open output '" + path + "'");
    if (long_format) {
        write_long_format(t, out);
    } else {
        write_csv(t, out);
    }
}

} // namespace io
} // namespace finfo
