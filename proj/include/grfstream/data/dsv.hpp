#pragma once

// Row-by-row ingestion of delimiter-separated datasets (the user-supplied
// real streams). Memory stays bounded: one line is held at a time. Labels
// and declared-nominal feature columns are mapped to dense ids in first-seen
// order; all other feature columns must parse as numbers.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "grfstream/data/stream.hpp"
#include "grfstream/sample.hpp"

namespace grfstream {

struct DsvSchema {
    std::string path;
    int label_col = -1;
    std::vector<int> feature_cols;
    char delimiter = ',';
    bool has_header = false;
    std::vector<int> nominal_cols; // feature columns coded ordinally
    std::size_t limit = 0;         // 0 = whole file

    void validate() const {
        if (path.empty()) throw std::invalid_argument("DsvSchema: empty path");
        if (label_col < 0) throw std::invalid_argument("DsvSchema: label column unset");
        if (feature_cols.empty())
            throw std::invalid_argument("DsvSchema: no feature columns");
        for (int c : feature_cols)
            if (c < 0) throw std::invalid_argument("DsvSchema: negative feature column");
    }
};

class DsvSource final : public StreamSource {
public:
    explicit DsvSource(DsvSchema schema) : schema_(std::move(schema)) {
        schema_.validate();
        file_.open(schema_.path);
        if (!file_)
            throw std::runtime_error("cannot open dataset file: " + schema_.path);
        for (int c : schema_.nominal_cols) nominal_codes_[c] = {};
        if (schema_.has_header) {
            std::string header;
            if (std::getline(file_, header)) ++line_no_;
        }
    }

    bool next(Sample& out) override {
        if (schema_.limit != 0 && emitted_ == schema_.limit) return false;
        std::string line;
        while (std::getline(file_, line)) {
            ++line_no_;
            if (line.empty()) continue; // blank separator lines are tolerated
            if (!line.empty() && line.back() == '\r') line.pop_back();
            parse_row(line, out);
            ++emitted_;
            return true;
        }
        return false;
    }

    std::size_t dim() const override { return schema_.feature_cols.size(); }
    std::optional<std::size_t> length() const override { return std::nullopt; }
    int num_classes() const override { return static_cast<int>(label_codes_.size()); }
    std::size_t rows_read() const { return emitted_; }

private:
    void parse_row(const std::string& line, Sample& out) {
        fields_.clear();
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(schema_.delimiter, start);
            fields_.emplace_back(line, start, pos == std::string::npos ? line.size() - start
                                                                       : pos - start);
            if (pos == std::string::npos) break;
            start = pos + 1;
        }

        const auto need = static_cast<std::size_t>(schema_.label_col);
        std::size_t max_col = need;
        for (int c : schema_.feature_cols)
            max_col = std::max(max_col, static_cast<std::size_t>(c));
        if (fields_.size() <= max_col)
            throw std::runtime_error("malformed row at line " + std::to_string(line_no_) +
                                     ": expected at least " + std::to_string(max_col + 1) +
                                     " columns, got " + std::to_string(fields_.size()));

        out.features.clear();
        out.features.reserve(schema_.feature_cols.size());
        for (int c : schema_.feature_cols) {
            const std::string& cell = fields_[static_cast<std::size_t>(c)];
            if (auto it = nominal_codes_.find(c); it != nominal_codes_.end()) {
                out.features.push_back(static_cast<double>(code(it->second, cell)));
            } else {
                double value = 0.0;
                const char* begin = cell.data();
                const char* end = begin + cell.size();
                auto [ptr, ec] = std::from_chars(begin, end, value);
                if (ec != std::errc() || ptr != end)
                    throw std::runtime_error("non-numeric value '" + cell +
                                             "' in numeric column " + std::to_string(c) +
                                             " at line " + std::to_string(line_no_));
                out.features.push_back(value);
            }
        }
        out.label = code(label_codes_, fields_[need]);
    }

    static int code(std::map<std::string, int>& table, const std::string& value) {
        auto [it, inserted] = table.emplace(value, static_cast<int>(table.size()));
        return it->second;
    }

    DsvSchema schema_;
    std::ifstream file_;
    std::map<std::string, int> label_codes_;
    std::map<int, std::map<std::string, int>> nominal_codes_;
    std::vector<std::string> fields_;
    std::size_t line_no_ = 0;
    std::size_t emitted_ = 0;
};

/// Streams a delimiter-separated file per the schema.
inline DsvSource load_stream(DsvSchema schema) { return DsvSource(std::move(schema)); }

} // namespace grfstream
