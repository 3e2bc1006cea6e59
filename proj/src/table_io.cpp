#include "ensmet/table_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace ensmet {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

Label parse_label(const std::string& field, std::size_t line_no) {
    Label value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw data_error("line " + std::to_string(line_no) +
                         ": not a non-negative integer label: '" + field + "'");
    return value;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

PredictionTable read_table_csv(std::istream& in, std::optional<int> classes_override) {
    std::string line;
    if (!std::getline(in, line)) throw data_error("empty input");
    const std::vector<std::string> header = split_csv_line(strip_cr(line));
    if (header.empty() || header[0] != "y")
        throw data_error("header must start with the truth column 'y'");
    const bool has_combined = header.size() > 1 && header[1] == "yhat";
    const std::size_t first_model = has_combined ? 2 : 1;
    const std::size_t n_models = header.size() - first_model;
    if (n_models == 0) throw data_error("no model columns in header");

    std::vector<Label> truth;
    std::vector<Label> combined;
    std::vector<std::vector<Label>> models(n_models);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw data_error("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        truth.push_back(parse_label(fields[0], line_no));
        if (has_combined) combined.push_back(parse_label(fields[1], line_no));
        for (std::size_t i = 0; i < n_models; ++i)
            models[i].push_back(parse_label(fields[first_model + i], line_no));
    }
    if (truth.empty()) throw data_error("no data rows");

    int classes;
    if (classes_override) {
        classes = *classes_override;
        if (classes < 2) throw data_error("class count must be at least 2");
    } else {
        classes = 1 + static_cast<int>(*std::max_element(truth.begin(), truth.end()));
        classes = std::max(classes, 2);
    }

    try {
        return PredictionTable(std::move(models), std::move(truth),
                               has_combined ? std::optional(std::move(combined))
                                            : std::nullopt,
                               classes);
    } catch (const std::invalid_argument& err) {
        throw data_error(err.what());
    }
}

PredictionTable read_table_file(const std::string& path,
                                std::optional<int> classes_override) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "'");
    return read_table_csv(in, classes_override);
}

void write_table_csv(std::ostream& out, const PredictionTable& table) {
    out << "y";
    if (table.has_combined()) out << ",yhat";
    for (int i = 0; i < table.models(); ++i) out << ",o" << (i + 1);
    out << "\n";
    for (int j = 0; j < table.instances(); ++j) {
        out << table.truth_row()[j];
        if (table.has_combined()) out << "," << table.combined_row()[j];
        for (int i = 0; i < table.models(); ++i) out << "," << table.model_row(i)[j];
        out << "\n";
    }
}

void write_table_file(const std::string& path, const PredictionTable& table) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write '" + path + "'");
    write_table_csv(out, table);
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        hash ^= b;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[hash & 0xF];
        hash >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

}  // namespace ensmet
