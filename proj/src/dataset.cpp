#include "dbnb/dataset.hpp"

#include "dbnb/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace dbnb {

namespace {

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n\v\f";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

std::vector<std::string> tokens(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::size_t parse_column(const std::string& text, std::size_t line) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError("expected a column index, got '" + text + "'", line);
    return value;
}

std::optional<double> parse_number(std::string_view text) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value))
        return std::nullopt;
    return value;
}

std::string delimiter_name(char d) {
    switch (d) {
        case '\0': return "whitespace";
        case '\t': return "tab";
        default: return std::string(1, d);
    }
}

}  // namespace

std::string_view to_string(AttributeKind kind) {
    switch (kind) {
        case AttributeKind::continuous: return "continuous";
        case AttributeKind::binary: return "binary";
        case AttributeKind::categorical: return "categorical";
    }
    return "continuous";
}

AttributeKind parse_attribute_kind(std::string_view text) {
    if (text == "continuous") return AttributeKind::continuous;
    if (text == "binary") return AttributeKind::binary;
    if (text == "categorical") return AttributeKind::categorical;
    throw SchemaError("unknown attribute kind '" + std::string(text) + "'");
}

std::optional<std::size_t> Schema::class_index(std::string_view label) const {
    const auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - classes.begin());
}

std::optional<std::size_t> Schema::attribute_index(std::string_view name) const {
    for (std::size_t i = 0; i < attributes.size(); ++i)
        if (attributes[i].name == name) return i;
    return std::nullopt;
}

void Schema::validate() const {
    if (attributes.empty()) throw SchemaError("schema declares no attributes");
    if (classes.size() < 2) throw SchemaError("schema must declare at least two classes");

    std::set<std::string> seen;
    for (const auto& a : attributes) {
        if (a.name.empty()) throw SchemaError("attribute with empty name");
        if (!seen.insert(a.name).second) throw SchemaError("duplicate attribute '" + a.name + "'");
        const std::set<std::string> distinct(a.values.begin(), a.values.end());
        if (distinct.size() != a.values.size())
            throw SchemaError("attribute '" + a.name + "' repeats a declared value");
        switch (a.kind) {
            case AttributeKind::continuous:
                if (!a.values.empty())
                    throw SchemaError("continuous attribute '" + a.name + "' cannot declare values");
                break;
            case AttributeKind::binary:
                if (a.values.size() != 2)
                    throw SchemaError("binary attribute '" + a.name + "' needs exactly 2 values");
                break;
            case AttributeKind::categorical:
                if (a.values.size() < 2)
                    throw SchemaError("categorical attribute '" + a.name + "' needs at least 2 values");
                break;
        }
    }
    const std::set<std::string> distinct(classes.begin(), classes.end());
    if (distinct.size() != classes.size()) throw SchemaError("duplicate class label");
}

SchemaFile parse_schema(std::string_view text) {
    SchemaFile file;
    bool have_classes = false;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tok = tokens(line);
        if (tok.empty()) continue;
        const std::string& key = tok[0];
        if (key == "delimiter") {
            if (tok.size() != 2) throw ParseError("delimiter takes one argument", line_no);
            if (tok[1] == "whitespace") file.options.delimiter = '\0';
            else if (tok[1] == "tab") file.options.delimiter = '\t';
            else if (tok[1].size() == 1) file.options.delimiter = tok[1][0];
            else throw ParseError("bad delimiter '" + tok[1] + "'", line_no);
        } else if (key == "missing") {
            if (tok.size() != 2) throw ParseError("missing takes one argument", line_no);
            file.options.missing_token = tok[1];
        } else if (key == "label") {
            if (tok.size() != 2) throw ParseError("label takes one argument", line_no);
            if (tok[1] == "last") file.options.label_column.reset();
            else if (tok[1] == "first") file.options.label_column = 0;
            else file.options.label_column = parse_column(tok[1], line_no);
        } else if (key == "ignore") {
            for (std::size_t i = 1; i < tok.size(); ++i)
                file.options.ignore_columns.push_back(parse_column(tok[i], line_no));
        } else if (key == "attribute") {
            if (tok.size() < 3) throw ParseError("attribute needs a name and a kind", line_no);
            AttributeKind kind;
            try {
                kind = parse_attribute_kind(tok[2]);
            } catch (const SchemaError& e) {
                throw ParseError(e.what(), line_no);
            }
            AttributeSpec spec{tok[1], kind, {tok.begin() + 3, tok.end()}};
            file.schema.attributes.push_back(std::move(spec));
        } else if (key == "classes") {
            if (have_classes) throw ParseError("classes declared twice", line_no);
            file.schema.classes.assign(tok.begin() + 1, tok.end());
            have_classes = true;
        } else {
            throw ParseError("unknown directive '" + key + "'", line_no);
        }
    }
    file.schema.validate();
    return file;
}

SchemaFile load_schema(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open schema file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_schema(buf.str());
}

std::string format_schema(const SchemaFile& file) {
    std::ostringstream out;
    out << "delimiter " << delimiter_name(file.options.delimiter) << '\n';
    out << "missing " << file.options.missing_token << '\n';
    if (file.options.label_column) out << "label " << *file.options.label_column << '\n';
    else out << "label last\n";
    if (!file.options.ignore_columns.empty()) {
        out << "ignore";
        for (auto c : file.options.ignore_columns) out << ' ' << c;
        out << '\n';
    }
    for (const auto& a : file.schema.attributes) {
        out << "attribute " << a.name << ' ' << to_string(a.kind);
        for (const auto& v : a.values) out << ' ' << v;
        out << '\n';
    }
    out << "classes";
    for (const auto& c : file.schema.classes) out << ' ' << c;
    out << '\n';
    return out.str();
}

std::vector<std::string> split_fields(std::string_view line, const ParseOptions& options) {
    if (options.delimiter == '\0') return tokens(line);
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(options.delimiter, start);
        out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

ParsedRow parse_row(const Schema& schema, const ParseOptions& options, std::string_view line,
                    std::size_t line_number, bool label_required) {
    const auto fields = split_fields(line, options);
    const std::size_t m = schema.attribute_count();
    const std::size_t ignored = options.ignore_columns.size();
    const std::size_t full = m + ignored + 1;

    bool has_label = fields.size() == full;
    if (!has_label && (label_required || fields.size() != full - 1)) {
        std::string detail = "expected " + std::to_string(label_required ? full : full - 1) +
                             " fields, found " + std::to_string(fields.size());
        // Name the first attribute whose column lies past the end of the row, or the
        // last attribute when there are too many fields.
        const std::size_t label_col = options.label_column.value_or(full - 1);
        std::size_t covered = 0;
        for (std::size_t col = 0; col < full; ++col) {
            if (col == label_col || std::find(options.ignore_columns.begin(), options.ignore_columns.end(), col) !=
                                        options.ignore_columns.end())
                continue;
            const std::size_t pos = (!label_required && col > label_col) ? col - 1 : col;
            if (pos < fields.size()) ++covered;
        }
        if (fields.size() < (label_required ? full : full - 1) && covered < m)
            detail += " (no value for attribute '" + schema.attributes[covered].name + "')";
        else if (label_required && fields.size() == full - 1)
            detail += " (class label or attribute '" + schema.attributes.back().name + "' missing)";
        else if (fields.size() >= full)
            detail += " (extra field after attribute '" + schema.attributes.back().name + "')";
        throw ParseError(detail, line_number);
    }

    const std::size_t label_col = options.label_column.value_or(full - 1);
    if (has_label && label_col >= full)
        throw ParseError("label column " + std::to_string(label_col) + " out of range", line_number);

    ParsedRow row;
    row.values.reserve(m);
    std::size_t attr = 0;
    for (std::size_t col = 0; col < fields.size(); ++col) {
        if (has_label && col == label_col) continue;
        // Without a label, raw positions after the label column shift left by one.
        const std::size_t raw_col = (!has_label && col >= label_col) ? col + 1 : col;
        if (std::find(options.ignore_columns.begin(), options.ignore_columns.end(), raw_col) !=
            options.ignore_columns.end())
            continue;
        if (attr >= m) throw ParseError("too many attribute fields", line_number);
        const std::string& field = fields[col];
        const auto& spec = schema.attributes[attr];
        if (field == options.missing_token) {
            row.missing = true;
            row.values.push_back(0.0);
        } else if (spec.discrete()) {
            const auto it = std::find(spec.values.begin(), spec.values.end(), field);
            if (it == spec.values.end())
                throw SchemaError("line " + std::to_string(line_number) + ": unknown value '" + field +
                                  "' for attribute '" + spec.name + "'");
            row.values.push_back(static_cast<double>(it - spec.values.begin()));
        } else {
            const auto v = parse_number(field);
            if (!v)
                throw ParseError("attribute '" + spec.name + "': not a number: '" + field + "'", line_number);
            row.values.push_back(*v);
        }
        ++attr;
    }
    if (attr != m) throw ParseError("ignore/label columns overlap; cannot place attributes", line_number);

    if (has_label) {
        const std::string& label = fields[label_col];
        if (label == options.missing_token) {
            row.missing = true;
        } else {
            const auto k = schema.class_index(label);
            if (!k)
                throw SchemaError("line " + std::to_string(line_number) + ": unknown class label '" + label + "'");
            row.label = *k;
        }
    }
    return row;
}

Dataset parse_table_text(std::string_view text, const Schema& schema, const ParseOptions& options,
                         std::string source) {
    schema.validate();
    Dataset data;
    data.schema = schema;
    data.source = std::move(source);

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (trim(line).empty()) continue;

        auto row = parse_row(schema, options, line, line_no, true);
        if (row.missing) {
            ++data.dropped_rows;
            continue;
        }
        data.examples.push_back(Example{std::move(row.values), *row.label, data.examples.size()});
    }
    if (data.examples.empty()) throw ParseError("no examples in " + data.source);
    return data;
}

Dataset parse_table(const std::filesystem::path& path, const Schema& schema, const ParseOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open data file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_table_text(buf.str(), schema, options, path.string());
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& data, std::size_t train_count,
                                          std::optional<std::uint64_t> shuffle_seed) {
    const std::size_t n = data.size();
    if (train_count == 0 || train_count >= n)
        throw ArgumentError("train_count must lie in (0, " + std::to_string(n) + "), got " +
                            std::to_string(train_count));

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    if (shuffle_seed) {
        std::mt19937_64 rng(*shuffle_seed);
        for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng() % (i + 1)]);
    }
    const std::span<const std::size_t> all(order);
    return {subset(data, all.first(train_count), "train"), subset(data, all.subspan(train_count), "test")};
}

Dataset subset(const Dataset& data, std::span<const std::size_t> indices, std::string split) {
    Dataset out;
    out.schema = data.schema;
    out.source = data.source;
    out.split = std::move(split);
    out.examples.reserve(indices.size());
    for (auto i : indices) out.examples.push_back(data.examples.at(i));
    return out;
}

}  // namespace dbnb
