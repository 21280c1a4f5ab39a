#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dbnb {

enum class AttributeKind { continuous, binary, categorical };

std::string_view to_string(AttributeKind kind);
AttributeKind parse_attribute_kind(std::string_view text);

struct AttributeSpec {
    std::string name;
    AttributeKind kind = AttributeKind::continuous;
    std::vector<std::string> values;  // admissible tokens, discrete kinds only

    bool discrete() const { return kind != AttributeKind::continuous; }

    friend bool operator==(const AttributeSpec&, const AttributeSpec&) = default;
};

/// Declared attributes and class labels. Class labels map to indices in
/// declaration order; discrete attribute tokens map to their index in `values`.
struct Schema {
    std::vector<AttributeSpec> attributes;
    std::vector<std::string> classes;

    std::size_t attribute_count() const { return attributes.size(); }
    std::size_t class_count() const { return classes.size(); }

    std::optional<std::size_t> class_index(std::string_view label) const;
    std::optional<std::size_t> attribute_index(std::string_view name) const;

    /// Throws SchemaError when an invariant does not hold.
    void validate() const;

    friend bool operator==(const Schema&, const Schema&) = default;
};

/// Layout of a delimited text file. Columns are 0-based positions in the raw row.
struct ParseOptions {
    /// '\0' splits on runs of whitespace.
    char delimiter = ',';
    std::string missing_token = "?";
    /// Raw column holding the class label; unset means the last column.
    std::optional<std::size_t> label_column;
    /// Raw columns dropped before parsing (row identifiers and the like).
    std::vector<std::size_t> ignore_columns;

    friend bool operator==(const ParseOptions&, const ParseOptions&) = default;
};

/// A schema plus the file layout it was declared with.
struct SchemaFile {
    Schema schema;
    ParseOptions options;
};

/// One labeled row. Discrete tokens are stored as their declared-value index.
struct Example {
    std::vector<double> values;
    std::size_t label = 0;
    /// Position of the row among the rows kept by the parser (0-based).
    std::size_t row = 0;
};

struct Dataset {
    Schema schema;
    std::vector<Example> examples;
    std::string source;
    std::string split = "all";
    std::size_t dropped_rows = 0;

    std::size_t size() const { return examples.size(); }
    bool empty() const { return examples.empty(); }
};

/// Reads a schema declaration. Recognised directives, one per line:
///
///     delimiter , | whitespace | tab | ;
///     missing ?
///     label last | first | <column>
///     ignore <column> [<column> ...]
///     attribute <name> continuous
///     attribute <name> binary <v0> <v1>
///     attribute <name> categorical <v0> <v1> [...]
///     classes <c0> <c1> [...]
///
/// Blank lines and text after '#' are ignored.
SchemaFile parse_schema(std::string_view text);
SchemaFile load_schema(const std::filesystem::path& path);
std::string format_schema(const SchemaFile& file);

/// Splits one line into fields according to `options.delimiter`, trimming each field.
std::vector<std::string> split_fields(std::string_view line, const ParseOptions& options);

/// Parses a feature row that may or may not carry the label column.
/// Returns the feature values and, when present, the label index.
struct ParsedRow {
    std::vector<double> values;
    std::optional<std::size_t> label;
    bool missing = false;
};
ParsedRow parse_row(const Schema& schema, const ParseOptions& options, std::string_view line,
                    std::size_t line_number, bool label_required);

Dataset parse_table_text(std::string_view text, const Schema& schema, const ParseOptions& options,
                         std::string source = "<memory>");
Dataset parse_table(const std::filesystem::path& path, const Schema& schema,
                    const ParseOptions& options);

/// First `train_count` examples go to the first result. With a seed the
/// examples are first permuted by a seeded Fisher-Yates shuffle (mt19937_64).
std::pair<Dataset, Dataset> split_dataset(const Dataset& data, std::size_t train_count,
                                          std::optional<std::uint64_t> shuffle_seed = std::nullopt);

/// Dataset holding the listed examples of `data`, in the given order.
Dataset subset(const Dataset& data, std::span<const std::size_t> indices, std::string split);

}  // namespace dbnb
