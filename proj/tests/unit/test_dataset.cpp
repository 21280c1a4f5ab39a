#include "dbnb/dataset.hpp"
#include "dbnb/error.hpp"

#include <doctest.h>

using namespace dbnb;

namespace {

const char* kSchema = R"(# two inputs
delimiter ,
missing ?
ignore 0
label last
attribute width continuous
attribute shape categorical round square flat
classes yes no
)";

}  // namespace

TEST_CASE("schema directives are parsed") {
    const auto f = parse_schema(kSchema);
    CHECK(f.options.delimiter == ',');
    CHECK(f.options.ignore_columns == std::vector<std::size_t>{0});
    CHECK_FALSE(f.options.label_column.has_value());
    REQUIRE(f.schema.attribute_count() == 2);
    CHECK(f.schema.attributes[1].kind == AttributeKind::categorical);
    CHECK(f.schema.attributes[1].values.size() == 3);
    CHECK(f.schema.class_index("no") == 1);
    CHECK_FALSE(f.schema.class_index("maybe").has_value());
}

TEST_CASE("schema round-trips through its text form") {
    const auto f = parse_schema(kSchema);
    const auto again = parse_schema(format_schema(f));
    CHECK(again.schema == f.schema);
    CHECK(again.options == f.options);
}

TEST_CASE("schema errors name the line") {
    CHECK_THROWS_AS(parse_schema("attribute x sideways\nclasses a b\n"), ParseError);
    try {
        parse_schema("classes a b\nbogus directive\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS(parse_schema("attribute x continuous\nclasses a\n"));
    CHECK_THROWS(parse_schema("attribute x binary 0 1 2\nclasses a b\n"));
    CHECK_THROWS(parse_schema("attribute x continuous\nattribute x continuous\nclasses a b\n"));
}

TEST_CASE("whitespace-delimited rows with a leading label") {
    const auto f = parse_schema("delimiter whitespace\nlabel first\nignore 3\nattribute a continuous\n"
                                "attribute b continuous\nclasses 1 0\n");
    const auto d = parse_table_text(" 1 2.5  3 id_1\n0 4 5 id_2\n", f.schema, f.options);
    REQUIRE(d.size() == 2);
    CHECK(d.examples[0].label == 0);
    CHECK(d.examples[0].values == std::vector<double>{2.5, 3.0});
    CHECK(d.examples[1].label == 1);
}

TEST_CASE("rows with missing values are dropped and counted") {
    const auto f = parse_schema(kSchema);
    const auto d = parse_table_text("1,2.0,round,yes\n2,?,flat,no\n3,1.5,square,no\n", f.schema, f.options);
    CHECK(d.size() == 2);
    CHECK(d.dropped_rows == 1);
    CHECK(d.examples[1].values == std::vector<double>{1.5, 1.0});
    CHECK(d.examples[1].row == 1);
}

TEST_CASE("row diagnostics name the line and attribute") {
    const auto f = parse_schema(kSchema);
    try {
        parse_table_text("1,2.0,round,yes\n2,3.0\n", f.schema, f.options);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("shape") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_table_text("1,abc,round,yes\n", f.schema, f.options), ParseError);
    CHECK_THROWS_AS(parse_table_text("1,2,oval,yes\n", f.schema, f.options), SchemaError);
    CHECK_THROWS_AS(parse_table_text("1,2,round,maybe\n", f.schema, f.options), SchemaError);
    CHECK_THROWS_AS(parse_table_text("1,2,round,yes,extra\n", f.schema, f.options), ParseError);
    CHECK_THROWS_AS(parse_table_text("\n\n", f.schema, f.options), ParseError);
}

TEST_CASE("unlabeled rows are accepted when the label is optional") {
    const auto f = parse_schema(kSchema);
    const auto row = parse_row(f.schema, f.options, "7,2.0,flat", 1, false);
    CHECK_FALSE(row.label.has_value());
    CHECK(row.values == std::vector<double>{2.0, 2.0});
    CHECK_THROWS(parse_row(f.schema, f.options, "7,2.0,flat", 1, true));
}

TEST_CASE("split keeps file order unless seeded") {
    const auto f = parse_schema(kSchema);
    std::string text;
    for (int i = 0; i < 10; ++i) text += std::to_string(i) + "," + std::to_string(i) + ",round,yes\n";
    const auto d = parse_table_text(text, f.schema, f.options);
    const auto [a, b] = split_dataset(d, 6);
    CHECK(a.size() == 6);
    CHECK(b.size() == 4);
    CHECK(a.examples[5].values[0] == 5.0);
    CHECK(b.examples[0].values[0] == 6.0);

    const auto [s1, t1] = split_dataset(d, 6, 42);
    const auto [s2, t2] = split_dataset(d, 6, 42);
    CHECK(s1.examples.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(s1.examples[i].values == s2.examples[i].values);

    CHECK_THROWS_AS(split_dataset(d, 0), ArgumentError);
    CHECK_THROWS_AS(split_dataset(d, 10), ArgumentError);
}

TEST_CASE("shipped thyroid schema reads space-padded rows") {
    const auto f = load_schema(std::filesystem::path(DBNB_SCHEMA_DIR) / "thyroid.schema");
    CHECK(f.schema.attribute_count() == 21);
    const auto d = parse_table_text("0.73 0 1 0 0 0 0 0 1 0 0 0 0 0 0 0 0.0006 0.015 0.12 0.082 0.146 3  \n"
                                    "0.24 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0.0025 0.03 0.143 0.133 0.108 3  \n"
                                    "0.47 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0.0019 0.024 0.102 0.131 0.078 3  \n",
                                    f.schema, f.options);
    REQUIRE(d.size() == 3);
    CHECK(d.examples[0].label == 2);
    CHECK(d.examples[0].values[2] == 1.0);
    CHECK(d.examples[0].values[20] == 0.146);
}
