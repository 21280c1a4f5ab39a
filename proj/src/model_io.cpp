#include "dbnb/model_io.hpp"

#include "dbnb/error.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace dbnb {

using nlohmann::json;

namespace {

json schema_to_json(const Schema& schema) {
    json attrs = json::array();
    for (const auto& a : schema.attributes)
        attrs.push_back({{"name", a.name}, {"kind", std::string(to_string(a.kind))}, {"values", a.values}});
    return {{"attributes", attrs}, {"classes", schema.classes}};
}

Schema schema_from_json(const json& j) {
    Schema s;
    for (const auto& a : j.at("attributes"))
        s.attributes.push_back(AttributeSpec{a.at("name").get<std::string>(),
                                             parse_attribute_kind(a.at("kind").get<std::string>()),
                                             a.at("values").get<std::vector<std::string>>()});
    s.classes = j.at("classes").get<std::vector<std::string>>();
    s.validate();
    return s;
}

std::string delimiter_to_string(char d) {
    if (d == '\0') return "whitespace";
    return std::string(1, d);
}

char delimiter_from_string(const std::string& s) {
    if (s == "whitespace") return '\0';
    if (s.size() != 1) throw ParseError("bad delimiter '" + s + "' in model file");
    return s[0];
}

json options_to_json(const ParseOptions& o) {
    json j = {{"delimiter", delimiter_to_string(o.delimiter)},
              {"missing", o.missing_token},
              {"ignore_columns", o.ignore_columns},
              {"label_column", nullptr}};
    if (o.label_column) j["label_column"] = *o.label_column;
    return j;
}

ParseOptions options_from_json(const json& j) {
    ParseOptions o;
    o.delimiter = delimiter_from_string(j.at("delimiter").get<std::string>());
    o.missing_token = j.at("missing").get<std::string>();
    o.ignore_columns = j.at("ignore_columns").get<std::vector<std::size_t>>();
    if (!j.at("label_column").is_null()) o.label_column = j.at("label_column").get<std::size_t>();
    return o;
}

/// Nests a flat per-cell vector as [class][attribute][bin].
template <typename T>
json nest(const CellLayout& layout, const std::vector<T>& flat) {
    json out = json::array();
    for (std::size_t k = 0; k < layout.classes(); ++k) {
        json per_attr = json::array();
        for (std::size_t m = 0; m < layout.attributes(); ++m) {
            json row = json::array();
            for (std::size_t b = 0; b < layout.bins(m); ++b) row.push_back(flat[layout.cell(k, m, b)]);
            per_attr.push_back(std::move(row));
        }
        out.push_back(std::move(per_attr));
    }
    return out;
}

template <typename T>
std::vector<T> flatten(const CellLayout& layout, const json& nested, const char* what) {
    std::vector<T> flat(layout.size());
    if (nested.size() != layout.classes()) throw ParseError(std::string(what) + ": wrong number of classes");
    for (std::size_t k = 0; k < layout.classes(); ++k) {
        if (nested[k].size() != layout.attributes())
            throw ParseError(std::string(what) + ": wrong number of attributes");
        for (std::size_t m = 0; m < layout.attributes(); ++m) {
            const auto& row = nested[k][m];
            if (row.size() != layout.bins(m)) throw ParseError(std::string(what) + ": wrong number of bins");
            for (std::size_t b = 0; b < layout.bins(m); ++b) flat[layout.cell(k, m, b)] = row[b].get<T>();
        }
    }
    return flat;
}

}  // namespace

std::string serialize_model(const Model& model) {
    if (!model.fitted()) throw StateError("cannot serialise an untrained model");
    const auto& d = model.density;
    const auto& layout = d.layout();

    json bins = json::array();
    for (const auto& b : d.bins) bins.push_back({{"min", b.min}, {"max", b.max}, {"count", b.count}});

    json tags = json::array();
    for (std::size_t k = 0; k < layout.classes(); ++k) {
        json per_attr = json::array();
        for (std::size_t m = 0; m < layout.attributes(); ++m) {
            json row = json::array();
            for (std::size_t b = 0; b < layout.bins(m); ++b) {
                const auto tag = d.tags.tag(k, m, b);
                if (tag.empty()) {
                    row.push_back(nullptr);
                    continue;
                }
                json ranges = json::array();
                for (const auto& r : tag) ranges.push_back(json::array({r.min, r.max}));
                row.push_back(std::move(ranges));
            }
            per_attr.push_back(std::move(row));
        }
        tags.push_back(std::move(per_attr));
    }

    json config = {{"alpha", model.config.alpha},
                   {"max_rounds", model.config.max_rounds},
                   {"tag_gain", model.config.tag_gain},
                   {"epsilon_floor", nullptr},
                   {"topology", model.config.topology.bin_counts}};
    if (model.config.epsilon_floor) config["epsilon_floor"] = *model.config.epsilon_floor;

    json trace = {{"errors_per_epoch", model.trace.errors_per_epoch}, {"converged_epoch", nullptr}};
    if (model.trace.converged_epoch) trace["converged_epoch"] = *model.trace.converged_epoch;

    json doc = {
        {"format", "dbnb-model"},
        {"version", model_format_version},
        {"schema", schema_to_json(d.schema)},
        {"input_format", options_to_json(model.input_format)},
        {"topology", model.topology().bin_counts},
        {"bins", bins},
        {"n_train", d.joint.n_train()},
        {"counts", nest(layout, d.joint.raw_counts())},
        {"tags", tags},
        {"weights", nest(layout, model.weights.raw())},
        {"gate", {{"tag_gain", model.gate.tag_gain}, {"epsilon", model.gate.epsilon}}},
        {"config", config},
        {"trace", trace},
    };
    return doc.dump(1) + "\n";
}

Model deserialize_model(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("model file is not valid JSON: ") + e.what());
    }
    try {
        if (doc.at("format") != "dbnb-model") throw ParseError("not a model file");
        if (doc.at("version") != model_format_version)
            throw ParseError("unsupported model format version " + doc.at("version").dump());

        Model model;
        auto& d = model.density;
        d.schema = schema_from_json(doc.at("schema"));
        model.input_format = options_from_json(doc.at("input_format"));

        const auto bin_counts = doc.at("topology").get<std::vector<std::size_t>>();
        if (bin_counts.size() != d.schema.attribute_count()) throw ParseError("topology does not match the schema");
        for (const auto& b : doc.at("bins"))
            d.bins.push_back(BinSpec{b.at("min").get<double>(), b.at("max").get<double>(), b.at("count").get<std::size_t>()});
        if (d.bins.size() != bin_counts.size()) throw ParseError("bin specs do not match the topology");
        for (std::size_t m = 0; m < d.bins.size(); ++m)
            if (d.bins[m].count != bin_counts[m] || d.bins[m].count == 0 || d.bins[m].min > d.bins[m].max)
                throw ParseError("invalid bin spec for attribute " + std::to_string(m));

        CellLayout layout(d.schema.class_count(), bin_counts);
        d.joint = JointTable::from_counts(layout, flatten<std::uint64_t>(layout, doc.at("counts"), "counts"),
                                          doc.at("n_train").get<std::uint64_t>());

        d.tags = TagTable(layout);
        const auto& tags = doc.at("tags");
        if (tags.size() != layout.classes()) throw ParseError("tags: wrong number of classes");
        std::vector<ValueRange> ranges;
        for (std::size_t k = 0; k < layout.classes(); ++k)
            for (std::size_t m = 0; m < layout.attributes(); ++m)
                for (std::size_t b = 0; b < layout.bins(m); ++b) {
                    const auto& t = tags.at(k).at(m).at(b);
                    if (t.is_null()) continue;
                    ranges.clear();
                    for (const auto& r : t) {
                        ranges.push_back(ValueRange{r.at(0).get<double>(), r.at(1).get<double>()});
                        if (ranges.back().min > ranges.back().max) throw ParseError("tag range with min > max");
                    }
                    d.tags.set(k, m, b, ranges);
                }

        model.weights = WeightTable::from_raw(layout, flatten<double>(layout, doc.at("weights"), "weights"));
        model.gate = GateParams{doc.at("gate").at("tag_gain").get<double>(), doc.at("gate").at("epsilon").get<double>()};

        const auto& c = doc.at("config");
        model.config.alpha = c.at("alpha").get<double>();
        model.config.max_rounds = c.at("max_rounds").get<std::size_t>();
        model.config.tag_gain = c.at("tag_gain").get<double>();
        if (!c.at("epsilon_floor").is_null()) model.config.epsilon_floor = c.at("epsilon_floor").get<double>();
        model.config.topology.bin_counts = c.at("topology").get<std::vector<std::size_t>>();

        const auto& t = doc.at("trace");
        model.trace.errors_per_epoch = t.at("errors_per_epoch").get<std::vector<std::size_t>>();
        if (!t.at("converged_epoch").is_null()) model.trace.converged_epoch = t.at("converged_epoch").get<std::size_t>();
        return model;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed model file: ") + e.what());
    }
}

void save_model(const Model& model, const std::filesystem::path& path) {
    const auto text = serialize_model(model);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write model file '" + path.string() + "'");
    out << text;
    if (!out) throw Error("failed writing model file '" + path.string() + "'");
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open model file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_model(buf.str());
}

}  // namespace dbnb
