#include "hopfalgd/io.hpp"

#include "json.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace hopfalgd {

using nlohmann::json;

InputError::InputError(std::string f, int l, const std::string& m)
    : std::runtime_error((l > 0 ? "line " + std::to_string(l) + ", " : std::string()) + "field '" + f + "': " + m),
      field(std::move(f)),
      line(l),
      message(m)
{
}

namespace {

// Walks syntactically valid JSON and records the line where each value starts.
class LineLocator {
public:
    explicit LineLocator(const std::string& text) : text_(text) { value(""); }

    int find(const std::string& path) const
    {
        const auto it = lines_.find(path);
        return it == lines_.end() ? 0 : it->second;
    }

private:
    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') ++line_;
            ++pos_;
        }
    }

    std::string string()
    {
        std::string out;
        ++pos_;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\\') out += text_[pos_++];
            out += text_[pos_++];
        }
        ++pos_;
        return out;
    }

    void value(const std::string& path)
    {
        skip();
        if (pos_ >= text_.size()) return;
        lines_.emplace(path, line_);
        const char c = text_[pos_];
        if (c == '{') {
            ++pos_;
            skip();
            while (pos_ < text_.size() && text_[pos_] != '}') {
                const std::string key = string();
                skip();
                ++pos_;  // ':'
                value(path.empty() ? key : path + '.' + key);
                skip();
                if (text_[pos_] == ',') ++pos_;
                skip();
            }
            ++pos_;
        }
        else if (c == '[') {
            ++pos_;
            skip();
            for (int k = 0; pos_ < text_.size() && text_[pos_] != ']'; ++k) {
                value(path + '[' + std::to_string(k) + ']');
                skip();
                if (text_[pos_] == ',') ++pos_;
                skip();
            }
            ++pos_;
        }
        else if (c == '"') {
            string();
        }
        else {
            while (pos_ < text_.size() && std::string(",]} \t\r\n").find(text_[pos_]) == std::string::npos) ++pos_;
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    std::map<std::string, int> lines_;
};

int line_at_byte(const std::string& text, std::size_t byte)
{
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

}  // namespace

int line_of_field(const std::string& text, const std::string& field)
{
    return LineLocator(text).find(field);
}

FiniteGroupoid parse_groupoid(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    }
    catch (const json::parse_error& e) {
        throw InputError("(syntax)", line_at_byte(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
    }
    auto fail = [&](const std::string& field, const std::string& message) -> InputError {
        return InputError(field, line_of_field(text, field), message);
    };
    auto str = [&](const json& v, const std::string& field) {
        if (!v.is_string()) throw fail(field, "expected a string");
        return v.get<std::string>();
    };
    auto array = [&](const json& v, const std::string& field) -> const json& {
        if (!v.is_array()) throw fail(field, "expected an array");
        return v;
    };

    if (!doc.is_object()) throw fail("", "expected an object at top level");
    for (const auto& [key, v] : doc.items())
        if (key != "objects" && key != "arrows" && key != "compose" && key != "identities" && key != "name")
            throw fail(key, "unknown key");
    for (const char* key : {"objects", "arrows", "compose"})
        if (!doc.contains(key)) throw fail(key, "missing");

    std::vector<std::string> objects;
    const json& obj = array(doc["objects"], "objects");
    for (std::size_t k = 0; k < obj.size(); ++k) objects.push_back(str(obj[k], "objects[" + std::to_string(k) + "]"));

    std::vector<ArrowSpec> arrows;
    const json& arr = array(doc["arrows"], "arrows");
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string field = "arrows[" + std::to_string(k) + "]";
        if (!arr[k].is_object()) throw fail(field, "expected an object with id, src, tgt");
        ArrowSpec a;
        for (const auto& [key, v] : arr[k].items())
            if (key != "id" && key != "src" && key != "tgt") throw fail(field + '.' + key, "unknown key");
        for (const char* key : {"id", "src", "tgt"})
            if (!arr[k].contains(key)) throw fail(field, std::string("missing '") + key + "'");
        a.id = str(arr[k]["id"], field + ".id");
        a.src = str(arr[k]["src"], field + ".src");
        a.tgt = str(arr[k]["tgt"], field + ".tgt");
        arrows.push_back(std::move(a));
    }

    std::vector<CompositeSpec> compose;
    const json& cmp = array(doc["compose"], "compose");
    for (std::size_t k = 0; k < cmp.size(); ++k) {
        const std::string field = "compose[" + std::to_string(k) + "]";
        if (!cmp[k].is_array() || cmp[k].size() != 3) throw fail(field, "expected [g, f, g after f]");
        compose.push_back({str(cmp[k][0], field + "[0]"), str(cmp[k][1], field + "[1]"), str(cmp[k][2], field + "[2]")});
    }

    std::map<std::string, std::string> identities;
    if (doc.contains("identities")) {
        const json& ids = doc["identities"];
        if (!ids.is_object()) throw fail("identities", "expected an object mapping objects to arrows");
        for (const auto& [key, v] : ids.items()) identities[key] = str(v, "identities." + key);
    }
    if (doc.contains("name")) str(doc["name"], "name");

    try {
        return FiniteGroupoid(std::move(objects), std::move(arrows), compose, identities);
    }
    catch (const GroupoidInputError& e) {
        throw fail(e.field, e.what());
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("(file)", 0, "cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

FiniteGroupoid load_groupoid(const std::string& path)
{
    return parse_groupoid(read_file(path));
}

std::string groupoid_to_json(const FiniteGroupoid& g)
{
    // one entry per line keeps fixtures diffable and error lines meaningful
    std::ostringstream os;
    auto q = [](const std::string& s) { return json(s).dump(); };
    os << "{\n  \"objects\": [";
    for (int x = 0; x < g.object_count(); ++x) os << (x ? ", " : "") << q(g.object_id(x));
    os << "],\n  \"arrows\": [\n";
    for (int a = 0; a < g.arrow_count(); ++a)
        os << "    {\"id\": " << q(g.arrow_id(a)) << ", \"src\": " << q(g.object_id(g.src(a))) << ", \"tgt\": " << q(g.object_id(g.tgt(a)))
           << '}' << (a + 1 < g.arrow_count() ? "," : "") << '\n';
    os << "  ],\n  \"compose\": [\n";
    std::vector<std::string> rows;
    for (int x = 0; x < g.arrow_count(); ++x)
        for (int f = 0; f < g.arrow_count(); ++f) {
            const int c = g.compose(x, f);
            if (c >= 0) rows.push_back("    [" + q(g.arrow_id(x)) + ", " + q(g.arrow_id(f)) + ", " + q(g.arrow_id(c)) + ']');
        }
    for (std::size_t k = 0; k < rows.size(); ++k) os << rows[k] << (k + 1 < rows.size() ? "," : "") << '\n';
    os << "  ],\n  \"identities\": {";
    bool first = true;
    for (int x = 0; x < g.object_count(); ++x) {
        if (g.identity(x) < 0) continue;
        os << (first ? "" : ", ") << q(g.object_id(x)) << ": " << q(g.arrow_id(g.identity(x)));
        first = false;
    }
    os << "}\n}\n";
    return os.str();
}

}  // namespace hopfalgd
