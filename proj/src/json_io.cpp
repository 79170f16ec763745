#include "ellk3/json_io.hpp"

namespace ellk3 {

using nlohmann::json;

namespace {

Rat field_rat(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw std::invalid_argument(std::string("missing rational field \"") + key + "\"");
    auto r = parse_rat(j[key].get<std::string>());
    if (!r) throw std::invalid_argument(std::string("malformed rational in \"") + key + "\"");
    return *r;
}

}  // namespace

json chern_to_json(const ChernVector& v) {
    return json{{"n", rat_str(v.n)},
                {"theta", rat_str(v.a)},
                {"fiber", rat_str(v.b)},
                {"ch2", rat_str(v.s)}};
}

ChernVector chern_from_json(const json& j) {
    return {field_rat(j, "n"), field_rat(j, "theta"), field_rat(j, "fiber"),
            field_rat(j, "ch2")};
}

ChernVector chern_from_string(const std::string& text) {
    return chern_from_json(json::parse(text));
}

std::string chern_to_string(const ChernVector& v) { return chern_to_json(v).dump(); }

DivisorClass divisor_from_string(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("divisor must be \"a,b\" meaning a*Theta + b*f");
    auto a = parse_rat(text.substr(0, comma));
    auto b = parse_rat(text.substr(comma + 1));
    if (!a || !b) throw std::invalid_argument("malformed rational in divisor");
    return {*a, *b};
}

std::string divisor_to_string(const DivisorClass& d) {
    return rat_str(d.a) + "," + rat_str(d.b);
}

}  // namespace ellk3
