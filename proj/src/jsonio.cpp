#include "charmod/jsonio.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "charmod/errors.hpp"

namespace charmod {

namespace {

using nlohmann::json;

Rat parse_number(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat(Int((long)j.get<long long>()));
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    throw ParseError("expected integer or \"p/q\" string in " + where);
}

json number_to_json(const Rat& r) {
    if (r.is_integer() && r.num().fits_slong_p()) return json((long long)r.num().get_si());
    return json(r.str());
}

HalfSpace parse_halfspace(const json& row, int m, const std::string& where) {
    if (!row.is_array() || (int)row.size() != m + 1)
        throw ParseError(where + ": constraint rows need m+1 entries");
    QVec normal(m);
    for (int i = 0; i < m; ++i) normal[i] = parse_number(row[i], where);
    Rat offset = parse_number(row[m], where);
    ZVec z = primitive_integer(normal);
    bool zero = true;
    for (const auto& x : z)
        if (x != 0) zero = false;
    if (zero) throw ParseError(where + ": zero constraint normal");
    Rat scale;
    for (int i = 0; i < m; ++i)
        if (!normal[i].is_zero()) {
            scale = Rat(z[i]) / normal[i];
            break;
        }
    return HalfSpace{std::move(z), offset * scale};
}

} // namespace

CellComplex parse_complex_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("cells"))
        throw ParseError("complex file needs ambient_dim and cells");
    int m = j["ambient_dim"].get<int>();
    if (m < 1) throw ParseError("ambient_dim must be positive");
    bool generate = j.value("generate_faces", false);
    std::vector<Cell> cells;
    for (const auto& jc : j["cells"]) {
        if (!jc.contains("id")) throw ParseError("cell without id");
        std::string id = jc["id"].get<std::string>();
        std::vector<HalfSpace> in, eq;
        if (jc.contains("ineqs"))
            for (const auto& row : jc["ineqs"])
                in.push_back(parse_halfspace(row, m, "cell " + id));
        if (jc.contains("eqs"))
            for (const auto& row : jc["eqs"])
                eq.push_back(parse_halfspace(row, m, "cell " + id));
        cells.push_back(Cell(std::move(id), m, std::move(in), std::move(eq)));
    }
    return build_complex(std::move(cells), generate);
}

CellComplex load_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_complex_json(ss.str());
}

std::string serialize_complex(const CellComplex& k) {
    json j;
    j["ambient_dim"] = k.ambient();
    j["generate_faces"] = false;
    j["cells"] = json::array();
    for (const auto& c : k.cells()) {
        json jc;
        jc["id"] = c.id();
        jc["ineqs"] = json::array();
        for (const auto& h : c.ineqs()) {
            json row = json::array();
            for (const auto& x : h.normal) row.push_back(number_to_json(Rat(x)));
            row.push_back(number_to_json(h.offset));
            jc["ineqs"].push_back(std::move(row));
        }
        jc["eqs"] = json::array();
        for (const auto& h : c.eqs()) {
            json row = json::array();
            for (const auto& x : h.normal) row.push_back(number_to_json(Rat(x)));
            row.push_back(number_to_json(h.offset));
            jc["eqs"].push_back(std::move(row));
        }
        j["cells"].push_back(std::move(jc));
    }
    return j.dump(2) + "\n";
}

} // namespace charmod
