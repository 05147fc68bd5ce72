#include "sdtop/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace sdtop {

nlohmann::json complex_to_json(const SimplicialComplex& k) {
    nlohmann::json j;
    j["dimension"] = k.dim();
    auto maximal = k.maximal_simplices();
    auto arr = nlohmann::json::array();
    for (const auto& s : maximal) arr.push_back(s.vertices());
    j["maximal_simplices"] = std::move(arr);
    return j;
}

SimplicialComplex complex_from_json(const nlohmann::json& j) {
    if (!j.contains("dimension") || !j.contains("maximal_simplices"))
        throw std::invalid_argument("complex JSON needs 'dimension' and 'maximal_simplices'");
    std::vector<Simplex> maximal;
    for (const auto& row : j.at("maximal_simplices")) {
        std::vector<VertexId> verts;
        for (const auto& v : row) verts.push_back(v.get<VertexId>());
        maximal.emplace_back(std::move(verts));
    }
    auto k = SimplicialComplex::from_maximal(maximal);
    int declared = j.at("dimension").get<int>();
    if (declared != k.dim())
        throw std::invalid_argument("complex JSON: declared dimension does not match simplices");
    return k;
}

SimplicialComplex load_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open complex file: " + path);
    nlohmann::json j;
    in >> j;
    return complex_from_json(j);
}

void save_complex_file(const SimplicialComplex& k, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write complex file: " + path);
    out << complex_to_json(k).dump(2) << "\n";
}

}  // namespace sdtop
