#ifndef SDTOP_JSON_IO_HPP
#define SDTOP_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "sdtop/complex.hpp"

namespace sdtop {

/// Complex wire format: {"dimension": n, "maximal_simplices": [[v...], ...]}.
/// The writer emits maximal simplices only, sorted lexicographically; the
/// loader computes the face closure. Round trips are bit-exact.
nlohmann::json complex_to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const nlohmann::json& j);

SimplicialComplex load_complex_file(const std::string& path);
void save_complex_file(const SimplicialComplex& k, const std::string& path);

}  // namespace sdtop

#endif  // SDTOP_JSON_IO_HPP
