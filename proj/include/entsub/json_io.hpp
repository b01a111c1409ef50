#pragma once

#include <json.hpp>

#include "entsub/bounds.hpp"
#include "entsub/discrimination.hpp"
#include "entsub/pencil.hpp"

// Complex numbers serialize as two-element arrays [re, im].
namespace nlohmann {
template <>
struct adl_serializer<std::complex<double>> {
    static void to_json(json& j, const std::complex<double>& z) {
        j = json::array({z.real(), z.imag()});
    }
    static void from_json(const json& j, std::complex<double>& z) {
        if (!j.is_array() || j.size() != 2)
            throw entsub::InvalidInput("complex number must be a [re, im] pair");
        z = {j[0].get<double>(), j[1].get<double>()};
    }
};
} // namespace nlohmann

namespace entsub {

using json = nlohmann::json;

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

/// Matrices travel as arrays of column vectors.
json columns_to_json(const Matrix& m);
Matrix columns_from_json(const json& j, int64_t expected_rows);

void to_json(json& j, const SpaceSpec& space);
void from_json(const json& j, SpaceSpec& space);

void to_json(json& j, const StateVector& x);
void from_json(const json& j, StateVector& x);

void to_json(json& j, const ProductState& p);
void from_json(const json& j, ProductState& p);

void to_json(json& j, const Subspace& s);
void from_json(const json& j, Subspace& s);

void to_json(json& j, const SchmidtData& s);

namespace bounds {
void to_json(json& j, const ThresholdReport& r);
}

void to_json(json& j, const SearchConfig& c);
void from_json(const json& j, SearchConfig& c);

void to_json(json& j, const SearchResult& r);
void to_json(json& j, const CountResult& r);
void to_json(json& j, const LowRankResult& r);
void to_json(json& j, const PencilRoots& r);

void to_json(json& j, const StateSet& s);
void from_json(const json& j, StateSet& s);

/// Parses {"states": [...]} without the StateSet independence requirement
/// (multicopy inputs may exceed the base dimension).
std::vector<StateVector> state_list_from_json(const json& j);

void to_json(json& j, const Certificate& c);
void from_json(const json& j, Certificate& c);

void to_json(json& j, const SearchFailure& f);

void to_json(json& j, const UnambiguousPovm& p);
void to_json(json& j, const SimulationReport& r);

/// Envelope every CLI payload ships in. The config echo carries everything
/// needed to reproduce the run; timing stays outside the payload so
/// identical inputs give byte-identical payloads.
json output_document(const std::string& command, json config, json payload, double seconds);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

/// Accepts either a bare object or a full OutputDocument and returns the
/// payload, so emitted files feed straight back into other subcommands.
json unwrap_payload(json j);

} // namespace entsub
