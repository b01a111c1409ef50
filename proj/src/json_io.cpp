#include "entsub/json_io.hpp"

#include <fstream>

namespace entsub {

json vector_to_json(const Vector& v) {
    json j = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        j.push_back(Complex(v[i]));
    return j;
}

Vector vector_from_json(const json& j) {
    if (!j.is_array())
        throw InvalidInput("expected an array of [re, im] pairs");
    Vector v(j.size());
    for (size_t i = 0; i < j.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = j[i].get<Complex>();
    return v;
}

json columns_to_json(const Matrix& m) {
    json j = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        j.push_back(vector_to_json(m.col(c)));
    return j;
}

Matrix columns_from_json(const json& j, int64_t expected_rows) {
    if (!j.is_array() || j.empty())
        throw InvalidInput("expected a nonempty array of columns");
    Matrix m(expected_rows, static_cast<Eigen::Index>(j.size()));
    for (size_t c = 0; c < j.size(); ++c) {
        Vector col = vector_from_json(j[c]);
        if (col.size() != expected_rows)
            throw InvalidInput("column length does not match the space dimension");
        m.col(static_cast<Eigen::Index>(c)) = col;
    }
    return m;
}

void to_json(json& j, const SpaceSpec& space) {
    j = json{{"dims", space.dims()}};
}

void from_json(const json& j, SpaceSpec& space) {
    space = SpaceSpec(j.at("dims").get<std::vector<int>>());
}

void to_json(json& j, const StateVector& x) {
    j = json{{"space", x.space()}, {"amps", vector_to_json(x.amps())}};
}

void from_json(const json& j, StateVector& x) {
    SpaceSpec space = j.at("space").get<SpaceSpec>();
    x = StateVector(std::move(space), vector_from_json(j.at("amps")));
}

void to_json(json& j, const ProductState& p) {
    json factors = json::array();
    for (const auto& f : p.factors())
        factors.push_back(vector_to_json(f));
    j = json{{"space", p.space()},
             {"factors", std::move(factors)},
             {"global", vector_to_json(p.global().amps())}};
}

void from_json(const json& j, ProductState& p) {
    SpaceSpec space = j.at("space").get<SpaceSpec>();
    std::vector<Vector> factors;
    for (const auto& f : j.at("factors"))
        factors.push_back(vector_from_json(f));
    p = ProductState(std::move(space), std::move(factors));
    if (j.contains("global")) {
        const Vector stored = vector_from_json(j["global"]);
        if (stored.size() != p.global().amps().size() ||
            (stored - p.global().amps()).cwiseAbs().maxCoeff() > kUnitNormTol)
            throw InvalidInput("ProductState: stored global vector does not match the factors");
    }
}

void to_json(json& j, const Subspace& s) {
    j = json{{"space", s.space()}, {"s", s.s()}, {"basis_columns", columns_to_json(s.basis())}};
}

void from_json(const json& j, Subspace& s) {
    SpaceSpec space = j.at("space").get<SpaceSpec>();
    Matrix basis = columns_from_json(j.at("basis_columns"), space.dim());
    if (j.contains("s") && j["s"].get<int64_t>() != basis.cols())
        throw InvalidInput("Subspace: stored dimension does not match the basis");
    s = Subspace(std::move(space), std::move(basis));
}

void to_json(json& j, const SchmidtData& s) {
    std::vector<double> coeffs(s.coeffs.data(), s.coeffs.data() + s.coeffs.size());
    j = json{{"cut_left", s.cut.left},
             {"coeffs", std::move(coeffs)},
             {"rank_default_tol", s.rank_at()}};
}

namespace bounds {
void to_json(json& j, const ThresholdReport& r) {
    j = json{{"space", r.space},
             {"D", r.space.dim()},
             {"s_max", r.s_max},
             {"segre_degree", r.segre_degree},
             {"copies", r.copies},
             {"locc_threshold", r.locc_threshold}};
    if (r.n) {
        j["n"] = *r.n;
        j["min_copies"] = *r.min_copies;
    }
}
} // namespace bounds

void to_json(json& j, const SearchConfig& c) {
    j = json{{"restarts", c.restarts},
             {"max_sweeps", c.max_sweeps},
             {"conv_tol", c.conv_tol},
             {"membership_tol", c.membership_tol},
             {"cluster_tol", c.cluster_tol},
             {"saturation_window", c.saturation_window}};
}

void from_json(const json& j, SearchConfig& c) {
    c = SearchConfig{};
    if (j.contains("restarts"))
        c.restarts = j["restarts"].get<int>();
    if (j.contains("max_sweeps"))
        c.max_sweeps = j["max_sweeps"].get<int>();
    if (j.contains("conv_tol"))
        c.conv_tol = j["conv_tol"].get<double>();
    if (j.contains("membership_tol"))
        c.membership_tol = j["membership_tol"].get<double>();
    if (j.contains("cluster_tol"))
        c.cluster_tol = j["cluster_tol"].get<double>();
    if (j.contains("saturation_window"))
        c.saturation_window = j["saturation_window"].get<int>();
    c.validate();
}

void to_json(json& j, const SearchResult& r) {
    j = json{{"verdict", to_string(r.verdict)},
             {"best_overlap", r.best_overlap},
             {"restarts_used", r.restarts_used},
             {"sweeps_total", r.sweeps.total_sweeps},
             {"sweeps_max", r.sweeps.max_sweeps_used},
             {"converged_restarts", r.sweeps.converged_restarts}};
    if (r.best_state)
        j["best_state"] = *r.best_state;
}

void to_json(json& j, const CountResult& r) {
    j = json{{"count", r.count},
             {"saturated", r.saturated},
             {"formula_expected", r.formula_expected},
             {"restarts_used", r.restarts_used},
             {"representatives", r.representatives}};
}

void to_json(json& j, const LowRankResult& r) {
    j = json{{"verdict", to_string(r.verdict)},
             {"rank", r.rank},
             {"best_overlap", r.best_overlap},
             {"restarts_used", r.restarts_used},
             {"fixed_points", r.fixed_points}};
    if (r.best_state)
        j["best_state"] = *r.best_state;
}

void to_json(json& j, const PencilRoots& r) {
    json roots = json::array();
    json ratios = json::array();
    for (const auto& root : r.roots) {
        roots.push_back(json::array({Complex(root[0]), Complex(root[1])}));
        // ratio beta/alpha; null encodes the root at infinity (alpha = 0)
        if (std::abs(root[0]) > kPhaseTol)
            ratios.push_back(Complex(root[1] / root[0]));
        else
            ratios.push_back(nullptr);
    }
    j = json{{"degree", r.degree},
             {"count", r.count},
             {"roots", std::move(roots)},
             {"ratios", std::move(ratios)},
             {"states", r.states}};
}

void to_json(json& j, const StateSet& s) {
    j = json{{"space", s.space()}, {"states", s.states()}};
}

void from_json(const json& j, StateSet& s) {
    s = StateSet::from_states(state_list_from_json(j));
    if (j.contains("space") && !(j["space"].get<SpaceSpec>() == s.space()))
        throw InvalidInput("StateSet: declared space does not match the states");
}

std::vector<StateVector> state_list_from_json(const json& j) {
    std::vector<StateVector> states;
    for (const auto& st : j.at("states"))
        states.push_back(st.get<StateVector>());
    return states;
}

void to_json(json& j, const Certificate& c) {
    j = json{{"space", c.space},
             {"base_space", c.base_space},
             {"copies", c.copies},
             {"states", c.states},
             {"products", c.products},
             {"overlaps", columns_to_json(c.overlaps)},
             {"valid", c.valid},
             {"diag_floor", c.diag_floor},
             {"offdiag_tol", c.offdiag_tol}};
}

void from_json(const json& j, Certificate& c) {
    c.space = j.at("space").get<SpaceSpec>();
    c.base_space = j.value("base_space", c.space);
    c.copies = j.value("copies", 1);
    c.states.clear();
    for (const auto& st : j.at("states"))
        c.states.push_back(st.get<StateVector>());
    c.products.clear();
    for (const auto& p : j.at("products"))
        c.products.push_back(p.get<ProductState>());
    if (c.states.empty() || c.products.size() != c.states.size())
        throw InvalidInput("Certificate: need equally many states and products");
    for (const auto& st : c.states)
        if (!(st.space() == c.space))
            throw InvalidInput("Certificate: state space does not match the certificate space");
    for (const auto& p : c.products)
        if (!(p.space() == c.space))
            throw InvalidInput("Certificate: product space does not match the certificate space");
    c.overlaps = columns_from_json(j.at("overlaps"), static_cast<int64_t>(c.states.size()));
    if (c.overlaps.cols() != static_cast<Eigen::Index>(c.states.size()))
        throw InvalidInput("Certificate: overlap matrix shape mismatch");
    c.valid = j.at("valid").get<bool>();
    c.diag_floor = j.value("diag_floor", kDefaultDiagFloor);
    c.offdiag_tol = j.value("offdiag_tol", kDefaultOffdiagTol);
}

void to_json(json& j, const SearchFailure& f) {
    j = json{{"verdict", "search-failure"},
             {"failed_index", f.failed_index},
             {"best_overlap", f.best_overlap},
             {"reason", f.reason},
             {"complement_dim", f.complement_dim}};
    if (!f.complement_cut_ranks.empty())
        j["complement_cut_ranks"] = f.complement_cut_ranks;
}

void to_json(json& j, const UnambiguousPovm& p) {
    j = json{{"space", p.space}, {"weights", p.weights}, {"products", p.products}};
}

void to_json(json& j, const SimulationReport& r) {
    json per_state = json::array();
    for (const auto& t : r.per_state)
        per_state.push_back(json{{"correct", t.correct},
                                 {"inconclusive", t.inconclusive},
                                 {"misidentified", t.misidentified}});
    j = json{{"trials", r.trials},
             {"per_state", std::move(per_state)},
             {"success_rate", r.success_rate},
             {"predicted_success", r.predicted},
             {"sigma3", r.sigma3},
             {"within_3sigma", r.within_3sigma},
             {"misidentified_total", r.misidentified_total}};
}

json output_document(const std::string& command, json config, json payload, double seconds) {
    return json{{"schema_version", 1},
                {"command", command},
                {"config", std::move(config)},
                {"payload", std::move(payload)},
                {"timing", json{{"seconds", seconds}}}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidInput("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

json unwrap_payload(json j) {
    if (j.is_object() && j.contains("schema_version") && j.contains("payload"))
        return j["payload"];
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot open file for writing: " + path);
    out << j.dump(2) << '\n';
}

} // namespace entsub
