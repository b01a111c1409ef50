#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "entsub/cli.hpp"
#include "entsub/json_io.hpp"
#include "entsub/sampling.hpp"

namespace py = pybind11;
using namespace entsub;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
    case json::value_t::null:
        return py::none();
    case json::value_t::boolean:
        return py::bool_(j.get<bool>());
    case json::value_t::number_integer:
        return py::int_(j.get<int64_t>());
    case json::value_t::number_unsigned:
        return py::int_(j.get<uint64_t>());
    case json::value_t::number_float:
        return py::float_(j.get<double>());
    case json::value_t::string:
        return py::str(j.get<std::string>());
    case json::value_t::array: {
        py::list out;
        for (const auto& item : j)
            out.append(json_to_py(item));
        return out;
    }
    case json::value_t::object: {
        py::dict out;
        for (const auto& [key, value] : j.items())
            out[py::str(key)] = json_to_py(value);
        return out;
    }
    default:
        return py::none();
    }
}

json py_to_json(const py::handle& obj) {
    if (obj.is_none())
        return nullptr;
    if (py::isinstance<py::bool_>(obj))
        return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj))
        return obj.cast<int64_t>();
    if (py::isinstance<py::float_>(obj))
        return obj.cast<double>();
    if (py::isinstance<py::str>(obj))
        return obj.cast<std::string>();
    if (py::isinstance<py::dict>(obj)) {
        json out = json::object();
        for (const auto& item : obj.cast<py::dict>())
            out[item.first.cast<std::string>()] = py_to_json(item.second);
        return out;
    }
    if (py::isinstance<py::sequence>(obj)) {
        json out = json::array();
        for (const auto& item : obj.cast<py::sequence>())
            out.push_back(py_to_json(item));
        return out;
    }
    throw InvalidInput("unsupported python value in JSON conversion");
}

SearchConfig make_config(int restarts, int max_sweeps, double conv_tol, double membership_tol,
                         double cluster_tol, int saturation_window) {
    SearchConfig cfg;
    cfg.restarts = restarts;
    cfg.max_sweeps = max_sweeps;
    cfg.conv_tol = conv_tol;
    cfg.membership_tol = membership_tol;
    cfg.cluster_tol = cluster_tol;
    cfg.saturation_window = saturation_window;
    cfg.validate();
    return cfg;
}

std::vector<StateVector> states_from_columns(const SpaceSpec& space, const Matrix& columns) {
    std::vector<StateVector> states;
    states.reserve(columns.cols());
    for (Eigen::Index c = 0; c < columns.cols(); ++c)
        states.emplace_back(space, Vector(columns.col(c)));
    return states;
}

py::object certify_outcome_to_py(const CertifyOutcome& outcome) {
    if (const auto* cert = std::get_if<Certificate>(&outcome))
        return json_to_py(json(*cert));
    return json_to_py(json(std::get<SearchFailure>(outcome)));
}

constexpr char kSearchArgsDoc[] =
    "restarts/max_sweeps/conv_tol/membership_tol/cluster_tol/saturation_window mirror the CLI "
    "flags";

} // namespace

PYBIND11_MODULE(_entsub, m) {
    m.doc() = "Completely entangled subspaces and unambiguous local discrimination";

    py::register_exception<InvalidInput>(m, "InvalidInputError", PyExc_ValueError);
    py::register_exception<DegeneratePencilError>(m, "DegeneratePencilError", PyExc_RuntimeError);
    py::register_exception<NumericalConsistencyError>(m, "NumericalConsistencyError",
                                                      PyExc_RuntimeError);

    // ---- closed-form bounds ----
    m.def("s_max", [](std::vector<int> dims) { return bounds::s_max(SpaceSpec(dims)); },
          py::arg("dims"));
    m.def("segre_degree",
          [](std::vector<int> dims) { return bounds::segre_degree(SpaceSpec(dims)); },
          py::arg("dims"));
    m.def("schmidt_smax", &bounds::schmidt_smax, py::arg("d1"), py::arg("d2"), py::arg("r"));
    m.def("determinantal_degree", &bounds::determinantal_degree, py::arg("d1"), py::arg("d2"),
          py::arg("r"));
    m.def("locc_threshold",
          [](std::vector<int> dims, int64_t copies) {
              return bounds::locc_threshold(SpaceSpec(dims), copies);
          },
          py::arg("dims"), py::arg("copies") = 1);
    m.def("min_copies",
          [](std::vector<int> dims, int64_t n) { return bounds::min_copies(SpaceSpec(dims), n); },
          py::arg("dims"), py::arg("n"));
    m.def("threshold_report",
          [](std::vector<int> dims, int64_t copies, std::optional<int64_t> n) {
              return json_to_py(json(bounds::threshold_report(SpaceSpec(dims), copies, n)));
          },
          py::arg("dims"), py::arg("copies") = 1, py::arg("n") = py::none());

    // ---- sampling ----
    m.def("random_state",
          [](std::vector<int> dims, uint64_t seed, uint64_t stream) {
              RngStream rng(seed, stream);
              return Vector(random_state(SpaceSpec(dims), rng).amps());
          },
          py::arg("dims"), py::arg("seed"), py::arg("stream") = 0,
          "Haar-random pure state as a complex amplitude vector");
    m.def("random_subspace",
          [](std::vector<int> dims, int s, uint64_t seed, uint64_t stream) {
              RngStream rng(seed, stream);
              return Matrix(random_subspace(SpaceSpec(dims), s, rng).basis());
          },
          py::arg("dims"), py::arg("s"), py::arg("seed"), py::arg("stream") = 0,
          "Orthonormal basis (columns) of a Haar-random subspace");
    m.def("random_product_state",
          [](std::vector<int> dims, uint64_t seed, uint64_t stream) {
              RngStream rng(seed, stream);
              return json_to_py(json(random_product_state(SpaceSpec(dims), rng)));
          },
          py::arg("dims"), py::arg("seed"), py::arg("stream") = 0);

    // ---- schmidt analysis ----
    m.def("schmidt_coefficients",
          [](std::vector<int> dims, const Vector& amps, std::vector<int> cut_left) {
              const SpaceSpec space(dims);
              auto data = schmidt(StateVector(space, amps), Cut{std::move(cut_left)});
              return Eigen::VectorXd(data.coeffs);
          },
          py::arg("dims"), py::arg("amps"), py::arg("cut_left"),
          "Squared Schmidt coefficients, descending, across the given cut");

    // ---- product searches ----
    m.def("find_product",
          [](std::vector<int> dims, const Matrix& basis, uint64_t seed, int restarts,
             int max_sweeps, double conv_tol, double membership_tol, double cluster_tol,
             int saturation_window) {
              const Subspace S(SpaceSpec(dims), basis);
              const auto cfg = make_config(restarts, max_sweeps, conv_tol, membership_tol,
                                           cluster_tol, saturation_window);
              return json_to_py(json(find_product_in_subspace(S, cfg, RngStream(seed))));
          },
          py::arg("dims"), py::arg("basis"), py::arg("seed") = cli::kDefaultSeed,
          py::arg("restarts") = SearchConfig{}.restarts,
          py::arg("max_sweeps") = SearchConfig{}.max_sweeps,
          py::arg("conv_tol") = SearchConfig{}.conv_tol,
          py::arg("membership_tol") = SearchConfig{}.membership_tol,
          py::arg("cluster_tol") = SearchConfig{}.cluster_tol,
          py::arg("saturation_window") = SearchConfig{}.saturation_window, kSearchArgsDoc);
    m.def("count_products",
          [](std::vector<int> dims, const Matrix& basis, uint64_t seed, int restarts,
             int max_sweeps, double conv_tol, double membership_tol, double cluster_tol,
             int saturation_window) {
              const Subspace S(SpaceSpec(dims), basis);
              const auto cfg = make_config(restarts, max_sweeps, conv_tol, membership_tol,
                                           cluster_tol, saturation_window);
              return json_to_py(json(enumerate_products(S, cfg, RngStream(seed))));
          },
          py::arg("dims"), py::arg("basis"), py::arg("seed") = cli::kDefaultSeed,
          py::arg("restarts") = SearchConfig{}.restarts,
          py::arg("max_sweeps") = SearchConfig{}.max_sweeps,
          py::arg("conv_tol") = SearchConfig{}.conv_tol,
          py::arg("membership_tol") = SearchConfig{}.membership_tol,
          py::arg("cluster_tol") = SearchConfig{}.cluster_tol,
          py::arg("saturation_window") = SearchConfig{}.saturation_window, kSearchArgsDoc);
    m.def("find_low_rank",
          [](std::vector<int> dims, const Matrix& basis, int rank, std::vector<int> cut_left,
             uint64_t seed, int restarts, int max_sweeps, double conv_tol,
             double membership_tol, double cluster_tol, int saturation_window) {
              const Subspace S(SpaceSpec(dims), basis);
              const auto cfg = make_config(restarts, max_sweeps, conv_tol, membership_tol,
                                           cluster_tol, saturation_window);
              return json_to_py(json(find_low_rank_in_subspace(S, rank, Cut{std::move(cut_left)},
                                                               cfg, RngStream(seed))));
          },
          py::arg("dims"), py::arg("basis"), py::arg("rank"),
          py::arg("cut_left") = std::vector<int>{0}, py::arg("seed") = cli::kDefaultSeed,
          py::arg("restarts") = SearchConfig{}.restarts,
          py::arg("max_sweeps") = SearchConfig{}.max_sweeps,
          py::arg("conv_tol") = SearchConfig{}.conv_tol,
          py::arg("membership_tol") = SearchConfig{}.membership_tol,
          py::arg("cluster_tol") = SearchConfig{}.cluster_tol,
          py::arg("saturation_window") = SearchConfig{}.saturation_window, kSearchArgsDoc);
    m.def("pencil_roots",
          [](std::vector<int> dims, const Matrix& basis) {
              return json_to_py(
                  json(count_rank_deficient_pencil(Subspace(SpaceSpec(dims), basis))));
          },
          py::arg("dims"), py::arg("basis"),
          "Projective roots of det(a*A + b*B) for a 2-dim d x d subspace");

    // ---- discrimination ----
    m.def("certify",
          [](std::vector<int> dims, int n, uint64_t seed, int copies, bool product_inputs,
             int restarts) {
              const SpaceSpec space(dims);
              RngStream rng(seed);
              std::vector<StateVector> states;
              for (int k = 0; k < n; ++k)
                  states.push_back(product_inputs ? random_product_state(space, rng).global()
                                                  : random_state(space, rng));
              SearchConfig cfg;
              cfg.restarts = restarts;
              return certify_outcome_to_py(multicopy_certificate(states, copies, cfg, rng));
          },
          py::arg("dims"), py::arg("n"), py::arg("seed") = cli::kDefaultSeed,
          py::arg("copies") = 1, py::arg("product_inputs") = false,
          py::arg("restarts") = SearchConfig{}.restarts,
          "Sample n random states and search for a Chefles certificate");
    m.def("certify_states",
          [](std::vector<int> dims, const Matrix& columns, uint64_t seed, int copies,
             int restarts) {
              SearchConfig cfg;
              cfg.restarts = restarts;
              return certify_outcome_to_py(multicopy_certificate(
                  states_from_columns(SpaceSpec(dims), columns), copies, cfg, RngStream(seed)));
          },
          py::arg("dims"), py::arg("states"), py::arg("seed") = cli::kDefaultSeed,
          py::arg("copies") = 1, py::arg("restarts") = SearchConfig{}.restarts,
          "Certify the given states (columns of a D x n complex matrix)");
    m.def("simulate_certificate",
          [](const py::dict& cert_dict, int64_t trials, uint64_t seed) {
              const Certificate cert = py_to_json(cert_dict).get<Certificate>();
              const UnambiguousPovm povm = build_povm(cert);
              return json_to_py(json(simulate(povm, cert, trials, RngStream(seed))));
          },
          py::arg("certificate"), py::arg("trials"), py::arg("seed") = cli::kDefaultSeed,
          "Monte-Carlo outcome sampling for a certificate produced by certify()");
    m.def("predicted_success",
          [](const py::dict& cert_dict) {
              const Certificate cert = py_to_json(cert_dict).get<Certificate>();
              return predicted_success(build_povm(cert), cert);
          },
          py::arg("certificate"));
    m.def("generic_verdict",
          [](std::vector<int> dims, int64_t n, int64_t copies) {
              return std::string(to_string(generic_verdict(SpaceSpec(dims), n, copies)));
          },
          py::arg("dims"), py::arg("n"), py::arg("copies") = 1);

    // ---- full CLI, in process ----
    m.def("run_cli",
          [](std::vector<std::string> args) {
              std::ostringstream out, err;
              const int code = cli::run(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Run an entsub CLI invocation; returns (exit_code, stdout, stderr)");
}
