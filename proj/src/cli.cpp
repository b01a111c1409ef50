#include "entsub/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "entsub/sampling.hpp"
#include "entsub/sweep.hpp"

namespace entsub {
namespace cli {

namespace {

struct CommonOpts {
    uint64_t seed = kDefaultSeed;
    uint64_t stream = 0;
    std::string out_path;
};

struct SearchOpts {
    SearchConfig cfg;

    void attach(CLI::App* cmd) {
        cmd->add_option("--restarts", cfg.restarts, "Seesaw restarts");
        cmd->add_option("--max-sweeps", cfg.max_sweeps, "Sweep cap per restart");
        cmd->add_option("--conv-tol", cfg.conv_tol, "Sweep-to-sweep objective gain cutoff");
        cmd->add_option("--membership-tol", cfg.membership_tol,
                        "Found iff objective >= 1 - membership-tol");
        cmd->add_option("--cluster-tol", cfg.cluster_tol, "Product-fidelity identity threshold");
        cmd->add_option("--saturation-window", cfg.saturation_window,
                        "Consecutive non-novel restarts before stopping a count");
    }
};

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ','))
        dims.push_back(std::stoi(token));
    return dims;
}

void emit(const json& doc, const CommonOpts& common, std::ostream& out) {
    if (common.out_path.empty())
        out << doc.dump(2) << '\n';
    else
        write_json_file(common.out_path, doc);
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Completely entangled subspaces and unambiguous local discrimination"};
    app.require_subcommand(1);

    // ---- bounds ----
    auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form thresholds and degrees");
    std::string bounds_dims;
    int64_t bounds_copies = 1;
    int64_t bounds_n = -1;
    CommonOpts bounds_common;
    bounds_cmd->add_option("--dims", bounds_dims, "Comma-separated factor dimensions")->required();
    bounds_cmd->add_option("--copies", bounds_copies, "Separated copies c");
    bounds_cmd->add_option("--n", bounds_n, "State count for the min-copies query");
    bounds_cmd->add_option("--out", bounds_common.out_path, "Write the document here");

    // ---- sample-state ----
    auto* sstate_cmd = app.add_subcommand("sample-state", "Haar-random pure state");
    std::string sstate_dims;
    CommonOpts sstate_common;
    sstate_cmd->add_option("--dims", sstate_dims)->required();
    sstate_cmd->add_option("--seed", sstate_common.seed);
    sstate_cmd->add_option("--stream", sstate_common.stream);
    sstate_cmd->add_option("--out", sstate_common.out_path);

    // ---- sample-subspace ----
    auto* ssub_cmd = app.add_subcommand("sample-subspace", "Haar-random subspace");
    std::string ssub_dims;
    int ssub_s = 1;
    CommonOpts ssub_common;
    ssub_cmd->add_option("--dims", ssub_dims)->required();
    ssub_cmd->add_option("--s", ssub_s, "Subspace dimension")->required();
    ssub_cmd->add_option("--seed", ssub_common.seed);
    ssub_cmd->add_option("--stream", ssub_common.stream);
    ssub_cmd->add_option("--out", ssub_common.out_path);

    // ---- find-product ----
    auto* find_cmd = app.add_subcommand("find-product", "Seesaw product-state search");
    std::string find_input;
    CommonOpts find_common;
    SearchOpts find_search;
    find_cmd->add_option("subspace", find_input, "Subspace JSON file")->required();
    find_cmd->add_option("--seed", find_common.seed);
    find_cmd->add_option("--out", find_common.out_path);
    find_search.attach(find_cmd);

    // ---- count-product ----
    auto* count_cmd = app.add_subcommand("count-product", "Cluster product states in a subspace");
    std::string count_input;
    CommonOpts count_common;
    SearchOpts count_search;
    count_cmd->add_option("subspace", count_input, "Subspace JSON file")->required();
    count_cmd->add_option("--seed", count_common.seed);
    count_cmd->add_option("--out", count_common.out_path);
    count_search.attach(count_cmd);

    // ---- find-low-rank ----
    auto* lowrank_cmd = app.add_subcommand("find-low-rank", "Bounded-Schmidt-rank search");
    std::string lowrank_input, lowrank_cut = "0";
    int lowrank_rank = 1;
    CommonOpts lowrank_common;
    SearchOpts lowrank_search;
    lowrank_cmd->add_option("subspace", lowrank_input, "Subspace JSON file")->required();
    lowrank_cmd->add_option("--rank", lowrank_rank, "Schmidt rank bound r")->required();
    lowrank_cmd->add_option("--cut", lowrank_cut, "Left factor indices of the bipartition");
    lowrank_cmd->add_option("--seed", lowrank_common.seed);
    lowrank_cmd->add_option("--out", lowrank_common.out_path);
    lowrank_search.attach(lowrank_cmd);

    // ---- certify ----
    auto* certify_cmd = app.add_subcommand("certify", "Chefles certificate construction");
    std::string certify_dims, certify_states_path;
    int64_t certify_n = -1;
    int certify_copies = 1;
    bool certify_products = false;
    double certify_diag_floor = kDefaultDiagFloor;
    double certify_offdiag_tol = kDefaultOffdiagTol;
    LiftLimits certify_limits;
    CommonOpts certify_common;
    SearchOpts certify_search;
    certify_cmd->add_option("--dims", certify_dims, "Sample random states on these dims");
    certify_cmd->add_option("--n", certify_n, "Number of sampled states");
    certify_cmd->add_option("--states", certify_states_path, "Use this state-set JSON instead");
    certify_cmd->add_option("--copies", certify_copies, "Separated copies c");
    certify_cmd->add_flag("--product-inputs", certify_products,
                          "Sample random product states instead of Haar states");
    certify_cmd->add_option("--diag-floor", certify_diag_floor);
    certify_cmd->add_option("--offdiag-tol", certify_offdiag_tol);
    certify_cmd->add_option("--max-lift-factors", certify_limits.max_factors);
    certify_cmd->add_option("--max-lift-dim", certify_limits.max_dim);
    certify_cmd->add_option("--seed", certify_common.seed);
    certify_cmd->add_option("--out", certify_common.out_path);
    certify_search.attach(certify_cmd);

    // ---- simulate ----
    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo POVM outcome sampling");
    std::string sim_cert_path;
    int64_t sim_trials = 100000;
    CommonOpts sim_common;
    sim_cmd->add_option("--cert", sim_cert_path, "Certificate JSON file")->required();
    sim_cmd->add_option("--trials", sim_trials, "Trial count");
    sim_cmd->add_option("--seed", sim_common.seed);
    sim_cmd->add_option("--out", sim_common.out_path);

    // ---- verdict ----
    auto* verdict_cmd = app.add_subcommand("verdict", "Closed-form distinguishability verdict");
    std::string verdict_dims;
    int64_t verdict_n = 0;
    int64_t verdict_copies = 1;
    CommonOpts verdict_common;
    verdict_cmd->add_option("--dims", verdict_dims)->required();
    verdict_cmd->add_option("--n", verdict_n)->required();
    verdict_cmd->add_option("--copies", verdict_copies);
    verdict_cmd->add_option("--out", verdict_common.out_path);

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment grid");
    std::string sweep_spec_path, sweep_out_path, sweep_format = "csv";
    sweep_cmd->add_option("spec", sweep_spec_path, "Sweep spec JSON file")->required();
    sweep_cmd->add_option("--out", sweep_out_path, "Output table (enables resume)");
    sweep_cmd->add_option("--format", sweep_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    std::vector<std::string> argv_copy = args;
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>("entsub"));
    for (auto& a : argv_copy)
        argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << std::flush;
        return 0;
    } catch (const CLI::ParseError& e) {
        err << json{{"error", {{"type", "invalid-input"}, {"message", e.what()}}}}.dump(2)
            << '\n';
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        if (*bounds_cmd) {
            const SpaceSpec space(parse_dims(bounds_dims));
            const auto report = bounds::threshold_report(
                space, bounds_copies,
                bounds_n >= 0 ? std::optional<int64_t>(bounds_n) : std::nullopt);
            json config{{"dims", space.dims()}, {"copies", bounds_copies}};
            if (bounds_n >= 0)
                config["n"] = bounds_n;
            emit(output_document("bounds", config, report, elapsed_since(start)), bounds_common,
                 out);
            return 0;
        }
        if (*sstate_cmd) {
            const SpaceSpec space(parse_dims(sstate_dims));
            RngStream rng(sstate_common.seed, sstate_common.stream);
            const StateVector psi = canonicalized(random_state(space, rng));
            json config{{"dims", space.dims()},
                        {"seed", sstate_common.seed},
                        {"stream", sstate_common.stream}};
            emit(output_document("sample-state", config, psi, elapsed_since(start)),
                 sstate_common, out);
            return 0;
        }
        if (*ssub_cmd) {
            const SpaceSpec space(parse_dims(ssub_dims));
            RngStream rng(ssub_common.seed, ssub_common.stream);
            const Subspace S = random_subspace(space, ssub_s, rng);
            json config{{"dims", space.dims()},
                        {"s", ssub_s},
                        {"seed", ssub_common.seed},
                        {"stream", ssub_common.stream}};
            emit(output_document("sample-subspace", config, S, elapsed_since(start)), ssub_common,
                 out);
            return 0;
        }
        if (*find_cmd) {
            const Subspace S = unwrap_payload(load_json_file(find_input)).get<Subspace>();
            find_search.cfg.validate();
            const RngStream rng(find_common.seed);
            const SearchResult res = find_product_in_subspace(S, find_search.cfg, rng);
            json config{{"input", find_input},
                        {"seed", find_common.seed},
                        {"search", find_search.cfg}};
            emit(output_document("find-product", config, res, elapsed_since(start)), find_common,
                 out);
            return 0;
        }
        if (*count_cmd) {
            const Subspace S = unwrap_payload(load_json_file(count_input)).get<Subspace>();
            count_search.cfg.validate();
            const RngStream rng(count_common.seed);
            const CountResult res = enumerate_products(S, count_search.cfg, rng);
            json config{{"input", count_input},
                        {"seed", count_common.seed},
                        {"search", count_search.cfg}};
            emit(output_document("count-product", config, res, elapsed_since(start)),
                 count_common, out);
            return 0;
        }
        if (*lowrank_cmd) {
            const Subspace S = unwrap_payload(load_json_file(lowrank_input)).get<Subspace>();
            lowrank_search.cfg.validate();
            const Cut cut{parse_dims(lowrank_cut)};
            const RngStream rng(lowrank_common.seed);
            const LowRankResult res =
                find_low_rank_in_subspace(S, lowrank_rank, cut, lowrank_search.cfg, rng);
            json config{{"input", lowrank_input},
                        {"rank", lowrank_rank},
                        {"cut_left", cut.left},
                        {"seed", lowrank_common.seed},
                        {"search", lowrank_search.cfg}};
            emit(output_document("find-low-rank", config, res, elapsed_since(start)),
                 lowrank_common, out);
            return 0;
        }
        if (*certify_cmd) {
            certify_search.cfg.validate();
            RngStream rng(certify_common.seed);
            std::vector<StateVector> states;
            json config{{"seed", certify_common.seed},
                        {"copies", certify_copies},
                        {"diag_floor", certify_diag_floor},
                        {"offdiag_tol", certify_offdiag_tol},
                        {"search", certify_search.cfg}};
            if (!certify_states_path.empty()) {
                states = state_list_from_json(unwrap_payload(load_json_file(certify_states_path)));
                config["states"] = certify_states_path;
            } else {
                if (certify_dims.empty() || certify_n < 2)
                    throw InvalidInput("certify: need either --states or --dims with --n >= 2");
                const SpaceSpec space(parse_dims(certify_dims));
                for (int64_t k = 0; k < certify_n; ++k)
                    states.push_back(certify_products ? random_product_state(space, rng).global()
                                                      : random_state(space, rng));
                config["dims"] = space.dims();
                config["n"] = certify_n;
                config["product_inputs"] = certify_products;
            }
            const CertifyOutcome outcome =
                multicopy_certificate(states, certify_copies, certify_search.cfg, rng,
                                      certify_diag_floor, certify_offdiag_tol, certify_limits);
            if (const auto* cert = std::get_if<Certificate>(&outcome)) {
                emit(output_document("certify", config, *cert, elapsed_since(start)),
                     certify_common, out);
                return 0;
            }
            emit(output_document("certify", config, std::get<SearchFailure>(outcome),
                                 elapsed_since(start)),
                 certify_common, out);
            return 3;
        }
        if (*sim_cmd) {
            const Certificate cert = unwrap_payload(load_json_file(sim_cert_path)).get<Certificate>();
            const UnambiguousPovm povm = build_povm(cert);
            const RngStream rng(sim_common.seed);
            const SimulationReport rep = simulate(povm, cert, sim_trials, rng);
            json config{{"cert", sim_cert_path},
                        {"trials", sim_trials},
                        {"seed", sim_common.seed}};
            emit(output_document("simulate", config, rep, elapsed_since(start)), sim_common, out);
            return 0;
        }
        if (*verdict_cmd) {
            const SpaceSpec space(parse_dims(verdict_dims));
            const ExpectedVerdict v = generic_verdict(space, verdict_n, verdict_copies);
            json config{{"dims", space.dims()}, {"n", verdict_n}, {"copies", verdict_copies}};
            json payload{{"verdict", to_string(v)},
                         {"locc_threshold", bounds::locc_threshold(space, verdict_copies)},
                         {"min_copies", bounds::min_copies(space, verdict_n)}};
            emit(output_document("verdict", config, payload, elapsed_since(start)),
                 verdict_common, out);
            return 0;
        }
        if (*sweep_cmd) {
            const json spec = load_json_file(sweep_spec_path);
            const auto outcome = sweep::run_sweep(
                spec,
                sweep_out_path.empty() ? std::nullopt : std::optional<std::string>(sweep_out_path),
                sweep_format);
            const std::string text = sweep::render(outcome, sweep_format);
            if (sweep_out_path.empty()) {
                out << text;
            } else {
                std::ofstream f(sweep_out_path);
                if (!f)
                    throw InvalidInput("cannot open file for writing: " + sweep_out_path);
                f << text;
            }
            return 0;
        }
    } catch (const InvalidInput& e) {
        err << json{{"error", {{"type", "invalid-input"}, {"message", e.what()}}}}.dump(2)
            << '\n';
        return 2;
    } catch (const json::exception& e) {
        err << json{{"error", {{"type", "invalid-input"}, {"message", e.what()}}}}.dump(2)
            << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << json{{"error", {{"type", "runtime"}, {"message", e.what()}}}}.dump(2) << '\n';
        return 2;
    }
    return 2;
}

} // namespace cli
} // namespace entsub
