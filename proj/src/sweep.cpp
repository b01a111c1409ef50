#include "entsub/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "entsub/sampling.hpp"

namespace entsub {
namespace sweep {

namespace {

std::vector<int64_t> int_list(const json& entry, const char* singular, const char* plural) {
    std::vector<int64_t> out;
    if (entry.contains(plural)) {
        for (const auto& v : entry[plural])
            out.push_back(v.get<int64_t>());
    } else if (entry.contains(singular)) {
        const auto& v = entry[singular];
        if (v.is_array())
            for (const auto& x : v)
                out.push_back(x.get<int64_t>());
        else
            out.push_back(v.get<int64_t>());
    }
    return out;
}

std::string dims_label(const SpaceSpec& space) {
    std::string label;
    for (size_t j = 0; j < space.dims().size(); ++j) {
        if (j)
            label += 'x';
        label += std::to_string(space.dims()[j]);
    }
    return label;
}

} // namespace

std::vector<Cell> expand(const json& spec) {
    if (!spec.is_object() || !spec.contains("cells") || !spec["cells"].is_array())
        throw InvalidInput("sweep spec: expected an object with a \"cells\" array");

    static const std::vector<std::string> kinds = {"find-product", "count-product",
                                                   "find-low-rank", "certify", "verdict"};
    std::vector<Cell> cells;
    for (const auto& entry : spec["cells"]) {
        Cell proto;
        proto.kind = entry.value("kind", "");
        if (std::find(kinds.begin(), kinds.end(), proto.kind) == kinds.end())
            throw InvalidInput("sweep spec: unknown cell kind '" + proto.kind + "'");
        if (!entry.contains("dims"))
            throw InvalidInput("sweep spec: every cell needs dims");
        proto.space = SpaceSpec(entry["dims"].get<std::vector<int>>());
        proto.trials = entry.value("trials", int64_t{0});
        proto.product_inputs = entry.value("product_inputs", false);
        if (entry.contains("restarts"))
            proto.cfg.restarts = entry["restarts"].get<int>();
        if (entry.contains("max_sweeps"))
            proto.cfg.max_sweeps = entry["max_sweeps"].get<int>();
        proto.cfg.validate();

        auto s_list = int_list(entry, "s", "s_values");
        auto n_list = int_list(entry, "n", "n_values");
        auto c_list = int_list(entry, "copies", "copies_values");
        auto seed_list = int_list(entry, "seed", "seeds");
        auto rank_list = int_list(entry, "rank", "rank_values");
        if (seed_list.empty())
            seed_list.push_back(1);
        if (s_list.empty())
            s_list.push_back(-1);
        if (n_list.empty())
            n_list.push_back(-1);
        if (c_list.empty())
            c_list.push_back(-1);
        if (rank_list.empty())
            rank_list.push_back(-1);

        for (int64_t s : s_list)
            for (int64_t n : n_list)
                for (int64_t c : c_list)
                    for (int64_t rk : rank_list)
                        for (int64_t seed : seed_list) {
                            Cell cell = proto;
                            if (s >= 0)
                                cell.s = s;
                            if (n >= 0)
                                cell.n = n;
                            if (c >= 0)
                                cell.copies = c;
                            if (rk >= 0)
                                cell.rank = rk;
                            cell.seed = static_cast<uint64_t>(seed);
                            cell.index = static_cast<int>(cells.size());
                            cells.push_back(std::move(cell));
                        }
    }
    return cells;
}

const std::vector<std::string>& columns() {
    static const std::vector<std::string> cols = {
        "cell",        "kind",      "dims",          "s",
        "n",           "copies",    "rank",          "seed",
        "restarts",    "trials",    "verdict",       "count",
        "expected",    "saturated", "best_overlap",  "min_diag",
        "max_offdiag", "predicted_success", "empirical_success", "misidentified"};
    return cols;
}

json run_cell(const Cell& cell) {
    json rec;
    for (const auto& c : columns())
        rec[c] = nullptr;
    rec["cell"] = cell.index;
    rec["kind"] = cell.kind;
    rec["dims"] = dims_label(cell.space);
    rec["seed"] = cell.seed;
    rec["restarts"] = cell.cfg.restarts;
    if (cell.s)
        rec["s"] = *cell.s;
    if (cell.n)
        rec["n"] = *cell.n;
    if (cell.copies)
        rec["copies"] = *cell.copies;
    if (cell.rank)
        rec["rank"] = *cell.rank;
    if (cell.trials > 0)
        rec["trials"] = cell.trials;

    RngStream rng(cell.seed);

    if (cell.kind == "find-product") {
        if (!cell.s)
            throw InvalidInput("sweep: find-product cells need s");
        const Subspace S = random_subspace(cell.space, static_cast<int>(*cell.s), rng);
        const SearchResult res = find_product_in_subspace(S, cell.cfg, rng);
        rec["verdict"] = to_string(res.verdict);
        rec["best_overlap"] = res.best_overlap;
    } else if (cell.kind == "count-product") {
        if (!cell.s)
            throw InvalidInput("sweep: count-product cells need s");
        const auto expected = bounds::generic_product_count(cell.space, *cell.s);
        if (!expected) {
            rec["verdict"] = "infinite";
            rec["expected"] = "infinite";
        } else {
            const Subspace S = random_subspace(cell.space, static_cast<int>(*cell.s), rng);
            const CountResult res = enumerate_products(S, cell.cfg, rng);
            rec["verdict"] = "finite";
            rec["count"] = res.count;
            rec["expected"] = res.formula_expected;
            rec["saturated"] = res.saturated;
        }
    } else if (cell.kind == "find-low-rank") {
        if (!cell.s || !cell.rank)
            throw InvalidInput("sweep: find-low-rank cells need s and rank");
        const Subspace S = random_subspace(cell.space, static_cast<int>(*cell.s), rng);
        const LowRankResult res =
            find_low_rank_in_subspace(S, static_cast<int>(*cell.rank), cell.cfg, rng);
        rec["verdict"] = to_string(res.verdict);
        rec["best_overlap"] = res.best_overlap;
        rec["count"] = static_cast<int64_t>(res.fixed_points.size());
        if (cell.space.factor_count() == 2) {
            const int d1 = cell.space.dims()[0], d2 = cell.space.dims()[1];
            const int64_t cap = bounds::schmidt_smax(d1, d2, static_cast<int>(*cell.rank));
            if (*cell.s <= cap)
                rec["expected"] = 0;
            else if (*cell.s == cap + 1)
                rec["expected"] = bounds::determinantal_degree(std::min(d1, d2), std::max(d1, d2),
                                                               static_cast<int>(*cell.rank));
            else
                rec["expected"] = "infinite";
        }
    } else if (cell.kind == "certify") {
        if (!cell.n)
            throw InvalidInput("sweep: certify cells need n");
        const int copies = cell.copies ? static_cast<int>(*cell.copies) : 1;
        if (std::pow(static_cast<double>(cell.space.dim()), copies) <
            static_cast<double>(*cell.n)) {
            // n independent states cannot fit in the lifted space, so no
            // certificate exists; a certain failure rather than an error
            rec["verdict"] = "search-failure";
            return rec;
        }
        std::vector<StateVector> states;
        for (int64_t k = 0; k < *cell.n; ++k)
            states.push_back(cell.product_inputs ? random_product_state(cell.space, rng).global()
                                                 : random_state(cell.space, rng));
        const CertifyOutcome outcome = multicopy_certificate(states, copies, cell.cfg, rng);
        if (const auto* cert = std::get_if<Certificate>(&outcome)) {
            const auto rep = validate_certificate(*cert);
            rec["verdict"] = "valid";
            rec["min_diag"] = rep.min_diag;
            rec["max_offdiag"] = rep.max_offdiag;
            if (cell.trials > 0) {
                const UnambiguousPovm povm = build_povm(*cert);
                rec["predicted_success"] = predicted_success(povm, *cert);
                const SimulationReport sim = simulate(povm, *cert, cell.trials, rng);
                rec["empirical_success"] = sim.success_rate;
                rec["misidentified"] = sim.misidentified_total;
            }
        } else {
            const auto& fail = std::get<SearchFailure>(outcome);
            rec["verdict"] = "search-failure";
            rec["best_overlap"] = fail.best_overlap;
        }
    } else if (cell.kind == "verdict") {
        if (!cell.n)
            throw InvalidInput("sweep: verdict cells need n");
        const int64_t copies = cell.copies ? *cell.copies : 1;
        rec["verdict"] = to_string(generic_verdict(cell.space, *cell.n, copies));
        rec["expected"] = bounds::locc_threshold(cell.space, copies);
    }
    return rec;
}

std::string csv_header() {
    std::string line;
    for (size_t i = 0; i < columns().size(); ++i) {
        if (i)
            line += ',';
        line += columns()[i];
    }
    return line;
}

std::string csv_row(const json& record) {
    std::string line;
    for (size_t i = 0; i < columns().size(); ++i) {
        if (i)
            line += ',';
        const json& v = record.at(columns()[i]);
        if (v.is_null())
            continue;
        // dump() keeps numeric formatting identical to the JSON payload
        std::string cell = v.dump();
        if (v.is_string())
            cell = cell.substr(1, cell.size() - 2);
        line += cell;
    }
    return line;
}

namespace {

std::set<int> completed_cells(const std::string& content, const std::string& format) {
    std::set<int> done;
    if (format == "json") {
        json arr = json::parse(content, nullptr, false);
        if (arr.is_array())
            for (const auto& rec : arr)
                if (rec.is_object() && rec.contains("cell"))
                    done.insert(rec["cell"].get<int>());
        return done;
    }
    std::istringstream in(content);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) { // header
            first = false;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            continue;
        try {
            done.insert(std::stoi(line.substr(0, comma)));
        } catch (...) {
        }
    }
    return done;
}

json record_from_existing(const std::string& content, const std::string& format, int cell) {
    if (format == "json") {
        json arr = json::parse(content);
        for (const auto& rec : arr)
            if (rec.value("cell", -1) == cell)
                return rec;
    } else {
        std::istringstream in(content);
        std::string line;
        std::getline(in, line); // header
        while (std::getline(in, line)) {
            const auto comma = line.find(',');
            if (comma != std::string::npos && line.substr(0, comma) == std::to_string(cell)) {
                json rec;
                std::istringstream fields(line);
                std::string field;
                for (const auto& col : columns()) {
                    if (!std::getline(fields, field, ','))
                        field.clear();
                    if (field.empty())
                        rec[col] = nullptr;
                    else {
                        json parsed = json::parse(field, nullptr, false);
                        rec[col] = parsed.is_discarded() ? json(field) : parsed;
                    }
                }
                return rec;
            }
        }
    }
    throw InvalidInput("sweep resume: cell record vanished");
}

} // namespace

SweepOutcome run_sweep(const json& spec, const std::optional<std::string>& existing_output,
                       const std::string& format) {
    const auto cells = expand(spec);
    std::set<int> done;
    std::string existing;
    if (existing_output) {
        std::ifstream in(*existing_output);
        if (in) {
            std::ostringstream buf;
            buf << in.rdbuf();
            existing = buf.str();
            done = completed_cells(existing, format);
        }
    }

    SweepOutcome out;
    for (const auto& cell : cells) {
        if (done.count(cell.index)) {
            out.records.push_back(record_from_existing(existing, format, cell.index));
            ++out.resumed;
        } else {
            out.records.push_back(run_cell(cell));
            ++out.computed;
        }
    }
    return out;
}

std::string render(const SweepOutcome& outcome, const std::string& format) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& rec : outcome.records)
            arr.push_back(rec);
        return arr.dump(2) + "\n";
    }
    std::string text = csv_header() + "\n";
    for (const auto& rec : outcome.records)
        text += csv_row(rec) + "\n";
    return text;
}

} // namespace sweep
} // namespace entsub
