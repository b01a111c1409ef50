#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "entsub/cli.hpp"
#include "entsub/json_io.hpp"

using namespace entsub;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
    json doc() const { return json::parse(out); }
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = std::string("/tmp/entsub_test_") + name;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("bounds subcommand emits the threshold report") {
    auto res = run_cli({"bounds", "--dims", "2,2,2"});
    REQUIRE(res.code == 0);
    auto payload = res.doc()["payload"];
    CHECK(payload["s_max"] == 4);
    CHECK(payload["segre_degree"] == 6);
    CHECK(payload["locc_threshold"] == 4);
}

TEST_CASE("verdict subcommand applies the threshold") {
    auto res = run_cli({"verdict", "--dims", "2,2", "--n", "4", "--copies", "1"});
    REQUIRE(res.code == 0);
    CHECK(res.doc()["payload"]["verdict"] == "expected-indistinguishable");
}

TEST_CASE("identical argv produces byte-identical payloads") {
    const std::vector<std::string> argv = {"certify", "--dims", "2,2", "--n", "3",
                                           "--seed",  "9"};
    auto a = run_cli(argv);
    auto b = run_cli(argv);
    REQUIRE(a.code == 0);
    CHECK(a.doc()["payload"].dump() == b.doc()["payload"].dump());
    CHECK(a.doc()["config"].dump() == b.doc()["config"].dump());
}

TEST_CASE("sampled artifacts feed back into the searches") {
    TempFile sub("sub.json");
    auto s = run_cli({"sample-subspace", "--dims", "2,2", "--s", "2", "--seed", "3", "--out",
                      sub.path});
    REQUIRE(s.code == 0);
    auto f = run_cli({"find-product", sub.path, "--seed", "4"});
    REQUIRE(f.code == 0);
    CHECK(f.doc()["payload"]["verdict"] == "found");
    auto c = run_cli({"count-product", sub.path, "--seed", "4"});
    REQUIRE(c.code == 0);
    CHECK(c.doc()["payload"]["count"] == 2);
}

TEST_CASE("certify pipes into simulate") {
    TempFile cert("cert.json");
    auto c = run_cli({"certify", "--dims", "2,2", "--n", "3", "--seed", "11", "--out", cert.path});
    REQUIRE(c.code == 0);
    auto s = run_cli({"simulate", "--cert", cert.path, "--trials", "20000", "--seed", "2"});
    REQUIRE(s.code == 0);
    auto payload = s.doc()["payload"];
    CHECK(payload["misidentified_total"] == 0);
    CHECK(payload["within_3sigma"] == true);
}

TEST_CASE("exit codes distinguish input errors from search failures") {
    auto bad = run_cli({"bounds", "--dims", "1,2"});
    CHECK(bad.code == 2);
    CHECK(json::parse(bad.err)["error"]["type"] == "invalid-input");

    auto unknown = run_cli({"no-such-command"});
    CHECK(unknown.code == 2);

    auto fail = run_cli({"certify", "--dims", "2,2", "--n", "4", "--seed", "1"});
    CHECK(fail.code == 3);
    CHECK(fail.doc()["payload"]["verdict"] == "search-failure");
    CHECK(fail.doc()["payload"]["complement_cut_ranks"] == json::array({2, 2}));

    TempFile sub("sub_infinite.json");
    run_cli({"sample-subspace", "--dims", "2,2", "--s", "3", "--seed", "3", "--out", sub.path});
    auto infinite = run_cli({"count-product", sub.path});
    CHECK(infinite.code == 2);
    CHECK(json::parse(infinite.err)["error"]["message"].get<std::string>().find("infinite") !=
          std::string::npos);
}

TEST_CASE("threshold sweep flips at the closed-form boundary") {
    TempFile spec("sweep_spec.json");
    {
        std::ofstream f(spec.path);
        f << R"({"cells":[{"kind":"certify","dims":[2,2],"n":[2,3,4,5,6],"seed":5,"restarts":60}]})";
    }
    auto res = run_cli({"sweep", spec.path});
    REQUIRE(res.code == 0);
    std::istringstream lines(res.out);
    std::string line;
    std::getline(lines, line); // header
    std::vector<std::string> verdicts;
    while (std::getline(lines, line)) {
        std::istringstream fields(line);
        std::string cell;
        for (int c = 0; c <= 10; ++c)
            std::getline(fields, cell, ',');
        verdicts.push_back(cell);
    }
    REQUIRE(verdicts.size() == 5);
    CHECK(verdicts[0] == "valid");
    CHECK(verdicts[1] == "valid");
    CHECK(verdicts[2] == "search-failure");
    CHECK(verdicts[3] == "search-failure");
    CHECK(verdicts[4] == "search-failure");
}

TEST_CASE("count sweep reports the three regimes") {
    TempFile spec("sweep_count.json");
    {
        std::ofstream f(spec.path);
        f << R"({"cells":[{"kind":"count-product","dims":[2,2],"s":[1,2,3],"seed":7}]})";
    }
    auto res = run_cli({"sweep", spec.path, "--format", "json"});
    REQUIRE(res.code == 0);
    json rows = json::parse(res.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0]["count"] == 0);
    CHECK(rows[1]["count"] == 2);
    CHECK(rows[2]["verdict"] == "infinite");
    CHECK(rows[2]["count"].is_null());
}

TEST_CASE("empty sweeps emit only the header") {
    TempFile spec("sweep_empty.json");
    {
        std::ofstream f(spec.path);
        f << R"({"cells":[]})";
    }
    auto res = run_cli({"sweep", spec.path});
    REQUIRE(res.code == 0);
    std::istringstream lines(res.out);
    std::string header, line;
    REQUIRE(std::getline(lines, header));
    CHECK(header.substr(0, 9) == "cell,kind");
    CHECK_FALSE(std::getline(lines, line));
}

TEST_CASE("sweeps resume by cell") {
    TempFile spec("sweep_resume.json");
    TempFile out("sweep_resume.csv");
    {
        std::ofstream f(spec.path);
        f << R"({"cells":[{"kind":"verdict","dims":[2,2],"n":[2,3],"seed":1}]})";
    }
    auto first = run_cli({"sweep", spec.path, "--out", out.path});
    REQUIRE(first.code == 0);
    std::string before;
    {
        std::ifstream f(out.path);
        std::ostringstream buf;
        buf << f.rdbuf();
        before = buf.str();
    }
    // grow the grid; the first two cells come back from the existing file
    {
        std::ofstream f(spec.path);
        f << R"({"cells":[{"kind":"verdict","dims":[2,2],"n":[2,3,4],"seed":1}]})";
    }
    auto second = run_cli({"sweep", spec.path, "--out", out.path});
    REQUIRE(second.code == 0);
    std::ifstream f(out.path);
    std::string header, l0, l1, l2;
    std::getline(f, header);
    std::getline(f, l0);
    std::getline(f, l1);
    std::getline(f, l2);
    CHECK(before.find(l0) != std::string::npos);
    CHECK(before.find(l1) != std::string::npos);
    CHECK(l2.find("expected-indistinguishable") != std::string::npos);
}

TEST_CASE("csv and json sweep payloads agree field for field") {
    TempFile spec("sweep_agree.json");
    {
        std::ofstream f(spec.path);
        f << R"({"cells":[{"kind":"count-product","dims":[2,2],"s":2,"seed":3}]})";
    }
    auto csv = run_cli({"sweep", spec.path});
    auto js = run_cli({"sweep", spec.path, "--format", "json"});
    REQUIRE(csv.code == 0);
    REQUIRE(js.code == 0);
    json row = json::parse(js.out)[0];
    std::istringstream lines(csv.out);
    std::string header, data;
    std::getline(lines, header);
    std::getline(lines, data);
    std::istringstream hs(header), ds(data);
    std::string col, val;
    while (std::getline(hs, col, ',')) {
        std::getline(ds, val, ',');
        const json& jv = row.at(col);
        if (jv.is_null())
            CHECK(val.empty());
        else if (jv.is_string())
            CHECK(val == jv.get<std::string>());
        else
            CHECK(val == jv.dump());
    }
}
