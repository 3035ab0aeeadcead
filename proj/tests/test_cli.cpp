#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int status = -1;
    std::string out, err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Run the installed binary through the shell with stdout/stderr captured in
// scratch files; every argument is single-quoted (none of ours contain one).
CliResult run_cli(const std::vector<std::string>& args) {
    static int counter = 0;
    ++counter;
    fs::path dir = fs::temp_directory_path();
    fs::path outp = dir / ("wfem_cli_out_" + std::to_string(counter) + ".txt");
    fs::path errp = dir / ("wfem_cli_err_" + std::to_string(counter) + ".txt");

    std::string cmd = "'" + std::string(WFEM_CLI_PATH) + "'";
    for (const std::string& a : args) cmd += " '" + a + "'";
    cmd += " > '" + outp.string() + "' 2> '" + errp.string() + "'";

    int rc = std::system(cmd.c_str());
    CliResult res;
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = slurp(outp);
    res.err = slurp(errp);
    fs::remove(outp);
    fs::remove(errp);
    return res;
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

}  // namespace

TEST_CASE("cli: registry listing") {
    CliResult r = run_cli({"--list-problems"});
    CHECK(r.status == 0);
    std::vector<std::string> lines = split_lines(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "paper-5.6");
    CHECK(lines[1] == "paper-5.6-a0zero");
    CHECK(lines[2] == "poisson-quadratic");
}

TEST_CASE("cli: convergence study in csv") {
    std::vector<std::string> args = {"convergence", "--problem", "paper-5.6",
                                     "--k", "0", "--levels", "4", "8", "16", "32",
                                     "64", "128", "--format", "csv"};
    CliResult r = run_cli(args);
    REQUIRE(r.status == 0);
    std::vector<std::string> lines = split_lines(r.out);
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "h,e_H1,rate,e_L2,rate,e_node,rate");
    std::vector<std::string> last = split_csv(lines.back());
    REQUIRE(last.size() == 7);
    double rate_l2 = std::stod(last[4]);
    CHECK(rate_l2 > 1.9);
    CHECK(rate_l2 < 2.1);
    // First level leaves the rate fields empty.
    std::vector<std::string> first = split_csv(lines[1]);
    REQUIRE(first.size() == 7);
    CHECK(first[2].empty());
    CHECK(first[4].empty());
    CHECK(first[6].empty());

    CliResult again = run_cli(args);
    CHECK(again.status == 0);
    CHECK(again.out == r.out);
}

TEST_CASE("cli: solve with both strategies in json") {
    CliResult r = run_cli({"solve", "--problem", "poisson-quadratic", "--k", "2",
                           "--mesh-n", "8", "--method", "both", "--format", "json"});
    REQUIRE(r.status == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "solve");
    CHECK(j["problem"] == "poisson-quadratic");
    CHECK(j["k"] == 2);
    CHECK(j["r"] == 3);
    CHECK(j["n_q"] == 6);
    CHECK(j["method"] == "both");
    CHECK(j["mesh"].size() == 9);
    CHECK(j["node_values"].size() == 9);
    CHECK(j["interior_coeffs"].size() == 8);
    CHECK(j["residual_norm"].get<double>() <= 1e-12);
    CHECK(j["method_discrepancy"].get<double>() <= 1e-10);
    CHECK(j["errors"]["e_node"].get<double>() <= 1e-11);
    CHECK(j["errors"]["e_H1"].get<double>() <= 1e-11);
    CHECK(j["stability"]["holds"].get<bool>());
    CHECK(j["stability"]["bound_factor"].get<double>() == doctest::Approx(8.0));
    REQUIRE(j.contains("sweep"));
    CHECK(std::fabs(j["sweep"]["left_boundary_residual"].get<double>()) <= 1e-9);
}

TEST_CASE("cli: sweep closure diagnostics in json") {
    CliResult sine = run_cli({"solve", "--problem", "paper-5.6", "--k", "1", "--mesh-n",
                               "32", "--method", "sweep", "--format", "json"});
    REQUIRE(sine.status == 0);
    nlohmann::json jp = nlohmann::json::parse(sine.out);
    REQUIRE(jp.contains("sweep"));
    CHECK_FALSE(jp["sweep"]["closure_degenerate"].get<bool>());
    CHECK(jp["sweep"]["closure_coeff"].is_number());

    CliResult poisson = run_cli({"solve", "--problem", "poisson-quadratic", "--k", "1",
                                 "--mesh-n", "8", "--method", "sweep", "--format", "json"});
    REQUIRE(poisson.status == 0);
    nlohmann::json jq = nlohmann::json::parse(poisson.out);
    CHECK(jq["sweep"]["closure_degenerate"].get<bool>());
    // Not-a-number serializes as null: the coefficient is undefined here.
    CHECK(jq["sweep"]["closure_coeff"].is_null());
}

TEST_CASE("cli: inline problem solve") {
    CliResult r = run_cli({"solve", "--problem", "inline", "--a2", "1", "--f", "2",
                           "--interval", "0", "1", "--amin", "1", "--k", "1",
                           "--mesh-n", "8", "--format", "json"});
    REQUIRE(r.status == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK_FALSE(j.contains("errors"));  // no closed-form solution to compare against
    double end = j["node_values"].back().get<double>();
    CHECK(std::fabs(end - 1.0) <= 1e-10);
}

TEST_CASE("cli: inline convection goes through the integrating factor") {
    // -u'' + u' = 1 with u(0) = 0, u'(1) = 0 has u(1) = exp(-1).
    CliResult r = run_cli({"solve", "--problem", "inline", "--a2", "1", "--a1", "1",
                           "--f", "1", "--interval", "0", "1", "--amin", "1", "--k", "1",
                           "--mesh-n", "16", "--format", "json"});
    REQUIRE(r.status == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    double end = j["node_values"].back().get<double>();
    CHECK(std::fabs(end - std::exp(-1.0)) <= 5e-3);
}

TEST_CASE("cli: expression grammar") {
    CliResult ok = run_cli({"solve", "--problem", "inline", "--a2", "2+cos(pi*x)",
                            "--f", "sin(pi*x)+x^2", "--interval", "0", "1", "--amin",
                            "1", "--k", "0", "--mesh-n", "4", "--format", "json"});
    CHECK(ok.status == 0);

    CliResult bad = run_cli({"solve", "--problem", "inline", "--a2", "1+", "--f", "2",
                             "--interval", "0", "1", "--amin", "1"});
    CHECK(bad.status == 2);
    CHECK(bad.err.find("invalid configuration") != std::string::npos);
    CHECK(bad.err.find("position") != std::string::npos);
}

TEST_CASE("cli: validation failures exit with status 2") {
    CHECK(run_cli({"solve", "--problem", "paper-5.6", "--k=-1"}).status == 2);
    CHECK(run_cli({"solve", "--problem", "no-such-problem"}).status == 2);
    CHECK(run_cli({"solve", "--problem", "paper-5.6", "--method", "fastest"}).status == 2);
    CHECK(run_cli({"solve", "--problem", "paper-5.6", "--format", "xml"}).status == 2);
    CHECK(run_cli({"convergence", "--problem", "inline", "--a2", "1", "--f", "1",
                   "--levels", "4", "8"})
              .status == 2);
    CHECK(run_cli({"convergence", "--problem", "paper-5.6"}).status == 2);
    CHECK(run_cli({"solve", "--problem", "paper-5.6", "--k", "1", "--r", "1"}).status == 2);
    CHECK(run_cli({"solve", "--problem", "poisson-quadratic", "--mesh-nodes", "0", "0.5"})
              .status == 2);

    CliResult none = run_cli({"--problem", "paper-5.6"});
    CHECK(none.status == 2);
    CHECK(none.err.find("expected a subcommand") != std::string::npos);

    CliResult neg = run_cli({"solve", "--problem", "paper-5.6", "--k=-1"});
    CHECK(neg.err.find("invalid configuration") != std::string::npos);
}

TEST_CASE("cli: configuration file with command-line override") {
    fs::path cfg = fs::temp_directory_path() / "wfem_cli_cfg.ini";
    {
        std::ofstream f(cfg);
        f << "problem=poisson-quadratic\n"
          << "k=2\n"
          << "mesh-n=4\n"
          << "method=global\n"
          << "format=json\n";
    }
    CliResult base = run_cli({"--config", cfg.string(), "solve"});
    REQUIRE(base.status == 0);
    nlohmann::json jb = nlohmann::json::parse(base.out);
    CHECK(jb["problem"] == "poisson-quadratic");
    CHECK(jb["k"] == 2);
    CHECK(jb["mesh"].size() == 5);

    CliResult over = run_cli({"--config", cfg.string(), "solve", "--k", "1"});
    REQUIRE(over.status == 0);
    nlohmann::json jo = nlohmann::json::parse(over.out);
    CHECK(jo["k"] == 1);
    fs::remove(cfg);
}

TEST_CASE("cli: artifact file matches stdout") {
    std::vector<std::string> base = {"convergence", "--problem", "paper-5.6", "--k", "1",
                                     "--levels", "4", "8", "--format", "markdown"};
    CliResult direct = run_cli(base);
    REQUIRE(direct.status == 0);

    fs::path outp = fs::temp_directory_path() / "wfem_cli_artifact.md";
    std::vector<std::string> filed = base;
    filed.push_back("--out");
    filed.push_back(outp.string());
    CliResult via = run_cli(filed);
    REQUIRE(via.status == 0);
    CHECK(via.out.empty());
    CHECK(slurp(outp) == direct.out);
    fs::remove(outp);

    std::vector<std::string> broken = base;
    broken.push_back("--out");
    broken.push_back("/nonexistent-dir/deeper/artifact.md");
    CliResult bad = run_cli(broken);
    CHECK(bad.status == 3);
    CHECK(bad.err.find("runtime error") != std::string::npos);
}

TEST_CASE("cli: text formats for solve") {
    CliResult md = run_cli({"solve", "--problem", "paper-5.6", "--k", "0", "--mesh-n", "4",
                            "--method", "sweep"});
    REQUIRE(md.status == 0);
    CHECK(md.out.find("| node | x | u_h |") != std::string::npos);
    CHECK(md.out.find("stability_holds: true") != std::string::npos);
    CHECK(md.out.find("sweep_shoot_coeff") != std::string::npos);

    CliResult csv = run_cli({"solve", "--problem", "paper-5.6", "--k", "0", "--mesh-n", "4",
                             "--format", "csv"});
    REQUIRE(csv.status == 0);
    std::vector<std::string> lines = split_lines(csv.out);
    REQUIRE(!lines.empty());
    CHECK(lines[0] == "node,x,u_h");
    CHECK(csv.out.find("stability_holds,true") != std::string::npos);
    CHECK(csv.out.find("e_node,") != std::string::npos);
}
