#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "perclab/cli.hpp"

using namespace perclab;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  auto r = run(std::move(args));
  REQUIRE_MESSAGE(r.code == 0, r.err);
  return json::parse(r.out);
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string& header) {
  std::istringstream in(text);
  std::getline(in, header);
  std::vector<std::vector<double>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<double> row;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

const std::string kE2 = R"({"family":"two-point","degrees":[3,6],"p":0.68333333333333333})";

}  // namespace

TEST_CASE("giant: point mass 3, site 0.6") {
  auto j = run_json({"giant", "--dist", "point:3", "--pi", "0.6", "--n", "100000", "--seed", "1"});
  CHECK(j["v_frac"].get<double>() == doctest::Approx(19.0 / 45).epsilon(1e-11));
  CHECK(std::abs(j["sim_v_frac"].get<double>() - 0.4222) < 0.01);
  for (const char* key : {"pi", "xi", "rho", "v_frac", "e_frac", "sim_v_frac", "sim_e_frac", "n", "seed"})
    CHECK(j.contains(key));
  CHECK(j["seed"] == 1);
  CHECK(j["n"] == 100000);
}

TEST_CASE("giant: trivial and closed-form cases") {
  auto z = run_json({"giant", "--dist", "poisson:4", "--pi", "0"});
  CHECK(z["v_frac"] == 0.0);
  CHECK(z["e_frac"] == 0.0);
  CHECK(z["rho"] == 0.0);
  auto t = run_json({"giant", "--dist", R"({"family":"two-point","degrees":[1,3],"weights":[0.5,0.5]})"});
  CHECK(t["v_frac"].get<double>() == doctest::Approx(22.0 / 27).epsilon(1e-11));
  auto b = run_json({"giant", "--dist", "point:3", "--mode", "bond", "--pi", "0.6", "--n", "20000", "--seed", "4",
                     "--method", "direct"});
  CHECK(b["v_frac"].get<double>() == doctest::Approx(19.0 / 27).epsilon(1e-11));
  CHECK(std::abs(b["sim_v_frac"].get<double>() - 19.0 / 27) < 0.02);
}

TEST_CASE("numbers carry 12 significant digits") {
  auto r = run({"giant", "--dist", "point:3", "--pi", "0.6"});
  CHECK(r.out.find("0.422222222222") != std::string::npos);
  CHECK(r.out.find("0.4222222222222") == std::string::npos);
}

TEST_CASE("kcore-curve CSV") {
  auto r = run({"kcore-curve", "--dist", "poisson:10", "--k", "3", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::string header;
  auto rows = parse_csv(r.out, header);
  CHECK(header == "p,phi,h,h1");
  CHECK(r.out.find(';') == std::string::npos);
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i)
    if (rows[i][1] > rows[i - 1][1] && rows[i][1] > rows[i + 1][1]) ++maxima;
  CHECK(maxima == 1);

  auto pm = run({"kcore-curve", "--dist", "point:3", "--k", "3", "--format", "csv", "--points", "50"});
  auto prow = parse_csv(pm.out, header);
  CHECK(prow.size() == 50);
  for (auto& row : prow) CHECK(row[1] == doctest::Approx(3 * row[0]).epsilon(1e-11));
}

TEST_CASE("kcore-curve oscillates for the decade mixture") {
  auto r = run({"kcore-curve", "--dist", std::string(PERCLAB_DATA_DIR) + "/figure2_decades.json", "--k", "3", "--format", "csv"});
  REQUIRE_MESSAGE(r.code == 0, r.err);
  std::string header;
  auto rows = parse_csv(r.out, header);
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i)
    if (rows[i][1] > rows[i - 1][1] && rows[i][1] > rows[i + 1][1]) ++maxima;
  CHECK(maxima >= 3);
}

TEST_CASE("transitions") {
  auto e2 = run_json({"transitions", "--dist", kE2, "--k", "3"});
  REQUIRE(e2["transitions"].size() == 2);
  CHECK(e2["transitions"][1]["order"] == "boundary-at-1");
  CHECK(e2["transitions"][1]["pi_tilde"] == 1.0);
  auto po = run_json({"transitions", "--dist", "poisson:10", "--k", "3"});
  REQUIRE(po["transitions"].size() == 1);
  CHECK(po["transitions"][0]["order"] == "first-order");
}

TEST_CASE("bootstrap") {
  auto j = run_json({"bootstrap", "--d", "4", "--ell", "2", "--q", "0.05", "--n", "100000", "--seed", "8", "--check"});
  CHECK(std::abs(j["sim_final_frac"].get<double>() - 0.0688) < 0.01);
  CHECK(j["q_c"].get<double>() == doctest::Approx(1.0 / 9).epsilon(1e-10));
  CHECK(j["correspondence_pass_fraction"] == 1.0);
  auto full = run_json({"bootstrap", "--d", "4", "--ell", "2", "--q", "0.2", "--n", "10000", "--seed", "8", "--reps", "3"});
  CHECK(full["predicted_fully_infected"] == true);
  CHECK(full["sim_fully_infected_fraction"] == 1.0);
}

TEST_CASE("branching") {
  auto j = run_json({"branching", "--dist", "two-point:1,3,0.5", "--k", "2", "--depth", "5", "--reps", "20000", "--seed", "3"});
  CHECK(j["p_max_recursion"].get<double>() == doctest::Approx(2.0 / 3).epsilon(1e-10));
  CHECK(j["survival_probability"].get<double>() == doctest::Approx(2.0 / 3).epsilon(1e-10));
  double est = j["mc"]["estimate"], se = j["mc"]["stderr"], target = j["mc"]["target"];
  CHECK(std::abs(est - target) <= 3 * se);
  auto r = run({"branching", "--dist", "poisson:10", "--k", "3", "--depth", "20", "--reps", "10000", "--seed", "3"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("budget") != std::string::npos);
}

TEST_CASE("compare") {
  auto ok = run({"compare", "--what", "giant", "--dist", "point:3", "--pi", "1", "--n", "20000", "--seed", "2", "--tol", "0.02"});
  CHECK(ok.code == kExitOk);
  CHECK(json::parse(ok.out)["pass"] == true);
  auto fail = run({"compare", "--what", "giant", "--dist", "poisson:2", "--pi", "0.9", "--n", "2000", "--seed", "2", "--tol", "0"});
  CHECK(fail.code == kExitTolerance);
  CHECK(json::parse(fail.out)["pass"] == false);
  auto core = run({"compare", "--what", "kcore", "--dist", "poisson:10", "--k", "3", "--pi", "0.7", "--n", "50000", "--seed", "2", "--reps", "4", "--tol", "0.02"});
  CHECK_MESSAGE(core.code == kExitOk, core.out);
  auto boot = run({"compare", "--what", "bootstrap", "--d", "3", "--ell", "2", "--q", "0.3", "--n", "50000", "--seed", "2"});
  CHECK_MESSAGE(boot.code == kExitOk, boot.out);
}

TEST_CASE("usage errors and strict mode") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"giant", "--dist", "point:3", "--n", "100"}).code == kExitUsage);  // no seed
  CHECK(run({"giant", "--dist", "nonsense:3"}).code == kExitUsage);
  CHECK(run({"giant", "--dist", R"({"family":"poisson","mean":2,"extra":1})"}).code == kExitUsage);
  CHECK(run({"giant", "--dist", "point:3", "--mode", "sideways"}).code == kExitUsage);
  CHECK(run({"giant", "--dist", "point:3", "--pi", "1.5"}).code == kExitUsage);
  auto warn = run({"giant", "--dist", "point:3", "--pi", "0.5"});
  CHECK(warn.code == kExitOk);
  CHECK(warn.err.find("warning") != std::string::npos);
  CHECK(run({"giant", "--dist", "point:3", "--pi", "0.5", "--strict"}).code == kExitStrict);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("per-degree retention and fixed-count modes") {
  auto j = run_json({"giant", "--dist", "point:3", "--mode", "site-per-degree", "--pis", R"({"values":[1,1,1],"beyond":0.6})",
                     "--n", "20000", "--seed", "5"});
  CHECK(j["v_frac"].get<double>() == doctest::Approx(19.0 / 45).epsilon(1e-11));
  CHECK(std::abs(j["sim_v_frac"].get<double>() - 19.0 / 45) < 0.02);
  auto f = run_json({"giant", "--dist", "point:3", "--mode", "fixed", "--m", "8000", "--n", "20000", "--seed", "5"});
  CHECK(f["pi"].get<double>() == doctest::Approx(0.6));
  CHECK(std::abs(f["sim_v_frac"].get<double>() - 19.0 / 45) < 0.02);
}

TEST_CASE("byte-identical reruns, independent of thread count") {
  std::vector<std::string> cmd = {"giant", "--dist", "poisson:3", "--n", "5000", "--seed", "77", "--reps", "6", "--threads", "1"};
  auto a = run(cmd);
  auto b = run(cmd);
  cmd.back() = "3";
  auto c = run(cmd);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  auto p1 = run({"percolate", "--dist", "poisson:3", "--n", "3000", "--seed", "5", "--reps", "4", "--threads", "2", "--k", "3"});
  auto p2 = run({"percolate", "--dist", "poisson:3", "--n", "3000", "--seed", "5", "--reps", "4", "--threads", "1", "--k", "3"});
  CHECK(p1.out == p2.out);
  auto g1 = run({"generate", "--dist", "poisson:3", "--n", "200", "--seed", "5", "--format", "edges"});
  auto g2 = run({"generate", "--dist", "poisson:3", "--n", "200", "--seed", "6", "--format", "edges"});
  CHECK(g1.out != g2.out);
}
