#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "doctest.h"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ramsey0::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(RAMSEY0_GOLDEN_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("ramsey0_cli_" + name)).string();
}

}  // namespace

TEST_CASE("corpus commands match the golden files") {
  CHECK(run({"corpus", "list"}).out == golden("corpus_list.txt"));
  CHECK(run({"corpus", "show", "c6-3plus"}).out == golden("corpus_show_c6-3plus.txt"));
  CHECK(run({"corpus", "show", "k5-3-doubled"}).out == golden("corpus_show_k5-3-doubled.txt"));
  CHECK(run({"corpus", "show", "k6-fig2-coloring"}).out == golden("corpus_show_k6-fig2-coloring.txt"));
  CHECK(run({"corpus", "show", "k6-no-rainbow-k4"}).out == golden("corpus_show_k6-fig2-coloring.txt"));
  CHECK(run({"corpus", "show", "k5-3-no-rainbow-k4-3"}).out == golden("corpus_show_k5-3-no-rainbow-k4-3.txt"));
  CHECK(run({"--json", "density", "corpus:K4-3"}).out == golden("density_K4-3.json"));
  CHECK(run({"--json", "blocks", "corpus:c6-3plus", "corpus:C4"}).out == golden("blocks_c6-3plus_C4.json"));
  CHECK(run({"growseq", "corpus:K4", "corpus:K3"}).out == golden("growseq_K4_K3.txt"));
  CHECK(run({"--json", "decide", "bounded", "corpus:c6-3plus", "corpus:C4", "--no-counting-bound"}).out ==
        golden("decide_c6-3plus_C4.json"));
}

TEST_CASE("listed corpus names") {
  const auto out = run({"corpus", "list"}).out;
  for (const char* name : {"c6-3plus", "k5-3-doubled", "k6-fig2-coloring"}) {
    CHECK(out.find(name) != std::string::npos);
  }
  CHECK(run({"corpus", "show", "nonsense"}).code == 2);
}

TEST_CASE("decide and verify examples") {
  auto d = run({"decide", "bounded", "corpus:c6-3plus", "corpus:C4", "--r", "2"});
  CHECK(d.code == 0);
  CHECK(d.out.find("arrow=true") != std::string::npos);

  auto v = run({"verify", "corpus:K6", "corpus:K4", "corpus:k6-fig2-coloring", "--mode", "rainbow"});
  CHECK(v.code == 0);
  CHECK(v.out == "no rainbow copy\n");

  auto fails = run({"--json", "decide", "ramsey", "corpus:K5", "corpus:K3"});
  CHECK(fails.code == 0);
  const auto j = nlohmann::json::parse(fails.out);
  CHECK(j["arrow"] == false);
  CHECK(j["witness"]["colors"].size() == 10);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"--bogus", "corpus", "list"}).code == 2);
  CHECK(run({"density"}).code == 2);
  CHECK(run({"density", "/nonexistent/graph.txt"}).code == 2);
  CHECK(run({"decide", "sideways", "corpus:K4", "corpus:K3"}).code == 2);
  CHECK(run({"experiment", "--ell", "2", "--n", "50", "--p", "0.1", "--F", "corpus:K3"}).code == 2);
  // Not an F-block.
  CHECK(run({"growseq", "corpus:C5", "corpus:K3"}).code == 2);
  auto undecided = run({"decide", "bounded", "corpus:k5-3-doubled", "corpus:K4-3", "--max-nodes", "5",
                        "--no-counting-bound"});
  CHECK(undecided.code == 3);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("color then verify round trip") {
  const auto path = temp_path("k5_k3.col");
  auto c = run({"color", "ramsey", "corpus:K5", "corpus:K3", "--out", path});
  CHECK(c.code == 0);
  CHECK(run({"verify", "corpus:K5", "corpus:K3", path}).out == "no monochromatic copy\n");
  CHECK(run({"verify", "corpus:K5", "corpus:K3", path}).code == 0);

  // K6 cannot be 2-colored without a monochromatic triangle.
  CHECK(run({"color", "ramsey", "corpus:K6", "corpus:K3"}).code == 1);

  // A rainbow coloring is caught and the witness is printed.
  const auto rainbow = temp_path("rainbow.col");
  {
    std::ofstream out(rainbow);
    out << "coloring bounded 2\n";
    for (int e = 0; e < 6; ++e) out << e << ' ' << e << '\n';
  }
  auto bad = run({"verify", "corpus:K4", "corpus:K3", rainbow});
  CHECK(bad.code == 1);
  CHECK(bad.out.rfind("rainbow copy 0:", 0) == 0);
  auto bad_json = nlohmann::json::parse(run({"--json", "verify", "corpus:K4", "corpus:K3", rainbow}).out);
  CHECK(bad_json["witness"]["edges"].size() == 3);
  std::remove(path.c_str());
  std::remove(rainbow.c_str());
}

TEST_CASE("file inputs") {
  const auto path = temp_path("c6.txt");
  {
    std::ofstream out(path);
    out << "# the 6-cycle\n2 6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n";
  }
  auto d = nlohmann::json::parse(run({"--json", "density", path}).out);
  CHECK(d["m"] == "1");
  CHECK(d["m_ell"] == "5/4");
  std::remove(path.c_str());
}

TEST_CASE("search-obstructions streams JSON lines") {
  auto r = run({"search-obstructions", "bounded", "corpus:K3", "--vmax", "5", "--density", "2"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::vector<nlohmann::json> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(nlohmann::json::parse(line));
  REQUIRE(rows.size() >= 2);
  CHECK(rows.front()["type"] == "obstruction");
  CHECK(rows.front()["edges"].size() == 6);  // K4
  CHECK(rows.back()["type"] == "summary");
}

TEST_CASE("experiment reports are independent of the thread count") {
  const std::vector<std::string> base{"experiment", "--ell", "2",  "--n", "400", "--p", "n^(-2/5)", "--F",
                                      "corpus:K4",  "--reps", "2", "--seed", "7", "--no-timings"};
  auto one = base;
  one.insert(one.begin(), {"--json", "--threads", "1"});
  auto two = base;
  two.insert(two.begin(), {"--json", "--threads", "2"});
  const auto a = run(one);
  CHECK(a.code == 0);
  CHECK(a.out == run(two).out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["schema"] == "ramsey0.experiment/1");
  CHECK(j["samples"].size() == 2);

  auto sweep = run({"experiment", "--ell", "2", "--n", "300", "--p", "n^(-2/5)", "--F", "corpus:K4", "--reps", "2",
                    "--seed", "3", "--c-grid", "0.1,1/2"});
  CHECK(sweep.code == 0);
  CHECK(sweep.out.rfind("c,reps,successes", 0) == 0);
  CHECK(sweep.out.find("\n1/10,2,2,1,") != std::string::npos);
}
