#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ACCPERC_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(GOLDEN_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::vector<std::string> fields;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) fields.push_back(cell);
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST_CASE("outputs match the recorded files") {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"enumerate --L 4 --H 4", "enumerate_L4_H4.csv"},
      {"critical --alpha-grid 0.25,0.5,0.75,1", "critical.csv"},
      {"bounds --L 4 --H 3 --table majo --max-p 5", "majo_L4_H3.csv"},
      {"phi --L 5", "phi_L5.csv"},
      {"simulate --L 8 --x 0.1,0.4 --trials 3000 --seed 11 --direct", "simulate_L8.csv"},
      {"mset --L 3 --H 3 --list", "mset_L3_list.csv"},
  };
  for (const auto& [args, file] : cases) {
    INFO(args);
    const auto r = run(args);
    CHECK(r.status == 0);
    CHECK(r.out == golden(file));
  }
}

TEST_CASE("enumerate totals") {
  const auto rows = csv_rows(run("enumerate --L 4 --H 4").out);
  REQUIRE(rows.size() == 7);
  long total = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) total += std::stol(rows[i][3]);
  CHECK(total == 6432);
}

TEST_CASE("critical value") {
  const auto rows = csv_rows(run("critical --alpha 0.5").out);
  REQUIRE(rows.size() == 2);
  CHECK(std::stod(rows[1][1]) == doctest::Approx(0.278182).epsilon(1e-6));
}

TEST_CASE("simulate agrees with the exact two-dimensional answer") {
  const auto r = run("simulate --L 2 --x 0.5 --trials 20000 --seed 3");
  REQUIRE(r.status == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][6] == "p_hat");
  CHECK(std::abs(std::stod(rows[1][6]) - 0.75) < 3.0 * std::sqrt(0.75 * 0.25 / 20000));
}

TEST_CASE("same output for any worker count and across runs") {
  const std::string args = "simulate --L 10 --mode uniform --x 0.05,0.3 --trials 4000 --seed 5 --direct";
  const auto one = run(args + " --workers 1");
  CHECK(one.status == 0);
  CHECK(one.out == run(args + " --workers 1").out);
  CHECK(one.out == run(args + " --workers 8").out);
  const std::string sweep = "figure1 --L 6,8 --x-grid 0:0.3:0.1 --trials 1000 --seed 2";
  CHECK(run(sweep + " --workers 1").out == run(sweep + " --workers 8").out);
}

TEST_CASE("json and csv carry the same numbers") {
  const std::string args = "simulate --L 7 --mode fixedH --H 4 --x 0.2 --trials 1500 --seed 9";
  const auto rows = csv_rows(run(args).out);
  const auto doc = nlohmann::json::parse(run("--format json " + args).out);
  REQUIRE(rows.size() == 2);
  REQUIRE(doc.size() == 1);
  for (std::size_t c = 0; c < rows[0].size(); ++c) {
    const auto& key = rows[0][c];
    const auto& value = doc[0][key];
    INFO(key);
    if (value.is_string()) CHECK(value.get<std::string>() == rows[1][c]);
    else CHECK(value.get<double>() == std::stod(rows[1][c]));
  }
}

TEST_CASE("exit codes") {
  CHECK(run("no-such-command").status == 2);
  CHECK(run("simulate --L 6 --x 2").status == 2);
  CHECK(run("simulate --L 6 --mode fixedH --H 0 --x 0.5").status == 2);
  CHECK(run("simulate --L 30 --x 0.3 --trials 2").status == 3);
  CHECK(run("phi --L 40").status == 3);
  CHECK(run("enumerate --L 6 --H 6 --max-p 4 --budget-leaves 100").status == 4);
}
