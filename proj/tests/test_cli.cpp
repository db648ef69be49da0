#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string output;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(RAMAN_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.output += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("raman_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') quoted = !quoted;
      else if (ch == ',' && !quoted) {
        cells.push_back(cur);
        cur.clear();
      } else cur += ch;
    }
    cells.push_back(cur);
    rows.push_back(cells);
  }
  return rows;
}

bool no_temp_files(const fs::path& dir) {
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().filename().string().find(".tmp") != std::string::npos) return false;
  return true;
}

}  // namespace

TEST_CASE("figure writes panel CSVs and a plot script") {
  const auto out = scratch("fig4");
  const auto r = run("figure --id fig4 --out " + out.string());
  CHECK(r.code == 0);
  CHECK(fs::exists(out / "fig4_stimulated.csv"));
  CHECK(fs::exists(out / "fig4_spontaneous.csv"));
  CHECK(fs::exists(out / "fig4.plot"));
  CHECK(read_csv(out / "fig4_stimulated.csv").size() == 502);
  CHECK(no_temp_files(out));

  // Existing files are not replaced without --force.
  CHECK(run("figure --id fig4 --out " + out.string()).code == 1);
  CHECK(run("figure --id fig4 --force --out " + out.string()).code == 0);
  CHECK(run("figure --id fig7 --out " + out.string()).code == 1);
}

TEST_CASE("spontaneous sweep of the ab witness") {
  // With only the pump populated the ab witness keeps the |f2|^2 |alpha1|^(2n+2)
  // term, so the series is zero only at t = 0.
  const auto out = scratch("spont");
  const auto r = run("sweep --preset spontaneous --spec hz1:ab:2,1 --out " + out.string());
  CHECK(r.code == 0);
  const auto rows = read_csv(out / "sweep.csv");
  REQUIRE(rows.size() == 502);
  CHECK(rows[0] == std::vector<std::string>{"gt", "spontaneous/hz1:ab:n2m1/phi=0", "spontaneous/hz1:ab:n2m1/phi=pi2",
                                            "spontaneous/hz1:ab:n2m1/phi=pi"});
  CHECK(rows[1][1] == "0");
  CHECK(std::stod(rows[501][1]) > 0.0);
}

TEST_CASE("json mirrors csv") {
  const auto out = scratch("json");
  REQUIRE(run("sweep --grid 0:0.2:21 --spec 'hz2:bc:1,1;three' --phi 0,pi/2 --out " + out.string()).code == 0);
  REQUIRE(run("sweep --grid 0:0.2:21 --spec 'hz2:bc:1,1;three' --phi 0,pi/2 --format json --out " + out.string()).code == 0);
  const auto csv = read_csv(out / "sweep.csv");
  const auto js = nlohmann::json::parse(slurp(out / "sweep.json"));
  REQUIRE(js["columns"].size() == csv[0].size());
  for (std::size_t c = 0; c < csv[0].size(); ++c) CHECK(js["columns"][c] == csv[0][c]);
  REQUIRE(js["rows"].size() + 1 == csv.size());
  for (std::size_t i = 0; i < js["rows"].size(); ++i)
    for (std::size_t c = 0; c < csv[0].size(); ++c)
      REQUIRE(js["rows"][i][c].get<double>() == std::stod(csv[i + 1][c]));
}

TEST_CASE("configuration errors exit 1 naming the key") {
  const auto out = scratch("err");
  auto r = run("sweep --spec hz1:ca:1,1 --out " + out.string());
  CHECK(r.code == 1);
  CHECK(r.output.find("canonical order is \"ac\"") != std::string::npos);

  r = run("sweep --grid 0:1:1 --out " + out.string());
  CHECK(r.code == 1);
  CHECK(r.output.find("grid.points") != std::string::npos);

  fs::create_directories(out);
  std::ofstream(out / "bad.yaml") << "grid:\n  stop: 0.2\n  pionts: 5\n";
  r = run("sweep --config " + (out / "bad.yaml").string() + " --out " + out.string());
  CHECK(r.code == 1);
  CHECK(r.output.find("grid.pionts") != std::string::npos);
  CHECK(r.output.find("line 3") != std::string::npos);

  r = run("sweep --out " + out.string(), "RAMAN_THREADS=many");
  CHECK(r.code == 1);
  CHECK(r.output.find("RAMAN_THREADS") != std::string::npos);

  CHECK(run("").code == 1);
  CHECK(run("sweep --bogus").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("oracle-validate monitor breach exits 2") {
  const auto out = scratch("oracle");
  auto r = run("oracle-validate --preset desk --out " + out.string());
  CHECK(r.code == 2);
  CHECK(r.output.find("truncation monitor") != std::string::npos);
  CHECK(r.output.find("--cutoffs 8,6,5,5") != std::string::npos);
  CHECK_FALSE(fs::exists(out / "oracle_validate.csv"));

  r = run("oracle-validate --preset desk --cutoffs 8,6,5,5 --out " + out.string());
  CHECK(r.code == 0);
  const auto rows = read_csv(out / "oracle_validate.csv");
  CHECK(rows[0] == std::vector<std::string>{"spec", "gt", "closed_form", "oracle", "abs_diff", "order"});
  CHECK(rows.size() == 1 + 6 * 3);

  CHECK(run("oracle-validate --cutoffs 8,6 --out " + out.string()).code == 1);
}

TEST_CASE("coefficient dump and config runs") {
  const auto out = scratch("coeff");
  CHECK(run("coeff-dump --grid 0:0.1:11 --out " + out.string()).code == 0);
  const auto rows = read_csv(out / "coefficients.csv");
  CHECK(rows.size() == 12);
  CHECK(rows[0].size() == 2 + 2 * 28);

  fs::create_directories(out);
  std::ofstream(out / "run.yaml") << "grid: {stop: 0.05, points: 6}\nspecs: [four]\nphases: [pi]\n";
  CHECK(run("sweep --config " + (out / "run.yaml").string() + " --out " + out.string()).code == 0);
  const auto sweep = read_csv(out / "sweep.csv");
  CHECK(sweep.size() == 7);
  CHECK(sweep[0] == std::vector<std::string>{"gt", "stimulated/four:abcd/phi=pi"});
}
