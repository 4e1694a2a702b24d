// End-to-end tests of the eulerml command-line tool: it is executed as a
// subprocess (path baked in as EULERML_BIN, overridable via the environment
// variable of the same name) and its stdout/exit codes are checked against
// the published values for the benchmark varieties.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string binPath() {
  if (const char* env = std::getenv("EULERML_BIN")) return env;
#ifdef EULERML_BIN
  return EULERML_BIN;
#else
  return "eulerml";
#endif
}

struct RunResult {
  int exitCode = -1;
  std::string out;
};

// Runs the CLI with the given arguments, capturing stdout (stderr is left on
// the test log for failed-run debugging).
RunResult run(const std::string& args) {
  const std::string cmd = binPath() + " " + args;
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("eulerml_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
};

const char* kSombrillaProblem = R"({
  "variables": ["x1", "x2", "x3"],
  "generators": ["-x2^2*x3 + x1^2 + x2^2 + 2*x2*x3 - 2*x1 - 2*x2 - x3 + 2"],
  "point": ["1", "1", "1"],
  "dimension": 2,
  "engine": "symbolic"
})";

const char* kCircleProblem = R"({
  "variables": ["z1", "z2"],
  "generators": ["z1^2 + z2^2 - 1"],
  "point": ["3/5", "4/5"],
  "dimension": 1,
  "engine": "both"
})";

// Extracts "Euler obstruction: N" from table output.
long eulerFrom(const std::string& out) {
  const std::string tag = "Euler obstruction: ";
  const auto pos = out.rfind(tag);
  REQUIRE(pos != std::string::npos);
  return std::stol(out.substr(pos + tag.size()));
}

// Extracts the r_k column of the "level  degree" table, in level order.
std::vector<long> degreesFrom(const std::string& out) {
  std::vector<long> degrees;
  std::size_t pos = out.find("level  removal ML degree");
  REQUIRE(pos != std::string::npos);
  pos = out.find('\n', pos) + 1;
  while (pos < out.size() && std::isdigit(static_cast<unsigned char>(out[pos]))) {
    const std::size_t eol = out.find('\n', pos);
    const std::string line = out.substr(pos, eol - pos);
    degrees.push_back(std::stol(line.substr(line.find_last_of(" \t") + 1)));
    pos = eol + 1;
  }
  return degrees;
}

} // namespace

TEST_CASE("solve reproduces the sombrilla table with the symbolic engine") {
  TempDir tmp;
  const std::string problem = tmp.file("sombrilla.json", kSombrillaProblem);

  struct Row {
    const char* point;
    std::vector<long> degrees;
    long euler;
  };
  const std::vector<Row> rows = {
      {"3,2,1", {3, 10, 10, 3}, 0},
      {"3,3,2", {3, 10, 10, 2}, 1},
      {"1,1,2", {3, 10, 10, 1}, 2},
      {"1,1,1", {3, 10, 9, 1}, 1},
  };
  for (const Row& row : rows) {
    CAPTURE(row.point);
    const RunResult r = run("solve --point " + std::string(row.point) + " " + problem);
    CHECK(r.exitCode == 0);
    CHECK(degreesFrom(r.out) == row.degrees);
    CHECK(eulerFrom(r.out) == row.euler);
  }

  // No --point uses the problem file's own (the pinch point).
  const RunResult r = run("solve " + problem);
  CHECK(r.exitCode == 0);
  CHECK(degreesFrom(r.out) == std::vector<long>{3, 10, 9, 1});
  CHECK(eulerFrom(r.out) == 1);
}

TEST_CASE("solve runs both engines on the circle and they agree") {
  TempDir tmp;
  const std::string problem = tmp.file("circle.json", kCircleProblem);
  const RunResult r = run("solve " + problem);
  CHECK(r.exitCode == 0);
  CHECK(r.out.find("engines agree: yes") != std::string::npos);
  CHECK(eulerFrom(r.out) == 1); // smooth point
  CHECK(degreesFrom(r.out) == std::vector<long>{4, 6, 1});
}

TEST_CASE("malformed input and bad points exit with status 1") {
  TempDir tmp;
  CHECK(run("solve " + tmp.file("bad.json", "{ not json")).exitCode == 1);
  CHECK(run("solve " + tmp.file("zero.json",
                                R"({"variables":["x","y"],
                                    "generators":["x^2 + y^2 - 1"],
                                    "point":["0","1"],"dimension":1})"))
            .exitCode == 1);
  CHECK(run("solve /nonexistent/problem.json").exitCode != 0);
  const std::string circle = tmp.file("circle.json", kCircleProblem);
  CHECK(run("solve --engine quantum " + circle + " 2>/dev/null").exitCode == 1);
  CHECK(run("witness reuse --dir " + (tmp.path / "empty").string() + " " + circle +
            " 2>/dev/null")
            .exitCode == 1);
}

TEST_CASE("json output round-trips as problem input") {
  TempDir tmp;
  const std::string problem = tmp.file("sombrilla.json", kSombrillaProblem);
  const RunResult first = run("solve --json " + problem);
  CHECK(first.exitCode == 0);
  const std::string echoed = tmp.file("echo.json", first.out);
  const RunResult second = run("solve --json " + echoed);
  CHECK(second.exitCode == 0);
  CHECK(second.out == first.out);
}

TEST_CASE("euler computes the alternating sum of a degree list") {
  CHECK(eulerFrom(run("euler --degrees 3,10,9,1").out) == 1);
  CHECK(eulerFrom(run("euler --degrees 3,10,10,3").out) == 0);
  CHECK(eulerFrom(run("euler --degrees 3,10,10,1").out) == 2);
  CHECK(eulerFrom(run("euler --degrees 0,16,47,49,21,3").out) == 0);
  CHECK(eulerFrom(run("euler --degrees 0,16,31,18,2").out) == 1);
  CHECK(run("euler --degrees 5").exitCode == 1);
}

TEST_CASE("witness compute, reuse, and reclassify share a stored collection") {
  TempDir tmp;
  const std::string dir = (tmp.path / "wc").string();
  const std::string problem = tmp.file("sombrilla.json", kSombrillaProblem);

  const RunResult computed = run("witness compute --dir " + dir + " " + problem);
  CHECK(computed.exitCode == 0);
  CHECK(computed.out.find("generic removal ML degrees: 3 10 10 3") !=
        std::string::npos);

  const RunResult reused = run("witness reuse --dir " + dir + " " + problem);
  CHECK(reused.exitCode == 0);
  CHECK(degreesFrom(reused.out) == std::vector<long>{3, 10, 9, 1});
  CHECK(eulerFrom(reused.out) == 1);

  // An absurdly tight tolerance counts endpoints that truncated toward the
  // coordinate hyperplanes: every level at least as large, some strictly.
  const RunResult tight =
      run("reclassify --tol 1e-300 --point 1,1,1 " + dir);
  CHECK(tight.exitCode == 0);
  const RunResult sane = run("reclassify --tol 1e-6 --point 1,1,1 " + dir);
  CHECK(sane.exitCode == 0);
  CHECK(sane.out.find("3 10 9 1") != std::string::npos);

  auto tailDegrees = [](const std::string& out) {
    std::vector<long> v;
    const auto colon = out.rfind(": ");
    REQUIRE(colon != std::string::npos);
    std::stringstream ss(out.substr(colon + 2));
    long x;
    while (ss >> x) v.push_back(x);
    return v;
  };
  const std::vector<long> miscount = tailDegrees(tight.out);
  const std::vector<long> exact = tailDegrees(sane.out);
  REQUIRE(miscount.size() == exact.size());
  bool strictly = false;
  for (std::size_t k = 0; k < exact.size(); ++k) {
    CHECK(miscount[k] >= exact[k]);
    strictly = strictly || miscount[k] > exact[k];
  }
  CHECK(strictly);

  // The reclassify subcommand also accepts a problem file naming the store.
  const std::string withDir = tmp.file("sombrilla_dir.json", [&] {
    std::string s(kSombrillaProblem);
    s.insert(s.rfind('}'), ",\n  \"witness_dir\": \"" + dir + "\"");
    return s;
  }());
  const RunResult viaProblem = run("reclassify --tol 1e-6 " + withDir);
  CHECK(viaProblem.exitCode == 0);
  CHECK(viaProblem.out.find("3 10 9 1") != std::string::npos);
}

TEST_CASE("worker-count cap does not change results") {
  TempDir tmp;
  std::string circleNumeric(kCircleProblem);
  const auto pos = circleNumeric.find("\"both\"");
  circleNumeric.replace(pos, 6, "\"numeric\"");
  const std::string problem = tmp.file("circle.json", circleNumeric);

  const RunResult capped = run("solve " + problem);
  const std::string withEnv = "EULERML_THREADS=1 " + binPath() + " solve " + problem;
  RunResult env;
  FILE* pipe = popen(withEnv.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
    env.out.append(buf.data(), n);
  env.exitCode = WEXITSTATUS(pclose(pipe));
  CHECK(env.exitCode == 0);
  CHECK(env.out == capped.out);
}
