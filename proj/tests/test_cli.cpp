#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the binary under test (path in $CGH_CLI) with the given arguments.
RunResult run_cli(const std::string& args, bool merge_stderr = false) {
  const char* cli = std::getenv("CGH_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "CGH_CLI must point at the cli binary");
  const std::string cmd = std::string(cli) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0)
    result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path temp_file(const std::string& name,
                                const std::string& contents) {
  const std::filesystem::path path =
      std::filesystem::temp_directory_path() /
      ("cgh_cli_" + std::to_string(getpid()) + "_" + name);
  std::ofstream out(path);
  out << contents;
  return path;
}

}  // namespace

TEST_CASE("homology of the graph complex, exact mode") {
  const RunResult r = run_cli("homology graphs --k 4 --mode exact");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "{\"0\":{\"betti\":0,\"torsion\":[]},"
        "\"1\":{\"betti\":0,\"torsion\":[]},"
        "\"2\":{\"betti\":6,\"torsion\":[]},"
        "\"3\":{\"betti\":0,\"torsion\":[]},"
        "\"4\":{\"betti\":0,\"torsion\":[]},"
        "\"5\":{\"betti\":0,\"torsion\":[]}}\n");
}

TEST_CASE("homology of the 3-uniform complex vanishes above dimension 3") {
  const RunResult r = run_cli("homology uniform --k 5 --t 3 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.rfind("dim,betti,torsion\n", 0) == 0);
  std::istringstream lines(r.output);
  std::string line;
  std::getline(lines, line);  // header
  int dim = 0;
  while (std::getline(lines, line)) {
    const std::string expected =
        std::to_string(dim) + "," + (dim == 2 ? "6" : "0") + ",";
    CHECK(line == expected);
    ++dim;
  }
  CHECK(dim == 10);
}

TEST_CASE("oversized requests exit with the resource code") {
  const RunResult r = run_cli("homology graphs --k 9", true);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("maximum") != std::string::npos);
}

TEST_CASE("invalid requests exit with the usage code") {
  CHECK(run_cli("homology graphs --k 0").exit_code == 1);
  CHECK(run_cli("homology nosuch --k 3").exit_code == 1);
  CHECK(run_cli("homology graphs").exit_code == 1);          // missing --k
  CHECK(run_cli("homology colored --k 3").exit_code == 1);   // missing sizes
  CHECK(run_cli("homology graphs --k 4 --p 4").exit_code == 1);
  CHECK(run_cli("nosuchcommand").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("homology --help").exit_code == 0);
}

TEST_CASE("output bytes are deterministic across runs") {
  for (const std::string args :
       {std::string("homology partitions --k 4 --mode exact"),
        std::string("arrangement --braid 3"),
        std::string("reduce-tree --k 5 --edges 1-2,1-3,3-4,3-5")}) {
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
  }
}

TEST_CASE("warm cache output is identical to the cold run") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() /
      ("cgh_cache_" + std::to_string(getpid()));
  std::filesystem::remove_all(dir);
  const std::string args =
      "homology omega --k 4 --mode exact --cache-dir " + dir.string();
  const RunResult cold = run_cli(args);
  CHECK(cold.exit_code == 0);
  bool wrote = false;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    wrote |= entry.path().extension() == ".cgc";
  CHECK(wrote);
  const RunResult warm = run_cli(args);
  CHECK(warm.exit_code == 0);
  CHECK(warm.output == cold.output);
  std::filesystem::remove_all(dir);
}

TEST_CASE("the cache directory can come from the environment") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() /
      ("cgh_cache_env_" + std::to_string(getpid()));
  std::filesystem::remove_all(dir);
  const char* cli = std::getenv("CGH_CLI");
  REQUIRE(cli != nullptr);
  const std::string cmd = "CGH_CACHE_DIR=" + dir.string() + " " + cli +
                          " homology graphs --k 3 >/dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(std::filesystem::exists(dir));
  std::filesystem::remove_all(dir);
}

TEST_CASE("csv homology output") {
  const RunResult r = run_cli("homology graphs --k 3 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "dim,betti,torsion\n0,0,\n1,2,\n2,0,\n");
}

TEST_CASE("braid arrangement assembly") {
  const RunResult r = run_cli("arrangement --braid 3");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"complement_betti\":[1,3,2]") != std::string::npos);
}

TEST_CASE("arrangement from an input file") {
  const auto point = temp_file(
      "point.json", R"({"ambient_dim":1,"planes":[{"A":[[1]],"b":[0]}]})");
  const RunResult r = run_cli("arrangement --input " + point.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"complement_betti\":[2]") != std::string::npos);
  std::filesystem::remove(point);

  const auto parallel = temp_file("parallel.json", R"({
    "ambient_dim": 2,
    "planes": [{"A": [[1, 1]], "b": [0]}, {"A": [[1, 1]], "b": [3]}]
  })");
  const RunResult p = run_cli("arrangement --input " + parallel.string());
  CHECK(p.exit_code == 0);
  CHECK(p.output.find("\"complement_betti\":[3]") != std::string::npos);
  std::filesystem::remove(parallel);
}

TEST_CASE("arrangement input errors carry position information") {
  const auto broken = temp_file("broken.json", "{\"ambient_dim\": 2,");
  const RunResult r =
      run_cli("arrangement --input " + broken.string(), true);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error") != std::string::npos);
  std::filesystem::remove(broken);

  CHECK(run_cli("arrangement --input /nonexistent.json").exit_code == 1);
  CHECK(run_cli("arrangement").exit_code == 1);  // neither input nor braid
  CHECK(run_cli("arrangement --braid 3 --input x.json").exit_code == 1);
}

TEST_CASE("tree basis listing") {
  const RunResult r = run_cli("tree-basis --k 3");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "{\"k\":3,\"count\":2,\"paths\":[[1,2,3],[1,3,2]]}\n");
  CHECK(run_cli("tree-basis --k 7").exit_code == 1);
  CHECK(run_cli("tree-basis --k 2").exit_code == 1);
}

TEST_CASE("tree reduction round-trips through the verifier") {
  const RunResult self = run_cli("reduce-tree --k 4 --edges 1-2,2-3,3-4");
  CHECK(self.exit_code == 0);
  CHECK(self.output.find("\"verified\":true") != std::string::npos);
  CHECK(self.output.find("\"certificate\":[]") != std::string::npos);

  const RunResult star = run_cli("reduce-tree --k 4 --edges 1-2,1-3,1-4");
  CHECK(star.exit_code == 0);
  CHECK(star.output.find("\"verified\":true") != std::string::npos);

  const RunResult largest = run_cli(
      "reduce-tree --k 4 --edges 1-2,1-3,1-4 --tie-break largest");
  CHECK(largest.exit_code == 0);
  CHECK(largest.output.find("\"verified\":true") != std::string::npos);

  CHECK(run_cli("reduce-tree --k 4 --edges 1-2,2-3,1-3").exit_code == 1);
  CHECK(run_cli("reduce-tree --k 4 --edges nonsense").exit_code == 1);
}
