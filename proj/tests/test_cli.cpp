#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  fs::path p = fs::temp_directory_path() / ("gply-cli-" + tag + "-" + std::to_string(rng() % 1000000000));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string err;
};

Run gply(const fs::path& dir, const std::string& args) {
  const fs::path err = dir / "stderr.txt";
  std::string cmd = std::string("\"") + GPLY_CLI_PATH + "\" " + args + " > \"" + (dir / "stdout.txt").string() +
                    "\" 2> \"" + err.string() + "\"";
  int status = std::system(cmd.c_str());
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(err)};
}

std::string sha_of(const json& manifest, const std::string& suffix) {
  for (const auto& o : manifest["outputs"]) {
    std::string p = o["path"];
    if (p.size() >= suffix.size() && p.compare(p.size() - suffix.size(), suffix.size(), suffix) == 0) return o["sha256"];
  }
  return {};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("amplitude benchmark through the binary") {
    fs::path d = scratch_dir("amp");
    Run r = gply(d, "amplitude --state dw --m 2 --L 8 --q 2 --n 10 --out \"" + (d / "a").string() + "\"");
    REQUIRE(r.code == 0);
    json a = json::parse(slurp(d / "a" / "amplitude.json"));
    CHECK(a["numerator_degree"] == 152);
    CHECK(a["denominator_factors"]["d"] == 38);
    json m = json::parse(slurp(d / "a" / "manifest.json"));
    CHECK(m["command"] == "amplitude");
    CHECK(m["outputs"].size() == 2);
    CHECK(sha_of(m, "amplitude.json").size() == 64);

    // exact mode is reproducible byte for byte
    Run again = gply(d, "amplitude --state dw --m 2 --L 8 --q 2 --n 10 --out \"" + (d / "b").string() + "\"");
    REQUIRE(again.code == 0);
    json m2 = json::parse(slurp(d / "b" / "manifest.json"));
    CHECK(sha_of(m, "amplitude.json") == sha_of(m2, "amplitude.json"));
    CHECK(sha_of(m, "numerator.json") == sha_of(m2, "numerator.json"));
    fs::remove_all(d);
  }

  TEST_CASE("zeros and plot from a polynomial file") {
    fs::path d = scratch_dir("zeros");
    std::ofstream(d / "p.json") << R"(["-1","0","0","0","1"])";
    Run z = gply(d, "zeros --in \"" + (d / "p.json").string() + "\" --out \"" + d.string() + "\"");
    REQUIRE(z.code == 0);
    std::string csv = slurp(d / "zeros.csv");
    CHECK(csv.rfind("re_x,im_x,multiplicity,abs_x,residual\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    json zj = json::parse(slurp(d / "zeros.json"));
    CHECK(zj["total_multiplicity"] == 4);
    CHECK(zj["valid"] == true);

    Run p = gply(d, "plot --in \"" + (d / "zeros.csv").string() + "\" --output z.svg --out \"" + d.string() + "\"");
    REQUIRE(p.code == 0);
    std::string svg = slurp(d / "z.svg");
    std::size_t markers = 0;
    for (std::size_t at = svg.find("class=\"zero\""); at != std::string::npos; at = svg.find("class=\"zero\"", at + 1))
      ++markers;
    CHECK(markers == 4);
    fs::remove_all(d);
  }

  TEST_CASE("errors are reported as JSON with distinct exit codes") {
    fs::path d = scratch_dir("err");
    Run usage = gply(d, "amplitude --q 0.5 --out \"" + d.string() + "\"");
    CHECK(usage.code == 2);
    CHECK(usage.err.find("\"error\"") != std::string::npos);
    Run unknown = gply(d, "amplitude --bogus");
    CHECK(unknown.code == 2);
    Run degenerate = gply(d, "amplitude --q 1 --out \"" + d.string() + "\"");
    CHECK(degenerate.code == 1);
    CHECK(degenerate.err.find("degenerate_anisotropy") != std::string::npos);

    std::ofstream(d / "bad.csv") << "re_x,im_x,multiplicity,abs_x,residual\n1,2\n";
    Run bad = gply(d, "plot --in \"" + (d / "bad.csv").string() + "\" --output x.svg --out \"" + d.string() + "\"");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("\"error\"") != std::string::npos);
    CHECK(!fs::exists(d / "x.svg"));
    fs::remove_all(d);
  }
}
