#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "vortexpatch_test_cli";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write(const std::string& name, const std::string& text) {
  fs::create_directories(kRoot);
  const fs::path p = kRoot / name;
  std::ofstream(p) << text;
  return p;
}

int run(const std::string& sub, const fs::path& config, const fs::path& out,
        const std::string& env = "") {
  const std::string cmd = env + " \"" VORTEXPATCH_CLI "\" " + sub + " --config \"" +
                          config.string() + "\" --out \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json report(const fs::path& out) {
  return nlohmann::json::parse(slurp(out / "report.json"));
}

} // namespace

TEST_CASE("static checks report and exit 0") {
  const auto cfg = write("moments.json", R"({"kind": "lemma1",
      "region": {"fixture": {"type": "square", "side": 1}}})");
  const fs::path out = kRoot / "out_lemma1";
  REQUIRE(run("lemma1", cfg, out) == 0);
  const auto r = report(out);
  CHECK(r["kind"] == "lemma1");
  CHECK(r["pass"] == true);
  CHECK(r["moments"]["mass"].get<double>() == doctest::Approx(1.0));

  const auto eq = write("eq.json", R"({"kind": "lemma2",
      "region": {"fixture": {"type": "equality_case", "r": 1, "a": 0.7071, "n": 4096}}})");
  const fs::path out2 = kRoot / "out_lemma2";
  REQUIRE(run("lemma2", eq, out2) == 0);
  const auto rep = report(out2)["report"];
  CHECK(rep["margin"].get<double>() / rep["lemma2_rhs"].get<double>() < 1e-3);

  for (const char* kind : {"moments", "prelim", "bound", "verify"}) {
    const auto c = write(std::string(kind) + ".json",
                         R"({"region": {"fixture": {"type": "perturbed_circle", "n": 128}},
                             "oracle": {"h": 0.01, "samples": 100000}})");
    const fs::path o = kRoot / (std::string("out_") + kind);
    CHECK_MESSAGE(run(kind, c, o) == 0, kind);
    CHECK(report(o)["pass"] == true);
  }
}

TEST_CASE("parse errors exit 2 without outputs") {
  const auto bad_region = write("bad_region.json", R"({"loops": [[[0, 0], [1]]]})");
  const auto cfg = write("uses_bad.json", R"({"region": {"file": "bad_region.json"}})");
  const fs::path out = kRoot / "out_parse";
  fs::remove_all(out);
  CHECK(run("moments", cfg, out) == 2);
  CHECK_FALSE(fs::exists(out));

  const auto unknown = write("unknown.json", R"({"region": {"fixture": {"type": "circle"}}, "x": 1})");
  CHECK(run("moments", unknown, out) == 2);
  CHECK(run("moments", kRoot / "does_not_exist.json", out) == 2);
  CHECK_FALSE(fs::exists(out));

  const std::string cmd = "\"" VORTEXPATCH_CLI "\" frobnicate >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("validation errors exit 3") {
  write("bowtie.json", R"({"loops": [[[0, 0], [1, 1], [1, 0], [0, 1]]]})");
  const auto cfg = write("uses_bowtie.json", R"({"region": {"file": "bowtie.json"}})");
  const fs::path out = kRoot / "out_validation";
  fs::remove_all(out);
  CHECK(run("moments", cfg, out) == 3);
  CHECK_FALSE(fs::exists(out));

  const auto off = write("off_center.json", R"({"region": {"fixture": {"type": "circle"}},
      "disk": {"center": [0.5, 0]}})");
  CHECK(run("lemma2", off, out) == 3);
  const auto strength = write("strength.json",
                              R"({"region": {"fixture": {"type": "circle"}, "strength": 3}})");
  CHECK(run("moments", strength, out) == 3);
}

TEST_CASE("violations exit 1") {
  // Any nonzero drift exceeds a zero conservation tolerance.
  const auto cfg = write("strict.json", R"({"region": {"fixture": {"type": "perturbed_circle",
      "n": 64, "amplitude": 0.2}}, "evolution": {"dt": 0.05, "t_end": 0.2,
      "conservation_tol": 0}})");
  CHECK(run("evolve", cfg, kRoot / "out_violation") == 1);

  const auto add = write("additivity.json", R"({"region": {"fixture": {"type": "square"}},
      "oracle": {"h": 0.02, "samples": 1000}, "tolerances": {"additivity": -1}})");
  CHECK(run("verify", add, kRoot / "out_violation2") == 1);
  CHECK(report(kRoot / "out_violation2")["pass"] == false);
}

TEST_CASE("evolve writes series and snapshots, reproducibly") {
  const auto cfg = write("evolve.json", R"({"region": {"fixture": {"type": "perturbed_circle",
      "n": 96}}, "evolution": {"dt": 0.05, "t_end": 0.5, "output_stride": 2},
      "output": {"snapshot_stride": 5}})");
  const fs::path a = kRoot / "evolve_a";
  const fs::path b = kRoot / "evolve_b";
  fs::remove_all(a);
  fs::remove_all(b);
  REQUIRE(run("evolve", cfg, a, "OMP_NUM_THREADS=1") == 0);
  REQUIRE(run("evolve", cfg, b, "OMP_NUM_THREADS=3") == 0);

  const std::string csv = slurp(a / "series.csv");
  CHECK(csv.rfind("t,mass,mx,my,i,q,l1,bound,margin\n", 0) == 0);
  std::size_t rows = 0;
  for (char ch : csv)
    rows += ch == '\n';
  CHECK(rows == 1 + 6);
  CHECK(fs::exists(a / "region_000000.json"));
  CHECK(fs::exists(a / "region_000005.json"));
  CHECK(fs::exists(a / "region_000010.json"));
  CHECK_FALSE(fs::exists(a / "report.json"));

  for (const auto& entry : fs::directory_iterator(a))
    CHECK_MESSAGE(slurp(entry.path()) == slurp(b / entry.path().filename()),
                  entry.path().filename().string());
}
