#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = FGEOM_CLI_PATH;

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("fgeom_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

json load(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return json::parse(in);
}

std::string path(const std::string& name) { return (work_dir() / name).string(); }

}  // namespace

TEST_CASE("gen writes a well-formed configuration") {
  std::string out = path("gen4.json");
  CHECK(run("gen --q 4 --n 1 --out " + out) == 0);
  json f = load(out);
  CHECK(f["schema"] == 1);
  CHECK(f["kind"] == "configuration");
  CHECK(f["geometry"]["c_points"].size() == 16);
  CHECK(f["geometry"]["c_planes"].size() == 20);
  CHECK(f["geometry"]["field"]["q"] == 4);
  CHECK(f["manifest"].contains("manifest_hash"));
  CHECK(f["manifest"].contains("geometry_digest"));
  CHECK(f["manifest"]["command"] == "gen");
}

TEST_CASE("generation is deterministic across runs and seeds") {
  std::string a = path("det_a.json"), b = path("det_b.json");
  CHECK(run("gen --q 8 --n 5 --out " + a + " --seed 1") == 0);
  CHECK(run("gen --q 8 --n 5 --out " + b + " --seed 99") == 0);
  json fa = load(a), fb = load(b);
  CHECK(fa["geometry"].dump() == fb["geometry"].dump());
  CHECK(fa["manifest"]["geometry_digest"] == fb["manifest"]["geometry_digest"]);
  CHECK(fa["manifest"]["parameters"]["seed"] != fb["manifest"]["parameters"]["seed"]);
}

TEST_CASE("domain errors exit with code 2") {
  CHECK(run("gen --q 8 --n 2 --out " + path("bad.json")) == 2);  // not a generator
  CHECK(run("gen --q 5 --n 1 --out " + path("bad.json")) == 2);  // unsupported order
  CHECK(run("gen --q 4 --n 1 --s 0 --out " + path("bad.json")) == 2);  // zero scale
}

TEST_CASE("format errors exit with code 3") {
  std::string junk = path("junk.json");
  std::ofstream(junk) << "{ not json";
  CHECK(run("verify --in " + junk) == 3);
  CHECK(run("verify --in " + path("no_such_file.json")) == 3);
  // wrong kind: a configuration fed to derive
  std::string cfg = path("kind.json");
  REQUIRE(run("gen --q 4 --n 1 --out " + cfg) == 0);
  CHECK(run("derive --in " + cfg + " --out " + path("kind_out.json")) == 3);
}

TEST_CASE("verify passes forward configurations and flags mutations") {
  std::string cfg = path("verify.json");
  REQUIRE(run("gen --q 4 --n 3 --out " + cfg) == 0);
  std::string rep = path("verify_report.json");
  CHECK(run("verify --in " + cfg + " --out " + rep) == 0);
  json r = load(rep);
  CHECK(r["kind"] == "axiom_report");
  CHECK(r["geometry"]["all_passed"] == true);
  for (const char* k : {"A1", "A2", "A3", "A4"}) CHECK(r["geometry"].contains(k));

  // axiom subset: only the requested sections appear
  std::string rep1 = path("verify_a1.json");
  CHECK(run("verify --in " + cfg + " --out " + rep1 + " --axioms A1,A3") == 0);
  json r1 = load(rep1);
  CHECK(r1["geometry"].contains("A1"));
  CHECK(r1["geometry"].contains("A3"));
  CHECK_FALSE(r1["geometry"].contains("A2"));
  CHECK_FALSE(r1["geometry"].contains("A4"));

  // drop a C-point: verification must fail with exit 1
  json broken = load(cfg);
  broken["geometry"]["c_points"].erase(0);
  std::string bad = path("verify_bad.json");
  std::ofstream(bad) << broken.dump();
  CHECK(run("verify --in " + bad) == 1);
}

TEST_CASE("reconstruct, check-spread and derive on q = 4") {
  std::string cfg = path("rc_cfg.json");
  std::string rec = path("rc_rec.json");
  REQUIRE(run("gen --q 4 --n 1 --out " + cfg) == 0);
  CHECK(run("reconstruct --in " + cfg + " --out " + rec) == 0);
  json r = load(rec);
  CHECK(r["kind"] == "reconstruction");
  CHECK(r["geometry"]["n_mod_h"] == 1);
  CHECK(r["geometry"]["spread"].size() == 17);
  CHECK(r["geometry"]["transcript"]["spread_regular"] == true);
  CHECK(r["geometry"]["c_lines"].size() == 5);

  CHECK(run("check-spread --in " + rec) == 0);

  // the biconditional must hold whichever regulus is reversed
  for (int k : {0, 7, 33}) {
    std::string out = path("rc_chk" + std::to_string(k) + ".json");
    int rc = run("check-spread --in " + rec + " --reverse " + std::to_string(k) + " --out " + out);
    CHECK((rc == 0 || rc == 1));
    json chk = load(out);
    CHECK(chk["geometry"]["spread_check"]["biconditional_holds"] == true);
  }
  CHECK(run("check-spread --in " + rec + " --reverse 9999") == 2);

  std::string der = path("rc_der.json");
  CHECK(run("derive --in " + rec + " --out " + der) == 0);
  json d = load(der);
  CHECK(d["kind"] == "derivation_report");
  CHECK(d["geometry"]["derived_spread_regular"] == false);
  CHECK(d["geometry"]["spread_check"]["side_a"] == true);
  CHECK(d["geometry"]["spread_check"]["side_b"] == true);
}

TEST_CASE("derive refuses odd extension degrees") {
  std::string cfg = path("d8_cfg.json");
  std::string rec = path("d8_rec.json");
  REQUIRE(run("gen --q 8 --n 1 --out " + cfg) == 0);
  REQUIRE(run("reconstruct --in " + cfg + " --out " + rec + " --skip-verify") == 0);
  CHECK(run("derive --in " + rec + " --out " + path("d8_der.json")) == 2);
}

TEST_CASE("pipeline runs end to end") {
  fs::path dir = work_dir() / "pipe4";
  fs::create_directories(dir);
  CHECK(run("pipeline --q 4 --n 1 --dir " + dir.string()) == 0);
  for (const char* f : {"config.json", "axioms.json", "reconstruction.json", "derivation.json"})
    CHECK(fs::exists(dir / f));

  fs::path dir8 = work_dir() / "pipe8";
  fs::create_directories(dir8);
  CHECK(run("pipeline --q 8 --n 1 --dir " + dir8.string()) == 0);
  CHECK_FALSE(fs::exists(dir8 / "derivation.json"));  // h odd: derive skipped
}
