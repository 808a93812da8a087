#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "swerect/cli.hpp"
#include "swerect/csv.hpp"

namespace fs = std::filesystem;
using swerect::cli::kExitFailed;
using swerect::cli::kExitOk;
using swerect::cli::kExitUsage;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = swerect::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Workspace {
  fs::path root;
  Workspace() {
    root = fs::temp_directory_path() /
           ("swerect_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
            std::to_string(fs::file_time_type::clock::now().time_since_epoch().count()));
    fs::create_directories(root);
  }
  ~Workspace() { fs::remove_all(root); }

  std::string config(const std::string& name, const std::string& physics, const std::string& extra = "",
                     int n = 12) const {
    const fs::path p = root / name;
    std::ofstream(p) << "[physics]\n"
                     << physics << "\n[grid]\nL1 = 1\nL2 = 1\nnx = " << n << "\nny = " << n << "\n"
                     << extra;
    return p.string();
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const char* kSuper = "u0 = 4\nv0 = 4\nphi0 = 1\ng = 9.81";
const char* kMixed = "u0 = 1\nv0 = 1\nphi0 = 1\ng = 9.81\nf = 0.5";

}  // namespace

TEST_CASE("classify") {
  const Result r = call({"classify", "--u0", "4", "--v0", "4", "--phi0", "1", "--g", "9.81"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("Supercritical") != std::string::npos);
  CHECK(r.out.find("West") != std::string::npos);

  const Result m = call({"classify", "--u0", "1", "--v0", "1", "--phi0", "1", "--g", "9.81"});
  CHECK(m.code == kExitOk);
  CHECK(m.out.find("MixedSubcritical") != std::string::npos);
  CHECK(m.out.find("8.75306") != std::string::npos);

  const Result bad = call({"classify", "--u0", "0", "--v0", "4", "--phi0", "1", "--g", "9.81"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("NonPositiveParameter") != std::string::npos);

  const Result crit = call({"classify", "--u0", "3.1320919526731650", "--v0", "1", "--phi0", "1", "--g", "9.81"});
  CHECK(crit.code == kExitUsage);
  CHECK(crit.err.find("DegenerateCase") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == kExitUsage);
  CHECK(call({"frobnicate"}).code == kExitUsage);
  CHECK(call({"classify", "--u0", "4"}).code == kExitUsage);
  CHECK(call({"classify", "--u0", "x", "--v0", "4", "--phi0", "1", "--g", "9.81"}).code == kExitUsage);
  CHECK(call({"run"}).code == kExitUsage);
  CHECK(call({"--help"}).code == kExitOk);
  CHECK(call({"run", "--config", "/nonexistent/case.ini"}).code == kExitUsage);
}

TEST_CASE("verify-algebra") {
  Workspace ws;
  const Result ok = call({"verify-algebra", "--config", ws.config("a.ini", kSuper)});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("PASS") != std::string::npos);
  CHECK(call({"verify-algebra", "--config", ws.config("m.ini", kMixed), "--tol", "1e-10"}).code == kExitOk);

  const Result deg =
      call({"verify-algebra", "--config", ws.config("d.ini", "u0 = 3.1320919526731650\nv0 = 4\nphi0 = 1\ng = 9.81")});
  CHECK(deg.code == kExitUsage);
  CHECK(deg.err.find("DegenerateCase") != std::string::npos);

  const Result typo = call({"verify-algebra", "--config", ws.config("t.ini", std::string(kSuper) + "\nfo = 1")});
  CHECK(typo.code == kExitUsage);
  CHECK(typo.err.find("UnknownKey") != std::string::npos);
}

TEST_CASE("probe-positivity") {
  Workspace ws;
  const std::string cfg = ws.config("p.ini", kMixed, "", 16);
  const Result a = call({"probe-positivity", "--config", cfg, "--samples", "20", "--seed", "3"});
  CHECK(a.code == kExitOk);
  const Result b = call({"probe-positivity", "--config", cfg, "--samples", "20", "--seed", "3"});
  CHECK(a.out == b.out);
}

TEST_CASE("solve-elliptic") {
  Workspace ws;
  const Result mms = call({"--out", ws.root.string(), "solve-elliptic", "--config", ws.config("e.ini", kMixed), "--mms"});
  CHECK(mms.code == kExitOk);
  CHECK(mms.out.find("PASS") != std::string::npos);
  CHECK(fs::exists(ws.root / "theta.csv"));

  const Result plain = call({"--out", ws.root.string(), "solve-elliptic", "--config", ws.config("e.ini", kMixed)});
  CHECK(plain.code == kExitOk);
  CHECK(slurp(ws.root / "theta.csv").rfind("x,y,theta1,theta2\n", 0) == 0);

  const Result wrong = call({"solve-elliptic", "--config", ws.config("s.ini", kSuper), "--mms"});
  CHECK(wrong.code == kExitUsage);
  CHECK(wrong.err.find("RegimeMismatch") != std::string::npos);
}

TEST_CASE("run writes deterministic outputs") {
  Workspace ws;
  const std::string extra = "[run]\nt_end = 0.05\nseed = 9\n[output]\ndir = out\ncadence = 4\n";
  const std::string cfg = ws.config("r.ini", kSuper, extra, 16);
  const Result r = call({"--out", ws.root.string(), "run", "--config", cfg});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("contraction: PASS") != std::string::npos);
  const fs::path dir = ws.root / "out";
  REQUIRE(fs::exists(dir / "energy.csv"));
  REQUIRE(fs::exists(dir / "final.csv"));
  CHECK(fs::exists(dir / "snapshot_000000.csv"));
  CHECK(fs::exists(dir / "snapshot_000004.csv"));

  const swerect::EnergyLog log = swerect::read_energy_csv(dir / "energy.csv");
  REQUIRE(log.size() > 2);
  for (std::size_t k = 1; k < log.size(); ++k) {
    CHECK(log.entries()[k].energy <= log.entries()[k - 1].energy * (1 + 1e-12));
  }

  const std::string energy = slurp(dir / "energy.csv"), final_state = slurp(dir / "final.csv");
  fs::remove_all(dir);
  CHECK(call({"--out", ws.root.string(), "run", "--config", cfg}).code == kExitOk);
  CHECK(slurp(dir / "energy.csv") == energy);
  CHECK(slurp(dir / "final.csv") == final_state);
}

TEST_CASE("run with manufactured data") {
  Workspace ws;
  const std::string extra =
      "[run]\nt_end = 0.05\n[initial]\nkind = manufactured\n[forcing]\nkind = manufactured\n"
      "[boundary]\nkind = manufactured\n";
  const Result r = call({"--out", ws.root.string(), "run", "--config", ws.config("m.ini", kMixed, extra, 16)});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("contraction") == std::string::npos);
  CHECK(fs::exists(ws.root / "final.csv"));
}

TEST_CASE("mms-convergence") {
  Workspace ws;
  const std::string cfg = ws.config("c.ini", kMixed, "[run]\nt_end = 0.2\n", 17);
  const Result r = call({"mms-convergence", "--config", cfg, "--levels", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(call({"mms-convergence", "--config", cfg, "--levels", "0"}).code == kExitUsage);
  CHECK(call({"mms-convergence", "--config", cfg, "--levels", "1"}).code == kExitOk);
}
