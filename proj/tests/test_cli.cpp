#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string output;
};

fs::path scratch_root() {
  const fs::path p = fs::temp_directory_path() / "landau_cli_tests";
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Runs the binary with the given arguments, capturing stdout+stderr.
RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path capture = scratch_root() / ("capture_" + std::to_string(counter++) + ".txt");
  const std::string cmd =
      std::string(LANDAU_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.output = slurp(capture);
  return r;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = scratch_root() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

bool has_tmp_leftovers(const fs::path& dir) {
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.path().extension() == ".tmp") return true;
  return false;
}

}  // namespace

// ------------------------------------------------------------------ plumbing

TEST_CASE("help exits cleanly and no subcommand is a usage error") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("no-such-command").code == 2);
}

// ------------------------------------------------------------ classical lane

TEST_CASE("classical-equiv passes and writes its artifacts") {
  const fs::path dir = fresh_dir("classical_ok");
  const RunResult r = run_cli("classical-equiv --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.output.find("[PASS]") != std::string::npos);
  CHECK(r.output.find("classical/equivalence") != std::string::npos);
  CHECK(r.output.find("[FAIL]") == std::string::npos);

  CHECK(fs::exists(dir / "report_classical.json"));
  CHECK(fs::exists(dir / "trajectory_magnetic.csv"));
  CHECK(fs::exists(dir / "trajectory_oscillator.csv"));
  CHECK(fs::exists(dir / "kamiltonian_residual.csv"));
  CHECK_FALSE(has_tmp_leftovers(dir));

  const std::string json = slurp(dir / "report_classical.json");
  CHECK(json.find("\"suite\": \"classical\"") != std::string::npos);
  CHECK(json.find("\"pass\": true") != std::string::npos);
  CHECK(json.find("\"pass\": false") == std::string::npos);
}

TEST_CASE("an unreachable tolerance turns into exit code 1") {
  const fs::path dir = fresh_dir("classical_fail");
  const RunResult r =
      run_cli("classical-equiv --tol classical-equiv=1e-30 --out " + dir.string());
  CHECK(r.code == 1);
  CHECK(r.output.find("[FAIL]") != std::string::npos);
}

TEST_CASE("canonicity suite passes at the defaults") {
  const fs::path dir = fresh_dir("canonicity_ok");
  const RunResult r = run_cli("canonicity --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.output.find("canonicity/symplectic") != std::string::npos);
  CHECK(r.output.find("canonicity/kamiltonian") != std::string::npos);
}

TEST_CASE("hermite suite writes csv when asked") {
  const fs::path dir = fresh_dir("hermite_csv");
  const RunResult r = run_cli("hermite-verify --format csv --out " + dir.string());
  CHECK(r.code == 0);
  const std::string csv = slurp(dir / "report_hermite.csv");
  CHECK(csv.rfind("kind,id,inputs,measured,tolerance,pass", 0) == 0);
  CHECK(csv.find(",FAIL") == std::string::npos);
}

// ------------------------------------------------------------- coefficients

TEST_CASE("coefficient tables are written per angle and are deterministic") {
  const fs::path a = fresh_dir("coeff_a");
  const fs::path b = fresh_dir("coeff_b");
  const std::string args = "coefficients --n 1 --m 1 --theta 0.3,0.7 --out ";
  CHECK(run_cli(args + a.string()).code == 0);
  CHECK(run_cli(args + b.string()).code == 0);

  CHECK(fs::exists(a / "coefficients_1_1_theta0.json"));
  CHECK(fs::exists(a / "coefficients_1_1_theta1.json"));
  const std::string table = slurp(a / "coefficients_1_1_theta0.json");
  CHECK(table.find("\"source\": [1, 1]") != std::string::npos);
  CHECK(table.find("\"oracle\"") != std::string::npos);
  CHECK(table == slurp(b / "coefficients_1_1_theta0.json"));
}

TEST_CASE("coefficient levels above the quanta budget are a usage error") {
  const fs::path dir = fresh_dir("coeff_bad");
  CHECK(run_cli("coefficients --n 12 --m 12 --out " + dir.string()).code == 2);
  CHECK(run_cli("coefficients --n -1 --m 0 --out " + dir.string()).code == 2);
}

// ------------------------------------------------------------------- config

TEST_CASE("config file values apply and flags override them") {
  const fs::path file_out = fresh_dir("spectrum_file_out");
  const fs::path flag_out = fresh_dir("spectrum_flag_out");
  const fs::path cfg = scratch_root() / "small.cfg";
  {
    std::ofstream out(cfg);
    out << "# compact quantum settings\n"
        << "grid-n = 64\n"
        << "grid-l = 16\n"
        << "out = " << file_out.string() << "\n";
  }

  const RunResult from_file = run_cli("spectrum --config " + cfg.string());
  CHECK(from_file.code == 0);
  CHECK(fs::exists(file_out / "report_spectrum.json"));
  CHECK(fs::exists(file_out / "spectrum_table.csv"));

  const RunResult overridden =
      run_cli("spectrum --config " + cfg.string() + " --out " + flag_out.string());
  CHECK(overridden.code == 0);
  CHECK(fs::exists(flag_out / "report_spectrum.json"));
}

TEST_CASE("config mistakes exit with the usage code") {
  const fs::path bad_key = scratch_root() / "bad_key.cfg";
  {
    std::ofstream out(bad_key);
    out << "grid-m = 64\n";
  }
  CHECK(run_cli("spectrum --config " + bad_key.string()).code == 2);

  const fs::path bad_value = scratch_root() / "bad_value.cfg";
  {
    std::ofstream out(bad_value);
    out << "dt = abc\n";
  }
  CHECK(run_cli("spectrum --config " + bad_value.string()).code == 2);

  CHECK(run_cli("spectrum --tol nope=1").code == 2);
  CHECK(run_cli("spectrum --grid-n 100").code == 2);
  CHECK(run_cli("spectrum --config /no/such/file.cfg").code == 2);
}

// ---------------------------------------------------------------- propagate

TEST_CASE("propagate runs a short superposition and writes the series") {
  const fs::path dir = fresh_dir("propagate_ok");
  const RunResult r = run_cli(
      "propagate --state \"1,0,1;0,1,0,1\" --t-end 0.5 --grid-n 64 --grid-l 16 --out " +
      dir.string());
  CHECK(r.code == 0);
  CHECK(r.output.find("propagate/consistency") != std::string::npos);

  for (const char* name :
       {"residual_series.csv", "norm_series.csv", "energy_series.csv",
        "density_final.csv", "grid_final.csv", "grid_final_meta.json"})
    CHECK(fs::exists(dir / name));
  CHECK_FALSE(has_tmp_leftovers(dir));

  const std::string res = slurp(dir / "residual_series.csv");
  CHECK(res.rfind("t,residual", 0) == 0);
}

TEST_CASE("an oversized step is reported as an instability failure") {
  const fs::path dir = fresh_dir("propagate_unstable");
  const RunResult r = run_cli(
      "propagate --state \"0,0,1\" --t-end 0.5 --dt 0.25 --grid-n 64 --grid-l 16 --out " +
      dir.string());
  CHECK(r.code == 1);
  CHECK(r.output.find("[FAIL]") != std::string::npos);
  CHECK(r.output.find("propagator error") != std::string::npos);
}

TEST_CASE("malformed state specs are usage errors") {
  CHECK(run_cli("propagate --state \"1,0\" --t-end 0.1").code == 2);
  CHECK(run_cli("propagate --state \"1,-1,1\" --t-end 0.1").code == 2);
  CHECK(run_cli("propagate --state \"a,b,c\" --t-end 0.1").code == 2);
  CHECK(run_cli("propagate --state \"\" --t-end 0.1").code == 2);
}

TEST_CASE("longitudinal wavenumber flows through to the energy series") {
  const fs::path dir = fresh_dir("propagate_k");
  const RunResult r = run_cli(
      "propagate --state \"0,0,1\" --k 1.5 --t-end 0.1 --grid-n 64 --grid-l 16 --out " +
      dir.string());
  CHECK(r.code == 0);
  std::ifstream in(dir / "energy_series.csv");
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  const double energy = std::stod(first.substr(first.find(',') + 1));
  // hbar omega_osc (n+1) + hbar^2 k^2 / 2m = 1 + 1.125
  CHECK(energy == doctest::Approx(2.125).epsilon(1e-6));
}
