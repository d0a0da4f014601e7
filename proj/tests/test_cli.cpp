#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(SFDD_CLI_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/sfdd_test_") + name;
}

int count_lines(const std::string& text, char first) {
  int n = 0;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] == first) ++n;
  return n;
}

}  // namespace

TEST_CASE("geometry command and exit codes") {
  const std::string out = tmp_path("geom.csv");
  CHECK(run("geometry --m 1.4 --R 1.2 --out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("theta1_star_rad") != std::string::npos);
  CHECK(text.find("0.99696") != std::string::npos);
  CHECK(text.find("2.36639") != std::string::npos);
  CHECK(text.find("0.43590") != std::string::npos);

  // degenerate coincident discs
  CHECK(run("geometry --theta1 0.5 --theta2 0.5 --out " + tmp_path("deg.csv")) == 0);
  const std::string deg = slurp(tmp_path("deg.csv"));
  CHECK(deg.find(",1\n") != std::string::npos);  // degenerate flag set

  // invalid geometry: exit 2
  CHECK(run("geometry --m 3.0 --R 1.0") == 2);
  // both parameterizations at once: exit 2
  CHECK(run("geometry --m 1.4 --R 1.2 --theta1 1 --theta2 2") == 2);
  // no geometry at all
  CHECK(run("geometry") == 2);
  // unknown flag
  CHECK(run("geometry --m 1.4 --R 1.2 --bogus 1") == 2);
}

TEST_CASE("geometry with grids echoes the snapped scenario") {
  const std::string out = tmp_path("geom_snap.csv");
  CHECK(run("geometry --m 1.4 --R 1.2 --n1 42 --n2 50 --out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("ell1") != std::string::npos);
  CHECK(text.find(",7,") != std::string::npos);
  CHECK(text.find(",19,") != std::string::npos);
}

TEST_CASE("epsilon-table reproduces the reference values") {
  const std::string out = tmp_path("eps.csv");
  CHECK(run("epsilon-table --out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(count_lines(text, '#') >= 3);
  // 7 default rows + header
  std::istringstream is(text);
  std::string line;
  int rows = 0;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      CHECK(line == "N,r_star,epsilon,bound");
      continue;
    }
    ++rows;
  }
  CHECK(rows == 7);
  CHECK(text.find("0.000837") != std::string::npos);  // N = 5
}

TEST_CASE("CSV output is byte-identical across runs") {
  const std::string a = tmp_path("det_a.csv"), b = tmp_path("det_b.csv");
  CHECK(run("epsilon-table --N 5 --N 10 --out " + a) == 0);
  CHECK(run("epsilon-table --N 5 --N 10 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());

  const std::string c = tmp_path("det_c.csv"), d = tmp_path("det_d.csv");
  CHECK(run("dtd-profile --m 1.4 --R 1.2 --variant projection --N 10 --samples 33 --out " + c) == 0);
  CHECK(run("dtd-profile --m 1.4 --R 1.2 --variant projection --N 10 --samples 33 --out " + d) == 0);
  CHECK(slurp(c) == slurp(d));
}

TEST_CASE("kernel-scan emits a q column bounded by one") {
  const std::string out = tmp_path("scan.csv");
  CHECK(run("kernel-scan --N-min 4 --N-max 8 --out " + out) == 0);
  std::istringstream is(slurp(out));
  std::string line;
  bool header_seen = false;
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      CHECK(line.rfind("N,delta_th,delta_num", 0) == 0);
      continue;
    }
    ++rows;
    // q is the 6th column
    std::istringstream ls(line);
    std::string cell;
    for (int i = 0; i < 6; ++i) std::getline(ls, cell, ',');
    const double q = std::stod(cell);
    CHECK(q > 0.0);
    CHECK(q <= 1.0);
  }
  CHECK(rows == 5);
  CHECK(run("kernel-scan --N-min 2 --N-max 8") == 2);
  CHECK(run("kernel-scan --N-min 4 --N-max 300") == 2);
}

TEST_CASE("dtd-profile variants") {
  const std::string out = tmp_path("prof.csv");
  CHECK(run("dtd-profile --m 1.4 --R 1.2 --variant interpolation --N 20 --grid-only --out " +
            out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("snapped:") != std::string::npos);
  // first data row is the lower intersection node with value exactly 0
  std::istringstream is(text);
  std::string line;
  bool header_seen = false;
  std::string first_row;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    first_row = line;
    break;
  }
  std::istringstream ls(first_row);
  std::string tt, value;
  std::getline(ls, tt, ',');
  std::getline(ls, value, ',');
  CHECK(value == "0");

  CHECK(run("dtd-profile --m 1.4 --R 1.2 --variant bogus") == 2);
  CHECK(run("dtd-profile --m 3.0 --R 1.0 --variant exact") == 2);
}

TEST_CASE("schwarz-run exit codes distinguish convergence from stalling") {
  CHECK(run("schwarz-run --m 1.4 --R 1.2 --variant projection --N 12 --tol 1e-7 "
            "--max-sweeps 60 --samples 31 --out " +
            tmp_path("run_ok.csv")) == 0);
  const std::string text = slurp(tmp_path("run_ok.csv"));
  CHECK(text.find("converged: yes") != std::string::npos);
  CHECK(text.find("observed_rate:") != std::string::npos);
  CHECK(text.find("bound:") != std::string::npos);

  CHECK(run("schwarz-run --m 1.4 --R 1.2 --variant projection --N 12 --tol 1e-13 "
            "--max-sweeps 3 --samples 31 --out " +
            tmp_path("run_stall.csv")) == 3);
  CHECK(slurp(tmp_path("run_stall.csv")).find("converged: no") != std::string::npos);

  CHECK(run("schwarz-run --m 1.4 --R 1.2 --variant exact --mode bogus") == 2);
}

TEST_CASE("config file supplies defaults, flags override") {
  const std::string cfg = tmp_path("run.cfg");
  {
    std::ofstream os(cfg);
    os << "m=1.4\nR=1.2\nvariant=projection\nN=12\ntol=1e-7\nmax-sweeps=60\nsamples=31\n";
  }
  const std::string a = tmp_path("cfg_a.csv"), b = tmp_path("cfg_b.csv");
  CHECK(run("schwarz-run --config " + cfg + " --out " + a) == 0);
  CHECK(run("schwarz-run --config " + cfg + " --N 10 --out " + b) == 0);
  CHECK(slurp(a).find("--N 12") != std::string::npos);
  CHECK(slurp(b).find("--N 10") != std::string::npos);
}

TEST_CASE("contraction-sweep emits per-order bounds") {
  const std::string out = tmp_path("sweep.csv");
  CHECK(run("contraction-sweep --R 1 --N 10 --theta1-min 0.3 --theta1-max 1.2 "
            "--theta1-steps 4 --out " +
            out) == 0);
  std::istringstream is(slurp(out));
  std::string line;
  bool header_seen = false;
  int rows = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      CHECK(line == "theta1_star_rad,C_continuous,theta1_int_N10,C_bound_N10,flag_N10");
      continue;
    }
    ++rows;
    CHECK(line.find("ok") != std::string::npos);
  }
  CHECK(rows == 4);
  CHECK(run("contraction-sweep --R 0.5") == 2);
}

TEST_CASE("verify command exit codes") {
  CHECK(run("verify kernels --seed 12345") == 0);
  CHECK(run("verify nosuch") == 2);
}
