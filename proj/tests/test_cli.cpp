// End-to-end checks of the command line tool. Run as: test_cli <path-to-bellbound>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int failures = 0;

#define CHECK(cond)                                                      \
  do {                                                                   \
    if (!(cond)) {                                                       \
      std::cerr << "FAIL " << __FILE__ << ":" << __LINE__ << ": " #cond  \
                << "\n";                                                 \
      ++failures;                                                        \
    }                                                                    \
  } while (0)

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

RunResult run(const std::string& cmd) {
  const std::string full = cmd + " > cli_stdout.txt 2> cli_stderr.txt";
  const int status = std::system(full.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp("cli_stdout.txt");
  r.err = slurp("cli_stderr.txt");
  return r;
}

nlohmann::json parse(const RunResult& r) {
  return nlohmann::json::parse(r.out);
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: test_cli <path-to-bellbound>\n";
    return 2;
  }
  const std::string bin = std::string("\"") + argv[1] + "\"";

  {
    RunResult r = run(bin + " box --kind pr --out cli_pr.json");
    CHECK(r.code == 0);
    r = run(bin + " analyze cli_pr.json");
    CHECK(r.code == 0);
    const nlohmann::json j = parse(r);
    CHECK(j["measures"]["I"].get<double>() == 0.5);
    CHECK(j["measures"]["S"].get<double>() == 0.0);
    CHECK(j["chsh"]["value"].get<double>() == 4.0);
    CHECK(j["consistency"]["pass"].get<bool>());
    CHECK(j["consistency"]["equality"].get<bool>());
  }

  {
    RunResult r = run(bin + " box --kind nosignal --I 0.25 --out cli_ns.json");
    CHECK(r.code == 0);
    r = run(bin + " analyze cli_ns.json");
    CHECK(r.code == 0);
    const nlohmann::json j = parse(r);
    CHECK(near(j["measures"]["I"].get<double>(), 0.25, 1e-9));
    CHECK(j["chsh"]["value"].get<double>() == 3.0);
    CHECK(j["consistency"]["equality"].get<bool>());
    CHECK(near(j["info"]["H_of_I"].get<double>(), 0.811278124459, 1e-9));
  }

  {
    const RunResult r =
        run(bin + " box --kind deterministic --outcomes 1,-1,1,-1");
    CHECK(r.code == 0);
    const nlohmann::json model = parse(r);
    CHECK(model["lambdas"].size() == 1);
    CHECK(r.err.find("CHSH = -2") != std::string::npos);
  }

  {
    const RunResult r = run(bin + " analyze cli_missing.json");
    CHECK(r.code == 1);
  }

  {
    std::ofstream f("cli_bad.json");
    f << "{\n \"lambdas\": [\n   oops\n ]\n}\n";
    f.close();
    const RunResult r = run(bin + " analyze cli_bad.json");
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
  }

  {
    // Valid model without freedom of choice: weights shift across pairs.
    std::ofstream f("cli_dependent.json");
    f << R"({"lambdas": [
      {"weights": {"XY": 0.7, "XpY": 0.5, "XYp": 0.5, "XpYp": 0.3},
       "dists": {"XY": [1,0,0,0], "XpY": [1,0,0,0], "XYp": [1,0,0,0], "XpYp": [1,0,0,0]}},
      {"weights": {"XY": 0.3, "XpY": 0.5, "XYp": 0.5, "XpYp": 0.7},
       "dists": {"XY": [0,0,0,1], "XpY": [0,0,0,1], "XYp": [0,0,0,1], "XpYp": [0,0,0,1]}}
    ]})";
    f.close();
    const RunResult r = run(bin + " analyze cli_dependent.json");
    CHECK(r.code == 0);
    const nlohmann::json j = parse(r);
    CHECK(j["consistency"].is_null());
    CHECK(j["measures"]["M"].get<double>() > 0.0);
    CHECK(r.err.find("freedom of choice") != std::string::npos);
  }

  {
    const RunResult r = run(bin + " thresholds --V 0.8284271247461903");
    CHECK(r.code == 0);
    const nlohmann::json j = parse(r);
    CHECK(near(j["I_V"].get<double>(), 0.207106781187, 1e-9));
    CHECK(near(j["S_V"].get<double>(), 0.585786437627, 1e-9));
    CHECK(near(j["H_V"].get<double>() + j["C_V"].get<double>(), 1.0, 1e-9));
  }

  {
    const RunResult r = run(bin + " oracle --I 0.25 --S 0 --step 0.05");
    CHECK(r.code == 0);
    const nlohmann::json j = parse(r);
    CHECK(j["max_E"].get<double>() == 3.0);
    CHECK(j["gap"].get<double>() == 0.0);
  }

  {
    const RunResult r = run(bin +
                            " oracle --I-list 0,0.25 --S-list 0,0.5"
                            " --step 0.25 --csv cli_cells.csv");
    CHECK(r.code == 0);
    const nlohmann::json j = parse(r);
    CHECK(j["cells"].size() == 4);
    CHECK(j["cells"][3]["I"].get<double>() == 0.25);
    CHECK(j["cells"][3]["max_E"].get<double>() == 4.0);
    std::istringstream csv(slurp("cli_cells.csv"));
    std::string line;
    int lines = 0;
    while (std::getline(csv, line)) ++lines;
    CHECK(lines == 5);
  }

  {
    const std::string cmd = bin + " singlet --w 0.5 --samples 20000 --seed 9";
    const RunResult a = run(cmd);
    const RunResult b = run(cmd);
    const RunResult c = run("BELLBOUND_THREADS=3 " + cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    const nlohmann::json j = parse(a);
    CHECK(j["measures"]["S_plus_2I"].get<double>() == 1.0);
    CHECK(near(j["estimate"]["chsh"].get<double>(),
               j["analytic"]["value"].get<double>(), 0.05));
  }

  {
    const RunResult r = run(bin + " singlet --w 1.5");
    CHECK(r.code == 2);
  }

  {
    const RunResult r = run(bin + " info --I 0.25 --S 0.5 --p 0.25");
    CHECK(r.code == 0);
    const nlohmann::json j = parse(r);
    CHECK(j["sum"].get<double>() == 1.0);
    CHECK(near(j["mutual_info_shift"].get<double>(),
               j["C_of_S"].get<double>(), 1e-9));
  }

  if (failures == 0) {
    std::cout << "test_cli: all checks passed\n";
    return 0;
  }
  std::cerr << "test_cli: " << failures << " check(s) failed\n";
  return 1;
}
