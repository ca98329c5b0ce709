// Acceptance suite. Prints one PASS/FAIL line per criterion; pass a criterion
// number to run a single one.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "runner.hpp"
#include "skewdiff/gaussian.hpp"
#include "skewdiff/gdiff.hpp"
#include "skewdiff/sbm.hpp"

namespace {

using nlohmann::json;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!ok) {
      pass = false;
      detail += " [fail]";
    }
  }
};

struct Run {
  int code = 0;
  std::string text;
  json doc;
};

Run skewsim(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = skewsim::run(std::move(args), out, err);
  r.text = out.str();
  if (r.code == skewsim::kInvalidConfig) {
    std::cerr << "skewsim rejected the configuration: " << err.str();
    return r;
  }
  bool is_json = !r.text.empty() && r.text.front() == '{';
  if (is_json) r.doc = json::parse(r.text);
  return r;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

const json* find_check(const json& doc, const std::string& name) {
  for (const auto& c : doc["checks"]) {
    if (c["name"] == name) return &c;
  }
  return nullptr;
}

// E|x1 - x2| = |q1 - q2| I_1(x) at x = 0 and x = 1.
Outcome ac1() {
  Outcome o;
  for (const char* x : {"0", "1"}) {
    const auto r = skewsim({"couple", "--experiment", "corollary1", "--q1", "0.6", "--q2", "0.2", "--x0", x,
                            "--t", "1", "--n", "256", "--steps", "10000", "--paths", "10000", "--seed", "101"});
    const double target = 0.4 * skewdiff::expected_local_time(std::stod(x), 1.0);
    o.require(r.code == 0 && std::abs(r.doc["target"].get<double>() - target) < 1e-12,
              std::string("x=") + x + fmt(" estimate %.5f +- %.5f target %.6f", r.doc["estimate"].get<double>(),
                                         r.doc["stderr"].get<double>(), target));
  }
  return o;
}

// Reflected coupling keeps the order exactly.
Outcome ac2() {
  Outcome o;
  struct Case {
    const char* q;
    const char* x01;
    const char* x02;
  };
  for (const Case c : {Case{"1", "0", "0.3"}, Case{"-1", "-0.5", "0"}}) {
    const auto r = skewsim({"couple", "--experiment", "ordering", "--q1", c.q, "--q2", c.q, "--x01", c.x01,
                            "--x02", c.x02, "--t", "1", "--steps", "1000", "--paths", "10000", "--seed", "102"});
    const double worst = r.doc["details"]["max_violation"].get<double>();
    o.require(r.code == 0 && worst == 0.0, std::string("q=") + c.q + fmt(" max violation %g", worst));
  }
  return o;
}

// Mollified ordering: violating fraction <= 1% at dt = 1e-4, nonincreasing at dt/4.
Outcome ac3() {
  Outcome o;
  auto fraction = [](const char* steps) {
    const auto r = skewsim({"couple", "--experiment", "ordering", "--q1", "0.2", "--q2", "0.6", "--x01", "-0.1",
                            "--x02", "0.1", "--n", "256", "--t", "1", "--steps", steps, "--paths", "1000",
                            "--seed", "103"});
    return r.doc["estimate"].get<double>();
  };
  const double coarse = fraction("10000");
  const double fine = fraction("40000");
  o.require(coarse <= 0.01, fmt("fraction %.4f at dt=1e-4", coarse));
  o.require(fine <= coarse, fmt("fraction %.4f at dt=2.5e-5", fine));
  return o;
}

// Exact sampler KS and the scheme's local time law.
Outcome ac4() {
  Outcome o;
  for (const char* x : {"0", "1"}) {
    const auto r = skewsim({"laws", "--experiment", "eta-cdf", "--x0", x, "--t", "1", "--paths", "100000",
                            "--seed", "104"});
    const auto* ks = find_check(r.doc, "ks");
    o.require(r.code == 0 && ks && (*ks)["pass"] == true,
              std::string("sampler x=") + x + fmt(" KS %.4f <= %.4f", (*ks)["estimate"].get<double>(),
                                                   (*ks)["bound"].get<double>()));
  }
  for (const char* x : {"0", "1"}) {
    const auto r = skewsim({"laws", "--experiment", "scheme-law", "--q", "0.6", "--x0", x, "--t", "1",
                            "--steps", "10000", "--paths", "10000", "--seed", "104"});
    const auto* mean = find_check(r.doc, "mean-local-time");
    const auto* ks = find_check(r.doc, "ks");
    o.require(r.code == 0,
              std::string("scheme x=") + x + fmt(" mean %.4f target %.4f KS %.4f",
                                                  (*mean)["estimate"].get<double>(),
                                                  (*mean)["target"].get<double>(), (*ks)["estimate"].get<double>()));
  }
  return o;
}

// Corollary 2 / Remark 1 / Remark 2 bounds on 20 random parameter sets.
Outcome ac5() {
  Outcome o;
  const auto r = skewsim({"couple", "--experiment", "bound-suite", "--cases", "20", "--dt", "1e-4",
                          "--paths", "1000", "--seed", "105"});
  std::size_t failed = 0;
  std::size_t total = 0;
  double worst = -1e300;
  for (const auto& c : r.doc["checks"]) {
    ++total;
    if (c["pass"] != true) ++failed;
    const double se = c["stderr"].get<double>();
    const double excess = c["estimate"].get<double>() - c["bound"].get<double>();
    worst = std::max(worst, se > 0.0 ? excess / se : (excess > 0.0 ? 1e300 : 0.0));
  }
  o.require(r.code == 0 && total == 80 && failed == 0,
            fmt("%.0f of %.0f bound checks violated, worst excess %.2f SE", failed, total, worst));
  return o;
}

// Offsets along nu: P{|x_d(1) - x(1)| > 0.25} decreases with the offset, control is 0.
Outcome ac6() {
  Outcome o;
  const auto r = skewsim({"continuity", "--profile", "mixed", "--dim", "3", "--q", "0.5", "--epsilon", "0.25",
                          "--offsets", "0.4,0.2,0.1,0.05", "--t", "1", "--steps", "2000", "--paths", "4000",
                          "--seed", "106"});
  const auto& p = r.doc["table"]["probability"];
  std::string trend;
  for (const auto& v : p) trend += fmt(" %.4f", v.get<double>());
  o.require(r.code == 0 && p[0].get<double>() == 0.0, "probabilities" + trend);
  return o;
}

// rho tail and small local time bounds.
Outcome ac7() {
  Outcome o;
  const auto tail = skewsim({"gdiff", "--experiment", "rho-tail", "--q", "0.5", "--x0", "0", "--level", "0.5",
                             "--t", "1", "--N", "4", "--steps", "16000", "--paths", "1000", "--seed", "107"});
  o.require(tail.code == 0 && std::abs(tail.doc["bound"].get<double>() - 0.398942) < 5e-7,
            fmt("rho tail %.4f <= %.6f", tail.doc["estimate"].get<double>(), tail.doc["bound"].get<double>()));

  const double exact = 1.0 - 2.0 * skewdiff::gaussian_tail(0.5);
  const double bound = skewdiff::small_local_time_bound(1.0, 0.5);
  o.require(std::abs(exact - 0.382925) < 5e-7 && exact <= bound, fmt("exact %.6f <= %.6f", exact, bound));

  const auto small = skewsim({"gdiff", "--experiment", "small-local-time", "--q", "0.5", "--x0", "0",
                              "--level", "0.5", "--t", "1", "--steps", "10000", "--paths", "2000", "--seed", "107"});
  const auto* sim = find_check(small.doc, "simulated");
  o.require(small.code == 0 && sim, fmt("simulated P(eta<0.5) %.4f +- %.4f", (*sim)["estimate"].get<double>(),
                                        (*sim)["stderr"].get<double>()));
  return o;
}

// Quadratic variation of the space map and cross-scheme KS.
Outcome ac8() {
  Outcome o;
  const auto qv = skewsim({"laws", "--experiment", "quadratic-variation", "--q", "0.6", "--x0", "0", "--t", "1",
                           "--steps", "10000", "--paths", "500", "--seed", "108"});
  o.require(qv.code == 0, fmt("QV ratio %.4f", qv.doc["estimate"].get<double>()));
  const auto ks = skewsim({"laws", "--experiment", "cross-scheme", "--q", "0.6", "--x0", "0", "--t", "1",
                           "--steps", "10000", "--paths", "10000", "--seed", "108"});
  o.require(ks.code == 0, fmt("cross-scheme KS %.4f <= 0.03", ks.doc["estimate"].get<double>()));
  return o;
}

// Identical bytes for 1, 4 and 16 workers.
Outcome ac9() {
  Outcome o;
  const std::vector<std::vector<std::string>> runs{
      {"sbm", "--q", "0.5", "--paths", "1", "--steps", "1000", "--format", "csv"},
      {"sbm", "--q", "0.6", "--x0", "1", "--paths", "300", "--steps", "2000"},
      {"couple", "--experiment", "corollary1", "--q1", "0.6", "--q2", "0.2", "--paths", "300", "--steps", "2000"},
      {"couple", "--experiment", "bound-suite", "--cases", "3", "--paths", "100", "--dt", "1e-3"},
      {"laws", "--experiment", "eta-cdf", "--x0", "0.5", "--paths", "20000"},
      {"gdiff", "--experiment", "path", "--profile", "mixed", "--steps", "1000", "--format", "csv"},
      {"continuity", "--paths", "200", "--steps", "1000", "--format", "csv"},
  };
  for (auto args : runs) {
    args.insert(args.end(), {"--seed", "109"});
    std::vector<std::string> outputs;
    for (const char* w : {"1", "4", "16", "1"}) {
      auto a = args;
      a.insert(a.end(), {"--workers", w});
      outputs.push_back(skewsim(a).text);
    }
    bool same = !outputs[0].empty();
    for (const auto& s : outputs) same = same && s == outputs[0];
    o.require(same, args[0] + (args[1] == "--experiment" ? " " + args[2] : std::string()));
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9};
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::stoul(argv[i]));
  if (selected.empty()) {
    for (std::size_t i = 1; i <= criteria.size(); ++i) selected.push_back(i);
  }
  bool all = true;
  for (std::size_t id : selected) {
    if (id < 1 || id > criteria.size()) {
      std::cerr << "unknown criterion " << id << "\n";
      return 2;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[id - 1]();
    } catch (const std::exception& e) {
      outcome.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " AC" << id << " " << outcome.detail
              << fmt(" (%.1fs)", secs) << std::endl;
    all = all && outcome.pass;
  }
  return all ? 0 : 1;
}
