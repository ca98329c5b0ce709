#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "report.hpp"
#include "runner.hpp"
#include "skewdiff/rng.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args, std::optional<std::string> env = std::nullopt) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = skewsim::run(std::move(args), out, err, env);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("skewsim_test_" + name);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("sbm path CSV schema") {
    const auto r = call({"sbm", "--q", "0.5", "--x0", "0", "--t", "1", "--steps", "1000", "--paths", "1",
                         "--seed", "7", "--format", "csv"});
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 1002);
    CHECK(rows[0] == "time,x,eta,w");
    CHECK(rows[1] == "0,0,0,0");
    CHECK(rows.back().rfind("1,", 0) == 0);
  }

  TEST_CASE("repeated runs are byte-identical across worker counts") {
    const std::vector<std::string> base{"couple", "--experiment", "corollary1", "--q1", "0.6", "--q2", "0.2",
                                        "--x0", "0", "--t", "1", "--paths", "400", "--steps", "2000",
                                        "--seed", "7"};
    auto with_workers = [&](const char* w) {
      auto args = base;
      args.insert(args.end(), {"--workers", w});
      return call(args);
    };
    const auto a = with_workers("1");
    const auto b = with_workers("1");
    const auto c = with_workers("4");
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.code == c.code);
  }

  TEST_CASE("eta-cdf KS at M = 1e5") {
    const auto r = call({"laws", "--experiment", "eta-cdf", "--x0", "1", "--t", "1", "--paths", "100000",
                         "--seed", "7"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["estimate"].get<double>() <= 0.0163);
    CHECK(j["bound"].get<double>() == doctest::Approx(1.63 / std::sqrt(1e5)));
  }

  TEST_CASE("summary schema") {
    const std::vector<std::vector<std::string>> runs{
        {"sbm", "--paths", "50", "--steps", "500", "--q", "0.6"},
        {"couple", "--experiment", "remark2", "--paths", "50", "--steps", "200"},
        {"laws", "--experiment", "mean-local-time", "--points", "5"},
        {"gdiff", "--experiment", "small-local-time", "--paths", "100", "--steps", "500", "--level", "0.5"},
        {"gdiff", "--experiment", "coefficients", "--probes", "20"},
        {"continuity", "--paths", "20", "--steps", "200"},
    };
    for (auto args : runs) {
      args.insert(args.end(), {"--seed", "3"});
      const auto r = call(args);
      INFO(args[0], " ", r.err);
      CHECK(r.code != 2);
      const auto j = nlohmann::json::parse(r.out);
      for (const char* key : {"experiment", "parameters", "estimate", "stderr", "pass"}) {
        CHECK(j.contains(key));
      }
      CHECK((j.contains("target") || j.contains("bound")));
    }
  }

  TEST_CASE("summary CSV header") {
    const auto r = call({"couple", "--experiment", "remark2", "--paths", "20", "--steps", "100", "--seed", "1",
                         "--format", "csv"});
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "experiment,check,estimate,stderr,target,bound,pass");
    CHECK(rows[1].rfind("remark2,squared-local-time-gap,", 0) == 0);
  }

  TEST_CASE("invalid configurations exit with 2") {
    CHECK(call({"sbm", "--q", "1.5", "--seed", "1", "--paths", "1"}).code == 2);
    CHECK(call({"sbm", "--q", "0.5", "--paths", "1"}).code == 2);
    CHECK(call({"couple", "--experiment", "nope", "--seed", "1"}).code == 2);
    CHECK(call({"frobnicate", "--seed", "1"}).code == 2);
    CHECK(call({"sbm", "--format", "xml", "--seed", "1"}).code == 2);
    CHECK(call({"sbm", "--steps", "0", "--seed", "1"}).code == 2);
    CHECK(call({"gdiff", "--experiment", "small-local-time", "--x0", "0.2", "--seed", "1"}).code == 2);
    CHECK(call({"gdiff", "--experiment", "moment", "--profile", "mixed", "--seed", "1"}).code == 2);
    CHECK(call({"couple", "--experiment", "remark1", "--q", "0.5", "--seed", "1"}).code == 2);
    CHECK(call({"continuity", "--offsets", "0.1,x", "--seed", "1"}).code == 2);
    CHECK(call({}).code == 2);
    const auto r = call({"couple", "--experiment", "corollary2", "--q", "0", "--seed", "1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("q in (-1,0) or (0,1)") != std::string::npos);
  }

  TEST_CASE("failed gate exits with 1") {
    // dt = 1e-3 is far too coarse for n = 256, so the local time is underestimated.
    const auto r = call({"couple", "--experiment", "corollary1", "--q1", "0.6", "--q2", "0.2", "--paths", "2000",
                         "--steps", "1000", "--seed", "7"});
    CHECK(r.code == 1);
    CHECK(nlohmann::json::parse(r.out)["pass"] == false);
  }

  TEST_CASE("seed from the environment, flags win") {
    const std::vector<std::string> args{"sbm", "--paths", "1", "--steps", "50", "--format", "csv"};
    const auto env = call(args, "11");
    auto explicit_args = args;
    explicit_args.insert(explicit_args.end(), {"--seed", "11"});
    CHECK(env.code == 0);
    CHECK(env.out == call(explicit_args).out);
    CHECK(env.out == call(explicit_args, "12").out);
    CHECK(env.out != call(args, "12").out);
    CHECK(call(args, "abc").code == 2);
  }

  TEST_CASE("config file with flag override") {
    const auto path = temp_file("config.txt");
    {
      std::ofstream f(path);
      f << "# test config\nseed = 5\nsteps=50\npaths=1\nq = 0.3\nformat=csv\n";
    }
    const auto from_file = call({"sbm", "--config", path.string()});
    const auto from_flags = call({"sbm", "--seed", "5", "--steps", "50", "--paths", "1", "--q", "0.3",
                                  "--format", "csv"});
    CHECK(from_file.code == 0);
    CHECK(from_file.out == from_flags.out);
    const auto overridden = call({"sbm", "--config", path.string(), "--steps", "20"});
    CHECK(lines(overridden.out).size() == 22);

    {
      std::ofstream f(path);
      f << "seed 5\n";
    }
    CHECK(call({"sbm", "--config", path.string()}).code == 2);
    CHECK(call({"sbm", "--config", "/nonexistent/skewsim.cfg"}).code == 2);
    std::filesystem::remove(path);
  }

  TEST_CASE("output file") {
    const auto path = temp_file("out.json");
    const auto r = call({"laws", "--experiment", "mean-local-time", "--points", "3", "--seed", "1",
                         "--output", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    const auto j = nlohmann::json::parse(f);
    CHECK(j["experiment"] == "mean-local-time");
    CHECK(j["table"]["mean_local_time"].size() == 3);
    std::filesystem::remove(path);
  }

  TEST_CASE("doubles round-trip through the text format") {
    auto s = skewdiff::derive_stream(99, 0);
    for (int i = 0; i < 10000; ++i) {
      const double v = (s.uniform() - 0.5) * std::pow(10.0, static_cast<int>(s() % 40) - 20);
      const std::string text = skewsim::format_double(v);
      double back = 0.0;
      std::from_chars(text.data(), text.data() + text.size(), back);
      REQUIRE(back == v);
    }
    CHECK(skewsim::format_double(0.1) == "0.1");
    CHECK(skewsim::format_double(1.0) == "1");
  }

  TEST_CASE("help") {
    const auto r = call({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("continuity") != std::string::npos);
  }
}
