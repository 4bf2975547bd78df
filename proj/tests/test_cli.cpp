#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmap/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cmap::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cmap_test_" + name);
}

const std::vector<std::string> kSmall{"--lambda", "4", "--r", "2", "--n", "6", "--ma", "1.5", "--mp", "1"};

std::vector<std::string> with(std::string cmd, std::vector<std::string> extra = {}) {
  std::vector<std::string> args{std::move(cmd)};
  args.insert(args.end(), kSmall.begin(), kSmall.end());
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

TEST_CASE("rate") {
  auto r = run(with("rate"));
  CHECK(r.code == 0);
  CHECK(r.out.find("rate_achievable: 1/2\n") != std::string::npos);
  CHECK(r.out.find("subpacketization: 12\n") != std::string::npos);

  r = run({"rate", "--lambda", "5", "--r", "2", "--n", "10", "--ma", "2", "--mp", "1"});
  CHECK(r.out.find("rate_achievable: 4/3\n") != std::string::npos);

  r = run({"rate", "--lambda", "4", "--r", "2", "--n", "6", "--ma", "1.5", "--mp", "2"});
  CHECK(r.out.find("rate_achievable: 1/6\n") != std::string::npos);
  CHECK(r.out.find("cutset_lb: 1/6\n") != std::string::npos);

  r = run({"rate", "--lambda", "5", "--r", "2", "--n", "10", "--ma", "2", "--mp", "1", "--decimal"});
  CHECK(r.out.find("rate_achievable: 1.33333\n") != std::string::npos);
}

TEST_CASE("bounds") {
  const auto r = run({"bounds", "--lambda", "5", "--r", "2", "--n", "10", "--ma", "2", "--mp", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("alpha_lb: 29\n") != std::string::npos);
  CHECK(r.out.find("independent_set_first: 26\n") != std::string::npos);
  CHECK(r.out.find("independent_set_second: 3\n") != std::string::npos);
  CHECK(r.out.find("independent_set_exact_check: true\n") != std::string::npos);
}

TEST_CASE("scheme, verify and simulate") {
  auto r = run(with("scheme"));
  CHECK(r.code == 0);
  const auto tx = lines(r.out);
  CHECK(tx.size() == 6);
  CHECK(tx.front() == "d(12)|3|14+d(14)|3|12+d(23)|1|34+d(34)|1|23");

  r = run(with("verify"));
  CHECK(r.code == 0);
  CHECK(r.out == "PASS users=6 missing=0\n");

  r = run(with("verify", {"--report"}));
  CHECK(lines(r.out).size() == 7);

  r = run(with("simulate", {"--seed", "7", "--file-bits", "96"}));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("PASS", 0) == 0);
  CHECK(r.out.find("caches_at_capacity=true") != std::string::npos);

  r = run({"simulate", "--lambda", "4", "--r", "2", "--n", "6", "--ma", "1.5", "--mp", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("transmissions=2") != std::string::npos);
}

TEST_CASE("scheme dump") {
  const auto path = temp_file("dump.json");
  const auto r = run(with("scheme", {"--dump", path.string()}));
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["schedule"].size() == 6);
  CHECK(j["params"]["m_access"] == "3/2");
  CHECK(j["access"]["1"].size() == 6);
  CHECK(j["private"]["12"].size() == 12);
  CHECK(j["private"]["12"][0]["tag"][0] == "12");
  std::filesystem::remove(path);
}

TEST_CASE("sweep") {
  const auto r = run({"sweep", "--lambda", "6", "--r", "2,3,4", "--t", "1..6", "--mp-mode", "unit"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 19);
  CHECK(rows[0] ==
        "lambda,r,t,m_access,m_private,n_files,k_users,subpacketization,rate_achievable,man_lb,cmacc_ub,"
        "cutset_lb,alpha_lb_normalized");
  CHECK(rows[1].rfind("6,2,1,", 0) == 0);
  CHECK(run({"sweep", "--lambda", "6", "--r", "2,3,4", "--t", "1..6"}).out == r.out);

  const auto zero = run({"sweep", "--lambda", "5", "--r", "2", "--t", "0..5", "--mp-mode", "zero", "--decimal"});
  CHECK(zero.code == 0);
  CHECK(lines(zero.out).size() == 7);
  CHECK(run({"sweep", "--lambda", "5", "--mp-mode", "half"}).code == 2);
  CHECK(run({"sweep", "--lambda", "5", "--t", "3..9"}).code == 2);
}

TEST_CASE("config file and overrides") {
  const auto path = temp_file("ex1.cfg");
  {
    std::ofstream out(path);
    out << "lambda=4\nr=2\nn_files=6\nm_access=3/2\nm_private=1\nfile_bits=96\nseed=7\n";
  }
  auto r = run({"simulate", "--config", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("seed=7 file_bits=96") != std::string::npos);
  r = run({"rate", "--config", path.string(), "--mp", "2"});
  CHECK(r.out.find("rate_achievable: 1/6\n") != std::string::npos);
  std::filesystem::remove(path);
  CHECK(run({"rate", "--config", path.string()}).code == 2);
}

TEST_CASE("exit codes and determinism") {
  CHECK(run({"rate", "--lambda", "4", "--r", "2", "--n", "5", "--ma", "3", "--mp", "3"}).code == 2);
  CHECK(run({"rate", "--lambda", "four", "--r", "2", "--n", "6"}).code == 2);
  CHECK(run({"rate", "--r", "2", "--n", "6"}).code == 2);
  CHECK(run({"launch"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run(with("simulate", {"--file-bits", "100"})).code == 2);
  CHECK(run({"scheme", "--lambda", "4", "--r", "2", "--n", "6", "--ma", "2.25", "--mp", "1"}).code == 2);
  CHECK(run({"scheme", "--lambda", "5", "--r", "2", "--n", "10", "--ma", "2", "--mp", "2"}).code == 2);
  const auto bad = run({"rate", "--lambda", "4", "--r", "2", "--n", "5", "--ma", "3", "--mp", "3"});
  CHECK(bad.err.find("m_access + m_private") != std::string::npos);
  CHECK(run({"--help"}).code == 0);

  for (const auto& cmd : {"rate", "scheme", "verify", "simulate", "bounds"}) {
    CHECK(run(with(cmd)).out == run(with(cmd)).out);
  }
}
