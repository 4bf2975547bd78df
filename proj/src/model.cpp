#include "cmap/model.hpp"

#include <istream>
#include <set>
#include <sstream>
#include <string>

#include "cmap/errors.hpp"

namespace cmap {

std::int64_t SystemParams::users() const { return binom(lambda, r); }

Rational SystemParams::t_access() const {
  if (n_files <= 0) return Rational(0);
  return Rational(lambda) * m_access / n_files;
}

Rational SystemParams::t_private() const {
  if (n_files <= 0) return Rational(0);
  return Rational(users()) * m_private / n_files;
}

std::int64_t Regime::minis_per_subfile() const {
  if (full_access()) return 1;
  return binom(wanting_users(), t_private);
}

std::int64_t Regime::subpacketization() const {
  return binom(lambda, t_access) * minis_per_subfile();
}

namespace {

std::string fmt(const Rational& q) { return format_rational(q); }

void check_shape(const SystemParams& p, std::vector<std::string>& out) {
  if (p.lambda < 1 || p.lambda > IndexSet::kMaxElement) {
    out.push_back("lambda must be in [1, 63], got " + std::to_string(p.lambda));
  }
  if (p.r < 1 || p.r > p.lambda) {
    out.push_back("r must be in [1, lambda], got " + std::to_string(p.r));
  }
  if (p.n_files < 1) out.push_back("n_files must be positive");
}

}  // namespace

ValidationReport validate(const SystemParams& params) {
  ValidationReport report;
  auto& v = report.violations;
  check_shape(params, v);
  if (!v.empty()) {
    report.valid = false;
    return report;
  }

  const Rational n(params.n_files);
  report.users = params.users();
  if (params.n_files < report.users) {
    v.push_back("n_files (" + std::to_string(params.n_files) + ") must be at least K = " +
                std::to_string(report.users));
  }
  if (params.m_access < 0 || params.m_access > n) {
    v.push_back("m_access must be in [0, N], got " + fmt(params.m_access));
  }
  if (params.m_private < 0 || params.m_private > n) {
    v.push_back("m_private must be in [0, N], got " + fmt(params.m_private));
  }
  if (params.m_access + params.m_private >= n) {
    v.push_back("m_access + m_private must be below N (" + fmt(params.m_access) + " + " +
                fmt(params.m_private) + " >= " + std::to_string(params.n_files) + ")");
  }
  if (params.file_bits < 0) v.push_back("file_bits must be non-negative");

  report.t_access = params.t_access();
  report.t_private = params.t_private();
  report.t_access_integer = is_integer(report.t_access);
  report.t_private_integer = is_integer(report.t_private);

  if (report.t_access_integer && report.t_private_integer && params.m_access >= 0 &&
      params.m_private >= 0 && params.m_access <= n && params.m_private <= n) {
    Regime regime{params.lambda, params.r, static_cast<int>(to_int(report.t_access)),
                  static_cast<int>(to_int(report.t_private))};
    report.full_access = regime.full_access();
    if (!regime.full_access() && regime.t_private > regime.wanting_users()) {
      v.push_back("t_p = " + std::to_string(regime.t_private) +
                  " exceeds the number of users missing each subfile (" +
                  std::to_string(regime.wanting_users()) + ")");
    } else {
      report.subpacketization = regime.subpacketization();
      if (params.file_bits > 0 && params.file_bits % *report.subpacketization != 0) {
        v.push_back("file_bits (" + std::to_string(params.file_bits) +
                    ") must be divisible by F = " + std::to_string(*report.subpacketization));
      }
    }
  }
  report.valid = v.empty();
  return report;
}

void require_valid(const SystemParams& params) {
  auto report = validate(params);
  if (report.valid) return;
  std::string message = "invalid parameters:";
  for (const auto& line : report.violations) message += "\n  " + line;
  throw ParameterError(message);
}

Regime integer_regime(const SystemParams& params) {
  std::vector<std::string> problems;
  check_shape(params, problems);
  if (!problems.empty()) throw ParameterError(problems.front());
  const Rational ta = params.t_access();
  const Rational tp = params.t_private();
  if (!is_integer(ta)) {
    throw ParameterError("access replication factor t_a = " + format_rational(ta) +
                         " is fractional; use memory sharing");
  }
  if (!is_integer(tp)) {
    throw ParameterError("private replication factor t_p = " + format_rational(tp) +
                         " is fractional; use memory sharing");
  }
  Regime regime{params.lambda, params.r, static_cast<int>(to_int(ta)),
                static_cast<int>(to_int(tp))};
  if (regime.t_access < 0 || regime.t_access > regime.lambda) {
    throw ParameterError("t_a must be in [0, lambda], got " + std::to_string(regime.t_access));
  }
  if (regime.t_private < 0) throw ParameterError("t_p must be non-negative");
  if (!regime.full_access() && regime.t_private > regime.wanting_users()) {
    throw ParameterError("t_p = " + std::to_string(regime.t_private) +
                         " exceeds binom(lambda - t_a, r) = " +
                         std::to_string(regime.wanting_users()));
  }
  return regime;
}

std::vector<UserId> all_users(int lambda, int r) {
  return k_subsets(IndexSet::interval(1, lambda), r);
}

DemandVector DemandVector::from_list(int lambda, int r, const std::vector<int>& files) {
  auto users = all_users(lambda, r);
  if (files.size() != users.size()) {
    throw ParameterError("demand list has " + std::to_string(files.size()) + " entries for " +
                         std::to_string(users.size()) + " users");
  }
  std::map<UserId, int> demands;
  for (std::size_t i = 0; i < users.size(); ++i) demands.emplace(users[i], files[i]);
  return DemandVector(std::move(demands));
}

int DemandVector::file_for(UserId user) const {
  auto it = demands_.find(user);
  if (it == demands_.end()) {
    throw ParameterError("no demand recorded for user " + user.compact());
  }
  return it->second;
}

bool DemandVector::all_distinct() const {
  std::set<int> seen;
  for (const auto& [user, file] : demands_) {
    if (!seen.insert(file).second) return false;
  }
  return true;
}

DemandVector worst_case_demand(const SystemParams& params) {
  const std::int64_t k = params.users();
  if (params.n_files < k) {
    throw ParameterError("worst-case demand needs N >= K (" + std::to_string(params.n_files) +
                         " < " + std::to_string(k) + ")");
  }
  std::vector<int> files(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) files[static_cast<std::size_t>(i)] = static_cast<int>(i + 1);
  return DemandVector::from_list(params.lambda, params.r, files);
}

Rational accessible_fraction(const SystemParams& params) {
  const Regime regime = integer_regime(params);
  if (regime.full_access()) return Rational(1);
  const std::int64_t subfiles = binom(regime.lambda, regime.t_access);
  const std::int64_t missed = binom(regime.lambda - regime.r, regime.t_access);
  const std::int64_t per_subfile = regime.minis_per_subfile();
  // Readable subfiles bring every mini; each missed subfile brings the minis
  // whose tag names this user.
  const std::int64_t from_private =
      regime.t_private == 0 ? 0 : binom(regime.wanting_users() - 1, regime.t_private - 1);
  return Rational((subfiles - missed) * per_subfile + missed * from_private,
                  subfiles * per_subfile);
}

Config parse_config(std::istream& in) {
  Config config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const char* ws = " \t\r";
      s.erase(0, s.find_first_not_of(ws));
      s.erase(s.find_last_not_of(ws) + 1);
      return s;
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "lambda") {
        config.params.lambda = std::stoi(value);
      } else if (key == "r") {
        config.params.r = std::stoi(value);
      } else if (key == "n_files") {
        config.params.n_files = std::stoi(value);
      } else if (key == "m_access") {
        config.params.m_access = parse_rational(value);
      } else if (key == "m_private") {
        config.params.m_private = parse_rational(value);
      } else if (key == "file_bits") {
        config.params.file_bits = std::stoll(value);
      } else if (key == "seed") {
        config.seed = std::stoull(value);
      } else {
        throw ParameterError("unknown key '" + key + "'");
      }
    } catch (const std::logic_error& e) {
      throw ParameterError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

}  // namespace cmap
