#include "cmap/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "cmap/bounds.hpp"
#include "cmap/decode.hpp"
#include "cmap/delivery.hpp"
#include "cmap/errors.hpp"
#include "cmap/model.hpp"
#include "cmap/placement.hpp"
#include "cmap/sweep.hpp"

namespace cmap::cli {

namespace {

struct Flags {
  std::string config;
  std::string lambda, r, n, ma, mp;
  std::string t = "1..6";
  std::string mp_mode = "unit";
  std::string dump;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> file_bits;
  bool decimal = false;
  bool report = false;
};

int parse_int(const std::string& text, const char* name) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParameterError(std::string("--") + name + " expects an integer, got '" + text + "'");
}

std::vector<int> parse_int_list(const std::string& text, const char* name) {
  std::vector<int> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) out.push_back(parse_int(item, name));
  if (out.empty()) throw ParameterError(std::string("--") + name + " is empty");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int t = parse_int(text, "t");
    return {t, t};
  }
  return {parse_int(text.substr(0, dots), "t"), parse_int(text.substr(dots + 2), "t")};
}

struct Loaded {
  SystemParams params;
  std::uint64_t seed = 1;
};

Loaded load(const Flags& f) {
  Loaded out;
  bool have_lambda = false, have_r = false, have_n = false;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw ParameterError("cannot open config file '" + f.config + "'");
    const Config cfg = parse_config(in);
    out.params = cfg.params;
    if (cfg.seed) out.seed = *cfg.seed;
    have_lambda = out.params.lambda != 0;
    have_r = out.params.r != 0;
    have_n = out.params.n_files != 0;
  }
  auto& p = out.params;
  if (!f.lambda.empty()) p.lambda = parse_int(f.lambda, "lambda"), have_lambda = true;
  if (!f.r.empty()) p.r = parse_int(f.r, "r"), have_r = true;
  if (!f.n.empty()) p.n_files = parse_int(f.n, "n"), have_n = true;
  if (!f.ma.empty()) p.m_access = parse_rational(f.ma);
  if (!f.mp.empty()) p.m_private = parse_rational(f.mp);
  if (f.file_bits) p.file_bits = *f.file_bits;
  if (f.seed) out.seed = *f.seed;
  if (!have_lambda) throw ParameterError("--lambda is required");
  if (!have_r) throw ParameterError("--r is required");
  if (!have_n) throw ParameterError("--n is required");
  return out;
}

std::string fmt(const Rational& v, bool decimal) { return decimal ? format_decimal(v) : format_rational(v); }

void print_report(std::ostream& out, const BoundsReport& rep, bool decimal) {
  const auto& p = rep.params;
  const auto opt = [&](const std::optional<Rational>& v) { return v ? fmt(*v, decimal) : "n/a"; };
  out << "lambda: " << p.lambda << '\n'
      << "r: " << p.r << '\n'
      << "n_files: " << p.n_files << '\n'
      << "m_access: " << fmt(p.m_access, decimal) << '\n'
      << "m_private: " << fmt(p.m_private, decimal) << '\n'
      << "t_access: " << fmt(p.t_access(), decimal) << '\n'
      << "t_private: " << fmt(p.t_private(), decimal) << '\n'
      << "k_users: " << p.users() << '\n'
      << "subpacketization: " << (rep.subpacketization ? std::to_string(*rep.subpacketization) : "n/a") << '\n'
      << "rate_achievable: " << opt(rep.rate_achievable) << '\n'
      << "man_lb: " << fmt(rep.man_lb, decimal) << '\n'
      << "cmacc_ub: " << fmt(rep.cmacc_ub, decimal) << '\n'
      << "cutset_lb: " << fmt(rep.cutset_lb, decimal) << '\n'
      << "cutset_s: " << rep.cutset_s << '\n'
      << "alpha_lb: " << (rep.alpha_lb ? std::to_string(*rep.alpha_lb) : "n/a") << '\n'
      << "alpha_lb_normalized: " << opt(rep.alpha_lb_normalized) << '\n';
}

nlohmann::json dump_json(const SystemParams& p, const PlacementMap& placement, const Schedule& schedule) {
  using nlohmann::json;
  json j;
  j["params"] = {{"lambda", p.lambda},
                 {"r", p.r},
                 {"n_files", p.n_files},
                 {"m_access", format_rational(p.m_access)},
                 {"m_private", format_rational(p.m_private)},
                 {"t_access", format_rational(p.t_access())},
                 {"t_private", format_rational(p.t_private())}};
  json access = json::object();
  for (const auto& [a, contents] : placement.access) {
    json items = json::array();
    for (const auto& s : contents) items.push_back({{"file", s.file}, {"subfile", s.subfile.compact()}});
    access[std::to_string(a)] = std::move(items);
  }
  json priv = json::object();
  for (const auto& [u, contents] : placement.private_caches) {
    json items = json::array();
    for (const auto& m : contents) {
      json tag = json::array();
      for (const auto& member : m.tag.members()) tag.push_back(member.compact());
      items.push_back({{"file", m.file}, {"subfile", m.subfile.compact()}, {"tag", std::move(tag)}});
    }
    priv[u.compact()] = std::move(items);
  }
  j["access"] = std::move(access);
  j["private"] = std::move(priv);
  json sched = json::array();
  for (const auto& tx : schedule) sched.push_back(tx.compact());
  j["schedule"] = std::move(sched);
  return j;
}

int cmd_rate(const Flags& f, std::ostream& out) {
  const auto loaded = load(f);
  require_valid(loaded.params);
  print_report(out, bounds_report(loaded.params), f.decimal);
  return kExitOk;
}

int cmd_bounds(const Flags& f, std::ostream& out) {
  const auto loaded = load(f);
  const auto& p = loaded.params;
  require_valid(p);
  print_report(out, bounds_report(p), f.decimal);
  const auto ub = uncoded_bounds(p);
  out << "uncoded_lower: " << fmt(ub.lower, f.decimal) << '\n'
      << "uncoded_upper: " << fmt(ub.upper, f.decimal) << '\n';
  if (is_integer(p.t_access()) && p.t_private() == 1) {
    const auto con = construct_independent_set(p, worst_case_demand(p));
    out << "independent_set_first: " << con.first.size() << '\n'
        << "independent_set_second: " << con.second.size() << '\n'
        << "independent_set_ordered_check: " << (con.ordered_check ? "true" : "false") << '\n'
        << "independent_set_exact_check: " << (con.exact_check ? "true" : "false") << '\n';
  }
  return kExitOk;
}

int cmd_scheme(const Flags& f, std::ostream& out) {
  const auto loaded = load(f);
  const auto& p = loaded.params;
  require_valid(p);
  const auto demand = worst_case_demand(p);
  const auto schedule = deliver(p, demand);
  for (const auto& tx : schedule) out << tx.compact() << '\n';
  if (!f.dump.empty()) {
    std::ofstream file(f.dump);
    if (!file) throw ParameterError("cannot write '" + f.dump + "'");
    file << dump_json(p, make_placement(p), schedule).dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_verify(const Flags& f, std::ostream& out) {
  const auto loaded = load(f);
  const auto& p = loaded.params;
  require_valid(p);
  const auto demand = worst_case_demand(p);
  const auto report = verify_all(p, demand, deliver(p, demand));
  out << (f.report ? report.to_text() : report.summary_line() + "\n");
  return report.pass ? kExitOk : kExitVerificationFailed;
}

int cmd_simulate(const Flags& f, std::ostream& out) {
  auto loaded = load(f);
  auto& p = loaded.params;
  if (p.file_bits == 0) {
    // default: one byte per mini-subfile
    p.file_bits = 8 * integer_regime(p).subpacketization();
  }
  require_valid(p);
  const auto demand = worst_case_demand(p);
  const auto result = bitlevel_roundtrip(p, demand, deliver(p, demand), loaded.seed);
  out << result.detail << " seed=" << loaded.seed << " file_bits=" << p.file_bits
      << " caches_at_capacity=" << (result.caches_at_capacity ? "true" : "false") << '\n';
  return result.pass ? kExitOk : kExitVerificationFailed;
}

int cmd_sweep(const Flags& f, std::ostream& out) {
  if (f.lambda.empty()) throw ParameterError("--lambda is required");
  const int lambda = parse_int(f.lambda, "lambda");
  const auto rs = f.r.empty() ? std::vector<int>{1} : parse_int_list(f.r, "r");
  const auto [lo, hi] = parse_range(f.t);
  PrivateMemoryMode mode;
  if (f.mp_mode == "unit") {
    mode = PrivateMemoryMode::Unit;
  } else if (f.mp_mode == "zero") {
    mode = PrivateMemoryMode::Zero;
  } else {
    throw ParameterError("--mp-mode must be unit or zero");
  }
  const auto rows = parallel::evaluate_sweep(sweep_grid(lambda, rs, lo, hi, mode));
  write_sweep_csv(out, rows, f.decimal);
  return kExitOk;
}

void add_params(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "key=value parameter file");
  sub->add_option("--lambda", f.lambda, "number of access caches");
  sub->add_option("--r", f.r, "access degree");
  sub->add_option("--n", f.n, "number of files");
  sub->add_option("--ma", f.ma, "access cache size in files (3/2 or 1.5)");
  sub->add_option("--mp", f.mp, "private cache size in files");
  sub->add_flag("--decimal", f.decimal, "print decimals instead of p/q");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coded caching with multi-access and private caches"};
  app.require_subcommand(1);
  Flags f;

  auto* rate = app.add_subcommand("rate", "achievable rate and bounds for one point");
  add_params(rate, f);
  auto* bounds = app.add_subcommand("bounds", "every bound, plus the independent set construction");
  add_params(bounds, f);
  auto* scheme = app.add_subcommand("scheme", "print the delivery schedule");
  add_params(scheme, f);
  scheme->add_option("--dump", f.dump, "write placement and schedule as JSON");
  auto* verify = app.add_subcommand("verify", "peel every user against the schedule");
  add_params(verify, f);
  verify->add_flag("--report", f.report, "per-user detail");
  auto* simulate = app.add_subcommand("simulate", "bit-level encode/decode round trip");
  add_params(simulate, f);
  simulate->add_option("--seed", f.seed, "library seed");
  simulate->add_option("--file-bits", f.file_bits, "file size B in bits");
  auto* sweep = app.add_subcommand("sweep", "CSV of bounds over (r, t)");
  sweep->add_option("--lambda", f.lambda, "number of access caches");
  sweep->add_option("--r", f.r, "comma separated access degrees");
  sweep->add_option("--t", f.t, "replication range lo..hi");
  sweep->add_option("--mp-mode", f.mp_mode, "unit (M_p = N/K) or zero");
  sweep->add_flag("--decimal", f.decimal, "print decimals instead of p/q");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadParameters;
  }

  try {
    if (*rate) return cmd_rate(f, out);
    if (*bounds) return cmd_bounds(f, out);
    if (*scheme) return cmd_scheme(f, out);
    if (*verify) return cmd_verify(f, out);
    if (*simulate) return cmd_simulate(f, out);
    if (*sweep) return cmd_sweep(f, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadParameters;
  } catch (const SchemeInvariantError& e) {
    err << "scheme invariant violated: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadParameters;
  }
  return kExitBadParameters;
}

}  // namespace cmap::cli
