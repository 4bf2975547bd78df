#include "cmap/sweep.hpp"

#include <ostream>

#include "cmap/errors.hpp"
#include "kernels/common.hpp"

namespace cmap {

SystemParams sweep_params(const SweepPoint& point) {
  SystemParams p;
  p.lambda = point.lambda;
  p.r = point.r;
  const auto k = binom(point.lambda, point.r);
  p.n_files = static_cast<int>(k);
  p.m_access = Rational(point.t) * k / point.lambda;
  p.m_private = point.mode == PrivateMemoryMode::Unit ? Rational(1) : Rational(0);
  return p;
}

std::vector<SweepPoint> sweep_grid(int lambda, const std::vector<int>& rs, int t_lo, int t_hi,
                                   PrivateMemoryMode mode) {
  if (lambda < 1 || t_lo < 0 || t_hi > lambda || t_lo > t_hi) {
    throw ParameterError("sweep needs 0 <= t_lo <= t_hi <= lambda");
  }
  std::vector<SweepPoint> out;
  for (int r : rs) {
    if (r < 1 || r > lambda) throw ParameterError("sweep access degree " + std::to_string(r) + " out of range");
    for (int t = t_lo; t <= t_hi; ++t) out.push_back({lambda, r, t, mode});
  }
  return out;
}

namespace serial {
std::vector<BoundsReport> evaluate_sweep(const std::vector<SweepPoint>& points) {
  std::vector<BoundsReport> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(bounds_report(sweep_params(p)));
  return out;
}
}  // namespace serial

namespace parallel {
std::vector<BoundsReport> evaluate_sweep(const std::vector<SweepPoint>& points) {
  std::vector<BoundsReport> out(points.size());
  detail::ErrorSlot errors;
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    errors.run([&] { out[k] = bounds_report(sweep_params(points[k])); });
  }
  errors.rethrow();
  return out;
}
}  // namespace parallel

void write_sweep_csv(std::ostream& out, const std::vector<BoundsReport>& rows, bool decimal) {
  const auto fmt = [&](const Rational& v) { return decimal ? format_decimal(v) : format_rational(v); };
  out << "lambda,r,t,m_access,m_private,n_files,k_users,subpacketization,rate_achievable,man_lb,"
         "cmacc_ub,cutset_lb,alpha_lb_normalized\n";
  for (const auto& row : rows) {
    const auto& p = row.params;
    if (row.rate_achievable && row.man_lb > *row.rate_achievable) {
      throw SchemeInvariantError("man_lb exceeds the achievable rate at lambda=" + std::to_string(p.lambda) +
                                 " r=" + std::to_string(p.r) + " t=" + format_rational(p.t_access()));
    }
    out << p.lambda << ',' << p.r << ',' << fmt(p.t_access()) << ',' << fmt(p.m_access) << ','
        << fmt(p.m_private) << ',' << p.n_files << ',' << p.users() << ','
        << (row.subpacketization ? std::to_string(*row.subpacketization) : "") << ','
        << (row.rate_achievable ? fmt(*row.rate_achievable) : "") << ',' << fmt(row.man_lb) << ','
        << fmt(row.cmacc_ub) << ',' << fmt(row.cutset_lb) << ','
        << (row.alpha_lb_normalized ? fmt(*row.alpha_lb_normalized) : "") << '\n';
  }
}

}  // namespace cmap
