#include "kostka/quasipoly.hpp"

#include <algorithm>
#include <set>

namespace kostka {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  acc.canonicalize();
  return acc;
}

std::string RationalPolynomial::str() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += format_rational(coeffs_[i]);
    if (i == 1) s += "*N";
    if (i > 1) s += "*N^" + std::to_string(i);
  }
  return s;
}

int QuasiPolynomial::degree() const {
  int d = -1;
  for (const auto& c : classes) d = std::max(d, c.degree());
  return d;
}

Rational QuasiPolynomial::evaluate(std::int64_t n) const {
  if (period < 1 || static_cast<int>(classes.size()) != period) {
    throw std::logic_error("malformed quasi-polynomial");
  }
  auto r = static_cast<std::size_t>(((n % period) + period) % period);
  return classes[r](n);
}

Rational evaluate(const QuasiPolynomial& qp, std::int64_t n) { return qp.evaluate(n); }

RationalPolynomial interpolate(std::span<const std::pair<std::int64_t, BigInt>> points) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("interpolate: no points");
  std::set<std::int64_t> xs;
  for (const auto& p : points) {
    if (!xs.insert(p.first).second) {
      throw std::invalid_argument("interpolate: duplicate abscissa " + std::to_string(p.first));
    }
  }
  // In-place divided differences: dd[i] = f[x_0..x_i].
  std::vector<Rational> dd(n);
  for (std::size_t i = 0; i < n; ++i) dd[i] = Rational(points[i].second);
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / Rational(static_cast<long>(points[i].first - points[i - level].first));
      dd[i].canonicalize();
    }
  }
  // Horner expansion of the Newton form into monomials.
  std::vector<Rational> coeffs(n, Rational(0));
  coeffs[0] = dd[n - 1];
  std::size_t len = 1;
  for (std::size_t k = n - 1; k-- > 0;) {
    // coeffs <- coeffs * (N - x_k) + dd[k]
    const Rational xk(static_cast<long>(points[k].first));
    coeffs[len] = coeffs[len - 1];
    for (std::size_t j = len - 1; j > 0; --j) coeffs[j] = coeffs[j - 1] - xk * coeffs[j];
    coeffs[0] = dd[k] - xk * coeffs[0];
    ++len;
  }
  return RationalPolynomial(std::move(coeffs));
}

std::optional<QuasiPolynomial> fit_fixed_period(std::span<const BigInt> samples, int period,
                                                const FitOptions& opts, std::string* reason) {
  if (period < 1) throw std::invalid_argument("period must be positive");
  if (opts.surplus < 0) throw std::invalid_argument("surplus must be nonnegative");
  const std::size_t k = samples.size();
  const std::size_t need = 2 + static_cast<std::size_t>(opts.surplus);
  if (k / static_cast<std::size_t>(period) < need) {
    throw InsufficientSamples("period " + std::to_string(period) + " needs at least " +
                              std::to_string(need) + " samples per residue class, have " +
                              std::to_string(k / period) + "; increase k");
  }
  auto fail = [&](std::string why) -> std::optional<QuasiPolynomial> {
    if (reason) *reason = std::move(why);
    return std::nullopt;
  };

  QuasiPolynomial qp;
  qp.period = period;
  for (int r = 0; r < period; ++r) {
    std::vector<std::pair<std::int64_t, BigInt>> pts;
    for (std::size_t n = static_cast<std::size_t>(r); n < k; n += period) {
      pts.emplace_back(static_cast<std::int64_t>(n), samples[n]);
    }
    const std::size_t used = pts.size() - static_cast<std::size_t>(opts.surplus);
    auto poly = interpolate(std::span(pts).first(used));
    if (poly.degree() > static_cast<int>(used) - 2) {
      return fail("class " + std::to_string(r) + ": " + std::to_string(used) +
                  " points need degree " + std::to_string(poly.degree()));
    }
    for (std::size_t j = used; j < pts.size(); ++j) {
      if (poly(pts[j].first) != Rational(pts[j].second)) {
        return fail("class " + std::to_string(r) + ": held-out N=" + std::to_string(pts[j].first) +
                    " not reproduced");
      }
    }
    if (opts.require_integer_outputs) {
      for (const auto& p : pts) {
        if (poly(p.first).get_den() != 1) {
          return fail("class " + std::to_string(r) + ": non-integer value at N=" + std::to_string(p.first));
        }
      }
    }
    qp.classes.push_back(std::move(poly));
  }
  if (reason) reason->clear();
  return qp;
}

PeriodScan fit_minimal_period(std::span<const BigInt> samples, const FitOptions& opts) {
  PeriodScan scan;
  const std::size_t need = 2 + static_cast<std::size_t>(std::max(opts.surplus, 0));
  if (samples.size() < need) {
    throw InsufficientSamples("need at least " + std::to_string(need) + " samples, have " +
                              std::to_string(samples.size()) + "; increase k");
  }
  for (int d = 1; d <= opts.max_period; ++d) {
    if (samples.size() / static_cast<std::size_t>(d) < need) {
      scan.periods_tested.push_back({d, false, "too few samples per class"});
      break;
    }
    std::string why;
    auto fit = fit_fixed_period(samples, d, opts, &why);
    scan.periods_tested.push_back({d, fit.has_value(), fit ? "validated" : why});
    if (fit) {
      scan.fit = std::move(*fit);
      return scan;
    }
  }
  throw FitFailure("no period up to " + std::to_string(opts.max_period) + " validates on " +
                       std::to_string(samples.size()) + " samples; increase k and try again",
                   std::move(scan.periods_tested));
}

std::size_t samples_needed(int degree, int period, int surplus) {
  return static_cast<std::size_t>(period) * static_cast<std::size_t>(std::max(degree, 0) + 2 + surplus);
}

}  // namespace kostka
