#include "kostka/report.hpp"

#include <iomanip>
#include <sstream>

#ifndef KOSTKA_VERSION
#define KOSTKA_VERSION "0.0.0"
#endif

namespace kostka {

using nlohmann::json;

namespace {

json index_set(const std::vector<int>& s) {
  json a = json::array();
  for (int i : s) a.push_back(i + 1);
  return a;
}

std::vector<int> index_set_from(const json& j) {
  std::vector<int> out;
  for (const auto& v : j) {
    int i = v.get<int>();
    if (i < 1) throw std::invalid_argument("index sets are one-based");
    out.push_back(i - 1);
  }
  return out;
}

PeriodStatus status_from(const std::string& s) {
  if (s == "theorem-backed") return PeriodStatus::TheoremBacked;
  if (s == "conjectural") return PeriodStatus::Conjectural;
  if (s == "unavailable") return PeriodStatus::Unavailable;
  throw std::invalid_argument("unknown period status '" + s + "'");
}

bool same_classification(const PairClassification& a, const PairClassification& b) {
  return a.gap == b.gap && a.support_s1 == b.support_s1 && a.support_s2 == b.support_s2 &&
         a.support_phi_prime == b.support_phi_prime && a.is_primitive == b.is_primitive &&
         a.is_zero_function == b.is_zero_function && a.lattice_index == b.lattice_index;
}

}  // namespace

std::string library_version() { return KOSTKA_VERSION; }

json quasi_polynomial_to_json(const QuasiPolynomial& qp) {
  json classes = json::array();
  for (const auto& c : qp.classes) {
    json coeffs = json::array();
    for (const auto& q : c.coeffs()) coeffs.push_back(format_rational(q));
    classes.push_back(std::move(coeffs));
  }
  return {{"period", qp.period}, {"degree", qp.degree()}, {"classes", std::move(classes)}};
}

QuasiPolynomial quasi_polynomial_from_json(const json& j) {
  QuasiPolynomial qp;
  qp.period = j.at("period").get<int>();
  for (const auto& c : j.at("classes")) {
    std::vector<Rational> coeffs;
    for (const auto& s : c) coeffs.push_back(parse_rational(s.get<std::string>()));
    qp.classes.emplace_back(std::move(coeffs));
  }
  if (qp.period < 1 || static_cast<int>(qp.classes.size()) != qp.period) {
    throw std::invalid_argument("quasi-polynomial needs one class per residue");
  }
  return qp;
}

json to_json(const ReportDocument& doc, bool include_timing) {
  const StretchReport& r = doc.report;
  const auto& cls = r.classification;

  json classification = {{"primitive", cls.is_primitive},
                         {"zero_function", cls.is_zero_function},
                         {"lattice_index", cls.lattice_index},
                         {"support_s1", index_set(cls.support_s1)},
                         {"support_s2", index_set(cls.support_s2)},
                         {"support_phi_prime", index_set(cls.support_phi_prime)}};
  if (cls.gap) {
    json gap = json::array();
    for (const auto& q : cls.gap->coords) gap.push_back(format_rational(q));
    classification["gap"] = std::move(gap);
  } else {
    classification["gap"] = nullptr;
  }

  json samples = json::array();
  for (const auto& s : r.samples) samples.push_back(s.get_str());
  json tested = json::array();
  for (const auto& a : r.periods_tested) tested.push_back({{"period", a.period}, {"ok", a.ok}, {"reason", a.reason}});

  json results = {
      {"classification", std::move(classification)},
      {"samples", std::move(samples)},
      {"fitted", r.fitted ? quasi_polynomial_to_json(*r.fitted) : json(nullptr)},
      {"fitted_degree", r.fitted ? json(r.fitted_degree()) : json(nullptr)},
      {"fitted_period", r.fitted ? json(r.fitted_period()) : json(nullptr)},
      {"predicted_degree", r.predicted_degree ? json(*r.predicted_degree) : json("zero function")},
      {"period_candidate", r.period_candidate ? json(*r.period_candidate) : json(nullptr)},
      {"period_status", to_string(r.period_status)},
      {"periods_tested", std::move(tested)},
      {"degree_match", r.degree_match},
      {"period_candidate_consistent", r.period_candidate_consistent},
      {"fit_error", r.fit_error},
      {"candidate_note", r.candidate_note},
  };

  json provenance = {
      {"library_version", doc.library_version},
      {"k", r.k},
      {"fit_options",
       {{"surplus", r.options.surplus},
        {"max_period", r.options.max_period},
        {"require_integer_outputs", r.options.require_integer_outputs}}},
      {"cache", {{"hits", r.cache_hits}, {"misses", r.cache_misses}}},
  };
  if (include_timing) provenance["wall_time_seconds"] = r.wall_seconds;

  return {{"schema_version", doc.schema_version},
          {"command", doc.command},
          {"query",
           {{"type", r.query.type.name()},
            {"rank", r.query.type.rank},
            {"lambda", r.query.lambda.coords},
            {"mu", r.query.mu.coords}}},
          {"results", std::move(results)},
          {"provenance", std::move(provenance)}};
}

ReportDocument report_from_json(const json& j) {
  try {
    ReportDocument doc;
    doc.schema_version = j.at("schema_version").get<int>();
    if (doc.schema_version != kReportSchemaVersion) {
      throw std::invalid_argument("unsupported report schema " + std::to_string(doc.schema_version));
    }
    doc.command = j.at("command").get<std::string>();
    StretchReport& r = doc.report;

    const auto& q = j.at("query");
    r.query.type = SimpleType::parse(q.at("type").get<std::string>());
    if (q.at("rank").get<int>() != r.query.type.rank) throw std::invalid_argument("rank disagrees with type");
    r.query.lambda = WeightVec(q.at("lambda").get<std::vector<std::int64_t>>());
    r.query.mu = WeightVec(q.at("mu").get<std::vector<std::int64_t>>());

    const auto& res = j.at("results");
    const auto& c = res.at("classification");
    auto& cls = r.classification;
    cls.is_primitive = c.at("primitive").get<bool>();
    cls.is_zero_function = c.at("zero_function").get<bool>();
    cls.lattice_index = c.at("lattice_index").get<std::int64_t>();
    cls.support_s1 = index_set_from(c.at("support_s1"));
    cls.support_s2 = index_set_from(c.at("support_s2"));
    cls.support_phi_prime = index_set_from(c.at("support_phi_prime"));
    if (!c.at("gap").is_null()) {
      RootCoords gap;
      for (const auto& s : c.at("gap")) gap.coords.push_back(parse_rational(s.get<std::string>()));
      cls.gap = std::move(gap);
    }
    for (const auto& s : res.at("samples")) r.samples.push_back(parse_bigint(s.get<std::string>()));
    if (!res.at("fitted").is_null()) r.fitted = quasi_polynomial_from_json(res.at("fitted"));
    if (res.at("predicted_degree").is_number_integer()) r.predicted_degree = res.at("predicted_degree").get<int>();
    if (!res.at("period_candidate").is_null()) r.period_candidate = res.at("period_candidate").get<std::int64_t>();
    r.period_status = status_from(res.at("period_status").get<std::string>());
    for (const auto& a : res.at("periods_tested")) {
      r.periods_tested.push_back(
          {a.at("period").get<int>(), a.at("ok").get<bool>(), a.at("reason").get<std::string>()});
    }
    r.degree_match = res.at("degree_match").get<bool>();
    r.period_candidate_consistent = res.at("period_candidate_consistent").get<bool>();
    r.fit_error = res.at("fit_error").get<std::string>();
    r.candidate_note = res.at("candidate_note").get<std::string>();

    const auto& p = j.at("provenance");
    doc.library_version = p.at("library_version").get<std::string>();
    r.k = p.at("k").get<std::size_t>();
    r.options.surplus = p.at("fit_options").at("surplus").get<int>();
    r.options.max_period = p.at("fit_options").at("max_period").get<int>();
    r.options.require_integer_outputs = p.at("fit_options").at("require_integer_outputs").get<bool>();
    r.cache_hits = p.at("cache").at("hits").get<std::size_t>();
    r.cache_misses = p.at("cache").at("misses").get<std::size_t>();
    if (p.contains("wall_time_seconds")) r.wall_seconds = p.at("wall_time_seconds").get<double>();
    return doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

bool same_document(const ReportDocument& a, const ReportDocument& b) {
  const auto &x = a.report, &y = b.report;
  auto same_trail = [](const std::vector<FitAttempt>& u, const std::vector<FitAttempt>& v) {
    if (u.size() != v.size()) return false;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i].period != v[i].period || u[i].ok != v[i].ok || u[i].reason != v[i].reason) return false;
    }
    return true;
  };
  return a.schema_version == b.schema_version && a.command == b.command &&
         a.library_version == b.library_version && x.query.type == y.query.type &&
         x.query.lambda == y.query.lambda && x.query.mu == y.query.mu &&
         same_classification(x.classification, y.classification) && x.k == y.k &&
         x.options.surplus == y.options.surplus && x.options.max_period == y.options.max_period &&
         x.options.require_integer_outputs == y.options.require_integer_outputs && x.samples == y.samples &&
         x.fitted == y.fitted && same_trail(x.periods_tested, y.periods_tested) && x.fit_error == y.fit_error &&
         x.predicted_degree == y.predicted_degree && x.period_candidate == y.period_candidate &&
         x.period_status == y.period_status && x.candidate_note == y.candidate_note &&
         x.degree_match == y.degree_match && x.period_candidate_consistent == y.period_candidate_consistent &&
         x.wall_seconds == y.wall_seconds && x.cache_hits == y.cache_hits && x.cache_misses == y.cache_misses;
}

std::string render_table(const StretchReport& r) {
  std::ostringstream os;
  const auto& cls = r.classification;
  auto set_str = [](const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
    return out + "}";
  };
  os << "type            " << r.query.type.name() << "\n";
  os << "lambda          " << r.query.lambda.str() << "\n";
  os << "mu              " << r.query.mu.str() << "\n";
  if (cls.is_zero_function) {
    os << "degree          zero function (mu is not below lambda; K = 0 for N >= 1)\n";
    return os.str();
  }
  os << "lambda - mu     ";
  for (std::size_t i = 0; i < cls.gap->size(); ++i) {
    os << (i ? " + " : "") << format_rational((*cls.gap)[i]) << "*a" << i + 1;
  }
  os << "\n";
  os << "primitive       " << (cls.is_primitive ? "yes" : "no") << "   S1=" << set_str(cls.support_s1)
     << " S2=" << set_str(cls.support_s2) << " Phi'=" << set_str(cls.support_phi_prime) << "\n";
  os << "samples (k=" << r.k << ")  ";
  for (std::size_t i = 0; i < r.samples.size(); ++i) os << (i ? " " : "") << r.samples[i].get_str();
  os << "\n";
  os << "predicted degree " << *r.predicted_degree << "\n";
  if (r.period_candidate) {
    os << "period candidate " << *r.period_candidate << " (" << to_string(r.period_status) << ")\n";
  } else {
    os << "period candidate unavailable: " << r.candidate_note << "\n";
  }
  if (!r.fitted) {
    os << "fit             FAILED: " << r.fit_error << "\n";
  } else {
    os << "fitted period   " << r.fitted->period << "\n";
    os << "fitted degree   " << r.fitted->degree() << "\n";
    for (int c = 0; c < r.fitted->period; ++c) {
      os << "  N = " << c << " mod " << r.fitted->period << ":  " << r.fitted->classes[c].str() << "\n";
    }
  }
  os << "degree match    " << (r.degree_match ? "yes" : "no") << "\n";
  os << "candidate fits  " << (r.period_candidate_consistent ? "yes" : "no");
  if (!r.period_candidate_consistent && !r.candidate_note.empty()) os << " (" << r.candidate_note << ")";
  os << "\n";
  os << "periods tested  ";
  for (const auto& a : r.periods_tested) os << a.period << (a.ok ? "+ " : "- ");
  os << "\n";
  os << "cache           " << r.cache_hits << " hits, " << r.cache_misses << " misses\n";
  os << "wall time       " << std::fixed << std::setprecision(3) << r.wall_seconds << " s\n";
  return os.str();
}

}  // namespace kostka
