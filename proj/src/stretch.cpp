#include "kostka/stretch.hpp"

#include "kostka/cache.hpp"
#include "kostka/descent.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

namespace kostka {

PairClassification classify_pair(const RootSystem& rs, const WeightVec& lambda, const WeightVec& mu) {
  rs.check_length(lambda);
  rs.check_length(mu);
  if (!lambda.is_dominant() || !mu.is_dominant()) {
    throw std::invalid_argument("classify_pair expects dominant weights");
  }
  PairClassification cls;
  for (int i = 0; i < rs.rank(); ++i)
    if (lambda[i] == 0) cls.support_phi_prime.push_back(i);
  auto rc = rs.to_root_coords(lambda - mu);
  BigInt q = 1;
  for (const auto& c : rc.coords) {
    if (c < 0) {
      cls.is_zero_function = true;
      return cls;
    }
    mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), c.get_den_mpz_t());
  }
  cls.gap = std::move(rc);
  cls.lattice_index = q.get_si();
  for (int i = 0; i < rs.rank(); ++i) {
    if ((*cls.gap)[i] == 0) continue;
    cls.support_s1.push_back(i);
    if (lambda[i] == 0) cls.support_s2.push_back(i);
  }
  cls.is_primitive = static_cast<int>(cls.support_s1.size()) == rs.rank();
  return cls;
}

int predicted_degree_primitive(const RootSystem& rs, const PairClassification& cls) {
  if (cls.is_zero_function || !cls.is_primitive) {
    throw std::domain_error("primitive degree formula needs a primitive pair");
  }
  auto phi_prime = rs.subsystem_stats(cls.support_phi_prime);
  return static_cast<int>(rs.positive_roots().size()) - static_cast<int>(phi_prime.positive_roots) - rs.rank();
}

int predicted_degree(const RootSystem& rs, const PairClassification& cls) {
  if (cls.is_zero_function) throw std::domain_error("K is identically zero; degree undefined");
  auto s1 = rs.subsystem_stats(cls.support_s1);
  auto s2 = rs.subsystem_stats(cls.support_s2);
  int deg = static_cast<int>(s1.positive_roots) - static_cast<int>(s1.rank) - static_cast<int>(s2.positive_roots);
  if (cls.is_primitive && deg != predicted_degree_primitive(rs, cls)) {
    throw std::logic_error("general and primitive degree formulas disagree");
  }
  return deg;
}

std::vector<BigInt> sample_sequence(const RootSystem& rs, const WeightVec& lambda, const WeightVec& mu,
                                    std::size_t max_n, MultiplicityCache* cache, unsigned jobs,
                                    const EngineLimits& limits) {
  const std::size_t count = max_n + 1;
  rs.check_length(lambda);
  rs.check_length(mu);
  std::vector<BigInt> out(count);
  out[0] = 1;
  // With a negative root coordinate no stretch lies below lambda. Otherwise
  // the engine returns 0 itself for N off the lattice index.
  for (const auto& c : rs.to_root_coords(lambda - mu).coords) {
    if (c < 0) {
      for (std::size_t n = 1; n < count; ++n) out[n] = 0;
      return out;
    }
  }
  // Largest stretches first so the long jobs start early.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i + 1 >= count) return;
      std::size_t n = count - 1 - i;
      try {
        auto s = static_cast<std::int64_t>(n);
        out[n] = weight_multiplicity(rs, s * lambda, s * mu, cache, limits);
      } catch (...) {
        std::lock_guard g(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::string to_string(PeriodStatus s) {
  switch (s) {
    case PeriodStatus::TheoremBacked: return "theorem-backed";
    case PeriodStatus::Conjectural: return "conjectural";
    case PeriodStatus::Unavailable: return "unavailable";
  }
  return "unavailable";
}

std::size_t default_sample_count(int predicted_degree, std::int64_t candidate, int surplus) {
  return std::max<std::size_t>(samples_needed(predicted_degree, static_cast<int>(candidate), surplus), 8);
}

StretchReport build_stretch_report(const RootSystem& rs, const WeightVec& lambda, const WeightVec& mu,
                                   const StretchOptions& opts, MultiplicityCache* cache) {
  const auto start = std::chrono::steady_clock::now();
  const CacheStats before = cache ? cache->stats() : CacheStats{};

  StretchReport rep;
  rep.query = {rs.type(), lambda, mu};
  rep.options = opts.fit;
  rep.classification = classify_pair(rs, lambda, mu);

  auto finish = [&] {
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cache) {
      auto after = cache->stats();
      rep.cache_hits = after.hits - before.hits;
      rep.cache_misses = after.misses - before.misses;
    }
  };

  if (rep.classification.is_zero_function) {
    rep.candidate_note = "mu is not below lambda; K is identically zero for N >= 1";
    finish();
    return rep;
  }

  rep.predicted_degree = predicted_degree(rs, rep.classification);
  try {
    rep.period_candidate = period_candidate(rs, lambda, mu);
    rep.period_status = mu.is_zero() ? PeriodStatus::TheoremBacked : PeriodStatus::Conjectural;
  } catch (const std::invalid_argument& e) {
    rep.candidate_note = e.what();
  }

  rep.k = opts.k.value_or(
      default_sample_count(*rep.predicted_degree, rep.period_candidate.value_or(1), opts.fit.surplus));
  rep.samples = sample_sequence(rs, lambda, mu, rep.k, cache, opts.jobs, opts.limits);

  try {
    auto scan = fit_minimal_period(rep.samples, opts.fit);
    rep.fitted = std::move(scan.fit);
    rep.periods_tested = std::move(scan.periods_tested);
  } catch (const FitFailure& e) {
    rep.fit_error = e.what();
    rep.periods_tested = e.trail();
  } catch (const InsufficientSamples& e) {
    rep.fit_error = e.what();
  }

  rep.degree_match = rep.fitted && rep.fitted->degree() == *rep.predicted_degree;
  if (rep.period_candidate) {
    try {
      std::string why;
      rep.period_candidate_consistent =
          fit_fixed_period(rep.samples, static_cast<int>(*rep.period_candidate), opts.fit, &why).has_value();
      if (!rep.period_candidate_consistent) rep.candidate_note = "candidate period fails: " + why;
    } catch (const InsufficientSamples& e) {
      rep.period_candidate_consistent = false;
      rep.candidate_note = e.what();
    }
  }
  finish();
  return rep;
}

}  // namespace kostka
