#include "drg/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace drg {

namespace {

using i128 = __int128;

struct Overflow {};

i128 mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
i128 add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
i128 sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}

bool perfect_square(i128 n, i128* root) {
  if (n < 0) return false;
  auto r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  *root = r;
  return r * r == n;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

/// Multiples of step in [lo, hi].
std::int64_t count_multiples(std::int64_t step, std::int64_t lo, std::int64_t hi) {
  if (hi < lo) return 0;
  auto fl = [step](std::int64_t v) { return v >= 0 ? v / step : -ceil_div(-v, step); };
  return fl(hi) - fl(lo - 1);
}

const std::vector<Filter>& pipeline_order() {
  static const std::vector<Filter> order{
      Filter::Basic,  Filter::Divisibility,  Filter::CliqueCoclique, Filter::MultiplicityIntegrality,
      Filter::Parity, Filter::RequireM2EqM3, Filter::RequireQpoly,   Filter::Krein,
      Filter::KnownResults,
  };
  return order;
}

std::vector<std::int64_t> divisors_up_to(std::initializer_list<std::int64_t> factors, std::int64_t limit) {
  std::map<BigInt, unsigned> merged;
  for (auto f : factors)
    for (const auto& [p, e] : factorize(BigInt(static_cast<long>(f)))) merged[p] += e;
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : merged) {
    const std::int64_t pv = p.get_si();
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t v = out[i];
      for (unsigned j = 0; j < e; ++j) {
        if (v > limit / pv) break;
        v *= pv;
        out.push_back(v);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Exact {
  std::optional<ShillaConstraintReport> shilla;
  std::optional<FeasibilityReport> feasibility;
  std::optional<Filter> rejected;
  std::string detail;
  std::optional<std::string> defect;
};

Exact evaluate_exact(const ShillaParams& p, const FilterSet& f, const ExclusionRules& rules) {
  Exact e;
  IntersectionArray arr;
  try {
    arr = shilla_array(p);
  } catch (const InvalidParams& ex) {
    e.rejected = Filter::Basic;
    e.detail = ex.what();
    return e;
  }
  FeasibilityReport rep = arithmetic_feasibility(arr);
  ShillaConstraintReport sh = shilla_constraints(p);
  if (sh.m2_eq_m3 != (sh.eq2 == 0))
    e.defect = format_array(arr) + ": multiplicities " + std::string(sh.m2_eq_m3 ? "equal" : "differ") +
               " but the m2 = m3 polynomial is " + sh.eq2.get_str();
  if (f.has(Filter::KnownResults)) rep = apply_known_results(arr, std::move(rep), rules);

  auto reject = [&](Filter which, std::string detail) {
    if (!e.rejected) {
      e.rejected = which;
      e.detail = std::move(detail);
    }
  };
  for (Filter which : pipeline_order()) {
    if (!f.has(which) || e.rejected) continue;
    switch (which) {
      case Filter::Basic:
        for (const auto& v : rep.basic)
          if (!v.pass) reject(which, v.name);
        break;
      case Filter::Divisibility:
        if (!rep.p_integrality.pass) reject(which, rep.p_integrality.detail);
        for (const auto& c : sh.divisibility)
          if (!c.pass) reject(which, c.detail);
        break;
      case Filter::CliqueCoclique:
        if (rep.clique && rep.clique->verdict == CliqueVerdict::Fail)
          reject(which, "threshold " + to_string(rep.clique->threshold) + " > c2-1 = " + to_string(rep.clique->lhs));
        if (!sh.c2_bound.pass) reject(which, sh.c2_bound.detail);
        break;
      case Filter::MultiplicityIntegrality:
        if (rep.spectrum_error) reject(which, *rep.spectrum_error);
        if (!rep.multiplicity_integrality.pass) reject(which, rep.multiplicity_integrality.detail);
        break;
      case Filter::Parity:
        if (!rep.parity.pass) reject(which, rep.parity.detail);
        break;
      case Filter::RequireM2EqM3:
        if (!sh.m2_eq_m3) reject(which, "m2 = " + sh.spectrum.m2.to_string() + ", m3 = " + sh.spectrum.m3.to_string());
        break;
      case Filter::RequireQpoly:
        if (!sh.qpoly) reject(which, "not Q-polynomial with respect to theta1");
        break;
      case Filter::Krein:
        if (!rep.krein.pass) reject(which, rep.krein.detail);
        break;
      case Filter::KnownResults:
        if (rep.known_result) reject(which, *rep.known_result);
        break;
    }
  }
  e.shilla = std::move(sh);
  e.feasibility = std::move(rep);
  return e;
}

/// Outcome of the integer-only screen for one tuple.
struct Screen {
  std::optional<Filter> rejected;  // set when certainly rejected
};

Screen screen(const ShillaParams& p, const FilterSet& f) {
  const i128 b = p.b, a3 = p.a3, c2 = p.c2, b2 = p.b2;
  const i128 k = mul(b, a3), a1 = a3 - b, b1 = mul(b - 1, a3 + 1);
  const i128 a2 = sub(sub(k, b2), c2);
  const i128 kb1 = mul(k, b1), k3num = mul(mul(b, a3 + 1), b2);
  const bool ki_integral = kb1 % c2 == 0 && k3num % c2 == 0;

  bool need_spectrum = f.has(Filter::MultiplicityIntegrality) || f.has(Filter::RequireQpoly);
  i128 s = 0, disc = 0, root = 0;
  bool square = false;
  if (need_spectrum) {
    s = sub(add(a1, a2), k);
    i128 pp = sub(mul(b - 1, b2), a2);
    disc = sub(mul(s, s), mul(4, pp));
    square = perfect_square(disc, &root);
  }

  if (f.has(Filter::MultiplicityIntegrality)) {
    i128 N = add(add(mul(c2, 1 + k), kb1), k3num);
    if (N % c2 != 0) return {Filter::MultiplicityIntegrality};
    i128 n = N / c2;
    i128 d1 = add(mul(b + a3, b2), mul(a3 + 1, c2));
    i128 num = mul(mul(n, b), b2);
    if (num % d1 != 0) return {Filter::MultiplicityIntegrality};
    i128 m1 = num / d1;
    // Traces of A^0 and A^1: m2 + m3 = R and m2 theta2 + m3 theta3 = S.
    i128 R = n - 1 - m1;
    i128 S = sub(-k, mul(m1, a3));
    i128 m2 = 0, m3 = 0;
    if (square) {
      i128 t3 = (s - root) / 2;
      i128 top = sub(S, mul(R, t3));
      if (top % root != 0) return {Filter::MultiplicityIntegrality};
      m2 = top / root;
      m3 = R - m2;
    } else {
      if (R % 2 != 0 || mul(2, S) != mul(R, s)) return {Filter::MultiplicityIntegrality};
      m2 = m3 = R / 2;
    }
    if (m1 <= 0 || m2 <= 0 || m3 <= 0) return {Filter::MultiplicityIntegrality};

    if (f.has(Filter::Parity) && ki_integral) {
      i128 k2 = kb1 / c2, k3 = k3num / c2;
      if (mul(k, a1) % 2 != 0 || mul(k2, a2) % 2 != 0 || mul(k3, a3) % 2 != 0) return {Filter::Parity};
    }
    if (f.has(Filter::RequireM2EqM3) && m2 != m3) return {Filter::RequireM2EqM3};
  } else if (f.has(Filter::Parity) && ki_integral) {
    i128 k2 = kb1 / c2, k3 = k3num / c2;
    if (mul(k, a1) % 2 != 0 || mul(k2, a2) % 2 != 0 || mul(k3, a3) % 2 != 0) return {Filter::Parity};
  }

  if (f.has(Filter::RequireQpoly)) {
    if (!square) return {Filter::RequireQpoly};
    i128 t3 = (s - root) / 2;
    if (mul(t3, b2 + c2) != -mul(b, add(mul(b, b2), c2))) return {Filter::RequireQpoly};
  }
  return {};
}

struct BlockOutput {
  std::vector<Survivor> survivors;
  std::map<Filter, std::uint64_t> pruned;
  std::uint64_t visited = 0;
  std::vector<std::string> defects;
};

void admit(const ShillaParams& p, const FilterSet& f, const ExclusionRules& rules, BlockOutput& out) {
  Exact e = evaluate_exact(p, f, rules);
  if (e.defect) out.defects.push_back(*e.defect);
  if (e.rejected) {
    ++out.pruned[*e.rejected];
    return;
  }
  out.survivors.push_back(Survivor{p, shilla_array(p), std::move(*e.shilla), std::move(*e.feasibility)});
}

/// Every tuple (c2, b2) for one (b, a3).
void scan_block(std::int64_t b, std::int64_t a3, const FilterSet& f, const ExclusionRules& rules, BlockOutput& out) {
  const std::int64_t k = b * a3, b1 = (b - 1) * (a3 + 1), c3 = (b - 1) * a3;
  const std::int64_t c2max = std::min(b1, c3);
  out.visited += static_cast<std::uint64_t>(c2max) * static_cast<std::uint64_t>(b1);
  const bool div = f.has(Filter::Divisibility);

  std::vector<std::int64_t> c2s;
  if (div) {
    c2s = divisors_up_to({b, b - 1, a3, a3 + 1}, c2max);
    out.pruned[Filter::Divisibility] += static_cast<std::uint64_t>(c2max - static_cast<std::int64_t>(c2s.size())) *
                                        static_cast<std::uint64_t>(b1);
  } else {
    c2s.resize(static_cast<std::size_t>(c2max));
    std::iota(c2s.begin(), c2s.end(), 1);
  }

  for (std::int64_t c2 : c2s) {
    std::int64_t step = 1, lo = 1, hi = b1;
    if (div) {
      for (std::int64_t m : {(b - 1) * a3, b * (a3 + 1), b + a3, (b - 1) * b})
        step = std::lcm(step, c2 / std::gcd(c2, m));
      lo = std::max<std::int64_t>(1, ceil_div((1 + a3) * c2, b + a3));
      hi = std::min(b1, k - c2);
    }
    const std::int64_t lattice = count_multiples(step, lo, hi);
    if (div) out.pruned[Filter::Divisibility] += static_cast<std::uint64_t>(b1 - lattice);
    if (lattice == 0) continue;

    if (f.has(Filter::CliqueCoclique)) {
      bool bound_ok = c2 * b * (b + 1) >= 2 * a3 - b * b + b + 2;
      auto cc = clique_coclique_condition(IntersectionArray{{k, b1, 1}, {1, c2, c3}});
      if (!bound_ok || cc.verdict == CliqueVerdict::Fail) {
        out.pruned[Filter::CliqueCoclique] += static_cast<std::uint64_t>(lattice);
        continue;
      }
    }

    for (std::int64_t b2 = ceil_div(lo, step) * step; b2 <= hi; b2 += step) {
      ShillaParams p{b, a3, c2, b2};
      std::optional<Filter> fast;
      try {
        fast = screen(p, f).rejected;
      } catch (const Overflow&) {
        fast.reset();  // settle it exactly
      }
      if (fast) {
        ++out.pruned[*fast];
        continue;
      }
      admit(p, f, rules, out);
    }
  }
}

struct Job {
  std::int64_t b;
  std::int64_t a3;
};

std::uint64_t block_size(const Job& j) {
  std::int64_t b1 = (j.b - 1) * (j.a3 + 1), c3 = (j.b - 1) * j.a3;
  return static_cast<std::uint64_t>(std::min(b1, c3)) * static_cast<std::uint64_t>(b1);
}

EnumerationResult run(const EnumerationQuery& q, bool pruned) {
  q.validate();
  const auto start = std::chrono::steady_clock::now();
  const ExclusionRules& rules = q.rules ? *q.rules : ExclusionRules::defaults();

  std::vector<Job> jobs;
  std::vector<ShillaParams> extra;  // Q-polynomial candidates above the default bound
  for (std::int64_t b = q.b_min; b <= q.b_max; ++b) {
    std::int64_t a3max;
    if (q.a3_max) {
      a3max = *q.a3_max;
    } else if (q.filters.has(Filter::RequireQpoly)) {
      // The Q-polynomial candidate set is finite on its own.
      for (const auto& p : qpoly_integral_candidates(b)) extra.push_back(p);
      continue;
    } else {
      BigInt bound = search_bound_a3(b, true);
      if (!bound.fits_slong_p()) throw std::invalid_argument("default a3 bound too large for b = " + std::to_string(b));
      a3max = bound.get_si();
      for (const auto& p : qpoly_integral_candidates(b))
        if (p.a3 > a3max) extra.push_back(p);
    }
    for (std::int64_t a3 = b; a3 <= a3max; ++a3) jobs.push_back({b, a3});
  }

  // Deterministic cap: only whole blocks that fit are processed.
  std::size_t njobs = jobs.size();
  bool capped = false;
  if (q.candidate_cap) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      acc += block_size(jobs[i]);
      if (acc > *q.candidate_cap) {
        njobs = i;
        capped = true;
        break;
      }
    }
  }

  std::vector<BlockOutput> outputs(njobs);
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  EnumerationProgress progress;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < njobs;) {
      const Job& j = jobs[i];
      if (pruned) {
        scan_block(j.b, j.a3, q.filters, rules, outputs[i]);
      } else {
        const std::int64_t b1 = (j.b - 1) * (j.a3 + 1), c3 = (j.b - 1) * j.a3;
        outputs[i].visited += block_size(j);
        for (std::int64_t c2 = 1; c2 <= std::min(b1, c3); ++c2)
          for (std::int64_t b2 = 1; b2 <= b1; ++b2) admit({j.b, j.a3, c2, b2}, q.filters, rules, outputs[i]);
      }
      if (q.progress) {
        std::lock_guard lock(progress_mutex);
        progress.visited += outputs[i].visited;
        progress.survivors += outputs[i].survivors.size();
        progress.b = j.b;
        progress.a3 = j.a3;
        q.progress(progress);
      }
    }
  };
  unsigned threads = std::max(1u, q.parallelism);
  if (threads == 1 || njobs < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  BlockOutput& tail = outputs.emplace_back();
  if (!capped)
    for (const auto& p : extra) {
      tail.visited += 1;
      admit(p, q.filters, rules, tail);
    }

  EnumerationResult r;
  for (auto& bo : outputs) {
    r.visited += bo.visited;
    for (auto& [fl, n] : bo.pruned) r.pruned[to_string(fl)] += n;
    for (auto& s : bo.survivors) r.survivors.push_back(std::move(s));
    for (auto& d : bo.defects) r.defects.push_back(std::move(d));
  }
  std::stable_sort(r.survivors.begin(), r.survivors.end(),
                   [](const Survivor& x, const Survivor& y) { return x.params < y.params; });
  r.survivors.erase(std::unique(r.survivors.begin(), r.survivors.end(),
                                [](const Survivor& x, const Survivor& y) { return x.params == y.params; }),
                    r.survivors.end());
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (capped) {
    EnumerationProgress pr;
    pr.visited = r.visited;
    pr.survivors = r.survivors.size();
    if (njobs > 0) {
      pr.b = jobs[njobs - 1].b;
      pr.a3 = jobs[njobs - 1].a3;
    }
    throw CandidateCapExceeded(std::move(r), pr);
  }
  return r;
}

}  // namespace

std::string to_string(Filter f) {
  switch (f) {
    case Filter::Basic: return "basic";
    case Filter::Divisibility: return "divisibility";
    case Filter::MultiplicityIntegrality: return "multiplicity-integrality";
    case Filter::Parity: return "parity";
    case Filter::Krein: return "krein";
    case Filter::CliqueCoclique: return "clique-coclique";
    case Filter::KnownResults: return "known-results";
    case Filter::RequireM2EqM3: return "require-m2-eq-m3";
    case Filter::RequireQpoly: return "require-qpoly";
  }
  return "?";
}

const std::vector<Filter>& all_filters() {
  static const std::vector<Filter> all{
      Filter::Basic,          Filter::Divisibility, Filter::MultiplicityIntegrality,
      Filter::Parity,         Filter::Krein,        Filter::CliqueCoclique,
      Filter::KnownResults,   Filter::RequireM2EqM3, Filter::RequireQpoly,
  };
  return all;
}

std::optional<Filter> parse_filter(const std::string& name) {
  for (Filter f : all_filters())
    if (to_string(f) == name) return f;
  return std::nullopt;
}

FilterSet FilterSet::defaults() {
  FilterSet s;
  for (Filter f : all_filters())
    if (f != Filter::RequireM2EqM3 && f != Filter::RequireQpoly) s = s.with(f);
  return s;
}

FilterSet FilterSet::with(Filter f) const {
  FilterSet s = *this;
  s.bits_.set(static_cast<std::size_t>(f));
  return s;
}

FilterSet FilterSet::without(Filter f) const {
  FilterSet s = *this;
  s.bits_.reset(static_cast<std::size_t>(f));
  return s;
}

std::string FilterSet::to_string() const {
  std::string out;
  for (Filter f : all_filters())
    if (has(f)) out += (out.empty() ? "" : ",") + drg::to_string(f);
  return out;
}

void EnumerationQuery::validate() const {
  if (b_min < 2 || b_max > 10000 || b_min > b_max)
    throw std::invalid_argument("b range must lie within [2, 10000], got " + std::to_string(b_min) + ".." +
                                std::to_string(b_max));
  if (a3_max && *a3_max < b_min)
    throw std::invalid_argument("a3-max " + std::to_string(*a3_max) + " is below b = " + std::to_string(b_min));
}

CandidateCapExceeded::CandidateCapExceeded(EnumerationResult partial, EnumerationProgress progress)
    : std::runtime_error("candidate cap exceeded after " + std::to_string(progress.visited) + " candidates (b = " +
                         std::to_string(progress.b) + ", a3 = " + std::to_string(progress.a3) + ")"),
      partial_(std::move(partial)),
      progress_(progress) {}

EnumerationResult enumerate_shilla(const EnumerationQuery& q) { return run(q, true); }

EnumerationResult enumerate_shilla_unpruned(const EnumerationQuery& q) { return run(q, false); }

std::vector<std::string> rejecting_filters(const ShillaParams& p, const FilterSet& filters, const ExclusionRules& rules) {
  std::vector<std::string> out;
  for (Filter f : pipeline_order()) {
    if (!filters.has(f)) continue;
    Exact e = evaluate_exact(p, FilterSet::none().with(f), rules);
    if (e.rejected) out.push_back(to_string(f) + ": " + e.detail);
    if (f == Filter::Basic && e.rejected) break;  // nothing else is defined
  }
  return out;
}

ListDiff diff_against(const EnumerationQuery& q, const EnumerationResult& result,
                      const std::vector<IntersectionArray>& expected) {
  const ExclusionRules& rules = q.rules ? *q.rules : ExclusionRules::defaults();
  std::set<IntersectionArray> want(expected.begin(), expected.end());
  std::set<IntersectionArray> got;
  ListDiff d;
  for (const auto& s : result.survivors) {
    got.insert(s.array);
    if (!want.count(s.array)) d.unexpected.push_back(s.array);
  }
  for (const auto& arr : want) {
    if (got.count(arr)) continue;
    std::string reason;
    auto p = arr.diameter() == 3 ? shilla_params(arr) : std::nullopt;
    if (!p) {
      reason = "not a Shilla array";
    } else if (p->b < q.b_min || p->b > q.b_max) {
      reason = "b = " + std::to_string(p->b) + " outside the query range";
    } else if (q.a3_max && p->a3 > *q.a3_max) {
      reason = "a3 = " + std::to_string(p->a3) + " above a3-max";
    } else {
      auto why = rejecting_filters(*p, q.filters, rules);
      if (why.empty()) {
        reason = "passes every filter but was not visited";
      } else {
        for (const auto& w : why) reason += (reason.empty() ? "" : "; ") + w;
      }
    }
    d.missing.emplace_back(arr, reason);
  }
  return d;
}

ListDiff verify_list(const EnumerationQuery& q, const std::vector<IntersectionArray>& expected) {
  return diff_against(q, enumerate_shilla(q), expected);
}

std::string to_string(const ListDiff& d) {
  if (d.empty()) return "no differences\n";
  std::ostringstream out;
  for (const auto& a : d.unexpected) out << "+ " << format_array(a) << "  (found, not expected)\n";
  for (const auto& [a, why] : d.missing) out << "- " << format_array(a) << "  (expected, absent: " << why << ")\n";
  return out.str();
}

}  // namespace drg
