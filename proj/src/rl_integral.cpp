#include "nonadd/rl_integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nonadd/error.hpp"

namespace nonadd {

const char* to_string(IntegralStatus s) {
  switch (s) {
    case IntegralStatus::Exact:
      return "Exact";
    case IntegralStatus::Converged:
      return "Converged";
    case IntegralStatus::Diverged:
      return "Diverged";
    case IntegralStatus::NotIntegrable:
      return "NotIntegrable";
  }
  return "NotIntegrable";
}

namespace {

// f(n) * nu({n}) restricted to E, as a closed-form function on nat.
NatFunction singleton_terms(const GroundFunction& f, const SetFunction& nu, const EpSet& e) {
  return nat_product(nat_restrict(f.nat_repr(), e), singleton_profile(nu));
}

SumRange block_contribution(const GroundFunction& f, const SetFunction& nu, const MeasurableSet& b) {
  const double v = nu(b);
  // Null blocks contribute nothing whatever the tag.
  if (v == 0.0) return {};
  const Extrema ex = extrema_of(f, b);
  return {ex.inf * v, ex.sup * v};
}

void check_same_space(const GroundFunction& f, const SetFunction& nu) {
  if (!(f.space() == nu.space())) {
    throw SpaceMismatch("function on " + f.space().to_string() + " integrated against set function on " +
                        nu.space().to_string());
  }
}

std::vector<TraceEntry> finite_chain_trace(const GroundFunction& f, const SetFunction& nu) {
  std::vector<TraceEntry> trace;
  RefinementStream stream(nu.space(), RefineStrategy::SingletonFirst, static_cast<std::size_t>(nu.space().size()));
  while (auto p = stream.next()) {
    const SumRange r = tag_sum_range(f, nu, *p);
    trace.push_back({p->block_count(), r.lo, r.hi});
  }
  return trace;
}

// Partial sums of the singleton series at cut-offs 1, 2, 4, ..., 1024.
std::vector<TraceEntry> series_trace(const NatFunction& terms) {
  std::vector<TraceEntry> trace;
  double acc = 0.0;
  std::uint64_t next = 1;
  for (std::uint64_t n = 0; n < 1024; ++n) {
    acc += terms.at(n);
    if (n + 1 == next) {
      trace.push_back({static_cast<std::size_t>(n + 1), acc, acc});
      next *= 2;
    }
  }
  return trace;
}

}  // namespace

SumRange tag_sum_range(const GroundFunction& f, const SetFunction& nu, const Partition& p) {
  check_same_space(f, nu);
  SumRange total;
  for (const auto& b : p.blocks()) {
    const SumRange c = block_contribution(f, nu, b);
    total.lo += c.lo;
    total.hi += c.hi;
  }
  if (p.singleton_tail() && !is_empty(p.tail_set())) {
    const double t = rl_value(f, nu, p.tail_set());
    total.lo += t;
    total.hi += t;
  }
  return total;
}

double tagged_sum(const GroundFunction& f, const SetFunction& nu, const TaggedPartition& tp) {
  check_same_space(f, nu);
  const Partition& p = tp.partition();
  double s = 0.0;
  for (std::size_t i = 0; i < p.block_count(); ++i) {
    const double v = nu(p.blocks()[i]);
    if (v != 0.0) s += f.at(tp.tags()[i]) * v;
  }
  if (p.singleton_tail() && !is_empty(p.tail_set())) s += rl_value(f, nu, p.tail_set());
  return s;
}

IntegralReport rl_integrate(const GroundFunction& f, const SetFunction& nu, const MeasurableSet& e) {
  check_same_space(f, nu);
  check_in_algebra(nu.space(), e);
  IntegralReport r;
  r.status = IntegralStatus::Exact;
  if (nu.space().is_finite()) {
    double s = 0.0;
    for (int i : mask_elements(std::get<Mask>(e))) s += f.at(i) * nu(Mask{1} << i);
    r.value = s;
    r.trace = finite_chain_trace(fn_restrict(f, e), nu);
    r.note = "singleton partition";
    return r;
  }
  const NatFunction terms = singleton_terms(f, nu, std::get<EpSet>(e));
  const SeriesSum series = nat_series(terms, EpSet::all());
  r.trace = series_trace(terms);
  if (!series.converges) {
    r.status = IntegralStatus::NotIntegrable;
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.partial_sums = series.partial_sums;
    r.note = "singleton series is not absolutely convergent";
    return r;
  }
  r.value = series.value;
  r.note = "closed-form singleton series";
  return r;
}

IntegralReport rl_integrate(const GroundFunction& f, const SetFunction& nu) {
  return rl_integrate(f, nu, full_set(nu.space()));
}

double rl_value(const GroundFunction& f, const SetFunction& nu, const MeasurableSet& e) {
  check_same_space(f, nu);
  check_in_algebra(nu.space(), e);
  if (nu.space().is_finite()) {
    double s = 0.0;
    for (int i : mask_elements(std::get<Mask>(e))) s += f.at(i) * nu(Mask{1} << i);
    return s;
  }
  const SeriesSum series = nat_series(singleton_terms(f, nu, std::get<EpSet>(e)), EpSet::all());
  if (!series.converges) {
    std::ostringstream os;
    os << "singleton series over " << set_to_string(e) << " diverges; partial sums";
    for (const auto& [n, v] : series.partial_sums) os << " S(" << n << ")=" << v;
    throw SeriesDiverges(os.str());
  }
  return series.value;
}

double rl_value(const GroundFunction& f, const SetFunction& nu) { return rl_value(f, nu, full_set(nu.space())); }

// ---------------------------------------------------------------------------
// Gould

namespace {

constexpr std::size_t kMaxSplitPeriod = std::size_t{1} << 16;

struct Candidate {
  MeasurableSet a;
  MeasurableSet b;
  SumRange ca;
  SumRange cb;
  double score = -1.0;
};

struct Block {
  MeasurableSet set;
  SumRange contrib;
  std::optional<Candidate> best;
  // Largest endpoint move over all one-step refinements of this block.
  double probe = 0.0;
};

void evaluate_candidates(const GroundFunction& f, const SetFunction& nu, Block& blk) {
  const EpSet& e = std::get<EpSet>(blk.set);
  std::vector<std::pair<EpSet, EpSet>> splits;
  if (!e.is_finite() && 2 * e.period_length() <= kMaxSplitPeriod) splits.push_back(ep_split_infinite(e));
  const Cardinality card = ep_cardinality(e);
  if (!card.finite || card.count >= 2) {
    const EpSet first = EpSet::of({*e.min_element()});
    splits.emplace_back(first, ep_combine(e, first, SetOp::Difference));
  }
  blk.best.reset();
  blk.probe = 0.0;
  for (auto& [x, y] : splits) {
    Candidate c{x, y, block_contribution(f, nu, x), block_contribution(f, nu, y)};
    const double dlo = c.ca.lo + c.cb.lo - blk.contrib.lo;
    const double dhi = c.ca.hi + c.cb.hi - blk.contrib.hi;
    const double dmid = 0.5 * (dlo + dhi);
    const double narrowing = blk.contrib.width() - (c.ca.width() + c.cb.width());
    c.score = std::max(std::abs(dmid), narrowing);
    blk.probe = std::max({blk.probe, std::abs(dlo), std::abs(dhi)});
    if (!blk.best || c.score > blk.best->score) blk.best = std::move(c);
  }
}

Partition to_partition(const std::vector<Block>& blocks) {
  std::vector<MeasurableSet> sets;
  sets.reserve(blocks.size());
  for (const auto& b : blocks) sets.push_back(b.set);
  return Partition(GroundSpace::nat(), std::move(sets));
}

SumRange total_of(const std::vector<Block>& blocks) {
  SumRange s;
  for (const auto& b : blocks) {
    s.lo += b.contrib.lo;
    s.hi += b.contrib.hi;
  }
  return s;
}

IntegralReport gould_nat(const GroundFunction& f, const SetFunction& nu, const GouldOptions& opts) {
  IntegralReport r;
  std::vector<Block> blocks;
  blocks.push_back({EpSet::all(), block_contribution(f, nu, EpSet::all()), std::nullopt, 0.0});
  evaluate_candidates(f, nu, blocks.back());

  std::vector<WitnessPartition> chain;
  for (std::size_t step = 0; step < opts.budget; ++step) {
    const SumRange s = total_of(blocks);
    chain.push_back({to_partition(blocks), s});
    r.trace.push_back({blocks.size(), s.lo, s.hi});

    double probe = 0.0;
    for (const auto& b : blocks) probe = std::max(probe, b.probe);
    if (s.width() <= opts.tolerance && probe <= opts.tolerance) {
      r.status = IntegralStatus::Converged;
      r.value = s.mid();
      r.achieved_eps = std::max(s.width(), probe);
      r.note = "tag-sum range and every one-step refinement within tolerance";
      return r;
    }
    if (step + 1 == opts.budget) break;

    std::size_t pick = blocks.size();
    auto period_of = [&](std::size_t i) { return std::get<EpSet>(blocks[i].set).period_length(); };
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (!blocks[i].best) continue;
      if (pick == blocks.size() || blocks[i].best->score > blocks[pick].best->score ||
          (blocks[i].best->score == blocks[pick].best->score && period_of(i) < period_of(pick))) {
        pick = i;
      }
    }
    if (pick == blocks.size()) break;
    Candidate c = std::move(*blocks[pick].best);
    Block first{std::move(c.a), c.ca, std::nullopt, 0.0};
    Block second{std::move(c.b), c.cb, std::nullopt, 0.0};
    evaluate_candidates(f, nu, first);
    evaluate_candidates(f, nu, second);
    blocks[pick] = std::move(first);
    blocks.insert(blocks.begin() + static_cast<std::ptrdiff_t>(pick) + 1, std::move(second));
  }

  // Trailing run of same-direction moves of size at least delta.
  const std::size_t k = chain.size();
  std::size_t start = k - 1;
  if (k >= 2) {
    const double dir = chain[k - 1].sums.mid() - chain[k - 2].sums.mid();
    while (start > 0) {
      const double inc = chain[start].sums.mid() - chain[start - 1].sums.mid();
      if (std::abs(inc) < opts.delta || (inc > 0) != (dir > 0)) break;
      --start;
    }
  }
  const SumRange last = chain.back().sums;
  r.value = last.mid();
  if (k - start >= opts.run_length) {
    r.status = IntegralStatus::Diverged;
    r.witness.assign(chain.begin() + static_cast<std::ptrdiff_t>(start), chain.end());
    std::ostringstream os;
    os << "sums move by at least " << opts.delta << " at each of " << (k - start - 1)
       << " consecutive refinements";
    r.note = os.str();
    return r;
  }
  std::size_t far = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (std::abs(chain[i].sums.mid() - last.mid()) > std::abs(chain[far].sums.mid() - last.mid())) far = i;
  }
  r.status = IntegralStatus::NotIntegrable;
  r.witness = {chain[far], chain.back()};
  r.achieved_eps = last.width();
  r.note = "budget_exhausted: no tolerance-sized tag range within " + std::to_string(opts.budget) + " partitions";
  return r;
}

}  // namespace

IntegralReport gould_integrate(const GroundFunction& f, const SetFunction& nu, const GouldOptions& opts) {
  check_same_space(f, nu);
  if (opts.budget == 0) throw InvalidArgument("Gould budget must be at least 1");
  if (nu.space().is_finite()) {
    // The net of finite partitions terminates at the singleton partition.
    IntegralReport r = rl_integrate(f, nu);
    r.note = "finite partitions reach the singleton partition";
    return r;
  }
  return gould_nat(f, nu, opts);
}

IntegralReport birkhoff_simple_integrate(const GroundFunction& f, const SetFunction& nu) {
  IntegralReport r = rl_integrate(f, nu);
  if (nu.space().is_finite()) {
    r.trace.clear();
    double acc = 0.0;
    for (int i = 0; i < nu.space().size(); ++i) {
      acc += f.at(i) * nu(Mask{1} << i);
      r.trace.push_back({static_cast<std::size_t>(i + 1), acc, acc});
    }
  }
  r.note = "partial sums over singletons in increasing order";
  return r;
}

SetFunction indefinite_integral(const GroundFunction& f, const SetFunction& nu) {
  check_same_space(f, nu);
  if (f.space().is_finite()) {
    const int n = f.space().size();
    std::vector<double> singles(n);
    for (int i = 0; i < n; ++i) {
      if (f.at(i) < 0.0) throw InvalidArgument("indefinite integral needs f >= 0");
      singles[i] = f.at(i) * nu(Mask{1} << i);
    }
    return SetFunction::tabulate(f.space(), [&](Mask m) {
      double s = 0.0;
      for (int i : mask_elements(m)) s += singles[i];
      return s;
    });
  }
  if (extrema_of(f, EpSet::all()).inf < 0.0) throw InvalidArgument("indefinite integral needs f >= 0");
  rl_value(f, nu);
  return SetFunction::op(f.space(), "T_f[" + nu.describe() + "]",
                         [f, nu](const MeasurableSet& e) { return rl_value(f, nu, e); });
}

ComparisonReport compare_integrals(const GroundFunction& f, const SetFunction& nu, const GouldOptions& opts,
                                   double tolerance) {
  ComparisonReport c;
  c.rl = rl_integrate(f, nu);
  c.gould = gould_integrate(f, nu, opts);
  c.birkhoff = birkhoff_simple_integrate(f, nu);
  c.agree = c.rl.integrable() && c.gould.integrable() && c.birkhoff.integrable() &&
            std::abs(c.rl.value - c.gould.value) <= tolerance && std::abs(c.rl.value - c.birkhoff.value) <= tolerance;
  if (!c.agree) {
    std::ostringstream os;
    const std::pair<const char*, const IntegralReport*> reports[] = {
        {"rl", &c.rl}, {"gould", &c.gould}, {"birkhoff", &c.birkhoff}};
    for (const auto& [name, rep] : reports) {
      if (!rep->integrable()) os << name << ": " << to_string(rep->status) << " (" << rep->note << "); ";
    }
    if (os.str().empty()) os << "values differ by more than " << tolerance;
    c.counterexample = os.str();
  }
  return c;
}

}  // namespace nonadd
