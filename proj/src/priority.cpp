#include "priority.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace csm {

namespace {

constexpr long double kTieTolerance = 1e-9L;

std::string candidate_name(StudentId i) {
  return i == kNoStudent ? std::string("@none") : std::to_string(i);
}

std::string rank_name(Rank r) {
  switch (r) {
    case Rank::Higher: return "higher";
    case Rank::Tied: return "tied";
    case Rank::Lower: return "lower";
  }
  return "?";
}

}  // namespace

PriorityRule::PriorityRule(int n_students, int capacity, std::vector<TypeId> type_of)
    : n_(n_students), capacity_(capacity), type_of_(std::move(type_of)) {
  require(n_ >= 0, "negative student count");
  require(capacity_ >= 1, "school capacity must be at least 1");
  require(static_cast<int>(type_of_.size()) == n_, "type assignment must cover every student");
  for (TypeId t : type_of_) {
    require(t >= 1, "student types must be positive (0 is the outside option)");
    n_types_ = std::max(n_types_, t);
  }
}

int PriorityRule::count_of_type(const StudentSet& assigned, TypeId t) const {
  int count = 0;
  for (StudentId j : assigned)
    if (type_of_[j] == t) ++count;
  return count;
}

Rank PriorityRule::compare(const StudentSet& assigned, StudentId a, StudentId b) const {
  require(static_cast<int>(assigned.size()) <= capacity_ - 1,
          "priority order undefined at assigned set " + set_to_string(assigned) +
              ": school already at capacity");
  for (StudentId j : assigned)
    require(j >= 0 && j < n_, "assigned set contains unknown student");
  require(std::is_sorted(assigned.begin(), assigned.end()) &&
              std::adjacent_find(assigned.begin(), assigned.end()) == assigned.end(),
          "assigned set must be sorted and duplicate-free");
  for (StudentId c : {a, b}) {
    require(c == kNoStudent || (c >= 0 && c < n_), "unknown candidate in priority comparison");
    require(c == kNoStudent || !set_contains(assigned, c),
            "candidate " + candidate_name(c) + " already belongs to the assigned set");
  }
  if (a == b) return Rank::Tied;
  return do_compare(assigned, a, b);
}

// ---------------------------------------------------------------------------
// Adjusted scoring rule.

AdjustedScoringRule::AdjustedScoringRule(int n_students, int capacity, std::vector<TypeId> type_of,
                                         std::vector<Rat> sigma, Rat sigma_floor,
                                         std::vector<AlphaSpec> alpha)
    : PriorityRule(n_students, capacity, std::move(type_of)),
      sigma_(std::move(sigma)),
      floor_(sigma_floor),
      alpha_(std::move(alpha)) {
  require(static_cast<int>(sigma_.size()) == this->n_students(),
          "base scores must cover every student");
  for (const Rat& s : sigma_)
    require(s >= Rat(0) && s <= Rat(1), "base scores must lie in [0,1]");
  require(static_cast<int>(alpha_.size()) >= n_types() + 1,
          "bonus schedule must cover every type");
  // The schedule may define bonuses for types beyond what students hold;
  // those types are part of this rule's universe all the same.
  expand_types(static_cast<int>(alpha_.size()) - 1);
  for (int t = 1; t <= n_types(); ++t) {
    const AlphaSpec& a = alpha_[t];
    if (a.sqrt_gap) {
      require(a.weight >= Rat(0), "square-root bonus weight must be nonnegative");
      exact_ = false;
    } else {
      require(static_cast<int>(a.table.size()) == this->capacity() + 1,
              "bonus table for type " + std::to_string(t) + " must cover counts 0..capacity (" +
                  std::to_string(this->capacity() + 1) + " entries), got " +
                  std::to_string(a.table.size()));
      for (std::size_t x = 1; x < a.table.size(); ++x)
        require(a.table[x] <= a.table[x - 1],
                "bonus table for type " + std::to_string(t) + " increases from count " +
                    std::to_string(x - 1) + " (" + to_string(a.table[x - 1]) + ") to count " +
                    std::to_string(x) + " (" + to_string(a.table[x]) + ")");
    }
  }
}

Rat AdjustedScoringRule::score_exact(const StudentSet& assigned, StudentId i) const {
  if (i == kNoStudent) return floor_;
  const AlphaSpec& a = alpha_[type_of(i)];
  internal_check(!a.sqrt_gap, "exact score requested from a square-root bonus type");
  int count = count_of_type(assigned, type_of(i));
  internal_check(count < static_cast<int>(a.table.size()), "type count outside bonus table");
  return sigma_[i] + a.table[count];
}

long double AdjustedScoringRule::score_real(const StudentSet& assigned, StudentId i) const {
  if (i == kNoStudent) return static_cast<long double>(floor_.num) / floor_.den;
  const AlphaSpec& a = alpha_[type_of(i)];
  int count = count_of_type(assigned, type_of(i));
  long double base = static_cast<long double>(sigma_[i].num) / sigma_[i].den;
  if (a.sqrt_gap) {
    long double w = static_cast<long double>(a.weight.num) / a.weight.den;
    return base + w * (sqrtl(count + 1.0L) - sqrtl(static_cast<long double>(count)));
  }
  internal_check(count < static_cast<int>(a.table.size()), "type count outside bonus table");
  return base + static_cast<long double>(a.table[count].num) / a.table[count].den;
}

Rank AdjustedScoringRule::do_compare(const StudentSet& assigned, StudentId a, StudentId b) const {
  if (exact_) {
    int c = Rat::cmp(score_exact(assigned, a), score_exact(assigned, b));
    return c > 0 ? Rank::Higher : c < 0 ? Rank::Lower : Rank::Tied;
  }
  long double fa = score_real(assigned, a);
  long double fb = score_real(assigned, b);
  if (fa - fb > kTieTolerance) return Rank::Higher;
  if (fb - fa > kTieTolerance) return Rank::Lower;
  return Rank::Tied;
}

// ---------------------------------------------------------------------------
// Explicit table rule.

TablePriorityRule::TablePriorityRule(int n_students, int capacity, std::vector<TypeId> type_of,
                                     const std::vector<StoredOrder>& orders)
    : PriorityRule(n_students, capacity, std::move(type_of)) {
  const int n = this->n_students();
  for (const StoredOrder& order : orders) {
    const StudentSet& J = order.assigned;
    require(std::is_sorted(J.begin(), J.end()) &&
                std::adjacent_find(J.begin(), J.end()) == J.end(),
            "stored order has an unsorted assigned set");
    for (StudentId j : J) require(j >= 0 && j < n, "stored order references unknown student");
    require(static_cast<int>(J.size()) <= capacity - 1,
            "stored order for assigned set " + set_to_string(J) +
                " is void: school would already be at capacity");
    require(!levels_.count(J), "duplicate stored order for assigned set " + set_to_string(J));
    std::vector<int> level(n + 1, -2);  // -2 = unseen, -1 = member of J
    for (StudentId j : J) level[j] = -1;
    int expected = n - static_cast<int>(J.size()) + 1;
    int seen = 0;
    for (std::size_t cls = 0; cls < order.classes.size(); ++cls) {
      for (StudentId c : order.classes[cls]) {
        int slot = c == kNoStudent ? n : c;
        require(c == kNoStudent || (c >= 0 && c < n), "stored order lists unknown candidate");
        require(level[slot] == -2, "candidate " + candidate_name(c) +
                                       " appears twice (or belongs to the assigned set) in the "
                                       "order for " +
                                       set_to_string(J));
        level[slot] = static_cast<int>(cls);
        ++seen;
      }
    }
    require(seen == expected, "order for assigned set " + set_to_string(J) +
                                  " must rank every remaining student and the outside option");
    levels_[J] = std::move(level);
  }
}

bool TablePriorityRule::complete() const { return missing_orders().empty(); }

std::vector<StudentSet> TablePriorityRule::missing_orders() const {
  std::vector<StudentSet> missing;
  for (const StudentSet& J : subsets_up_to(n_students(), capacity() - 1))
    if (!levels_.count(J)) missing.push_back(J);
  return missing;
}

Rank TablePriorityRule::do_compare(const StudentSet& assigned, StudentId a, StudentId b) const {
  auto it = levels_.find(assigned);
  require(it != levels_.end(),
          "no stored priority order for assigned set " + set_to_string(assigned));
  const std::vector<int>& level = it->second;
  int la = level[a == kNoStudent ? n_students() : a];
  int lb = level[b == kNoStudent ? n_students() : b];
  if (la < lb) return Rank::Higher;
  if (la > lb) return Rank::Lower;
  return Rank::Tied;
}

// ---------------------------------------------------------------------------
// Structural checks.

namespace {

// Shared enumeration helpers for the checks below.
struct CheckContext {
  const PriorityRule& rule;
  std::vector<StudentSet> admissible;  // all J with |J| <= capacity-1
  std::vector<std::vector<int>> type_counts;  // per admissible set, counts by type

  explicit CheckContext(const PriorityRule& r) : rule(r) {
    admissible = subsets_up_to(r.n_students(), r.capacity() - 1);
    type_counts.reserve(admissible.size());
    for (const StudentSet& J : admissible) {
      std::vector<int> counts(r.n_types() + 1, 0);
      for (StudentId j : J) ++counts[r.type_of(j)];
      type_counts.push_back(std::move(counts));
    }
  }
};

std::string describe(const PriorityRule&, const StudentSet& J, StudentId a, Rank r, StudentId b) {
  std::ostringstream out;
  out << "at " << set_to_string(J) << ": " << candidate_name(a) << " " << rank_name(r) << " vs "
      << candidate_name(b);
  return out.str();
}

void add_witness(AxiomCheck& check, const std::string& axiom, const std::string& detail,
                 int max_witnesses) {
  check.passed = false;
  if (static_cast<int>(check.witnesses.size()) < max_witnesses)
    check.witnesses.push_back({axiom, detail});
}

bool witness_budget_left(const AxiomCheck& check, int max_witnesses) {
  return check.passed || static_cast<int>(check.witnesses.size()) < max_witnesses;
}

// Diversity monotonicity premise for candidates a,b between assigned sets J
// (counts cj) and J' (counts cj2): a's type count must not increase and b's
// must not decrease when moving from J to J'.
bool diversity_premise(const PriorityRule& rule, const std::vector<int>& cj,
                       const std::vector<int>& cj2, StudentId a, StudentId b) {
  int ta = rule.type_of(a), tb = rule.type_of(b);
  int a_at_j = ta == 0 ? 0 : cj[ta];
  int a_at_j2 = ta == 0 ? 0 : cj2[ta];
  int b_at_j = tb == 0 ? 0 : cj[tb];
  int b_at_j2 = tb == 0 ? 0 : cj2[tb];
  return a_at_j >= a_at_j2 && b_at_j <= b_at_j2;
}

void check_diversity_pair(const PriorityRule& rule, const StudentSet& J, const StudentSet& J2,
                          const std::vector<int>& cj, const std::vector<int>& cj2, StudentId a,
                          StudentId b, AxiomCheck& out, int max_witnesses) {
  if (!diversity_premise(rule, cj, cj2, a, b)) return;
  ++out.checks;
  Rank at_j = rule.compare(J, a, b);
  if (at_j == Rank::Lower) return;
  Rank at_j2 = rule.compare(J2, a, b);
  if (at_j == Rank::Higher && at_j2 != Rank::Higher)
    add_witness(out, "diversity-monotone",
                describe(rule, J, a, at_j, b) + " but " + describe(rule, J2, a, at_j2, b),
                max_witnesses);
  else if (at_j == Rank::Tied && at_j2 == Rank::Lower)
    add_witness(out, "diversity-monotone",
                describe(rule, J, a, at_j, b) + " but " + describe(rule, J2, a, at_j2, b),
                max_witnesses);
}

void check_clone_swap_case(const PriorityRule& rule, const StudentSet& J, StudentId i, StudentId j,
                           StudentId k, AxiomCheck& out, int max_witnesses) {
  // Premise: same type, i weakly above j at J. Clause (a): if j beats k with
  // i assigned, then i beats k with j assigned. Clause (b): if k beats i with
  // j assigned, then k beats j with i assigned.
  ++out.checks;
  StudentSet Ji = set_with(J, i);
  StudentSet Jj = set_with(J, j);
  Rank a_pre = rule.compare(Ji, j, k);
  if (a_pre == Rank::Higher && rule.compare(Jj, i, k) != Rank::Higher)
    add_witness(out, "clone-swap",
                describe(rule, Ji, j, a_pre, k) + " but not " +
                    describe(rule, Jj, i, Rank::Higher, k),
                max_witnesses);
  Rank b_pre = rule.compare(Jj, k, i);
  if (b_pre == Rank::Higher && rule.compare(Ji, k, j) != Rank::Higher)
    add_witness(out, "clone-swap",
                describe(rule, Jj, k, b_pre, i) + " but not " +
                    describe(rule, Ji, k, Rank::Higher, j),
                max_witnesses);
}

}  // namespace

AxiomReport check_axioms(const PriorityRule& rule, const AxiomCheckOptions& opt) {
  AxiomReport report;
  const int n = rule.n_students();

  // Candidate list: all students plus the outside option.
  std::vector<StudentId> candidates(n);
  for (int i = 0; i < n; ++i) candidates[i] = i;
  candidates.push_back(kNoStudent);

  // Estimate the exhaustive comparison count with saturation before touching
  // any enumeration, so oversized instances go straight to sampling.
  const long long kSaturated = std::numeric_limits<long long>::max() / 4;
  auto saturating_mul = [&](long long a, long long b) {
    if (a == 0 || b == 0) return 0LL;
    if (a > kSaturated / b) return kSaturated;
    return a * b;
  };
  long long n_sets = 0;
  {
    long long choose = 1;  // C(n, k)
    for (int k = 0; k <= std::min(n, rule.capacity() - 1); ++k) {
      n_sets = std::min(n_sets + choose, kSaturated);
      choose = saturating_mul(choose, n - k) / (k + 1);
    }
  }
  long long estimated =
      saturating_mul(saturating_mul(n_sets, n_sets), static_cast<long long>(n + 1) * (n + 1));
  report.sampled = estimated > opt.full_budget;

  if (!report.sampled) {
    CheckContext ctx(rule);
    const auto& sets = ctx.admissible;
    // Diversity monotonicity: exhaustive over ordered candidate pairs and
    // ordered pairs of admissible assigned sets.
    for (StudentId a : candidates) {
      for (StudentId b : candidates) {
        if (a == b || (a == kNoStudent && b == kNoStudent)) continue;
        if (!witness_budget_left(report.diversity_monotone, opt.max_witnesses)) break;
        for (std::size_t x = 0; x < sets.size(); ++x) {
          if (a != kNoStudent && set_contains(sets[x], a)) continue;
          if (b != kNoStudent && set_contains(sets[x], b)) continue;
          for (std::size_t y = 0; y < sets.size(); ++y) {
            if (x == y) continue;
            if (a != kNoStudent && set_contains(sets[y], a)) continue;
            if (b != kNoStudent && set_contains(sets[y], b)) continue;
            check_diversity_pair(rule, sets[x], sets[y], ctx.type_counts[x], ctx.type_counts[y],
                                 a, b, report.diversity_monotone, opt.max_witnesses);
          }
        }
      }
    }

    // Within-type invariance: the comparison of two same-type students must
    // be the same at every admissible assigned set avoiding both.
    for (StudentId i = 0; i < n; ++i) {
      for (StudentId j = i + 1; j < n; ++j) {
        if (rule.type_of(i) != rule.type_of(j)) continue;
        bool have_ref = false;
        Rank ref = Rank::Tied;
        StudentSet ref_set;
        for (const StudentSet& J : sets) {
          if (set_contains(J, i) || set_contains(J, j)) continue;
          ++report.within_type_invariant.checks;
          Rank r = rule.compare(J, i, j);
          if (!have_ref) {
            have_ref = true;
            ref = r;
            ref_set = J;
          } else if (r != ref) {
            add_witness(report.within_type_invariant, "within-type-invariant",
                        describe(rule, ref_set, i, ref, j) + " but " + describe(rule, J, i, r, j),
                        opt.max_witnesses);
            break;
          }
        }
      }
    }

    // Clone swap: same-type pairs with i weakly above j, all third candidates
    // (students or the outside option), all assigned sets small enough that
    // J plus one clone stays admissible.
    for (const StudentSet& J : sets) {
      if (static_cast<int>(J.size()) > rule.capacity() - 2) continue;
      for (StudentId i = 0; i < n; ++i) {
        if (set_contains(J, i)) continue;
        for (StudentId j = 0; j < n; ++j) {
          if (i == j || set_contains(J, j)) continue;
          if (rule.type_of(i) != rule.type_of(j)) continue;
          if (rule.compare(J, i, j) == Rank::Lower) continue;
          for (StudentId k : candidates) {
            if (k == i || k == j) continue;
            if (k != kNoStudent && set_contains(J, k)) continue;
            if (!witness_budget_left(report.clone_swap, opt.max_witnesses)) break;
            check_clone_swap_case(rule, J, i, j, k, report.clone_swap, opt.max_witnesses);
          }
        }
      }
    }
    return report;
  }

  // Sampled mode for spaces too large to enumerate.
  std::mt19937_64 rng(opt.seed);
  auto rand_below = [&](long long bound) {
    return static_cast<long long>(rng() % static_cast<std::uint64_t>(bound));
  };
  auto random_set = [&](int avoid_a, int avoid_b, int max_size) {
    StudentSet J;
    if (max_size <= 0) return J;
    int size = static_cast<int>(rand_below(max_size + 1));
    std::vector<StudentId> ids;
    for (StudentId i = 0; i < n; ++i)
      if (i != avoid_a && i != avoid_b) ids.push_back(i);
    for (int pick = 0; pick < size && !ids.empty(); ++pick) {
      std::size_t at = static_cast<std::size_t>(rand_below(static_cast<long long>(ids.size())));
      J.push_back(ids[at]);
      ids.erase(ids.begin() + static_cast<long>(at));
    }
    return sorted_set(std::move(J));
  };

  for (long long round = 0; round < opt.sample_rounds; ++round) {
    StudentId a = static_cast<StudentId>(rand_below(n + 1));
    StudentId b = static_cast<StudentId>(rand_below(n + 1));
    if (a == n) a = kNoStudent;
    if (b == n) b = kNoStudent;
    if (a == b) continue;
    StudentSet J = random_set(a, b, rule.capacity() - 1);
    StudentSet J2 = random_set(a, b, rule.capacity() - 1);
    std::vector<int> cj(rule.n_types() + 1, 0), cj2(rule.n_types() + 1, 0);
    for (StudentId x : J) ++cj[rule.type_of(x)];
    for (StudentId x : J2) ++cj2[rule.type_of(x)];
    check_diversity_pair(rule, J, J2, cj, cj2, a, b, report.diversity_monotone, opt.max_witnesses);

    if (a != kNoStudent && b != kNoStudent && rule.type_of(a) == rule.type_of(b)) {
      ++report.within_type_invariant.checks;
      if (rule.compare(J, a, b) != rule.compare(J2, a, b))
        add_witness(report.within_type_invariant, "within-type-invariant",
                    describe(rule, J, a, rule.compare(J, a, b), b) + " but " +
                        describe(rule, J2, a, rule.compare(J2, a, b), b),
                    opt.max_witnesses);
      if (rule.capacity() >= 2) {
        StudentId k = static_cast<StudentId>(rand_below(n + 1));
        if (k == n) k = kNoStudent;
        if (k != a && k != b) {
          StudentSet Jc = random_set(a, b, rule.capacity() - 2);
          if (k == kNoStudent || !set_contains(Jc, k)) {
            if (rule.compare(Jc, a, b) != Rank::Lower)
              check_clone_swap_case(rule, Jc, a, b, k, report.clone_swap, opt.max_witnesses);
          }
        }
      }
    }
  }
  return report;
}

std::optional<std::string> check_cross_transitivity(const PriorityRule& rule) {
  const int n = rule.n_students();
  require(n <= 14, "cross-transitivity check is exhaustive; instance too large");
  if (rule.capacity() < 2) return std::nullopt;  // J plus one student must stay admissible
  for (const StudentSet& J : subsets_up_to(n, rule.capacity() - 2)) {
    for (StudentId i = 0; i < n; ++i) {
      if (set_contains(J, i)) continue;
      for (StudentId j = 0; j < n; ++j) {
        if (j == i || set_contains(J, j)) continue;
        for (StudentId k = 0; k < n; ++k) {
          if (k == i || k == j || set_contains(J, k)) continue;
          if (rule.compare(set_with(J, k), i, j) != Rank::Higher) continue;
          if (rule.compare(set_with(J, i), j, k) != Rank::Higher) continue;
          if (rule.compare(set_with(J, j), i, k) != Rank::Higher) {
            std::ostringstream out;
            out << "cross-assignment transitivity fails at J=" << set_to_string(J) << " with i="
                << i << " j=" << j << " k=" << k;
            return out.str();
          }
        }
      }
    }
  }
  return std::nullopt;
}

StudentSet lowest_priority_within(const PriorityRule& rule, const StudentSet& group) {
  require(static_cast<int>(group.size()) >= 2, "lowest-priority set needs at least two members");
  require(static_cast<int>(group.size()) <= rule.capacity() + 1,
          "lowest-priority set undefined for groups larger than capacity+1");
  StudentSet lowest;
  for (StudentId i : group) {
    bool beats_someone = false;
    for (StudentId j : group) {
      if (j == i) continue;
      StudentSet rest = set_without(set_without(group, i), j);
      if (rule.compare(rest, i, j) == Rank::Higher) {
        beats_someone = true;
        break;
      }
    }
    if (!beats_someone) lowest.push_back(i);
  }
  return lowest;
}

std::optional<std::string> check_lowest_nonempty(const PriorityRule& rule) {
  const int n = rule.n_students();
  require(n <= 14, "lowest-priority check is exhaustive; instance too large");
  int max_size = std::min(n, rule.capacity() + 1);
  for (int size = 2; size <= max_size; ++size) {
    for (const StudentSet& group : subsets_up_to(n, size)) {
      if (static_cast<int>(group.size()) != size) continue;
      if (lowest_priority_within(rule, group).empty())
        return "group " + set_to_string(group) + " has an empty lowest-priority set";
    }
  }
  return std::nullopt;
}

StudentId tiebreak_most_recent(const PriorityRule& rule, const std::vector<StudentId>& arrival) {
  require(arrival.size() >= 2, "tie-break needs at least two members");
  require(static_cast<int>(arrival.size()) <= rule.capacity() + 1,
          "tie-break pool larger than capacity+1");
  StudentSet pool = sorted_set(arrival);
  require(pool.size() == arrival.size(), "arrival order contains duplicates");

  // Baton scan: start from the newcomer; walk arrivals oldest-first with the
  // newcomer re-scanned last, handing the baton to any scanned member the
  // current candidate weakly outranks at pool-minus-both.
  StudentId candidate = arrival.back();
  for (StudentId scanned : arrival) {
    if (scanned == candidate) continue;
    StudentSet rest = set_without(set_without(pool, candidate), scanned);
    if (rule.compare(rest, candidate, scanned) != Rank::Lower) candidate = scanned;
  }

  // Cross-check against the direct definition. For rules that pass the
  // structural axioms the scan provably lands on the latest-arriving member
  // of the lowest-priority set; any disagreement is surfaced, never ignored.
  StudentSet lowest = lowest_priority_within(rule, pool);
  require(!lowest.empty(),
          "group " + set_to_string(pool) +
              " has an empty lowest-priority set; the rule violates the structural axioms");
  internal_check(set_contains(lowest, candidate),
                 "tie-break scan picked " + std::to_string(candidate) +
                     " outside the lowest-priority set " + set_to_string(lowest) + " of pool " +
                     set_to_string(pool));
  for (auto it = arrival.rbegin(); it != arrival.rend(); ++it) {
    if (set_contains(lowest, *it)) {
      internal_check(*it == candidate,
                     "tie-break scan picked " + std::to_string(candidate) +
                         " but the latest-arriving lowest-priority member is " +
                         std::to_string(*it));
      break;
    }
  }
  return candidate;
}

// ---------------------------------------------------------------------------
// Presets.

std::optional<PresetKind> preset_kind_from_string(const std::string& name) {
  if (name == "linear_decay") return PresetKind::LinearDecay;
  if (name == "reserves") return PresetKind::Reserves;
  if (name == "quotas") return PresetKind::Quotas;
  if (name == "soft_bounds") return PresetKind::SoftBounds;
  if (name == "reserves_and_quotas") return PresetKind::ReservesAndQuotas;
  if (name == "flat_bonus") return PresetKind::FlatBonus;
  if (name == "diminishing_sqrt") return PresetKind::DiminishingSqrt;
  return std::nullopt;
}

std::string preset_kind_to_string(PresetKind kind) {
  switch (kind) {
    case PresetKind::LinearDecay: return "linear_decay";
    case PresetKind::Reserves: return "reserves";
    case PresetKind::Quotas: return "quotas";
    case PresetKind::SoftBounds: return "soft_bounds";
    case PresetKind::ReservesAndQuotas: return "reserves_and_quotas";
    case PresetKind::FlatBonus: return "flat_bonus";
    case PresetKind::DiminishingSqrt: return "diminishing_sqrt";
  }
  return "?";
}

PresetResult preset_alpha(PresetKind kind, int capacity, int n_types, const PresetParams& params) {
  require(capacity >= 1, "preset needs a positive capacity");
  require(n_types >= 1, "preset needs at least one type");
  auto need_per_type = [&](const auto& v, const char* what) {
    require(static_cast<int>(v.size()) == n_types + 1,
            std::string(what) + " must be given for every type (index 1..K)");
  };

  PresetResult out;
  out.alpha.assign(n_types + 1, {});
  switch (kind) {
    case PresetKind::LinearDecay: {
      need_per_type(params.reserve, "reserve");
      for (int t = 1; t <= n_types; ++t) {
        require(params.reserve[t] >= 0, "reserves must be nonnegative");
        out.alpha[t].table.resize(capacity + 1);
        for (int x = 0; x <= capacity; ++x)
          out.alpha[t].table[x] = Rat(2LL * (params.reserve[t] - (x + 1)));
      }
      out.sigma_floor = kFloorNegInfinity;
      break;
    }
    case PresetKind::Reserves:
    case PresetKind::Quotas: {
      need_per_type(params.reserve, "reserve");
      for (int t = 1; t <= n_types; ++t) {
        require(params.reserve[t] >= 0, "reserves must be nonnegative");
        out.alpha[t].table.resize(capacity + 1);
        for (int x = 0; x <= capacity; ++x)
          out.alpha[t].table[x] = Rat(x < params.reserve[t] ? 2 : 0);
      }
      out.sigma_floor = kind == PresetKind::Reserves ? Rat(-1) : Rat(2);
      break;
    }
    case PresetKind::SoftBounds:
    case PresetKind::ReservesAndQuotas: {
      need_per_type(params.reserve, "reserve");
      need_per_type(params.quota, "quota");
      for (int t = 1; t <= n_types; ++t) {
        require(params.reserve[t] >= 0, "reserves must be nonnegative");
        require(params.quota[t] >= params.reserve[t], "quota below reserve");
        out.alpha[t].table.resize(capacity + 1);
        for (int x = 0; x <= capacity; ++x)
          out.alpha[t].table[x] =
              Rat(x < params.reserve[t] ? 4 : x < params.quota[t] ? 2 : 0);
      }
      out.sigma_floor = kind == PresetKind::SoftBounds ? Rat(-1) : Rat(2);
      break;
    }
    case PresetKind::FlatBonus: {
      need_per_type(params.bonus, "bonus");
      for (int t = 1; t <= n_types; ++t)
        out.alpha[t].table.assign(capacity + 1, params.bonus[t]);
      out.sigma_floor = kFloorNegInfinity;
      break;
    }
    case PresetKind::DiminishingSqrt: {
      need_per_type(params.weight, "weight");
      for (int t = 1; t <= n_types; ++t) {
        require(params.weight[t] >= Rat(0), "square-root weights must be nonnegative");
        if (params.weight[t] == Rat(0)) {
          out.alpha[t].table.assign(capacity + 1, Rat(0));
        } else {
          out.alpha[t].sqrt_gap = true;
          out.alpha[t].weight = params.weight[t];
        }
      }
      out.sigma_floor = Rat(-1);
      break;
    }
  }
  if (params.sigma_floor) out.sigma_floor = *params.sigma_floor;
  return out;
}

}  // namespace csm
