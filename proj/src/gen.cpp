#include "gen.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "errors.hpp"

namespace csm {

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& pool) {
  return pool[uniform_int(rng, 0, static_cast<int>(pool.size()) - 1)];
}

// Distinct scores in (0,1) on the 1/1024 grid: score differences stay in
// (-1,1) minus zero, so adding even integer bonuses can never produce a tie.
std::vector<Rat> random_sigma(std::mt19937_64& rng, int n, bool distinct) {
  std::vector<Rat> sigma;
  sigma.reserve(n);
  if (distinct) {
    std::set<int> grid;
    while (static_cast<int>(grid.size()) < n) grid.insert(uniform_int(rng, 1, 1023));
    std::vector<int> pool(grid.begin(), grid.end());
    std::shuffle(pool.begin(), pool.end(), rng);
    for (int k : pool) sigma.emplace_back(k, 1024);
  } else {
    // Coarse grid with repeats: ties are welcome here.
    for (int i = 0; i < n; ++i) sigma.emplace_back(uniform_int(rng, 0, 16), 16);
  }
  return sigma;
}

PresetParams random_preset_params(std::mt19937_64& rng, PresetKind kind, int capacity,
                                  int n_types) {
  PresetParams params;
  auto fill_reserve_within_capacity = [&] {
    // r_t >= 1 with sum <= capacity: start at one seat each, then hand out a
    // random share of the leftover seats.
    params.reserve.assign(n_types + 1, 0);
    for (int t = 1; t <= n_types; ++t) params.reserve[t] = 1;
    int leftover = uniform_int(rng, 0, capacity - n_types);
    for (int u = 0; u < leftover; ++u) ++params.reserve[uniform_int(rng, 1, n_types)];
  };
  switch (kind) {
    case PresetKind::LinearDecay:
      params.reserve.assign(n_types + 1, 0);
      for (int t = 1; t <= n_types; ++t) params.reserve[t] = uniform_int(rng, 1, capacity);
      break;
    case PresetKind::Reserves:
      fill_reserve_within_capacity();
      break;
    case PresetKind::Quotas:
      params.reserve.assign(n_types + 1, 0);
      for (int t = 1; t <= n_types; ++t) params.reserve[t] = uniform_int(rng, 1, capacity);
      break;
    case PresetKind::SoftBounds:
    case PresetKind::ReservesAndQuotas:
      fill_reserve_within_capacity();
      params.quota.assign(n_types + 1, 0);
      for (int t = 1; t <= n_types; ++t)
        params.quota[t] = params.reserve[t] + uniform_int(rng, 0, 2);
      break;
    case PresetKind::FlatBonus:
      params.bonus.assign(n_types + 1, Rat(0));
      for (int t = 1; t <= n_types; ++t) params.bonus[t] = Rat(2 * uniform_int(rng, 0, 2));
      break;
    case PresetKind::DiminishingSqrt: {
      const std::vector<Rat> weights = {Rat(0), Rat(1, 4), Rat(1, 2), Rat(1)};
      params.weight.assign(n_types + 1, Rat(0));
      for (int t = 1; t <= n_types; ++t) params.weight[t] = pick(rng, weights);
      break;
    }
  }
  return params;
}

}  // namespace

GeneratedInstance random_scoring_instance(std::mt19937_64& rng, const GenOptions& opt) {
  require(opt.min_students >= 1 && opt.min_students <= opt.max_students,
          "student count bounds must satisfy 1 <= min <= max");
  require(opt.min_schools >= 1 && opt.min_schools <= opt.max_schools,
          "school count bounds must satisfy 1 <= min <= max");
  require(opt.max_types >= 1 && opt.max_types <= 6, "type count must be between 1 and 6");
  require(opt.min_capacity >= 1 && opt.min_capacity <= opt.max_capacity,
          "capacity bounds must satisfy 1 <= min <= max");
  require(opt.accept_prob >= 0.0 && opt.accept_prob <= 1.0,
          "acceptance probability must lie in [0,1]");

  const int n = uniform_int(rng, opt.min_students, opt.max_students);
  const int m = uniform_int(rng, opt.min_schools, opt.max_schools);
  const bool distinct = opt.distinct_scores || opt.force_linear || opt.preset.has_value();

  GeneratedInstance out;
  out.inst.student_ids.resize(n);
  const int id_width = static_cast<int>(std::to_string(n).size());
  for (int i = 0; i < n; ++i) {
    std::string id = std::to_string(i + 1);
    out.inst.student_ids[i] = std::string(id_width - id.size(), '0') + id;
  }

  static const std::string kTypeLabels = "ABCDEF";
  for (SchoolId s = 0; s < m; ++s) {
    const int capacity = uniform_int(rng, opt.min_capacity, opt.max_capacity);

    // Presets whose per-type floors must fit inside the capacity need K <= q.
    int type_cap = opt.max_types;
    if (opt.preset == PresetKind::Reserves || opt.preset == PresetKind::SoftBounds ||
        opt.preset == PresetKind::ReservesAndQuotas)
      type_cap = std::min(type_cap, capacity);
    const int n_types = uniform_int(rng, 1, type_cap);

    out.inst.school_ids.push_back("s" + std::to_string(s + 1));
    out.inst.capacity.push_back(capacity);
    std::vector<TypeId> type_of(n);
    for (int i = 0; i < n; ++i) type_of[i] = uniform_int(rng, 1, n_types);
    out.inst.type_of.push_back(type_of);
    std::vector<std::string> labels = {"@none"};
    for (int t = 1; t <= n_types; ++t) labels.push_back(std::string(1, kTypeLabels[t - 1]));
    out.inst.type_labels.push_back(labels);

    GeneratedSchool school;
    school.sigma = random_sigma(rng, n, distinct);
    if (opt.preset) {
      school.preset = opt.preset;
      school.params = random_preset_params(rng, *opt.preset, capacity, n_types);
      PresetResult preset = preset_alpha(*opt.preset, capacity, n_types, school.params);
      school.alpha = std::move(preset.alpha);
      school.sigma_floor = preset.sigma_floor;
    } else {
      school.alpha.assign(n_types + 1, {});
      const std::vector<Rat> linear_pool = {Rat(0), Rat(2), Rat(4)};
      const std::vector<Rat> general_pool = {Rat(0), Rat(1, 2), Rat(1), Rat(2), Rat(4)};
      const std::vector<Rat> weights = {Rat(1, 4), Rat(1, 2), Rat(1)};
      for (int t = 1; t <= n_types; ++t) {
        if (opt.allow_sqrt && !opt.force_linear && uniform_int(rng, 0, 3) == 0) {
          school.alpha[t].sqrt_gap = true;
          school.alpha[t].weight = pick(rng, weights);
          continue;
        }
        std::vector<Rat> table(capacity + 1);
        for (Rat& v : table) v = pick(rng, opt.force_linear ? linear_pool : general_pool);
        std::sort(table.begin(), table.end(), [](const Rat& a, const Rat& b) {
          return Rat::cmp(a, b) > 0;
        });
        school.alpha[t].table = std::move(table);
      }
      if (opt.force_linear) {
        // Floors no grid score plus an even bonus can equal.
        school.sigma_floor = pick(rng, std::vector<Rat>{Rat(-1), Rat(7, 3)});
      } else {
        school.sigma_floor =
            pick(rng, std::vector<Rat>{Rat(-1), Rat(0), Rat(1, 2), kFloorNegInfinity});
      }
    }

    out.rules.push_back(std::make_shared<AdjustedScoringRule>(
        n, capacity, type_of, school.sigma, school.sigma_floor, school.alpha));
    out.schools.push_back(std::move(school));
  }

  out.prefs.ranking.resize(n);
  std::bernoulli_distribution lists_school(opt.accept_prob);
  for (int i = 0; i < n; ++i) {
    for (SchoolId s = 0; s < m; ++s)
      if (lists_school(rng)) out.prefs.ranking[i].push_back(s);
    std::shuffle(out.prefs.ranking[i].begin(), out.prefs.ranking[i].end(), rng);
  }
  return out;
}

}  // namespace csm
