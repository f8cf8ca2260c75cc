#include "llmoea/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace llmoea {

namespace {

constexpr double kPi = std::numbers::pi;

double square(double v) { return v * v; }

// ---------------------------------------------------------------- ZDT family

ObjectiveVector zdt1(const DecisionVector& x) {
  const std::size_t n = x.size();
  double sum = 0.0;
  for (std::size_t i = 1; i < n; ++i) sum += x[i];
  const double g = 1.0 + 9.0 * sum / static_cast<double>(n - 1);
  const double f1 = x[0];
  return {f1, g * (1.0 - std::sqrt(f1 / g))};
}

ObjectiveVector zdt2(const DecisionVector& x) {
  const std::size_t n = x.size();
  double sum = 0.0;
  for (std::size_t i = 1; i < n; ++i) sum += x[i];
  const double g = 1.0 + 9.0 * sum / static_cast<double>(n - 1);
  const double f1 = x[0];
  return {f1, g * (1.0 - square(f1 / g))};
}

ObjectiveVector zdt3(const DecisionVector& x) {
  const std::size_t n = x.size();
  double sum = 0.0;
  for (std::size_t i = 1; i < n; ++i) sum += x[i];
  const double g = 1.0 + 9.0 * sum / static_cast<double>(n - 1);
  const double f1 = x[0];
  const double ratio = f1 / g;
  return {f1, g * (1.0 - std::sqrt(ratio) - ratio * std::sin(10.0 * kPi * f1))};
}

ObjectiveVector zdt4(const DecisionVector& x) {
  const std::size_t n = x.size();
  double g = 1.0 + 10.0 * static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    g += square(x[i]) - 10.0 * std::cos(4.0 * kPi * x[i]);
  }
  const double f1 = x[0];
  return {f1, g * (1.0 - std::sqrt(f1 / g))};
}

ObjectiveVector zdt6(const DecisionVector& x) {
  const std::size_t n = x.size();
  const double f1 =
      1.0 - std::exp(-4.0 * x[0]) * std::pow(std::sin(6.0 * kPi * x[0]), 6.0);
  double sum = 0.0;
  for (std::size_t i = 1; i < n; ++i) sum += x[i];
  const double g = 1.0 + 9.0 * std::pow(sum / static_cast<double>(n - 1), 0.25);
  return {f1, g * (1.0 - square(f1 / g))};
}

// Smallest attainable first objective of ZDT6, located numerically once.
double zdt6_f1_min() {
  static const double value = [] {
    const auto h = [](double t) {
      return std::exp(-4.0 * t) * std::pow(std::sin(6.0 * kPi * t), 6.0);
    };
    double best_t = 0.0;
    double best = 0.0;
    const int steps = 200000;
    for (int i = 0; i <= steps; ++i) {
      const double t = static_cast<double>(i) / steps;
      const double v = h(t);
      if (v > best) {
        best = v;
        best_t = t;
      }
    }
    double lo = std::max(0.0, best_t - 2.0 / steps);
    double hi = std::min(1.0, best_t + 2.0 / steps);
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (h(m1) < h(m2)) lo = m1; else hi = m2;
    }
    return 1.0 - h(0.5 * (lo + hi));
  }();
  return value;
}

// ------------------------------------------------------------------ UF family
// Two-objective members split the tail indices j = 2..n (1-based) into odd
// and even sets; the three-objective members split j = 3..n by j mod 3.

struct TailSums {
  double sum_odd = 0.0, sum_even = 0.0;
  double count_odd = 0.0, count_even = 0.0;
};

template <typename Term>
TailSums accumulate_tail(const DecisionVector& x, Term term) {
  TailSums s;
  const std::size_t n = x.size();
  for (std::size_t j = 2; j <= n; ++j) {
    const double v = term(x[j - 1], j);
    if (j % 2 == 1) {
      s.sum_odd += v;
      s.count_odd += 1.0;
    } else {
      s.sum_even += v;
      s.count_even += 1.0;
    }
  }
  return s;
}

ObjectiveVector uf1(const DecisionVector& x) {
  const double n = static_cast<double>(x.size());
  const auto s = accumulate_tail(x, [&](double xj, std::size_t j) {
    return square(xj - std::sin(6.0 * kPi * x[0] + static_cast<double>(j) * kPi / n));
  });
  return {x[0] + 2.0 * s.sum_odd / s.count_odd,
          1.0 - std::sqrt(x[0]) + 2.0 * s.sum_even / s.count_even};
}

ObjectiveVector uf2(const DecisionVector& x) {
  const double n = static_cast<double>(x.size());
  const auto y = [&](double xj, std::size_t j) {
    const double jj = static_cast<double>(j);
    const double envelope =
        0.3 * square(x[0]) * std::cos(24.0 * kPi * x[0] + 4.0 * jj * kPi / n) + 0.6 * x[0];
    const double angle = 6.0 * kPi * x[0] + jj * kPi / n;
    return (j % 2 == 1) ? xj - envelope * std::cos(angle) : xj - envelope * std::sin(angle);
  };
  const auto s = accumulate_tail(x, [&](double xj, std::size_t j) { return square(y(xj, j)); });
  return {x[0] + 2.0 * s.sum_odd / s.count_odd,
          1.0 - std::sqrt(x[0]) + 2.0 * s.sum_even / s.count_even};
}

ObjectiveVector uf3(const DecisionVector& x) {
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  double sum[2] = {0.0, 0.0};
  double prod[2] = {1.0, 1.0};
  double count[2] = {0.0, 0.0};
  for (std::size_t j = 2; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    const double e = 0.5 * (1.0 + 3.0 * (jd - 2.0) / (nd - 2.0));
    const double y = x[j - 1] - std::pow(x[0], e);
    const int side = (j % 2 == 1) ? 0 : 1;
    sum[side] += square(y);
    prod[side] *= std::cos(20.0 * y * kPi / std::sqrt(jd));
    count[side] += 1.0;
  }
  const double f1 = x[0] + (2.0 / count[0]) * (4.0 * sum[0] - 2.0 * prod[0] + 2.0);
  const double f2 =
      1.0 - std::sqrt(x[0]) + (2.0 / count[1]) * (4.0 * sum[1] - 2.0 * prod[1] + 2.0);
  return {f1, f2};
}

ObjectiveVector uf4(const DecisionVector& x) {
  const double n = static_cast<double>(x.size());
  const auto s = accumulate_tail(x, [&](double xj, std::size_t j) {
    const double y = xj - std::sin(6.0 * kPi * x[0] + static_cast<double>(j) * kPi / n);
    return std::abs(y) / (1.0 + std::exp(2.0 * std::abs(y)));
  });
  return {x[0] + 2.0 * s.sum_odd / s.count_odd,
          1.0 - square(x[0]) + 2.0 * s.sum_even / s.count_even};
}

ObjectiveVector uf5(const DecisionVector& x) {
  const double n = static_cast<double>(x.size());
  constexpr double kN = 10.0;
  constexpr double kEps = 0.1;
  const auto s = accumulate_tail(x, [&](double xj, std::size_t j) {
    const double y = xj - std::sin(6.0 * kPi * x[0] + static_cast<double>(j) * kPi / n);
    return 2.0 * square(y) - std::cos(4.0 * kPi * y) + 1.0;
  });
  const double bump = (0.5 / kN + kEps) * std::abs(std::sin(2.0 * kN * kPi * x[0]));
  return {x[0] + bump + 2.0 * s.sum_odd / s.count_odd,
          1.0 - x[0] + bump + 2.0 * s.sum_even / s.count_even};
}

ObjectiveVector uf6(const DecisionVector& x) {
  const std::size_t n = x.size();
  const double nd = static_cast<double>(n);
  constexpr double kN = 2.0;
  constexpr double kEps = 0.1;
  double sum[2] = {0.0, 0.0};
  double prod[2] = {1.0, 1.0};
  double count[2] = {0.0, 0.0};
  for (std::size_t j = 2; j <= n; ++j) {
    const double jd = static_cast<double>(j);
    const double y = x[j - 1] - std::sin(6.0 * kPi * x[0] + jd * kPi / nd);
    const int side = (j % 2 == 1) ? 0 : 1;
    sum[side] += square(y);
    prod[side] *= std::cos(20.0 * y * kPi / std::sqrt(jd));
    count[side] += 1.0;
  }
  const double bump =
      std::max(0.0, 2.0 * (0.5 / kN + kEps) * std::sin(2.0 * kN * kPi * x[0]));
  const double f1 = x[0] + bump + (2.0 / count[0]) * (4.0 * sum[0] - 2.0 * prod[0] + 2.0);
  const double f2 =
      1.0 - x[0] + bump + (2.0 / count[1]) * (4.0 * sum[1] - 2.0 * prod[1] + 2.0);
  return {f1, f2};
}

ObjectiveVector uf7(const DecisionVector& x) {
  const double n = static_cast<double>(x.size());
  const auto s = accumulate_tail(x, [&](double xj, std::size_t j) {
    return square(xj - std::sin(6.0 * kPi * x[0] + static_cast<double>(j) * kPi / n));
  });
  const double root = std::pow(x[0], 0.2);
  return {root + 2.0 * s.sum_odd / s.count_odd,
          1.0 - root + 2.0 * s.sum_even / s.count_even};
}

// Tail sums for the three-objective members, split by j mod 3 over j = 3..n.
template <typename Term>
void accumulate_tail3(const DecisionVector& x, Term term, double sum[3], double count[3]) {
  const std::size_t n = x.size();
  for (std::size_t j = 3; j <= n; ++j) {
    const double v = term(x[j - 1], j);
    int side;
    if ((j - 1) % 3 == 0) side = 0;
    else if ((j - 2) % 3 == 0) side = 1;
    else side = 2;
    sum[side] += v;
    count[side] += 1.0;
  }
}

ObjectiveVector uf8(const DecisionVector& x) {
  const double n = static_cast<double>(x.size());
  double sum[3] = {0, 0, 0};
  double count[3] = {0, 0, 0};
  accumulate_tail3(x, [&](double xj, std::size_t j) {
    return square(xj - 2.0 * x[1] * std::sin(2.0 * kPi * x[0] + static_cast<double>(j) * kPi / n));
  }, sum, count);
  return {std::cos(0.5 * x[0] * kPi) * std::cos(0.5 * x[1] * kPi) + 2.0 * sum[0] / count[0],
          std::cos(0.5 * x[0] * kPi) * std::sin(0.5 * x[1] * kPi) + 2.0 * sum[1] / count[1],
          std::sin(0.5 * x[0] * kPi) + 2.0 * sum[2] / count[2]};
}

ObjectiveVector uf9(const DecisionVector& x) {
  const double n = static_cast<double>(x.size());
  constexpr double kEps = 0.1;
  double sum[3] = {0, 0, 0};
  double count[3] = {0, 0, 0};
  accumulate_tail3(x, [&](double xj, std::size_t j) {
    return square(xj - 2.0 * x[1] * std::sin(2.0 * kPi * x[0] + static_cast<double>(j) * kPi / n));
  }, sum, count);
  const double e = std::max(0.0, (1.0 + kEps) * (1.0 - 4.0 * square(2.0 * x[0] - 1.0)));
  return {0.5 * (e + 2.0 * x[0]) * x[1] + 2.0 * sum[0] / count[0],
          0.5 * (e - 2.0 * x[0] + 2.0) * x[1] + 2.0 * sum[1] / count[1],
          1.0 - x[1] + 2.0 * sum[2] / count[2]};
}

ObjectiveVector uf10(const DecisionVector& x) {
  const double n = static_cast<double>(x.size());
  double sum[3] = {0, 0, 0};
  double count[3] = {0, 0, 0};
  accumulate_tail3(x, [&](double xj, std::size_t j) {
    const double y =
        xj - 2.0 * x[1] * std::sin(2.0 * kPi * x[0] + static_cast<double>(j) * kPi / n);
    return 4.0 * square(y) - std::cos(8.0 * kPi * y) + 1.0;
  }, sum, count);
  return {std::cos(0.5 * x[0] * kPi) * std::cos(0.5 * x[1] * kPi) + 2.0 * sum[0] / count[0],
          std::cos(0.5 * x[0] * kPi) * std::sin(0.5 * x[1] * kPi) + 2.0 * sum[1] / count[1],
          std::sin(0.5 * x[0] * kPi) + 2.0 * sum[2] / count[2]};
}

// ------------------------------------------------------------- front samplers

std::vector<ObjectiveVector> curve_front(std::size_t count, double lo, double hi,
                                         double (*second)(double)) {
  const std::size_t n = std::max<std::size_t>(count, 2);
  std::vector<ObjectiveVector> front;
  front.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    front.push_back({t, second(t)});
  }
  return front;
}

double concave_second(double t) { return 1.0 - std::sqrt(t); }
double convex_second(double t) { return 1.0 - t * t; }
double linear_second(double t) { return 1.0 - t; }
double zdt3_second(double t) {
  return 1.0 - std::sqrt(t) - t * std::sin(10.0 * kPi * t);
}

// The first objective of the ZDT3 front lives on five disjoint intervals.
constexpr double kZdt3Segments[5][2] = {
    {0.0, 0.0830015349}, {0.182228728, 0.2577623634},
    {0.4093136748, 0.4538821041}, {0.6183967944, 0.6525117038},
    {0.8233317983, 0.8518328654}};

std::vector<ObjectiveVector> zdt3_front(std::size_t count) {
  double total = 0.0;
  for (const auto& seg : kZdt3Segments) total += seg[1] - seg[0];
  std::vector<ObjectiveVector> front;
  front.reserve(count + 10);
  for (const auto& seg : kZdt3Segments) {
    const double len = seg[1] - seg[0];
    const std::size_t pts =
        std::max<std::size_t>(2, static_cast<std::size_t>(std::round(count * len / total)));
    for (std::size_t i = 0; i < pts; ++i) {
      const double t = seg[0] + len * static_cast<double>(i) / static_cast<double>(pts - 1);
      front.push_back({t, zdt3_second(t)});
    }
  }
  return front;
}

std::vector<ObjectiveVector> uf5_front(std::size_t) {
  std::vector<ObjectiveVector> front;
  for (int i = 0; i <= 20; ++i) {
    const double t = static_cast<double>(i) / 20.0;
    front.push_back({t, 1.0 - t});
  }
  return front;
}

std::vector<ObjectiveVector> uf6_front(std::size_t count) {
  std::vector<ObjectiveVector> front;
  front.push_back({0.0, 1.0});
  const std::size_t per = std::max<std::size_t>(2, count / 2);
  for (const auto& seg : {std::pair{0.25, 0.5}, std::pair{0.75, 1.0}}) {
    for (std::size_t i = 0; i < per; ++i) {
      const double t = seg.first + (seg.second - seg.first) * static_cast<double>(i) /
                                       static_cast<double>(per - 1);
      front.push_back({t, 1.0 - t});
    }
  }
  return front;
}

// Simplex-lattice directions pushed onto the unit sphere octant.
std::vector<ObjectiveVector> sphere_front(std::size_t count) {
  std::size_t h = 1;
  while ((h + 1) * (h + 2) / 2 < count) ++h;
  std::vector<ObjectiveVector> front;
  front.reserve((h + 1) * (h + 2) / 2);
  for (std::size_t i = 0; i <= h; ++i) {
    for (std::size_t j = 0; j + i <= h; ++j) {
      const std::size_t k = h - i - j;
      double w[3] = {static_cast<double>(i) / h, static_cast<double>(j) / h,
                     static_cast<double>(k) / h};
      const double norm = std::sqrt(square(w[0]) + square(w[1]) + square(w[2]));
      front.push_back({w[0] / norm, w[1] / norm, w[2] / norm});
    }
  }
  return front;
}

// Plane f1+f2+f3 = 1 with f1 restricted to the outer quarters of [0, 1-f3].
std::vector<ObjectiveVector> uf9_front(std::size_t count) {
  const std::size_t levels =
      std::max<std::size_t>(2, static_cast<std::size_t>(std::round(std::sqrt(count / 2.0))));
  const std::size_t per_level = std::max<std::size_t>(2, count / levels);
  std::vector<ObjectiveVector> front;
  front.reserve(levels * per_level + levels);
  for (std::size_t li = 0; li < levels; ++li) {
    const double f3 = static_cast<double>(li) / static_cast<double>(levels - 1);
    const double width = 1.0 - f3;
    if (width <= 0.0) {
      front.push_back({0.0, 0.0, 1.0});
      continue;
    }
    const std::size_t m1 = (per_level + 1) / 2;
    const std::size_t m2 = per_level - m1;
    for (std::size_t i = 0; i < m1; ++i) {
      const double f1 = 0.25 * width * static_cast<double>(i) /
                        static_cast<double>(std::max<std::size_t>(m1 - 1, 1));
      front.push_back({f1, width - f1, f3});
    }
    for (std::size_t i = 0; i < m2; ++i) {
      const double f1 = width * (0.75 + 0.25 * static_cast<double>(i) /
                                            static_cast<double>(std::max<std::size_t>(m2 - 1, 1)));
      front.push_back({f1, width - f1, f3});
    }
  }
  return front;
}

std::vector<ObjectiveVector> zdt6_front(std::size_t count) {
  return curve_front(count, zdt6_f1_min(), 1.0, convex_second);
}

// -------------------------------------------------------------------- catalog

struct Entry {
  const char* name;
  std::size_t default_dim;
  std::size_t min_dim;
  std::size_t objectives;
  ObjectiveVector (*evaluator)(const DecisionVector&);
  std::vector<ObjectiveVector> (*sampler)(std::size_t);
  void (*bounds)(std::size_t, std::vector<double>&, std::vector<double>&);
};

void bounds_unit(std::size_t d, std::vector<double>& lo, std::vector<double>& hi) {
  lo.assign(d, 0.0);
  hi.assign(d, 1.0);
}

void bounds_tail(std::size_t d, std::vector<double>& lo, std::vector<double>& hi,
                 double tail_lo, double tail_hi, std::size_t head) {
  lo.assign(d, tail_lo);
  hi.assign(d, tail_hi);
  for (std::size_t i = 0; i < head; ++i) {
    lo[i] = 0.0;
    hi[i] = 1.0;
  }
}

void bounds_zdt4(std::size_t d, std::vector<double>& lo, std::vector<double>& hi) {
  bounds_tail(d, lo, hi, -5.0, 5.0, 1);
}
void bounds_pm1(std::size_t d, std::vector<double>& lo, std::vector<double>& hi) {
  bounds_tail(d, lo, hi, -1.0, 1.0, 1);
}
void bounds_pm2(std::size_t d, std::vector<double>& lo, std::vector<double>& hi) {
  bounds_tail(d, lo, hi, -2.0, 2.0, 1);
}
void bounds_pm2_head2(std::size_t d, std::vector<double>& lo, std::vector<double>& hi) {
  bounds_tail(d, lo, hi, -2.0, 2.0, 2);
}

std::vector<ObjectiveVector> concave_front(std::size_t count) {
  return curve_front(count, 0.0, 1.0, concave_second);
}
std::vector<ObjectiveVector> convex_front(std::size_t count) {
  return curve_front(count, 0.0, 1.0, convex_second);
}
std::vector<ObjectiveVector> linear_front(std::size_t count) {
  return curve_front(count, 0.0, 1.0, linear_second);
}

constexpr Entry kCatalog[] = {
    {"ZDT1", 30, 2, 2, zdt1, concave_front, bounds_unit},
    {"ZDT2", 30, 2, 2, zdt2, convex_front, bounds_unit},
    {"ZDT3", 30, 2, 2, zdt3, zdt3_front, bounds_unit},
    {"ZDT4", 10, 2, 2, zdt4, concave_front, bounds_zdt4},
    {"ZDT6", 10, 2, 2, zdt6, zdt6_front, bounds_unit},
    {"UF1", 30, 3, 2, uf1, concave_front, bounds_pm1},
    {"UF2", 30, 3, 2, uf2, concave_front, bounds_pm1},
    {"UF3", 30, 3, 2, uf3, concave_front, bounds_unit},
    {"UF4", 30, 3, 2, uf4, convex_front, bounds_pm2},
    {"UF5", 30, 3, 2, uf5, uf5_front, bounds_pm1},
    {"UF6", 30, 3, 2, uf6, uf6_front, bounds_pm1},
    {"UF7", 30, 3, 2, uf7, linear_front, bounds_pm1},
    {"UF8", 30, 5, 3, uf8, sphere_front, bounds_pm2_head2},
    {"UF9", 30, 5, 3, uf9, uf9_front, bounds_pm2_head2},
    {"UF10", 30, 5, 3, uf10, sphere_front, bounds_pm2_head2},
};

const Entry& find_entry(const std::string& name) {
  std::string upper;
  upper.reserve(name.size());
  for (char c : name) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  for (const Entry& e : kCatalog) {
    if (upper == e.name) return e;
  }
  throw std::invalid_argument("unknown problem: " + name);
}

}  // namespace

std::vector<std::string> problem_names() {
  std::vector<std::string> names;
  for (const Entry& e : kCatalog) names.emplace_back(e.name);
  return names;
}

ProblemSpec make_problem(const std::string& name, std::optional<std::size_t> dimension) {
  const Entry& entry = find_entry(name);
  const std::size_t d = dimension.value_or(entry.default_dim);
  if (d < entry.min_dim) {
    throw std::invalid_argument(std::string(entry.name) + ": dimension must be at least " +
                                std::to_string(entry.min_dim));
  }
  ProblemSpec spec;
  spec.name = entry.name;
  spec.dimension = d;
  spec.objectives = entry.objectives;
  entry.bounds(d, spec.lower, spec.upper);
  spec.evaluator = entry.evaluator;
  auto sampler = entry.sampler;
  spec.pf_sampler = [sampler](std::size_t count) { return sampler(count); };
  return spec;
}

std::vector<ObjectiveVector> true_pf_samples(const std::string& name, std::size_t count) {
  return find_entry(name).sampler(count);
}

}  // namespace llmoea
