/**
 * @file search.hpp
 * @brief Branch-and-prune cover of the bicuspid parameter space.
 *
 * Boxes are bisected until every leaf is infeasible, eliminated by a killer
 * word (0 < |p| < 1 throughout), or carries a candidate relator (|p| < 1 with
 * p possibly zero), in which case pi (d(w) - 2) bounds the covolume of any
 * discrete group living there. Leaves that exhaust the budgets stay
 * undecided, and the global bound is then reported as unavailable.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bicusp/bicuspid.hpp"
#include "bicusp/words.hpp"

namespace bicusp {

struct SearchConfig {
  double area_bound = 6.0;
  int max_d = 4;
  int max_exp = 2;
  int max_depth = 12;
  double min_box_width = 1e-3;
  int word_budget_per_box = 2000;
  int worker_count = 1;
  std::size_t max_boxes = 1'000'000;
  /// Try the parent's most promising word before the canonical list.
  bool parent_word_first = true;
  /// Apply the normalization constraints; off only for auditing specific points.
  bool enforce_normalization = true;
  bool lattice_reduction = false;
  /// Replaces param_space(area_bound) as the root, e.g. for slices.
  std::optional<ParamBox> root;

  void validate() const {
    if (!std::isfinite(area_bound) || area_bound <= 0.0) throw std::invalid_argument("area_bound must be > 0");
    if (max_d < 1) throw std::invalid_argument("max_d must be >= 1");
    if (max_exp < 1) throw std::invalid_argument("max_exp must be >= 1");
    if (max_depth < 1 || max_depth > 64) throw std::invalid_argument("max_depth must be in [1, 64]");
    if (!(min_box_width > 0.0)) throw std::invalid_argument("min_box_width must be > 0");
    if (word_budget_per_box < 1) throw std::invalid_argument("word_budget_per_box must be >= 1");
    if (worker_count < 1) throw std::invalid_argument("worker_count must be >= 1");
    if (max_boxes < 1) throw std::invalid_argument("max_boxes must be >= 1");
  }
};

enum class BoxStatus { EliminatedInfeasible, EliminatedKiller, Candidate, Undecided };

inline const char* to_string(BoxStatus s) {
  switch (s) {
    case BoxStatus::EliminatedInfeasible: return "eliminated_infeasible";
    case BoxStatus::EliminatedKiller: return "eliminated_killer";
    case BoxStatus::Candidate: return "candidate";
    case BoxStatus::Undecided: return "undecided";
  }
  return "?";
}

inline BoxStatus box_status_from_string(std::string_view s) {
  for (auto st : {BoxStatus::EliminatedInfeasible, BoxStatus::EliminatedKiller, BoxStatus::Candidate,
                  BoxStatus::Undecided})
    if (s == to_string(st)) return st;
  throw std::invalid_argument("unknown box status '" + std::string(s) + "'");
}

struct BoxVerdict {
  ParamBox box;
  BoxStatus status = BoxStatus::Undecided;
  /// Killer word for EliminatedKiller, relator word for Candidate.
  std::optional<Word> word;
  /// Word with the smallest upper bound on |p|; handed to children.
  std::optional<Word> best_word;
  std::size_t words_evaluated = 0;

  double volume_bound() const { return word ? bicusp::volume_bound(*word) : 0.0; }
};

/// Global covolume bound V: finite, unavailable (undecided leaves), or the
/// -infinity sentinel when nothing non-free survives.
struct GlobalBound {
  enum class Kind { Finite, Unbounded, NegativeInfinity };
  Kind kind = Kind::NegativeInfinity;
  double value = -std::numeric_limits<double>::infinity();
};

struct SearchStats {
  std::size_t boxes_tested = 0;
  std::size_t words_evaluated = 0;
  std::size_t word_list_size = 0;
  int max_depth_reached = 0;
  bool incomplete = false;
  double wall_seconds = 0.0;
};

struct SearchReport {
  SearchConfig config;
  std::vector<BoxVerdict> leaves;
  GlobalBound global_volume_bound;
  SearchStats stats;

  std::size_t count(BoxStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(leaves.begin(), leaves.end(), [s](const BoxVerdict& v) { return v.status == s; }));
  }
};

/// Bisects the widest coordinate; ties go to the earliest coordinate.
inline std::pair<ParamBox, ParamBox> subdivide(const ParamBox& box) {
  int k = 0;
  for (int i = 1; i < kNumCoords; ++i)
    if (box.coords[i].width() > box.coords[k].width()) k = i;
  const RealInterval& x = box.coords[k];
  if (!(x.width() > 0.0)) throw std::invalid_argument("subdivide: box has zero width in every coordinate");
  const double mid = x.mid();
  if (!(x.lo() < mid && mid < x.hi())) throw std::invalid_argument("subdivide: box too thin to bisect");
  std::pair<ParamBox, ParamBox> out{box, box};
  out.first.coords[k] = RealInterval(x.lo(), mid);
  out.second.coords[k] = RealInterval(mid, x.hi());
  out.first.path += '0';
  out.second.path += '1';
  return out;
}

/// Product of the widths over the coordinates where the reference box has
/// positive width. Used for cover accounting.
inline double box_measure(const ParamBox& box, const ParamBox& reference) {
  double v = 1.0;
  for (int i = 0; i < kNumCoords; ++i)
    if (reference.coords[i].width() > 0.0) v *= box.coords[i].width();
  return v;
}

/// Tests words against a box: the first eliminating word wins, otherwise the
/// candidate relator of lowest d(w), otherwise undecided.
inline BoxVerdict test_box(const ParamBox& box, std::span<const Word> words, const SearchConfig& cfg,
                           const Word* hint = nullptr) {
  BoxVerdict verdict;
  verdict.box = box;
  if (cfg.enforce_normalization &&
      box_in_param_space(box, cfg.area_bound, {cfg.lattice_reduction}) == Feasibility::Outside) {
    verdict.status = BoxStatus::EliminatedInfeasible;
    return verdict;
  }

  const GeneratorTriple gens = gens_from_params(box);
  double best_upper = std::numeric_limits<double>::infinity();
  const Word* candidate = nullptr;

  auto try_word = [&](const Word& w) {
    ++verdict.words_evaluated;
    const RealInterval abs_p = abs_bounds(evaluate_word(w, gens).m21);
    if (abs_p.hi() < best_upper) {
      best_upper = abs_p.hi();
      verdict.best_word = w;
    }
    switch (classify_lower_left(abs_p)) {
      case KillerVerdict::Eliminates:
        verdict.status = BoxStatus::EliminatedKiller;
        verdict.word = w;
        return true;
      case KillerVerdict::CandidateRelator:
        if (candidate == nullptr || w.d() < candidate->d()) candidate = &w;
        return false;
      case KillerVerdict::Inconclusive: return false;
    }
    return false;
  };

  if (hint != nullptr && cfg.parent_word_first && try_word(*hint)) return verdict;
  const std::size_t budget = std::min(words.size(), static_cast<std::size_t>(cfg.word_budget_per_box));
  for (std::size_t i = 0; i < budget; ++i)
    if (try_word(words[i])) return verdict;

  if (candidate != nullptr) {
    verdict.status = BoxStatus::Candidate;
    verdict.word = *candidate;
  } else {
    verdict.status = BoxStatus::Undecided;
  }
  return verdict;
}

inline GlobalBound aggregate_volume_bound(std::span<const BoxVerdict> leaves) {
  GlobalBound g;
  for (const auto& leaf : leaves) {
    if (leaf.status == BoxStatus::Undecided) return {GlobalBound::Kind::Unbounded, std::numeric_limits<double>::infinity()};
    // Candidates with pi (d - 2) <= 0 cannot host a finite-covolume non-free group.
    if (leaf.status == BoxStatus::Candidate && volume_bound_pi_multiple(*leaf.word) > 0) {
      const double v = leaf.volume_bound();
      if (g.kind == GlobalBound::Kind::NegativeInfinity || v > g.value) g = {GlobalBound::Kind::Finite, v};
    }
  }
  return g;
}

namespace detail {

// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Level-by-level bisection from the root box. The report depends only on
/// the config, never on worker_count or scheduling.
inline SearchReport run_search(const SearchConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  SearchReport report;
  report.config = cfg;

  std::optional<ParamBox> root = cfg.root ? cfg.root : param_space(cfg.area_bound);
  if (!root) {
    report.global_volume_bound = {};
    return report;
  }
  root->path.clear();

  const std::vector<Word> words =
      enumerate_words(cfg.max_d, cfg.max_exp, static_cast<std::size_t>(cfg.word_budget_per_box));
  report.stats.word_list_size = words.size();

  struct Pending {
    ParamBox box;
    std::optional<Word> hint;
  };
  std::vector<Pending> level{{*root, std::nullopt}};
  std::vector<BoxVerdict> results;

  while (!level.empty()) {
    if (report.stats.boxes_tested + level.size() > cfg.max_boxes) {
      report.stats.incomplete = true;
      for (auto& p : level) {
        BoxVerdict v;
        v.box = std::move(p.box);
        v.status = BoxStatus::Undecided;
        report.leaves.push_back(std::move(v));
      }
      break;
    }

    results.assign(level.size(), {});
    detail::parallel_for(level.size(), cfg.worker_count, [&](std::size_t i) {
      const Word* hint = level[i].hint ? &*level[i].hint : nullptr;
      results[i] = test_box(level[i].box, words, cfg, hint);
    });
    report.stats.boxes_tested += level.size();

    std::vector<Pending> next;
    for (auto& v : results) {
      report.stats.words_evaluated += v.words_evaluated;
      report.stats.max_depth_reached = std::max(report.stats.max_depth_reached, v.box.depth());
      const bool refine = v.status == BoxStatus::Undecided && v.box.depth() < cfg.max_depth &&
                          v.box.max_width() > cfg.min_box_width;
      if (refine) {
        auto [lo, hi] = subdivide(v.box);
        next.push_back({std::move(lo), v.best_word});
        next.push_back({std::move(hi), v.best_word});
      } else {
        report.leaves.push_back(std::move(v));
      }
    }
    level = std::move(next);
  }

  std::sort(report.leaves.begin(), report.leaves.end(),
            [](const BoxVerdict& l, const BoxVerdict& r) { return l.box.path < r.box.path; });
  report.global_volume_bound = aggregate_volume_bound(report.leaves);
  report.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

struct AuditViolation {
  std::string path;
  Params point;
  std::string reason;
  double value = 0.0;
};

struct AuditSummary {
  std::size_t boxes_checked = 0;
  std::size_t points_checked = 0;
  std::vector<AuditViolation> violations;

  bool passed() const { return violations.empty(); }
};

namespace detail {

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

inline Params sample_point(const ParamBox& box, std::mt19937_64& rng) {
  std::array<double, kNumCoords> v{};
  for (int i = 0; i < kNumCoords; ++i) {
    const auto& x = box.coords[i];
    v[i] = x.is_point() ? x.lo() : std::uniform_real_distribution<double>(x.lo(), x.hi())(rng);
  }
  return {{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}};
}

}  // namespace detail

/// Independent float audit: re-evaluates each killer word at sampled points
/// and checks 0 < |p| < 1 (tolerance 1e-9); infeasible leaves are checked to
/// contain no strictly feasible sample.
inline AuditSummary verify_report(const SearchReport& report, int samples_per_box, double tol = 1e-9) {
  AuditSummary out;
  const double r = 2.0 * report.config.area_bound / std::sqrt(3.0);
  for (const auto& leaf : report.leaves) {
    const bool killer = leaf.status == BoxStatus::EliminatedKiller;
    const bool infeasible = leaf.status == BoxStatus::EliminatedInfeasible;
    if (!killer && !infeasible) continue;
    if (killer && !leaf.word) {
      out.violations.push_back({leaf.box.path, {}, "killer leaf without word", 0.0});
      continue;
    }
    ++out.boxes_checked;
    std::mt19937_64 rng(0x5eedULL ^ detail::fnv1a(leaf.box.path));
    for (int s = 0; s <= samples_per_box; ++s) {
      const Params p = s == 0 ? Params{leaf.box.a().mid(), leaf.box.b().mid(), leaf.box.c().mid()}
                              : detail::sample_point(leaf.box, rng);
      ++out.points_checked;
      if (killer) {
        const double abs_p = std::abs(evaluate_word(*leaf.word, p).y);
        if (!(abs_p > 0.0) || abs_p >= 1.0 + tol)
          out.violations.push_back({leaf.box.path, p, "killer word has |p| outside (0, 1)", abs_p});
      } else {
        const double aa = std::abs(p.a), ab = std::abs(p.b), ac = std::abs(p.c);
        bool strictly_feasible = aa > 1.0 + tol && aa < ab - tol && ab < r - tol && ac < ab - tol &&
                                 p.a.real() > tol && p.a.imag() > tol && p.b.imag() > tol;
        if (report.config.lattice_reduction)
          strictly_feasible = strictly_feasible && std::abs((p.b * std::conj(p.a)).real()) < aa * aa / 2 - tol;
        if (strictly_feasible)
          out.violations.push_back({leaf.box.path, p, "infeasible leaf contains a feasible point", aa});
      }
    }
  }
  return out;
}

}  // namespace bicusp
