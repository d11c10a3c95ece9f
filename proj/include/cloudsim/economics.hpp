#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cloudsim/errors.hpp"

namespace cloudsim {

enum class PriceCategory {
  kStorageGbMonth,
  kGeneralCompute,
  kOptimizedCompute,
  kGeneralDiscounted,
  kOptimizedDiscounted,
  kSpot,
  kAccelerated,
  kGpuA100,
};

inline const char* to_string(PriceCategory c) {
  switch (c) {
    case PriceCategory::kStorageGbMonth: return "storage-gb-month";
    case PriceCategory::kGeneralCompute: return "general-compute";
    case PriceCategory::kOptimizedCompute: return "optimized-compute";
    case PriceCategory::kGeneralDiscounted: return "general-discounted";
    case PriceCategory::kOptimizedDiscounted: return "optimized-discounted";
    case PriceCategory::kSpot: return "spot";
    case PriceCategory::kAccelerated: return "accelerated";
    case PriceCategory::kGpuA100: return "gpu-a100";
  }
  return "unknown";
}

inline bool is_compute_category(PriceCategory c) {
  return c != PriceCategory::kStorageGbMonth;
}

struct PriceBook {
  std::string name;
  // provider -> category -> unit rate in USD
  std::map<std::string, std::map<PriceCategory, double>> rates;

  std::optional<double> rate(const std::string& provider,
                             PriceCategory category) const {
    auto p = rates.find(provider);
    if (p == rates.end()) return std::nullopt;
    auto c = p->second.find(category);
    if (c == p->second.end()) return std::nullopt;
    return c->second;
  }
};

// 2022 list prices for the three hyperscalers plus the GPU specialist.
inline PriceBook paper_price_book() {
  PriceBook book;
  book.name = "paper-2022";
  using PC = PriceCategory;
  book.rates["aws"] = {
      {PC::kStorageGbMonth, 0.023},   {PC::kGeneralCompute, 0.1344},
      {PC::kOptimizedCompute, 0.153}, {PC::kGeneralDiscounted, 0.079},
      {PC::kOptimizedDiscounted, 0.094}, {PC::kSpot, 0.068},
      {PC::kAccelerated, 0.90},       {PC::kGpuA100, 4.10},
  };
  book.rates["azure"] = {
      {PC::kStorageGbMonth, 0.021},    {PC::kGeneralCompute, 0.166},
      {PC::kOptimizedCompute, 0.1690}, {PC::kGeneralDiscounted, 0.0974},
      {PC::kOptimizedDiscounted, 0.10}, {PC::kSpot, 0.0259},
      {PC::kAccelerated, 0.526},       {PC::kGpuA100, 3.67},
  };
  book.rates["gcp"] = {
      {PC::kStorageGbMonth, 0.023},    {PC::kGeneralCompute, 0.150924},
      {PC::kOptimizedCompute, 0.2351}, {PC::kGeneralDiscounted, 0.095092},
      {PC::kOptimizedDiscounted, 0.13156}, {PC::kSpot, 0.0540},
      {PC::kAccelerated, 3.678},       {PC::kGpuA100, 3.67},
  };
  book.rates["coreweave"] = {
      {PC::kGpuA100, 2.06},
  };
  return book;
}

struct LedgerEntry {
  std::string resource_id;
  std::string provider;
  PriceCategory category = PriceCategory::kGeneralCompute;
  double quantity = 0.0;  // hours, or GB-months for storage
  double rate = 0.0;
  double amount = 0.0;
};

struct CostLedger {
  std::vector<LedgerEntry> entries;

  double total() const {
    double t = 0.0;
    for (const auto& e : entries) t += e.amount;
    return t;
  }
};

inline void accrue(CostLedger& ledger, const std::string& resource_id,
                   const std::string& provider, PriceCategory category,
                   double quantity, const PriceBook& book) {
  auto rate = book.rate(provider, category);
  if (!rate) {
    throw UnpricedCategoryError(std::string("no rate for ") + provider + "/" +
                                to_string(category));
  }
  ledger.entries.push_back(
      {resource_id, provider, category, quantity, *rate, quantity * *rate});
}

// Committed-spend discount, applied per hour of each compute entry: the
// first `commitment` dollars of each usage hour are billed at
// (1 - discount) * rate, the overflow at pay-as-you-go.
inline CostLedger apply_savings_plan(const CostLedger& ledger,
                                     double commitment_per_hour,
                                     double discount = 0.65) {
  discount = std::clamp(discount, 0.0, 0.65);
  CostLedger out = ledger;
  if (commitment_per_hour <= 0.0) return out;
  for (auto& e : out.entries) {
    if (!is_compute_category(e.category)) continue;
    double covered = std::min(e.rate, commitment_per_hour);
    double hourly = covered * (1.0 - discount) + (e.rate - covered);
    e.amount = e.quantity * hourly;
  }
  return out;
}

struct GpuRankEntry {
  std::string provider;
  double price = 0.0;
  int rank = 1;  // ties share a rank
};

inline std::vector<GpuRankEntry> gpu_rank(const PriceBook& book) {
  static const std::vector<std::string> kProviders = {"aws", "azure",
                                                      "coreweave", "gcp"};
  std::vector<GpuRankEntry> out;
  for (const auto& p : kProviders) {
    auto r = book.rate(p, PriceCategory::kGpuA100);
    if (!r) throw MissingGpuPricesError("missing A100 price for " + p);
    out.push_back({p, *r, 0});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const GpuRankEntry& a, const GpuRankEntry& b) {
                     return a.price < b.price;
                   });
  int rank = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i == 0 || out[i].price > out[i - 1].price) rank = static_cast<int>(i) + 1;
    out[i].rank = rank;
  }
  return out;
}

// Providers tied within a criterion share one group; groups are listed
// most-preferred first.
using CriterionRanking = std::vector<std::vector<std::string>>;

struct DecisionMatrix {
  // criterion -> ordered tie groups of providers
  std::map<std::string, CriterionRanking> criteria;
  std::map<std::string, double> weights;  // normalized before scoring
};

// Ordinal rankings as published: ">=" qualifiers score as strict.
inline DecisionMatrix paper_decision_matrix() {
  DecisionMatrix m;
  m.criteria["security"] = {{"azure"}, {"aws"}, {"gcp"}};
  m.criteria["data-storage"] = {{"azure"}, {"gcp"}, {"aws"}};
  m.criteria["cost"] = {{"azure"}, {"aws"}, {"gcp"}};
  m.criteria["performance"] = {{"gcp", "aws", "azure"}};
  m.criteria["reliability"] = {{"azure", "aws"}, {"gcp"}};
  m.criteria["kubernetes-automation"] = {{"aws"}, {"gcp"}, {"azure"}};
  m.criteria["identity-management"] = {{"azure"}, {"aws", "gcp"}};
  m.criteria["availability-zones"] = {{"aws"}, {"azure"}, {"gcp"}};
  for (const auto& [name, ranking] : m.criteria) m.weights[name] = 1.0;
  return m;
}

struct McdaResult {
  struct Row {
    std::string provider;
    double score = 0.0;
  };
  std::vector<Row> ranking;  // best first
  std::string winner;
  bool tie = false;
};

// Weighted ordinal scoring: rank 1 earns n points down to 1 for rank n,
// ties share the mean of the spanned points. Weighted-sum argmax; ties
// broken by the cost score, then the identity-management score.
inline McdaResult mcda_rank(const DecisionMatrix& matrix) {
  std::map<std::string, double> total;
  std::map<std::string, double> cost_score;
  std::map<std::string, double> iam_score;

  double weight_sum = 0.0;
  for (const auto& [name, w] : matrix.weights) weight_sum += w;

  for (const auto& [name, ranking] : matrix.criteria) {
    std::size_t n = 0;
    for (const auto& group : ranking) n += group.size();
    double w = weight_sum > 0.0 ? matrix.weights.at(name) / weight_sum : 0.0;

    std::size_t position = 0;
    for (const auto& group : ranking) {
      // Mean of the points spanned by this tie group.
      double points = 0.0;
      for (std::size_t k = 0; k < group.size(); ++k) {
        points += static_cast<double>(n - (position + k));
      }
      points /= static_cast<double>(group.size());
      for (const auto& provider : group) {
        total[provider] += w * points;
        if (name == "cost") cost_score[provider] = points;
        if (name == "identity-management") iam_score[provider] = points;
      }
      position += group.size();
    }
  }

  McdaResult result;
  for (const auto& [provider, score] : total) {
    result.ranking.push_back({provider, score});
  }
  std::stable_sort(result.ranking.begin(), result.ranking.end(),
                   [&](const McdaResult::Row& a, const McdaResult::Row& b) {
                     if (a.score != b.score) return a.score > b.score;
                     if (cost_score[a.provider] != cost_score[b.provider]) {
                       return cost_score[a.provider] > cost_score[b.provider];
                     }
                     return iam_score[a.provider] > iam_score[b.provider];
                   });
  if (!result.ranking.empty()) {
    result.winner = result.ranking.front().provider;
    if (result.ranking.size() > 1) {
      const auto& a = result.ranking[0];
      const auto& b = result.ranking[1];
      result.tie = a.score == b.score &&
                   cost_score[a.provider] == cost_score[b.provider] &&
                   iam_score[a.provider] == iam_score[b.provider];
    }
  }
  return result;
}

struct BudgetAlert {
  std::size_t entry_index = 0;
  std::string resource_id;
  double running_total = 0.0;
};

// Fires once, on the entry whose accrual crosses the threshold.
inline std::optional<BudgetAlert> budget_check(const CostLedger& ledger,
                                               double threshold_usd) {
  if (threshold_usd <= 0.0) {
    throw Error("budget threshold must be positive");
  }
  double running = 0.0;
  for (std::size_t i = 0; i < ledger.entries.size(); ++i) {
    running += ledger.entries[i].amount;
    if (running > threshold_usd) {
      return BudgetAlert{i, ledger.entries[i].resource_id, running};
    }
  }
  return std::nullopt;
}

}  // namespace cloudsim
