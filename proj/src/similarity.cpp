#include "newspulse/similarity.hpp"

#include <algorithm>
#include <cmath>

namespace newspulse {

double WeightedVector::weight_of(std::uint32_t id) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return 0.0;
  return weights[it - ids.begin()];
}

WeightedVector vectorize_tokens(const std::vector<std::string>& tokens,
                                const IdfTable& table) {
  WeightedVector v;
  v.ids.reserve(tokens.size());
  for (const auto& tok : tokens) {
    auto id = table.token_id(tok);
    if (!id) continue;  // out-of-vocabulary terms carry no weight
    if (table.idf_by_id(*id) <= 0.0) continue;
    v.ids.push_back(*id);
  }
  std::sort(v.ids.begin(), v.ids.end());
  v.ids.erase(std::unique(v.ids.begin(), v.ids.end()), v.ids.end());
  v.weights.reserve(v.ids.size());
  double sq = 0.0;
  for (auto id : v.ids) {
    double w = table.idf_by_id(id);
    v.weights.push_back(w);
    sq += w * w;
  }
  v.norm = std::sqrt(sq);
  return v;
}

WeightedVector vectorize(const Article& article, const IdfTable& table) {
  return vectorize_tokens(article.tokens, table);
}

double dot(const WeightedVector& a, const WeightedVector& b) {
  // merge join over ascending ids; shared terms contribute idf^2
  double acc = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.ids.size() && j < b.ids.size()) {
    if (a.ids[i] < b.ids[j]) {
      ++i;
    } else if (a.ids[i] > b.ids[j]) {
      ++j;
    } else {
      acc += a.weights[i] * b.weights[j];
      ++i;
      ++j;
    }
  }
  return acc;
}

double cosine(const WeightedVector& a, const WeightedVector& b) {
  if (a.norm == 0.0 || b.norm == 0.0) return 0.0;
  double c = dot(a, b) / (a.norm * b.norm);
  // identical token sets can land a hair above 1 in floating point
  if (c > 1.0) return 1.0;
  if (c < 0.0) return 0.0;
  return c;
}

}  // namespace newspulse
