#pragma once

#include <cstdint>
#include <vector>

#include "newspulse/article.hpp"
#include "newspulse/idf.hpp"

namespace newspulse {

// Sparse idf-weighted presence vector. `ids` hold table token ids in
// ascending order; `weights[i]` is the idf of ids[i] and is always > 0
// (zero-idf terms cannot move a cosine and are dropped at construction).
struct WeightedVector {
  std::vector<std::uint32_t> ids;
  std::vector<double> weights;
  double norm = 0.0;

  bool empty() const { return ids.empty(); }
  std::size_t size() const { return ids.size(); }
  double weight_of(std::uint32_t id) const;  // 0 when absent
};

WeightedVector vectorize_tokens(const std::vector<std::string>& tokens,
                                const IdfTable& table);
WeightedVector vectorize(const Article& article, const IdfTable& table);

// Cosine similarity in [0,1]. Vectors must come from the same table.
// Either vector empty (or zero-norm) gives 0.
double cosine(const WeightedVector& a, const WeightedVector& b);

// Shared-weight dot product, the merge-join cosine numerator.
double dot(const WeightedVector& a, const WeightedVector& b);

}  // namespace newspulse
