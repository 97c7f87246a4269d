#include "tnbn/factor.hpp"

#include <algorithm>
#include <numeric>

#include "tnbn/errors.hpp"

namespace tnbn {

namespace {

std::size_t product(const std::vector<std::size_t>& cards) {
  return std::accumulate(cards.begin(), cards.end(), std::size_t{1}, std::multiplies<>());
}

std::vector<std::size_t> strides_of(const std::vector<std::size_t>& cards) {
  std::vector<std::size_t> strides(cards.size());
  std::size_t s = 1;
  for (std::size_t i = cards.size(); i-- > 0;) {
    strides[i] = s;
    s *= cards[i];
  }
  return strides;
}

}  // namespace

Factor::Factor(std::vector<std::size_t> scope, std::vector<std::size_t> cards,
               std::vector<double> values)
    : scope_(std::move(scope)), cards_(std::move(cards)), values_(std::move(values)) {
  if (scope_.size() != cards_.size() || values_.size() != product(cards_)) {
    throw DomainError("factor table size does not match its scope");
  }
}

Factor Factor::scalar(double v) { return Factor({}, {}, {v}); }

bool Factor::mentions(std::size_t var) const {
  return std::find(scope_.begin(), scope_.end(), var) != scope_.end();
}

Factor Factor::multiply(const Factor& other) const {
  std::vector<std::size_t> scope;
  std::vector<std::size_t> cards;
  auto card_of = [&](std::size_t var) {
    for (std::size_t i = 0; i < scope_.size(); ++i)
      if (scope_[i] == var) return cards_[i];
    for (std::size_t i = 0; i < other.scope_.size(); ++i)
      if (other.scope_[i] == var) return other.cards_[i];
    return std::size_t{0};
  };
  scope = scope_;
  scope.insert(scope.end(), other.scope_.begin(), other.scope_.end());
  std::sort(scope.begin(), scope.end());
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  for (auto v : scope) cards.push_back(card_of(v));

  // Stride of each result variable inside each operand (0 when absent).
  auto operand_strides = [&](const Factor& f) {
    auto own = strides_of(f.cards_);
    std::vector<std::size_t> out(scope.size(), 0);
    for (std::size_t r = 0; r < scope.size(); ++r)
      for (std::size_t i = 0; i < f.scope_.size(); ++i)
        if (f.scope_[i] == scope[r]) out[r] = own[i];
    return out;
  };
  const auto sa = operand_strides(*this);
  const auto sb = operand_strides(other);

  std::vector<double> values(product(cards));
  std::vector<std::size_t> counter(scope.size(), 0);
  std::size_t ia = 0, ib = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = values_[ia] * other.values_[ib];
    for (std::size_t r = scope.size(); r-- > 0;) {
      if (++counter[r] < cards[r]) {
        ia += sa[r];
        ib += sb[r];
        break;
      }
      counter[r] = 0;
      ia -= sa[r] * (cards[r] - 1);
      ib -= sb[r] * (cards[r] - 1);
    }
  }
  return Factor(std::move(scope), std::move(cards), std::move(values));
}

Factor Factor::sum_out(std::size_t var) const {
  auto pos = std::find(scope_.begin(), scope_.end(), var);
  if (pos == scope_.end()) return *this;
  const std::size_t at = static_cast<std::size_t>(pos - scope_.begin());
  const auto strides = strides_of(cards_);
  const std::size_t inner = strides[at];
  const std::size_t card = cards_[at];

  std::vector<std::size_t> scope = scope_;
  std::vector<std::size_t> cards = cards_;
  scope.erase(scope.begin() + static_cast<std::ptrdiff_t>(at));
  cards.erase(cards.begin() + static_cast<std::ptrdiff_t>(at));
  std::vector<double> values(values_.size() / card, 0.0);
  const std::size_t outer = values.size() / inner;
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t s = 0; s < card; ++s)
      for (std::size_t i = 0; i < inner; ++i)
        values[o * inner + i] += values_[(o * card + s) * inner + i];
  return Factor(std::move(scope), std::move(cards), std::move(values));
}

Factor Factor::reduce(std::size_t var, std::size_t state) const {
  auto pos = std::find(scope_.begin(), scope_.end(), var);
  if (pos == scope_.end()) return *this;
  const std::size_t at = static_cast<std::size_t>(pos - scope_.begin());
  if (state >= cards_[at]) throw DomainError("factor reduce: state index out of range");
  const auto strides = strides_of(cards_);
  const std::size_t inner = strides[at];
  const std::size_t card = cards_[at];

  std::vector<std::size_t> scope = scope_;
  std::vector<std::size_t> cards = cards_;
  scope.erase(scope.begin() + static_cast<std::ptrdiff_t>(at));
  cards.erase(cards.begin() + static_cast<std::ptrdiff_t>(at));
  std::vector<double> values(values_.size() / card);
  const std::size_t outer = values.size() / inner;
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < inner; ++i)
      values[o * inner + i] = values_[(o * card + state) * inner + i];
  return Factor(std::move(scope), std::move(cards), std::move(values));
}

double Factor::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

Factor multiply_all(std::span<const Factor> factors) {
  Factor acc;
  for (const auto& f : factors) acc = acc.multiply(f);
  return acc;
}

}  // namespace tnbn
