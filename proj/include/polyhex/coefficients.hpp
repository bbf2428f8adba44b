#pragma once

#include <json.hpp>

#include "polyhex/qseries.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polyhex {

enum class Model { all, column_convex, level1, level2, incomplete_level1 };

constexpr std::string_view to_string(Model m) {
  switch (m) {
    case Model::all: return "all";
    case Model::column_convex: return "column_convex";
    case Model::level1: return "level1";
    case Model::level2: return "level2";
    case Model::incomplete_level1: return "incomplete_level1";
  }
  return "?";
}

inline Model model_from_string(std::string_view s) {
  for (Model m : {Model::all, Model::column_convex, Model::level1, Model::level2, Model::incomplete_level1})
    if (to_string(m) == s) return m;
  throw std::invalid_argument("unknown model: " + std::string(s));
}

// Level m in {0, 1, 2} as a model tag.
inline Model model_for_level(int m) {
  switch (m) {
    case 0: return Model::column_convex;
    case 1: return Model::level1;
    case 2: return Model::level2;
    default: throw std::invalid_argument("only levels 0, 1 and 2 have a model tag");
  }
}

// a_n for n = 1 .. max_area.
struct CoefficientTable {
  Model model = Model::all;
  std::vector<Integer> counts;  // counts[n - 1] = a_n

  CoefficientTable() = default;
  CoefficientTable(Model m, std::vector<Integer> c) : model(m), counts(std::move(c)) {}

  int max_area() const { return static_cast<int>(counts.size()); }

  const Integer& operator()(int n) const {
    if (n < 1 || n > max_area()) throw std::out_of_range("area outside table");
    return counts[static_cast<std::size_t>(n - 1)];
  }

  // First `n` terms.
  CoefficientTable prefix(int n) const {
    if (n > max_area()) throw std::out_of_range("prefix longer than table");
    return {model, std::vector<Integer>(counts.begin(), counts.begin() + n)};
  }

  friend bool operator==(const CoefficientTable&, const CoefficientTable&) = default;
};

// Coefficients 1..N of a counting series as a table; fails on non-integers.
inline CoefficientTable table_from_series(Model model, const TruncatedSeries& s, int max_area) {
  if (max_area > s.order()) throw std::out_of_range("series shorter than requested table");
  std::vector<Integer> counts;
  for (int n = 1; n <= max_area; ++n) {
    if (s[n].get_den() != 1) throw std::domain_error("non-integral counting coefficient");
    counts.push_back(s[n].get_num());
  }
  return {model, std::move(counts)};
}

inline nlohmann::json to_json(const CoefficientTable& t) {
  nlohmann::json j;
  j["model"] = std::string(to_string(t.model));
  j["max_area"] = t.max_area();
  auto counts = nlohmann::json::array();
  for (const auto& c : t.counts) counts.push_back(c.get_str());
  j["counts"] = counts;
  return j;
}

inline CoefficientTable table_from_json(const nlohmann::json& j) {
  CoefficientTable t;
  t.model = model_from_string(j.at("model").get<std::string>());
  for (const auto& c : j.at("counts")) t.counts.emplace_back(c.get<std::string>(), 10);
  if (j.at("max_area").get<int>() != t.max_area())
    throw std::invalid_argument("max_area disagrees with the number of counts");
  return t;
}

}  // namespace polyhex
