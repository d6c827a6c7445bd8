#pragma once

#include "quadrature.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gg {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kDefaultDigits = 20;

// On-disk rule: every real is a decimal string so no digits are lost
struct RuleFile {
  int degree = 0;
  int continuity = 0;
  int elements = 0;
  std::string a, b;
  std::vector<std::string> breakpoints;
  std::vector<int> multiplicities;
  std::string kind = "gauss";
  int pinned = -1;
  std::string precision = "double";
  std::string residual_norm;
  std::string generator = std::string("gg ") + kVersion;
  std::vector<std::string> nodes, weights;
  std::map<std::string, std::string> asymptotic;
};

RuleFile make_rulefile(const Rule<ext>& q, int d, int c, const KnotVector<ext>& kv,
                       Precision p, const ext& residual_norm, int digits = kDefaultDigits);

std::string to_json(const RuleFile& f);
RuleFile rulefile_from_json(const std::string& text);
void save_rulefile(const RuleFile& f, const std::string& path);
RuleFile load_rulefile(const std::string& path);
void save_csv(const RuleFile& f, const std::string& path);
std::string to_csv(const RuleFile& f);

Rule<ext> rule_of(const RuleFile& f);
KnotVector<ext> knots_of(const RuleFile& f);

// breakpoint/multiplicity input for generate; multiplicities are optional
struct KnotInput {
  std::vector<std::string> breakpoints;
  std::vector<int> multiplicities;
};
KnotInput load_knot_file(const std::string& path);
KnotInput knot_input_from_json(const std::string& text);

}  // namespace gg
