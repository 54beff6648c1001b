#pragma once

// Exact entropy and mutual-information calculus over a finite joint pmf,
// and the information-theoretic limit
//
//   sum_i I(X_i; y) <= H(y) + sum_i I(X_i; X_{-i}).
//
// Everything is computed by exhaustive marginalization; nothing is estimated.

#include <cstddef>
#include <span>
#include <vector>

#include "piranha/error.hpp"

namespace piranha {

enum class EntropyUnits { Nats, Bits };

struct Atom {
  std::vector<std::size_t> tuple;
  double prob = 0.0;
};

class DiscreteJoint {
 public:
  static constexpr std::size_t kMaxStates = 1'000'000;

  /// `pmf` is dense in row-major order over `alphabet_sizes` (the last
  /// variable varies fastest).
  DiscreteJoint(std::vector<std::size_t> alphabet_sizes, std::vector<double> pmf);

  /// Sparse construction; unlisted tuples have probability zero. Duplicate
  /// tuples are rejected.
  static DiscreteJoint from_atoms(std::vector<std::size_t> alphabet_sizes, std::span<const Atom> atoms);

  std::size_t num_vars() const noexcept { return sizes_.size(); }
  const std::vector<std::size_t>& alphabet_sizes() const noexcept { return sizes_; }
  std::size_t num_states() const noexcept { return pmf_.size(); }
  const std::vector<double>& pmf() const noexcept { return pmf_; }
  double probability(std::span<const std::size_t> tuple) const;

  /// Dense marginal over `vars`, in the order given.
  std::vector<double> marginal(std::span<const std::size_t> vars) const;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> strides_;
  std::vector<double> pmf_;
};

/// H(vars). 0 log 0 counts as 0.
double entropy(const DiscreteJoint& joint, std::span<const std::size_t> vars,
               EntropyUnits units = EntropyUnits::Nats);

/// H(target | given) by direct summation of p(t, g) log(p(g) / p(t, g)).
/// An empty `given` yields H(target).
double conditional_entropy(const DiscreteJoint& joint, std::span<const std::size_t> target,
                           std::span<const std::size_t> given, EntropyUnits units = EntropyUnits::Nats);

/// I(a; b) = H(a) + H(b) - H(a, b). Zero when either side is empty.
double mutual_information(const DiscreteJoint& joint, std::span<const std::size_t> a,
                          std::span<const std::size_t> b, EntropyUnits units = EntropyUnits::Nats);

struct MIReport {
  std::size_t outcome_index = 0;
  std::vector<double> per_var_mi;          // I(X_i; y)
  std::vector<double> per_var_leaveout_mi;  // I(X_i; X_-i)
  double h_y = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = true;
  EntropyUnits units = EntropyUnits::Nats;

  bool operator==(const MIReport&) const = default;
};

inline constexpr double kInformationTolerance = 1e-12;

/// Every variable other than `outcome_index` is treated as a predictor.
MIReport mi_piranha_check(const DiscreteJoint& joint, std::size_t outcome_index,
                          EntropyUnits units = EntropyUnits::Nats);

/// floor(h_y / alpha): how many mutually independent variables can each
/// share at least alpha with y. Both arguments in the same units.
std::size_t max_independent_informative(double h_y, double alpha);

/// H(all) == sum_i H(v_i | v_1..v_{i-1}) within 1e-10 for `ordering`.
bool chain_rule_check(const DiscreteJoint& joint, std::span<const std::size_t> ordering);

}  // namespace piranha
