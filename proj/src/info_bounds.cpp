#include "piranha/info_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace piranha {

namespace {

constexpr double kSumTolerance = 1e-12;

double to_units(double nats, EntropyUnits units) noexcept {
  return units == EntropyUnits::Bits ? nats / std::numbers::ln2 : nats;
}

void check_vars(const DiscreteJoint& joint, std::span<const std::size_t> vars) {
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (vars[k] >= joint.num_vars()) {
      std::ostringstream os;
      os << "variable index " << vars[k] << " out of range for " << joint.num_vars() << " variables";
      throw Error(ErrorCode::IndexOutOfRange, os.str());
    }
    for (std::size_t j = 0; j < k; ++j)
      if (vars[j] == vars[k])
        throw Error(ErrorCode::InvalidArgument, "variable " + std::to_string(vars[k]) + " listed twice");
  }
}

void check_disjoint(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  for (std::size_t x : a)
    if (std::find(b.begin(), b.end(), x) != b.end())
      throw Error(ErrorCode::OverlappingSubsets, "variable " + std::to_string(x) + " appears on both sides");
}

double entropy_of(std::span<const double> pmf) {
  double h = 0.0;
  for (double q : pmf)
    if (q > 0.0) h -= q * std::log(q);
  return h;
}

std::vector<std::size_t> sorted_union(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  std::vector<std::size_t> u(a.begin(), a.end());
  u.insert(u.end(), b.begin(), b.end());
  std::sort(u.begin(), u.end());
  return u;
}

double conditional_entropy_nats(const DiscreteJoint& joint, std::span<const std::size_t> target,
                                std::span<const std::size_t> given) {
  if (given.empty()) return entropy_of(joint.marginal(target));
  std::vector<std::size_t> vars(given.begin(), given.end());
  vars.insert(vars.end(), target.begin(), target.end());
  const auto both = joint.marginal(vars);

  std::size_t target_states = 1;
  for (std::size_t v : target) target_states *= joint.alphabet_sizes()[v];
  const std::size_t given_states = both.size() / target_states;

  double h = 0.0;
  for (std::size_t g = 0; g < given_states; ++g) {
    const auto block = std::span<const double>(both).subspan(g * target_states, target_states);
    const double pg = std::accumulate(block.begin(), block.end(), 0.0);
    for (double pgt : block)
      if (pgt > 0.0) h += pgt * std::log(pg / pgt);
  }
  return h;
}

double mutual_information_nats(const DiscreteJoint& joint, std::span<const std::size_t> a,
                               std::span<const std::size_t> b) {
  if (a.empty() || b.empty()) return 0.0;
  const auto u = sorted_union(a, b);
  return entropy_of(joint.marginal(a)) + entropy_of(joint.marginal(b)) - entropy_of(joint.marginal(u));
}

}  // namespace

DiscreteJoint::DiscreteJoint(std::vector<std::size_t> alphabet_sizes, std::vector<double> pmf)
    : sizes_(std::move(alphabet_sizes)), pmf_(std::move(pmf)) {
  if (sizes_.empty()) throw Error(ErrorCode::InvalidArgument, "a joint needs at least one variable");
  std::size_t states = 1;
  for (std::size_t s : sizes_) {
    if (s == 0) throw Error(ErrorCode::InvalidArgument, "alphabet sizes must be positive");
    if (states > kMaxStates / s) throw Error(ErrorCode::JointTooLarge, "joint exceeds 10^6 states");
    states *= s;
  }
  if (pmf_.size() != states) {
    std::ostringstream os;
    os << "pmf has " << pmf_.size() << " entries, alphabet product is " << states;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  double total = 0.0;
  for (double q : pmf_) {
    if (!(q >= 0.0) || !std::isfinite(q))
      throw Error(ErrorCode::InvalidDistribution, "probabilities must be finite and nonnegative");
    total += q;
  }
  if (!(std::abs(total - 1.0) <= kSumTolerance)) {
    std::ostringstream os;
    os.precision(17);
    os << "probabilities sum to " << total << ", not 1";
    throw Error(ErrorCode::InvalidDistribution, os.str());
  }
  strides_.assign(sizes_.size(), 1);
  for (std::size_t k = sizes_.size() - 1; k > 0; --k) strides_[k - 1] = strides_[k] * sizes_[k];
}

DiscreteJoint DiscreteJoint::from_atoms(std::vector<std::size_t> alphabet_sizes, std::span<const Atom> atoms) {
  std::size_t states = 1;
  for (std::size_t s : alphabet_sizes) {
    if (s == 0) throw Error(ErrorCode::InvalidArgument, "alphabet sizes must be positive");
    if (states > kMaxStates / s) throw Error(ErrorCode::JointTooLarge, "joint exceeds 10^6 states");
    states *= s;
  }
  std::vector<double> pmf(states, 0.0);
  std::vector<bool> seen(states, false);
  for (const auto& atom : atoms) {
    if (atom.tuple.size() != alphabet_sizes.size())
      throw Error(ErrorCode::DimensionMismatch, "atom tuple arity differs from the number of variables");
    std::size_t index = 0;
    for (std::size_t k = 0; k < atom.tuple.size(); ++k) {
      if (atom.tuple[k] >= alphabet_sizes[k]) {
        std::ostringstream os;
        os << "symbol " << atom.tuple[k] << " outside alphabet of size " << alphabet_sizes[k];
        throw Error(ErrorCode::IndexOutOfRange, os.str());
      }
      index = index * alphabet_sizes[k] + atom.tuple[k];
    }
    if (seen[index]) throw Error(ErrorCode::InvalidDistribution, "duplicate atom in joint pmf");
    seen[index] = true;
    pmf[index] = atom.prob;
  }
  return DiscreteJoint(std::move(alphabet_sizes), std::move(pmf));
}

double DiscreteJoint::probability(std::span<const std::size_t> tuple) const {
  if (tuple.size() != sizes_.size()) throw Error(ErrorCode::DimensionMismatch, "tuple arity mismatch");
  std::size_t index = 0;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (tuple[k] >= sizes_[k]) throw Error(ErrorCode::IndexOutOfRange, "symbol outside alphabet");
    index += tuple[k] * strides_[k];
  }
  return pmf_[index];
}

std::vector<double> DiscreteJoint::marginal(std::span<const std::size_t> vars) const {
  if (vars.empty()) throw Error(ErrorCode::EmptySubset, "marginal over an empty variable set");
  check_vars(*this, vars);

  // Stride of each full-joint variable inside the marginal; zero if summed out.
  std::vector<std::size_t> sub_stride(sizes_.size(), 0);
  std::size_t out_states = 1;
  for (std::size_t k = vars.size(); k-- > 0;) {
    sub_stride[vars[k]] = out_states;
    out_states *= sizes_[vars[k]];
  }

  std::vector<double> out(out_states, 0.0);
  std::vector<std::size_t> digits(sizes_.size(), 0);
  std::size_t target = 0;
  for (double q : pmf_) {
    out[target] += q;
    // Odometer increment, last variable fastest.
    for (std::size_t k = sizes_.size(); k-- > 0;) {
      target += sub_stride[k];
      if (++digits[k] < sizes_[k]) break;
      target -= sub_stride[k] * sizes_[k];
      digits[k] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

double entropy(const DiscreteJoint& joint, std::span<const std::size_t> vars, EntropyUnits units) {
  return to_units(entropy_of(joint.marginal(vars)), units);
}

double conditional_entropy(const DiscreteJoint& joint, std::span<const std::size_t> target,
                           std::span<const std::size_t> given, EntropyUnits units) {
  if (target.empty()) throw Error(ErrorCode::EmptySubset, "conditional entropy needs a nonempty target");
  check_vars(joint, target);
  check_vars(joint, given);
  check_disjoint(target, given);
  return to_units(conditional_entropy_nats(joint, target, given), units);
}

double mutual_information(const DiscreteJoint& joint, std::span<const std::size_t> a,
                          std::span<const std::size_t> b, EntropyUnits units) {
  check_vars(joint, a);
  check_vars(joint, b);
  check_disjoint(a, b);
  return to_units(mutual_information_nats(joint, a, b), units);
}

MIReport mi_piranha_check(const DiscreteJoint& joint, std::size_t outcome_index, EntropyUnits units) {
  if (joint.num_vars() < 2) throw Error(ErrorCode::InvalidArgument, "need at least one predictor and an outcome");
  if (outcome_index >= joint.num_vars()) {
    std::ostringstream os;
    os << "outcome index " << outcome_index << " out of range for " << joint.num_vars() << " variables";
    throw Error(ErrorCode::IndexOutOfRange, os.str());
  }
  std::vector<std::size_t> predictors;
  for (std::size_t v = 0; v < joint.num_vars(); ++v)
    if (v != outcome_index) predictors.push_back(v);

  const std::size_t y[] = {outcome_index};
  MIReport r;
  r.outcome_index = outcome_index;
  r.units = units;
  double lhs = 0.0;
  double leaveout_total = 0.0;
  for (std::size_t i : predictors) {
    const std::size_t xi[] = {i};
    std::vector<std::size_t> rest;
    for (std::size_t j : predictors)
      if (j != i) rest.push_back(j);
    const double mi = mutual_information_nats(joint, xi, y);
    const double lo = mutual_information_nats(joint, xi, rest);
    lhs += mi;
    leaveout_total += lo;
    r.per_var_mi.push_back(to_units(mi, units));
    r.per_var_leaveout_mi.push_back(to_units(lo, units));
  }
  const double h_y = entropy_of(joint.marginal(y));
  const double rhs = h_y + leaveout_total;
  r.h_y = to_units(h_y, units);
  r.lhs = to_units(lhs, units);
  r.rhs = to_units(rhs, units);
  r.satisfied = lhs <= rhs + kInformationTolerance;
  return r;
}

std::size_t max_independent_informative(double h_y, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
  if (!(h_y >= 0.0)) throw Error(ErrorCode::InvalidArgument, "entropy must be nonnegative");
  return static_cast<std::size_t>(std::floor(h_y / alpha));
}

bool chain_rule_check(const DiscreteJoint& joint, std::span<const std::size_t> ordering) {
  std::vector<std::size_t> sorted(ordering.begin(), ordering.end());
  std::sort(sorted.begin(), sorted.end());
  bool valid = sorted.size() == joint.num_vars();
  for (std::size_t k = 0; valid && k < sorted.size(); ++k) valid = sorted[k] == k;
  if (!valid)
    throw Error(ErrorCode::InvalidPermutation, "ordering is not a permutation of the variables");

  const double total = entropy_of(joint.pmf());
  double sum = 0.0;
  for (std::size_t k = 0; k < ordering.size(); ++k)
    sum += conditional_entropy_nats(joint, ordering.subspan(k, 1), ordering.subspan(0, k));
  return std::abs(total - sum) <= 1e-10;
}

}  // namespace piranha
