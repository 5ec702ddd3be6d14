#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "percfpp/geo_graph.hpp"
#include "percfpp/link_mask.hpp"

namespace percfpp {

// Probability p_e(d) that a link of length d is retained, for d in (0, 1].
class LinkProbability {
 public:
  enum class Kind { constant, affine_in_d, table, custom };

  static LinkProbability constant(double p);
  // a + b*d clipped to [0, 1].
  static LinkProbability affine(double a, double b);
  // Piecewise-linear interpolation through (d, p) knots sorted by d; flat
  // beyond the end knots.
  static LinkProbability table(std::vector<double> d_knots, std::vector<double> p_values);
  // Arbitrary evaluator; not serializable. `label` is only for diagnostics.
  static LinkProbability custom(std::function<double(double)> fn, std::string label);

  double operator()(double d) const;
  Kind kind() const noexcept { return kind_; }
  const std::vector<double>& parameters() const noexcept { return params_; }
  const std::vector<double>& knots() const noexcept { return knots_; }
  std::string describe() const;

  // Pointwise comparison on a grid of 1000 lengths in (0, 1].
  bool dominated_by(const LinkProbability& other) const;

 private:
  LinkProbability(Kind kind, std::vector<double> params, std::vector<double> knots,
                  std::function<double(double)> fn, std::string label);

  Kind kind_;
  std::vector<double> params_;
  std::vector<double> knots_;
  std::function<double(double)> fn_;
  std::string label_;
};

// Uniform draw shared by every thinning of link k under the same seed.
double thinning_uniform(std::uint64_t seed, LinkId k) noexcept;

// Each link k kept independently with probability p_e(d_k). The decision for
// link k compares p_e(d_k) against thinning_uniform(seed, k), so masks under
// the same seed are coupled: p' <= p pointwise implies mask' is a subset.
LinkMask thin_links(const GeoGraph& graph, const LinkProbability& prob, std::uint64_t seed,
                    MaskProvenance provenance = MaskProvenance::thinning);

}  // namespace percfpp
