#include "percfpp/thinning.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "percfpp/csv.hpp"
#include "percfpp/errors.hpp"
#include "percfpp/rng.hpp"

namespace percfpp {

LinkProbability::LinkProbability(Kind kind, std::vector<double> params, std::vector<double> knots,
                                 std::function<double(double)> fn, std::string label)
    : kind_(kind),
      params_(std::move(params)),
      knots_(std::move(knots)),
      fn_(std::move(fn)),
      label_(std::move(label)) {}

LinkProbability LinkProbability::constant(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("constant link probability must lie in [0, 1]");
  return LinkProbability(Kind::constant, {p}, {}, nullptr, {});
}

LinkProbability LinkProbability::affine(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidInput("affine coefficients must be finite");
  return LinkProbability(Kind::affine_in_d, {a, b}, {}, nullptr, {});
}

LinkProbability LinkProbability::table(std::vector<double> d_knots, std::vector<double> p_values) {
  if (d_knots.empty() || d_knots.size() != p_values.size()) {
    throw InvalidInput("link probability table needs matching, non-empty knot and value lists");
  }
  if (!std::is_sorted(d_knots.begin(), d_knots.end())) {
    throw InvalidInput("link probability table knots must be sorted by length");
  }
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("link probability table values must lie in [0, 1]");
  }
  return LinkProbability(Kind::table, std::move(p_values), std::move(d_knots), nullptr, {});
}

LinkProbability LinkProbability::custom(std::function<double(double)> fn, std::string label) {
  if (!fn) throw InvalidInput("custom link probability needs an evaluator");
  return LinkProbability(Kind::custom, {}, {}, std::move(fn), std::move(label));
}

double LinkProbability::operator()(double d) const {
  switch (kind_) {
    case Kind::constant:
      return params_[0];
    case Kind::affine_in_d:
      return std::clamp(params_[0] + params_[1] * d, 0.0, 1.0);
    case Kind::table: {
      if (d <= knots_.front()) return params_.front();
      if (d >= knots_.back()) return params_.back();
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), d);
      const std::size_t hi = static_cast<std::size_t>(it - knots_.begin());
      const std::size_t lo = hi - 1;
      const double t = (d - knots_[lo]) / (knots_[hi] - knots_[lo]);
      return params_[lo] + t * (params_[hi] - params_[lo]);
    }
    case Kind::custom:
      return std::clamp(fn_(d), 0.0, 1.0);
  }
  return 0.0;
}

std::string LinkProbability::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::constant:
      out << "constant " << format_number(params_[0]);
      break;
    case Kind::affine_in_d:
      out << "affine " << format_number(params_[0]) << " " << format_number(params_[1]);
      break;
    case Kind::table:
      out << "table";
      for (std::size_t i = 0; i < knots_.size(); ++i) {
        out << " " << format_number(knots_[i]) << ":" << format_number(params_[i]);
      }
      break;
    case Kind::custom:
      out << "custom " << label_;
      break;
  }
  return out.str();
}

bool LinkProbability::dominated_by(const LinkProbability& other) const {
  for (int i = 1; i <= 1000; ++i) {
    const double d = i / 1000.0;
    if ((*this)(d) > other(d)) return false;
  }
  return true;
}

double thinning_uniform(std::uint64_t seed, LinkId k) noexcept {
  return hashed_uniform(seed, k, 0x7468696eULL);
}

LinkMask thin_links(const GeoGraph& graph, const LinkProbability& prob, std::uint64_t seed,
                    MaskProvenance provenance) {
  std::vector<std::uint8_t> bits(graph.link_count());
  for (LinkId k = 0; k < graph.link_count(); ++k) {
    bits[k] = thinning_uniform(seed, k) < prob(graph.link(k).length) ? 1 : 0;
  }
  return LinkMask(std::move(bits), provenance, seed);
}

}  // namespace percfpp
