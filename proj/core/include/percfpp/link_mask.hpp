#pragma once

#include <cstdint>
#include <vector>

namespace percfpp {

enum class MaskProvenance { all_active, thinning, snapshot };

// Per-link activity: either the outcome of independent thinning or a
// stationary snapshot of the on-off processes.
class LinkMask {
 public:
  LinkMask(std::vector<std::uint8_t> bits, MaskProvenance provenance, std::uint64_t seed)
      : bits_(std::move(bits)), provenance_(provenance), seed_(seed) {}

  static LinkMask all_active(std::size_t link_count) {
    return LinkMask(std::vector<std::uint8_t>(link_count, 1), MaskProvenance::all_active, 0);
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool active(std::size_t k) const noexcept { return bits_[k] != 0; }
  MaskProvenance provenance() const noexcept { return provenance_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  std::size_t active_count() const noexcept {
    std::size_t n = 0;
    for (auto b : bits_) n += b != 0;
    return n;
  }
  double active_fraction() const noexcept {
    return bits_.empty() ? 0.0 : static_cast<double>(active_count()) / static_cast<double>(bits_.size());
  }
  // Every link active here is active in `other`.
  bool is_subset_of(const LinkMask& other) const noexcept {
    if (other.size() != size()) return false;
    for (std::size_t k = 0; k < bits_.size(); ++k) {
      if (bits_[k] && !other.bits_[k]) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint8_t> bits_;
  MaskProvenance provenance_;
  std::uint64_t seed_;
};

}  // namespace percfpp
