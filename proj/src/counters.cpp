#include "bdmp/counters.hpp"

#include <sstream>

namespace bdmp {

Counters& Counters::operator+=(const Counters& o) noexcept {
  block_products += o.block_products;
  collision_checks += o.collision_checks;
  collisions_found += o.collisions_found;
  fallback_pairs += o.fallback_pairs;
  poly_degree_ops += o.poly_degree_ops;
  small_pairs += o.small_pairs;
  sampled_pairs += o.sampled_pairs;
  incremental_checks += o.incremental_checks;
  return *this;
}

std::vector<std::string> check_work_bounds(const RunStats& s) {
  std::vector<std::string> out;
  const Counters& c = s.counters;
  if (s.enumeration_block_length > 0) {
    const std::uint64_t nb = s.n / s.enumeration_block_length;
    const std::uint64_t bound = nb * nb * s.t_beta + c.fallback_pairs * s.t_beta;
    if (c.block_products > bound) {
      std::ostringstream os;
      os << "block_products " << c.block_products << " exceeds " << bound;
      out.push_back(os.str());
    }
  }
  if (s.t_gamma > 0 && s.block_length > 0) {
    const std::uint64_t nb = s.n / s.block_length;
    const std::uint64_t bound = nb * nb / s.t_gamma;
    if (s.max_large_slots > bound) {
      std::ostringstream os;
      os << "large slots " << s.max_large_slots << " exceed " << bound << " per (r, relation)";
      out.push_back(os.str());
    }
  }
  if (c.collisions_found > c.collision_checks) {
    std::ostringstream os;
    os << "collisions_found " << c.collisions_found << " exceeds collision_checks "
       << c.collision_checks;
    out.push_back(os.str());
  }
  return out;
}

}  // namespace bdmp
