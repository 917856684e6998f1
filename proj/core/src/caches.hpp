#pragma once

#include <atomic>
#include <mutex>

#include "beauville/pcgroup.hpp"

namespace beauville {

struct GroupTable::Caches {
  std::once_flag center_once, derived_once, frattini_once, orders_once, classes_once, quotient_once;
  ElementSet center, derived, frattini;
  std::vector<std::uint32_t> orders;
  std::atomic<bool> orders_ready{false};
  std::vector<std::uint32_t> classes;
  std::uint32_t num_classes = 0;
  FrattiniQuotient quotient;
};

}  // namespace beauville
