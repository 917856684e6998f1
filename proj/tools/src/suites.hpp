#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "report.hpp"

namespace beauville::cli {

/// Bad command line or a request the suite cannot meaningfully answer.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Report verify_prop_no_2group_class2(const Context& ctx, std::uint64_t max_order);
Report verify_thm_metacyclic(const Context& ctx, const Metacyclic& params);
Report verify_thm_class2_criterion(const Context& ctx, std::uint32_t p, std::uint64_t max_order);

struct AutFamilyOptions {
  std::uint64_t soundness_samples = 10000;
  std::uint64_t completeness_samples = 1000;
};
Report verify_aut_family(const Context& ctx, const FamilyParams& params, const AutFamilyOptions& opts);

struct ThmAOptions {
  bool exhaustive = false;
  std::uint64_t samples = 1000;
};
Report verify_thm_a(const Context& ctx, const FamilyParams& params, const ThmAOptions& opts);

struct ThmBOptions {
  bool all = false;
  std::uint64_t samples = 1000;
  std::uint64_t agreement_samples = 100;
};
Report verify_thm_b(const Context& ctx, unsigned e, const ThmBOptions& opts);

Report verify_identities(const Context& ctx, unsigned e, std::uint64_t samples);

struct FindOptions {
  bool random = false;
  std::uint64_t budget = 0;
};
Report find_structure(const Context& ctx, const FamilyParams& params, const FindOptions& opts);

/// Replays a witness or counterexample document.
Report verify_witness_document(const Context& ctx, const Json& doc);

}  // namespace beauville::cli
