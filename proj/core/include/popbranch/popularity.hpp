#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "popbranch/arborescence.hpp"
#include "popbranch/instance.hpp"

namespace popbranch {

/// Positive rational p/q kept as an integer pair.
struct Ratio {
  std::int64_t p = 1;
  std::int64_t q = 1;
};

/// 0 if v prefers e to A(v), q on a tie (including e = A(v)), p+q otherwise.
std::int64_t comparison_cost(const RootedInstance& rooted, const Branching& arborescence, int e,
                             Ratio t = {});
std::vector<std::int64_t> comparison_costs(const RootedInstance& rooted, const Branching& arborescence,
                                           Ratio t = {});

struct ComparisonResult {
  int for_first = 0;   // nodes strictly preferring the first branching
  int for_second = 0;  // nodes strictly preferring the second branching
  int delta = 0;       // for_first - for_second

  bool operator==(const ComparisonResult&) const = default;
};

/// A missing parent counts as worse than any edge.
ComparisonResult compare_branchings(const Instance& inst, const Branching& first, const Branching& second);

struct MarginResult {
  int margin = 0;
  Branching witness;  // arborescence of minimum comparison cost
};

MarginResult unpopularity_margin(const RootedInstance& rooted, const Branching& arborescence);

/// Laminar family of node sets; values are implicitly 1.
using DualCertificate = std::vector<NodeSet>;

struct PopularityCheck {
  bool popular = false;
  std::optional<DualCertificate> certificate;  // size n when popular
  int margin = 0;
};

PopularityCheck is_popular(const RootedInstance& rooted, const Branching& arborescence);

struct FactorCheck {
  bool ok = false;
  std::optional<Branching> witness;  // challenger beating the ratio when !ok
};

FactorCheck check_unpop_factor(const RootedInstance& rooted, const Branching& arborescence, Ratio t);

struct FactorValue {
  enum class Kind { Finite, Infinite, Vacuous };
  Kind kind = Kind::Vacuous;
  std::int64_t p = 0;
  std::int64_t q = 1;

  std::string to_string() const;
  bool operator==(const FactorValue&) const = default;
};

/// Exact u(A). Vacuous (reported as 0) when no challenger improves any node.
FactorValue unpopularity_factor(const RootedInstance& rooted, const Branching& arborescence);

struct CertificateCheck {
  bool ok = false;
  int bound = 0;  // n - |Y|; an upper bound on the margin when ok
  std::vector<std::string> diagnostics;
};

CertificateCheck validate_certificate(const RootedInstance& rooted, const Branching& arborescence,
                                      const DualCertificate& family);

/// Sorted sets, sorted by content.
DualCertificate normalize(DualCertificate family);

}  // namespace popbranch
