#ifndef ULTRAFORCE_CONDITION_HPP
#define ULTRAFORCE_CONDITION_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ultraforce/epset.hpp"

namespace uf {

struct UltViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// True iff the intersection of all members is infinite (the empty family
/// intersects to the naturals).
bool check_ult(const std::vector<EPSet>& members);

/// A finite family of sets whose total intersection is infinite. Member i is
/// column i of the family; columns past the end read as the naturals.
class Condition {
 public:
  Condition() = default;
  /// Throws UltViolation unless check_ult(members).
  explicit Condition(std::vector<EPSet> members);

  const std::vector<EPSet>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const EPSet& column(std::size_t n) const;
  EPSet intersection() const;

  std::string to_string() const;

  friend bool operator==(const Condition&, const Condition&) = default;

 private:
  std::vector<EPSet> members_;
};

/// v ⪯ u: every member of u contains some member of v.
bool extends(const Condition& v, const Condition& u);

/// Equivalence under ⪯ in both directions.
bool equivalent(const Condition& a, const Condition& b);

/// u with x appended, or nullopt when that would break Ult.
std::optional<Condition> adjoin(const Condition& u, const EPSet& x);

/// Even slots from u, odd slots from xs; the shorter side is padded with the
/// naturals. Throws UltViolation when the joint family fails Ult.
Condition interleave(const Condition& u, const std::vector<EPSet>& xs);

/// `cond[s1; s2; ...]`
Condition parse_condition(std::string_view text, std::size_t& pos);
Condition parse_condition(std::string_view text);

}  // namespace uf

#endif  // ULTRAFORCE_CONDITION_HPP
