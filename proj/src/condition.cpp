#include "ultraforce/condition.hpp"

#include <algorithm>

#include "cursor.hpp"

namespace uf {

namespace {
const EPSet& naturals_ref() {
  static const EPSet n = EPSet::naturals();
  return n;
}

EPSet intersect_all(const std::vector<EPSet>& xs) {
  EPSet acc = EPSet::naturals();
  for (const auto& x : xs) acc = intersect(acc, x);
  return acc;
}
}  // namespace

bool check_ult(const std::vector<EPSet>& members) { return intersect_all(members).is_infinite(); }

Condition::Condition(std::vector<EPSet> members) : members_(std::move(members)) {
  if (!check_ult(members_)) throw UltViolation("family has finite intersection: " + to_string());
}

const EPSet& Condition::column(std::size_t n) const {
  return n < members_.size() ? members_[n] : naturals_ref();
}

EPSet Condition::intersection() const { return intersect_all(members_); }

std::string Condition::to_string() const {
  std::string out = "cond[";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += "; ";
    out += members_[i].to_string();
  }
  return out + "]";
}

bool extends(const Condition& v, const Condition& u) {
  return std::all_of(u.members().begin(), u.members().end(), [&](const EPSet& un) {
    return std::any_of(v.members().begin(), v.members().end(),
                       [&](const EPSet& vm) { return is_subset(vm, un); }) ||
           // An absent column of v reads as the naturals.
           un == EPSet::naturals();
  });
}

bool equivalent(const Condition& a, const Condition& b) { return extends(a, b) && extends(b, a); }

std::optional<Condition> adjoin(const Condition& u, const EPSet& x) {
  auto members = u.members();
  members.push_back(x);
  if (!check_ult(members)) return std::nullopt;
  return Condition(std::move(members));
}

Condition interleave(const Condition& u, const std::vector<EPSet>& xs) {
  const std::size_t n = std::max(u.size(), xs.size());
  std::vector<EPSet> members;
  members.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    members.push_back(i < u.size() ? u.members()[i] : EPSet::naturals());
    members.push_back(i < xs.size() ? xs[i] : EPSet::naturals());
  }
  return Condition(std::move(members));
}

Condition parse_condition(std::string_view text, std::size_t& pos) {
  detail::Cursor c(text, pos);
  const std::size_t at = c.pos();
  if (c.ident() != "cond") throw SyntaxError("expected 'cond['", at);
  c.expect('[');
  std::vector<EPSet> members;
  if (!c.try_char(']')) {
    do {
      std::size_t p = c.pos();
      members.push_back(parse_epset(text, p));
      c = detail::Cursor(text, p);
    } while (c.try_char(';'));
    c.expect(']');
  }
  pos = c.pos();
  try {
    return Condition(std::move(members));
  } catch (const UltViolation& e) {
    throw SyntaxError(e.what(), at);
  }
}

Condition parse_condition(std::string_view text) {
  std::size_t pos = 0;
  Condition cond = parse_condition(text, pos);
  detail::Cursor c(text, pos);
  if (!c.at_end()) c.fail("trailing input after condition");
  return cond;
}

}  // namespace uf
