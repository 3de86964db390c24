#include <algorithm>
#include <sstream>

#include "cursor.hpp"
#include "ultraforce/semantics.hpp"

namespace uf {

namespace {
std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }
}  // namespace

SetValue::SetValue(EPSet s) : set_(std::move(s)) { hash_ = set_->hash(); }

SetValue SetValue::family(std::vector<EPSet> columns, EPSet tail) {
  SetValue v;
  std::size_t h = 0xfa11;
  for (const auto& c : columns) h = mix(h, c.hash());
  h = mix(h, tail.hash());
  v.fam_ = std::make_shared<const Family>(Family{std::move(columns), std::move(tail)});
  v.hash_ = h;
  return v;
}

SetValue SetValue::of(const Condition& c) { return family(c.members()); }

const EPSet& SetValue::epset() const {
  if (fam_) throw EvalError("expected a set, got a family: " + to_string());
  return *set_;
}

const std::vector<EPSet>& SetValue::columns() const {
  static const std::vector<EPSet> none;
  return fam_ ? fam_->columns : none;
}

const EPSet& SetValue::tail() const { return fam_ ? fam_->tail : *set_; }

bool SetValue::member(Nat n) const {
  if (!fam_) return set_->member(n);
  const auto [t, s] = cantor_unpair(n);
  return (t < fam_->columns.size() ? fam_->columns[t] : fam_->tail).member(s);
}

SetValue SetValue::column(Nat t) const {
  if (!fam_) return set_->column(t);
  return t < fam_->columns.size() ? fam_->columns[t] : fam_->tail;
}

std::string SetValue::to_string() const {
  if (!fam_) return set_->to_string();
  std::string out = "family[";
  for (std::size_t i = 0; i < fam_->columns.size(); ++i) {
    if (i) out += "; ";
    out += fam_->columns[i].to_string();
  }
  return out + " | " + fam_->tail.to_string() + "]";
}

bool operator==(const SetValue& a, const SetValue& b) {
  if (a.hash_ != b.hash_ || a.is_family() != b.is_family()) return false;
  if (!a.fam_) return *a.set_ == *b.set_;
  return a.fam_ == b.fam_ || (a.fam_->columns == b.fam_->columns && a.fam_->tail == b.fam_->tail);
}

Env& Env::bind_num(const std::string& name, Nat v) {
  nums_.emplace_back(name, v);
  return *this;
}

Env& Env::bind_set(const std::string& name, SetValue v) {
  sets_.emplace_back(name, std::move(v));
  return *this;
}

const Nat* Env::num(const std::string& name) const {
  for (auto it = nums_.rbegin(); it != nums_.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

const SetValue* Env::set(const std::string& name) const {
  for (auto it = sets_.rbegin(); it != sets_.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

// ---------------------------------------------------------------------------

Universe Universe::default_universe() {
  const EPSet m3 = EPSet::multiples(3), m4 = EPSet::multiples(4);
  const EPSet q = EPSet::make(0, 4, {1, 2}, {});
  const EPSet f = EPSet::finite({0, 2});
  const EPSet late = EPSet::make(3, 3, {1}, {0});
  Universe u;
  u.set_pool = {EPSet::evens(), EPSet::odds(), m3, complement(m3), m4,   complement(m4),
                q,              complement(q),  f,  complement(f),  late, complement(late)};
  u.extension_pool = u.set_pool;
  // Six adjunctions reach a member of every complementary pair, so no
  // condition in the space is a dead end that decides too little.
  u.extension_depth = 6;
  return u;
}

bool Universe::extension_pool_complement_closed() const {
  return std::all_of(extension_pool.begin(), extension_pool.end(), [&](const EPSet& s) {
    return std::find(extension_pool.begin(), extension_pool.end(), complement(s)) != extension_pool.end();
  });
}

Universe parse_universe(std::string_view text) {
  Universe u;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t end = text.find('\n', line_start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(0, end);
    detail::Cursor c(line, line_start);
    if (!c.at_end()) {
      const std::size_t at = c.pos();
      const std::string key = c.ident();
      if (key == "numeric_bound") u.numeric_bound = c.number();
      else if (key == "extension_depth") u.extension_depth = c.number();
      else if (key == "node_budget") u.node_budget = c.number();
      else if (key == "set" || key == "ext" || key == "pool") {
        std::size_t p = c.pos();
        EPSet s = parse_epset(line, p);
        c = detail::Cursor(line, p);
        if (key != "ext") u.set_pool.push_back(s);
        if (key != "set") u.extension_pool.push_back(s);
      } else {
        throw SyntaxError("unknown universe entry '" + key + "'", at);
      }
      if (!c.at_end()) c.fail("trailing input in universe entry");
    }
    line_start = end + 1;
  }
  return u;
}

std::string to_string(const Universe& u) {
  std::ostringstream os;
  os << "numeric_bound " << u.numeric_bound << "\nextension_depth " << u.extension_depth << "\nnode_budget "
     << u.node_budget << "\n";
  for (const auto& s : u.set_pool) os << "set " << s.to_string() << "\n";
  for (const auto& s : u.extension_pool) os << "ext " << s.to_string() << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------

ConditionSpace::ConditionSpace(const Condition& root, const Universe& u) {
  const std::size_t n = u.extension_pool.size();
  const std::size_t max_len = std::min(u.extension_depth, n);
  // A member list is Ult iff its full intersection is infinite, so extend
  // depth-first along infinite running meets and bucket by length to keep
  // the shortest-first, lexicographic order.
  std::vector<std::vector<Condition>> by_len(max_len + 1);
  by_len[0].push_back(root);
  std::vector<std::size_t> pick;
  const auto dfs = [&](auto&& self, std::size_t from, const EPSet& meet) -> void {
    if (pick.size() == max_len) return;
    for (std::size_t i = from; i < n; ++i) {
      EPSet next = intersect(meet, u.extension_pool[i]);
      if (!next.is_infinite()) continue;
      pick.push_back(i);
      std::vector<EPSet> ms = root.members();
      for (std::size_t k : pick) ms.push_back(u.extension_pool[k]);
      by_len[pick.size()].emplace_back(std::move(ms));
      self(self, i + 1, next);
      pick.pop_back();
    }
  };
  const EPSet base = root.intersection();
  if (base.is_infinite()) dfs(dfs, 0, base);
  for (auto& bucket : by_len)
    for (auto& c : bucket) members_.push_back(std::move(c));
  index();
}

ConditionSpace::ConditionSpace(std::vector<Condition> members) : members_(std::move(members)) { index(); }

void ConditionSpace::index() {
  meets_.clear();
  values_.clear();
  for (const auto& c : members_) {
    meets_.push_back(c.intersection());
    values_.push_back(SetValue::of(c));
  }
  // extends() on interned members: subset tests happen once per pair of
  // distinct sets
  std::vector<EPSet> distinct;
  std::vector<std::vector<std::size_t>> ids(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i)
    for (const auto& m : members_[i].members()) {
      auto it = std::find(distinct.begin(), distinct.end(), m);
      ids[i].push_back(static_cast<std::size_t>(it - distinct.begin()));
      if (it == distinct.end()) distinct.push_back(m);
    }
  const std::size_t d = distinct.size();
  std::vector<char> sub(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) sub[a * d + b] = is_subset(distinct[a], distinct[b]);
  std::vector<char> full(d);
  for (std::size_t a = 0; a < d; ++a) full[a] = distinct[a] == EPSet::naturals();
  below_.assign(members_.size(), {});
  for (std::size_t i = 0; i < members_.size(); ++i)
    for (std::size_t j = 0; j < members_.size(); ++j) {
      const bool ok = std::all_of(ids[i].begin(), ids[i].end(), [&](std::size_t un) {
        return full[un] ||
               std::any_of(ids[j].begin(), ids[j].end(), [&](std::size_t vm) { return sub[vm * d + un]; });
      });
      if (ok) below_[i].push_back(j);
    }
}

std::optional<std::size_t> ConditionSpace::find(const Condition& c) const {
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i] == c) return i;
  return std::nullopt;
}

}  // namespace uf
