#ifndef ULTRAFORCE_SEMANTICS_HPP
#define ULTRAFORCE_SEMANTICS_HPP

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ultraforce/condition.hpp"
#include "ultraforce/formula.hpp"

namespace uf {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResourceError : EvalError {
  using EvalError::EvalError;
};

/// What a set variable can denote: an EPSet, or a family given by finitely
/// many columns followed by a constant tail. Membership in a family uses the
/// pairing convention, so n is in F iff n = pair(t, s) with s in column t.
class SetValue {
 public:
  SetValue(EPSet s);  // NOLINT: implicit on purpose
  static SetValue family(std::vector<EPSet> columns, EPSet tail = EPSet::naturals());
  /// The column encoding of a condition.
  static SetValue of(const Condition& c);

  bool is_family() const { return fam_ != nullptr; }
  /// Throws EvalError on a family.
  const EPSet& epset() const;
  const std::vector<EPSet>& columns() const;
  const EPSet& tail() const;

  bool member(Nat n) const;
  SetValue column(Nat t) const;

  std::size_t hash() const { return hash_; }
  std::string to_string() const;
  friend bool operator==(const SetValue& a, const SetValue& b);

 private:
  struct Family {
    std::vector<EPSet> columns;
    EPSet tail;
  };
  SetValue() = default;
  std::optional<EPSet> set_;
  std::shared_ptr<const Family> fam_;
  std::size_t hash_ = 0;
};

/// Variable assignment. Later bindings shadow earlier ones.
class Env {
 public:
  Env& bind_num(const std::string& name, Nat v);
  Env& bind_set(const std::string& name, SetValue v);
  void pop_num() { nums_.pop_back(); }
  void pop_set() { sets_.pop_back(); }
  const Nat* num(const std::string& name) const;
  const SetValue* set(const std::string& name) const;

 private:
  std::vector<std::pair<std::string, Nat>> nums_;
  std::vector<std::pair<std::string, SetValue>> sets_;
};

struct Universe {
  Nat numeric_bound = 64;
  std::vector<EPSet> set_pool;
  std::vector<EPSet> extension_pool;
  std::size_t extension_depth = 2;
  std::size_t node_budget = 50'000'000;

  /// Twelve named sets closed under complement, used for both pools, with an
  /// extension depth that saturates them.
  static Universe default_universe();
  bool extension_pool_complement_closed() const;
};

/// Line-oriented: `numeric_bound N`, `extension_depth N`, `node_budget N`,
/// `set <epset>`, `ext <epset>`, `pool <epset>` (both pools); `#` comments.
Universe parse_universe(std::string_view text);
std::string to_string(const Universe& u);

enum class Exactness { Exact, Approximate };

struct TruthValue {
  bool value = false;
  Exactness exactness = Exactness::Exact;
  std::set<std::string> reasons;

  bool exact() const { return exactness == Exactness::Exact; }
};

/// The conditions a condition quantifier ranges over: the root followed by
/// every Ult-passing extension of the root's member list by at most
/// extension_depth distinct sets from extension_pool, in lexicographic order
/// of pool indices.
class ConditionSpace {
 public:
  ConditionSpace(const Condition& root, const Universe& u);
  explicit ConditionSpace(std::vector<Condition> members);

  std::size_t size() const { return members_.size(); }
  const Condition& at(std::size_t i) const { return members_[i]; }
  const EPSet& meet(std::size_t i) const { return meets_[i]; }
  const SetValue& value(std::size_t i) const { return values_[i]; }
  /// Indices j with at(j) ⪯ at(i), i itself included.
  const std::vector<std::size_t>& below(std::size_t i) const { return below_[i]; }
  std::optional<std::size_t> find(const Condition& c) const;

 private:
  void index();
  std::vector<Condition> members_;
  std::vector<EPSet> meets_;
  std::vector<SetValue> values_;
  std::vector<std::vector<std::size_t>> below_;
};

/// Throws EvalError on an unbound variable and OverflowError past 2^64.
Nat eval_term(const Term& t, const Env& env);
SetValue eval_set_term(const SetTerm& s, const Env& env);

TruthValue eval_direct(const FormulaPtr& phi, const Env& env, const Universe& u);

TruthValue eval_forcing(const FormulaPtr& phi, const Env& env, const Condition& cond, const Universe& u);
/// Forcing at member `at` of an existing space.
TruthValue eval_forcing(const FormulaPtr& phi, const Env& env, const ConditionSpace& space, std::size_t at,
                        const Universe& u);

/// Translates with a fresh condition variable bound to the column encoding of
/// the condition and evaluates directly. A set quantifier whose body starts
/// with a ⪯ guard ranges over the condition space.
TruthValue eval_translated(const FormulaPtr& phi, const Env& env, const Condition& cond, const Universe& u);
TruthValue eval_translated(const FormulaPtr& phi, const Env& env, const ConditionSpace& space, std::size_t at,
                           const Universe& u);

}  // namespace uf

template <>
struct std::hash<uf::SetValue> {
  std::size_t operator()(const uf::SetValue& s) const noexcept { return s.hash(); }
};

#endif  // ULTRAFORCE_SEMANTICS_HPP
