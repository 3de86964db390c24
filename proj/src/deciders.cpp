#include "ultraforce/deciders.hpp"

#include <algorithm>
#include <stdexcept>

namespace uf {

Settlement settle_term(const Condition& u, const std::vector<EPSet>& xs) {
  DecisionTrace trace;
  EPSet running = u.intersection();
  std::vector<EPSet> chosen;
  for (const auto& x : xs) {
    EPSet with = intersect(running, x);
    const bool in = with.is_infinite();
    trace.sigma.push_back(in);
    chosen.push_back(in ? x : complement(x));
    // running ∩ X finite forces running \ X infinite
    running = in ? std::move(with) : difference(running, x);
  }
  trace.decided = xs;
  Condition v = xs.empty() ? u : interleave(u, chosen);
  trace.result = v;
  return {std::move(v), std::move(trace)};
}

namespace {

void collect_instances(const Formula& f, const Env& env, Nat bound, std::vector<EPSet>& out) {
  if (f.kind == Formula::Kind::ForallSet || f.kind == Formula::Kind::ExistsSet)
    throw std::invalid_argument("recursive deciding needs an arithmetic formula: " + print(f));
  if (f.kind != Formula::Kind::Uf) {
    if (f.lhs) collect_instances(*f.lhs, env, bound, out);
    if (f.rhs) collect_instances(*f.rhs, env, bound, out);
    return;
  }
  const std::set<std::string> vars = free_vars(*f.set).nums;
  const std::vector<std::string> names(vars.begin(), vars.end());
  Nat total = 1;
  for (std::size_t i = 0; i < names.size(); ++i) total = checked_mul(total, bound);
  if (total > 1'000'000) throw std::invalid_argument("too many parameter tuples for " + print(f));
  Env e = env;
  for (Nat code = 0; code < total; ++code) {
    Nat rest = code;
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      e.bind_num(*it, rest % bound);
      rest /= bound;
    }
    const EPSet s = eval_set_term(*f.set, e).epset();
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    for (std::size_t i = 0; i < names.size(); ++i) e.pop_num();
  }
}

}  // namespace

std::vector<EPSet> uf_instances(const FormulaPtr& phi, const Env& env, Nat param_bound) {
  std::vector<EPSet> out;
  collect_instances(*phi, env, param_bound, out);
  return out;
}

Settlement recursively_decides(const Condition& u, const FormulaPtr& phi, const Env& env, Nat param_bound) {
  return settle_term(u, uf_instances(phi, env, param_bound));
}

FormulaPtr comprehension_equivalence(const FormulaPtr& phi, const std::string& n, const std::string& y) {
  return fm::iff(fm::in(fm::var(n), fm::svar(y)), phi);
}

Comprehension comprehension_witness(const Condition& u, const FormulaPtr& phi, const std::string& n,
                                    const Env& env, Nat param_bound, const Universe& universe) {
  Settlement s = recursively_decides(u, phi, env, param_bound);
  Comprehension out{s.v, {}, EPSet::empty(), std::move(s.trace)};
  const ConditionSpace space(out.v, universe);
  Env e = env;
  for (Nat m = 0; m < param_bound; ++m) {
    e.bind_num(n, m);
    if (eval_forcing(phi, e, space, 0, universe).value) out.table.push_back(m);
    e.pop_num();
  }
  out.y = EPSet::finite(out.table);
  return out;
}

bool is_partition(const std::vector<EPSet>& parts) {
  EPSet seen = EPSet::empty();
  for (const auto& p : parts) {
    if (!intersect(seen, p).is_empty()) return false;
    seen = unite(seen, p);
  }
  return seen == EPSet::naturals();
}

std::size_t partition_select(const std::vector<EPSet>& parts) {
  if (!is_partition(parts)) throw std::invalid_argument("parts do not partition the naturals");
  EPSet acc = EPSet::empty();
  for (std::size_t b = 0; b < parts.size(); ++b) {
    acc = unite(acc, parts[b]);
    if (acc.in_canonical_ultrafilter()) return b;
  }
  // the whole union is the naturals, which is in 𝔘₀
  throw std::logic_error("partition_select: union of all parts missed 𝔘₀");
}

std::size_t partition_select_direct(const std::vector<EPSet>& parts) {
  if (!is_partition(parts)) throw std::invalid_argument("parts do not partition the naturals");
  for (std::size_t b = 0; b < parts.size(); ++b)
    if (parts[b].in_canonical_ultrafilter()) return b;
  throw std::logic_error("partition_select_direct: no part in 𝔘₀");
}

TransfiniteResult transfinite_force(const Condition& u, const std::vector<std::string>& order,
                                    const FormulaPtr& theta, const std::string& n, const std::string& hist,
                                    const Env& env, Nat param_bound, const Universe& universe) {
  TransfiniteResult out{u, {}};
  std::vector<Nat> history;
  for (std::size_t a = 0; a < order.size(); ++a) {
    Env e = env;
    const EPSet ya = EPSet::finite(history);
    e.bind_set(hist, ya);
    Comprehension c = comprehension_witness(out.v, theta, n, e, param_bound, universe);
    out.v = c.v;
    for (Nat m : c.table) history.push_back(cantor_pair(a, m));
    out.stages.push_back(Stage{order[a], ya, std::move(c.table), out.v});
  }
  return out;
}

}  // namespace uf
