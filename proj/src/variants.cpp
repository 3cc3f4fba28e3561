#include "fvsat/variants.hpp"

#include <set>
#include <string>

#include "fvsat/unify.hpp"

namespace fvsat {

namespace {

struct NarrowNode {
  Substitution theta;  // accumulated, on Var(t) and introduced variables
  Term term;
  std::vector<Position> basic;
};

// (θ(x1), ..., θ(xk), u) as one term, for instance checks between variants.
Term pack(const std::vector<VarId>& xs, const Substitution& theta, const Term& reduct) {
  std::vector<Term> args;
  for (auto x : xs) args.push_back(fvsat::apply(Term::var(x), theta));
  args.push_back(reduct);
  return Term::app("$variant", std::move(args));
}

}  // namespace

std::vector<Variant> variants(const Term& t, const RewriteSystem& R, std::size_t depth_bound) {
  VarSet tv = vars(t);
  std::vector<VarId> xs(tv.begin(), tv.end());

  std::vector<NarrowNode> frontier{{Substitution{}, t, positions(t, true)}};
  std::vector<Variant> found;
  std::set<std::string> seen;  // nodes up to renaming of introduced variables

  auto record = [&](const NarrowNode& n) {
    Substitution th = n.theta.restrict(tv);
    Term red = normalize(fvsat::apply(t, th), R);
    found.push_back(Variant{th, red});
  };

  record(frontier.front());
  seen.insert(renaming_key({pack(xs, frontier.front().theta, t)}));

  for (std::size_t depth = 0; !frontier.empty(); ++depth) {
    std::vector<NarrowNode> next;
    for (const auto& node : frontier) {
      for (const auto& p : node.basic) {
        const Term& sub = at(node.term, p);
        if (sub.is_var()) continue;
        for (const auto& rule : R.rules) {
          if (rule.lhs.sym() != sub.sym()) continue;
          Substitution ren = renaming_for(vars(rule.lhs));
          Term l = fvsat::apply(rule.lhs, ren), r = fvsat::apply(rule.rhs, ren);
          auto u = mgu(sub, l);
          if (!u) continue;
          if (depth >= depth_bound)
            throw FvpViolation("narrowing of " + to_string(t) + " exceeds depth " +
                               std::to_string(depth_bound));
          NarrowNode child;
          child.term = fvsat::apply(replace_at(node.term, p, r), *u.mgu);
          child.theta = compose(node.theta, *u.mgu);
          for (const auto& q : node.basic)
            if (!is_prefix(p, q)) child.basic.push_back(q);
          for (const auto& q : positions(r, true)) {
            Position pq = p;
            pq.insert(pq.end(), q.begin(), q.end());
            child.basic.push_back(pq);
          }
          std::string key = renaming_key({pack(xs, child.theta, child.term)});
          if (!seen.insert(key).second) continue;
          record(child);
          next.push_back(std::move(child));
        }
      }
    }
    frontier = std::move(next);
  }

  // Drop variants that are instances of another; among mutual instances
  // (renamings) keep the first.
  std::vector<Term> packed;
  for (const auto& v : found) packed.push_back(pack(xs, v.theta, v.reduct));
  std::vector<Variant> out;
  std::vector<bool> dropped(found.size(), false);
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < found.size() && !dropped[i]; ++j) {
      if (i == j || dropped[j]) continue;
      if (!is_instance(packed[i], packed[j])) continue;
      bool mutual = is_instance(packed[j], packed[i]);
      if (!mutual || j < i) dropped[i] = true;
    }
  }
  for (std::size_t i = 0; i < found.size(); ++i)
    if (!dropped[i]) out.push_back(found[i]);
  return out;
}

std::vector<TupleVariant> variants_tuple(const std::vector<Term>& ts, const RewriteSystem& R,
                                         std::size_t depth_bound) {
  // The tupling symbol is fresh, so no rule applies at the root.
  Term tuple = Term::app("$tuple" + std::to_string(ts.size()), ts);
  std::vector<TupleVariant> out;
  for (auto& v : variants(tuple, R, depth_bound)) {
    TupleVariant tv;
    tv.theta = std::move(v.theta);
    tv.reducts = v.reduct.args();
    out.push_back(std::move(tv));
  }
  return out;
}

}  // namespace fvsat
