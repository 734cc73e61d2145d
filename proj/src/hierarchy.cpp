#include "ontoplot/hierarchy.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "ontoplot/error.hpp"

namespace ontoplot {

const OccurrenceNode& OccurrenceTree::node(OccId occ) const {
  if (!contains(occ)) throw UnknownOccurrenceError(occ);
  return nodes_[static_cast<std::size_t>(occ)];
}

std::string OccurrenceTree::class_id(const OntologySnapshot& s, OccId occ) const {
  const auto& n = node(occ);
  return n.class_index ? s.class_id(*n.class_index) : std::string(kSyntheticRootId);
}

std::string OccurrenceTree::label(const OntologySnapshot& s, OccId occ) const {
  const auto& n = node(occ);
  return n.class_index ? s.class_label(*n.class_index) : std::string(kSyntheticRootLabel);
}

OccurrenceTree build_occurrence_tree(const OntologySnapshot& snapshot) {
  OccurrenceTree tree;
  const auto n = snapshot.class_count();
  tree.by_class_.assign(n, {});

  auto add = [&](std::optional<ClassIndex> cls, std::optional<OccId> parent) {
    OccurrenceNode node;
    node.occ = static_cast<OccId>(tree.nodes_.size());
    node.class_index = cls;
    node.parent = parent;
    if (parent) {
      auto& up = tree.nodes_[static_cast<std::size_t>(*parent)];
      node.depth = up.depth + 1;
      up.children.push_back(node.occ);
    }
    if (cls) {
      node.primary = tree.by_class_[*cls].empty();
      tree.by_class_[*cls].push_back(node.occ);
    }
    tree.nodes_.push_back(std::move(node));
    return tree.nodes_.back().occ;
  };

  std::vector<ClassIndex> roots;
  for (ClassIndex c = 0; c < n; ++c)
    if (snapshot.parents(c).empty()) roots.push_back(c);

  // Expanding a primary occurrence creates all of its child occurrences at
  // once; expansion proceeds depth-first in child order.
  std::vector<OccId> stack;
  if (roots.size() == 1) {
    stack.push_back(add(roots.front(), std::nullopt));
  } else {
    tree.synthetic_root_ = true;
    OccId root = add(std::nullopt, std::nullopt);
    for (ClassIndex r : roots) add(r, root);
    const auto& kids = tree.nodes_[0].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  while (!stack.empty()) {
    OccId occ = stack.back();
    stack.pop_back();
    const auto& node = tree.nodes_[static_cast<std::size_t>(occ)];
    if (!node.primary) continue;
    ClassIndex cls = *node.class_index;
    for (ClassIndex child : snapshot.children(cls)) add(child, occ);
    const auto& kids = tree.nodes_[static_cast<std::size_t>(occ)].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return tree;
}

std::optional<Direction> parse_direction(std::string_view text) {
  if (text == "out") return Direction::Out;
  if (text == "in") return Direction::In;
  if (text == "both") return Direction::Both;
  return std::nullopt;
}

HierarchyQueries::HierarchyQueries(const OntologySnapshot& snapshot)
    : snapshot_(&snapshot),
      outgoing_(snapshot.class_count()),
      incoming_(snapshot.class_count()) {
  for (ClassIndex c = 0; c < snapshot.class_count(); ++c)
    if (snapshot.parents(c).empty()) roots_.push_back(c);
  const auto& assocs = snapshot.indexed_associations();
  for (std::size_t i = 0; i < assocs.size(); ++i) {
    outgoing_[assocs[i].source].push_back(i);
    incoming_[assocs[i].target].push_back(i);
  }
}

std::vector<std::string> HierarchyQueries::ids(std::vector<ClassIndex> classes) const {
  std::vector<std::string> out;
  out.reserve(classes.size());
  for (ClassIndex c : classes) out.push_back(snapshot_->class_id(c));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> HierarchyQueries::parents_of(std::string_view cls) const {
  return ids(snapshot_->parents(snapshot_->class_index(cls)));
}

std::vector<std::string> HierarchyQueries::children_of(std::string_view cls) const {
  return ids(snapshot_->children(snapshot_->class_index(cls)));
}

std::vector<ClassIndex> HierarchyQueries::sibling_indices(ClassIndex c) const {
  std::vector<ClassIndex> out;
  const auto& parents = snapshot_->parents(c);
  if (parents.empty()) {
    for (ClassIndex r : roots_)
      if (r != c) out.push_back(r);
  } else {
    for (ClassIndex p : parents)
      for (ClassIndex k : snapshot_->children(p))
        if (k != c) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> HierarchyQueries::siblings_of(std::string_view cls) const {
  return ids(sibling_indices(snapshot_->class_index(cls)));
}

std::vector<std::vector<std::string>> HierarchyQueries::paths_to_root(std::string_view cls) const {
  std::vector<std::vector<std::string>> out;
  std::vector<ClassIndex> path{snapshot_->class_index(cls)};
  // Explicit DFS over (class, next parent) frames.
  std::vector<std::size_t> next{0};
  while (!path.empty()) {
    ClassIndex top = path.back();
    const auto& ups = snapshot_->parents(top);
    if (ups.empty()) {
      std::vector<std::string> ids;
      for (ClassIndex c : path) ids.push_back(snapshot_->class_id(c));
      out.push_back(std::move(ids));
    }
    if (next.back() < ups.size()) {
      path.push_back(ups[next.back()++]);
      next.push_back(0);
    } else {
      path.pop_back();
      next.pop_back();
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::map<ClassIndex, std::size_t> upward_distances(const OntologySnapshot& s, ClassIndex from) {
  std::map<ClassIndex, std::size_t> dist{{from, 0}};
  std::deque<ClassIndex> queue{from};
  while (!queue.empty()) {
    ClassIndex c = queue.front();
    queue.pop_front();
    for (ClassIndex p : s.parents(c))
      if (dist.emplace(p, dist[c] + 1).second) queue.push_back(p);
  }
  return dist;
}

}  // namespace

std::vector<std::string> HierarchyQueries::closest_common_ancestors(std::string_view a,
                                                                    std::string_view b) const {
  ClassIndex ca = snapshot_->class_index(a);
  ClassIndex cb = snapshot_->class_index(b);
  auto da = upward_distances(*snapshot_, ca);
  auto db = upward_distances(*snapshot_, cb);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<ClassIndex> winners;
  for (const auto& [c, d] : da) {
    auto it = db.find(c);
    if (it == db.end()) continue;
    std::size_t sum = d + it->second;
    if (sum < best) {
      best = sum;
      winners.clear();
    }
    if (sum == best) winners.push_back(c);
  }
  if (winners.empty()) {
    if (roots_.size() > 1) return {std::string(kSyntheticRootId)};
    throw NoCommonAncestorError(std::string(a), std::string(b));
  }
  return ids(std::move(winners));
}

std::vector<std::string> HierarchyQueries::associated_classes(std::string_view cls,
                                                              std::string_view property,
                                                              Direction direction) const {
  ClassIndex c = snapshot_->class_index(cls);
  PropertyIndex p = snapshot_->property_index(property);
  const auto& assocs = snapshot_->indexed_associations();
  std::vector<ClassIndex> out;
  if (direction != Direction::In)
    for (auto i : outgoing_[c])
      if (assocs[i].property == p) out.push_back(assocs[i].target);
  if (direction != Direction::Out)
    for (auto i : incoming_[c])
      if (assocs[i].property == p) out.push_back(assocs[i].source);
  return ids(std::move(out));
}

std::size_t HierarchyQueries::count_indexed(ClassIndex c, PropertyIndex p, Direction d) const {
  const auto& assocs = snapshot_->indexed_associations();
  std::size_t n = 0;
  if (d != Direction::In)
    for (auto i : outgoing_[c]) n += assocs[i].property == p;
  if (d != Direction::Out)
    for (auto i : incoming_[c])
      // A self-association is one record; count it once.
      n += assocs[i].property == p && (d == Direction::In || assocs[i].source != c);
  return n;
}

bool HierarchyQueries::linked(ClassIndex a, PropertyIndex p, ClassIndex b) const {
  const auto& assocs = snapshot_->indexed_associations();
  for (auto i : outgoing_[a])
    if (assocs[i].property == p && assocs[i].target == b) return true;
  for (auto i : incoming_[a])
    if (assocs[i].property == p && assocs[i].source == b) return true;
  return false;
}

std::size_t HierarchyQueries::association_count(std::string_view cls, std::string_view property,
                                                Direction direction) const {
  return count_indexed(snapshot_->class_index(cls), snapshot_->property_index(property),
                       direction);
}

RankedClasses HierarchyQueries::max_association_classes(std::string_view property,
                                                        Direction direction) const {
  PropertyIndex p = snapshot_->property_index(property);
  RankedClasses out;
  std::vector<ClassIndex> winners;
  for (ClassIndex c = 0; c < snapshot_->class_count(); ++c) {
    std::size_t n = count_indexed(c, p, direction);
    if (n == 0 || n < out.count) continue;
    if (n > out.count) {
      out.count = n;
      winners.clear();
    }
    winners.push_back(c);
  }
  out.classes = ids(std::move(winners));
  return out;
}

ClassEffectReport HierarchyQueries::class_effect(std::string_view parent,
                                                 std::string_view property,
                                                 std::optional<std::string_view> target,
                                                 bool transitive) const {
  ClassIndex q = snapshot_->class_index(parent);
  PropertyIndex p = snapshot_->property_index(property);
  std::optional<ClassIndex> t;
  if (target) t = snapshot_->class_index(*target);

  std::vector<ClassIndex> members;
  if (!transitive) {
    members = snapshot_->children(q);
  } else {
    std::vector<bool> seen(snapshot_->class_count(), false);
    std::vector<ClassIndex> stack(snapshot_->children(q).begin(), snapshot_->children(q).end());
    while (!stack.empty()) {
      ClassIndex c = stack.back();
      stack.pop_back();
      if (seen[c]) continue;
      seen[c] = true;
      if (snapshot_->children(c).empty())
        members.push_back(c);
      else
        for (ClassIndex k : snapshot_->children(c)) stack.push_back(k);
    }
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());

  const auto& assocs = snapshot_->indexed_associations();
  std::vector<ClassIndex> covered;
  for (ClassIndex k : members) {
    bool hit = std::any_of(outgoing_[k].begin(), outgoing_[k].end(), [&](std::size_t i) {
      return assocs[i].property == p && (!t || assocs[i].target == *t);
    });
    if (hit) covered.push_back(k);
  }
  ClassEffectReport report;
  report.parent = snapshot_->class_id(q);
  report.total_children = members.size();
  report.covered_children = ids(std::move(covered));
  report.holds = report.total_children > 0 && report.covered() == report.total_children;
  return report;
}

RankedClasses HierarchyQueries::most_associated_children(std::string_view property,
                                                         std::string_view target) const {
  PropertyIndex p = snapshot_->property_index(property);
  ClassIndex t = snapshot_->class_index(target);
  RankedClasses out;
  std::vector<ClassIndex> winners;
  for (ClassIndex q = 0; q < snapshot_->class_count(); ++q) {
    std::size_t n = 0;
    for (ClassIndex k : snapshot_->children(q)) n += linked(k, p, t);
    if (n == 0 || n < out.count) continue;
    if (n > out.count) {
      out.count = n;
      winners.clear();
    }
    winners.push_back(q);
  }
  out.classes = ids(std::move(winners));
  return out;
}

std::vector<std::string> HierarchyQueries::sibling_outliers(std::string_view property,
                                                            std::string_view target) const {
  PropertyIndex p = snapshot_->property_index(property);
  ClassIndex t = snapshot_->class_index(target);
  std::vector<ClassIndex> out;
  for (ClassIndex c = 0; c < snapshot_->class_count(); ++c) {
    if (linked(c, p, t)) continue;
    auto sibs = sibling_indices(c);
    if (sibs.empty()) continue;
    if (std::all_of(sibs.begin(), sibs.end(), [&](ClassIndex s) { return linked(s, p, t); }))
      out.push_back(c);
  }
  return ids(std::move(out));
}

}  // namespace ontoplot
