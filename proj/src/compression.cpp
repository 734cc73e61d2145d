#include "ontoplot/compression.hpp"

#include <algorithm>

#include "ontoplot/error.hpp"

namespace ontoplot {

std::string_view to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::SquareMerge: return "SquareMerge";
    case RegionKind::Chain: return "Chain";
    case RegionKind::Subtree: return "Subtree";
  }
  return "?";
}

namespace {

void fill_subtree_counts(const OccurrenceTree& tree, InterestModel& model) {
  model.subtree_interesting.assign(tree.size(), 0);
  // Occurrence ids are assigned parent-before-child, so a reverse sweep is
  // a valid post-order accumulation.
  for (auto i = static_cast<OccId>(tree.size()) - 1; i >= 0; --i) {
    const auto& node = tree[i];
    auto& total = model.subtree_interesting[static_cast<std::size_t>(i)];
    if (node.class_index && model.interesting[*node.class_index]) ++total;
    if (node.parent) model.subtree_interesting[static_cast<std::size_t>(*node.parent)] += total;
  }
}

}  // namespace

InterestModel mark_interest(const OntologySnapshot& snapshot, const OccurrenceTree& tree,
                            std::string_view property) {
  InterestModel model;
  model.mode = InterestMode::Property;
  model.property = snapshot.property_index(property);
  model.count_by_class.assign(snapshot.class_count(), 0);
  for (const auto& a : snapshot.indexed_associations()) {
    if (a.property != model.property) continue;
    ++model.count_by_class[a.source];
    if (a.target != a.source) ++model.count_by_class[a.target];
  }
  model.interesting.resize(snapshot.class_count());
  for (ClassIndex c = 0; c < snapshot.class_count(); ++c)
    model.interesting[c] = model.count_by_class[c] > 0;
  fill_subtree_counts(tree, model);
  return model;
}

InterestModel mark_focus_interest(const OntologySnapshot& snapshot, const OccurrenceTree& tree,
                                  std::string_view focus_class, std::string_view property) {
  InterestModel model;
  model.mode = InterestMode::Focus;
  model.focus = snapshot.class_index(focus_class);
  model.property = snapshot.property_index(property);
  const ClassIndex f = *model.focus;
  model.count_by_class.assign(snapshot.class_count(), 0);
  for (const auto& a : snapshot.indexed_associations()) {
    if (a.property != model.property || (a.source != f && a.target != f)) continue;
    ++model.count_by_class[a.source];
    if (a.target != a.source) ++model.count_by_class[a.target];
  }
  model.interesting.resize(snapshot.class_count());
  for (ClassIndex c = 0; c < snapshot.class_count(); ++c)
    model.interesting[c] = model.count_by_class[c] > 0 || c == f;
  fill_subtree_counts(tree, model);
  return model;
}

namespace {

struct Summary {
  std::size_t interesting = 0;
  std::size_t size = 0;
  std::size_t first = 0;  // position in preorder
  std::size_t max_count = 0;
  bool is_path = true;  // every node has at most one child
};

class Detector {
 public:
  Detector(const OccurrenceTree& tree, const InterestModel& interest, const Overrides& overrides)
      : tree_(tree), interest_(interest), overrides_(overrides) {
    order_.reserve(tree.size());
  }

  CompressionPlan run() {
    visit(tree_.root(), false, false);
    CompressionPlan plan;
    plan.visits = visits_;
    plan.region_of.assign(tree_.size(), -1);
    for (std::size_t r = 0; r < regions_.size(); ++r) {
      if (!alive_[r]) continue;
      auto index = static_cast<std::int32_t>(plan.regions.size());
      for (OccId m : regions_[r].members) plan.region_of[static_cast<std::size_t>(m)] = index;
      plan.regions.push_back(std::move(regions_[r]));
    }
    for (OccId occ = 0; occ < static_cast<OccId>(tree_.size()); ++occ)
      if (plan.region_of[static_cast<std::size_t>(occ)] < 0) plan.visible.push_back(occ);
    return plan;
  }

 private:
  std::optional<Override> override_of(OccId occ) const {
    auto it = overrides_.find(occ);
    if (it == overrides_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<OccId> subtree_members(const Summary& s) const {
    return {order_.begin() + static_cast<std::ptrdiff_t>(s.first),
            order_.begin() + static_cast<std::ptrdiff_t>(s.first + s.size)};
  }

  // `exempt`: an ancestor (or this occurrence) is force-expanded.
  // `suppressed`: inside a force-collapsed subtree; no regions are emitted.
  Summary visit(OccId occ, bool exempt, bool suppressed) {
    ++visits_;
    const auto& node = tree_[occ];
    Summary self;
    self.first = order_.size();
    order_.push_back(occ);
    if (node.class_index) {
      const ClassIndex c = *node.class_index;
      self.interesting = interest_.interesting[c] ? 1 : 0;
      self.max_count = interest_.count_by_class[c];
    }
    exempt = exempt || override_of(occ) == Override::ForceExpanded;

    struct ChildInfo {
      OccId occ;
      Summary summary;
      std::size_t region_mark;
      bool forced;
    };
    std::vector<ChildInfo> kids;
    kids.reserve(node.children.size());
    for (OccId child : node.children) {
      bool forced = override_of(child) == Override::ForceCollapsed;
      std::size_t mark = regions_.size();
      Summary s = visit(child, exempt, suppressed || forced);
      self.interesting += s.interesting;
      self.size += s.size;
      self.max_count = std::max(self.max_count, s.max_count);
      kids.push_back({child, s, mark, forced});
    }
    self.size += 1;
    self.is_path = node.children.empty() ||
                   (node.children.size() == 1 && kids.front().summary.is_path);
    if (suppressed) return self;

    const bool keeps_interest = self.interesting > 0;
    const std::size_t after_children = regions_.size();
    CompressedRegion square{RegionKind::SquareMerge, occ, {}, 0, false};
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const auto& kid = kids[i];
      const bool is_leaf = tree_[kid.occ].children.empty();
      const bool child_exempt = exempt || override_of(kid.occ) == Override::ForceExpanded;
      const bool automatic = !child_exempt && keeps_interest && kid.summary.interesting == 0;
      if (!kid.forced && !automatic) continue;

      // Regions discovered inside the child are swallowed by this one.
      std::size_t end = i + 1 < kids.size() ? kids[i + 1].region_mark : after_children;
      for (std::size_t r = kid.region_mark; r < end; ++r) alive_[r] = false;

      if (!kid.forced && is_leaf) {
        square.members.push_back(kid.occ);
        continue;
      }
      CompressedRegion region;
      region.kind = kid.summary.size >= 2 && kid.summary.is_path ? RegionKind::Chain
                                                                 : RegionKind::Subtree;
      region.anchor = occ;
      region.members = subtree_members(kid.summary);
      region.max_assoc_inside = kid.forced ? kid.summary.max_count : 0;
      region.forced = kid.forced;
      push(std::move(region));
    }
    if (!square.members.empty()) push(std::move(square));
    return self;
  }

  void push(CompressedRegion region) {
    regions_.push_back(std::move(region));
    alive_.push_back(true);
  }

  const OccurrenceTree& tree_;
  const InterestModel& interest_;
  const Overrides& overrides_;
  std::vector<OccId> order_;
  std::vector<CompressedRegion> regions_;
  std::vector<bool> alive_;
  std::size_t visits_ = 0;
};

}  // namespace

CompressionPlan detect_collapsible(const OccurrenceTree& tree, const InterestModel& interest) {
  static const Overrides none;
  return Detector(tree, interest, none).run();
}

CompressionPlan apply_overrides(const CompressionPlan& base, const OccurrenceTree& tree,
                                const InterestModel& interest, const Overrides& overrides) {
  for (const auto& [occ, what] : overrides) {
    if (!tree.contains(occ)) throw UnknownOccurrenceError(occ);
    if (occ == tree.root() && what == Override::ForceCollapsed) throw RootCollapseError();
  }
  if (overrides.empty()) return base;
  return Detector(tree, interest, overrides).run();
}

}  // namespace ontoplot
