#pragma once

#include <vector>

#include "olimp/model.hpp"

namespace olimp {

// Subset of the hypothesis class, stored as a mask over the instance's
// immutable hypothesis table. Restrictions are mask intersections with the
// precomputed per-(node, label) masks.
class VersionSpace {
public:
    explicit VersionSpace(const Instance* inst) : inst_(inst), mask_(inst->full_mask()) {}
    VersionSpace(const Instance* inst, DynBitset mask) : inst_(inst), mask_(std::move(mask)) {}

    const Instance& instance() const { return *inst_; }
    const DynBitset& mask() const { return mask_; }

    bool empty() const { return mask_.none(); }
    int count() const { return mask_.count(); }
    bool contains(HypId h) const { return mask_.test(h); }

    // Members with h(x) == y.
    VersionSpace with_label(NodeId x, LabelId y) const {
        return VersionSpace(inst_, mask_ & inst_->label_mask(x, y));
    }

    // Members with h(x) != y.
    VersionSpace without_label(NodeId x, LabelId y) const {
        DynBitset m = mask_;
        m.subtract(inst_->label_mask(x, y));
        return VersionSpace(inst_, std::move(m));
    }

    std::vector<HypId> members() const {
        std::vector<HypId> out;
        for (int h = mask_.find_first(); h != -1; h = mask_.find_next(h)) out.push_back(h);
        return out;
    }

    HypId first_member() const { return mask_.find_first(); }

    friend bool operator==(const VersionSpace& a, const VersionSpace& b) {
        return a.inst_ == b.inst_ && a.mask_ == b.mask_;
    }

private:
    const Instance* inst_;
    DynBitset mask_;
};

}  // namespace olimp
