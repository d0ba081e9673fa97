/**
 * Copyright (c) 2026 The Strata Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "strata/store/tree.hpp"

#include "strata/core/error.hpp"
#include "strata/kernels/summarize.hpp"

#include <algorithm>
#include <cmath>

namespace strata::store {

NodePtr NodeSource::load(BlockRef ref) const {
    loads_.fetch_add(1, std::memory_order_relaxed);
    if (cache_ != nullptr) {
        if (auto hit = cache_->get(ref)) {
            return hit;
        }
    }
    auto node = std::make_shared<const Node>(decode_node(store_.read(ref)));
    if (cache_ != nullptr) {
        cache_->put(ref, node);
    }
    return node;
}

BlockRef NodeSource::write(const Node& node) { return store_.append(encode_node(node)); }

namespace tree {

namespace {

constexpr auto kByTime = [](const RawPoint& a, const RawPoint& b) { return a.time < b.time; };

auto lower_by_time(const std::vector<RawPoint>& pts, Timestamp t) {
    return std::lower_bound(pts.begin(), pts.end(), t, [](const RawPoint& p, Timestamp v) { return p.time < v; });
}

auto upper_by_time(const std::vector<RawPoint>& pts, Timestamp t) {
    return std::upper_bound(pts.begin(), pts.end(), t, [](Timestamp v, const RawPoint& p) { return v < p.time; });
}

/// Calls fn(child_index, group) for each run of sorted points sharing a child.
template <typename Fn>
void for_each_child_group(std::span<const RawPoint> sorted, Timestamp start, int child_shift, Fn&& fn) {
    std::size_t i = 0;
    while (i < sorted.size()) {
        const auto idx = static_cast<std::size_t>((sorted[i].time - start) >> child_shift);
        std::size_t j = i + 1;
        while (j < sorted.size() && static_cast<std::size_t>((sorted[j].time - start) >> child_shift) == idx) {
            ++j;
        }
        fn(idx, sorted.subspan(i, j - i));
        i = j;
    }
}

WrittenNode write_node(NodeSource& src, Node&& node, Aggregate agg) {
    const auto version = node.version;
    return {src.write(node), version, agg};
}

WrittenNode build(NodeSource& src, Timestamp start, int shift, std::span<const RawPoint> sorted, VersionId version,
                  std::size_t threshold) {
    Node node;
    node.start = start;
    node.span_shift = shift;
    node.version = version;
    if (sorted.size() <= threshold || shift == 0) {
        node.kind = NodeKind::Leaf;
        node.points.assign(sorted.begin(), sorted.end());
        return write_node(src, std::move(node), kernels::aggregate_points(sorted));
    }
    node.kind = NodeKind::Internal;
    node.children.resize(Node::fanout_for(shift));
    const int cs = node.child_shift();
    Aggregate total;
    for_each_child_group(sorted, start, cs, [&](std::size_t idx, std::span<const RawPoint> group) {
        auto child = build(src, node.child_start(idx), cs, group, version, threshold);
        node.children[idx] = {child.ref, child.version, child.agg};
        total.merge(child.agg);
    });
    return write_node(src, std::move(node), total);
}

WrittenNode insert_at(NodeSource& src, BlockRef ref, Timestamp start, int shift, std::span<const RawPoint> sorted,
                      VersionId version, std::size_t threshold) {
    if (ref == kNullBlock) {
        return build(src, start, shift, sorted, version, threshold);
    }
    auto old = src.load(ref);
    if (old->is_leaf()) {
        std::vector<RawPoint> merged;
        merged.reserve(old->points.size() + sorted.size());
        // std::merge keeps elements of the first range ahead of equal ones from the second.
        std::merge(old->points.begin(), old->points.end(), sorted.begin(), sorted.end(), std::back_inserter(merged),
                   kByTime);
        return build(src, start, shift, merged, version, threshold);
    }
    Node node;
    node.kind = NodeKind::Internal;
    node.start = start;
    node.span_shift = shift;
    node.version = version;
    node.children = old->children;
    const int cs = node.child_shift();
    for_each_child_group(sorted, start, cs, [&](std::size_t idx, std::span<const RawPoint> group) {
        auto child = insert_at(src, node.children[idx].ref, node.child_start(idx), cs, group, version, threshold);
        node.children[idx] = {child.ref, child.version, child.agg};
    });
    Aggregate total;
    for (const auto& c : node.children) {
        if (c.present()) total.merge(c.agg);
    }
    return write_node(src, std::move(node), total);
}

void raw_rec(const NodeSource& src, const Node& node, TimeRange range, std::vector<RawPoint>& out) {
    if (node.is_leaf()) {
        out.insert(out.end(), lower_by_time(node.points, range.start), lower_by_time(node.points, range.end));
        return;
    }
    const auto first = node.child_index(std::max(range.start, node.start));
    const auto last = node.child_index(std::min(range.end, node.end()) - 1);
    for (auto i = first; i <= last; ++i) {
        const auto& slot = node.children[i];
        if (!slot.present()) continue;
        raw_rec(src, *src.load(slot.ref), range, out);
    }
}

void append_window(std::vector<kernels::WindowAggregate>& out, Timestamp start, const Aggregate& agg) {
    if (!out.empty() && out.back().start == start) {
        out.back().agg.merge(agg);
    } else {
        out.push_back({start, agg});
    }
}

void windows_rec(const NodeSource& src, const Node& node, TimeRange range, int res,
                 std::vector<kernels::WindowAggregate>& out) {
    if (node.is_leaf()) {
        auto lo = lower_by_time(node.points, range.start);
        auto hi = lower_by_time(node.points, range.end);
        std::span<const RawPoint> pts(node.points.data() + (lo - node.points.begin()),
                                      static_cast<std::size_t>(hi - lo));
        for (const auto& w : kernels::summarize_windows(pts, res)) {
            append_window(out, w.start, w.agg);
        }
        return;
    }
    const int cs = node.child_shift();
    const auto first = node.child_index(std::max(range.start, node.start));
    const auto last = node.child_index(std::min(range.end, node.end()) - 1);
    for (auto i = first; i <= last; ++i) {
        const auto& slot = node.children[i];
        if (!slot.present()) continue;
        if (res >= cs) {
            // The child lies wholly inside one window and inside the range.
            append_window(out, align_down(node.child_start(i), res), slot.agg);
        } else {
            windows_rec(src, *src.load(slot.ref), range, res, out);
        }
    }
}

std::optional<RawPoint> backward_rec(const NodeSource& src, const Node& node, Timestamp t) {
    if (t < node.start) return std::nullopt;
    if (node.is_leaf()) {
        auto it = upper_by_time(node.points, t);
        if (it == node.points.begin()) return std::nullopt;
        return *(it - 1);
    }
    const std::size_t top = t >= node.end() ? node.children.size() - 1 : node.child_index(t);
    for (std::size_t i = top + 1; i-- > 0;) {
        const auto& slot = node.children[i];
        if (!slot.present()) continue;
        if (auto hit = backward_rec(src, *src.load(slot.ref), t)) return hit;
    }
    return std::nullopt;
}

std::optional<RawPoint> forward_rec(const NodeSource& src, const Node& node, Timestamp t) {
    if (t >= node.end() - 1) return std::nullopt;
    if (node.is_leaf()) {
        auto it = upper_by_time(node.points, t);
        if (it == node.points.end()) return std::nullopt;
        return *it;
    }
    const std::size_t bottom = t < node.start ? 0 : node.child_index(t);
    for (std::size_t i = bottom; i < node.children.size(); ++i) {
        const auto& slot = node.children[i];
        if (!slot.present()) continue;
        if (auto hit = forward_rec(src, *src.load(slot.ref), t)) return hit;
    }
    return std::nullopt;
}

TimeRange round_out(Timestamp start, Timestamp end, int res) { return {align_down(start, res), align_up(end, res)}; }

struct ChangeWalk {
    const NodeSource& src;
    BlockRef from_root;
    VersionId from;
    int res;
    std::vector<TimeRange>& out;

    void leaf_diff(const Node& leaf) {
        std::vector<RawPoint> before;
        if (from_root != kNullBlock) {
            raw_rec(src, *src.load(from_root), {leaf.start, leaf.end()}, before);
        }
        const auto& after = leaf.points;
        std::size_t i = 0;
        std::size_t j = 0;
        std::vector<double> va;
        std::vector<double> vb;
        while (i < before.size() || j < after.size()) {
            Timestamp t;
            if (j == after.size() || (i < before.size() && before[i].time < after[j].time)) {
                t = before[i].time;
            } else {
                t = after[j].time;
            }
            va.clear();
            vb.clear();
            while (i < before.size() && before[i].time == t) va.push_back(before[i++].value);
            while (j < after.size() && after[j].time == t) vb.push_back(after[j++].value);
            std::sort(va.begin(), va.end());
            std::sort(vb.begin(), vb.end());
            if (va != vb) {
                out.push_back(round_out(t, t + 1, res));
            }
        }
    }

    void visit(const Node& node) {
        if (node.version <= from) return;
        if (node.span_shift <= res) {
            out.push_back(round_out(node.start, node.end(), res));
            return;
        }
        if (node.is_leaf()) {
            leaf_diff(node);
            return;
        }
        const int cs = node.child_shift();
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            const auto& slot = node.children[i];
            if (!slot.present() || slot.version <= from) continue;
            if (cs <= res) {
                const auto s = node.child_start(i);
                out.push_back(round_out(s, s + window_width(cs), res));
            } else {
                visit(*src.load(slot.ref));
            }
        }
    }
};

std::vector<TimeRange> coalesce(std::vector<TimeRange> ranges) {
    std::sort(ranges.begin(), ranges.end(), [](const TimeRange& a, const TimeRange& b) { return a.start < b.start; });
    std::vector<TimeRange> out;
    for (const auto& r : ranges) {
        if (!out.empty() && r.start <= out.back().end) {
            out.back().end = std::max(out.back().end, r.end);
        } else {
            out.push_back(r);
        }
    }
    return out;
}

bool same_sum(double a, double b, double scale) { return std::abs(a - b) <= 1e-9 * std::max(1.0, scale); }

struct Auditor {
    const NodeSource& src;
    std::size_t threshold;
    AuditReport report;

    void problem(const Node& node, const std::string& what) {
        report.problems.push_back("node@" + std::to_string(node.start) + "/" + std::to_string(node.span_shift) + ": " +
                                  what);
    }

    Aggregate visit(const Node& node, int depth, VersionId parent_version) {
        report.max_depth = std::max(report.max_depth, depth);
        if (node.version > parent_version) problem(node, "version newer than parent");
        if (node.is_leaf()) {
            ++report.leaves;
            report.points += node.points.size();
            if (node.points.size() > threshold && node.span_shift > 0) problem(node, "leaf over threshold");
            if (!std::is_sorted(node.points.begin(), node.points.end(), kByTime)) problem(node, "leaf unsorted");
            for (const auto& p : node.points) {
                if (p.time < node.start || p.time >= node.end()) {
                    problem(node, "point outside span");
                    break;
                }
            }
            return kernels::aggregate_points(node.points);
        }
        ++report.internal_nodes;
        if (node.children.size() != Node::fanout_for(node.span_shift)) problem(node, "wrong fanout");
        Aggregate total;
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            const auto& slot = node.children[i];
            if (!slot.present()) continue;
            auto child = src.load(slot.ref);
            if (child->start != node.child_start(i) || child->span_shift != node.child_shift()) {
                problem(node, "child span mismatch at slot " + std::to_string(i));
            }
            if (child->version != slot.version) problem(node, "child version tag mismatch");
            const auto actual = visit(*child, depth + 1, node.version);
            const double scale = std::max(std::abs(actual.min), std::abs(actual.max)) * double(actual.count);
            if (actual.count != slot.agg.count || actual.min != slot.agg.min || actual.max != slot.agg.max ||
                !same_sum(actual.sum, slot.agg.sum, scale)) {
                problem(node, "child summary mismatch at slot " + std::to_string(i));
            }
            if (slot.agg.count == 0) problem(node, "present child with zero count");
            total.merge(actual);
        }
        return total;
    }
};

}  // namespace

WrittenNode write_empty_root(NodeSource& src, VersionId version) {
    Node root;
    root.kind = NodeKind::Leaf;
    root.span_shift = kTimeBits;
    root.start = kTimeBegin;
    root.version = version;
    return write_node(src, std::move(root), {});
}

WrittenNode insert(NodeSource& src, BlockRef root, std::span<const RawPoint> sorted, VersionId version,
                   std::size_t leaf_threshold) {
    return insert_at(src, root, kTimeBegin, kTimeBits, sorted, version, leaf_threshold);
}

void raw_values(const NodeSource& src, BlockRef root, TimeRange range, std::vector<RawPoint>& out) {
    range.start = std::max(range.start, kTimeBegin);
    range.end = std::min(range.end, kTimeEnd);
    if (range.empty()) return;
    raw_rec(src, *src.load(root), range, out);
}

std::vector<StatSummary> aligned_windows(const NodeSource& src, BlockRef root, TimeRange range, int resolution) {
    range.end = std::min(range.end, kTimeEnd);
    std::vector<StatSummary> out;
    if (range.empty()) return out;
    std::vector<kernels::WindowAggregate> windows;
    windows_rec(src, *src.load(root), range, resolution, windows);
    out.reserve(windows.size());
    for (const auto& w : windows) out.push_back(w.agg.summary(w.start));
    return out;
}

std::optional<RawPoint> nearest(const NodeSource& src, BlockRef root, Timestamp t, Direction dir) {
    auto node = src.load(root);
    return dir == Direction::Backward ? backward_rec(src, *node, t) : forward_rec(src, *node, t);
}

std::vector<TimeRange> changes(const NodeSource& src, BlockRef to_root, BlockRef from_root, VersionId from_version,
                               int resolution) {
    std::vector<TimeRange> ranges;
    ChangeWalk walk{src, from_root, from_version, resolution, ranges};
    walk.visit(*src.load(to_root));
    return coalesce(std::move(ranges));
}

std::uint64_t point_count(const NodeSource& src, BlockRef root) {
    auto node = src.load(root);
    if (node->is_leaf()) return node->points.size();
    std::uint64_t n = 0;
    for (const auto& c : node->children) n += c.agg.count;
    return n;
}

AuditReport audit(const NodeSource& src, BlockRef root, std::size_t leaf_threshold) {
    Auditor a{src, leaf_threshold, {}};
    auto node = src.load(root);
    a.visit(*node, 0, node->version);
    return std::move(a.report);
}

}  // namespace tree

}  // namespace strata::store
